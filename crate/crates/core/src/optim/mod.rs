//! Derivative-free solvers: basin hopping and dual annealing for non-convex
//! objectives, exact least-squares and ridge solvers for the linear paths.

mod basin_hopping;
mod dual_annealing;
mod eigen;
mod linear;
mod nelder_mead;

pub use basin_hopping::{basin_hopping, BasinHoppingSettings};
pub use dual_annealing::{dual_annealing, DualAnnealingSettings};
pub use eigen::symmetric_eigen;
pub use linear::{solve_least_squares, solve_least_squares_with_rank, solve_ridge};
pub(crate) use nelder_mead::{nelder_mead, NelderMeadOptions};

use crate::error::{Error, Result};

type EvalFn<'a> = Box<dyn Fn(&[f64]) -> f64 + Sync + 'a>;

/// A scalar objective over a fixed-dimension parameter vector, with optional
/// box bounds. Evaluation must be deterministic in the parameters.
pub struct Objective<'a> {
    eval: EvalFn<'a>,
    dim: usize,
    bounds: Option<Vec<(f64, f64)>>,
}

impl<'a> Objective<'a> {
    pub fn new(dim: usize, eval: impl Fn(&[f64]) -> f64 + Sync + 'a) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroIterations("objective dimension"));
        }
        Ok(Self {
            eval: Box::new(eval),
            dim,
            bounds: None,
        })
    }

    /// Attaches finite per-dimension bounds `(lo, hi)` with `lo < hi`.
    pub fn with_bounds(mut self, bounds: Vec<(f64, f64)>) -> Result<Self> {
        if bounds.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "bounds",
                expected: self.dim,
                actual: bounds.len(),
            });
        }
        for (index, &(lo, hi)) in bounds.iter().enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::BadBound { index, lo, hi });
            }
        }
        self.bounds = Some(bounds);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bounds(&self) -> Option<&[(f64, f64)]> {
        self.bounds.as_deref()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        (self.eval)(x)
    }
}

/// Outcome of a global optimization run.
#[derive(Debug, Clone)]
pub struct OptimResult {
    /// Best parameters found.
    pub parameters: Vec<f64>,
    /// Objective value at `parameters`.
    pub loss: f64,
    /// Total objective evaluations.
    pub evaluations: usize,
    /// Index of the restart that produced the best value.
    pub best_restart: usize,
    /// Best value reached by each restart, in order.
    pub restart_losses: Vec<f64>,
}

pub(crate) fn clip_to_bounds(x: &mut [f64], bounds: Option<&[(f64, f64)]>) {
    if let Some(bounds) = bounds {
        for (v, &(lo, hi)) in x.iter_mut().zip(bounds) {
            *v = v.clamp(lo, hi);
        }
    }
}
