//! Basin hopping: uniform perturbations with a local simplex minimization at
//! every hop, repeated over independently seeded restarts.

use super::{clip_to_bounds, nelder_mead, NelderMeadOptions, Objective, OptimResult};
use crate::error::{Error, Result};
use crate::rng::SeededRng;

#[derive(Debug, Clone)]
pub struct BasinHoppingSettings {
    /// Hops per restart.
    pub niter: usize,
    /// Independent restarts.
    pub niter_basin: usize,
    /// Magnitude of the uniform perturbation applied before each local search.
    pub step_scale: f64,
}

impl Default for BasinHoppingSettings {
    fn default() -> Self {
        Self {
            niter: 10,
            niter_basin: 10,
            step_scale: 0.5,
        }
    }
}

/// Runs `niter_basin` outer calls of `niter` hops each and returns the global
/// best. The first restart starts from `x0`; later restarts start from a
/// fresh uniform point (inside the bounds when present). Reproducible given
/// the seed.
pub fn basin_hopping(
    objective: &Objective,
    x0: &[f64],
    settings: &BasinHoppingSettings,
    seed: u64,
) -> Result<OptimResult> {
    if x0.len() != objective.dim() {
        return Err(Error::DimensionMismatch {
            context: "start point",
            expected: objective.dim(),
            actual: x0.len(),
        });
    }
    if settings.niter == 0 {
        return Err(Error::ZeroIterations("niter"));
    }
    if settings.niter_basin == 0 {
        return Err(Error::ZeroIterations("niter_basin"));
    }
    if settings.step_scale.is_nan() || settings.step_scale <= 0.0 {
        return Err(Error::NonPositiveStep(settings.step_scale));
    }
    if !objective.eval(x0).is_finite() {
        return Err(Error::NonFiniteObjective);
    }

    let dim = objective.dim();
    let bounds = objective.bounds();
    let mut rng = SeededRng::new(seed);
    let nm = NelderMeadOptions::for_dim(dim);

    let mut evaluations = 1usize; // the finiteness probe above
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut best_restart = 0usize;
    let mut restart_losses = Vec::with_capacity(settings.niter_basin);

    for restart in 0..settings.niter_basin {
        let mut start = if restart == 0 {
            x0.to_vec()
        } else if let Some(bounds) = bounds {
            bounds
                .iter()
                .map(|&(lo, hi)| rng.uniform_range(lo, hi))
                .collect()
        } else {
            x0.iter()
                .map(|&v| v + rng.uniform_range(-10.0 * settings.step_scale, 10.0 * settings.step_scale))
                .collect()
        };
        clip_to_bounds(&mut start, bounds);

        let mut f = |x: &[f64]| objective.eval(x);
        let (mut inc_x, mut inc_loss, e) = nelder_mead(&mut f, &start, bounds, &nm);
        evaluations += e;

        for _ in 0..settings.niter {
            let mut candidate: Vec<f64> = inc_x
                .iter()
                .map(|&v| v + rng.uniform_range(-settings.step_scale, settings.step_scale))
                .collect();
            clip_to_bounds(&mut candidate, bounds);
            let (hop_x, hop_loss, e) = nelder_mead(&mut f, &candidate, bounds, &nm);
            evaluations += e;
            if hop_loss < inc_loss {
                inc_x = hop_x;
                inc_loss = hop_loss;
            }
        }

        restart_losses.push(inc_loss);
        if best.as_ref().is_none_or(|(_, l)| inc_loss < *l) {
            best = Some((inc_x, inc_loss));
            best_restart = restart;
        }
    }

    let (parameters, loss) = best.expect("at least one restart ran");
    Ok(OptimResult {
        parameters,
        loss,
        evaluations,
        best_restart,
        restart_losses,
    })
}

#[cfg(test)]
mod tests {
    use super::super::test_functions::{himmelblau, HIMMELBLAU_MINIMA};
    use super::*;

    #[test]
    fn convex_quadratic_from_origin() {
        let obj = Objective::new(1, |x| (x[0] - 3.0).powi(2)).unwrap();
        let settings = BasinHoppingSettings {
            niter: 3,
            niter_basin: 2,
            step_scale: 0.5,
        };
        let result = basin_hopping(&obj, &[0.0], &settings, 1).unwrap();
        assert!((result.parameters[0] - 3.0).abs() < 1e-6, "{result:?}");
    }

    #[test]
    fn himmelblau_reaches_a_known_minimum() {
        let obj = Objective::new(2, himmelblau)
            .unwrap()
            .with_bounds(vec![(-6.0, 6.0), (-6.0, 6.0)])
            .unwrap();
        let result = basin_hopping(&obj, &[0.0, 0.0], &BasinHoppingSettings::default(), 3).unwrap();
        assert!(result.loss < 1e-6, "loss {}", result.loss);
        let near_known = HIMMELBLAU_MINIMA.iter().any(|m| {
            (result.parameters[0] - m[0]).abs() < 1e-2 && (result.parameters[1] - m[1]).abs() < 1e-2
        });
        assert!(near_known, "{:?}", result.parameters);
    }

    #[test]
    fn seed_determinism() {
        let obj = Objective::new(2, himmelblau)
            .unwrap()
            .with_bounds(vec![(-6.0, 6.0), (-6.0, 6.0)])
            .unwrap();
        let settings = BasinHoppingSettings {
            niter: 4,
            niter_basin: 4,
            step_scale: 0.5,
        };
        let a = basin_hopping(&obj, &[1.0, 1.0], &settings, 9).unwrap();
        let b = basin_hopping(&obj, &[1.0, 1.0], &settings, 9).unwrap();
        assert_eq!(a.parameters, b.parameters);
        assert_eq!(a.loss, b.loss);
        assert_eq!(a.evaluations, b.evaluations);
        assert_eq!(a.restart_losses, b.restart_losses);
    }

    #[test]
    fn loss_is_consistent_with_parameters() {
        let obj = Objective::new(2, himmelblau).unwrap();
        let result =
            basin_hopping(&obj, &[1.0, 1.0], &BasinHoppingSettings::default(), 5).unwrap();
        assert!((obj.eval(&result.parameters) - result.loss).abs() < 1e-12);
        assert!(result
            .restart_losses
            .iter()
            .all(|&l| result.loss <= l + 1e-15));
        assert!((result.restart_losses[result.best_restart] - result.loss).abs() < 1e-15);
    }

    #[test]
    fn stays_inside_bounds() {
        let obj = Objective::new(2, |x| (x[0] - 10.0).powi(2) + (x[1] + 10.0).powi(2))
            .unwrap()
            .with_bounds(vec![(-1.0, 1.0), (-1.0, 1.0)])
            .unwrap();
        let result =
            basin_hopping(&obj, &[0.0, 0.0], &BasinHoppingSettings::default(), 2).unwrap();
        for &v in &result.parameters {
            assert!((-1.0..=1.0).contains(&v));
        }
        assert!((result.parameters[0] - 1.0).abs() < 1e-6);
        assert!((result.parameters[1] + 1.0).abs() < 1e-6);
    }

    #[test]
    fn non_finite_start_is_an_error() {
        let obj = Objective::new(1, |x| (1.0 / x[0]).ln()).unwrap();
        let err = basin_hopping(&obj, &[0.0], &BasinHoppingSettings::default(), 1);
        assert!(matches!(err, Err(Error::NonFiniteObjective)));
    }
}
