//! Dual annealing: generalized simulated annealing with a heavy-tailed
//! visiting distribution, generalized Metropolis acceptance, restarts on
//! stagnation, and one final local refinement of the best point.

use super::{clip_to_bounds, nelder_mead, NelderMeadOptions, Objective, OptimResult};
use crate::error::{Error, Result};
use crate::rng::SeededRng;

#[derive(Debug, Clone)]
pub struct DualAnnealingSettings {
    /// Outer temperature steps.
    pub max_iter: usize,
    /// Starting temperature of the visiting schedule.
    pub initial_temp: f64,
    /// Re-anneal from a fresh point when T drops below `initial_temp * ratio`.
    pub restart_temp_ratio: f64,
    /// Visiting distribution shape, 1 < q_v < 3.
    pub visit: f64,
    /// Acceptance shape, q_a < 1.
    pub accept: f64,
    /// Chain steps without a new best before jumping back to it.
    pub stagnation_limit: usize,
    /// Evaluation budget of the final simplex refinement; `None` = 500 * dim.
    pub refine_evals: Option<usize>,
}

impl Default for DualAnnealingSettings {
    fn default() -> Self {
        Self {
            max_iter: 1000,
            initial_temp: 5230.0,
            restart_temp_ratio: 2e-5,
            visit: 2.62,
            accept: -5.0,
            stagnation_limit: 1000,
            refine_evals: None,
        }
    }
}

/// Minimizes a bounded objective by generalized simulated annealing.
///
/// Requires finite bounds on every dimension. Every visited point is wrapped
/// back into the box, so the result never leaves it. Reproducible given the
/// seed.
pub fn dual_annealing(
    objective: &Objective,
    settings: &DualAnnealingSettings,
    seed: u64,
) -> Result<OptimResult> {
    let bounds = objective.bounds().ok_or(Error::MissingBounds)?;
    if settings.max_iter == 0 {
        return Err(Error::ZeroIterations("max_iter"));
    }
    let dim = objective.dim();
    let qv = settings.visit;
    let qa = settings.accept;
    let mut rng = SeededRng::new(seed);
    let visitor = Visitor::new(qv);

    let mut evaluations = 0usize;
    let eval = |x: &[f64], evaluations: &mut usize| {
        *evaluations += 1;
        objective.eval(x)
    };

    let random_point = |rng: &mut SeededRng| -> Vec<f64> {
        bounds.iter().map(|&(lo, hi)| rng.uniform_range(lo, hi)).collect()
    };

    let mut current = random_point(&mut rng);
    let mut current_energy = eval(&current, &mut evaluations);
    let mut best = current.clone();
    let mut best_energy = current_energy;
    let mut since_best = 0usize;

    // T(k) = T0 (2^{qv-1} - 1) / ((k+2)^{qv-1} - 1), k = 0, 1, ...
    let t1 = (qv - 1.0) * std::f64::consts::LN_2;
    let t1 = t1.exp() - 1.0;
    let mut cycle = 0usize;
    for _ in 0..settings.max_iter {
        let s = cycle as f64 + 2.0;
        let t2 = ((qv - 1.0) * s.ln()).exp() - 1.0;
        let temperature = settings.initial_temp * t1 / t2;
        cycle += 1;

        if temperature < settings.initial_temp * settings.restart_temp_ratio {
            // Schedule exhausted: re-anneal from a fresh random point.
            current = random_point(&mut rng);
            current_energy = eval(&current, &mut evaluations);
            cycle = 0;
            continue;
        }

        // First half of the chain perturbs all coordinates, second half one
        // coordinate at a time.
        for j in 0..2 * dim {
            let mut candidate = current.clone();
            if j < dim {
                for (i, c) in candidate.iter_mut().enumerate() {
                    *c = wrap(*c + visitor.step(temperature, &mut rng), bounds[i]);
                }
            } else {
                let i = j - dim;
                candidate[i] = wrap(candidate[i] + visitor.step(temperature, &mut rng), bounds[i]);
            }
            let energy = eval(&candidate, &mut evaluations);

            let accept = if energy < current_energy {
                true
            } else {
                // Generalized Metropolis rule at the chain temperature.
                let t_accept = temperature / (j as f64 + 2.0);
                let arg = 1.0 - (1.0 - qa) * (energy - current_energy) / t_accept;
                arg > 0.0 && rng.uniform() < (arg.ln() / (1.0 - qa)).exp()
            };
            if accept {
                current = candidate;
                current_energy = energy;
                if energy < best_energy {
                    best = current.clone();
                    best_energy = energy;
                    since_best = 0;
                    continue;
                }
            }
            since_best += 1;
            if since_best >= settings.stagnation_limit {
                current = best.clone();
                current_energy = best_energy;
                since_best = 0;
            }
        }
    }

    // Final local refinement of the best point.
    let mut nm_opts = NelderMeadOptions::for_dim(dim);
    if let Some(budget) = settings.refine_evals {
        nm_opts.max_evals = budget;
    }
    let mut f = |x: &[f64]| objective.eval(x);
    let (mut refined, refined_energy, extra) = nelder_mead(&mut f, &best, Some(bounds), &nm_opts);
    evaluations += extra;
    clip_to_bounds(&mut refined, Some(bounds));
    if refined_energy < best_energy {
        best = refined;
        best_energy = refined_energy;
    }

    Ok(OptimResult {
        parameters: best,
        loss: best_energy,
        evaluations,
        best_restart: 0,
        restart_losses: vec![best_energy],
    })
}

fn wrap(value: f64, (lo, hi): (f64, f64)) -> f64 {
    let range = hi - lo;
    let mut v = (value - lo) % range;
    if v < 0.0 {
        v += range;
    }
    let wrapped = lo + v;
    // Guard the lower edge so repeated wrapping cannot stick to it.
    if (wrapped - lo).abs() < 1e-10 {
        wrapped + 1e-10
    } else {
        wrapped
    }
}

/// Tsallis-type heavy-tailed step generator used by the visiting schedule.
struct Visitor {
    qv: f64,
    factor4: f64,
    factor6: f64,
    exponent: f64,
    tail_limit: f64,
}

impl Visitor {
    fn new(qv: f64) -> Self {
        let factor2 = ((4.0 - qv) * (qv - 1.0).ln()).exp();
        let factor3 = ((2.0 - qv) * std::f64::consts::LN_2 / (qv - 1.0)).exp();
        let factor4 = std::f64::consts::PI.sqrt() * factor2 / (factor3 * (3.0 - qv));
        let factor5 = 1.0 / (qv - 1.0) - 0.5;
        let d1 = 2.0 - factor5;
        let factor6 = std::f64::consts::PI * (1.0 - factor5)
            / (std::f64::consts::PI * (1.0 - factor5)).sin()
            / ln_gamma(d1).exp();
        Self {
            qv,
            factor4,
            factor6,
            exponent: (qv - 1.0) / (3.0 - qv),
            tail_limit: 1e8,
        }
    }

    fn step(&self, temperature: f64, rng: &mut SeededRng) -> f64 {
        let factor1 = (temperature.ln() / (self.qv - 1.0)).exp();
        let sigma_x = (-(self.qv - 1.0) * (self.factor6 / (self.factor4 * factor1)).ln()
            / (3.0 - self.qv))
            .exp();
        let x = sigma_x * rng.normal();
        let y = rng.normal();
        let den = (self.exponent * y.abs().ln()).exp();
        let step = x / den;
        if step > self.tail_limit {
            self.tail_limit * rng.uniform()
        } else if step < -self.tail_limit {
            -self.tail_limit * rng.uniform()
        } else {
            step
        }
    }
}

/// Lanczos approximation of ln Gamma(x) for x > 0.
#[allow(clippy::excessive_precision, clippy::inconsistent_digit_grouping)]
fn ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // Reflection formula.
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEFFS[0];
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    0.5 * (std::f64::consts::TAU).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}
