//! Nelder-Mead simplex minimizer, the local stage of the global solvers.

use super::clip_to_bounds;

pub(crate) struct NelderMeadOptions {
    /// Stop when every vertex is within this distance of the best vertex.
    pub diameter_tol: f64,
    /// Hard cap on objective evaluations.
    pub max_evals: usize,
    /// Edge length of the initial simplex.
    pub init_step: f64,
}

impl NelderMeadOptions {
    pub fn for_dim(dim: usize) -> Self {
        Self {
            diameter_tol: 1e-9,
            max_evals: 500 * dim,
            init_step: 0.1,
        }
    }
}

/// Minimizes `f` from `x0`. Candidates are clipped to `bounds` before every
/// evaluation, so the result never leaves the box. Returns the best point,
/// its value, and the number of evaluations spent.
pub(crate) fn nelder_mead(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    bounds: Option<&[(f64, f64)]>,
    options: &NelderMeadOptions,
) -> (Vec<f64>, f64, usize) {
    let dim = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &mut Vec<f64>, evals: &mut usize| {
        clip_to_bounds(x, bounds);
        *evals += 1;
        f(x)
    };

    // Initial simplex: x0 plus one step along each axis.
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let mut first = x0.to_vec();
    let v = eval(&mut first, &mut evals);
    simplex.push((first, v));
    for i in 0..dim {
        let mut p = x0.to_vec();
        let h = if p[i].abs() > 1.0 {
            options.init_step * p[i].abs()
        } else {
            options.init_step
        };
        p[i] += h;
        let v = eval(&mut p, &mut evals);
        simplex.push((p, v));
    }

    const RHO: f64 = 1.0; // reflection
    const CHI: f64 = 2.0; // expansion
    const GAMMA: f64 = 0.5; // contraction
    const SIGMA: f64 = 0.5; // shrink

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if evals >= options.max_evals || diameter(&simplex) < options.diameter_tol {
            break;
        }

        // Centroid of all vertices but the worst.
        let mut centroid = vec![0.0; dim];
        for (p, _) in &simplex[..dim] {
            for (c, &x) in centroid.iter_mut().zip(p) {
                *c += x;
            }
        }
        for c in &mut centroid {
            *c /= dim as f64;
        }

        let worst = simplex[dim].clone();
        let mut reflected: Vec<f64> = centroid
            .iter()
            .zip(&worst.0)
            .map(|(&c, &w)| c + RHO * (c - w))
            .collect();
        let fr = eval(&mut reflected, &mut evals);

        if fr < simplex[0].1 {
            let mut expanded: Vec<f64> = centroid
                .iter()
                .zip(&worst.0)
                .map(|(&c, &w)| c + RHO * CHI * (c - w))
                .collect();
            let fe = eval(&mut expanded, &mut evals);
            simplex[dim] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflected, fr);
            continue;
        }

        // Contract toward the better of (worst, reflected).
        let (anchor, fa) = if fr < worst.1 {
            (&reflected, fr)
        } else {
            (&worst.0, worst.1)
        };
        let mut contracted: Vec<f64> = centroid
            .iter()
            .zip(anchor)
            .map(|(&c, &a)| c + GAMMA * (a - c))
            .collect();
        let fc = eval(&mut contracted, &mut evals);
        if fc < fa {
            simplex[dim] = (contracted, fc);
            continue;
        }

        // Shrink toward the best vertex.
        let best = simplex[0].0.clone();
        for entry in simplex.iter_mut().skip(1) {
            let mut p: Vec<f64> = best
                .iter()
                .zip(&entry.0)
                .map(|(&b, &x)| b + SIGMA * (x - b))
                .collect();
            let v = eval(&mut p, &mut evals);
            *entry = (p, v);
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (best, value) = simplex.swap_remove(0);
    (best, value, evals)
}

fn diameter(simplex: &[(Vec<f64>, f64)]) -> f64 {
    let best = &simplex[0].0;
    simplex[1..]
        .iter()
        .map(|(p, _)| {
            p.iter()
                .zip(best)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max)
        })
        .fold(0.0f64, f64::max)
}
