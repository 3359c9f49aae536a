//! Symmetric eigendecomposition: Householder tridiagonalization followed by
//! implicit-shift QL, the classic dense-path pair.

use ndarray::{Array1, Array2, ShapeBuilder};

use crate::error::{Error, Result};

/// Full eigendecomposition of a symmetric matrix.
///
/// Returns eigenvalues in ascending order and the matrix whose columns are
/// the matching orthonormal eigenvectors, so `A = V diag(w) V^T`.
pub fn symmetric_eigen(a: &Array2<f64>) -> Result<(Array1<f64>, Array2<f64>)> {
    let (n, m) = a.dim();
    if n != m {
        return Err(Error::NonSquareMatrix { rows: n, cols: m });
    }
    let mut asym = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            asym = asym.max((a[[i, j]] - a[[j, i]]).abs());
        }
    }
    if asym > 1e-9 {
        return Err(Error::NotSymmetric(asym));
    }

    // Column-major working copy: the QL rotations update pairs of columns,
    // which are contiguous in this layout.
    let mut v = Array2::zeros((n, n).f());
    v.assign(a);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut v, &mut d, &mut e);
    tql2(&mut v, &mut d, &mut e)?;

    // Sort ascending, carrying the eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = Array1::from_iter(order.iter().map(|&i| d[i]));
    let vectors = Array2::from_shape_fn((n, n), |(r, c)| v[[r, order[c]]]);
    Ok((values, vectors))
}

/// Householder reduction to tridiagonal form; `v` accumulates the transform,
/// `d` receives the diagonal and `e` the subdiagonal.
fn tred2(v: &mut Array2<f64>, d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| v[[i, k]].abs()).sum();
            if scale == 0.0 {
                e[i] = v[[i, l]];
            } else {
                for k in 0..=l {
                    v[[i, k]] /= scale;
                    h += v[[i, k]] * v[[i, k]];
                }
                let mut f = v[[i, l]];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                v[[i, l]] = f - g;
                f = 0.0;
                for j in 0..=l {
                    v[[j, i]] = v[[i, j]] / h;
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += v[[j, k]] * v[[i, k]];
                    }
                    for k in (j + 1)..=l {
                        g += v[[k, j]] * v[[i, k]];
                    }
                    e[j] = g / h;
                    f += e[j] * v[[i, j]];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = v[[i, j]];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        let delta = f * e[k] + g * v[[i, k]];
                        v[[j, k]] -= delta;
                    }
                }
            }
        } else {
            e[i] = v[[i, l]];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += v[[i, k]] * v[[k, j]];
                }
                for k in 0..i {
                    let delta = g * v[[k, i]];
                    v[[k, j]] -= delta;
                }
            }
        }
        d[i] = v[[i, i]];
        v[[i, i]] = 1.0;
        for j in 0..i {
            v[[j, i]] = 0.0;
            v[[i, j]] = 0.0;
        }
    }
}

/// Implicit-shift QL on the tridiagonal (d, e), rotating `v` along.
fn tql2(v: &mut Array2<f64>, d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    // Absolute deflation floor (Wilkinson): off-diagonals below eps * |T|
    // are negligible for the spectrum at the eps * |T| accuracy this
    // decomposition promises. The neighbor-relative test alone stalls on
    // the exponentially clustered near-zero eigenvalues of kernel matrices.
    let anorm = (0..n)
        .map(|i| d[i].abs() + e[i].abs() + if i > 0 { e[i - 1].abs() } else { 0.0 })
        .fold(0.0f64, f64::max);
    let floor = f64::EPSILON * anorm;

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Find a negligible subdiagonal element.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::NoConvergence("symmetric QL iteration"));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut underflowed = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Rotation underflow: drop the shift and restart the sweep.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflowed = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    f = v[[k, i + 1]];
                    v[[k, i + 1]] = s * v[[k, i]] + c * f;
                    v[[k, i]] = c * v[[k, i]] - s * f;
                }
            }
            if underflowed {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
