//! Exact linear solvers: pivoted-QR least squares and Cholesky ridge.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};

/// Minimizes `||A c - y||_2`.
///
/// Householder QR with column pivoting; for rank-deficient `A` the
/// minimum-norm solution is produced via a complete orthogonal decomposition.
pub fn solve_least_squares(a: &Array2<f64>, y: &[f64]) -> Result<Array1<f64>> {
    Ok(solve_least_squares_with_rank(a, y)?.0)
}

/// As [`solve_least_squares`], also reporting the numerical rank of `A`.
pub fn solve_least_squares_with_rank(a: &Array2<f64>, y: &[f64]) -> Result<(Array1<f64>, usize)> {
    let (n, m) = a.dim();
    if n == 0 || m == 0 {
        return Err(Error::DimensionMismatch {
            context: "least squares matrix",
            expected: 1,
            actual: 0,
        });
    }
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            context: "least squares right-hand side",
            expected: n,
            actual: y.len(),
        });
    }

    let mut r = a.clone();
    let mut qty = Array1::from_iter(y.iter().copied());
    let mut perm: Vec<usize> = (0..m).collect();
    let steps = n.min(m);

    for k in 0..steps {
        // Pivot: bring the column with the largest remaining norm to front.
        let mut best = k;
        let mut best_norm = 0.0;
        for j in k..m {
            let norm: f64 = (k..n).map(|i| r[[i, j]] * r[[i, j]]).sum();
            if norm > best_norm {
                best_norm = norm;
                best = j;
            }
        }
        if best != k {
            for i in 0..n {
                r.swap([i, k], [i, best]);
            }
            perm.swap(k, best);
        }
        householder_left(&mut r, &mut qty, k);
    }

    // Numerical rank from the diagonal of R.
    let scale = r[[0, 0]].abs();
    let tol = scale * (n.max(m) as f64) * f64::EPSILON;
    let mut rank = 0;
    for k in 0..steps {
        if r[[k, k]].abs() > tol {
            rank += 1;
        } else {
            break;
        }
    }

    let mut solution = Array1::zeros(m);
    if rank == 0 {
        return Ok((solution, 0));
    }

    let permuted = if rank == m {
        // Full column rank: plain back substitution.
        let mut x = vec![0.0; m];
        for i in (0..m).rev() {
            let mut s = qty[i];
            for j in (i + 1)..m {
                s -= r[[i, j]] * x[j];
            }
            x[i] = s / r[[i, i]];
        }
        x
    } else {
        // Minimum-norm solution: LQ-factorize the leading `rank` rows of R
        // (QR of the transpose), solve the triangular core, map back.
        let mut rt = Array2::zeros((m, rank));
        for i in 0..rank {
            for j in 0..m {
                rt[[j, i]] = r[[i, j]];
            }
        }
        let mut q2 = Array2::from_shape_fn((m, m), |(i, j)| if i == j { 1.0 } else { 0.0 });
        for k in 0..rank {
            householder_explicit(&mut rt, &mut q2, k);
        }
        // rt is now T (rank x rank upper triangular, stored in the top rows);
        // solve T' z = qty[..rank] by forward substitution.
        let mut z = vec![0.0; rank];
        for i in 0..rank {
            let mut s = qty[i];
            for j in 0..i {
                s -= rt[[j, i]] * z[j];
            }
            z[i] = s / rt[[i, i]];
        }
        // x = Q2 [z; 0].
        let mut x = vec![0.0; m];
        for i in 0..m {
            x[i] = (0..rank).map(|j| q2[[i, j]] * z[j]).sum();
        }
        x
    };

    for (k, &col) in perm.iter().enumerate() {
        solution[col] = permuted[k];
    }
    Ok((solution, rank))
}

/// Applies the Householder reflection that zeroes column `k` below the
/// diagonal, updating `r` and the transformed right-hand side.
fn householder_left(r: &mut Array2<f64>, qty: &mut Array1<f64>, k: usize) {
    let n = r.nrows();
    let m = r.ncols();
    let norm: f64 = (k..n).map(|i| r[[i, k]] * r[[i, k]]).sum::<f64>().sqrt();
    if norm == 0.0 {
        return;
    }
    let alpha = if r[[k, k]] > 0.0 { -norm } else { norm };
    let mut v: Vec<f64> = (k..n).map(|i| r[[i, k]]).collect();
    v[0] -= alpha;
    let vnorm2: f64 = v.iter().map(|x| x * x).sum();
    if vnorm2 == 0.0 {
        return;
    }
    for j in k..m {
        let dot: f64 = v.iter().enumerate().map(|(i, &vi)| vi * r[[k + i, j]]).sum();
        let f = 2.0 * dot / vnorm2;
        for (i, &vi) in v.iter().enumerate() {
            r[[k + i, j]] -= f * vi;
        }
    }
    let dot: f64 = v.iter().enumerate().map(|(i, &vi)| vi * qty[k + i]).sum();
    let f = 2.0 * dot / vnorm2;
    for (i, &vi) in v.iter().enumerate() {
        qty[k + i] -= f * vi;
    }
}

/// Householder step that also accumulates the orthogonal factor explicitly
/// (columns of `q` are updated from the right).
fn householder_explicit(r: &mut Array2<f64>, q: &mut Array2<f64>, k: usize) {
    let n = r.nrows();
    let m = r.ncols();
    let norm: f64 = (k..n).map(|i| r[[i, k]] * r[[i, k]]).sum::<f64>().sqrt();
    if norm == 0.0 {
        return;
    }
    let alpha = if r[[k, k]] > 0.0 { -norm } else { norm };
    let mut v: Vec<f64> = (k..n).map(|i| r[[i, k]]).collect();
    v[0] -= alpha;
    let vnorm2: f64 = v.iter().map(|x| x * x).sum();
    if vnorm2 == 0.0 {
        return;
    }
    for j in k..m {
        let dot: f64 = v.iter().enumerate().map(|(i, &vi)| vi * r[[k + i, j]]).sum();
        let f = 2.0 * dot / vnorm2;
        for (i, &vi) in v.iter().enumerate() {
            r[[k + i, j]] -= f * vi;
        }
    }
    let q_rows = q.nrows();
    for i in 0..q_rows {
        let dot: f64 = v.iter().enumerate().map(|(j, &vj)| vj * q[[i, k + j]]).sum();
        let f = 2.0 * dot / vnorm2;
        for (j, &vj) in v.iter().enumerate() {
            q[[i, k + j]] -= f * vj;
        }
    }
}

/// Solves `(K + alpha I) beta = y` by Cholesky factorization.
///
/// `K` must be symmetric within 1e-9 and `K + alpha I` positive definite;
/// a failed pivot reports [`Error::NotPositiveDefinite`] so the caller can
/// raise `alpha`.
pub fn solve_ridge(k: &Array2<f64>, y: &[f64], alpha: f64) -> Result<Array1<f64>> {
    let (n, m) = k.dim();
    if n != m {
        return Err(Error::NonSquareMatrix { rows: n, cols: m });
    }
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            context: "ridge right-hand side",
            expected: n,
            actual: y.len(),
        });
    }
    if alpha < 0.0 {
        return Err(Error::NegativeAlpha(alpha));
    }
    let mut asym = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            asym = asym.max((k[[i, j]] - k[[j, i]]).abs());
        }
    }
    if asym > 1e-9 {
        return Err(Error::NotSymmetric(asym));
    }

    // Lower-triangular Cholesky of K + alpha I.
    let mut l = Array2::<f64>::zeros((n, n));
    for j in 0..n {
        let mut d = k[[j, j]] + alpha;
        for p in 0..j {
            d -= l[[j, p]] * l[[j, p]];
        }
        if d <= 0.0 {
            return Err(Error::NotPositiveDefinite);
        }
        l[[j, j]] = d.sqrt();
        for i in (j + 1)..n {
            let mut s = k[[i, j]];
            for p in 0..j {
                s -= l[[i, p]] * l[[j, p]];
            }
            l[[i, j]] = s / l[[j, j]];
        }
    }

    // Forward then back substitution.
    let mut z = vec![0.0; n];
    for i in 0..n {
        let mut s = y[i];
        for j in 0..i {
            s -= l[[i, j]] * z[j];
        }
        z[i] = s / l[[i, i]];
    }
    let mut beta = Array1::zeros(n);
    for i in (0..n).rev() {
        let mut s = z[i];
        for j in (i + 1)..n {
            s -= l[[j, i]] * beta[j];
        }
        beta[i] = s / l[[i, i]];
    }
    Ok(beta)
}
