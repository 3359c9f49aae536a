//! Matrix permanents via Ryser's formula.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Permanent of a square complex matrix.
///
/// Ryser's inclusion-exclusion with Gray-code subset updates, O(2^k * k) for a
/// k x k matrix. The empty matrix has permanent 1. Rejects non-square input.
pub fn permanent(m: &Array2<Complex64>) -> Result<Complex64> {
    let (rows, cols) = m.dim();
    if rows != cols {
        return Err(Error::NonSquareMatrix { rows, cols });
    }
    let k = rows;
    if k == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    debug_assert!(k < 64, "permanent limited to k < 64");

    // Per(A) = (-1)^k sum_{S != 0} (-1)^|S| prod_i sum_{j in S} a_ij.
    // The Gray code flips one column per step, so the row sums update in O(k).
    let mut row_sums = vec![Complex64::new(0.0, 0.0); k];
    let mut total = Complex64::new(0.0, 0.0);
    let mut prev_gray = 0u64;
    for t in 1u64..(1u64 << k) {
        let gray = t ^ (t >> 1);
        let flipped = (gray ^ prev_gray).trailing_zeros() as usize;
        if gray & (1 << flipped) != 0 {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += m[[i, flipped]];
            }
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= m[[i, flipped]];
            }
        }
        let product: Complex64 = row_sums.iter().product();
        if (k as u32 + gray.count_ones()).is_multiple_of(2) {
            total += product;
        } else {
            total -= product;
        }
        prev_gray = gray;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;

    /// Brute-force permutation sum; the independent oracle for small k.
    fn permanent_naive(m: &Array2<Complex64>) -> Complex64 {
        let k = m.nrows();
        if k == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let mut cols: Vec<usize> = (0..k).collect();
        let mut total = Complex64::new(0.0, 0.0);
        permute(&mut cols, 0, m, &mut total);
        total
    }

    fn permute(cols: &mut Vec<usize>, at: usize, m: &Array2<Complex64>, total: &mut Complex64) {
        let k = cols.len();
        if at == k {
            let mut p = Complex64::new(1.0, 0.0);
            for (i, &j) in cols.iter().enumerate() {
                p *= m[[i, j]];
            }
            *total += p;
            return;
        }
        for i in at..k {
            cols.swap(at, i);
            permute(cols, at + 1, m, total);
            cols.swap(at, i);
        }
    }

    fn random_matrix(k: usize, rng: &mut SeededRng) -> Array2<Complex64> {
        Array2::from_shape_fn((k, k), |_| {
            Complex64::new(rng.uniform_range(-1.0, 1.0), rng.uniform_range(-1.0, 1.0))
        })
    }

    #[test]
    fn identity_2x2_is_one() {
        let m = Array2::from_diag_elem(2, Complex64::new(1.0, 0.0));
        let p = permanent(&m).unwrap();
        assert!((p - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn all_ones_2x2_is_two() {
        let m = Array2::from_elem((2, 2), Complex64::new(1.0, 0.0));
        let p = permanent(&m).unwrap();
        assert!((p - Complex64::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn empty_matrix_is_one() {
        let m = Array2::<Complex64>::zeros((0, 0));
        assert_eq!(permanent(&m).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn non_square_rejected() {
        let m = Array2::<Complex64>::zeros((2, 3));
        assert!(matches!(
            permanent(&m),
            Err(Error::NonSquareMatrix { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn random_4x4_matches_naive() {
        let mut rng = SeededRng::new(42);
        let m = random_matrix(4, &mut rng);
        let fast = permanent(&m).unwrap();
        let slow = permanent_naive(&m);
        assert!((fast - slow).norm() < 1e-10, "{fast} vs {slow}");
    }

    #[test]
    fn ryser_matches_naive_up_to_5x5() {
        // 100 seeded trials across sizes 1..=5.
        let mut rng = SeededRng::new(7);
        for trial in 0..100 {
            let k = 1 + trial % 5;
            let m = random_matrix(k, &mut rng);
            let fast = permanent(&m).unwrap();
            let slow = permanent_naive(&m);
            assert!(
                (fast - slow).norm() < 1e-10,
                "k={k} trial={trial}: {fast} vs {slow}"
            );
        }
    }
}
