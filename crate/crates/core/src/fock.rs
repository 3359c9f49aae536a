//! Occupation-number (Fock) states and basis enumeration.

use std::fmt;

use crate::error::{Error, Result};

/// Largest total photon number the simulator accepts. Factorials up to this
/// bound fit a `u64` exactly, and permanent evaluation stays tractable.
pub const MAX_PHOTONS: u32 = 20;

/// `k!` for `k <= MAX_PHOTONS`.
pub fn factorial(k: u32) -> Result<u64> {
    if k > MAX_PHOTONS {
        return Err(Error::TooManyPhotons(k));
    }
    Ok(FACTORIALS[k as usize])
}

const FACTORIALS: [u64; 21] = {
    let mut t = [1u64; 21];
    let mut k = 1;
    while k <= 20 {
        t[k] = t[k - 1] * k as u64;
        k += 1;
    }
    t
};

/// `C(n, k)` for `n <= MAX_PHOTONS`.
pub fn binomial(n: u32, k: u32) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    Ok(factorial(n)? / factorial(k)? / factorial(n - k)?)
}

/// A basis state of the bosonic Hilbert space: photons per spatial mode.
///
/// Two states compare equal iff their occupation vectors are identical
/// elementwise. The ordering is lexicographic on the occupations, which
/// [`enumerate`] relies on (descending) for its contract.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    occupations: Vec<u32>,
}

impl FockState {
    /// Builds a state from photon counts per mode. Needs at least one mode
    /// and at most [`MAX_PHOTONS`] photons in total.
    pub fn new(occupations: Vec<u32>) -> Result<Self> {
        if occupations.is_empty() {
            return Err(Error::NoModes);
        }
        let total: u32 = occupations.iter().sum();
        if total > MAX_PHOTONS {
            return Err(Error::TooManyPhotons(total));
        }
        Ok(Self { occupations })
    }

    /// All photons in the first mode: `|n, 0, ..., 0>`.
    pub fn single_mode(photons: u32, modes: usize) -> Result<Self> {
        let mut occupations = vec![0; modes.max(1)];
        occupations[0] = photons;
        if modes == 0 {
            return Err(Error::NoModes);
        }
        Self::new(occupations)
    }

    pub fn occupations(&self) -> &[u32] {
        &self.occupations
    }

    pub fn modes(&self) -> usize {
        self.occupations.len()
    }

    /// Total photon number.
    pub fn photons(&self) -> u32 {
        self.occupations.iter().sum()
    }

    /// Product of the factorials of the occupations.
    pub(crate) fn occupation_factorial(&self) -> u64 {
        self.occupations
            .iter()
            .map(|&k| FACTORIALS[k as usize])
            .product()
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, n) in self.occupations.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ">")
    }
}

/// Enumerates every `m`-mode state with `n` photons in descending
/// lexicographic order of the occupation vector.
///
/// The order is part of the contract: `(2, 0)` precedes `(1, 1)` precedes
/// `(0, 2)`. The list has `C(n + m - 1, m - 1)` entries; `n = 0` yields the
/// single all-zeros state.
pub fn enumerate(modes: usize, photons: u32) -> Result<Vec<FockState>> {
    if modes == 0 {
        return Err(Error::NoModes);
    }
    if photons > MAX_PHOTONS {
        return Err(Error::TooManyPhotons(photons));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(modes);
    fill(modes, photons, &mut prefix, &mut out);
    Ok(out)
}

fn fill(modes: usize, photons: u32, prefix: &mut Vec<u32>, out: &mut Vec<FockState>) {
    if modes == 1 {
        prefix.push(photons);
        out.push(FockState {
            occupations: prefix.clone(),
        });
        prefix.pop();
        return;
    }
    for first in (0..=photons).rev() {
        prefix.push(first);
        fill(modes - 1, photons - first, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn occ(states: &[FockState]) -> Vec<Vec<u32>> {
        states.iter().map(|s| s.occupations().to_vec()).collect()
    }

    #[test]
    fn two_modes_two_photons() {
        let states = enumerate(2, 2).unwrap();
        assert_eq!(occ(&states), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn three_modes_one_photon() {
        let states = enumerate(3, 1).unwrap();
        assert_eq!(
            occ(&states),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
    }

    #[test]
    fn basis_size_matches_binomial() {
        // C(5 + 3 - 1, 3 - 1) = C(7, 2) = 21, counted independently of the
        // enumeration itself.
        let m = 3u32;
        let n = 5u32;
        let expected = binomial(n + m - 1, m - 1).unwrap() as usize;
        assert_eq!(expected, 21);
        assert_eq!(enumerate(3, 5).unwrap().len(), expected);
    }

    #[test]
    fn zero_photons_is_the_vacuum() {
        let states = enumerate(4, 0).unwrap();
        assert_eq!(occ(&states), vec![vec![0, 0, 0, 0]]);
    }

    #[test]
    fn enumeration_is_descending_lexicographic() {
        let states = enumerate(4, 3).unwrap();
        for pair in states.windows(2) {
            assert!(pair[0] > pair[1], "{} !> {}", pair[0], pair[1]);
        }
    }

    #[test]
    fn equality_is_elementwise() {
        let a = FockState::new(vec![1, 2]).unwrap();
        let b = FockState::new(vec![1, 2]).unwrap();
        let c = FockState::new(vec![2, 1]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn photon_cap_enforced() {
        assert!(matches!(
            FockState::new(vec![21]),
            Err(Error::TooManyPhotons(21))
        ));
        assert!(matches!(enumerate(2, 21), Err(Error::TooManyPhotons(21))));
        assert!(FockState::new(vec![20]).is_ok());
    }

    #[test]
    fn no_modes_rejected() {
        assert!(matches!(FockState::new(vec![]), Err(Error::NoModes)));
        assert!(matches!(enumerate(0, 1), Err(Error::NoModes)));
    }

    #[test]
    fn factorials_exact() {
        assert_eq!(factorial(0).unwrap(), 1);
        assert_eq!(factorial(5).unwrap(), 120);
        assert_eq!(factorial(20).unwrap(), 2_432_902_008_176_640_000);
        assert!(factorial(21).is_err());
    }
}
