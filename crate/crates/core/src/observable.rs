//! Diagonal observables over the Fock basis.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fock::FockState;
use crate::simulate::OutputDistribution;

/// A measurement operator diagonal in the Fock basis with trainable real
/// coefficients, one per outcome state.
///
/// Coefficients are keyed by occupation vector, so basis reordering does not
/// invalidate a stored observable. States without a coefficient contribute 0.
/// The `scale` factor multiplies every coefficient and exists purely for
/// conditioning; it defaults to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalObservable {
    coefficients: BTreeMap<FockState, f64>,
    photons: u32,
    modes: usize,
    scale: f64,
}

impl DiagonalObservable {
    pub fn new(photons: u32, modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::NoModes);
        }
        Ok(Self {
            coefficients: BTreeMap::new(),
            photons,
            modes,
            scale: 1.0,
        })
    }

    /// Sets the coefficient of one outcome. The state must live in the same
    /// sector (photon number and mode count) as the observable.
    pub fn set(&mut self, state: FockState, coefficient: f64) -> Result<()> {
        if state.modes() != self.modes {
            return Err(Error::ModeMismatch {
                left: state.modes(),
                right: self.modes,
            });
        }
        if state.photons() != self.photons {
            return Err(Error::PhotonMismatch {
                input: state.photons(),
                output: self.photons,
            });
        }
        self.coefficients.insert(state, coefficient);
        Ok(())
    }

    pub fn with(mut self, state: FockState, coefficient: f64) -> Result<Self> {
        self.set(state, coefficient)?;
        Ok(self)
    }

    pub fn photons(&self) -> u32 {
        self.photons
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn set_scale(&mut self, scale: f64) {
        self.scale = scale;
    }

    /// Effective coefficient of a state: `scale * lambda`, 0 when unset.
    pub fn coefficient(&self, state: &FockState) -> f64 {
        self.scale * self.coefficients.get(state).copied().unwrap_or(0.0)
    }

    /// Stored (unscaled) coefficients in deterministic state order.
    pub fn coefficients(&self) -> impl Iterator<Item = (&FockState, f64)> {
        self.coefficients.iter().map(|(s, &c)| (s, c))
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Expectation value under an output distribution: sum of
    /// `coefficient(state) * probability`.
    pub fn expectation(&self, dist: &OutputDistribution) -> f64 {
        dist.iter()
            .map(|(state, p)| self.coefficient(state) * p)
            .sum()
    }
}

/// Expectation of `observable` under `dist`; missing coefficients count as 0.
pub fn expectation(observable: &DiagonalObservable, dist: &OutputDistribution) -> f64 {
    observable.expectation(dist)
}
