//! Exact multi-photon transition probabilities and output distributions.

use ndarray::Array2;
use num_complex::Complex64;

use crate::circuit::ModeUnitary;
use crate::error::{Error, Result};
use crate::fock::{self, FockState};
use crate::permanent::permanent;

/// Probabilities over the fixed-photon-number output basis of a circuit.
///
/// States appear in the order of [`fock::enumerate`]; probabilities sum to 1
/// within 1e-9 for any unitary input.
#[derive(Debug, Clone)]
pub struct OutputDistribution {
    states: Vec<FockState>,
    probabilities: Vec<f64>,
}

impl OutputDistribution {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockState, f64)> {
        self.states.iter().zip(self.probabilities.iter().copied())
    }

    /// Probability of one outcome; 0 for states outside the basis.
    pub fn probability_of(&self, state: &FockState) -> f64 {
        self.states
            .iter()
            .position(|s| s == state)
            .map_or(0.0, |i| self.probabilities[i])
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

/// `|<output| U |input>|^2` for photon-number states.
///
/// Builds the submatrix with row i of `U` repeated `s_i` times (input
/// occupations) and column j repeated `t_j` times (output occupations), takes
/// its permanent, and normalizes by the occupation factorials.
pub fn transition_probability(
    u: &ModeUnitary,
    input: &FockState,
    output: &FockState,
) -> Result<f64> {
    if input.modes() != u.modes() {
        return Err(Error::ModeMismatch {
            left: input.modes(),
            right: u.modes(),
        });
    }
    if output.modes() != u.modes() {
        return Err(Error::ModeMismatch {
            left: output.modes(),
            right: u.modes(),
        });
    }
    let n = input.photons();
    if n != output.photons() {
        return Err(Error::PhotonMismatch {
            input: n,
            output: output.photons(),
        });
    }
    let k = n as usize;
    let mut sub = Array2::<Complex64>::zeros((k, k));
    let entries = u.entries();
    let mut row = 0;
    for (i, &s_i) in input.occupations().iter().enumerate() {
        for _ in 0..s_i {
            let mut col = 0;
            for (j, &t_j) in output.occupations().iter().enumerate() {
                for _ in 0..t_j {
                    sub[[row, col]] = entries[[i, j]];
                    col += 1;
                }
            }
            row += 1;
        }
    }
    let amplitude = permanent(&sub)?;
    let norm = (input.occupation_factorial() * output.occupation_factorial()) as f64;
    Ok(amplitude.norm_sqr() / norm)
}

/// Full output distribution of `input` through `u`, over every state with the
/// same photon number and mode count.
pub fn output_distribution(u: &ModeUnitary, input: &FockState) -> Result<OutputDistribution> {
    let states = fock::enumerate(u.modes(), input.photons())?;
    let mut probabilities = Vec::with_capacity(states.len());
    for state in &states {
        probabilities.push(transition_probability(u, input, state)?);
    }
    Ok(OutputDistribution {
        states,
        probabilities,
    })
}

/// Closed-form Mach-Zehnder outcome probability: with `n` photons entering the
/// first mode, the chance of finding `m_out` in the second mode at phase `phi` is
/// `C(n, m_out) cos^{2 m_out}(phi/2) sin^{2(n - m_out)}(phi/2)`.
///
/// This is the analytic oracle for the permanent-based simulator on the
/// two-mode interferometer.
pub fn mzi_closed_form(photons: u32, m_out: u32, phi: f64) -> Result<f64> {
    if m_out > photons {
        return Err(Error::OutcomeOutOfRange { m_out, photons });
    }
    let c = fock::binomial(photons, m_out)? as f64;
    let half = 0.5 * phi;
    Ok(c * half.cos().powi(2 * m_out as i32) * half.sin().powi(2 * (photons - m_out) as i32))
}
