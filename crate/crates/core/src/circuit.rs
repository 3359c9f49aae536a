//! Optical circuits and their compiled mode unitaries.
//!
//! A circuit is an ordered list of phase shifters and 50-50 beam splitters.
//! Compilation multiplies the element unitaries in application order (the
//! first element acts first), producing an m x m unitary on the modes.

use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for the unitarity check on construction.
const UNITARITY_TOL: f64 = 1e-12;

/// A phase value: fixed at build time or looked up by name at compile time.
#[derive(Debug, Clone, PartialEq)]
pub enum PhaseRef {
    Fixed(f64),
    Named(String),
}

impl From<f64> for PhaseRef {
    fn from(v: f64) -> Self {
        PhaseRef::Fixed(v)
    }
}

impl From<&str> for PhaseRef {
    fn from(name: &str) -> Self {
        PhaseRef::Named(name.to_string())
    }
}

/// Values for the named phase sources of a circuit.
#[derive(Debug, Clone, Default)]
pub struct PhaseBindings(BTreeMap<String, f64>);

impl PhaseBindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, name: &str, value: f64) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn set(&mut self, name: &str, value: f64) {
        self.0.insert(name.to_string(), value);
    }

    fn get(&self, name: &str) -> Result<f64> {
        self.0
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnboundPhase(name.to_string()))
    }
}

/// One optical element.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    /// Multiplies the amplitude on `mode` by `e^{i phi}`.
    PhaseShifter { mode: usize, phase: PhaseRef },
    /// Symmetric 50-50 beam splitter, `(1/sqrt 2) [[1, i], [i, 1]]` on the pair.
    BeamSplitter5050 { modes: (usize, usize) },
}

/// An ordered element list over a fixed number of modes.
///
/// Compiling the same spec with the same phase values yields an identical
/// [`ModeUnitary`].
#[derive(Debug, Clone)]
pub struct CircuitSpec {
    modes: usize,
    elements: Vec<Element>,
}

impl CircuitSpec {
    pub fn new(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::NoModes);
        }
        Ok(Self {
            modes,
            elements: Vec::new(),
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn phase_shifter(mut self, mode: usize, phase: impl Into<PhaseRef>) -> Result<Self> {
        if mode >= self.modes {
            return Err(Error::ModeOutOfRange {
                index: mode,
                modes: self.modes,
            });
        }
        self.elements.push(Element::PhaseShifter {
            mode,
            phase: phase.into(),
        });
        Ok(self)
    }

    pub fn beam_splitter(mut self, a: usize, b: usize) -> Result<Self> {
        let modes = self.modes;
        for index in [a, b] {
            if index >= modes {
                return Err(Error::ModeOutOfRange { index, modes });
            }
        }
        if a == b {
            return Err(Error::DegenerateBeamSplitter);
        }
        self.elements.push(Element::BeamSplitter5050 { modes: (a, b) });
        Ok(self)
    }

    /// Product of the element unitaries in application order.
    pub fn compile(&self, phases: &PhaseBindings) -> Result<ModeUnitary> {
        let m = self.modes;
        let mut u = Array2::from_diag_elem(m, Complex64::new(1.0, 0.0));
        for element in &self.elements {
            match element {
                Element::PhaseShifter { mode, phase } => {
                    let phi = match phase {
                        PhaseRef::Fixed(v) => *v,
                        PhaseRef::Named(name) => phases.get(name)?,
                    };
                    let factor = Complex64::from_polar(1.0, phi);
                    for j in 0..m {
                        u[[*mode, j]] *= factor;
                    }
                }
                Element::BeamSplitter5050 { modes: (a, b) } => {
                    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                    let si = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
                    for j in 0..m {
                        let ua = u[[*a, j]];
                        let ub = u[[*b, j]];
                        u[[*a, j]] = s * ua + si * ub;
                        u[[*b, j]] = si * ua + s * ub;
                    }
                }
            }
        }
        ModeUnitary::new(u)
    }
}

/// An m x m complex matrix acting on the modes; unitarity is checked on
/// construction. Immutable once built, safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeUnitary {
    entries: Array2<Complex64>,
}

impl ModeUnitary {
    pub fn new(entries: Array2<Complex64>) -> Result<Self> {
        let (rows, cols) = entries.dim();
        if rows != cols {
            return Err(Error::NonSquareMatrix { rows, cols });
        }
        if rows == 0 {
            return Err(Error::NoModes);
        }
        let deviation = unitarity_deviation(&entries);
        if deviation > UNITARITY_TOL {
            return Err(Error::NotUnitary(deviation));
        }
        Ok(Self { entries })
    }

    pub fn modes(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    /// `self * rhs` (this unitary applied after `rhs`).
    pub fn compose(&self, rhs: &ModeUnitary) -> Result<ModeUnitary> {
        if self.modes() != rhs.modes() {
            return Err(Error::ModeMismatch {
                left: self.modes(),
                right: rhs.modes(),
            });
        }
        ModeUnitary::new(self.entries.dot(&rhs.entries))
    }

    /// Max elementwise deviation of `U^dagger U` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&self.entries)
    }
}

fn unitarity_deviation(u: &Array2<Complex64>) -> f64 {
    let m = u.nrows();
    let mut worst = 0.0f64;
    for i in 0..m {
        for j in 0..m {
            let mut dot = Complex64::new(0.0, 0.0);
            for k in 0..m {
                dot += u[[k, i]].conj() * u[[k, j]];
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).norm());
        }
    }
    worst
}

/// Phase source name used by [`mzi_circuit`].
pub const MZI_PHASE: &str = "phase";

/// Two-mode Mach-Zehnder interferometer: beam splitter, named phase shifter
/// on mode 0, beam splitter. The composed matrix is
/// `[[ (e^{i phi}-1)/2, i(e^{i phi}+1)/2 ], [ i(e^{i phi}+1)/2, -(e^{i phi}-1)/2 ]]`.
pub fn mzi_circuit() -> CircuitSpec {
    CircuitSpec::new(2)
        .and_then(|c| c.beam_splitter(0, 1))
        .and_then(|c| c.phase_shifter(0, MZI_PHASE))
        .and_then(|c| c.beam_splitter(0, 1))
        .expect("static two-mode circuit")
}

/// Compiled MZI at a concrete phase.
pub fn mzi_unitary(phi: f64) -> ModeUnitary {
    mzi_circuit()
        .compile(&PhaseBindings::new().bind(MZI_PHASE, phi))
        .expect("MZI compiles for any phase")
}
