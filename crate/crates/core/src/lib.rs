//! Exact Fock-state simulation of linear optical circuits and the machine-learning
//! classifiers built on top of it.
//!
//! The crate has three layers:
//!
//! - **Simulation** ([`fock`], [`circuit`], [`permanent`], [`simulate`], [`observable`]):
//!   occupation-number states, circuits of phase shifters and 50-50 beam splitters
//!   compiled to mode unitaries, and exact output distributions via matrix permanents.
//! - **Solvers** ([`optim`]): basin hopping and dual annealing for non-convex training,
//!   plus exact least-squares and ridge solvers for the linear paths.
//! - **Classifiers and data** ([`gkm`], [`rks`], [`vqc`], [`data`]): a trained-kernel
//!   classifier, randomized cosine features, a variational three-mode classifier, and
//!   the character-level molecular-string pipeline feeding them.
//!
//! All randomness is seeded; identical inputs produce identical outputs.

pub mod circuit;
pub mod data;
pub mod error;
pub mod fock;
pub mod gkm;
pub mod observable;
pub mod optim;
pub mod permanent;
pub mod persist;
pub mod rks;
pub mod rng;
pub mod simulate;
pub mod vqc;

pub use circuit::{CircuitSpec, Element, ModeUnitary, PhaseBindings, PhaseRef};
pub use error::{Error, ErrorCategory, Result};
pub use fock::FockState;
pub use observable::DiagonalObservable;
pub use simulate::OutputDistribution;
