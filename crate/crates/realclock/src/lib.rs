//! Numerical toolkit for quantum evolution read through fluctuating clocks.
//!
//! A system evolved unitarily in an ideal background time, but observed
//! against a clock whose readings carry a growing uncertainty, is described
//! by a clock-smeared state. This crate implements that machinery end to
//! end on dense matrices:
//!
//! - [`qops`]: operator/state algebra: tensor products, commutators,
//!   Hermitian spectral decompositions, unitary conjugation, projections,
//!   trace distance.
//! - [`clock`]: clock models and relational evolution: reading-uncertainty
//!   laws, clock distributions and their moments, the clock-smeared density
//!   matrix, and conditional probabilities of observables given a clock
//!   reading.
//! - [`evolver`]: the induced energy-conserving dephasing propagator, as an
//!   exact eigenbasis closed form and as a fixed-step fourth-order
//!   integrator, plus off-diagonal damping envelopes.
//! - [`spincavity`]: a needle-spin-in-a-cavity measurement model with a
//!   stream of environment spins, the global x-product witness observable,
//!   and its closed-form expectation in the unitary, collapse and dephased
//!   regimes, with brute-force oracles at small environment sizes.
//! - [`undecidability`]: measurement-precision floors, the event verdict
//!   comparing the dephased coherence signal against the floor, and the
//!   critical environment size where the verdict flips.
//! - [`rng`]: the pinned xorshift64* generator behind every randomized
//!   test set and sweep.
//!
//! Units are natural (hbar = 1): times in seconds, energies in 1/s. Spin
//! components use S_i = sigma_i / 2 everywhere.

pub mod clock;
pub mod error;
pub mod evolver;
pub mod qops;
pub mod rng;
pub mod spincavity;
pub mod undecidability;

pub use error::{Error, Result};
pub use qops::{DensityMatrix, Operator, SpectralDecomposition};
