//! Entanglement molecules: multi-qubit states whose two-qubit reduced states realize a
//! prescribed weighted graph of entangled pairs, plus the numerical tools that verify it
//! (partial traces, concurrence, entanglement of formation, PPT, fully entangled
//! fraction).
//!
//! The family state `(1/M) sum x_kl |Psi_kl><Psi_kl|` of a [`molecule::MoleculeSpec`] has
//! pair concurrence `x_kl / M` on every bound pair and zero elsewhere;
//! [`molecule::FamilyState`] computes its reductions without ever forming the dense
//! operator.

pub mod analysis;
pub mod bounds;
pub mod cli;
pub mod config;
pub mod dot;
pub mod error;
pub mod measures;
pub mod molecule;
pub mod qcore;
pub mod rng;
pub mod sampling;
pub mod states;

pub use config::{Limits, Tolerances};
pub use error::{Error, Result};
