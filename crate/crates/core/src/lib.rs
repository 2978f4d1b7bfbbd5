//! Entropic quantum discord for bipartite qudit density matrices.
//!
//! The crate computes mutual information, classical correlation and discord
//! for a density matrix `ρ_AB` when projective (von Neumann) measurements are
//! made on a qubit or qutrit side, for any dimension of the partner system.
//! Measurements are described by the minimal angle sets: two angles for a
//! qubit and six (three polar angles, three phases) for a qutrit.
//!
//! Module map:
//!
//! * [`matrix`]: dense complex matrices.
//! * [`linalg`]: density validation, Hermitian eigensolver, partial trace,
//!   entropies and sparsity-block decomposition.
//! * [`measurements`]: qubit and qutrit projector families.
//! * [`discord`]: conditional ensembles, the classical-correlation search and
//!   closed forms for isotropic states.
//! * [`states`]: Bell, isotropic, X, extended-X and quantum-classical builders.
//! * [`systematics`]: exact parameter counts of X-type state families.
//!
//! Basis ordering is `|a⟩ ⊗ |b⟩` with the `A` index major: entry
//! `(a·d_B + b, a'·d_B + b')` lives in block `(a, a')` of the density matrix.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod discord;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod measurements;
pub mod states;
pub mod systematics;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, C64};

/// One of the two parties of a bipartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    /// The other party.
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

impl core::fmt::Display for Subsystem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Subsystem::A => f.write_str("A"),
            Subsystem::B => f.write_str("B"),
        }
    }
}
