//! Exact ranks of higher inclusion matrices of subsets and of `F_q`-subspaces
//! over fields of any characteristic, together with the combinatorial
//! machinery behind their rank resilience: Frankl ranks and Bier bases on the
//! set side, lattice-path codes, good fillings, Specht dimensions and
//! character vectors on the subspace side, and permutation / `GL(n, q)`
//! certificates that witness rank preservation after deleting rows.
//!
//! The crate is `no_std` and needs only `alloc`. IO, the command line and
//! report files live in the companion `incmat` crate.

#![no_std]

extern crate alloc;

pub mod character;
pub mod combin;
pub mod error;
pub mod field;
pub mod linalg;
pub mod qlat;
pub mod qrank;
pub mod report;
pub mod sets;

pub use character::CharacterCtx;
pub use error::{Error, Result};
pub use field::{make_field, FieldCtx, FieldSpec, Ffe};
pub use linalg::{EchelonBasis, ExactMatrix, SubspaceBasis};
pub use report::{Certificate, Mode, RankSource, ResilienceReport};
