//! Exact constructions and verifiers for Kochen-Specker sets on Johnson
//! configurations, the star games played on them, and their Bell inequalities.
//!
//! Everything that decides a mathematical claim runs in exact arithmetic:
//! cyclotomic integers for orthogonality, big rationals for probabilities and
//! bounds, exact elimination for ranks. Floating point appears only in test
//! oracles.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! hadamard  ──►  ksets  ──►  games / bell
//!     ▲            ▲
//! cyclotomic    designs
//! ```
//!
//! * [`cyclotomic`] — arithmetic in Z[ζ_n] and exact Hermitian inner products.
//! * [`hadamard`] — generalized Hadamard matrices and S-Hadamard matrices.
//! * [`ksets`] — KS sets over J(N,2): construction, verification, search.
//! * [`designs`] — graphs, factorizations, RBIBDs, and the recursive
//!   construction of larger KS sets from smaller ones.
//! * [`games`] — star game variants, classical/quantum values, B-KS solving,
//!   visibility analysis under Werner noise.
//! * [`bell`] — Bell functionals, local bounds, Collins-Gisin coordinates,
//!   and the non-tightness certificate.

pub mod bell;
pub mod cyclotomic;
pub mod designs;
pub mod engine;
pub mod games;
pub mod hadamard;
pub mod ksets;
pub mod report;

pub use cyclotomic::{CycInt, CycVector};
pub use hadamard::{GHMatrix, SHadamard};
pub use ksets::{KSSet, Pair};
pub use report::VerificationReport;
