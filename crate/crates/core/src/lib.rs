//! Weak commutativity construction `chi(g)` for finite-dimensional Lie
//! algebras over the rationals.
//!
//! The crate computes `chi(g)` from structure constants, its ideals
//! `R <= W <= L` and `D`, and the Schur multiplier `H_2(g; Q)` by three
//! independent routes (Chevalley–Eilenberg, Hopf formula, exterior square).

pub mod catalog;
pub mod chi_construct;
pub mod cli;
pub mod error;
pub mod exact_linalg;
pub mod free_lie;
pub mod homology;
pub mod lie_core;
pub mod nilpotent_quotient;
pub mod verify;

pub use chi_construct::{ChiAlgebra, ChiMethod};
pub use error::{Error, Result};
pub use exact_linalg::{Matrix, Rational, Subspace, Vector};
pub use free_lie::{BracketExpr, FreeNilpotentAlgebra};
pub use homology::HomologyReport;
pub use lie_core::{LieAlgebra, LieHom};
pub use nilpotent_quotient::{Presentation, QuotientResult};
pub use verify::VerificationReport;
