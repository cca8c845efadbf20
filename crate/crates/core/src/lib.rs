//! Exact cohomology of nilpotent groups through their Malcev Lie algebras.
//!
//! The crate computes Chevalley–Eilenberg cohomology over Q, builds
//! 1-minimal-model towers from cup-product data together with the dual tower
//! of central extensions, tests 1-formality, and produces the weight-graded
//! Hodge data of Z-central extensions of free abelian groups from their Gysin
//! sequence. All arithmetic is exact.

pub mod budget;
pub mod cli;
pub mod cohomology;
pub mod extension;
pub mod exterior;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod minimal_model;
pub mod rational;
pub mod transfer;

pub use budget::{Budget, BudgetExceeded};
pub use cohomology::{betti_numbers, ce_differential, cohomology_basis, CohomologyBasis};
pub use extension::{ExtensionDatum, WeightGradedHodge};
pub use exterior::{wedge_basis, ExteriorAlgebra, MultiIndex};
pub use lie::{LieAlgebra, LieError};
pub use linalg::{quotient_dim, Matrix, Subspace};
pub use minimal_model::{build_tower, CupData, HirschTower, LieTower};
pub use rational::Rational;
pub use transfer::FiniteGroupAction;
