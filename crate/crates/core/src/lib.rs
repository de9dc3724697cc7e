//! Cyclic-flat matroids and the invariants that compare them.
//!
//! A [`Matroid`] is stored as its ranked lattice of cyclic flats, which is
//! enough to answer rank queries and small enough to construct by hand.
//! On top of that the crate computes flats, minors, duals, configurations,
//! catenary data, the G-invariant (both by brute force over permutations
//! and from catenary data), reduced cyclic chains and the Tutte polynomial,
//! and builds the lattice-extension and paving-pair constructions that
//! produce different matroids with equal G-invariants.

pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod ginv;
pub mod lattice;
pub mod matroid;
pub mod set;
pub mod tutte;
pub mod zfl;

pub use error::{Error, Result};
pub use lattice::{FiniteLattice, LabeledLattice};
pub use matroid::{FlatLattice, Matroid, Minor, PavingSpec};
pub use set::ElementSet;
pub use tutte::{tutte, Polynomial};
pub use zfl::{configuration_of, validate_z_axioms, Axiom, RankedFamily, ZViolation};
