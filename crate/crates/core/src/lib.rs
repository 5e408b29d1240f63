//! Order ideals, chain polynomials and face-vector algebra in exact
//! arithmetic.
//!
//! The pipeline runs from a finite poset `P` ([`poset`]) to its lattice of
//! order ideals `J(P)` and the chain counts of the lattice's proper part
//! ([`lattice`]), through the f/h/g-vector transforms ([`facenum`]) to the
//! inequality checks and the exhaustive harness in [`verify`]. The
//! [`complex`] module enumerates faces explicitly and serves as the
//! independent reference for the fast chain counts.

pub mod complex;
pub mod error;
pub mod facenum;
pub mod lattice;
pub mod poset;
pub mod verify;

pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use facenum::{BasisKind, BasisVector, Decomposition, FVector, GVector, HVector, Peak, WindowIndices};
pub use lattice::{ChainVector, IdealLattice};
pub use poset::{CanonicalKey, Poset};
pub use verify::{BatchConfig, BatchReport, LatticeAnalysis, TheoremReport, TheoremVerdict};

pub use num_bigint::{BigInt, BigUint};
