//! Exact invariants of plane curve singularities computed from branch
//! parametrizations.
//!
//! Starting from one parametrization `t -> (x(t), y(t))` per branch, the
//! crate computes the Hilbert function `h(v) = dim O/J(v)` of the multi-index
//! valuation filtration, the value semigroup, the classical numerical
//! invariants, the Poincaré, motivic Poincaré and Alexander series, and the
//! lattice homology `HL^-` built from the cube complex weighted by `h`.
//! Almost every quantity is computed along two independent routes so that
//! they can be checked against each other.
//!
//! Everything is exact: rationals for parametrization coefficients and
//! evaluation matrices, integers (with Smith normal form) for homology.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod corpus;
pub mod curve;
pub mod error;
pub mod exactalg;
pub mod hilbert;
pub mod homology;
pub mod lattice;
pub mod latthom;
pub mod oslattice;
pub mod series;

pub use curve::{BivariatePoly, BranchParametrization, Curve, Valuation};
pub use error::{Error, Result};
pub use hilbert::{CurveInvariants, HilbertTable, LocalMatroid, Semigroup};
pub use homology::GradedGroup;
pub use lattice::{LatticePoint, SubsetMask};
pub use oslattice::Matroid;
pub use series::BoxSeries;
