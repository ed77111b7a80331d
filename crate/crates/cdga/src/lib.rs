//! Exact-arithmetic cohomology for finite-dimensional commutative
//! differential graded algebras generated in degree one.
//!
//! The crate computes, over Q (and Q(√3) where a change of basis needs it):
//! cohomology of the exterior complex of a presentation, invariant
//! subcomplexes of finite cyclic actions, triple and quadruple Massey
//! products, the G-Massey product with its containment space, symplectic-form
//! checks, torus-bundle lattice invariants, and a coordinate-level model of
//! the underlying group laws. Everything is exact; there is no floating
//! point anywhere.

pub mod action;
pub mod bundle;
pub mod cohomology;
pub mod coords;
pub mod dsl;
pub mod exterior;
pub mod linalg;
pub mod massey;
pub mod presets;
pub mod report;
pub mod scalar;
pub mod suite;

pub use cohomology::{CochainComplex, CohomologyClass};
pub use exterior::{CdgaPresentation, GradedElement};
pub use scalar::ExactScalar;
