//! Exact-arithmetic kernels for computational additive combinatorics.
//!
//! The crate is organized around a handful of small, independently testable
//! engines:
//!
//! - [`groups`] — arithmetic in `Z^r ⊕ Z/NZ`, the computational model of a
//!   finitely generated abelian group with cyclic torsion subgroup.
//! - [`polyring`] — sparse multivariate polynomials with exact coefficients
//!   (arbitrary-precision integers, or integers mod a prime) and
//!   degree-capped products for single-coefficient extraction.
//! - [`permdet`] — permanents and determinants over commutative rings, plus
//!   executable checkers for the determinant/permanent duality and symmetry
//!   identities.
//! - [`nullstellensatz`] — Combinatorial Nullstellensatz certificates and
//!   grid witness search.
//! - [`orderings`] — distinct-column-sum orderings of subset families and
//!   the parity counterexamples obstructing them.
//! - [`latincube`] — Cayley addition cubes, subcube extraction and Latin
//!   transversal search.
//! - [`sumsets`] — restricted-sumset lower bounds and witness searches over
//!   prime fields, with both direct-extraction and closed-form evaluation of
//!   the governing coefficients.
//!
//! Everything is exact: no floating point, no modular shortcuts that are not
//! themselves the object under study. Search routines are deterministic and
//! return lexicographically-first answers so CLI output is diffable.

pub mod budget;
pub mod groups;
pub mod latincube;
pub mod nullstellensatz;
pub mod orderings;
pub mod permdet;
pub mod polyring;
pub mod sumsets;

pub use budget::Budget;
