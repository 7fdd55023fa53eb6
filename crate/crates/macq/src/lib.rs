//! Moment-angle complexes, their circle quotients, and exact homology
//! oracles.
//!
//! For a simplicial complex `K` on `[m]`, the moment-angle complex `Z_K` is
//! the union of products `(D^2, S^1)^σ` over the faces `σ ∈ K`, carrying a
//! coordinatewise torus action. This crate implements:
//!
//! - the combinatorial constructions behind the skeleton and `L`-family
//!   decompositions ([`simplicial`]);
//! - a symbolic algebra of homotopy types (wedges, joins, half-smashes,
//!   `CP^n`, tori) with closed formulas for `Z` of skeleta and for the
//!   quotients `Z/S^1_d` under the diagonal circle ([`homotopy`]);
//! - an exact integer cellular homology oracle for `Z_K`, with a
//!   Hochster-style full-subcomplex cross-check ([`chain`]);
//! - circle-subgroup bookkeeping (weights, freeness, quotient matrix) and a
//!   Koszul-complex computation of the quotient cohomology ([`quotient`]);
//! - the sparse exact integer linear algebra underneath ([`linalg`]).
//!
//! The `verify` machinery in [`cli`] sweeps the symbolic formulas against
//! both oracles degree by degree; `cargo run --example verify_sweep` drives
//! the whole thing.

pub mod chain;
pub mod cli;
pub mod error;
pub mod homotopy;
pub mod linalg;
pub mod poincare;
pub mod quotient;
pub mod simplicial;

pub use error::{Error, Result};
pub use simplicial::{Face, SimplicialComplex};
