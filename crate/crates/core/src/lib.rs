//! Effective-homology engine: homology reductions of algebraic cellular
//! complexes built from admissible discrete vector fields, including the
//! (twisted) Eilenberg-Zilber reduction for simplicial sets.
//!
//! The building blocks:
//!
//! - [`key`], [`chain`], [`complex`], [`morphism`]: cells, exact integer
//!   chains, complexes with enumerable or predicate-only bases, chain
//!   morphisms.
//! - [`reduction`]: the (f, g, h) reduction data structure, its verifier,
//!   composition, and the homological perturbation theorem.
//! - [`dvf`]: discrete vector fields, V-paths, admissibility certificates,
//!   and the vector-field reduction theorem by two constructions.
//! - [`matrix`]: vector fields on sparse integer matrices, reduction
//!   heuristics, Smith normal form, homology of finite complexes.
//! - [`simplicial`]: simplicial sets in Eilenberg-triple form, built-in
//!   models, products and twisted products, normalization.
//! - [`ez`]: s-path combinatorics of prisms, filling sequences, the
//!   Eilenberg-Zilber vector field and reduction, classical formulas.

pub mod chain;
pub mod complex;
pub mod dvf;
pub mod ez;
pub mod key;
pub mod matrix;
pub mod morphism;
pub mod reduction;
pub mod sample;
pub mod simplicial;

pub use chain::{Chain, Coeff};
pub use complex::{
    boundary, incidence, verify_d_squared, BasisView, ComplexLike, Cx, Error, FiniteComplex,
    LazyComplex, Result,
};
pub use key::{Cell, Key};
pub use morphism::{apply_morphism, Morphism};
pub use reduction::{
    boundary_preimage, compose_reductions, lift_cycle, perturb, project_cycle, verify_reduction,
    Perturbation, Reduction,
};
