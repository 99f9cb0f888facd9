//! Evolution algebras of graphs and their automorphism groups, in exact arithmetic.
//!
//! Given a connected simple graph, [`algebra::EvolutionAlgebra`] builds either the algebra
//! `A_G` (structure matrix = adjacency matrix) or `A_RW(G)` (structure matrix = random-walk
//! transition matrix) over `Q`, `Q(w)` with `w^3 = 1`, or `F_p`. The automorphism group is
//! computed as the disjoint union of orbits of the diagonal automorphisms under the graph's
//! symmetry group; [`oracle`] provides brute-force searches to check that on small inputs.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod automorphism;
pub mod compare;
pub mod constraints;
pub mod error;
pub mod field;
pub mod graph;
pub mod matrix;
pub mod oracle;
pub mod symmetry;

pub use algebra::{AlgebraKind, EvolutionAlgebra, Vector};
pub use automorphism::{
    act, diagonal_subgroup, enumerate_aut, is_automorphism, orbit, AutResult, Certificate,
    DiagonalAutomorphism, LinearMap, Orbit,
};
pub use compare::{compare_families, ComparisonReport};
pub use constraints::{check_constraints, ConstraintReport};
pub use error::{Error, Result, ValidationError};
pub use field::{cube_roots_of_unity, FieldCtx, Scalar};
pub use graph::Graph;
pub use matrix::Matrix;
pub use oracle::{certify, CertifiedResult, OracleBudget, OracleMode, Verdict};
pub use symmetry::{symmetries, Permutation, SymmetryGroup};
