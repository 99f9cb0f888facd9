//! Side-by-side comparison of the adjacency and random-walk algebras of one graph.

use alloc::vec::Vec;

use crate::algebra::{AlgebraKind, EvolutionAlgebra};
use crate::automorphism::{enumerate_aut, AutResult, DiagonalAutomorphism};
use crate::error::Result;
use crate::field::{FieldCtx, Scalar};
use crate::graph::Graph;
use crate::symmetry::{symmetries, SymmetryGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub adjacency: AutResult,
    pub random_walk: AutResult,
    /// The two diagonal subgroups consist of the same diagonal vectors.
    pub diagonals_equal: bool,
    pub aut_sizes_equal: bool,
    /// `f_<s> <-> f'_<s>` pairs the two enumerations orbit by orbit and tag by tag.
    pub tag_bijection: bool,
    pub regular: Option<usize>,
    pub biregular: Option<(usize, usize)>,
    pub adjacency_perfect: bool,
    /// Non-singular and regular or biregular, the known criterion for the two algebras to
    /// be isomorphic.
    pub isomorphic_by_regularity: bool,
}

impl ComparisonReport {
    pub fn d1(&self) -> &[DiagonalAutomorphism] {
        &self.adjacency.diagonal
    }

    pub fn d2(&self) -> &[DiagonalAutomorphism] {
        &self.random_walk.diagonal
    }
}

pub fn compare_families(g: &Graph, ctx: FieldCtx) -> Result<ComparisonReport> {
    compare_families_with(g, ctx, &symmetries(g)?)
}

pub fn compare_families_with(
    g: &Graph,
    ctx: FieldCtx,
    sym: &SymmetryGroup,
) -> Result<ComparisonReport> {
    let adj = EvolutionAlgebra::build(g, AlgebraKind::Adjacency, ctx)?;
    let rw = EvolutionAlgebra::build(g, AlgebraKind::RandomWalk, ctx)?;
    let adjacency = enumerate_aut(&adj, sym)?;
    let random_walk = enumerate_aut(&rw, sym)?;
    let diags =
        |r: &AutResult| -> Vec<Vec<Scalar>> { r.diagonal.iter().map(|d| d.diag.clone()).collect() };
    let diagonals_equal = diags(&adjacency) == diags(&random_walk);
    let aut_sizes_equal = adjacency.len() == random_walk.len();
    let tag_bijection = diagonals_equal
        && adjacency
            .orbits
            .iter()
            .zip(&random_walk.orbits)
            .all(|(o1, o2)| {
                o1.members.len() == o2.members.len()
                    && o1.members.iter().zip(&o2.members).all(|(x, y)| x.0 == y.0)
            });
    let regular = g.is_regular();
    let biregular = g.is_biregular();
    let adjacency_perfect = adj.is_perfect();
    Ok(ComparisonReport {
        adjacency,
        random_walk,
        diagonals_equal,
        aut_sizes_equal,
        tag_bijection,
        regular,
        biregular,
        adjacency_perfect,
        isomorphic_by_regularity: adjacency_perfect && (regular.is_some() || biregular.is_some()),
    })
}
