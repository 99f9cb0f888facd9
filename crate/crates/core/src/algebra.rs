//! Evolution algebras attached to a graph.
//!
//! With natural basis `e_1, ..., e_n`, the product is `e_i e_j = 0` for `i != j` and
//! `e_i^2 = sum_k m_ik e_k`, where `m` is the structure matrix: the adjacency matrix for
//! [`AlgebraKind::Adjacency`], the random-walk transition matrix for
//! [`AlgebraKind::RandomWalk`].

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Scalar};
use crate::graph::Graph;
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Adjacency,
    RandomWalk,
}

impl AlgebraKind {
    /// Short CLI name: `adj` or `rw`.
    pub fn short_name(self) -> &'static str {
        match self {
            AlgebraKind::Adjacency => "adj",
            AlgebraKind::RandomWalk => "rw",
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::Adjacency => "adjacency",
            AlgebraKind::RandomWalk => "random-walk",
        })
    }
}

/// Coordinates of an algebra element in the natural basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zero(ctx: FieldCtx, n: usize) -> Vector {
        Vector(alloc::vec![Scalar::zero(ctx); n])
    }

    /// The basis vector `e_i`, 1-based.
    pub fn basis(ctx: FieldCtx, n: usize, i: usize) -> Vector {
        let mut v = Vector::zero(ctx, n);
        v.0[i - 1] = Scalar::one(ctx);
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionAlgebra {
    kind: AlgebraKind,
    ctx: FieldCtx,
    m: Matrix,
    graph: Graph,
}

impl EvolutionAlgebra {
    pub fn build(graph: &Graph, kind: AlgebraKind, ctx: FieldCtx) -> Result<EvolutionAlgebra> {
        let m = match kind {
            AlgebraKind::Adjacency => graph.adjacency_matrix(ctx),
            AlgebraKind::RandomWalk => graph.transition_matrix(ctx)?,
        };
        Ok(EvolutionAlgebra {
            kind,
            ctx,
            m,
            graph: graph.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn structure_matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// `e_i e_j` for 1-based indices.
    pub fn basis_product(&self, i: usize, j: usize) -> Result<Vector> {
        let n = self.dim();
        for index in [i, j] {
            if index == 0 || index > n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        if i != j {
            return Ok(Vector::zero(self.ctx, n));
        }
        Ok(Vector(self.m.row(i - 1).to_vec()))
    }

    fn check_vector(&self, v: &Vector) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        if let Some(x) = v.0.iter().find(|x| x.ctx() != self.ctx) {
            return Err(Error::MixedField {
                left: alloc::string::ToString::to_string(&self.ctx),
                right: alloc::string::ToString::to_string(&x.ctx()),
            });
        }
        Ok(())
    }

    /// `uv = sum_k u_k v_k e_k^2`.
    pub fn multiply(&self, u: &Vector, v: &Vector) -> Result<Vector> {
        self.check_vector(u)?;
        self.check_vector(v)?;
        Ok(self.multiply_unchecked(&u.0, &v.0))
    }

    /// Product of coordinate slices already known to match this algebra.
    pub(crate) fn multiply_unchecked(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = Vector::zero(self.ctx, n);
        for k in 0..n {
            if u[k].is_zero() || v[k].is_zero() {
                continue;
            }
            let c = &u[k] * &v[k];
            for &r in self.graph.adj0(k) {
                let term = &c * self.m.get(k, r);
                out.0[r] = &out.0[r] + &term;
            }
        }
        out
    }

    /// Structure matrix is invertible.
    pub fn is_perfect(&self) -> bool {
        !self
            .m
            .determinant()
            .expect("structure matrix is square over one field")
            .is_zero()
    }

    /// Every `e_i^2` is nonzero.
    pub fn is_nondegenerate(&self) -> bool {
        (0..self.dim()).all(|i| self.m.row(i).iter().any(|x| !x.is_zero()))
    }

    /// Every pair `{e_i^2, e_j^2}` with `i != j` is linearly independent, i.e. some 2x2 minor
    /// of the two stacked rows is nonzero.
    pub fn is_2li(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if !self.rows_independent(i, j) {
                    return false;
                }
            }
        }
        true
    }

    fn rows_independent(&self, i: usize, j: usize) -> bool {
        let (ri, rj) = (self.m.row(i), self.m.row(j));
        let n = self.dim();
        for a in 0..n {
            for b in a + 1..n {
                let minor = &(&ri[a] * &rj[b]) - &(&ri[b] * &rj[a]);
                if !minor.is_zero() {
                    return true;
                }
            }
        }
        false
    }
}
