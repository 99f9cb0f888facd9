//! Entry-level necessary conditions on automorphism matrices.
//!
//! Writing `w_k = 1` for adjacency algebras and `w_k = 1/d_k` for random-walk algebras, every
//! automorphism `f(e_i) = sum_k t_ik e_k` satisfies
//!
//! * orthogonality, for all `r` and `i != j`: `sum_{k in N(r)} w_k t_ik t_jk = 0`;
//! * squares, for all `i, r`: `sum_{k in N(r)} w_k t_ik^2 = w_i sum_{l in N(i)} t_lr`;
//! * twins `N(j) = N(k)`, for all `i`: `sum_{l in N(i)} t_lk = sum_{l in N(i)} t_lj` and
//!   `sum_{l in N(i)} w_l t_kl^2 = sum_{l in N(i)} w_l t_jl^2`;
//! * pendant vertices `N(l) = {c}`: `t_ic t_jc = 0` for `i != j`, and column `c` has exactly
//!   one nonzero entry.
//!
//! [`check_constraints`] evaluates every instance and reports each one that fails.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{AlgebraKind, EvolutionAlgebra};
use crate::automorphism::LinearMap;
use crate::field::Scalar;

/// Which instance failed; all indices are 1-based vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    Orthogonality {
        r: usize,
        i: usize,
        j: usize,
    },
    Square {
        i: usize,
        r: usize,
    },
    TwinColumn {
        j: usize,
        k: usize,
        i: usize,
    },
    TwinRow {
        j: usize,
        k: usize,
        i: usize,
    },
    PendantProduct {
        leaf: usize,
        i: usize,
        j: usize,
    },
    /// `nonzero` entries in the column of the leaf's neighbour, where exactly one is required.
    PendantColumn {
        leaf: usize,
        column: usize,
        nonzero: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintViolation {
    pub kind: ConstraintKind,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintReport {
    /// Number of instances evaluated.
    pub checked: usize,
    pub violations: Vec<ConstraintViolation>,
}

impl ConstraintReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {} != {}", self.kind, self.lhs, self.rhs)
    }
}

struct Ctx<'a> {
    a: &'a EvolutionAlgebra,
    t: &'a LinearMap,
    weights: Vec<Scalar>,
}

impl Ctx<'_> {
    fn t(&self, i: usize, k: usize) -> &Scalar {
        self.t.matrix().get(i, k)
    }

    fn nbrs(&self, v: usize) -> &[usize] {
        self.a.graph().adj0(v)
    }

    fn sum<I: Iterator<Item = Scalar>>(&self, it: I) -> Scalar {
        it.fold(Scalar::zero(self.a.ctx()), |acc, x| &acc + &x)
    }
}

fn weights(a: &EvolutionAlgebra) -> Vec<Scalar> {
    let ctx = a.ctx();
    let g = a.graph();
    (0..a.dim())
        .map(|v| match a.kind() {
            AlgebraKind::Adjacency => Scalar::one(ctx),
            AlgebraKind::RandomWalk => {
                let d = g.degree0(v).max(1);
                Scalar::from_rational(ctx, &BigRational::new(BigInt::from(1), BigInt::from(d)))
                    .expect("algebra construction checked degrees")
            }
        })
        .collect()
}

/// Evaluates every constraint instance for `f`. Panics if `f` does not match the algebra's
/// dimension or field.
pub fn check_constraints(a: &EvolutionAlgebra, f: &LinearMap) -> ConstraintReport {
    assert_eq!(f.dim(), a.dim(), "dimension mismatch");
    assert_eq!(f.ctx(), a.ctx(), "field mismatch");
    let c = Ctx {
        a,
        t: f,
        weights: weights(a),
    };
    let n = a.dim();
    let ctx = a.ctx();
    let zero = Scalar::zero(ctx);
    let mut report = ConstraintReport::default();
    let push = |report: &mut ConstraintReport, kind, lhs: Scalar, rhs: Scalar| {
        report.checked += 1;
        if lhs != rhs {
            report
                .violations
                .push(ConstraintViolation { kind, lhs, rhs });
        }
    };

    for r in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                let lhs = c.sum(
                    c.nbrs(r)
                        .iter()
                        .map(|&k| &(&c.weights[k] * c.t(i, k)) * c.t(j, k)),
                );
                let kind = ConstraintKind::Orthogonality {
                    r: r + 1,
                    i: i + 1,
                    j: j + 1,
                };
                push(&mut report, kind, lhs, zero.clone());
            }
        }
    }

    for i in 0..n {
        for r in 0..n {
            let lhs = c.sum(
                c.nbrs(r)
                    .iter()
                    .map(|&k| &c.weights[k] * &c.t(i, k).square()),
            );
            let rhs = &c.weights[i] * &c.sum(c.nbrs(i).iter().map(|&l| c.t(l, r).clone()));
            push(
                &mut report,
                ConstraintKind::Square { i: i + 1, r: r + 1 },
                lhs,
                rhs,
            );
        }
    }

    for j in 0..n {
        for k in j + 1..n {
            if c.nbrs(j) != c.nbrs(k) {
                continue;
            }
            for i in 0..n {
                let col = |x: usize| c.sum(c.nbrs(i).iter().map(|&l| c.t(l, x).clone()));
                let kind = ConstraintKind::TwinColumn {
                    j: j + 1,
                    k: k + 1,
                    i: i + 1,
                };
                push(&mut report, kind, col(k), col(j));
                let row = |x: usize| {
                    c.sum(
                        c.nbrs(i)
                            .iter()
                            .map(|&l| &c.weights[l] * &c.t(x, l).square()),
                    )
                };
                let kind = ConstraintKind::TwinRow {
                    j: j + 1,
                    k: k + 1,
                    i: i + 1,
                };
                push(&mut report, kind, row(k), row(j));
            }
        }
    }

    for leaf in 0..n {
        let [centre] = c.nbrs(leaf) else {
            continue;
        };
        let centre = *centre;
        for i in 0..n {
            for j in i + 1..n {
                let lhs = c.t(i, centre) * c.t(j, centre);
                let kind = ConstraintKind::PendantProduct {
                    leaf: leaf + 1,
                    i: i + 1,
                    j: j + 1,
                };
                push(&mut report, kind, lhs, zero.clone());
            }
        }
        let nonzero = (0..n).filter(|&i| !c.t(i, centre).is_zero()).count();
        let kind = ConstraintKind::PendantColumn {
            leaf: leaf + 1,
            column: centre + 1,
            nonzero,
        };
        report.checked += 1;
        if nonzero != 1 {
            report.violations.push(ConstraintViolation {
                kind,
                lhs: Scalar::from_int(ctx, nonzero as i64),
                rhs: Scalar::one(ctx),
            });
        }
    }
    report
}
