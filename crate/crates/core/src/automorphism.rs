//! Algebra automorphisms: verification, the diagonal subgroup, the column-permutation action
//! of `Sym(Γ)`, orbits and the orbit decomposition of `Aut`.
//!
//! Matrix convention: row `i` of a [`LinearMap`] holds the coordinates of `f(e_i)`, so
//! `f(e_i) = sum_k t_ik e_k`. A symmetry `s` acts by moving column `k` to column `s(k)`.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::algebra::{EvolutionAlgebra, Vector};
use crate::error::{Error, Result};
use crate::field::{cube_roots_of_unity, FieldCtx, Scalar};
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::symmetry::{Permutation, SymmetryGroup};

/// A linear endomorphism in the natural basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    t: Matrix,
}

impl LinearMap {
    pub fn new(t: Matrix) -> Result<LinearMap> {
        if !t.is_square() {
            return Err(Error::DimensionMismatch {
                expected: t.rows(),
                found: t.cols(),
            });
        }
        Ok(LinearMap { t })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<LinearMap> {
        LinearMap::new(Matrix::from_scalar_rows(rows)?)
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> LinearMap {
        LinearMap {
            t: Matrix::identity(ctx, n),
        }
    }

    /// `f(e_i) = d_i e_i`. Panics on an empty or mixed-field list.
    pub fn diagonal(entries: &[Scalar]) -> LinearMap {
        let ctx = entries[0].ctx();
        let mut t = Matrix::zeros(ctx, entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            t.set(i, i, x.clone());
        }
        LinearMap { t }
    }

    /// `f(e_i) = mu_i e_{s(i)}`.
    pub fn monomial(sigma: &Permutation, mu: &[Scalar]) -> Result<LinearMap> {
        if sigma.len() != mu.len() || mu.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: sigma.len(),
                found: mu.len(),
            });
        }
        let ctx = mu[0].ctx();
        let mut t = Matrix::zeros(ctx, mu.len(), mu.len());
        for (i, x) in mu.iter().enumerate() {
            if x.ctx() != ctx {
                return Err(Error::MixedField {
                    left: ctx.to_string(),
                    right: x.ctx().to_string(),
                });
            }
            t.set(i, sigma.apply0(i), x.clone());
        }
        Ok(LinearMap { t })
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    pub fn ctx(&self) -> FieldCtx {
        self.t.ctx()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.t
    }

    /// Coordinates of `f(e_i)`, 1-based.
    pub fn image_of_basis(&self, i: usize) -> &[Scalar] {
        self.t.row(i - 1)
    }

    /// `f(v)` for `v = sum_i v_i e_i`.
    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        let mut out = Vector::zero(self.ctx(), self.dim());
        for (i, x) in v.coords().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, t) in self.t.row(i).iter().enumerate() {
                if !t.is_zero() {
                    out.0[k] = out.0[k].checked_add(&x.checked_mul(t)?)?;
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ other`. In the row convention its matrix is `[other] * [self]`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap {
            t: other.t.mul(&self.t)?,
        })
    }

    pub fn determinant(&self) -> Scalar {
        self.t.determinant().expect("square single-field matrix")
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|k| i == k || self.t.get(i, k).is_zero()))
    }
}

impl Ord for LinearMap {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.dim();
        self.dim().cmp(&other.dim()).then_with(|| {
            for i in 0..n {
                for k in 0..n {
                    match self.t.get(i, k).cmp(other.t.get(i, k)) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for LinearMap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.t, f)
    }
}

/// A basis pair on which `f(e_i e_j) != f(e_i) f(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductViolation {
    /// 1-based.
    pub i: usize,
    /// 1-based.
    pub j: usize,
    /// `f(e_i e_j)`
    pub image_of_product: Vector,
    /// `f(e_i) f(e_j)`
    pub product_of_images: Vector,
}

fn check_compatible(a: &EvolutionAlgebra, f: &LinearMap) -> Result<()> {
    if f.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: f.dim(),
        });
    }
    if f.ctx() != a.ctx() {
        return Err(Error::MixedField {
            left: a.ctx().to_string(),
            right: f.ctx().to_string(),
        });
    }
    Ok(())
}

/// `f(e_i^2)` = `sum_k m_ik f(e_k)`.
fn image_of_square(a: &EvolutionAlgebra, f: &LinearMap, i: usize) -> Vector {
    let m = a.structure_matrix();
    let n = a.dim();
    let mut out = Vector::zero(a.ctx(), n);
    for k in 0..n {
        let c = m.get(i, k);
        if c.is_zero() {
            continue;
        }
        for (r, t) in f.t.row(k).iter().enumerate() {
            if !t.is_zero() {
                out.0[r] = &out.0[r] + &(c * t);
            }
        }
    }
    out
}

fn pair_violation(
    a: &EvolutionAlgebra,
    f: &LinearMap,
    i: usize,
    j: usize,
) -> Option<ProductViolation> {
    let rhs = a.multiply_unchecked(f.t.row(i), f.t.row(j));
    let lhs = if i == j {
        image_of_square(a, f, i)
    } else {
        Vector::zero(a.ctx(), a.dim())
    };
    (lhs != rhs).then(|| ProductViolation {
        i: i + 1,
        j: j + 1,
        image_of_product: lhs,
        product_of_images: rhs,
    })
}

fn products_hold(a: &EvolutionAlgebra, f: &LinearMap) -> bool {
    let n = a.dim();
    (0..n).all(|i| (i..n).all(|j| pair_violation(a, f, i, j).is_none()))
}

/// Every basis pair `i <= j` where `f` fails to be multiplicative.
pub fn product_violations(a: &EvolutionAlgebra, f: &LinearMap) -> Result<Vec<ProductViolation>> {
    check_compatible(a, f)?;
    let n = a.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            out.extend(pair_violation(a, f, i, j));
        }
    }
    Ok(out)
}

/// `f` is invertible and `f(e_i e_j) = f(e_i) f(e_j)` for all basis pairs.
pub fn is_automorphism(a: &EvolutionAlgebra, f: &LinearMap) -> Result<bool> {
    check_compatible(a, f)?;
    Ok(products_hold(a, f) && !f.determinant().is_zero())
}

/// A diagonal automorphism, stored as its diagonal `(t_11, ..., t_nn)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalAutomorphism {
    pub diag: Vec<Scalar>,
}

impl DiagonalAutomorphism {
    pub fn to_map(&self) -> LinearMap {
        LinearMap::diagonal(&self.diag)
    }

    pub fn is_identity(&self) -> bool {
        self.diag.iter().all(Scalar::is_one)
    }
}

/// The diagonal subgroup `D`.
///
/// Always contains the identity. When the graph is bipartite and the field has three cube
/// roots of unity `1, a, a^2`, it also contains the maps with `a` on the side of vertex 1 and
/// `a^2` on the other side, and vice versa. Each candidate is re-verified before it is
/// returned.
pub fn diagonal_subgroup(a: &EvolutionAlgebra) -> Vec<DiagonalAutomorphism> {
    let n = a.dim();
    let ctx = a.ctx();
    let mut candidates = alloc::vec![DiagonalAutomorphism {
        diag: alloc::vec![Scalar::one(ctx); n],
    }];
    let roots = cube_roots_of_unity(ctx);
    if let (Some(parts), [_, alpha, beta]) = (a.graph().bipartition(), roots.as_slice()) {
        for (x, y) in [(alpha, beta), (beta, alpha)] {
            let diag = (1..=n)
                .map(|v| {
                    if parts.contains_in_v1(v) {
                        x.clone()
                    } else {
                        y.clone()
                    }
                })
                .collect();
            candidates.push(DiagonalAutomorphism { diag });
        }
    }
    candidates
        .into_iter()
        .filter(|d| products_hold(a, &d.to_map()) && !d.diag.iter().any(Scalar::is_zero))
        .collect()
}

/// Moves column `k` of `f` to column `s(k)`, no checks.
pub(crate) fn act_unchecked(sigma: &Permutation, f: &LinearMap) -> LinearMap {
    let n = f.dim();
    let mut t = Matrix::zeros(f.ctx(), n, n);
    for i in 0..n {
        for k in 0..n {
            let x = f.t.get(i, k);
            if !x.is_zero() {
                t.set(i, sigma.apply0(k), x.clone());
            }
        }
    }
    LinearMap { t }
}

fn check_symmetry(sigma: &Permutation, g: &Graph) -> Result<()> {
    if sigma.len() != g.order() {
        return Err(Error::DimensionMismatch {
            expected: g.order(),
            found: sigma.len(),
        });
    }
    if !sigma.preserves(g) {
        return Err(Error::NotASymmetry(sigma.to_string()));
    }
    Ok(())
}

/// `f_<s>`: the automorphism with `f_<s>(e_i) = sum_k t_ik e_{s(k)}`.
pub fn act(sigma: &Permutation, f: &LinearMap, a: &EvolutionAlgebra) -> Result<LinearMap> {
    check_symmetry(sigma, a.graph())?;
    if !is_automorphism(a, f)? {
        return Err(Error::NotAnAutomorphism);
    }
    let g = act_unchecked(sigma, f);
    if !is_automorphism(a, &g)? {
        return Err(Error::NotAnAutomorphism);
    }
    Ok(g)
}

/// The orbit `{f_<s> : s in Sym(Γ)}`, tagged by `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub base: LinearMap,
    /// In symmetry-group order.
    pub members: Vec<(Permutation, LinearMap)>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, sigma: &Permutation) -> Option<&LinearMap> {
        self.members
            .iter()
            .find(|(s, _)| s == sigma)
            .map(|(_, f)| f)
    }

    /// The orbit group law `f_<s> * f_<g> = f_<s∘g>`, on tags.
    pub fn compose(&self, x: &Permutation, y: &Permutation) -> Result<Permutation> {
        for tag in [x, y] {
            if self.member(tag).is_none() {
                return Err(Error::UnknownMember(tag.to_string()));
            }
        }
        let xy = x.compose(y)?;
        if self.member(&xy).is_none() {
            return Err(Error::UnknownMember(xy.to_string()));
        }
        Ok(xy)
    }

    pub fn maps(&self) -> impl Iterator<Item = &LinearMap> {
        self.members.iter().map(|(_, f)| f)
    }
}

/// Builds `O_f` over the given symmetry group; every member is re-verified.
pub fn orbit(f: &LinearMap, s: &SymmetryGroup, a: &EvolutionAlgebra) -> Result<Orbit> {
    if !is_automorphism(a, f)? {
        return Err(Error::NotAnAutomorphism);
    }
    let mut members = Vec::with_capacity(s.order());
    for sigma in s.iter() {
        check_symmetry(sigma, a.graph())?;
        let g = act_unchecked(sigma, f);
        if !is_automorphism(a, &g)? {
            return Err(Error::NotAnAutomorphism);
        }
        members.push((sigma.clone(), g));
    }
    Ok(Orbit {
        base: f.clone(),
        members,
    })
}

/// If `f(e_i) = mu_i e_{s(i)}` with `s` a symmetry of `g`, returns `(s, mu)`.
pub fn is_induced_by_symmetry(f: &LinearMap, g: &Graph) -> Option<(Permutation, Vec<Scalar>)> {
    let n = f.dim();
    if n != g.order() {
        return None;
    }
    let mut images = Vec::with_capacity(n);
    let mut mu = Vec::with_capacity(n);
    for i in 0..n {
        let mut nz = f.t.row(i).iter().enumerate().filter(|(_, x)| !x.is_zero());
        let (k, x) = nz.next()?;
        if nz.next().is_some() {
            return None;
        }
        images.push(k + 1);
        mu.push(x.clone());
    }
    let sigma = Permutation::from_images(&images).ok()?;
    sigma.preserves(g).then_some((sigma, mu))
}

/// How much `enumerate_aut` can vouch for completeness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// Non-degenerate and 2LI: every automorphism is induced by a symmetry.
    Proven2li,
    /// An exhaustive oracle matched the result.
    OracleVerified,
    /// Complete only if every automorphism is induced by a symmetry.
    Hypothesis,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::Proven2li => "PROVEN_2LI",
            Certificate::OracleVerified => "ORACLE_VERIFIED",
            Certificate::Hypothesis => "HYPOTHESIS",
        })
    }
}

/// `Aut` as a disjoint union of orbits of diagonal automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutResult {
    pub symmetries: SymmetryGroup,
    pub diagonal: Vec<DiagonalAutomorphism>,
    /// One orbit per element of `diagonal`, same order.
    pub orbits: Vec<Orbit>,
    pub certificate: Certificate,
}

impl AutResult {
    /// All automorphisms: orbits in `D` order, members in symmetry order.
    pub fn elements(&self) -> Vec<&LinearMap> {
        self.orbits.iter().flat_map(Orbit::maps).collect()
    }

    pub fn len(&self) -> usize {
        self.orbits.iter().map(Orbit::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, f: &LinearMap) -> bool {
        self.orbits.iter().any(|o| o.maps().any(|g| g == f))
    }
}

/// `Aut(a) = ⊔_{f in D} O_f`, assuming every automorphism is induced by a symmetry; the
/// certificate records whether that assumption is proven.
pub fn enumerate_aut(a: &EvolutionAlgebra, s: &SymmetryGroup) -> Result<AutResult> {
    let diagonal = diagonal_subgroup(a);
    let orbits = diagonal
        .iter()
        .map(|d| orbit(&d.to_map(), s, a))
        .collect::<Result<Vec<_>>>()?;
    let mut seen = BTreeSet::new();
    for f in orbits.iter().flat_map(Orbit::maps) {
        if !seen.insert(f) {
            return Err(Error::OrbitsOverlap);
        }
    }
    let certificate = if a.is_nondegenerate() && a.is_2li() {
        Certificate::Proven2li
    } else {
        Certificate::Hypothesis
    };
    Ok(AutResult {
        symmetries: s.clone(),
        diagonal,
        orbits,
        certificate,
    })
}
