//! Brute-force automorphism enumeration, used to certify or refute [`enumerate_aut`].
//!
//! The full-matrix search works over `F_p` and assigns `f(e_v)` one row at a time, highest
//! degree first. Once rows `u` are fixed, `f(e_u) f(e_v) = 0` is linear in the new row, so
//! candidates are drawn from a kernel rather than from all of `F_p^n`. A square condition
//! `f(e_i)^2 = sum_k m_ik f(e_k)` is checked as soon as every row it mentions is known.
//!
//! The monomial search tries every `sigma` in `S_n` and every vector of cube roots of unity.
//!
//! Both searches can be split into independent branches (first row, resp. `sigma`) that share
//! one candidate counter, so callers with threads can run them in parallel.
//!
//! [`enumerate_aut`]: crate::automorphism::enumerate_aut

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::algebra::EvolutionAlgebra;
use crate::automorphism::{is_automorphism, AutResult, Certificate, LinearMap};
use crate::error::{Error, Result};
use crate::field::{cube_roots_of_unity, pow_mod, FieldCtx, Residue, Scalar};
use crate::symmetry::Permutation;

pub const DEFAULT_MAX_CANDIDATES: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleMode {
    FullMatrix,
    Monomial,
}

impl fmt::Display for OracleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleMode::FullMatrix => "FULL_MATRIX",
            OracleMode::Monomial => "MONOMIAL",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    max_candidates: u64,
    pub mode: OracleMode,
}

impl OracleBudget {
    /// `None` for a zero cap.
    pub fn new(max_candidates: u64, mode: OracleMode) -> Option<OracleBudget> {
        (max_candidates > 0).then_some(OracleBudget {
            max_candidates,
            mode,
        })
    }

    pub fn with_mode(mode: OracleMode) -> OracleBudget {
        OracleBudget {
            max_candidates: DEFAULT_MAX_CANDIDATES,
            mode,
        }
    }

    pub fn max_candidates(&self) -> u64 {
        self.max_candidates
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget::with_mode(OracleMode::FullMatrix)
    }
}

/// Sorted, duplicate-free automorphisms plus the number of candidates looked at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub maps: Vec<LinearMap>,
    pub visited: u64,
}

impl OracleOutcome {
    /// Merges branch results; the order of `parts` does not matter.
    pub fn merge(parts: impl IntoIterator<Item = Vec<LinearMap>>, visited: u64) -> OracleOutcome {
        let set: BTreeSet<LinearMap> = parts.into_iter().flatten().collect();
        OracleOutcome {
            maps: set.into_iter().collect(),
            visited,
        }
    }
}

fn bump(counter: &AtomicU64, cap: u64) -> Result<()> {
    let visited = counter.fetch_add(1, Ordering::Relaxed) + 1;
    if visited > cap {
        return Err(Error::BudgetExceeded { visited, cap });
    }
    Ok(())
}

fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Prime(r) => r.value(),
        _ => unreachable!("full-matrix search runs over a prime field"),
    }
}

fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

/// Basis of `{x : c . x = 0 for every row c}` over `F_p`.
fn kernel_basis(mut rows: Vec<Vec<u64>>, n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..n {
        let Some(found) = (top..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(top, found);
        let s = inv_mod(rows[top][col], p);
        for x in rows[top].iter_mut() {
            *x = *x * s % p;
        }
        for r in 0..rows.len() {
            let c = rows[r][col];
            if r == top || c == 0 {
                continue;
            }
            for k in 0..n {
                rows[r][k] = (rows[r][k] + (p - c) * rows[top][k]) % p;
            }
        }
        pivots.push(col);
        top += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; n];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][free]) % p;
            }
            v
        })
        .collect()
}

/// Row echelon form used to reject rows that would make the matrix singular.
#[derive(Clone, Default)]
struct Echelon {
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    /// Adds `x` if it is independent of the stored rows.
    fn extended(&self, x: &[u64], p: u64) -> Option<Echelon> {
        let mut x = x.to_vec();
        for (pc, row) in &self.rows {
            let c = x[*pc];
            if c != 0 {
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi = (*xi + (p - c) * ri) % p;
                }
            }
        }
        let pc = x.iter().position(|&v| v != 0)?;
        let s = inv_mod(x[pc], p);
        for v in x.iter_mut() {
            *v = *v * s % p;
        }
        let mut next = self.clone();
        next.rows.push((pc, x));
        Some(next)
    }
}

/// Exhaustive search for all automorphisms of an algebra over `F_p`.
pub struct FullMatrixSearch<'a> {
    a: &'a EvolutionAlgebra,
    p: u64,
    n: usize,
    m: Vec<Vec<u64>>,
    /// `order[d]` is the vertex whose row is chosen at depth `d`.
    order: Vec<usize>,
    /// Square conditions that become decidable at each depth.
    squares_at: Vec<Vec<usize>>,
    cap: u64,
}

impl<'a> FullMatrixSearch<'a> {
    pub fn new(a: &'a EvolutionAlgebra, budget: &OracleBudget) -> Result<FullMatrixSearch<'a>> {
        let FieldCtx::Prime(p) = a.ctx() else {
            return Err(Error::NoApplicableOracle(
                "the full-matrix oracle needs a prime field",
            ));
        };
        let p = p.get();
        let n = a.dim();
        let cap = budget.max_candidates;
        // p^n - 1 first rows, then roughly n! ways to complete each once orthogonality
        // has narrowed the supports.
        let estimate = (p as u128)
            .checked_pow(n as u32)
            .and_then(|first| (1..=n as u128).try_fold(first - 1, |acc, k| acc.checked_mul(k)));
        if estimate.is_none_or(|e| e > cap as u128) {
            return Err(Error::BudgetExceeded { visited: 0, cap });
        }
        let sm = a.structure_matrix();
        let m: Vec<Vec<u64>> = (0..n)
            .map(|i| (0..n).map(|k| residue(sm.get(i, k))).collect())
            .collect();
        let g = a.graph();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (core::cmp::Reverse(g.degree0(v)), v));
        let mut depth_of = vec![0; n];
        for (d, &v) in order.iter().enumerate() {
            depth_of[v] = d;
        }
        let mut squares_at = vec![Vec::new(); n];
        for i in 0..n {
            let last = (0..n)
                .filter(|&k| k == i || m[i][k] != 0)
                .map(|k| depth_of[k])
                .max()
                .unwrap_or(0);
            squares_at[last].push(i);
        }
        Ok(FullMatrixSearch {
            a,
            p,
            n,
            m,
            order,
            squares_at,
            cap,
        })
    }

    /// Number of first-row branches, `p^n - 1`.
    pub fn branch_count(&self) -> u64 {
        self.p.pow(self.n as u32) - 1
    }

    /// Explores the first-row branches in `range` (indices into `0..branch_count()`).
    pub fn run_branches(&self, range: Range<u64>, counter: &AtomicU64) -> Result<Vec<LinearMap>> {
        let mut out = Vec::new();
        let mut t = vec![vec![0u64; self.n]; self.n];
        for idx in range {
            bump(counter, self.cap)?;
            let mut code = idx + 1;
            let mut row = vec![0u64; self.n];
            for x in row.iter_mut() {
                *x = code % self.p;
                code /= self.p;
            }
            let Some(ech) = Echelon::default().extended(&row, self.p) else {
                continue;
            };
            t[self.order[0]] = row;
            if self.squares_ok(&t, 0) {
                self.extend(&mut t, 1, &ech, counter, &mut out)?;
            }
        }
        Ok(out)
    }

    pub fn run(&self) -> Result<OracleOutcome> {
        let counter = AtomicU64::new(0);
        let maps = self.run_branches(0..self.branch_count(), &counter)?;
        Ok(OracleOutcome::merge(
            [maps],
            counter.load(Ordering::Relaxed),
        ))
    }

    fn squares_ok(&self, t: &[Vec<u64>], depth: usize) -> bool {
        let (p, n, m) = (self.p, self.n, &self.m);
        self.squares_at[depth].iter().all(|&i| {
            (0..n).all(|r| {
                let lhs = (0..n).fold(0, |acc, k| (acc + t[i][k] * t[i][k] % p * m[k][r]) % p);
                let rhs = (0..n).fold(0, |acc, k| (acc + m[i][k] * t[k][r]) % p);
                lhs == rhs
            })
        })
    }

    fn extend(
        &self,
        t: &mut Vec<Vec<u64>>,
        depth: usize,
        ech: &Echelon,
        counter: &AtomicU64,
        out: &mut Vec<LinearMap>,
    ) -> Result<()> {
        let (p, n) = (self.p, self.n);
        if depth == n {
            out.push(self.finish(t)?);
            return Ok(());
        }
        // f(e_u) f(e_v) = sum_r (sum_k t_uk m_kr x_k) e_r must vanish for every fixed row u.
        let mut constraints = Vec::new();
        for &u in &self.order[..depth] {
            for r in 0..n {
                let c: Vec<u64> = (0..n).map(|k| t[u][k] * self.m[k][r] % p).collect();
                if c.iter().any(|&x| x != 0) {
                    constraints.push(c);
                }
            }
        }
        let basis = kernel_basis(constraints, n, p);
        let count = p.pow(basis.len() as u32);
        let v = self.order[depth];
        for code in 1..count {
            bump(counter, self.cap)?;
            let mut row = vec![0u64; n];
            let mut c = code;
            for b in &basis {
                let coeff = c % p;
                c /= p;
                if coeff != 0 {
                    for (x, y) in row.iter_mut().zip(b) {
                        *x = (*x + coeff * y) % p;
                    }
                }
            }
            let Some(next) = ech.extended(&row, p) else {
                continue;
            };
            t[v] = row;
            if self.squares_ok(t, depth) {
                self.extend(t, depth + 1, &next, counter, out)?;
            }
        }
        t[v] = vec![0; n];
        Ok(())
    }

    /// Converts a solution and re-checks it with the generic verifier.
    fn finish(&self, t: &[Vec<u64>]) -> Result<LinearMap> {
        let FieldCtx::Prime(prime) = self.a.ctx() else {
            unreachable!()
        };
        let rows = t
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| Scalar::Prime(Residue::new(x, prime)))
                    .collect()
            })
            .collect();
        let f = LinearMap::from_rows(rows)?;
        if !is_automorphism(self.a, &f)? {
            return Err(Error::NotAnAutomorphism);
        }
        Ok(f)
    }
}

/// All automorphisms of `a` over `F_p`, sorted.
pub fn brute_force_aut_fp(a: &EvolutionAlgebra, budget: &OracleBudget) -> Result<Vec<LinearMap>> {
    Ok(FullMatrixSearch::new(a, budget)?.run()?.maps)
}

/// Monomial maps `e_i -> mu_i e_{sigma(i)}` over all of `S_n` and all cube-root scalar vectors.
pub struct MonomialSearch<'a> {
    a: &'a EvolutionAlgebra,
    roots: Vec<Scalar>,
    cap: u64,
}

impl<'a> MonomialSearch<'a> {
    pub fn new(a: &'a EvolutionAlgebra, budget: &OracleBudget) -> Result<MonomialSearch<'a>> {
        let roots = cube_roots_of_unity(a.ctx());
        let n = a.dim() as u32;
        let cap = budget.max_candidates;
        let total = (1..=n as u128)
            .try_fold(1u128, |acc, k| acc.checked_mul(k))
            .and_then(|f| f.checked_mul((roots.len() as u128).checked_pow(n)?));
        if total.is_none_or(|t| t > cap as u128) {
            return Err(Error::BudgetExceeded { visited: 0, cap });
        }
        Ok(MonomialSearch { a, roots, cap })
    }

    /// Every permutation of `1..=n`, in lexicographic order of image lists.
    pub fn permutations(&self) -> Vec<Permutation> {
        let n = self.a.dim();
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = vec![Permutation::from_images0(cur.clone())];
        loop {
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Permutation::from_images0(cur.clone()));
        }
        out
    }

    /// `f(e_i^2)` is supported on `s(supp e_i^2)` and `f(e_i)^2` on `supp e_{s(i)}^2`,
    /// whatever the scalars, so a mismatch rules out the whole block for `s`.
    fn supports_match(&self, sigma: &Permutation) -> bool {
        let m = self.a.structure_matrix();
        let n = self.a.dim();
        (0..n).all(|i| {
            (0..n).all(|r| {
                !m.get(i, r).is_zero() == !m.get(sigma.apply0(i), sigma.apply0(r)).is_zero()
            })
        })
    }

    pub fn run_sigma(&self, sigma: &Permutation, counter: &AtomicU64) -> Result<Vec<LinearMap>> {
        let n = self.a.dim();
        let k = self.roots.len() as u64;
        let block = k.pow(n as u32);
        if !self.supports_match(sigma) {
            let visited = counter.fetch_add(block, Ordering::Relaxed) + block;
            if visited > self.cap {
                return Err(Error::BudgetExceeded {
                    visited,
                    cap: self.cap,
                });
            }
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for code in 0..block {
            bump(counter, self.cap)?;
            let mut c = code;
            let mu: Vec<Scalar> = (0..n)
                .map(|_| {
                    let r = self.roots[(c % k) as usize].clone();
                    c /= k;
                    r
                })
                .collect();
            let f = LinearMap::monomial(sigma, &mu)?;
            if is_automorphism(self.a, &f)? {
                out.push(f);
            }
        }
        Ok(out)
    }

    pub fn run(&self) -> Result<OracleOutcome> {
        let counter = AtomicU64::new(0);
        let parts = self
            .permutations()
            .iter()
            .map(|s| self.run_sigma(s, &counter))
            .collect::<Result<Vec<_>>>()?;
        Ok(OracleOutcome::merge(parts, counter.load(Ordering::Relaxed)))
    }
}

/// All monomial automorphisms with cube-root scalars, sorted.
pub fn monomial_oracle(a: &EvolutionAlgebra, budget: &OracleBudget) -> Result<Vec<LinearMap>> {
    Ok(MonomialSearch::new(a, budget)?.run()?.maps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// The full-matrix oracle found exactly the closed-form set.
    OracleVerified,
    /// The monomial oracle found exactly the closed-form set.
    MonomialConsistent,
    /// The oracle found an automorphism outside the closed form.
    HypothesisFalsified,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::OracleVerified => "ORACLE_VERIFIED",
            Verdict::MonomialConsistent => "MONOMIAL_CONSISTENT",
            Verdict::HypothesisFalsified => "HYPOTHESIS_FALSIFIED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedResult {
    pub verdict: Verdict,
    pub mode: OracleMode,
    /// The closed-form result; its certificate is upgraded on `OracleVerified`.
    pub result: AutResult,
    pub oracle_count: usize,
    pub candidates_visited: u64,
    /// Smallest oracle element missing from the closed form.
    pub counterexample: Option<LinearMap>,
}

/// Runs the oracle selected by `budget` and compares it with `closed`.
pub fn certify(
    a: &EvolutionAlgebra,
    closed: AutResult,
    budget: &OracleBudget,
) -> Result<CertifiedResult> {
    let outcome = match budget.mode {
        OracleMode::FullMatrix => FullMatrixSearch::new(a, budget)?.run()?,
        OracleMode::Monomial => MonomialSearch::new(a, budget)?.run()?,
    };
    judge(closed, budget.mode, outcome)
}

/// Compares an oracle outcome with the closed form. A closed-form element the oracle did
/// not find means one of the two is wrong, and is reported as an error.
pub fn judge(
    mut closed: AutResult,
    mode: OracleMode,
    outcome: OracleOutcome,
) -> Result<CertifiedResult> {
    let found: BTreeSet<&LinearMap> = outcome.maps.iter().collect();
    if closed.elements().iter().any(|f| !found.contains(f)) {
        return Err(Error::OracleMissedElement);
    }
    let counterexample = outcome.maps.iter().find(|f| !closed.contains(f)).cloned();
    let verdict = match (&counterexample, mode) {
        (Some(_), _) => Verdict::HypothesisFalsified,
        (None, OracleMode::FullMatrix) => Verdict::OracleVerified,
        (None, OracleMode::Monomial) => Verdict::MonomialConsistent,
    };
    if verdict == Verdict::OracleVerified && closed.certificate == Certificate::Hypothesis {
        closed.certificate = Certificate::OracleVerified;
    }
    Ok(CertifiedResult {
        verdict,
        mode,
        result: closed,
        oracle_count: outcome.maps.len(),
        candidates_visited: outcome.visited,
        counterexample,
    })
}
