//! Thread-pool drivers for the searches in `evolaut_core`. Work is split into the independent
//! branches the core exposes; results are merged in a fixed order, so the answer does not
//! depend on the number of workers.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use evolaut_core::oracle::{judge, FullMatrixSearch, MonomialSearch, OracleOutcome};
use evolaut_core::symmetry::{SymmetrySearch, DEFAULT_SEARCH_NODES};
use evolaut_core::{
    AutResult, CertifiedResult, Error, EvolutionAlgebra, Graph, OracleBudget, OracleMode, Result,
    SymmetryGroup,
};

pub const THREADS_ENV: &str = "EVOLAUT_THREADS";

/// `EVOLAUT_THREADS` if set to a positive integer, else the available parallelism.
pub fn threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `job(0..jobs)` on up to `workers` threads and returns the results in job order.
/// After the first error no new jobs start; the error of the lowest failing job is returned.
fn run_jobs<T, F>(jobs: usize, workers: usize, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync,
{
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let done: Mutex<Vec<(usize, Result<T>)>> = Mutex::new(Vec::with_capacity(jobs));
    std::thread::scope(|s| {
        for _ in 0..workers.clamp(1, jobs.max(1)) {
            s.spawn(|| loop {
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs {
                    break;
                }
                let r = job(i);
                if r.is_err() {
                    stop.store(true, Ordering::Relaxed);
                }
                done.lock().unwrap().push((i, r));
            });
        }
    });
    let mut done = done.into_inner().unwrap();
    done.sort_by_key(|(i, _)| *i);
    done.into_iter().map(|(_, r)| r).collect()
}

pub fn symmetries(g: &Graph) -> Result<SymmetryGroup> {
    symmetries_with_budget(g, DEFAULT_SEARCH_NODES, threads())
}

pub fn symmetries_with_budget(g: &Graph, max_nodes: u64, workers: usize) -> Result<SymmetryGroup> {
    let search = SymmetrySearch::new(g, max_nodes);
    let branches = search.branches();
    let nodes = AtomicU64::new(0);
    let parts = run_jobs(branches.len(), workers, |i| {
        search.run_branch(branches[i], &nodes)
    })?;
    Ok(SymmetryGroup::from_elements(
        parts.into_iter().flatten().collect(),
    ))
}

pub fn full_matrix(
    a: &EvolutionAlgebra,
    budget: &OracleBudget,
    workers: usize,
) -> Result<OracleOutcome> {
    let search = FullMatrixSearch::new(a, budget)?;
    let total = search.branch_count();
    let chunk = (total / (workers as u64 * 16)).max(1);
    let jobs = total.div_ceil(chunk) as usize;
    let counter = AtomicU64::new(0);
    let parts = run_jobs(jobs, workers, |i| {
        let lo = i as u64 * chunk;
        search.run_branches(lo..(lo + chunk).min(total), &counter)
    })?;
    Ok(OracleOutcome::merge(parts, counter.into_inner()))
}

pub fn monomial(
    a: &EvolutionAlgebra,
    budget: &OracleBudget,
    workers: usize,
) -> Result<OracleOutcome> {
    let search = MonomialSearch::new(a, budget)?;
    let perms = search.permutations();
    let counter = AtomicU64::new(0);
    let parts = run_jobs(perms.len(), workers, |i| {
        search.run_sigma(&perms[i], &counter)
    })?;
    Ok(OracleOutcome::merge(parts, counter.into_inner()))
}

pub fn oracle(
    a: &EvolutionAlgebra,
    budget: &OracleBudget,
    workers: usize,
) -> Result<OracleOutcome> {
    match budget.mode {
        OracleMode::FullMatrix => full_matrix(a, budget, workers),
        OracleMode::Monomial => monomial(a, budget, workers),
    }
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub certified: CertifiedResult,
    pub wall: Duration,
}

/// Parallel counterpart of `evolaut_core::certify`.
pub fn certify(
    a: &EvolutionAlgebra,
    closed: AutResult,
    budget: &OracleBudget,
) -> Result<OracleReport> {
    let start = Instant::now();
    let outcome = oracle(a, budget, threads())?;
    let certified = judge(closed, budget.mode, outcome)?;
    Ok(OracleReport {
        certified,
        wall: start.elapsed(),
    })
}

/// Whether an error means a search ran out of budget.
pub fn is_budget_error(e: &Error) -> bool {
    matches!(
        e,
        Error::BudgetExceeded { .. } | Error::SearchBudgetExceeded(_)
    )
}
