mod common;

use std::sync::atomic::AtomicU64;

use common::*;
use evolaut_core::graph::named::*;
use evolaut_core::oracle::{
    brute_force_aut_fp, judge, monomial_oracle, FullMatrixSearch, MonomialSearch, OracleOutcome,
};
use evolaut_core::{
    act, certify, enumerate_aut, is_automorphism, symmetries, AlgebraKind, Certificate, Error,
    EvolutionAlgebra, FieldCtx, Graph, LinearMap, OracleBudget, OracleMode, Verdict,
};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = AlgebraKind> {
    prop::sample::select(vec![AlgebraKind::Adjacency, AlgebraKind::RandomWalk])
}

fn full() -> OracleBudget {
    OracleBudget::with_mode(OracleMode::FullMatrix)
}

fn mono() -> OracleBudget {
    OracleBudget::with_mode(OracleMode::Monomial)
}

fn build(g: &Graph, kind: AlgebraKind, ctx: FieldCtx) -> EvolutionAlgebra {
    EvolutionAlgebra::build(g, kind, ctx).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn full_oracle_is_sound_and_contains_the_closed_form(
        g in connected_graph(4),
        kind in kind(),
        p in prop::sample::select(vec![5u64, 7]),
    ) {
        let ctx = FieldCtx::prime(p).unwrap();
        let a = build(&g, kind, ctx);
        let maps = brute_force_aut_fp(&a, &full()).unwrap();
        for f in &maps {
            prop_assert!(is_automorphism(&a, f).unwrap());
        }
        let closed = enumerate_aut(&a, &symmetries(&g).unwrap()).unwrap();
        for f in closed.elements() {
            prop_assert!(maps.contains(f));
        }
        // a nondegenerate 2LI algebra has only induced automorphisms
        if closed.certificate == Certificate::Proven2li {
            prop_assert_eq!(maps.len(), closed.len());
        }
    }

    #[test]
    fn monomial_automorphisms_reduce_to_diagonal_ones(g in connected_graph(4), kind in kind()) {
        let a = build(&g, kind, FieldCtx::Cyclotomic);
        let s = symmetries(&g).unwrap();
        let maps = monomial_oracle(&a, &mono()).unwrap();
        for f in &maps {
            prop_assert!(is_automorphism(&a, f).unwrap());
            let (sigma, mu) = evolaut_core::automorphism::is_induced_by_symmetry(f, &g).unwrap();
            prop_assert!(s.contains(&sigma));
            prop_assert!(mu.iter().all(|m| m.pow(3).is_one()));
            prop_assert!(act(&sigma.inverse(), f, &a).unwrap().is_diagonal());
        }
        let closed = enumerate_aut(&a, &s).unwrap();
        prop_assert_eq!(maps.len(), closed.len());
    }

    #[test]
    fn split_runs_merge_to_the_same_answer(g in connected_graph(4), chunks in 1u64..7) {
        let a = build(&g, AlgebraKind::Adjacency, FieldCtx::prime(7).unwrap());
        let search = FullMatrixSearch::new(&a, &full()).unwrap();
        let whole = search.run().unwrap();
        let total = search.branch_count();
        let step = total.div_ceil(chunks);
        let counter = AtomicU64::new(0);
        let mut parts = Vec::new();
        let mut start = total;
        while start > 0 {
            let lo = start.saturating_sub(step);
            parts.push(search.run_branches(lo..start, &counter).unwrap());
            start = lo;
        }
        let merged = OracleOutcome::merge(parts, counter.into_inner());
        prop_assert_eq!(merged, whole);
    }
}

#[test]
fn p3_over_f7_matches_the_closed_form() {
    let ctx = FieldCtx::prime(7).unwrap();
    let a = build(&p3(), AlgebraKind::Adjacency, ctx);
    let closed = enumerate_aut(&a, &symmetries(&p3()).unwrap()).unwrap();
    assert_eq!(closed.certificate, Certificate::Hypothesis);
    let r = certify(&a, closed.clone(), &full()).unwrap();
    assert_eq!(r.verdict, Verdict::OracleVerified);
    assert_eq!(r.result.certificate, Certificate::OracleVerified);
    assert_eq!(r.oracle_count, 6);
    let mut expected: Vec<LinearMap> = closed.elements().into_iter().cloned().collect();
    expected.sort();
    assert_eq!(brute_force_aut_fp(&a, &full()).unwrap(), expected);
}

#[test]
fn p4_over_f7_count_is_a_multiple_of_d() {
    for kind in [AlgebraKind::Adjacency, AlgebraKind::RandomWalk] {
        let a = build(&p4(), kind, FieldCtx::prime(7).unwrap());
        let maps = brute_force_aut_fp(&a, &full()).unwrap();
        assert_eq!(maps.len() % 3, 0);
        assert_eq!(maps.len(), 6);
    }
}

#[test]
fn zero_algebra_over_f5_falsifies_the_closed_form() {
    let ctx = FieldCtx::prime(5).unwrap();
    let a = build(&single_vertex(), AlgebraKind::Adjacency, ctx);
    assert_eq!(brute_force_aut_fp(&a, &full()).unwrap().len(), 4);
    let closed = enumerate_aut(&a, &symmetries(&single_vertex()).unwrap()).unwrap();
    assert_eq!(closed.len(), 1);
    let r = certify(&a, closed, &full()).unwrap();
    assert_eq!(r.verdict, Verdict::HypothesisFalsified);
    assert_eq!(r.result.certificate, Certificate::Hypothesis);
    assert_eq!(r.counterexample.unwrap().to_string().trim(), "[2]");
}

#[test]
fn monomial_examples() {
    let bull_maps = monomial_oracle(
        &build(&bull(), AlgebraKind::Adjacency, FieldCtx::Cyclotomic),
        &mono(),
    );
    assert_eq!(bull_maps.unwrap().len(), 2);
    let c6q = build(&c6(), AlgebraKind::Adjacency, FieldCtx::Rational);
    assert_eq!(monomial_oracle(&c6q, &mono()).unwrap().len(), 12);
    let a = build(&bull(), AlgebraKind::Adjacency, FieldCtx::Cyclotomic);
    let closed = enumerate_aut(&a, &symmetries(&bull()).unwrap()).unwrap();
    let r = certify(&a, closed, &mono()).unwrap();
    assert_eq!(r.verdict, Verdict::MonomialConsistent);
    assert_eq!(r.result.certificate, Certificate::Proven2li);
    assert_eq!(r.oracle_count, 2);
}

#[test]
fn budgets_are_enforced() {
    for g in [star(9), path(10), cycle(10)] {
        let a = build(&g, AlgebraKind::Adjacency, FieldCtx::prime(2).unwrap());
        assert!(matches!(
            brute_force_aut_fp(&a, &full()),
            Err(Error::BudgetExceeded { visited: 0, .. })
        ));
        let closed = enumerate_aut(&a, &symmetries(&g).unwrap()).unwrap();
        assert!(matches!(
            certify(&a, closed, &full()),
            Err(Error::BudgetExceeded { .. })
        ));
    }
    let a = build(&path(10), AlgebraKind::Adjacency, FieldCtx::Cyclotomic);
    assert!(matches!(
        monomial_oracle(&a, &mono()),
        Err(Error::BudgetExceeded { .. })
    ));
    // the running counter catches what the estimate lets through
    let a = build(&p4(), AlgebraKind::Adjacency, FieldCtx::prime(7).unwrap());
    let tight = OracleBudget::new(60_000, OracleMode::FullMatrix).unwrap();
    assert!(matches!(
        brute_force_aut_fp(&a, &tight),
        Err(Error::BudgetExceeded {
            visited: 60_001,
            cap: 60_000
        })
    ));
}

#[test]
fn full_matrix_mode_needs_a_prime_field() {
    let a = build(&p3(), AlgebraKind::Adjacency, FieldCtx::Cyclotomic);
    let closed = enumerate_aut(&a, &symmetries(&p3()).unwrap()).unwrap();
    assert!(matches!(
        certify(&a, closed, &full()),
        Err(Error::NoApplicableOracle(_))
    ));
}

#[test]
fn a_missing_closed_form_element_is_an_error() {
    let a = build(&p3(), AlgebraKind::Adjacency, FieldCtx::prime(7).unwrap());
    let closed = enumerate_aut(&a, &symmetries(&p3()).unwrap()).unwrap();
    let mut maps = brute_force_aut_fp(&a, &full()).unwrap();
    maps.pop();
    let outcome = OracleOutcome::merge([maps], 0);
    assert_eq!(
        judge(closed, OracleMode::FullMatrix, outcome),
        Err(Error::OracleMissedElement)
    );
}

#[test]
fn repeated_runs_are_identical() {
    let a = build(&tadpole41(), AlgebraKind::RandomWalk, FieldCtx::Cyclotomic);
    let search = MonomialSearch::new(&a, &mono()).unwrap();
    let first = search.run().unwrap();
    assert_eq!(first, search.run().unwrap());
    assert_eq!(first.visited, 120 * 243);
}
