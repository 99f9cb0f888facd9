use evolaut::parallel;
use evolaut_core::graph::named;
use evolaut_core::oracle::{FullMatrixSearch, MonomialSearch};
use evolaut_core::{
    symmetry, AlgebraKind, Error, EvolutionAlgebra, FieldCtx, Graph, OracleBudget, OracleMode,
};

fn graphs() -> Vec<Graph> {
    vec![
        named::p3(),
        named::p4(),
        named::c22(),
        named::bull(),
        named::tadpole41(),
        named::cycle(4),
        named::star(3),
    ]
}

#[test]
fn symmetries_do_not_depend_on_worker_count() {
    for g in
        graphs()
            .into_iter()
            .chain([named::c6(), named::k14(), named::cycle(8), named::star(6)])
    {
        let seq = symmetry::symmetries(&g).unwrap();
        for workers in [1, 2, 3, 8] {
            let par = parallel::symmetries_with_budget(&g, symmetry::DEFAULT_SEARCH_NODES, workers)
                .unwrap();
            assert_eq!(par, seq, "{:?} with {workers} workers", g.edges());
        }
    }
}

#[test]
fn full_matrix_oracle_does_not_depend_on_worker_count() {
    let f5 = FieldCtx::prime(5).unwrap();
    // graphs with twin vertices have too many automorphisms over F_5 for a quick test
    for g in [
        named::p3(),
        named::p4(),
        named::bull(),
        named::tadpole41(),
        named::star(3),
    ] {
        for kind in [AlgebraKind::Adjacency, AlgebraKind::RandomWalk] {
            let Ok(a) = EvolutionAlgebra::build(&g, kind, f5) else {
                continue;
            };
            let budget = OracleBudget::default();
            let seq = FullMatrixSearch::new(&a, &budget).unwrap().run().unwrap();
            for workers in [1, 2, 5] {
                let par = parallel::full_matrix(&a, &budget, workers).unwrap();
                assert_eq!(par.maps, seq.maps);
                assert_eq!(par.visited, seq.visited);
            }
        }
    }
}

#[test]
fn monomial_oracle_does_not_depend_on_worker_count() {
    let qw: FieldCtx = "qw".parse().unwrap();
    let budget = OracleBudget::with_mode(OracleMode::Monomial);
    for g in graphs() {
        let a = EvolutionAlgebra::build(&g, AlgebraKind::Adjacency, qw).unwrap();
        let seq = MonomialSearch::new(&a, &budget).unwrap().run().unwrap();
        for workers in [1, 4] {
            let par = parallel::monomial(&a, &budget, workers).unwrap();
            assert_eq!(par.maps, seq.maps);
            assert_eq!(par.visited, seq.visited);
        }
    }
}

#[test]
fn budget_errors_propagate() {
    let a = EvolutionAlgebra::build(
        &named::path(10),
        AlgebraKind::Adjacency,
        FieldCtx::prime(2).unwrap(),
    )
    .unwrap();
    let err = parallel::full_matrix(&a, &OracleBudget::default(), 4).unwrap_err();
    assert!(parallel::is_budget_error(&err));
    let err = parallel::symmetries_with_budget(&named::star(6), 10, 4).unwrap_err();
    assert_eq!(err, Error::SearchBudgetExceeded(10));

    let a = EvolutionAlgebra::build(
        &named::p4(),
        AlgebraKind::Adjacency,
        FieldCtx::prime(7).unwrap(),
    )
    .unwrap();
    let tight = OracleBudget::new(60_000, OracleMode::FullMatrix).unwrap();
    for workers in [1, 3] {
        let err = parallel::full_matrix(&a, &tight, workers).unwrap_err();
        assert!(
            matches!(err, Error::BudgetExceeded { cap: 60_000, .. }),
            "{err:?}"
        );
    }
}
