//! Graph generators and brute-force reference implementations shared by the test suites.
//! Nothing here calls into the search code under test.
#![allow(dead_code)]

use std::collections::BTreeSet;

use evolaut_core::graph::named;
use evolaut_core::{FieldCtx, Graph, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

pub fn build(n: usize, edges: &BTreeSet<(usize, usize)>) -> Graph {
    let e: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
    Graph::new(n, &e).unwrap()
}

/// A random spanning tree plus random extra edges; 0-based pairs with `a < b`.
pub fn random_edges(rng: &mut impl Rng, n: usize, density: f64) -> BTreeSet<(usize, usize)> {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        edges.insert((rng.gen_range(0..v), v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                edges.insert((a, b));
            }
        }
    }
    edges
}

pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(any::<usize>(), n),
                prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2),
            )
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges = BTreeSet::new();
            for v in 1..n {
                edges.insert((parents[v] % v, v));
            }
            let mut idx = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if extra[idx] {
                        edges.insert((a, b));
                    }
                    idx += 1;
                }
            }
            build(n, &edges)
        })
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut Vec<usize>, x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
        comp[ra] = rb;
    }
    (0..n).all(|v| find(&mut comp, v) == find(&mut comp, 0))
}

/// Every connected simple graph on the labelled vertex set `1..=n`.
pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            connected(n, &chosen).then(|| build(n, &chosen.into_iter().collect()))
        })
        .collect()
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut m = vec![vec![false; n]; n];
    for (a, b) in g.edges() {
        m[a - 1][b - 1] = true;
        m[b - 1][a - 1] = true;
    }
    m
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
        heap(k - 1, a, out);
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

/// Symmetries by filtering all of `S_n`, as sorted 1-based image lists.
pub fn brute_symmetries(g: &Graph) -> Vec<Vec<usize>> {
    let m = adjacency(g);
    let n = g.order();
    let mut out: Vec<Vec<usize>> = all_permutations(n)
        .into_iter()
        .filter(|p| (0..n).all(|a| (0..n).all(|b| m[a][b] == m[p[a]][p[b]])))
        .map(|p| p.into_iter().map(|x| x + 1).collect())
        .collect();
    out.sort();
    out
}

/// Odd closed walk of length at most `n`, found through boolean matrix powers.
pub fn has_odd_cycle(g: &Graph) -> bool {
    let a = adjacency(g);
    let n = g.order();
    let mul = |x: &Vec<Vec<bool>>, y: &Vec<Vec<bool>>| -> Vec<Vec<bool>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|k| x[i][k] && y[k][j])).collect())
            .collect()
    };
    let a2 = mul(&a, &a);
    let mut pow = a.clone();
    let mut k = 1;
    while k <= n {
        if (0..n).any(|i| pow[i][i]) {
            return true;
        }
        pow = mul(&pow, &a2);
        k += 2;
    }
    false
}

pub fn fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("P3", named::p3()),
        ("P4", named::p4()),
        ("C6", named::c6()),
        ("K14", named::k14()),
        ("C22", named::c22()),
        ("B5", named::bull()),
        ("T41", named::tadpole41()),
    ]
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn w() -> Scalar {
    Scalar::parse("w", FieldCtx::Cyclotomic).unwrap()
}

pub fn w2() -> Scalar {
    Scalar::parse("w^2", FieldCtx::Cyclotomic).unwrap()
}

pub fn cyc_int(v: i64) -> Scalar {
    Scalar::from_int(FieldCtx::Cyclotomic, v)
}

/// `rows` given as strings, parsed in `ctx`.
pub fn rows(ctx: FieldCtx, text: &[&[&str]]) -> Vec<Vec<Scalar>> {
    text.iter()
        .map(|r| r.iter().map(|s| Scalar::parse(s, ctx).unwrap()).collect())
        .collect()
}

pub fn scalar_strategy(ctx: FieldCtx) -> BoxedStrategy<Scalar> {
    let small = || (-40i64..40, 1i64..12);
    match ctx {
        FieldCtx::Rational => small()
            .prop_map(|(a, b)| Scalar::from_rational(FieldCtx::Rational, &q(a, b)).unwrap())
            .boxed(),
        FieldCtx::Cyclotomic => (small(), small())
            .prop_map(|((a, b), (c, d))| {
                let x = Scalar::from_rational(FieldCtx::Cyclotomic, &q(a, b)).unwrap();
                let y = Scalar::from_rational(FieldCtx::Cyclotomic, &q(c, d)).unwrap();
                &x + &(&y * &w())
            })
            .boxed(),
        FieldCtx::Prime(p) => (0..p.get())
            .prop_map(move |k| Scalar::from_int(ctx, k as i64))
            .boxed(),
    }
}
