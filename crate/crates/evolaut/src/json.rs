//! JSON renderings. Scalars are always strings in the text form of their field, so the output
//! is exact and stable.

use evolaut_core::compare::ComparisonReport;
use evolaut_core::{AutResult, EvolutionAlgebra, LinearMap, Matrix, Permutation, Scalar};
use serde_json::{json, Value};

use crate::parallel::OracleReport;

pub fn scalars(v: &[Scalar]) -> Value {
    v.iter().map(|s| Value::String(s.to_string())).collect()
}

pub fn matrix(m: &Matrix) -> Value {
    (0..m.rows()).map(|i| scalars(m.row(i))).collect()
}

pub fn map(f: &LinearMap) -> Value {
    matrix(f.matrix())
}

pub fn permutation(p: &Permutation) -> Value {
    Value::String(p.to_string())
}

/// `{"n", "kind", "field", "m"}`
pub fn algebra(a: &EvolutionAlgebra) -> Value {
    json!({
        "n": a.dim(),
        "kind": a.kind().short_name(),
        "field": a.ctx().to_string(),
        "m": matrix(a.structure_matrix()),
    })
}

/// `{"certificate", "diagonal", "symmetries", "orbits": [{"base", "members": [{"sigma", "matrix"}]}]}`
pub fn aut_result(r: &AutResult) -> Value {
    json!({
        "certificate": r.certificate.to_string(),
        "diagonal": r.diagonal.iter().map(|d| scalars(&d.diag)).collect::<Value>(),
        "symmetries": r.symmetries.iter().map(permutation).collect::<Value>(),
        "orbits": r.orbits.iter().map(|o| json!({
            "base": map(&o.base),
            "members": o.members.iter().map(|(s, f)| json!({
                "sigma": permutation(s),
                "matrix": map(f),
            })).collect::<Value>(),
        })).collect::<Value>(),
    })
}

pub fn comparison(c: &ComparisonReport) -> Value {
    json!({
        "d1": c.d1().iter().map(|d| scalars(&d.diag)).collect::<Value>(),
        "d2": c.d2().iter().map(|d| scalars(&d.diag)).collect::<Value>(),
        "diagonals_equal": c.diagonals_equal,
        "aut_adj": c.adjacency.len(),
        "aut_rw": c.random_walk.len(),
        "aut_sizes_equal": c.aut_sizes_equal,
        "tag_bijection": c.tag_bijection,
        "regular": c.regular,
        "biregular": c.biregular.map(|(a, b)| vec![a, b]),
        "adjacency_perfect": c.adjacency_perfect,
        "isomorphic_families": c.isomorphic_by_regularity,
    })
}

pub fn oracle(r: &OracleReport) -> Value {
    let c = &r.certified;
    json!({
        "mode": c.mode.to_string(),
        "verdict": c.verdict.to_string(),
        "certificate": c.result.certificate.to_string(),
        "closed_form_count": c.result.len(),
        "oracle_count": c.oracle_count,
        "candidates_visited": c.candidates_visited,
        "counterexample": c.counterexample.as_ref().map(map),
    })
}
