//! Bundled example graphs with their expected outputs, and the checker behind
//! `evolaut paper-examples`.
//!
//! An example names a graph, a field and an algebra kind, and lists expected facts. Each fact
//! is recomputed and compared; for object-valued facts only the listed sub-keys are checked.

use std::collections::BTreeMap;
use std::path::Path;

use evolaut_core::automorphism::product_violations;
use evolaut_core::{
    compare_families, enumerate_aut, AlgebraKind, AutResult, EvolutionAlgebra, FieldCtx, Graph,
    LinearMap, OracleBudget, OracleMode, Permutation,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::graph_file::{parse_graph, GraphFileError};
use crate::{json as js, parallel};

pub const GRAPHS: [(&str, &str); 7] = [
    ("p3", include_str!("../fixtures/graphs/p3.graph")),
    ("p4", include_str!("../fixtures/graphs/p4.graph")),
    ("c22", include_str!("../fixtures/graphs/c22.graph")),
    ("k14", include_str!("../fixtures/graphs/k14.graph")),
    ("b5", include_str!("../fixtures/graphs/b5.graph")),
    ("c6", include_str!("../fixtures/graphs/c6.graph")),
    ("t41", include_str!("../fixtures/graphs/t41.graph")),
];

const EXAMPLES: [&str; 14] = [
    include_str!("../fixtures/examples/p3-structure.json"),
    include_str!("../fixtures/examples/p3-aut.json"),
    include_str!("../fixtures/examples/p3-relabel-12.json"),
    include_str!("../fixtures/examples/p3-f7-oracle.json"),
    include_str!("../fixtures/examples/p4-diagonal-qw.json"),
    include_str!("../fixtures/examples/p4-diagonal-f7.json"),
    include_str!("../fixtures/examples/p4-diagonal-q.json"),
    include_str!("../fixtures/examples/p4-diagonal-f3.json"),
    include_str!("../fixtures/examples/c22-diagonal.json"),
    include_str!("../fixtures/examples/k14-rw.json"),
    include_str!("../fixtures/examples/b5.json"),
    include_str!("../fixtures/examples/c6.json"),
    include_str!("../fixtures/examples/c6-q-monomial.json"),
    include_str!("../fixtures/examples/t41-rw.json"),
];

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Example {
    pub name: String,
    pub description: String,
    pub graph: String,
    pub field: String,
    pub kind: String,
    pub expect: BTreeMap<String, Value>,
}

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("{file}: {message}")]
    Bad { file: String, message: String },
    #[error("graph {name}: {source}")]
    Graph {
        name: String,
        source: GraphFileError,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Graphs and examples, either bundled or loaded from a directory with `graphs/*.graph` and
/// `examples/*.json`.
pub struct FixtureSet {
    pub graphs: BTreeMap<String, Graph>,
    pub examples: Vec<Example>,
}

fn parse_example(file: &str, text: &str) -> Result<Example, FixtureError> {
    serde_json::from_str(text).map_err(|e| FixtureError::Bad {
        file: file.to_string(),
        message: e.to_string(),
    })
}

fn graph(name: &str, text: &str) -> Result<Graph, FixtureError> {
    parse_graph(text).map_err(|source| FixtureError::Graph {
        name: name.to_string(),
        source,
    })
}

impl FixtureSet {
    pub fn bundled() -> FixtureSet {
        let graphs = GRAPHS
            .iter()
            .map(|(n, t)| (n.to_string(), graph(n, t).expect("bundled graph is valid")))
            .collect();
        let examples = EXAMPLES
            .iter()
            .map(|t| parse_example("bundled", t).expect("bundled example is valid"))
            .collect();
        FixtureSet { graphs, examples }
    }

    pub fn load(dir: &Path) -> Result<FixtureSet, FixtureError> {
        let read_dir = |sub: &str, ext: &str| -> Result<Vec<(String, String)>, FixtureError> {
            let path = dir.join(sub);
            let io = |source| FixtureError::Io {
                path: path.display().to_string(),
                source,
            };
            let mut out = Vec::new();
            for entry in std::fs::read_dir(&path).map_err(io)? {
                let p = entry.map_err(io)?.path();
                if p.extension().and_then(|e| e.to_str()) != Some(ext) {
                    continue;
                }
                let stem = p.file_stem().unwrap().to_string_lossy().into_owned();
                let text = std::fs::read_to_string(&p).map_err(|source| FixtureError::Io {
                    path: p.display().to_string(),
                    source,
                })?;
                out.push((stem, text));
            }
            out.sort();
            Ok(out)
        };
        let graphs = read_dir("graphs", "graph")?
            .into_iter()
            .map(|(n, t)| Ok((n.clone(), graph(&n, &t)?)))
            .collect::<Result<_, FixtureError>>()?;
        let examples = read_dir("examples", "json")?
            .into_iter()
            .map(|(n, t)| parse_example(&format!("{n}.json"), &t))
            .collect::<Result<_, _>>()?;
        Ok(FixtureSet { graphs, examples })
    }
}

#[derive(Clone, Debug)]
pub struct Row {
    pub name: String,
    pub description: String,
    /// `key: expected ..., got ...` lines; empty on success.
    pub diffs: Vec<String>,
}

impl Row {
    pub fn passed(&self) -> bool {
        self.diffs.is_empty()
    }
}

/// Lazily computed values shared by the facts of one example.
struct Subject<'a> {
    graph: &'a Graph,
    algebra: EvolutionAlgebra,
    aut: Option<AutResult>,
}

impl Subject<'_> {
    fn aut(&mut self) -> Result<&AutResult, String> {
        if self.aut.is_none() {
            let s = parallel::symmetries(self.graph).map_err(|e| e.to_string())?;
            self.aut = Some(enumerate_aut(&self.algebra, &s).map_err(|e| e.to_string())?);
        }
        Ok(self.aut.as_ref().unwrap())
    }
}

fn sorted(mut v: Vec<Value>) -> Value {
    v.sort_by_key(|x| x.to_string());
    Value::Array(v)
}

fn matrices<'a>(maps: impl IntoIterator<Item = &'a LinearMap>) -> Value {
    sorted(maps.into_iter().map(js::map).collect())
}

/// Brings order-insensitive facts into a canonical order.
fn normalise(key: &str, v: &Value) -> Value {
    match (key, v) {
        ("aut_matrices" | "diagonal" | "symmetries", Value::Array(items)) => sorted(items.clone()),
        ("orbits", Value::Array(items)) => sorted(
            items
                .iter()
                .map(|o| match o {
                    Value::Array(ms) => sorted(ms.clone()),
                    other => other.clone(),
                })
                .collect(),
        ),
        _ => v.clone(),
    }
}

fn fact(key: &str, expected: &Value, s: &mut Subject) -> Result<Value, String> {
    let a = &s.algebra;
    let g = s.graph;
    Ok(match key {
        "perfect" => json!(a.is_perfect()),
        "nondegenerate" => json!(a.is_nondegenerate()),
        "two_li" => json!(a.is_2li()),
        "bipartition" => json!(g.bipartition().map(|b| [b.v1, b.v2])),
        "regular" => json!(g.is_regular()),
        "biregular" => json!(g.is_biregular().map(|(x, y)| [x, y])),
        "sym_order" => json!(s.aut()?.symmetries.order()),
        "symmetries" => s.aut()?.symmetries.iter().map(js::permutation).collect(),
        "diagonal" => s
            .aut()?
            .diagonal
            .iter()
            .map(|d| js::scalars(&d.diag))
            .collect(),
        "aut_order" => json!(s.aut()?.len()),
        "certificate" => json!(s.aut()?.certificate.to_string()),
        "aut_matrices" => matrices(s.aut()?.elements()),
        "orbits" => Value::Array(s.aut()?.orbits.iter().map(|o| matrices(o.maps())).collect()),
        "monomial_count" => {
            let budget = OracleBudget::with_mode(OracleMode::Monomial);
            let out =
                parallel::monomial(a, &budget, parallel::threads()).map_err(|e| e.to_string())?;
            json!(out.maps.len())
        }
        "oracle_full" => {
            let closed = s.aut()?.clone();
            let budget = OracleBudget::with_mode(OracleMode::FullMatrix);
            let r = parallel::certify(&s.algebra, closed, &budget).map_err(|e| e.to_string())?;
            json!({"count": r.certified.oracle_count, "verdict": r.certified.verdict.to_string()})
        }
        "compare" => js::comparison(&compare_families(g, a.ctx()).map_err(|e| e.to_string())?),
        "probe" => {
            let text = expected
                .get("sigma")
                .and_then(Value::as_str)
                .ok_or("probe needs a \"sigma\"")?;
            let sigma = Permutation::parse_cycles(text, g.order()).map_err(|e| e.to_string())?;
            let ones = vec![evolaut_core::Scalar::one(a.ctx()); g.order()];
            let f = LinearMap::monomial(&sigma, &ones).map_err(|e| e.to_string())?;
            let violations = product_violations(a, &f).map_err(|e| e.to_string())?;
            let want = expected.get("witness").and_then(|w| w.get("pair")).cloned();
            // report the expected witness if present, otherwise the first one
            let witness = violations
                .iter()
                .find(|v| Some(json!([v.i, v.j])) == want)
                .or(violations.first())
                .map(|v| {
                    json!({
                        "pair": [v.i, v.j],
                        "image_of_product": js::scalars(v.image_of_product.coords()),
                        "product_of_images": js::scalars(v.product_of_images.coords()),
                    })
                });
            let is_aut = evolaut_core::is_automorphism(a, &f).map_err(|e| e.to_string())?;
            json!({"sigma": text, "automorphism": is_aut, "witness": witness})
        }
        other => return Err(format!("unknown fact {other:?}")),
    })
}

fn check(key: &str, expected: &Value, actual: &Value, diffs: &mut Vec<String>) {
    match expected {
        Value::Object(fields) => {
            for (k, e) in fields {
                let got = actual.get(k).unwrap_or(&Value::Null);
                if got != e {
                    diffs.push(format!("{key}.{k}: expected {e}, got {got}"));
                }
            }
        }
        _ => {
            let (e, a) = (normalise(key, expected), normalise(key, actual));
            if e != a {
                diffs.push(format!("{key}: expected {e}, got {a}"));
            }
        }
    }
}

pub fn run_example(ex: &Example, graphs: &BTreeMap<String, Graph>) -> Row {
    let mut diffs = Vec::new();
    let row = |diffs| Row {
        name: ex.name.clone(),
        description: ex.description.clone(),
        diffs,
    };
    let Some(g) = graphs.get(&ex.graph) else {
        return row(vec![format!("unknown graph {:?}", ex.graph)]);
    };
    let setup = (|| -> Result<EvolutionAlgebra, String> {
        let ctx: FieldCtx = ex
            .field
            .parse()
            .map_err(|e: evolaut_core::Error| e.to_string())?;
        let kind = match ex.kind.as_str() {
            "adj" => AlgebraKind::Adjacency,
            "rw" => AlgebraKind::RandomWalk,
            other => return Err(format!("unknown kind {other:?}")),
        };
        EvolutionAlgebra::build(g, kind, ctx).map_err(|e| e.to_string())
    })();
    let algebra = match setup {
        Ok(a) => a,
        Err(e) => return row(vec![e]),
    };
    let mut subject = Subject {
        graph: g,
        algebra,
        aut: None,
    };
    for (key, expected) in &ex.expect {
        match fact(key, expected, &mut subject) {
            Ok(actual) => check(key, expected, &actual, &mut diffs),
            Err(e) => diffs.push(format!("{key}: {e}")),
        }
    }
    row(diffs)
}

/// Runs every example whose name or graph equals `only` (all when `None`).
pub fn run_all(set: &FixtureSet, only: Option<&str>) -> Vec<Row> {
    set.examples
        .iter()
        .filter(|ex| only.is_none_or(|o| ex.graph == o || ex.name == o))
        .map(|ex| run_example(ex, &set.graphs))
        .collect()
}
