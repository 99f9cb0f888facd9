//! Command-line front end. Every command produces a [`Report`] holding both a text and a JSON
//! rendering of the same result; `main` prints one of them.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use evolaut_core::symmetry::DEFAULT_SEARCH_NODES;
use evolaut_core::{
    diagonal_subgroup, enumerate_aut, AlgebraKind, Error as CoreError, EvolutionAlgebra, FieldCtx,
    Graph, OracleBudget, OracleMode, SymmetryGroup,
};
use serde_json::{json, Value};

use crate::fixtures::{self, FixtureSet};
use crate::graph_file::{parse_graph, read_graph};
use crate::{json as js, parallel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Graph and algebra facts
    Analyze,
    /// Graph symmetries
    Sym,
    /// Diagonal automorphisms
    Diag,
    /// Full automorphism group as orbits
    Aut,
    /// Adjacency against random-walk algebra
    Compare,
    /// Exhaustive check of the automorphism group
    Oracle,
    /// Check the bundled examples
    PaperExamples,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Adj,
    Rw,
}

impl From<Kind> for AlgebraKind {
    fn from(k: Kind) -> AlgebraKind {
        match k {
            Kind::Adj => AlgebraKind::Adjacency,
            Kind::Rw => AlgebraKind::RandomWalk,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Full,
    Monomial,
}

impl From<Mode> for OracleMode {
    fn from(m: Mode) -> OracleMode {
        match m {
            Mode::Full => OracleMode::FullMatrix,
            Mode::Monomial => OracleMode::Monomial,
        }
    }
}

fn parse_field(s: &str) -> Result<FieldCtx, String> {
    s.parse().map_err(|e: CoreError| e.to_string())
}

/// Automorphisms of evolution algebras of graphs.
#[derive(Clone, Debug, Parser)]
#[command(name = "evolaut", version)]
pub struct RunConfig {
    pub command: Command,
    /// Graph file, or the name of a bundled graph (p3, p4, c22, k14, b5, c6, t41)
    #[arg(long = "graph", value_name = "PATH")]
    pub graph_path: Option<PathBuf>,
    /// q, qw or fp:P
    #[arg(long, default_value = "qw", value_parser = parse_field)]
    pub field: FieldCtx,
    #[arg(long, value_enum, default_value_t = Kind::Adj)]
    pub kind: Kind,
    #[arg(long)]
    pub json: bool,
    /// Oracle to run (`aut` certifies only when given; `oracle` defaults to full)
    #[arg(long = "oracle", value_enum)]
    pub oracle_mode: Option<Mode>,
    /// Cap on oracle candidates and symmetry search nodes
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
    /// paper-examples: only examples with this name or graph
    #[arg(long)]
    pub only: Option<String>,
    /// paper-examples: read graphs/ and examples/ from this directory
    #[arg(long, value_name = "DIR")]
    pub fixtures: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        if parallel::is_budget_error(&e) {
            CliError::Budget(e.to_string())
        } else if e == CoreError::OracleMissedElement {
            CliError::Check(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    /// Exit code 1 although the command ran to completion.
    pub failed: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report {
            text,
            json,
            failed: false,
        }
    }
}

fn load_graph(cfg: &RunConfig) -> Result<Graph, CliError> {
    let path = cfg
        .graph_path
        .as_deref()
        .ok_or_else(|| CliError::Input("--graph is required".into()))?;
    if !path.exists() {
        let name = path.to_string_lossy();
        if let Some((_, text)) = fixtures::GRAPHS.iter().find(|(n, _)| *n == name) {
            return parse_graph(text).map_err(|e| CliError::Input(e.to_string()));
        }
    }
    read_graph(path).map_err(|e| CliError::Input(e.to_string()))
}

fn load_algebra(cfg: &RunConfig, g: &Graph) -> Result<EvolutionAlgebra, CliError> {
    Ok(EvolutionAlgebra::build(g, cfg.kind.into(), cfg.field)?)
}

fn symmetries(cfg: &RunConfig, g: &Graph) -> Result<SymmetryGroup, CliError> {
    let nodes = cfg.budget.unwrap_or(DEFAULT_SEARCH_NODES);
    Ok(parallel::symmetries_with_budget(
        g,
        nodes,
        parallel::threads(),
    )?)
}

fn oracle_budget(cfg: &RunConfig, mode: Mode) -> OracleBudget {
    let b = OracleBudget::with_mode(mode.into());
    match cfg.budget {
        Some(cap) => OracleBudget::new(cap, mode.into()).unwrap_or(b),
        None => b,
    }
}

fn set(vs: &[usize]) -> String {
    let items: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn indent(block: &str) -> String {
    block.lines().map(|l| format!("  {l}\n")).collect()
}

pub fn cmd_analyze(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = load_graph(cfg)?;
    let a = load_algebra(cfg, &g)?;
    let degrees = g.degrees();
    let bip = g.bipartition();
    let mut t = String::new();
    writeln!(t, "n: {}", g.order()).unwrap();
    let ds: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
    writeln!(t, "degrees: {}", ds.join(" ")).unwrap();
    match &bip {
        Some(b) => writeln!(t, "bipartite: {}|{}", set(&b.v1), set(&b.v2)).unwrap(),
        None => writeln!(t, "non-bipartite").unwrap(),
    }
    match g.is_regular() {
        Some(k) => writeln!(t, "regular: {k}").unwrap(),
        None => writeln!(t, "regular: no").unwrap(),
    }
    match g.is_biregular() {
        Some((x, y)) => writeln!(t, "biregular: {x},{y}").unwrap(),
        None => writeln!(t, "biregular: no").unwrap(),
    }
    writeln!(t, "structure matrix ({}, {}):", a.kind(), a.ctx()).unwrap();
    t.push_str(&indent(&a.structure_matrix().to_string()));
    writeln!(t, "perfect: {}", a.is_perfect()).unwrap();
    writeln!(t, "nondegenerate: {}", a.is_nondegenerate()).unwrap();
    writeln!(t, "2LI: {}", a.is_2li()).unwrap();
    let j = json!({
        "n": g.order(),
        "degrees": degrees,
        "bipartition": bip.map(|b| [b.v1, b.v2]),
        "regular": g.is_regular(),
        "biregular": g.is_biregular().map(|(x, y)| [x, y]),
        "algebra": js::algebra(&a),
        "perfect": a.is_perfect(),
        "nondegenerate": a.is_nondegenerate(),
        "two_li": a.is_2li(),
    });
    Ok(Report::ok(t, j))
}

pub fn cmd_sym(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = load_graph(cfg)?;
    let s = symmetries(cfg, &g)?;
    let mut t = format!("|Sym| = {}\n", s.order());
    for p in s.iter() {
        writeln!(t, "  {:<16} {}", p.cycle_string(), p).unwrap();
    }
    let j = json!({
        "order": s.order(),
        "elements": s.iter().map(js::permutation).collect::<Value>(),
    });
    Ok(Report::ok(t, j))
}

pub fn cmd_diag(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = load_graph(cfg)?;
    let a = load_algebra(cfg, &g)?;
    let d = diagonal_subgroup(&a);
    let mut t = format!("|D| = {}\n", d.len());
    for x in &d {
        let cells: Vec<String> = x.diag.iter().map(|s| s.to_string()).collect();
        writeln!(t, "  ({})", cells.join(", ")).unwrap();
    }
    let j = json!({
        "order": d.len(),
        "elements": d.iter().map(|x| js::scalars(&x.diag)).collect::<Value>(),
    });
    Ok(Report::ok(t, j))
}

pub fn cmd_aut(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = load_graph(cfg)?;
    let a = load_algebra(cfg, &g)?;
    let s = symmetries(cfg, &g)?;
    let mut r = enumerate_aut(&a, &s)?;
    let report = match cfg.oracle_mode {
        Some(mode) => Some(parallel::certify(&a, r.clone(), &oracle_budget(cfg, mode))?),
        None => None,
    };
    if let Some(rep) = &report {
        r = rep.certified.result.clone();
    }
    let mut t = String::new();
    writeln!(t, "|Sym| = {}", r.symmetries.order()).unwrap();
    writeln!(t, "|D| = {}", r.diagonal.len()).unwrap();
    writeln!(t, "|Aut| = {}", r.len()).unwrap();
    writeln!(t, "certificate: {}", r.certificate).unwrap();
    if let Some(rep) = &report {
        writeln!(
            t,
            "oracle: {} ({})",
            rep.certified.verdict, rep.certified.mode
        )
        .unwrap();
    }
    for (k, o) in r.orbits.iter().enumerate() {
        let d: Vec<String> = r.diagonal[k].diag.iter().map(|x| x.to_string()).collect();
        writeln!(t, "orbit {} of diag({}):", k + 1, d.join(", ")).unwrap();
        for (sigma, f) in &o.members {
            writeln!(t, "  sigma = {}", sigma.cycle_string()).unwrap();
            t.push_str(&indent(&indent(&f.to_string())));
        }
    }
    let mut j = js::aut_result(&r);
    j["order"] = json!(r.len());
    if let Some(rep) = &report {
        j["oracle"] = js::oracle(rep);
    }
    Ok(Report::ok(t, j))
}

pub fn cmd_compare(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = load_graph(cfg)?;
    let s = symmetries(cfg, &g)?;
    let c = evolaut_core::compare::compare_families_with(&g, cfg.field, &s)?;
    let mut t = String::new();
    let (d1, d2) = (c.d1().len(), c.d2().len());
    if c.diagonals_equal {
        writeln!(t, "D1 = D2 ({d1} elements)").unwrap();
    } else {
        writeln!(t, "D1 != D2 ({d1} and {d2} elements)").unwrap();
    }
    let (n1, n2) = (c.adjacency.len(), c.random_walk.len());
    if c.aut_sizes_equal {
        writeln!(t, "|Aut(adj)| = |Aut(rw)| = {n1}").unwrap();
    } else {
        writeln!(t, "|Aut(adj)| = {n1}, |Aut(rw)| = {n2}").unwrap();
    }
    writeln!(t, "tag bijection: {}", c.tag_bijection).unwrap();
    if let Some((x, y)) = c.biregular {
        writeln!(t, "biregular: {x},{y}").unwrap();
    }
    match (c.regular, c.isomorphic_by_regularity) {
        (Some(_), true) => writeln!(t, "regular; isomorphic families").unwrap(),
        (Some(_), false) => writeln!(t, "regular").unwrap(),
        (None, _) => writeln!(t, "not regular").unwrap(),
    }
    Ok(Report::ok(t, js::comparison(&c)))
}

pub fn cmd_oracle(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = load_graph(cfg)?;
    let a = load_algebra(cfg, &g)?;
    let s = symmetries(cfg, &g)?;
    let closed = enumerate_aut(&a, &s)?;
    let budget = oracle_budget(cfg, cfg.oracle_mode.unwrap_or(Mode::Full));
    let rep = parallel::certify(&a, closed, &budget)?;
    let c = &rep.certified;
    let mut t = String::new();
    writeln!(t, "mode: {}", c.mode).unwrap();
    writeln!(t, "verdict: {}", c.verdict).unwrap();
    writeln!(t, "certificate: {}", c.result.certificate).unwrap();
    writeln!(t, "closed form: {}", c.result.len()).unwrap();
    writeln!(t, "oracle: {}", c.oracle_count).unwrap();
    writeln!(t, "candidates visited: {}", c.candidates_visited).unwrap();
    writeln!(t, "wall time: {:.3}s", rep.wall.as_secs_f64()).unwrap();
    if let Some(f) = &c.counterexample {
        writeln!(t, "counterexample:").unwrap();
        t.push_str(&indent(&f.to_string()));
    }
    Ok(Report::ok(t, js::oracle(&rep)))
}

fn fixture_set(dir: Option<&Path>) -> Result<FixtureSet, CliError> {
    match dir {
        Some(d) => FixtureSet::load(d).map_err(|e| CliError::Input(e.to_string())),
        None => Ok(FixtureSet::bundled()),
    }
}

pub fn cmd_paper_examples(cfg: &RunConfig) -> Result<Report, CliError> {
    let set = fixture_set(cfg.fixtures.as_deref())?;
    let rows = fixtures::run_all(&set, cfg.only.as_deref());
    if rows.is_empty() {
        return Err(CliError::Input("no examples selected".into()));
    }
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut t = String::new();
    for r in &rows {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        writeln!(t, "{status}  {:<width$}  {}", r.name, r.description).unwrap();
        for d in &r.diffs {
            writeln!(t, "      {d}").unwrap();
        }
    }
    let failed = rows.iter().filter(|r| !r.passed()).count();
    writeln!(t, "{} passed, {failed} failed", rows.len() - failed).unwrap();
    let j = json!({
        "rows": rows.iter().map(|r| json!({
            "name": r.name,
            "passed": r.passed(),
            "diffs": r.diffs,
        })).collect::<Value>(),
        "passed": rows.len() - failed,
        "failed": failed,
    });
    Ok(Report {
        text: t,
        json: j,
        failed: failed > 0,
    })
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.command {
        Command::Analyze => cmd_analyze(cfg),
        Command::Sym => cmd_sym(cfg),
        Command::Diag => cmd_diag(cfg),
        Command::Aut => cmd_aut(cfg),
        Command::Compare => cmd_compare(cfg),
        Command::Oracle => cmd_oracle(cfg),
        Command::PaperExamples => cmd_paper_examples(cfg),
    }
}
