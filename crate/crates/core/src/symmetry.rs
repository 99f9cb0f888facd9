//! Graph symmetries: permutations of the vertex set preserving adjacency.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on search nodes for [`symmetries`].
pub const DEFAULT_SEARCH_NODES: u64 = 100_000_000;

/// A bijection of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>, // 0-based
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From the 1-based image list `[s(1), ..., s(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::PermutationParse {
                    text: images_text(images),
                    reason: "not a bijection of 1..n",
                });
            }
            seen[x - 1] = true;
            out.push(x - 1);
        }
        Ok(Permutation { images: out })
    }

    pub(crate) fn from_images0(images: Vec<usize>) -> Permutation {
        Permutation { images }
    }

    /// Parses cycle notation such as `(1 3)(2)` on `1..=n`; unmentioned points are fixed.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Permutation> {
        let err = |reason| Error::PermutationParse {
            text: text.to_string(),
            reason,
        };
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
            let close = body.find(')').ok_or_else(|| err("unclosed cycle"))?;
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| err("bad point")))
                .collect::<Result<Vec<_>>>()?;
            for (idx, &p) in points.iter().enumerate() {
                if p == 0 || p > n {
                    return Err(err("point out of range"));
                }
                if core::mem::replace(&mut seen[p - 1], true) {
                    return Err(err("point repeated"));
                }
                images[p - 1] = points[(idx + 1) % points.len()] - 1;
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `s(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub(crate) fn apply0(&self, i: usize) -> usize {
        self.images[i]
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`, i.e. `k -> self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&k| self.images[k]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Whether `i ~ j` iff `s(i) ~ s(j)` for all vertex pairs.
    pub fn preserves(&self, g: &Graph) -> bool {
        let n = g.order();
        if self.len() != n {
            return false;
        }
        (0..n).all(|i| {
            (i + 1..n).all(|j| g.has_edge0(i, j) == g.has_edge0(self.images[i], self.images[j]))
        })
    }

    /// Cycle notation including fixed points, e.g. `(1 3)(2)`.
    pub fn cycle_string(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.len()];
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            out.push('(');
            let mut k = start;
            let mut first = true;
            while !seen[k] {
                seen[k] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&(k + 1).to_string());
                k = self.images[k];
            }
            out.push(')');
        }
        out
    }
}

fn images_text(images: &[usize]) -> String {
    let parts: Vec<String> = images.iter().map(|x| x.to_string()).collect();
    let mut s = String::from("[");
    s.push_str(&parts.join(","));
    s.push(']');
    s
}

/// Image list form `[s(1),...,s(n)]`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&images_text(&self.images()))
    }
}

/// Accepts `[3,2,1]` or cycle notation `(1 3)(2)`; in cycle notation `n` is the largest point
/// mentioned.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Permutation> {
        let t = s.trim();
        if let Some(body) = t.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            let images = body
                .split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| {
                    x.parse::<usize>().map_err(|_| Error::PermutationParse {
                        text: s.to_string(),
                        reason: "bad image",
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Permutation::from_images(&images);
        }
        let n = t
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|x| x.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Permutation::parse_cycles(t, n)
    }
}

/// The full symmetry group as an explicit element list: identity first, then lexicographic
/// by image list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    elements: Vec<Permutation>,
}

impl SymmetryGroup {
    /// Sorts and deduplicates `elements`. The caller vouches that they form the group.
    pub fn from_elements(mut elements: Vec<Permutation>) -> SymmetryGroup {
        elements.sort();
        elements.dedup();
        SymmetryGroup { elements }
    }

    pub fn trivial(n: usize) -> SymmetryGroup {
        SymmetryGroup {
            elements: vec![Permutation::identity(n)],
        }
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Permutation> {
        self.elements.iter()
    }
}

/// Backtracking search for adjacency-preserving permutations.
///
/// Vertices are assigned in BFS order so each new vertex (after the first) has an assigned
/// neighbour. A candidate image must have the same degree and agree on adjacency with every
/// assigned vertex. The first vertex's candidates are exposed as independent branches so
/// callers can spread them over threads.
pub struct SymmetrySearch<'g> {
    graph: &'g Graph,
    order: Vec<usize>,
    cap: u64,
}

impl<'g> SymmetrySearch<'g> {
    pub fn new(graph: &'g Graph, cap: u64) -> SymmetrySearch<'g> {
        let n = graph.order();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        // start from a vertex of maximum degree
        let start = (0..n)
            .max_by_key(|&v| (graph.degree0(v), core::cmp::Reverse(v)))
            .unwrap_or(0);
        seen[start] = true;
        order.push(start);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &v in graph.adj0(u) {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
        SymmetrySearch { graph, order, cap }
    }

    /// Images the first vertex may take (same degree).
    pub fn branches(&self) -> Vec<usize> {
        let first = self.order[0];
        let d = self.graph.degree0(first);
        (0..self.graph.order())
            .filter(|&w| self.graph.degree0(w) == d)
            .collect()
    }

    /// All symmetries sending the first vertex to `image`, sharing the node counter `nodes`.
    pub fn run_branch(&self, image: usize, nodes: &AtomicU64) -> Result<Vec<Permutation>> {
        let n = self.graph.order();
        let mut assign = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut out = Vec::new();
        assign[self.order[0]] = image;
        used[image] = true;
        self.tick(nodes)?;
        self.extend(1, &mut assign, &mut used, nodes, &mut out)?;
        Ok(out)
    }

    fn tick(&self, nodes: &AtomicU64) -> Result<()> {
        if nodes.fetch_add(1, Ordering::Relaxed) >= self.cap {
            Err(Error::SearchBudgetExceeded(self.cap))
        } else {
            Ok(())
        }
    }

    fn extend(
        &self,
        depth: usize,
        assign: &mut [usize],
        used: &mut [bool],
        nodes: &AtomicU64,
        out: &mut Vec<Permutation>,
    ) -> Result<()> {
        let g = self.graph;
        if depth == self.order.len() {
            out.push(Permutation::from_images0(assign.to_vec()));
            return Ok(());
        }
        let v = self.order[depth];
        let d = g.degree0(v);
        for w in 0..g.order() {
            if used[w] || g.degree0(w) != d {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| g.has_edge0(u, v) == g.has_edge0(assign[u], w));
            if !consistent {
                continue;
            }
            self.tick(nodes)?;
            assign[v] = w;
            used[w] = true;
            self.extend(depth + 1, assign, used, nodes, out)?;
            used[w] = false;
            assign[v] = usize::MAX;
        }
        Ok(())
    }

    pub fn run(&self) -> Result<SymmetryGroup> {
        let nodes = AtomicU64::new(0);
        let mut all = Vec::new();
        for b in self.branches() {
            all.extend(self.run_branch(b, &nodes)?);
        }
        Ok(SymmetryGroup::from_elements(all))
    }
}

/// `Sym(g)` with the default node budget.
pub fn symmetries(g: &Graph) -> Result<SymmetryGroup> {
    symmetries_with_budget(g, DEFAULT_SEARCH_NODES)
}

pub fn symmetries_with_budget(g: &Graph, max_nodes: u64) -> Result<SymmetryGroup> {
    SymmetrySearch::new(g, max_nodes).run()
}
