//! Finite simple connected graphs and the predicates the algebra layer needs.
//!
//! Vertices are numbered `1..=n` at every public boundary.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result, ValidationError};
use crate::field::{FieldCtx, Scalar};
use crate::matrix::Matrix;

/// A validated simple, loopless, connected, undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    // 0-based sorted adjacency lists
    adj: Vec<Vec<usize>>,
}

/// The two colour classes of a bipartite graph, with vertex 1 in `v1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
}

impl Bipartition {
    pub fn contains_in_v1(&self, vertex: usize) -> bool {
        self.v1.binary_search(&vertex).is_ok()
    }
}

impl Graph {
    /// Builds a graph on vertices `1..=n` from 1-based edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(ValidationError::Empty.into());
        }
        let mut seen = BTreeSet::new();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(ValidationError::VertexOutOfRange { vertex: v, n }.into());
                }
            }
            if i == j {
                return Err(ValidationError::Loop(i).into());
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(ValidationError::DuplicateEdge(i, j).into());
            }
            adj[i - 1].push(j - 1);
            adj[j - 1].push(i - 1);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = Graph { adj };
        if g.bfs_distances(0).iter().any(Option::is_none) {
            return Err(ValidationError::Disconnected.into());
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Edges as 1-based pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if i < j {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    fn check(&self, vertex: usize) -> Result<usize> {
        if vertex == 0 || vertex > self.order() {
            Err(Error::VertexOutOfRange {
                vertex,
                n: self.order(),
            })
        } else {
            Ok(vertex - 1)
        }
    }

    pub(crate) fn adj0(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub(crate) fn has_edge0(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub(crate) fn degree0(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn neighbors(&self, vertex: usize) -> Result<Vec<usize>> {
        let i = self.check(vertex)?;
        Ok(self.adj[i].iter().map(|&j| j + 1).collect())
    }

    pub fn degree(&self, vertex: usize) -> Result<usize> {
        let i = self.check(vertex)?;
        Ok(self.adj[i].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> Result<bool> {
        let (a, b) = (self.check(i)?, self.check(j)?);
        Ok(self.has_edge0(a, b))
    }

    fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Length of a shortest path between `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> Result<usize> {
        let (a, b) = (self.check(i)?, self.check(j)?);
        Ok(self.bfs_distances(a)[b].expect("graph is connected"))
    }

    /// The bipartition by BFS parity from vertex 1, or `None` if some edge joins two vertices
    /// of equal parity (an odd cycle exists).
    pub fn bipartition(&self) -> Option<Bipartition> {
        let dist = self.bfs_distances(0);
        let parity = |v: usize| dist[v].expect("graph is connected") % 2;
        for (u, list) in self.adj.iter().enumerate() {
            if list.iter().any(|&v| parity(u) == parity(v)) {
                return None;
            }
        }
        let (v1, v2): (Vec<usize>, Vec<usize>) =
            (1..=self.order()).partition(|&v| parity(v - 1) == 0);
        Some(Bipartition { v1, v2 })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Common degree, if every vertex has the same degree.
    pub fn is_regular(&self) -> Option<usize> {
        let d = self.degree0(0);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// `(degree on v1, degree on v2)` when the graph is bipartite with constant degree on
    /// each side.
    pub fn is_biregular(&self) -> Option<(usize, usize)> {
        let b = self.bipartition()?;
        let side = |vs: &[usize]| -> Option<usize> {
            let d = self.degree0(*vs.first()? - 1);
            vs.iter().all(|&v| self.degree0(v - 1) == d).then_some(d)
        };
        Some((side(&b.v1)?, side(&b.v2)?))
    }

    /// Symmetric 0/1 adjacency matrix over `ctx`.
    pub fn adjacency_matrix(&self, ctx: FieldCtx) -> Matrix {
        let n = self.order();
        let mut m = Matrix::zeros(ctx, n, n);
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                m.set(i, j, Scalar::one(ctx));
            }
        }
        m
    }

    /// Random-walk transition matrix: `p_ij = 1/d_i` on edges.
    pub fn transition_matrix(&self, ctx: FieldCtx) -> Result<Matrix> {
        let n = self.order();
        let mut m = Matrix::zeros(ctx, n, n);
        for (i, list) in self.adj.iter().enumerate() {
            let d = list.len();
            // An isolated vertex only occurs for n = 1; its row is zero.
            if d == 0 {
                continue;
            }
            if !ctx.is_unit_integer(d as u64) {
                return Err(Error::DegreeNotInvertible {
                    vertex: i + 1,
                    degree: d,
                    characteristic: ctx.characteristic(),
                });
            }
            let p =
                Scalar::from_rational(ctx, &BigRational::new(BigInt::from(1), BigInt::from(d)))?;
            for &j in list {
                m.set(i, j, p.clone());
            }
        }
        Ok(m)
    }
}

/// Named graphs from the worked examples, with their fixed vertex numbering.
pub mod named {
    use super::Graph;

    fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges).expect("named graph is valid")
    }

    pub fn path(n: usize) -> Graph {
        let edges: alloc::vec::Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        build(n, &edges)
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: alloc::vec::Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((n, 1));
        build(n, &edges)
    }

    /// Star `K_{1,k}` with centre 1.
    pub fn star(k: usize) -> Graph {
        let edges: alloc::vec::Vec<_> = (2..=k + 1).map(|i| (1, i)).collect();
        build(k + 1, &edges)
    }

    pub fn p3() -> Graph {
        path(3)
    }

    pub fn p4() -> Graph {
        path(4)
    }

    pub fn c6() -> Graph {
        cycle(6)
    }

    pub fn k14() -> Graph {
        star(4)
    }

    /// Caterpillar `C_{2,2}`: spine 1-4, leaves 2, 3 on 1 and 5, 6 on 4.
    pub fn c22() -> Graph {
        build(6, &[(1, 2), (1, 3), (1, 4), (4, 5), (4, 6)])
    }

    /// Bull graph: triangle 3-4-5 with horns 1 (on 3) and 2 (on 4).
    pub fn bull() -> Graph {
        build(5, &[(1, 3), (2, 4), (3, 4), (3, 5), (4, 5)])
    }

    /// Tadpole `T_{4,1}`: 4-cycle 1-2-3-4 with tail 5 on vertex 4.
    pub fn tadpole41() -> Graph {
        build(5, &[(1, 2), (2, 3), (3, 4), (4, 1), (4, 5)])
    }

    pub fn single_vertex() -> Graph {
        build(1, &[])
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn rejects_invalid_graphs() {
        assert_eq!(Graph::new(0, &[]), Err(ValidationError::Empty.into()));
        assert_eq!(
            Graph::new(2, &[(1, 1)]),
            Err(ValidationError::Loop(1).into())
        );
        assert_eq!(
            Graph::new(2, &[(1, 2), (2, 1)]),
            Err(ValidationError::DuplicateEdge(2, 1).into())
        );
        assert_eq!(
            Graph::new(4, &[(1, 2), (3, 4)]),
            Err(ValidationError::Disconnected.into())
        );
        assert_eq!(
            Graph::new(2, &[(1, 3)]),
            Err(ValidationError::VertexOutOfRange { vertex: 3, n: 2 }.into())
        );
    }

    #[test]
    fn neighbors_and_degrees() {
        assert_eq!(p3().neighbors(2).unwrap(), vec![1, 3]);
        assert_eq!(p3().neighbors(1).unwrap(), vec![2]);
        assert_eq!(k14().neighbors(1).unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(tadpole41().degree(4).unwrap(), 3);
        assert_eq!(p3().degree(2).unwrap(), 2);
        assert!(c6().degrees().iter().all(|&d| d == 2));
        assert_eq!(
            p3().neighbors(4),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        );
        assert!(p3().degree(0).is_err());
    }

    #[test]
    fn distances() {
        assert_eq!(p4().distance(1, 4).unwrap(), 3);
        assert_eq!(c6().distance(1, 4).unwrap(), 3);
        assert_eq!(c6().distance(2, 2).unwrap(), 0);
        assert!(p4().distance(1, 5).is_err());
    }

    #[test]
    fn bipartitions() {
        let b = c22().bipartition().unwrap();
        assert_eq!(b.v1, vec![1, 5, 6]);
        assert_eq!(b.v2, vec![2, 3, 4]);
        assert!(bull().bipartition().is_none());
        let b = p4().bipartition().unwrap();
        assert_eq!((b.v1, b.v2), (vec![1, 3], vec![2, 4]));
        let b = single_vertex().bipartition().unwrap();
        assert_eq!((b.v1, b.v2), (vec![1], vec![]));
    }

    #[test]
    fn regularity() {
        assert_eq!(c6().is_regular(), Some(2));
        assert_eq!(k14().is_biregular(), Some((4, 1)));
        assert_eq!(k14().is_regular(), None);
        assert_eq!(tadpole41().is_regular(), None);
        assert_eq!(tadpole41().is_biregular(), None);
        assert_eq!(bull().is_biregular(), None);
    }

    #[test]
    fn matrices() {
        let q = FieldCtx::Rational;
        let a = p3().adjacency_matrix(q);
        let expect = |rows: &[&[(i64, i64)]]| {
            Matrix::from_rows(
                q,
                rows.iter()
                    .map(|r| {
                        r.iter()
                            .map(|&(n, d)| Scalar::Rational(BigRational::new(n.into(), d.into())))
                            .collect()
                    })
                    .collect(),
            )
            .unwrap()
        };
        assert_eq!(
            a,
            expect(&[
                &[(0, 1), (1, 1), (0, 1)],
                &[(1, 1), (0, 1), (1, 1)],
                &[(0, 1), (1, 1), (0, 1)]
            ])
        );
        let t = p3().transition_matrix(q).unwrap();
        assert_eq!(
            t,
            expect(&[
                &[(0, 1), (1, 1), (0, 1)],
                &[(1, 2), (0, 1), (1, 2)],
                &[(0, 1), (1, 1), (0, 1)]
            ])
        );
        assert_eq!(single_vertex().adjacency_matrix(q), Matrix::zeros(q, 1, 1));
        let half = Scalar::Rational(BigRational::new(1.into(), 2.into()));
        let t6 = c6().transition_matrix(q).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let x = t6.get(i, j);
                assert!(x.is_zero() || *x == half);
            }
        }
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(
            p3().transition_matrix(f2),
            Err(Error::DegreeNotInvertible {
                vertex: 2,
                degree: 2,
                characteristic: 2
            })
        );
    }

    #[test]
    fn bull_adjacency() {
        let m = bull().adjacency_matrix(FieldCtx::Rational);
        let expected = [
            [0, 0, 1, 0, 0],
            [0, 0, 0, 1, 0],
            [1, 0, 0, 1, 1],
            [0, 1, 1, 0, 1],
            [0, 0, 1, 1, 0],
        ];
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(
                    *m.get(i, j),
                    Scalar::from_int(FieldCtx::Rational, expected[i][j])
                );
            }
        }
    }
}
