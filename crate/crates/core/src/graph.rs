//! Finite simple graphs with bit-row adjacency.
//!
//! Rows are stored as packed `u64` words so that clique search and
//! neighborhood intersection run on whole words. Graphs are immutable
//! after construction; every operation here is read-only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which homogeneous structure a set is (or is asked to be).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetKind {
    Clique,
    Independent,
}

impl SetKind {
    /// The other kind.
    pub fn flip(self) -> SetKind {
        match self {
            SetKind::Clique => SetKind::Independent,
            SetKind::Independent => SetKind::Clique,
        }
    }
}

impl std::fmt::Display for SetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SetKind::Clique => write!(f, "clique"),
            SetKind::Independent => write!(f, "independent"),
        }
    }
}

impl std::str::FromStr for SetKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clique" => Ok(SetKind::Clique),
            "independent" => Ok(SetKind::Independent),
            other => Err(Error::Parse(format!("unknown set kind {other:?}"))),
        }
    }
}

/// A finite simple graph. Adjacency is symmetric with a zero diagonal.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.set_edge_raw(u, v, true);
                }
            }
        }
        g
    }

    /// Cycle C_n (empty for n < 3).
    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for u in 0..n {
                g.set_edge(u, (u + 1) % n);
            }
        }
        g
    }

    /// Graph from an explicit edge list; out-of-range endpoints error.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u != v {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Builds a graph by evaluating `edge(u, v)` on every pair `u < v`.
    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut g = Graph::empty(n);
        for v in 1..n {
            for u in 0..v {
                if edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The packed neighbor row of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// Words per row (shared by all row-shaped bit sets over this graph).
    #[inline]
    pub fn row_words(&self) -> usize {
        self.words
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.set_edge_raw(u, v, true);
        self.set_edge_raw(v, u, true);
    }

    pub(crate) fn flip_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        let present = self.has_edge(u, v);
        self.set_edge_raw(u, v, !present);
        self.set_edge_raw(v, u, !present);
    }

    fn set_edge_raw(&mut self, u: usize, v: usize, on: bool) {
        let idx = u * self.words + v / 64;
        let mask = 1u64 << (v % 64);
        if on {
            self.bits[idx] |= mask;
        } else {
            self.bits[idx] &= !mask;
        }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Edges as (u, v) pairs with u < v, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The complement graph: every pair's adjacency flipped.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for v in 1..self.n {
            for u in 0..v {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// Induced subgraph on `vertices`, relabeled in the order given.
    /// Returns the subgraph together with the new-index -> old-index map.
    pub fn induced(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok((g, vertices.to_vec()))
    }

    /// True iff every pair in `vertices` is adjacent (clique) or
    /// non-adjacent (independent). Singletons and the empty set qualify
    /// as both.
    pub fn is_homogeneous(&self, vertices: &[usize], kind: SetKind) -> Result<bool> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let want = kind == SetKind::Clique;
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if u == v {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {u} repeated in candidate set"
                    )));
                }
                if self.has_edge(u, v) != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Explicit lexicographic product. Vertex (i, j) of the product gets
    /// index `i * |H| + j`, so the first factor is the most significant
    /// coordinate. (i, j) ~ (x, y) iff i ~ x in self, or i = x and j ~ y in `other`.
    pub fn lex_product(&self, other: &Graph, vertex_cap: usize) -> Result<Graph> {
        let needed = (self.n as u128) * (other.n as u128);
        if needed > vertex_cap as u128 {
            return Err(Error::CapExceeded {
                needed,
                cap: vertex_cap as u128,
            });
        }
        let hn = other.n;
        let mut g = Graph::empty(needed as usize);
        for i in 0..self.n {
            for j in 0..hn {
                let a = i * hn + j;
                for x in 0..self.n {
                    for y in 0..hn {
                        let b = x * hn + y;
                        if a >= b {
                            continue;
                        }
                        let adj = if i != x {
                            self.has_edge(i, x)
                        } else {
                            other.has_edge(j, y)
                        };
                        if adj {
                            g.set_edge(a, b);
                        }
                    }
                }
            }
        }
        Ok(g)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}
