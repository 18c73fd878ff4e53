//! Implicit lexicographic powers.
//!
//! `G^l` on a base with n vertices has n^l logical vertices, far too many
//! to materialize at the scales these constructions target. The view keeps
//! only the base graph and the exponent; adjacency of two tuples is decided
//! coordinate-wise, and explicit graphs are cut out of the view only below
//! a configured vertex cap.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, SetKind};

/// Default cap on any explicit materialization cut from a view.
pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

/// A vertex of `G^l`: a sequence of `l` base-vertex indices. The first
/// coordinate is the most significant under row-major ranking.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexTuple(pub Vec<usize>);

impl VertexTuple {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The l-fold lexicographic power of a base graph, held implicitly.
#[derive(Clone, Debug)]
pub struct LexPowerView {
    base: Graph,
    exponent: u32,
    vertex_cap: usize,
}

impl LexPowerView {
    /// A view of `base^exponent`; `exponent` must be at least 1.
    pub fn new(base: Graph, exponent: u32, vertex_cap: usize) -> Result<LexPowerView> {
        if exponent == 0 {
            return Err(Error::InvalidArgument("exponent must be >= 1".into()));
        }
        Ok(LexPowerView {
            base,
            exponent,
            vertex_cap,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn vertex_cap(&self) -> usize {
        self.vertex_cap
    }

    /// n^l, or None when it exceeds u128.
    pub fn logical_vertex_count(&self) -> Option<u128> {
        let n = self.base.vertex_count() as u128;
        let mut acc: u128 = 1;
        for _ in 0..self.exponent {
            acc = acc.checked_mul(n)?;
        }
        Some(acc)
    }

    fn check_tuple(&self, t: &VertexTuple) -> Result<()> {
        if t.len() != self.exponent as usize {
            return Err(Error::DimensionMismatch {
                expected: self.exponent as usize,
                got: t.len(),
            });
        }
        let n = self.base.vertex_count();
        for &c in t.coords() {
            if c >= n {
                return Err(Error::VertexOutOfRange { v: c, n });
            }
        }
        Ok(())
    }

    /// Adjacency of two tuples: at the first coordinate where they differ,
    /// the base graph decides. Equal tuples are non-adjacent (no loops).
    pub fn lex_adjacent(&self, u: &VertexTuple, v: &VertexTuple) -> Result<bool> {
        self.check_tuple(u)?;
        self.check_tuple(v)?;
        for (&a, &b) in u.coords().iter().zip(v.coords()) {
            if a != b {
                return Ok(self.base.has_edge(a, b));
            }
        }
        Ok(false)
    }

    /// The row-major rank of a tuple (first coordinate most significant).
    pub fn tuple_index(&self, t: &VertexTuple) -> Result<u128> {
        self.check_tuple(t)?;
        let n = self.base.vertex_count() as u128;
        let mut acc: u128 = 0;
        for &c in t.coords() {
            acc = acc * n + c as u128;
        }
        Ok(acc)
    }

    /// The tuple at row-major rank `index`.
    pub fn tuple_at(&self, mut index: u128) -> Result<VertexTuple> {
        let total = self.logical_vertex_count().ok_or(Error::CapExceeded {
            needed: u128::MAX,
            cap: u128::MAX,
        })?;
        if index >= total {
            return Err(Error::InvalidArgument(format!(
                "tuple index {index} out of range ({total} logical vertices)"
            )));
        }
        let n = self.base.vertex_count() as u128;
        let l = self.exponent as usize;
        let mut coords = vec![0usize; l];
        for i in (0..l).rev() {
            coords[i] = (index % n) as usize;
            index /= n;
        }
        Ok(VertexTuple(coords))
    }

    /// Materializes the induced subgraph on an explicit set of tuples,
    /// relabeled in the order given.
    pub fn materialize_subset(&self, tuples: &[VertexTuple]) -> Result<Graph> {
        if tuples.len() > self.vertex_cap {
            return Err(Error::CapExceeded {
                needed: tuples.len() as u128,
                cap: self.vertex_cap as u128,
            });
        }
        for t in tuples {
            self.check_tuple(t)?;
        }
        let mut g = Graph::empty(tuples.len());
        for (i, u) in tuples.iter().enumerate() {
            for (j, v) in tuples.iter().enumerate().skip(i + 1) {
                if self.lex_adjacent(u, v)? {
                    g.set_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Materializes the first `count` tuples in row-major order.
    pub fn materialize_prefix(&self, count: u128) -> Result<Graph> {
        let total = self.logical_vertex_count().unwrap_or(u128::MAX);
        if count > total {
            return Err(Error::InvalidArgument(format!(
                "prefix of {count} tuples requested from {total} logical vertices"
            )));
        }
        if count > self.vertex_cap as u128 {
            return Err(Error::CapExceeded {
                needed: count,
                cap: self.vertex_cap as u128,
            });
        }
        let tuples: Vec<VertexTuple> = (0..count)
            .map(|i| self.tuple_at(i))
            .collect::<Result<_>>()?;
        self.materialize_subset(&tuples)
    }

    /// Materializes the whole power (only sensible for tiny n^l).
    pub fn materialize(&self) -> Result<Graph> {
        let total = self.logical_vertex_count().ok_or(Error::CapExceeded {
            needed: u128::MAX,
            cap: self.vertex_cap as u128,
        })?;
        self.materialize_prefix(total)
    }

    /// Pairwise homogeneity of a set of tuples under the view's adjacency.
    pub fn is_homogeneous(&self, tuples: &[VertexTuple], kind: SetKind) -> Result<bool> {
        let want = kind == SetKind::Clique;
        for (i, u) in tuples.iter().enumerate() {
            for v in &tuples[i + 1..] {
                if u == v {
                    return Err(Error::InvalidArgument("tuple repeated in set".into()));
                }
                if self.lex_adjacent(u, v)? != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
