//! Locally Ramsey graph constructions and certification.
//!
//! A graph is (m, r)-locally Ramsey when every set of at least m vertices
//! contains both a clique and an independent set of size r; m_G(r) is the
//! least such m. This crate builds the graph families that make m_G(r)
//! small — seeded random bases, lexicographic powers, p-scrambles and
//! their iterated combinations — and checks the local Ramsey property
//! three ways: exact branch-and-bound on small graphs, Monte-Carlo
//! subset sampling at scale, and constructive witness extraction that
//! digs homogeneous sets out of arbitrary subsets of a power.
//!
//! The `bounds` module evaluates every closed-form bound the
//! constructions rely on and plans multi-level recipes in log2-space,
//! where vertex counts stop fitting in machine integers.

// Validation deliberately writes `!(x >= k)` so NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod construct;
pub mod error;
pub mod graph;
pub mod io;
pub mod rng;
pub mod search;
pub mod view;
pub mod witness;

pub use construct::{execute, gnp, scramble, scramble_p, Built, Recipe, Seed, Step};
pub use error::{Error, Result};
pub use graph::{Graph, SetKind};
pub use search::{
    exact_m, max_clique, max_independent_set, max_kr_free_subset, sample_m, RamseyReport,
    SearchConfig,
};
pub use view::{LexPowerView, VertexTuple};
pub use witness::{bucket_select, find_homogeneous, extract_bad_set, Ladder};
