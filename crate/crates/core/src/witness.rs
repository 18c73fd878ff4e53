//! Constructive witness extraction inside lexicographic powers.
//!
//! Given a ladder of certified local Ramsey values for the base graph,
//! `find_homogeneous` digs a clique or independent set out of an arbitrary
//! subset of G^l by bucketing tuples on their first coordinate, finding a
//! homogeneous set among the heavy base vertices, and recursing one
//! coordinate down. `extract_bad_set` goes the other way: it assembles a
//! large subset of a graph that provably misses K_r or I_r.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, SetKind};
use crate::search::{
    find_homogeneous_of_size, max_clique, max_independent_set, SearchConfig,
};
use crate::view::{LexPowerView, VertexTuple};

/// One certified level: any `m` vertices of the base contain both K_r
/// and I_r.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderEntry {
    pub r: usize,
    pub m: f64,
}

/// The assumption sequence (r_t, m_t), t = 2..k, plus the top value
/// m_{k+1}. Construction normalizes the m's to be non-decreasing: if
/// m_i > m_j for i < j, m_i can be lowered to m_j without losing anything,
/// because a bound for the larger r_j also bounds r_i.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LadderRaw")]
pub struct Ladder {
    entries: Vec<LadderEntry>,
    m_top: f64,
}

#[derive(Deserialize)]
struct LadderRaw {
    entries: Vec<LadderEntry>,
    m_top: f64,
}

impl TryFrom<LadderRaw> for Ladder {
    type Error = Error;
    fn try_from(raw: LadderRaw) -> Result<Ladder> {
        Ladder::new(raw.entries, raw.m_top)
    }
}

impl Ladder {
    pub fn new(mut entries: Vec<LadderEntry>, m_top: f64) -> Result<Ladder> {
        if entries.is_empty() {
            return Err(Error::InvalidLadder("ladder needs at least one entry".into()));
        }
        let mut prev_r = 1;
        for e in &entries {
            if e.r < 2 {
                return Err(Error::InvalidLadder(format!("r = {} below 2", e.r)));
            }
            if e.r <= prev_r {
                return Err(Error::InvalidLadder(format!(
                    "r values must be strictly increasing: {} after {prev_r}",
                    e.r
                )));
            }
            if !(e.m >= 1.0) {
                return Err(Error::InvalidLadder(format!("m = {} below 1", e.m)));
            }
            prev_r = e.r;
        }
        if !(m_top >= 1.0) {
            return Err(Error::InvalidLadder(format!("m_top = {m_top} below 1")));
        }
        // normalize: sweep right to left so each m is at most its successor's
        let mut cap = m_top;
        for e in entries.iter_mut().rev() {
            if e.m > cap {
                e.m = cap;
            }
            cap = e.m;
        }
        Ok(Ladder { entries, m_top })
    }

    pub fn from_json(text: &str) -> Result<Ladder> {
        serde_json::from_str(text).map_err(|e| Error::InvalidLadder(e.to_string()))
    }

    pub fn entries(&self) -> &[LadderEntry] {
        &self.entries
    }

    pub fn m_top(&self) -> f64 {
        self.m_top
    }

    /// k: the largest level index (entries cover t = 2..=k).
    pub fn k(&self) -> usize {
        self.entries.len() + 1
    }

    /// (r_t, m_t) with the conventions r_1 = 1, m_1 = 1 and
    /// m_{k+1} = m_top.
    pub fn level(&self, t: usize) -> (usize, f64) {
        if t == 1 {
            (1, 1.0)
        } else {
            let e = self.entries[t - 2];
            (e.r, e.m)
        }
    }

    /// m_{t+1} as seen from level t.
    pub fn m_next(&self, t: usize) -> f64 {
        if t == self.k() {
            self.m_top
        } else {
            self.level(t + 1).1
        }
    }

    /// m_2: the smallest certified level.
    pub fn m2(&self) -> f64 {
        self.level(2).1
    }
}

/// The level chosen by bucketing, the heavy vertices, and the count
/// threshold they all meet.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BucketResult {
    pub t: usize,
    pub vertices: Vec<usize>,
    pub threshold: f64,
}

/// Picks the smallest t in [1, k] such that at least m_t vertices carry
/// count >= m / (2^t m_{t+1}), and returns the top-m_t vertices by count
/// (ties broken by vertex index).
///
/// For counts summing to m with at most m_top - 1 positive entries this
/// always succeeds: if every level failed, the counts would sum to less
/// than m.
pub fn bucket_select(counts: &[usize], m: usize, ladder: &Ladder) -> Result<BucketResult> {
    let total: usize = counts.iter().sum();
    if total != m || m == 0 {
        return Err(Error::InvalidArgument(format!(
            "counts sum to {total}, expected m = {m} >= 1"
        )));
    }
    let positive = counts.iter().filter(|&&c| c > 0).count();
    if (positive as f64) > ladder.m_top() - 1.0 {
        return Err(Error::InvalidLadder(format!(
            "{positive} vertices carry tuples but m_top = {} (need m_top >= support + 1)",
            ladder.m_top()
        )));
    }

    // vertices sorted by count descending, index ascending
    let mut by_count: Vec<usize> = (0..counts.len()).filter(|&v| counts[v] > 0).collect();
    by_count.sort_by_key(|&v| (std::cmp::Reverse(counts[v]), v));

    for t in 1..=ladder.k() {
        let (_, m_t) = ladder.level(t);
        let need = if t == 1 { 1 } else { m_t.ceil() as usize };
        let threshold = m as f64 / (2f64.powi(t as i32) * ladder.m_next(t));
        if need <= by_count.len() && counts[by_count[need - 1]] as f64 >= threshold {
            return Ok(BucketResult {
                t,
                vertices: by_count[..need].to_vec(),
                threshold,
            });
        }
    }
    Err(Error::BucketContradiction(format!(
        "no level of a k = {} ladder qualified for m = {m}",
        ladder.k()
    )))
}

fn strip_kind_name(kind: SetKind) -> &'static str {
    match kind {
        SetKind::Clique => "clique",
        SetKind::Independent => "independent set",
    }
}

fn find_rec(
    base: &Graph,
    ell: u32,
    tuples: &[Vec<usize>],
    ladder: &Ladder,
    kind: SetKind,
    cfg: &SearchConfig,
) -> Result<Vec<Vec<usize>>> {
    debug_assert!(!tuples.is_empty());
    if ell == 1 {
        let verts: Vec<usize> = tuples.iter().map(|t| t[0]).collect();
        let (sub, map) = base.induced(&verts)?;
        let found = match kind {
            SetKind::Clique => max_clique(&sub, cfg)?,
            SetKind::Independent => max_independent_set(&sub, cfg)?,
        };
        return Ok(found.into_iter().map(|i| vec![map[i]]).collect());
    }

    let m = tuples.len();
    let mut counts = vec![0usize; base.vertex_count()];
    for t in tuples {
        counts[t[0]] += 1;
    }
    let bucket = bucket_select(&counts, m, ladder)?;
    let (r_t, _) = ladder.level(bucket.t);

    let heads: Vec<usize> = if bucket.t == 1 {
        vec![bucket.vertices[0]]
    } else {
        let (sub, map) = base.induced(&bucket.vertices)?;
        let found = find_homogeneous_of_size(&sub, r_t, kind).ok_or_else(|| {
            Error::LadderNotCertified(format!(
                "no {} of size {r_t} among the {} heaviest base vertices; \
                 the ladder's m_{{{}}} bound does not hold for this base",
                strip_kind_name(kind),
                bucket.vertices.len(),
                bucket.t,
            ))
        })?;
        found.into_iter().map(|i| map[i]).collect()
    };

    // every selected head has count >= threshold, so >= ceil(threshold)
    let take = (bucket.threshold.ceil() as usize).max(1);
    let mut result = Vec::new();
    let mut heads_sorted = heads;
    heads_sorted.sort_unstable();
    for &head in &heads_sorted {
        let stripped: Vec<Vec<usize>> = tuples
            .iter()
            .filter(|t| t[0] == head)
            .take(take)
            .map(|t| t[1..].to_vec())
            .collect();
        debug_assert!(stripped.len() == take);
        let inner = find_rec(base, ell - 1, &stripped, ladder, kind, cfg)?;
        for mut t in inner {
            let mut full = Vec::with_capacity(t.len() + 1);
            full.push(head);
            full.append(&mut t);
            result.push(full);
        }
    }
    Ok(result)
}

/// Extracts a homogeneous set of the requested kind from `subset`, a set
/// of distinct tuples of the view.
///
/// At exponent 1 this is exact search on the induced base subgraph. At
/// higher exponents it buckets tuples by first coordinate, finds a
/// K_{r_t} (or I_{r_t}) among the heavy heads, truncates each head's
/// tuple class to the bucket threshold, recurses one coordinate down and
/// joins the per-head answers: adjacent heads make every cross pair
/// adjacent, so the union of per-head cliques is a clique (dually for
/// independent sets).
///
/// With a ladder certified for the base (m_t >= m_base(r_t)) the result
/// has size at least max(1, 2^rhs) where rhs is the eq-beta right-hand
/// side for (|subset|, exponent, ladder).
pub fn find_homogeneous(
    view: &LexPowerView,
    subset: &[VertexTuple],
    ladder: &Ladder,
    kind: SetKind,
    cfg: &SearchConfig,
) -> Result<Vec<VertexTuple>> {
    if subset.is_empty() {
        return Err(Error::InvalidArgument("subset must be non-empty".into()));
    }
    let n = view.base().vertex_count();
    let ell = view.exponent() as usize;
    let mut seen = std::collections::HashSet::with_capacity(subset.len());
    for t in subset {
        if t.len() != ell {
            return Err(Error::DimensionMismatch {
                expected: ell,
                got: t.len(),
            });
        }
        for &c in t.coords() {
            if c >= n {
                return Err(Error::VertexOutOfRange { v: c, n });
            }
        }
        if !seen.insert(t) {
            return Err(Error::InvalidArgument("subset contains a repeated tuple".into()));
        }
    }
    let floor_top = (n.min(subset.len()) + 1) as f64;
    if ladder.m_top() < floor_top {
        return Err(Error::InvalidLadder(format!(
            "m_top = {} but min(n, |S|) + 1 = {floor_top}",
            ladder.m_top()
        )));
    }

    let raw: Vec<Vec<usize>> = subset.iter().map(|t| t.coords().to_vec()).collect();
    let found = find_rec(view.base(), view.exponent(), &raw, ladder, kind, cfg)?;
    Ok(found.into_iter().map(VertexTuple).collect())
}

/// A bad set produced by repeated extraction, with the kind of the
/// homogeneous pieces it is a union of. Pieces of kind clique leave no
/// I_r in the union; pieces of kind independent leave no K_r.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BadSet {
    pub vertices: Vec<usize>,
    pub kind: SetKind,
    /// Whether n >= 4 r log2(n) held; the half-log size floor is only
    /// promised when it did.
    pub hypothesis_ok: bool,
}

/// Repeatedly removes a largest homogeneous set (clique or independent
/// set, whichever is larger, ties to clique), 2r - 3 times. At least
/// r - 1 of the extracted sets share a kind; their union misses K_r if
/// they were independent sets, and misses I_r if they were cliques.
///
/// The extraction is exact, so the whole procedure is deterministic.
pub fn extract_bad_set(g: &Graph, r: usize, cfg: &SearchConfig) -> Result<BadSet> {
    if r < 2 {
        return Err(Error::InvalidArgument("r must be at least 2".into()));
    }
    let n = g.vertex_count();
    let hypothesis_ok = n > 0 && n as f64 >= 4.0 * r as f64 * (n as f64).log2();

    let mut remaining: Vec<usize> = (0..n).collect();
    let mut extracted: Vec<(SetKind, Vec<usize>)> = Vec::new();
    for _ in 0..2 * r - 3 {
        let (sub, map) = g.induced(&remaining)?;
        let clique = max_clique(&sub, cfg)?;
        let indep = max_independent_set(&sub, cfg)?;
        let (kind, local) = if clique.len() >= indep.len() {
            (SetKind::Clique, clique)
        } else {
            (SetKind::Independent, indep)
        };
        let global: Vec<usize> = local.iter().map(|&i| map[i]).collect();
        remaining.retain(|v| !global.contains(v));
        extracted.push((kind, global));
    }

    let cliques = extracted
        .iter()
        .filter(|(k, _)| *k == SetKind::Clique)
        .count();
    let majority = if cliques >= r - 1 {
        SetKind::Clique
    } else {
        SetKind::Independent
    };
    let mut union: Vec<usize> = extracted
        .iter()
        .filter(|(k, _)| *k == majority)
        .take(r - 1)
        .flat_map(|(_, s)| s.iter().copied())
        .collect();
    union.sort_unstable();
    Ok(BadSet {
        vertices: union,
        kind: majority,
        hypothesis_ok,
    })
}
