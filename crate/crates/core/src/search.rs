//! Exact clique/independence search and local Ramsey computations.
//!
//! The clique core is branch-and-bound with a greedy-coloring upper bound
//! over packed bit rows. On top of it sit the two quantities everything
//! else consumes: the largest subset with no K_r (or no I_r), and
//! m_G(r) = 1 + the larger of the two, with Monte-Carlo subset sampling
//! taking over at scales where exact search is impossible.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::construct::Seed;
use crate::error::{Error, Result};
use crate::graph::{Graph, SetKind};
use crate::rng::{sub_seed, CounterRng};
use crate::view::{LexPowerView, VertexTuple};

/// Caps and switches for the exact solvers.
#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Largest graph max_clique will take without `force`.
    pub clique_cap: usize,
    /// Largest graph the K_r-free subset search will take without `force`.
    pub subset_cap: usize,
    /// Proceed past the caps (may be slow).
    pub force: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            clique_cap: 64,
            subset_cap: 14,
            force: false,
        }
    }
}

/// Real-valued target sizes are rounded up: an r-clique with non-integer r
/// means a clique of size at least r.
pub fn normalize_r(r: f64) -> usize {
    if r <= 1.0 {
        1
    } else {
        r.ceil() as usize
    }
}

// ---------------------------------------------------------------------------
// bit-mask helpers over packed rows
// ---------------------------------------------------------------------------

fn full_mask(n: usize, words: usize) -> Vec<u64> {
    let mut m = vec![u64::MAX; words];
    let tail = n % 64;
    if tail != 0 {
        if let Some(last) = m.last_mut() {
            *last = (1u64 << tail) - 1;
        }
    }
    if n == 0 {
        m.iter_mut().for_each(|w| *w = 0);
    }
    m
}

#[inline]
fn mask_count(mask: &[u64]) -> usize {
    mask.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
fn mask_test(mask: &[u64], v: usize) -> bool {
    mask[v / 64] >> (v % 64) & 1 != 0
}

#[inline]
fn mask_clear(mask: &mut [u64], v: usize) {
    mask[v / 64] &= !(1u64 << (v % 64));
}

#[inline]
fn mask_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn mask_vertices(mask: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, &w) in mask.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(wi * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// clique branch-and-bound
// ---------------------------------------------------------------------------

/// Greedy sequential coloring of the vertices in `cand`. Returns them
/// ordered by color (ascending); `colors[i]` bounds the largest clique
/// any prefix through position i can still contain.
fn color_sort(g: &Graph, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::new();
    let mut colors = Vec::new();
    let mut uncolored = cand.to_vec();
    let mut color = 0;
    while mask_count(&uncolored) > 0 {
        color += 1;
        let mut class = uncolored.clone();
        while let Some(v) = mask_vertices(&class).first().copied() {
            order.push(v);
            colors.push(color);
            mask_clear(&mut uncolored, v);
            mask_clear(&mut class, v);
            for (w, r) in class.iter_mut().zip(g.row(v)) {
                *w &= !r;
            }
        }
    }
    (order, colors)
}

fn mc_expand(g: &Graph, cand: Vec<u64>, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
    let (order, colors) = color_sort(g, &cand);
    let mut cand = cand;
    for i in (0..order.len()).rev() {
        if cur.len() + colors[i] <= best.len() {
            return;
        }
        let v = order[i];
        cur.push(v);
        let next = mask_and(&cand, g.row(v));
        if mask_count(&next) == 0 {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
        } else {
            mc_expand(g, next, cur, best);
        }
        cur.pop();
        mask_clear(&mut cand, v);
    }
}

fn max_clique_any(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let mut best = Vec::new();
    let mut cur = Vec::new();
    mc_expand(g, full_mask(n, g.row_words()), &mut cur, &mut best);
    best
}

struct ExistCtx {
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl ExistCtx {
    fn unbounded() -> Self {
        ExistCtx {
            nodes: 0,
            budget: u64::MAX,
            aborted: false,
        }
    }

    fn budgeted(budget: u64) -> Self {
        ExistCtx {
            nodes: 0,
            budget,
            aborted: false,
        }
    }
}

fn exist_expand(
    g: &Graph,
    cand: Vec<u64>,
    cur: &mut Vec<usize>,
    k: usize,
    ctx: &mut ExistCtx,
) -> bool {
    ctx.nodes += 1;
    if ctx.nodes > ctx.budget {
        ctx.aborted = true;
        return false;
    }
    let (order, colors) = color_sort(g, &cand);
    let mut cand = cand;
    for i in (0..order.len()).rev() {
        if cur.len() + colors[i] < k {
            return false;
        }
        let v = order[i];
        cur.push(v);
        if cur.len() == k {
            return true;
        }
        let next = mask_and(&cand, g.row(v));
        if exist_expand(g, next, cur, k, ctx) {
            return true;
        }
        if ctx.aborted {
            return false;
        }
        cur.pop();
        mask_clear(&mut cand, v);
    }
    false
}

/// Searches `g` restricted to `within` for a clique of size `k`; early
/// exit on the first one found.
fn find_clique_within(
    g: &Graph,
    within: &[u64],
    k: usize,
    ctx: &mut ExistCtx,
) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    if mask_count(within) < k {
        return None;
    }
    let mut cur = Vec::with_capacity(k);
    if exist_expand(g, within.to_vec(), &mut cur, k, ctx) {
        Some(cur)
    } else {
        None
    }
}

/// First clique (kind = Clique) or independent set (kind = Independent)
/// of size `k` in `g`, if one exists. Unbudgeted early-exit search.
pub fn find_homogeneous_of_size(g: &Graph, k: usize, kind: SetKind) -> Option<Vec<usize>> {
    let h;
    let g = match kind {
        SetKind::Clique => g,
        SetKind::Independent => {
            h = g.complement();
            &h
        }
    };
    let mut ctx = ExistCtx::unbounded();
    find_clique_within(g, &full_mask(g.vertex_count(), g.row_words()), k, &mut ctx)
}

fn check_cap(n: usize, cap: usize, force: bool) -> Result<()> {
    if n > cap && !force {
        Err(Error::SearchCapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// A maximum clique; among maximum cliques, the lexicographically
/// smallest vertex set. Obtained by committing vertices in ascending
/// order whenever an extension to full size still exists.
pub fn max_clique(g: &Graph, cfg: &SearchConfig) -> Result<Vec<usize>> {
    check_cap(g.vertex_count(), cfg.clique_cap, cfg.force)?;
    let omega = max_clique_any(g).len();
    let n = g.vertex_count();
    let mut chosen = Vec::with_capacity(omega);
    let mut alive = full_mask(n, g.row_words());
    for v in 0..n {
        if chosen.len() == omega {
            break;
        }
        if !mask_test(&alive, v) {
            continue;
        }
        let cand = mask_and(&alive, g.row(v));
        let need = omega - chosen.len() - 1;
        let mut ctx = ExistCtx::unbounded();
        if find_clique_within(g, &cand, need, &mut ctx).is_some() {
            chosen.push(v);
            alive = cand;
        } else {
            mask_clear(&mut alive, v);
        }
    }
    debug_assert_eq!(chosen.len(), omega);
    Ok(chosen)
}

/// A maximum independent set (max clique of the complement), same
/// tie-breaking as [`max_clique`].
pub fn max_independent_set(g: &Graph, cfg: &SearchConfig) -> Result<Vec<usize>> {
    max_clique(&g.complement(), cfg)
}

pub fn clique_number(g: &Graph, cfg: &SearchConfig) -> Result<usize> {
    check_cap(g.vertex_count(), cfg.clique_cap, cfg.force)?;
    Ok(max_clique_any(g).len())
}

pub fn independence_number(g: &Graph, cfg: &SearchConfig) -> Result<usize> {
    clique_number(&g.complement(), cfg)
}

// ---------------------------------------------------------------------------
// largest K_r-free / I_r-free subsets and m_G(r)
// ---------------------------------------------------------------------------

struct SubsetSearch<'g> {
    g: &'g Graph,
    r: usize,
    best: Vec<usize>,
}

impl<'g> SubsetSearch<'g> {
    /// Can `v` join `chosen` without completing a K_r? `chosen` is K_r-free,
    /// so it suffices to look for a K_{r-1} inside chosen's neighbors of v.
    fn can_add(&self, chosen_mask: &[u64], v: usize) -> bool {
        let cand = mask_and(chosen_mask, self.g.row(v));
        let mut ctx = ExistCtx::unbounded();
        find_clique_within(self.g, &cand, self.r - 1, &mut ctx).is_none()
    }

    fn dfs(&mut self, from: usize, chosen: &mut Vec<usize>, chosen_mask: &mut Vec<u64>) {
        let n = self.g.vertex_count();
        if chosen.len() + (n - from) <= self.best.len() {
            return;
        }
        if from == n {
            if chosen.len() > self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if self.can_add(chosen_mask, from) {
            chosen.push(from);
            chosen_mask[from / 64] |= 1u64 << (from % 64);
            self.dfs(from + 1, chosen, chosen_mask);
            chosen.pop();
            mask_clear(chosen_mask, from);
        }
        self.dfs(from + 1, chosen, chosen_mask);
    }
}

/// The largest S such that induced(g, S) has no K_r (kind = Clique) or
/// no I_r (kind = Independent). Branch-and-bound over vertex inclusion.
pub fn max_kr_free_subset(
    g: &Graph,
    r: usize,
    kind: SetKind,
    cfg: &SearchConfig,
) -> Result<Vec<usize>> {
    if r < 1 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    check_cap(g.vertex_count(), cfg.subset_cap, cfg.force)?;
    let h;
    let g = match kind {
        SetKind::Clique => g,
        SetKind::Independent => {
            h = g.complement();
            &h
        }
    };
    let words = g.row_words();
    let mut search = SubsetSearch { g, r, best: Vec::new() };

    // Greedy start: a decent initial bound usually prunes most of the tree.
    let mut greedy = Vec::new();
    let mut greedy_mask = vec![0u64; words];
    for v in 0..g.vertex_count() {
        if search.can_add(&greedy_mask, v) {
            greedy.push(v);
            greedy_mask[v / 64] |= 1u64 << (v % 64);
        }
    }
    search.best = greedy;

    let mut chosen = Vec::new();
    let mut chosen_mask = vec![0u64; words];
    search.dfs(0, &mut chosen, &mut chosen_mask);
    Ok(search.best)
}

/// How m_G(r) was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportMode {
    Exact,
    Sampled,
}

/// A bad set: vertices of an explicit graph, or tuples of a power.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Vertices(Vec<usize>),
    Tuples(Vec<Vec<usize>>),
}

impl Witness {
    pub fn len(&self) -> usize {
        match self {
            Witness::Vertices(v) => v.len(),
            Witness::Tuples(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Exact or sampled information about m_G(r).
///
/// In exact mode `value` is m_G(r): the least m such that every m-subset
/// holds both a K_r and an I_r. `sentinel` marks value = n + 1, meaning no
/// m up to n works. `witness` is a largest bad set (size value - 1 in
/// exact mode) and `witness_kind` names the structure it lacks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RamseyReport {
    pub r: usize,
    pub mode: ReportMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub sentinel: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frequency: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(rename = "kind", skip_serializing_if = "Option::is_none")]
    pub witness_kind: Option<SetKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timeouts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub elapsed_ms: u128,
}

/// Exact m_G(r) with a witness bad set.
pub fn exact_m(g: &Graph, r: usize, cfg: &SearchConfig) -> Result<RamseyReport> {
    if r < 1 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let start = Instant::now();
    let n = g.vertex_count();
    let clique_free = max_kr_free_subset(g, r, SetKind::Clique, cfg)?;
    let indep_free = max_kr_free_subset(g, r, SetKind::Independent, cfg)?;
    let (bad, kind) = if clique_free.len() >= indep_free.len() {
        (clique_free, SetKind::Clique)
    } else {
        (indep_free, SetKind::Independent)
    };
    let value = bad.len() + 1;
    Ok(RamseyReport {
        r,
        mode: ReportMode::Exact,
        value: Some(value),
        sentinel: value > n,
        frequency: None,
        witness: Some(Witness::Vertices(bad)),
        witness_kind: Some(kind),
        trials: None,
        timeouts: None,
        seed: None,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Options for Monte-Carlo sampling.
#[derive(Clone, Copy, Debug)]
pub struct SampleOptions {
    /// Worker threads; 0 means use available parallelism.
    pub threads: usize,
    /// Branch-and-bound node budget per trial before the trial is
    /// declared timed out.
    pub node_budget: u64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            threads: 0,
            node_budget: 10_000_000,
        }
    }
}

/// `m` distinct tuples of the view, drawn uniformly, keyed by `seed`.
pub fn sample_tuples(view: &LexPowerView, m: usize, seed: u64) -> Result<Vec<VertexTuple>> {
    let total = view.logical_vertex_count().ok_or(Error::CapExceeded {
        needed: u128::MAX,
        cap: u128::MAX,
    })?;
    if (m as u128) > total {
        return Err(Error::InvalidArgument(format!(
            "cannot sample {m} distinct tuples from {total} logical vertices"
        )));
    }
    let mut rng = CounterRng::new(seed);
    let mut picked: Vec<u128> = Vec::with_capacity(m);
    if (m as u128) * 2 <= total {
        let mut seen = std::collections::HashSet::with_capacity(m);
        while picked.len() < m {
            let idx = rng.next_below_u128(total);
            if seen.insert(idx) {
                picked.push(idx);
            }
        }
    } else {
        // dense regime: partial Fisher-Yates over the whole index range
        let mut all: Vec<u128> = (0..total).collect();
        for i in 0..m {
            let j = i + rng.next_below_usize(all.len() - i);
            all.swap(i, j);
        }
        picked.extend_from_slice(&all[..m]);
    }
    picked.iter().map(|&i| view.tuple_at(i)).collect()
}

struct TrialOutcome {
    failures: usize,
    timeouts: usize,
    // (trial index, sampled tuples, missing structure)
    first_bad: Option<(usize, Vec<VertexTuple>, SetKind)>,
}

fn run_trial(
    view: &LexPowerView,
    m: usize,
    r: usize,
    seed: Seed,
    trial: usize,
    budget: u64,
) -> Result<(bool, bool, Option<SetKind>, Vec<VertexTuple>)> {
    let tuples = sample_tuples(view, m, sub_seed(seed.0, trial as u64))?;
    let sub = view.materialize_subset(&tuples)?;
    let comp = sub.complement();
    let words = sub.row_words();
    let all = full_mask(sub.vertex_count(), words);

    let mut ctx = ExistCtx::budgeted(budget);
    let has_clique = find_clique_within(&sub, &all, r, &mut ctx).is_some();
    if ctx.aborted {
        return Ok((false, true, None, tuples));
    }
    if !has_clique {
        return Ok((true, false, Some(SetKind::Clique), tuples));
    }
    let mut ctx = ExistCtx::budgeted(budget);
    let has_indep = find_clique_within(&comp, &all, r, &mut ctx).is_some();
    if ctx.aborted {
        return Ok((false, true, None, tuples));
    }
    if !has_indep {
        return Ok((true, false, Some(SetKind::Independent), tuples));
    }
    Ok((false, false, None, tuples))
}

/// Samples `trials` uniform m-subsets of the view and checks each for a
/// K_r and an I_r with early exit. Reports the failure frequency and the
/// first bad set found; a bad set certifies m_G(r) > m for the power.
///
/// Trials are keyed by index, so results do not depend on the number of
/// worker threads.
pub fn sample_m(
    view: &LexPowerView,
    m: usize,
    r: usize,
    trials: usize,
    seed: Seed,
    opts: &SampleOptions,
) -> Result<RamseyReport> {
    if r < 1 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    if m < 1 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let start = Instant::now();
    let threads = if opts.threads == 0 {
        std::thread::available_parallelism().map_or(1, |p| p.get())
    } else {
        opts.threads
    }
    .min(trials.max(1));

    let run_range = |indices: Vec<usize>| -> Result<TrialOutcome> {
        let mut out = TrialOutcome {
            failures: 0,
            timeouts: 0,
            first_bad: None,
        };
        for trial in indices {
            let (failed, timed_out, kind, tuples) =
                run_trial(view, m, r, seed, trial, opts.node_budget)?;
            if timed_out {
                out.timeouts += 1;
            } else if failed {
                out.failures += 1;
                if out.first_bad.as_ref().is_none_or(|(t, _, _)| trial < *t) {
                    out.first_bad = Some((trial, tuples, kind.expect("failure has a kind")));
                }
            }
        }
        Ok(out)
    };

    let merged = if threads <= 1 {
        run_range((0..trials).collect())?
    } else {
        let chunks: Vec<Vec<usize>> = (0..threads)
            .map(|t| (t..trials).step_by(threads).collect())
            .collect();
        let outcomes: Vec<Result<TrialOutcome>> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|c| scope.spawn(|| run_range(c)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sample worker panicked"))
                .collect()
        });
        let mut merged = TrialOutcome {
            failures: 0,
            timeouts: 0,
            first_bad: None,
        };
        for outcome in outcomes {
            let o = outcome?;
            merged.failures += o.failures;
            merged.timeouts += o.timeouts;
            if let Some((t, tuples, kind)) = o.first_bad {
                if merged.first_bad.as_ref().is_none_or(|(mt, _, _)| t < *mt) {
                    merged.first_bad = Some((t, tuples, kind));
                }
            }
        }
        merged
    };

    let (witness, kind) = match merged.first_bad {
        Some((_, tuples, kind)) => {
            let w = if view.exponent() == 1 {
                Witness::Vertices(tuples.iter().map(|t| t.coords()[0]).collect())
            } else {
                Witness::Tuples(tuples.iter().map(|t| t.coords().to_vec()).collect())
            };
            (Some(w), Some(kind))
        }
        None => (None, None),
    };

    Ok(RamseyReport {
        r,
        mode: ReportMode::Sampled,
        value: None,
        sentinel: false,
        frequency: Some(merged.failures as f64 / trials as f64),
        witness,
        witness_kind: kind,
        trials: Some(trials),
        timeouts: Some(merged.timeouts),
        seed: Some(seed.0),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

// ---------------------------------------------------------------------------
// independent cross-check enumerator
// ---------------------------------------------------------------------------

/// Plain combination enumeration, no bitsets, no bounds. Deliberately a
/// separate code path from the branch-and-bound solver so reports can be
/// re-validated by something simple.
pub fn naive_has_homogeneous(g: &Graph, k: usize, kind: SetKind) -> bool {
    fn rec(g: &Graph, kind: SetKind, chosen: &mut Vec<usize>, from: usize, k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        let n = g.vertex_count();
        let want = kind == SetKind::Clique;
        for v in from..n {
            if n - v < k - chosen.len() {
                return false;
            }
            if chosen.iter().all(|&u| g.has_edge(u, v) == want) {
                chosen.push(v);
                if rec(g, kind, chosen, v + 1, k) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if k == 0 {
        return true;
    }
    rec(g, kind, &mut Vec::new(), 0, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::gnp;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn clique_basics() {
        let k5 = Graph::complete(5);
        assert_eq!(max_clique(&k5, &cfg()).unwrap(), vec![0, 1, 2, 3, 4]);
        let c5 = Graph::cycle(5);
        assert_eq!(clique_number(&c5, &cfg()).unwrap(), 2);
        assert_eq!(independence_number(&c5, &cfg()).unwrap(), 2);
        assert_eq!(clique_number(&Graph::empty(0), &cfg()).unwrap(), 0);
        assert_eq!(clique_number(&Graph::empty(4), &cfg()).unwrap(), 1);
    }

    #[test]
    fn max_clique_is_lexicographically_smallest() {
        // triangle {1,2,3} and triangle {0,2,4}: both maximum; {0,2,4} is lex-smaller
        let g = Graph::from_edges(5, &[(1, 2), (2, 3), (1, 3), (0, 2), (2, 4), (0, 4)]).unwrap();
        assert_eq!(max_clique(&g, &cfg()).unwrap(), vec![0, 2, 4]);
    }

    #[test]
    fn clique_number_matches_naive_on_random_graphs() {
        for seed in 0..30 {
            let g = gnp(12, 0.5, Seed(seed));
            let omega = clique_number(&g, &cfg()).unwrap();
            assert!(naive_has_homogeneous(&g, omega, SetKind::Clique), "seed {seed}");
            assert!(
                !naive_has_homogeneous(&g, omega + 1, SetKind::Clique),
                "seed {seed}"
            );
            let found = max_clique(&g, &cfg()).unwrap();
            assert_eq!(found.len(), omega);
            assert!(g.is_homogeneous(&found, SetKind::Clique).unwrap());
        }
    }

    #[test]
    fn cap_is_enforced_unless_forced() {
        let g = Graph::empty(70);
        assert!(matches!(
            max_clique(&g, &cfg()),
            Err(Error::SearchCapExceeded { n: 70, cap: 64 })
        ));
        let forced = SearchConfig { force: true, ..cfg() };
        assert_eq!(max_clique(&g, &forced).unwrap().len(), 1);
    }

    #[test]
    fn kr_free_subset_examples() {
        // kind=clique, r=2: K_2-free = edgeless, i.e. a maximum independent set
        let c5 = Graph::cycle(5);
        let s = max_kr_free_subset(&c5, 2, SetKind::Clique, &cfg()).unwrap();
        assert_eq!(s.len(), 2);
        assert!(c5.is_homogeneous(&s, SetKind::Independent).unwrap());

        // C5 is triangle-free: r=3 keeps all 5 vertices
        let s = max_kr_free_subset(&c5, 3, SetKind::Clique, &cfg()).unwrap();
        assert_eq!(s, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn kr_free_subset_matches_brute_force() {
        let g = gnp(12, 0.5, Seed(7));
        let s = max_kr_free_subset(&g, 3, SetKind::Clique, &cfg()).unwrap();
        // brute force over all 2^12 subsets
        let n = g.vertex_count();
        let mut best = 0;
        for mask in 0u32..1 << n {
            let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let (sub, _) = g.induced(&verts).unwrap();
            if !naive_has_homogeneous(&sub, 3, SetKind::Clique) {
                best = best.max(verts.len());
            }
        }
        assert_eq!(s.len(), best);
        let (sub, _) = g.induced(&s).unwrap();
        assert!(!naive_has_homogeneous(&sub, 3, SetKind::Clique));
    }

    #[test]
    fn exact_m_r2_identity_and_sentinel() {
        let c5 = Graph::cycle(5);
        let rep = exact_m(&c5, 2, &cfg()).unwrap();
        assert_eq!(rep.value, Some(3));
        assert!(!rep.sentinel);
        let bad = match rep.witness.unwrap() {
            Witness::Vertices(v) => v,
            _ => panic!("vertex witness expected"),
        };
        assert_eq!(bad.len(), 2);

        // K3 with r=2: no subset contains I_2, sentinel n+1
        let k3 = Graph::complete(3);
        let rep = exact_m(&k3, 2, &cfg()).unwrap();
        assert_eq!(rep.value, Some(4));
        assert!(rep.sentinel);
        assert_eq!(rep.witness_kind, Some(SetKind::Independent));
    }

    #[test]
    fn exact_m_r1_is_one() {
        let g = gnp(8, 0.5, Seed(3));
        let rep = exact_m(&g, 1, &cfg()).unwrap();
        assert_eq!(rep.value, Some(1));
        assert!(!rep.sentinel);
    }

    #[test]
    fn exact_m_complement_duality_and_monotonicity() {
        for seed in 0..10 {
            let g = gnp(10, 0.5, Seed(seed));
            let co = g.complement();
            let mut prev = 0;
            for r in 2..=4 {
                let a = exact_m(&g, r, &cfg()).unwrap().value.unwrap();
                let b = exact_m(&co, r, &cfg()).unwrap().value.unwrap();
                assert_eq!(a, b, "seed {seed} r {r}");
                assert!(a >= prev, "seed {seed}: not monotone in r");
                prev = a;
            }
        }
    }

    #[test]
    fn sample_m_trivial_cases() {
        // r = 1: nothing can fail
        let g = gnp(32, 0.5, Seed(5));
        let view = LexPowerView::new(g, 1, 1_000_000).unwrap();
        let rep = sample_m(&view, 5, 1, 50, Seed(1), &SampleOptions::default()).unwrap();
        assert_eq!(rep.frequency, Some(0.0));

        // K_50 with r = 2, m = 5: every sample misses I_2
        let k50 = Graph::complete(50);
        let view = LexPowerView::new(k50, 1, 1_000_000).unwrap();
        let rep = sample_m(&view, 5, 2, 40, Seed(9), &SampleOptions::default()).unwrap();
        assert_eq!(rep.frequency, Some(1.0));
        assert_eq!(rep.witness_kind, Some(SetKind::Independent));
        match rep.witness.unwrap() {
            Witness::Vertices(v) => assert_eq!(v.len(), 5),
            _ => panic!("vertex witness expected"),
        }
    }

    #[test]
    fn sample_m_is_thread_count_invariant() {
        let g = gnp(64, 0.5, Seed(11));
        let view = LexPowerView::new(g, 2, 1_000_000).unwrap();
        let one = SampleOptions { threads: 1, ..Default::default() };
        let four = SampleOptions { threads: 4, ..Default::default() };
        let a = sample_m(&view, 20, 2, 37, Seed(3), &one).unwrap();
        let b = sample_m(&view, 20, 2, 37, Seed(3), &four).unwrap();
        assert_eq!(a.frequency, b.frequency);
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.witness_kind, b.witness_kind);
    }

    #[test]
    fn sample_tuples_distinct_and_deterministic() {
        let g = gnp(6, 0.5, Seed(0));
        let view = LexPowerView::new(g, 3, 1_000_000).unwrap();
        let a = sample_tuples(&view, 100, 42).unwrap();
        let b = sample_tuples(&view, 100, 42).unwrap();
        assert_eq!(a, b);
        let set: std::collections::HashSet<_> = a.iter().collect();
        assert_eq!(set.len(), 100);

        // dense regime: sample nearly everything
        let small = LexPowerView::new(Graph::cycle(4), 1, 1_000_000).unwrap();
        let s = sample_tuples(&small, 4, 1).unwrap();
        assert_eq!(s.len(), 4);
        let set: std::collections::HashSet<_> = s.iter().collect();
        assert_eq!(set.len(), 4);
    }

    #[test]
    fn normalize_r_ceils() {
        assert_eq!(normalize_r(2.0), 2);
        assert_eq!(normalize_r(2.1), 3);
        assert_eq!(normalize_r(0.5), 1);
        assert_eq!(normalize_r(-3.0), 1);
    }
}
