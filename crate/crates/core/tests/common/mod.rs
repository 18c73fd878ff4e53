//! Brute-force oracles for the integration suites.
//!
//! Everything here is deliberately naive — plain combination and subset
//! enumeration with pairwise adjacency tests — so it shares no code path
//! with the branch-and-bound solvers it cross-checks.
#![allow(dead_code)] // each test binary uses its own slice of the oracles

use ramsey_local::graph::{Graph, SetKind};

/// Visits k-combinations of [0, n) until `pred` accepts one.
pub fn any_k_subset(n: usize, k: usize, mut pred: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    if k == 0 {
        return pred(&[]);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if pred(&idx) {
            return true;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Does the induced subgraph on `verts` contain a homogeneous set of
/// size k? Exhaustive.
pub fn oracle_has_homog(g: &Graph, verts: &[usize], k: usize, kind: SetKind) -> bool {
    let want = kind == SetKind::Clique;
    any_k_subset(verts.len(), k, |idx| {
        idx.iter().enumerate().all(|(a, &i)| {
            idx[..a]
                .iter()
                .all(|&j| g.has_edge(verts[i], verts[j]) == want)
        })
    })
}

/// m_G(r) by enumerating all 2^n subsets. Returns n + 1 when no subset
/// size works (the sentinel value).
pub fn brute_force_m(g: &Graph, r: usize) -> usize {
    let n = g.vertex_count();
    assert!(n <= 16, "subset enumeration oracle is for tiny graphs");
    let mut max_bad = 0;
    for mask in 0u32..1 << n {
        let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let both = oracle_has_homog(g, &verts, r, SetKind::Clique)
            && oracle_has_homog(g, &verts, r, SetKind::Independent);
        if !both {
            max_bad = max_bad.max(verts.len());
        }
    }
    max_bad + 1
}

/// Clique number by descending exhaustive search.
pub fn brute_omega(g: &Graph) -> usize {
    let n = g.vertex_count();
    let all: Vec<usize> = (0..n).collect();
    (0..=n)
        .rev()
        .find(|&k| oracle_has_homog(g, &all, k, SetKind::Clique))
        .unwrap_or(0)
}

/// Independence number by descending exhaustive search.
pub fn brute_alpha(g: &Graph) -> usize {
    let n = g.vertex_count();
    let all: Vec<usize> = (0..n).collect();
    (0..=n)
        .rev()
        .find(|&k| oracle_has_homog(g, &all, k, SetKind::Independent))
        .unwrap_or(0)
}
