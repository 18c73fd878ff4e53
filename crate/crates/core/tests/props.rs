//! Property tests for the structural invariants.

mod common;

use proptest::prelude::*;

use common::{brute_alpha, brute_omega};
use ramsey_local::construct::{gnp, scramble, Seed};
use ramsey_local::graph::{Graph, SetKind};
use ramsey_local::io::{from_edge_list, from_graph6, to_edge_list, to_graph6};
use ramsey_local::rng::CounterRng;
use ramsey_local::search::exact_m;
use ramsey_local::view::LexPowerView;
use ramsey_local::witness::{bucket_select, Ladder, LadderEntry};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n, any::<u64>(), 0.0..=1.0f64).prop_map(|(n, seed, p)| gnp(n, p, Seed(seed)))
}

fn assert_simple(g: &Graph) {
    for u in 0..g.vertex_count() {
        assert!(!g.has_edge(u, u), "loop at {u}");
        for v in 0..g.vertex_count() {
            assert_eq!(g.has_edge(u, v), g.has_edge(v, u), "asymmetry at ({u}, {v})");
        }
    }
}

proptest! {
    #[test]
    fn constructed_graphs_are_simple(g in arb_graph(24), seed in any::<u64>(), p in 0.0..=1.0f64) {
        assert_simple(&g);
        assert_simple(&scramble(&g, p, Seed(seed)));
        let h = gnp(5, 0.5, Seed(seed));
        assert_simple(&g.lex_product(&h, 200).unwrap());
    }

    #[test]
    fn complement_involution_and_alpha_omega(g in arb_graph(12)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        prop_assert_eq!(brute_alpha(&g), brute_omega(&g.complement()));
    }

    #[test]
    fn graph6_roundtrip(g in arb_graph(80)) {
        let enc = to_graph6(&g).unwrap();
        prop_assert_eq!(from_graph6(&enc).unwrap(), g);
    }

    #[test]
    fn edge_list_roundtrip(g in arb_graph(40)) {
        let enc = to_edge_list(&g);
        prop_assert_eq!(from_edge_list(&enc).unwrap(), g);
    }

    #[test]
    fn view_agrees_with_explicit_power(
        n in 1..=6usize,
        ell in 1..=3u32,
        seed in any::<u64>(),
    ) {
        let total = (n as u64).pow(ell);
        prop_assume!(total <= 625);
        let base = gnp(n, 0.5, Seed(seed));
        let view = LexPowerView::new(base.clone(), ell, 1_000_000).unwrap();

        // explicit route: iterated pairwise products
        let mut explicit = base.clone();
        for _ in 1..ell {
            explicit = explicit.lex_product(&base, 1_000_000).unwrap();
        }
        for a in 0..total as u128 {
            for b in (a + 1)..total as u128 {
                let ta = view.tuple_at(a).unwrap();
                let tb = view.tuple_at(b).unwrap();
                prop_assert_eq!(
                    view.lex_adjacent(&ta, &tb).unwrap(),
                    explicit.has_edge(a as usize, b as usize)
                );
            }
        }
    }

    #[test]
    fn exact_m_monotone_and_self_dual(g in arb_graph(9)) {
        let cfg = ramsey_local::SearchConfig::default();
        let co = g.complement();
        let mut prev = 0;
        for r in 1..=4usize {
            let v = exact_m(&g, r, &cfg).unwrap().value.unwrap();
            let w = exact_m(&co, r, &cfg).unwrap().value.unwrap();
            prop_assert_eq!(v, w);
            prop_assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn bucket_selection_total_on_valid_ladders(instance_seed in any::<u64>()) {
        let mut rng = CounterRng::new(instance_seed);
        let vertices = 1 + rng.next_below_usize(16);
        let mut counts: Vec<usize> = (0..vertices).map(|_| rng.next_below_usize(20)).collect();
        if counts.iter().all(|&c| c == 0) {
            counts[0] = 1;
        }
        let m: usize = counts.iter().sum();
        let mut entries = Vec::new();
        let mut r = 2 + rng.next_below_usize(2);
        for _ in 0..=rng.next_below_usize(3) {
            entries.push(LadderEntry { r, m: 1.0 + rng.next_below_usize(30) as f64 });
            r += 1 + rng.next_below_usize(2);
        }
        let ladder = Ladder::new(entries, (vertices.min(m) + 1) as f64).unwrap();
        let bucket = bucket_select(&counts, m, &ladder).unwrap();
        // postcondition: the chosen vertices really clear the threshold
        for &v in &bucket.vertices {
            prop_assert!(counts[v] as f64 >= bucket.threshold);
        }
    }
}

#[test]
fn explicit_power_agreement_at_the_4096_boundary() {
    // 8^4 = 4096 logical vertices: the largest scale the invariant pins
    let base = gnp(8, 0.5, Seed(99));
    let view = LexPowerView::new(base.clone(), 4, 1_000_000).unwrap();
    let mut explicit = base.clone();
    for _ in 1..4 {
        explicit = explicit.lex_product(&base, 1_000_000).unwrap();
    }
    let direct = view.materialize().unwrap();
    assert_eq!(direct, explicit);

    let mut rng = CounterRng::new(3);
    for _ in 0..20_000 {
        let a = rng.next_below_usize(4096);
        let b = rng.next_below_usize(4096);
        if a == b {
            continue;
        }
        let ta = view.tuple_at(a as u128).unwrap();
        let tb = view.tuple_at(b as u128).unwrap();
        assert_eq!(
            view.lex_adjacent(&ta, &tb).unwrap(),
            explicit.has_edge(a, b),
            "pair ({a}, {b})"
        );
    }
}

#[test]
fn homogeneous_checks_match_between_graph_and_view() {
    let g = gnp(10, 0.5, Seed(21));
    let view = LexPowerView::new(g.clone(), 1, 1_000_000).unwrap();
    let mut rng = CounterRng::new(7);
    for _ in 0..200 {
        let size = 2 + rng.next_below_usize(4);
        let mut verts = Vec::new();
        while verts.len() < size {
            let v = rng.next_below_usize(10);
            if !verts.contains(&v) {
                verts.push(v);
            }
        }
        let tuples: Vec<_> = verts
            .iter()
            .map(|&v| ramsey_local::VertexTuple(vec![v]))
            .collect();
        for kind in [SetKind::Clique, SetKind::Independent] {
            assert_eq!(
                g.is_homogeneous(&verts, kind).unwrap(),
                view.is_homogeneous(&tuples, kind).unwrap()
            );
        }
    }
}
