mod common;

use proptest::prelude::*;
use ups_core::chirotope::{AbstractOrderType, PointSet};
use ups_core::data;
use ups_core::embedding::{
    decide_embeddable, encode_embedding, verify_witness, EmbeddingWitness, Verdict,
};
use ups_core::enumeration::enumerate;
use ups_core::graphs::{for_each_labeled_stacking, Graph};
use ups_core::sat::Budget;

fn order_types(n: usize) -> Vec<AbstractOrderType> {
    enumerate(n).unwrap().iter().map(|m| m.to_order_type().unwrap()).collect()
}

fn ot_of(points: &[(i32, i32)]) -> AbstractOrderType {
    AbstractOrderType::from_points(&PointSet::new(points.to_vec()).unwrap()).unwrap()
}

use common::{brute_force_embeddable as brute_force, plane_under};

#[test]
fn five_cycle_on_every_five_point_order_type() {
    let ots = order_types(5);
    assert_eq!(ots.len(), 3);
    for ot in &ots {
        assert!(decide_embeddable(&Graph::cycle(5), ot, Budget::unlimited()).unwrap().is_embeddable());
    }
}

#[test]
fn agrees_with_brute_force_up_to_five_points() {
    for np in 4..=5 {
        for ot in order_types(np) {
            for nv in 3..=np {
                let all: Vec<(usize, usize)> =
                    (0..nv).flat_map(|i| (i + 1..nv).map(move |j| (i, j))).collect();
                for mask in 0u32..1 << all.len() {
                    let g = Graph::new(nv, all.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e)).unwrap();
                    let v = decide_embeddable(&g, &ot, Budget::unlimited()).unwrap();
                    assert_eq!(v.is_embeddable(), brute_force(&g, &ot));
                    if let Verdict::Embeddable(w) = v {
                        assert!(plane_under(&g, &ot, &w.assignment));
                    }
                }
            }
        }
    }
}

/// For any fixed placement at most one labeled stacked triangulation is
/// drawn without crossings.
#[test]
fn one_stacking_per_placement_on_five_points() {
    let mut stackings = Vec::new();
    for_each_labeled_stacking(5, |s| stackings.push(s.graph()));
    assert_eq!(stackings.len(), 4);
    let perms = permutations(5);
    for ot in order_types(5) {
        for pi in &perms {
            let w = EmbeddingWitness { assignment: pi.clone() };
            let plane = stackings.iter().filter(|g| verify_witness(g, &ot, &w).is_ok()).count();
            assert!(plane <= 1);
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn segments_cross_geometric(a: (i32, i32), b: (i32, i32), c: (i32, i32), d: (i32, i32)) -> bool {
    let o = |p: (i32, i32), q: (i32, i32), r: (i32, i32)| {
        let v = (q.0 as i64 - p.0 as i64) * (r.1 as i64 - p.1 as i64)
            - (q.1 as i64 - p.1 as i64) * (r.0 as i64 - p.0 as i64);
        v.signum()
    };
    o(a, b, c) * o(a, b, d) < 0 && o(c, d, a) * o(c, d, b) < 0
}

#[test]
fn listing1_witness_is_plane_in_coordinates() {
    let pts = data::listing1();
    let ot = data::listing1_order_type();
    let g = &data::conflict_g()[0];
    let Verdict::Embeddable(w) = decide_embeddable(g, &ot, Budget::unlimited()).unwrap() else {
        panic!("G_1 must embed");
    };
    let xy = |v: usize| pts.points()[w.assignment[v]];
    let e = g.edges();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let (a, b) = e[i];
            let (c, d) = e[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            assert!(!segments_cross_geometric(xy(a), xy(b), xy(c), xy(d)));
        }
    }
}

#[test]
fn external_solver_on_k4() {
    let convex = ot_of(&[(0, 0), (4, 0), (4, 4), (0, 4)]);
    let triangle = ot_of(&[(0, 0), (6, 0), (0, 6), (1, 1)]);
    let k4 = Graph::complete(4);
    let Some(unsat) = common::external_sat(&encode_embedding(&k4, &convex).unwrap().to_dimacs())
    else {
        eprintln!("python3 with scipy not available, skipping");
        return;
    };
    assert!(!unsat);
    assert_eq!(
        common::external_sat(&encode_embedding(&k4, &triangle).unwrap().to_dimacs()),
        Some(true)
    );
}

fn instance() -> impl Strategy<Value = (Vec<(i32, i32)>, Vec<bool>, usize)> {
    (4usize..=7).prop_flat_map(|n| {
        (
            proptest::collection::vec((0i32..40, 0i32..40), n),
            proptest::collection::vec(proptest::bool::weighted(0.45), n * (n - 1) / 2),
            2..=n,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn sound_and_mirror_invariant((pts, mask, nv) in instance()) {
        let ps = PointSet::new_unchecked(pts);
        prop_assume!(ps.check_general_position().is_ok());
        let ot = AbstractOrderType::from_points(&ps).unwrap();
        let all: Vec<(usize, usize)> =
            (0..nv).flat_map(|i| (i + 1..nv).map(move |j| (i, j))).collect();
        let g = Graph::new(nv, all.iter().zip(&mask).filter(|(_, &m)| m).map(|(&e, _)| e)).unwrap();
        let v = decide_embeddable(&g, &ot, Budget::unlimited()).unwrap();
        let m = decide_embeddable(&g, &ot.reflect(), Budget::unlimited()).unwrap();
        prop_assert_eq!(v.is_embeddable(), m.is_embeddable());
        prop_assert_eq!(v.is_embeddable(), brute_force(&g, &ot));
        if let Verdict::Embeddable(w) = v {
            prop_assert!(verify_witness(&g, &ot, &w).is_ok());
            let xy = |k: usize| ps.points()[w.assignment[k]];
            for (i, &(a, b)) in g.edges().iter().enumerate() {
                for &(c, d) in &g.edges()[i + 1..] {
                    if a != c && a != d && b != c && b != d {
                        prop_assert!(!segments_cross_geometric(xy(a), xy(b), xy(c), xy(d)));
                    }
                }
            }
        }
    }
}
