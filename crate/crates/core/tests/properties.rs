use std::collections::BTreeSet;
use std::sync::Arc;

use coble_core::blowup::Contraction;
use coble_core::classify::{is_k3_type, terminal_shape};
use coble_core::config::{CurveConfiguration, Edge, Node};
use coble_core::cremona::{quadratic_transform, MultiplicityVector};
use coble_core::negcurves::{enumerate_negative_classes, SearchMode};
use coble_core::{BaseKind, IntersectionLattice};
use proptest::prelude::*;

fn lattice(base: BaseKind, n: usize) -> Arc<IntersectionLattice> {
    IntersectionLattice::new(base, n)
}

fn base_kind() -> impl Strategy<Value = BaseKind> {
    prop_oneof![Just(BaseKind::P2), (0u32..6).prop_map(BaseKind::Hirzebruch)]
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..=20, len)
}

proptest! {
    #[test]
    fn pairing_is_symmetric_and_bilinear(
        base in base_kind(),
        n in 0usize..8,
        seed in prop::collection::vec(-20i64..=20, 30),
        k in -5i64..=5,
    ) {
        let lat = lattice(base, n);
        let r = lat.rank();
        let x = lat.class(seed[..r].to_vec()).unwrap();
        let y = lat.class(seed[r..2 * r].to_vec()).unwrap();
        let z = lat.class(seed[2 * r..3 * r].to_vec()).unwrap();
        prop_assert_eq!(x.dot(&y).unwrap(), y.dot(&x).unwrap());
        let lhs = x.try_scale(k).unwrap().try_add(&y).unwrap().dot(&z).unwrap();
        prop_assert_eq!(lhs, k * x.dot(&z).unwrap() + y.dot(&z).unwrap());
    }

    #[test]
    fn adjacency_parity_holds_for_every_class(base in base_kind(), n in 0usize..8, c in coeffs(10)) {
        let lat = lattice(base, n);
        let d = lat.class(c[..lat.rank()].to_vec()).unwrap();
        let s = d.self_intersection().unwrap() + d.dot(&lat.canonical()).unwrap();
        prop_assert_eq!(s.rem_euclid(2), 0);
        prop_assert!(d.arithmetic_genus().is_ok());
    }

    #[test]
    fn genus_matches_plane_curve_formula(d in 1i64..30, mults in prop::collection::vec(0i64..8, 0..12)) {
        let v = MultiplicityVector::new(d, mults.clone()).unwrap();
        let g = v.to_class().unwrap().arithmetic_genus().unwrap();
        let want = (d - 1) * (d - 2) / 2 - mults.iter().map(|m| m * (m - 1) / 2).sum::<i64>();
        prop_assert_eq!(g, want);
    }

    #[test]
    fn quadratic_transform_preserves_genus_and_canonical_degree(
        d in 3i64..20,
        mults in prop::collection::vec(0i64..8, 3..9),
    ) {
        let v = MultiplicityVector::new(d, mults).unwrap();
        if let Ok(w) = quadratic_transform(&v, 0, 1, 2) {
            prop_assert_eq!(w.genus_proxy().unwrap(), v.genus_proxy().unwrap());
            let kdeg = |u: &MultiplicityVector| 3 * u.degree() - u.mults().iter().sum::<i64>();
            prop_assert_eq!(kdeg(&w), kdeg(&v));
        }
    }

    #[test]
    fn reflection_fixes_canonical_class_for_simple_roots(n in 3usize..10, i in 1usize..10, j in 1usize..10, k in 1usize..10) {
        prop_assume!(i <= n && j <= n && k <= n && i != j && j != k && i != k);
        let lat = lattice(BaseKind::P2, n);
        let mut c = vec![0; n + 1];
        c[0] = 1;
        c[i] = -1;
        c[j] = -1;
        c[k] = -1;
        let r = lat.class(c).unwrap();
        let kc = lat.canonical();
        prop_assert_eq!(kc.reflect(&r).unwrap(), kc);
    }

    #[test]
    fn multiplicity_vector_text_round_trips(d in 0i64..40, mults in prop::collection::vec(0i64..10, 0..10)) {
        let v = MultiplicityVector::new(d, mults).unwrap();
        let back: MultiplicityVector = v.to_string().parse().unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn terminal_shape_implies_k3_type(
        selfs in prop::collection::vec(prop_oneof![Just(-4i64), -5i64..=0], 1..6),
        mults in prop::collection::vec(1i64..=2, 6),
        genera in prop::collection::vec(0i64..=1, 6),
        edges in prop::collection::vec((0usize..6, 0usize..6), 0..4),
    ) {
        let k = selfs.len();
        let nodes: Vec<Node> = selfs
            .iter()
            .enumerate()
            .map(|(i, s)| Node::new(&format!("C{i}"), *s).with_mult(mults[i]).with_genus(genera[i]))
            .collect();
        let mut seen = BTreeSet::new();
        let edges: Vec<Edge> = edges
            .into_iter()
            .filter(|(a, b)| a < b && *b < k && seen.insert((*a, *b)))
            .map(|(a, b)| Edge::new(&format!("C{a}"), &format!("C{b}")))
            .collect();
        let cfg = CurveConfiguration::new(nodes, edges, vec![]).unwrap();
        if terminal_shape(&cfg) {
            prop_assert!(is_k3_type(&cfg).k3_type);
        }
    }

    #[test]
    fn contracting_an_exceptional_class_raises_k_squared(n in 1usize..10, i in 1usize..10) {
        prop_assume!(i <= n);
        let lat = lattice(BaseKind::P2, n);
        let mut c = Contraction::new(&lat);
        c.contract(&lat.exceptional(i).unwrap()).unwrap();
        prop_assert_eq!(c.k_squared().unwrap(), 9 - n as i64 + 1);
    }
}

/// Brute force over the box 0 <= a_i <= d: d e0 - sum a_i e_i with d^2 - sum a_i^2 = -1 and 3d - sum a_i = 1.
fn brute_force_minus_one(n: usize, cap: i64) -> usize {
    fn rec(d: i64, rest: usize, sq: i64, lin: i64, bound: i64) -> usize {
        if rest == 0 {
            return usize::from(sq == -1 && lin == 1);
        }
        (0..=bound).map(|a| rec(d, rest - 1, sq - a * a, lin - a, bound)).sum()
    }
    // in degree 0 only the e_i themselves are effective shapes
    (0..=cap)
        .map(|d| if d == 0 { n } else { rec(d, n, d * d, 3 * d, d) })
        .sum()
}

#[test]
fn minus_one_class_counts_on_plane_blow_ups() {
    let expected = [1usize, 3, 6, 10, 16, 27, 56, 240];
    for (n, want) in (1..=8).zip(expected) {
        let lat = lattice(BaseKind::P2, n);
        let found = enumerate_negative_classes(&lat, 1, 6, SearchMode::EffectiveShape).unwrap();
        assert_eq!(found.len(), want, "{n} points");
        for c in &found {
            assert_eq!(c.self_intersection().unwrap(), -1);
            assert_eq!(c.dot(&lat.canonical()).unwrap(), -1);
        }
    }
}

#[test]
fn enumeration_agrees_with_brute_force_box() {
    for n in 1..=4 {
        let lat = lattice(BaseKind::P2, n);
        for cap in 0..=3 {
            let found = enumerate_negative_classes(&lat, 1, cap, SearchMode::EffectiveShape).unwrap();
            assert_eq!(found.len(), brute_force_minus_one(n, cap), "{n} points, cap {cap}");
        }
    }
}

#[test]
fn enumeration_is_closed_under_permuting_points() {
    for n in 2..=6 {
        let lat = lattice(BaseKind::P2, n);
        let found = enumerate_negative_classes(&lat, 2, 4, SearchMode::EffectiveShape).unwrap();
        let set: BTreeSet<Vec<i64>> = found.iter().map(|c| c.coeffs().to_vec()).collect();
        for c in &set {
            for i in 1..=n {
                for j in i + 1..=n {
                    let mut s = c.clone();
                    s.swap(i, j);
                    assert!(set.contains(&s), "{n} points: swap {i},{j} of {c:?} missing");
                }
            }
        }
    }
}
