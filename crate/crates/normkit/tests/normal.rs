mod common;

use std::collections::HashSet;

use normkit::fixtures;
use normkit::normal::*;
use normkit::surface::reconstruct;
use normkit::tri::{one_tet_solid_torus, unglued_tetrahedron, Triangulation};
use normkit::{Error, NormalVector};
use proptest::prelude::*;

fn small_fixtures() -> Vec<(&'static str, Triangulation)> {
    fixtures::all().into_iter().filter(|(_, t)| t.tet_count() <= 2).collect()
}

fn fundamentals(t: &Triangulation) -> Vec<NormalVector> {
    enumerate_fundamental_solutions(t, None, &Budget::default()).unwrap().fundamentals
}

#[test]
fn matching_system_agrees_with_gluings() {
    for (name, t) in fixtures::all() {
        let sys = matching_system(&t);
        assert_eq!(sys.rows.len(), common::matching_pairs(&t).len(), "{name}");
        for v in fundamentals(&t).iter().take(40) {
            assert!(common::admissible(&t, &v.0), "{name}: {:?}", v.0);
        }
    }
}

#[test]
fn unglued_tetrahedron_has_seven_fundamentals() {
    let t = unglued_tetrahedron();
    let b = enumerate_fundamental_solutions(&t, None, &Budget::default()).unwrap();
    assert_eq!(b.len(), 7);
    assert!(b.vertex_flags.iter().all(|&f| f));
    let mut unit: Vec<NormalVector> = (0..7).map(|i| {
        let mut v = NormalVector::zero(1);
        v.0[i] = 1;
        v
    }).collect();
    unit.sort();
    let mut got = b.fundamentals.clone();
    got.sort();
    assert_eq!(got, unit);
}

#[test]
fn lattice_scan_matches_fundamentals() {
    for (name, t) in small_fixtures() {
        let scan = common::lattice_scan(&t, 4);
        let irr: HashSet<Vec<u64>> = common::irreducibles(&scan).into_iter().collect();
        let fund = fundamentals(&t);
        let small: HashSet<Vec<u64>> = fund.iter().filter(|f| f.0.iter().all(|&x| x <= 4)).map(|f| f.0.clone()).collect();
        assert_eq!(irr, small, "{name}");
        let basis: Vec<Vec<u64>> = fund.iter().map(|f| f.0.clone()).collect();
        let mut memo = HashSet::new();
        for v in &scan {
            assert!(common::decomposes(v, &basis, &mut memo), "{name}: {v:?}");
        }
    }
}

#[test]
fn vertex_solutions_are_fundamental() {
    for (name, t) in fixtures::all() {
        let verts = enumerate_vertex_solutions(&t, None).unwrap();
        let fund = enumerate_fundamental_solutions(&t, None, &Budget::default()).unwrap();
        let fset: HashSet<&NormalVector> = fund.fundamentals.iter().collect();
        for v in &verts.fundamentals {
            assert!(fset.contains(v), "{name}: {:?}", v.0);
        }
        assert_eq!(fund.vertices().len(), verts.len(), "{name}");
    }
}

#[test]
fn vertex_links_are_admissible() {
    for (name, t) in fixtures::all() {
        for c in 0..t.vertices.len() {
            let v = vertex_link(&t, c);
            assert!(common::admissible(&t, &v.0), "{name}");
            assert!(is_admissible(&v, &t).unwrap());
        }
    }
}

#[test]
fn geometry_counts_match_oracle() {
    for (name, t) in fixtures::all() {
        for v in fundamentals(&t).iter().take(60) {
            let sg = reconstruct(v, &t).unwrap();
            assert_eq!(sg.euler, common::euler(&t, &v.0), "{name}: {:?}", v.0);
            assert_eq!(sg.weight, common::weight(&t, &v.0), "{name}");
            assert_eq!(sg.boundary_length, common::boundary_length(&t, &v.0), "{name}");
        }
    }
}

#[test]
fn haken_sum_rejects_quad_conflicts() {
    let mut a = NormalVector::zero(1);
    a.0[4] = 1;
    let mut b = NormalVector::zero(1);
    b.0[5] = 1;
    assert_eq!(haken_sum(&a, &b), Err(Error::QuadIncompatible(0)));
    assert_eq!(haken_sum(&a, &a).unwrap().0[4], 2);
    assert!(matches!(haken_sum(&a, &NormalVector::zero(2)), Err(Error::LengthMismatch { .. })));
}

#[test]
fn admissibility_checks_length() {
    let t = one_tet_solid_torus();
    assert!(matches!(is_admissible(&NormalVector::zero(2), &t), Err(Error::LengthMismatch { .. })));
}

#[test]
fn constrained_enumeration_respects_budget() {
    let t = fixtures::two_boundary();
    let tight = Budget { max_rays: 3, max_candidates: 10, max_pairs: 100 };
    assert!(enumerate_fundamental_solutions(&t, None, &tight).is_err());
    assert!(matches!(enumerate_vertex_solutions_with(&t, None, &tight), Err(Error::ResourceBudgetExceeded(_))));
}

#[test]
fn decompose_over_fundamentals() {
    let t = fixtures::knot_two_tet();
    let fund = fundamentals(&t);
    for a in &fund {
        for b in &fund {
            if let Ok(s) = haken_sum(a, b) {
                let d = decompose_over(&s, &fund, 100_000).unwrap().expect("sum decomposes");
                let total = d.iter().fold(NormalVector::zero(t.tet_count()), |acc, (g, n)| acc.plus(&g.scaled(*n)));
                assert_eq!(total, s);
            }
        }
    }
}

#[test]
fn edge_weights_round_trip() {
    let t = fixtures::knot_two_tet();
    for v in fundamentals(&t) {
        for a in 0..t.tet_count() {
            let w = edge_weights(&v, a);
            let pieces = pieces_from_edge_weights(w).unwrap();
            assert_eq!(&pieces[..], &v.0[7 * a..7 * a + 7]);
        }
    }
}

proptest! {
    #[test]
    fn sums_of_fundamentals_are_additive(i in 0usize..64, j in 0usize..64, k in 1u64..4) {
        let t = fixtures::knot_two_tet();
        let fund = fundamentals(&t);
        let (a, b) = (&fund[i % fund.len()], &fund[j % fund.len()]);
        if let Ok(s) = haken_sum(a, &b.scaled(k)) {
            let (ga, gb, gs) = (reconstruct(a, &t).unwrap(), reconstruct(b, &t).unwrap(), reconstruct(&s, &t).unwrap());
            prop_assert_eq!(gs.euler, ga.euler + k as i64 * gb.euler);
            prop_assert_eq!(gs.weight, ga.weight + k * gb.weight);
            prop_assert_eq!(gs.boundary_length, ga.boundary_length + k * gb.boundary_length);
            prop_assert!(common::admissible(&t, &s.0));
        }
    }

    #[test]
    fn random_vectors_admissible_iff_oracle(v in proptest::collection::vec(0u64..3, 14)) {
        let t = fixtures::knot_two_tet();
        let v = NormalVector(v);
        prop_assert_eq!(is_admissible(&v, &t).unwrap(), common::admissible(&t, &v.0));
    }
}
