mod common;

use normkit::fixtures;
use normkit::normal::{vertex_link, Budget};
use normkit::search::*;
use normkit::slopes::{CurveSlope, Slope};
use normkit::surface::reconstruct;
use normkit::tri::{one_tet_solid_torus, unglued_tetrahedron, Triangulation};

fn fixture(name: &str) -> Triangulation {
    fixtures::by_name(name).unwrap()
}

fn slope(t: &Triangulation, b: usize, p: i64, q: i64) -> Slope {
    Slope::new(&t.components[b], p, q).unwrap()
}

#[test]
fn vertex_link_is_not_essential() {
    let t = fixtures::knot_two_tet();
    let v = decide_essential(&vertex_link(&t, 0), &t, &DefaultOracle);
    assert_eq!(v.verdict, Verdict::NotEssential);
    assert!(!v.rules_fired.is_empty());
}

#[test]
fn meridian_disk_is_essential() {
    let t = one_tet_solid_torus();
    let r = find_essential_disk(&t, 0, &DefaultOracle, &SearchBudget::default()).unwrap();
    let Outcome::Found(c) = &r.outcome else { panic!("{:?}", r.outcome) };
    assert!(c.verify(&t).unwrap());
    assert_eq!(c.verdict.verdict, Verdict::Essential);
    assert_eq!(common::euler(&t, &c.vector.0), 1);
    let arcs = common::torus_arcs(&t, 0, &c.vector.0);
    assert_eq!(normkit::slopes::slope_from_curve(arcs, &t.components[0]).unwrap(), CurveSlope::Slope(slope(&t, 0, 2, -1)));
}

#[test]
fn certificates_fail_on_other_triangulations() {
    let t = one_tet_solid_torus();
    let r = find_essential_disk(&t, 0, &DefaultOracle, &SearchBudget::default()).unwrap();
    let Outcome::Found(c) = r.outcome else { panic!() };
    assert!(!c.verify(&fixtures::knot_two_tet()).unwrap());
}

#[test]
fn punctured_disk_on_solid_torus() {
    let t = one_tet_solid_torus();
    let b = SearchBudget::default();
    assert!(search_punctured_disk(&t, 0, &slope(&t, 0, 2, -1), &DefaultOracle, &b).unwrap().outcome.is_found());
    for (p, q) in [(1, 0), (0, 1), (1, 1), (3, 1), (1, 2)] {
        let r = search_punctured_disk(&t, 0, &slope(&t, 0, p, q), &DefaultOracle, &b).unwrap();
        assert_eq!(r.outcome, Outcome::NotFound, "{p}/{q}");
    }
}

#[test]
fn planar_surfaces_in_solid_tori() {
    for name in ["one-tet-solid-torus", "lst-3-1", "lst-5-2", "lst-8-3", "knot-2tet"] {
        let t = fixture(name);
        let r = search_planar(&t, &DefaultOracle, &SearchBudget::default()).unwrap();
        assert!(r.outcome.is_found(), "{name}: {:?}", r.outcome);
        assert_eq!(r.stages.len(), 1, "{name}");
        if let Outcome::Found(c) = &r.outcome {
            assert!(c.verify(&t).unwrap());
        }
    }
}

#[test]
fn zero_efficient_knot_needs_an_oracle() {
    let t = fixtures::knot_zero_efficient();
    let r = search_planar(&t, &DefaultOracle, &SearchBudget::default()).unwrap();
    assert!(matches!(&r.outcome, Outcome::Inconclusive(v) if v.contains(&InconclusiveReason::OracleUnknown)));
    let s = slope_set(&t, 0, &DefaultOracle, &SearchBudget::default()).unwrap();
    assert!(s.slopes.is_empty());
    assert!(s.complete);
}

#[test]
fn non_minimal_vertex_is_inconclusive() {
    let t = unglued_tetrahedron();
    let r = search_planar(&t, &DefaultOracle, &SearchBudget::default()).unwrap();
    assert_eq!(r.outcome, Outcome::Inconclusive(vec![InconclusiveReason::NotMinimalVertex]));
}

#[test]
fn slope_sets_of_solid_tori() {
    for (name, p, q) in [("one-tet-solid-torus", 2, -1), ("lst-5-2", 3, 2), ("lst-8-3", 5, 3), ("knot-2tet", 0, 1)] {
        let t = fixture(name);
        let s = slope_set(&t, 0, &DefaultOracle, &SearchBudget::default()).unwrap();
        assert_eq!(s.slopes, vec![slope(&t, 0, p, q)], "{name}");
        assert!(s.complete, "{name}");
    }
}

#[test]
fn tiny_budget_is_inconclusive_not_wrong() {
    let t = fixtures::knot_two_tet();
    let tiny = SearchBudget { cone: Budget { max_rays: 2, max_candidates: 2, max_pairs: 4 }, max_fillings: 0, max_slopes: 1 };
    let r = search_planar(&t, &DefaultOracle, &tiny).unwrap();
    assert!(matches!(&r.outcome, Outcome::Inconclusive(v) if v.iter().any(|x| matches!(x, InconclusiveReason::BudgetExceeded(_)))));
}

#[test]
fn annulus_search_without_second_boundary_is_vacuous() {
    let t = one_tet_solid_torus();
    let r = find_essential_annulus(&t, 0, 1, &DefaultOracle, &SearchBudget::default()).unwrap();
    assert_eq!(r.outcome, Outcome::NotFound);
}

#[test]
fn trusting_oracle_finds_the_product_annulus() {
    let t = fixtures::two_boundary();
    let oracle = oracle_by_id("trust-nontrivial").unwrap();
    let r = find_essential_annulus(&t, 0, 1, oracle.as_ref(), &SearchBudget::default()).unwrap();
    let Outcome::Found(c) = &r.outcome else { panic!("{:?}", r.outcome) };
    let sg = reconstruct(&c.vector, &t).unwrap();
    assert_eq!(sg.euler, 0);
    assert!(sg.boundary_curves[0].iter().any(|x| !x.trivial));
    assert!(sg.boundary_curves[1].iter().any(|x| !x.trivial));
    let default = find_essential_annulus(&t, 0, 1, &DefaultOracle, &SearchBudget::default()).unwrap();
    assert!(!default.outcome.is_conclusive());
}

#[test]
fn longitude_search_caps_the_certificate() {
    let t = one_tet_solid_torus();
    let oracle = oracle_by_id("trust-nontrivial").unwrap();
    let r = search_longitude(&t, 0, &slope(&t, 0, 1, 0), oracle.as_ref(), &SearchBudget::default()).unwrap();
    assert!(r.outcome.is_found(), "{:?}", r.outcome);
}

#[test]
fn oracle_ids() {
    assert_eq!(oracle_by_id("default").unwrap().id(), "default");
    assert!(oracle_by_id("nope").is_none());
}

#[test]
fn reports_serialize() {
    let t = one_tet_solid_torus();
    let r = search_planar(&t, &DefaultOracle, &SearchBudget::default()).unwrap();
    let j = serde_json::to_value(&r).unwrap();
    assert!(j.get("outcome").is_some());
    assert_eq!(r.outcome.label(), "Found");
}
