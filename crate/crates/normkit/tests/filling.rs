mod common;

use num_rational::BigRational;
use normkit::bounds::SlopeConstraint;
use normkit::filling::*;
use normkit::fixtures;
use normkit::normal::*;
use normkit::slopes::*;
use normkit::surface::{classify, reconstruct};
use normkit::tri::{one_tet_solid_torus, Triangulation};
use normkit::{Error, NormalVector};

fn slope(t: &Triangulation, b: usize, p: i64, q: i64) -> Slope {
    Slope::new(&t.components[b], p, q).unwrap()
}

#[test]
fn lst_meridian_disk_is_a_disk() {
    let one = one_tet_solid_torus();
    for (p, q) in [(2, -1), (1, -1), (3, -1), (5, -2), (7, 3), (1, -6)] {
        let l = build_lst(&one.components[0], &slope(&one, 0, p, q)).unwrap();
        let t = &l.triangulation;
        assert_eq!(l.meridian_weights, slope(&one, 0, p, q).weights());
        assert_eq!(t.tet_count(), l.flips.len() + 1);
        assert!(common::admissible(t, &l.meridian_disk.0));
        assert_eq!(common::euler(t, &l.meridian_disk.0), 1);
        assert_eq!(common::torus_arcs(t, 0, &l.meridian_disk.0), l.meridian.arcs);
        assert!(classify(&reconstruct(&l.meridian_disk, t).unwrap()).is_disk);
    }
}

#[test]
fn lst_rejects_non_torus() {
    let u = normkit::tri::unglued_tetrahedron();
    let one = one_tet_solid_torus();
    assert!(build_lst(&u.components[0], &slope(&one, 0, 2, -1)).is_err());
}

#[test]
fn filling_adds_a_solid_torus() {
    let t = fixtures::two_boundary();
    for (b, p, q) in [(0, 1, 0), (0, 2, -1), (1, 1, 1), (1, 3, 1)] {
        let alpha = slope(&t, b, p, q);
        let f = dehn_fill(&t, b, &alpha).unwrap();
        let ft = &f.triangulation;
        assert!(ft.is_valid() && ft.orientable);
        assert_eq!(ft.components.len(), 1);
        assert_eq!(ft.restrict_table(0..t.tet_count()), t.table());
        let rec = &f.fillings[0];
        assert_eq!(rec.tets, t.tet_count()..ft.tet_count());
        let solid = Triangulation::from_table(&ft.restrict_table(rec.tets.clone())).unwrap();
        assert_eq!(solid.components.len(), 1);
        assert!(common::admissible(&solid, &rec.disk));
        assert_eq!(common::euler(&solid, &rec.disk), 1);
        assert_eq!(f.boundary_in_filled(b), None);
        assert_eq!(f.boundary_in_filled(1 - b), Some(0));
        assert_eq!(f.boundary_in_base(0), Some(1 - b));
    }
}

#[test]
fn cap_off_and_restrict_round_trip() {
    let t = fixtures::two_boundary();
    let alpha = slope(&t, 0, 1, 0);
    let f = dehn_fill(&t, 0, &alpha).unwrap();
    let c = SlopeConstraint::new(&alpha);
    let sols = enumerate_fundamental_solutions(&t, Some(&c), &Budget::default()).unwrap();
    assert!(!sols.is_empty());
    for v in &sols.fundamentals {
        let capped = cap_off(v, &f).unwrap();
        assert!(common::admissible(&f.triangulation, &capped.0));
        let (back, caps) = restrict(&capped, &f).unwrap();
        assert_eq!(&back, v);
        let curves = reconstruct(v, &t).unwrap().boundary_curves[0].len() as u64;
        assert_eq!(caps, vec![curves]);
        assert_eq!(common::euler(&f.triangulation, &capped.0), common::euler(&t, &v.0) + curves as i64);
    }
}

#[test]
fn cap_off_rejects_other_slopes() {
    let t = fixtures::two_boundary();
    let f = dehn_fill(&t, 0, &slope(&t, 0, 1, 0)).unwrap();
    let other = SlopeConstraint::new(&slope(&t, 0, 0, 1));
    let sols = enumerate_fundamental_solutions(&t, Some(&other), &Budget::default()).unwrap();
    let v = sols
        .fundamentals
        .iter()
        .find(|v| reconstruct(v, &t).unwrap().boundary_curves[0].iter().any(|c| !c.trivial))
        .unwrap();
    assert_eq!(cap_off(v, &f), Err(Error::NotMeridional));
}

#[test]
fn capped_fundamentals_match_constrained_cone() {
    let t = fixtures::two_boundary();
    for (b, p, q) in [(0, 1, 0), (1, 1, -1)] {
        let alpha = slope(&t, b, p, q);
        let f = dehn_fill(&t, b, &alpha).unwrap();
        let capped = enumerate_capped_fundamentals(&f, &Budget::default()).unwrap();
        let c = SlopeConstraint::new(&alpha);
        let base = enumerate_fundamental_solutions(&t, Some(&c), &Budget::default()).unwrap();
        let mut from_capped: Vec<NormalVector> = capped.fundamentals.iter().map(|w| restrict(w, &f).unwrap().0).collect();
        let mut want = base.fundamentals.clone();
        from_capped.sort();
        want.sort();
        assert_eq!(from_capped, want, "B{b} {p}/{q}");
    }
}

#[test]
fn rewrite_reproduces_sums() {
    let t = fixtures::two_boundary();
    let alpha = slope(&t, 0, 1, 0);
    let f = dehn_fill(&t, 0, &alpha).unwrap();
    let capped = enumerate_capped_fundamentals(&f, &Budget::default()).unwrap();
    let c = SlopeConstraint::new(&alpha);
    let base = enumerate_fundamental_solutions(&t, Some(&c), &Budget::default()).unwrap().fundamentals;
    let mut done = 0;
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            let Ok(s) = haken_sum(a, b) else { continue };
            let dec = rewrite_decomposition(&s, &f, &capped.fundamentals, 200_000).unwrap();
            let total = dec.iter().fold(NormalVector::zero(t.tet_count()), |acc, (g, n)| acc.plus(&g.scaled(*n)));
            assert_eq!(total, s);
            done += 1;
        }
    }
    assert!(done > 10);
}

#[test]
fn then_fill_closes_both_boundaries() {
    let t = fixtures::two_boundary();
    let f = dehn_fill(&t, 0, &slope(&t, 0, 1, 0)).unwrap();
    let g = f.then_fill(1, &slope(&t, 1, 0, 1)).unwrap();
    assert!(g.triangulation.components.is_empty());
    assert_eq!(g.fillings.len(), 2);
    assert_eq!(g.fillings[1].boundary, 1);
    assert!(matches!(g.then_fill(1, &slope(&t, 1, 0, 1)), Err(Error::NoSuchBoundary(1))));
}

#[test]
fn drilling_adds_a_boundary_and_a_vertex() {
    let one = one_tet_solid_torus();
    for (p, q) in [(1, 0), (0, 1), (1, 1), (2, -1), (3, 1)] {
        let mu = slope(&one, 0, p, q);
        let d = dehn_drill(&one, 0, &mu).unwrap();
        let dt = &d.triangulation;
        assert_eq!(dt.components.len(), 2);
        assert_eq!(dt.vertices.len(), 2);
        assert_eq!(dt.tet_count(), 1 + d.layers + 9);
        assert_eq!(d.block, 1 + d.layers..dt.tet_count());
        assert_eq!(dt.restrict_table(0..1), one.table());
        assert_eq!(slope_distance(&d.mu, &d.longitude).unwrap(), 1);
        assert_eq!(slope_distance(&d.mu_star, &d.lambda_star).unwrap(), 1);
        assert_ne!(d.boundary, d.drilled);
    }
}

#[test]
fn drilling_rejects_wrong_boundary() {
    let t = fixtures::two_boundary();
    let s = slope(&t, 1, 1, 0);
    assert_eq!(dehn_drill(&t, 0, &s).unwrap_err(), Error::BoundaryMismatch);
    assert_eq!(dehn_fill(&t, 0, &s).unwrap_err(), Error::BoundaryMismatch);
}

#[test]
fn translate_slope_is_identity_on_same_triangulation() {
    let t = fixtures::two_boundary();
    for s in enumerate_short_slopes(&t.components[1], &BigRational::from_integer(8.into())).unwrap() {
        assert_eq!(translate_slope(&t, &t, &s, 1).unwrap(), s);
    }
}
