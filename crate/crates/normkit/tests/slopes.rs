mod common;

use std::collections::BTreeSet;

use num_rational::BigRational;
use normkit::fixtures;
use normkit::slopes::*;
use normkit::tri::{one_tet_solid_torus, Triangulation};
use normkit::Error;
use proptest::prelude::*;

fn tori() -> Vec<(String, Triangulation, usize)> {
    let mut out = Vec::new();
    for (name, t) in fixtures::all() {
        for c in &t.components {
            if c.one_vertex_torus {
                out.push((name.to_string(), t.clone(), c.id));
            }
        }
    }
    out
}

/// Edge weights by intersecting with the three edge classes directly.
fn brute_weights(a: i64, b: i64, p: i64, q: i64) -> [u64; 3] {
    let det = |x: (i64, i64), y: (i64, i64)| (x.0 * y.1 - x.1 * y.0).unsigned_abs();
    [det((p, q), (1, 0)), det((p, q), (0, 1)), det((p, q), (a, b))]
}

#[test]
fn short_slopes_match_brute_force() {
    for (name, t, b) in tori() {
        let comp = &t.components[b];
        let f = comp.torus.as_ref().unwrap();
        for bound in [2i64, 5, 9, 14] {
            let got: BTreeSet<(i64, i64)> = enumerate_short_slopes(comp, &BigRational::from_integer(bound.into()))
                .unwrap()
                .iter()
                .map(|s| (s.p, s.q))
                .collect();
            let mut want = BTreeSet::new();
            for p in -20i64..=20 {
                for q in -20i64..=20 {
                    if common::gcd(p, q) != 1 {
                        continue;
                    }
                    if brute_weights(f.a, f.b, p, q).iter().sum::<u64>() <= bound as u64 {
                        want.insert(common::canonical(p, q));
                    }
                }
            }
            assert_eq!(got, want, "{name} B{b} bound {bound}");
        }
    }
}

#[test]
fn short_slopes_sorted_by_length() {
    let t = fixtures::two_boundary();
    let s = enumerate_short_slopes(&t.components[1], &BigRational::from_integer(12.into())).unwrap();
    assert!(s.windows(2).all(|w| w[0].length() <= w[1].length()));
    assert!(enumerate_short_slopes(&t.components[0], &BigRational::from_integer((-1).into())).unwrap().is_empty());
}

#[test]
fn curves_round_trip() {
    for (name, t, b) in tori() {
        let comp = &t.components[b];
        for s in enumerate_short_slopes(comp, &BigRational::from_integer(20.into())).unwrap() {
            assert_eq!(slope_from_curve(s.arcs, comp).unwrap(), CurveSlope::Slope(s), "{name} {s}");
            assert_eq!(weights_from_arcs(s.arcs), s.weights());
            assert_eq!(arcs_from_weights(s.weights()), s.arcs);
            assert!(s.arcs.contains(&0));
        }
        assert_eq!(slope_from_curve([1, 1, 1], comp).unwrap(), CurveSlope::Trivial);
        assert_eq!(slope_from_curve([2, 2, 2], comp), Err(Error::DisconnectedCurve));
        assert_eq!(slope_from_curve([2, 4, 0], comp), Err(Error::DisconnectedCurve));
    }
}

#[test]
fn complementary_slopes_fill_vertex_links() {
    for (name, t, b) in tori() {
        let comp = &t.components[b];
        for s in enumerate_short_slopes(comp, &BigRational::from_integer(16.into())).unwrap() {
            let c = complementary_slope(&s, comp).unwrap();
            let sum: Vec<u64> = (0..3).map(|k| s.arcs[k] + c.arcs[k]).collect();
            assert!(sum.iter().all(|&x| x == sum[0]), "{name} {s} {c}");
            assert_eq!(complementary_slope(&c, comp).unwrap(), s);
        }
    }
}

#[test]
fn distance_is_the_determinant() {
    let t = one_tet_solid_torus();
    let comp = &t.components[0];
    let a = Slope::new(comp, 2, -1).unwrap();
    let b = Slope::new(comp, 1, 0).unwrap();
    assert_eq!(slope_distance(&a, &b).unwrap(), 1);
    assert_eq!(slope_distance(&a, &a).unwrap(), 0);
    let other = fixtures::two_boundary();
    let c = Slope::new(&other.components[1], 1, 0).unwrap();
    assert_eq!(slope_distance(&a, &c), Err(Error::BoundaryMismatch));
}

#[test]
fn slope_constructor_rejects_bad_input() {
    let t = one_tet_solid_torus();
    assert_eq!(Slope::new(&t.components[0], 2, 4), Err(Error::TrivialSlope));
    assert_eq!(Slope::new(&t.components[0], 0, 0), Err(Error::TrivialSlope));
    let s = Slope::new(&t.components[0], -3, 2).unwrap();
    assert_eq!((s.p, s.q), (3, -2));
    let u = normkit::tri::unglued_tetrahedron();
    assert!(matches!(Slope::new(&u.components[0], 1, 0), Err(Error::NotOneVertexTorus(_))));
}

#[test]
fn slope_parse() {
    assert_eq!(Slope::parse("3/-2", Some(1)).unwrap(), (3, -2, 1));
    assert_eq!(Slope::parse("1/0@B2", None).unwrap(), (1, 0, 2));
    assert!(Slope::parse("1/0", None).is_err());
    assert!(Slope::parse("x/1", Some(0)).is_err());
    assert!(Slope::parse("1/0@C2", None).is_err());
}

proptest! {
    #[test]
    fn weights_match_brute_force(p in -40i64..40, q in -40i64..40) {
        prop_assume!(common::gcd(p, q) == 1);
        for (_, t, b) in tori() {
            let comp = &t.components[b];
            let f = comp.torus.as_ref().unwrap();
            let s = Slope::new(comp, p, q).unwrap();
            let w = brute_weights(f.a, f.b, p, q);
            prop_assert_eq!(s.weights(), w);
            prop_assert_eq!(s.length(), w.iter().sum::<u64>());
        }
    }
}

#[test]
fn compatible_fundamentals_can_have_unrelated_slopes() {
    use normkit::normal::{enumerate_fundamental_solutions, haken_sum, Budget};
    let t = fixtures::two_boundary();
    let comp = &t.components[0];
    let fund = enumerate_fundamental_solutions(&t, None, &Budget::default()).unwrap().fundamentals;
    let with_arcs = |z: [u64; 3]| -> Vec<&normkit::NormalVector> { fund.iter().filter(|v| common::torus_arcs(&t, 0, &v.0) == z).collect() };
    let (a, b) = (Slope::new(comp, 1, 0).unwrap(), Slope::new(comp, 1, -1).unwrap());
    assert_ne!(complementary_slope(&a, comp).unwrap(), b);
    let pair = with_arcs(a.arcs)
        .into_iter()
        .flat_map(|u| with_arcs(b.arcs).into_iter().map(move |v| (u, v)))
        .find(|(u, v)| u.quad_conflict(v).is_none());
    let (u, v) = pair.expect("a compatible pair");
    let s = haken_sum(u, v).unwrap();
    assert!(common::admissible(&t, &u.0) && common::admissible(&t, &v.0) && common::admissible(&t, &s.0));
    let z = common::torus_arcs(&t, 0, &s.0);
    assert_eq!(slope_from_curve(z, comp).unwrap(), CurveSlope::Slope(Slope::new(comp, 2, -1).unwrap()));
}
