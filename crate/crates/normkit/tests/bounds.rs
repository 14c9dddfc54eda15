mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use normkit::bounds::*;
use normkit::fixtures;
use normkit::normal::{enumerate_fundamental_solutions, Budget};

#[test]
fn boundary_map_counts_boundary_arcs() {
    for (name, t) in fixtures::all() {
        let m = normal_boundary_map(&t);
        assert_eq!(m.rows.len(), 3 * t.boundary_tris.len());
        for v in enumerate_fundamental_solutions(&t, None, &Budget::default()).unwrap().fundamentals.iter().take(30) {
            assert_eq!(m.apply(v).iter().sum::<u64>(), common::boundary_length(&t, &v.0), "{name}");
        }
    }
}

#[test]
fn ale_constant_is_the_largest_ratio() {
    let t = fixtures::knot_two_tet();
    let fund = enumerate_fundamental_solutions(&t, None, &Budget::default()).unwrap().fundamentals;
    let c = ale_constant(&t, &fund, AleVariant::Basic).unwrap();
    let mut best = BigRational::zero();
    for v in &fund {
        let chi = common::euler(&t, &v.0);
        if chi < 0 {
            best = best.max(BigRational::new(BigInt::from(common::boundary_length(&t, &v.0)), BigInt::from(-chi)));
        }
    }
    assert!(best > BigRational::zero());
    assert_eq!(c.value, best);
    assert!(!c.witnesses.is_empty());
    let json = serde_json::to_value(&c).unwrap();
    assert!(json["value"].is_string());
}

#[test]
fn annulus_variants_dominate_basic() {
    let t = fixtures::two_boundary();
    let fund = enumerate_fundamental_solutions(&t, None, &Budget::default()).unwrap().fundamentals;
    let basic = ale_constant(&t, &fund, AleVariant::Basic).unwrap();
    let link = ale_constant(&t, &fund, AleVariant::Link1).unwrap();
    assert!(link.value >= basic.value);
    assert!(!link.annulus_terms.is_empty());
    assert!(basic.annulus_terms.is_empty());
}

#[test]
fn variant_names_parse() {
    assert_eq!("basic".parse::<AleVariant>().unwrap(), AleVariant::Basic);
    assert_eq!("boundary-conditioned".parse::<AleVariant>().unwrap(), AleVariant::BoundaryConditioned);
    assert!("other".parse::<AleVariant>().is_err());
}

#[test]
fn audits() {
    assert!(audit_zero_efficiency(&fixtures::knot_zero_efficient()).unwrap().is_empty());
    assert!(audit_zero_efficiency(&fixtures::two_boundary()).unwrap().is_empty());
    let st = audit_zero_efficiency(&normkit::tri::one_tet_solid_torus()).unwrap();
    assert_eq!(st.compressing_disks.len(), 1);
    for v in &st.compressing_disks {
        assert_eq!(common::euler(&normkit::tri::one_tet_solid_torus(), &v.0), 1);
    }
}
