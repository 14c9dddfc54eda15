//! The bundled fixture corpus. Tables live in the workspace `fixtures/` directory.

use crate::tri::{one_tet_solid_torus, unglued_tetrahedron, Triangulation};

const KNOT_2TET: &str = include_str!("../../../fixtures/knot-2tet.json");
const KNOT_3TET: &str = include_str!("../../../fixtures/knot-3tet-zero-efficient.json");
const TWO_BOUNDARY: &str = include_str!("../../../fixtures/two-boundary.json");
const LST_3_1: &str = include_str!("../../../fixtures/lst-3-1.json");
const LST_5_2: &str = include_str!("../../../fixtures/lst-5-2.json");
const LST_8_3: &str = include_str!("../../../fixtures/lst-8-3.json");

fn load(s: &str) -> Triangulation {
    Triangulation::from_json(s).expect("bundled fixture parses")
}

/// A two-tetrahedron knot-manifold with one vertex (a solid torus).
pub fn knot_two_tet() -> Triangulation {
    load(KNOT_2TET)
}

/// A three-tetrahedron knot-manifold whose only normal disk is the vertex link.
pub fn knot_zero_efficient() -> Triangulation {
    load(KNOT_3TET)
}

/// The one-tetrahedron solid torus drilled along 1/0: a product of a torus and an interval,
/// with one vertex on each boundary torus.
pub fn two_boundary() -> Triangulation {
    load(TWO_BOUNDARY)
}

/// Every bundled fixture by name.
pub fn all() -> Vec<(&'static str, Triangulation)> {
    vec![
        ("unglued-tetrahedron", unglued_tetrahedron()),
        ("one-tet-solid-torus", one_tet_solid_torus()),
        ("lst-3-1", load(LST_3_1)),
        ("lst-5-2", load(LST_5_2)),
        ("lst-8-3", load(LST_8_3)),
        ("knot-2tet", knot_two_tet()),
        ("knot-3tet-zero-efficient", knot_zero_efficient()),
        ("two-boundary", two_boundary()),
    ]
}

pub fn by_name(name: &str) -> Option<Triangulation> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, t)| t)
}
