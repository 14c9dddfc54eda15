use normkit::tri::*;
use normkit::Error;

#[test]
fn one_tet_solid_torus_skeleton() {
    let t = one_tet_solid_torus();
    assert!(t.is_valid());
    assert!(t.orientable);
    assert_eq!(t.edges.len(), 3);
    assert_eq!(t.vertices.len(), 1);
    assert_eq!(t.components.len(), 1);
    assert!(t.components[0].one_vertex_torus);
    assert_eq!(t.components[0].euler, 0);
    assert!(t.is_minimal_vertex());
    assert_eq!(t.face_count(), 3);
}

#[test]
fn unglued_tetrahedron_skeleton() {
    let t = unglued_tetrahedron();
    assert_eq!(t.edges.len(), 6);
    assert_eq!(t.vertices.len(), 4);
    assert_eq!(t.components.len(), 1);
    assert_eq!(t.components[0].euler, 2);
    assert!(!t.components[0].one_vertex_torus);
    assert!(!t.is_minimal_vertex());
    assert!(t.is_valid());
}

#[test]
fn involution_violation_rejected() {
    let table = GluingTable { tets: 1, gluings: vec![[Some((0, 1, [1, 0, 2, 3])), None, None, None]] };
    assert_eq!(Triangulation::from_table(&table).unwrap_err(), Error::InvolutionViolation(0, 0));
}

#[test]
fn self_glued_face_rejected() {
    let table = GluingTable { tets: 1, gluings: vec![[Some((0, 0, [0, 1, 2, 3])), None, None, None]] };
    assert_eq!(Triangulation::from_table(&table).unwrap_err(), Error::SelfGluedFaceIdentity(0, 0));
}

#[test]
fn malformed_table_rejected() {
    assert!(matches!(Triangulation::from_json("{\"tets\": 1}"), Err(Error::MalformedTable(_))));
    let bad_perm = "{\"tets\":1,\"gluings\":[[[0,3,[1,1,2,3]],null,null,null]]}";
    assert!(matches!(Triangulation::from_json(bad_perm), Err(Error::MalformedTable(_))));
}

#[test]
fn json_round_trip() {
    let t = one_tet_solid_torus();
    let json = t.to_json();
    let back = Triangulation::from_json(&json).unwrap();
    assert_eq!(back.to_json(), json);
    assert_eq!(back.edges, t.edges);
    assert_eq!(back.components, t.components);
}

#[test]
fn layered_counts() {
    let mut t = one_tet_solid_torus();
    for n in 1..8 {
        let c = &t.components[0];
        // Layer on the edge of highest class so the layering keeps growing.
        let e = c.edges[2].class;
        t = t.layer_on_edge(e).unwrap();
        let k = n + 1;
        assert_eq!(t.tet_count(), k);
        assert_eq!(t.edges.len(), k + 2);
        assert_eq!(t.vertices.len(), 1);
        assert_eq!(t.face_count(), 2 * k + 1);
        assert_eq!(t.boundary_tris.len(), 2);
        assert_eq!(t.components.len(), 1);
        assert!(t.components[0].one_vertex_torus);
        assert!(t.is_valid());
        assert!(t.orientable);
    }
}

#[test]
fn layering_twice_restores_boundary_edges() {
    let t = one_tet_solid_torus();
    let e = t.components[0].edges[0].class;
    let once = t.layer_on_edge(e).unwrap();
    let new_edge = once.edge_class(1, edge_index(2, 3));
    let twice = once.layer_on_edge(new_edge).unwrap();
    // The two unflipped boundary edges survive; the flipped one is replaced by the
    // new diagonal, parallel to the original edge through the two layers.
    let orig: Vec<(usize, usize)> = t.components[0].edges.iter().map(|x| t.edges[x.class].rep).collect();
    let back: Vec<(usize, usize)> = twice.components[0].edges.iter().map(|x| twice.edges[x.class].rep).collect();
    let kept: Vec<_> = orig.iter().filter(|r| back.contains(r)).collect();
    assert_eq!(kept.len(), 2);
    assert!(!kept.contains(&&t.edges[e].rep));
    assert!(back.contains(&twice.edges[twice.edge_class(2, edge_index(2, 3))].rep));
}

#[test]
fn mobius_layerings() {
    let solid = layer_on_mobius(MobiusEdge::Interior);
    assert_eq!(solid, one_tet_solid_torus());
    let creased = layer_on_mobius(MobiusEdge::Boundary);
    assert!(creased.degenerate);
    assert_eq!(creased.tet_count(), 1);
    assert!(!creased.components[0].one_vertex_torus);
}

#[test]
fn layer_errors() {
    let t = one_tet_solid_torus();
    let t2 = t.layer_on_edge(t.components[0].edges[0].class).unwrap();
    let interior = (0..t2.edges.len()).find(|&c| !t2.edges[c].boundary).unwrap();
    assert_eq!(t2.layer_on_edge(interior).unwrap_err(), Error::EdgeNotOnBoundary(interior));
}

#[test]
fn canonical_indexing_is_stable() {
    let t = one_tet_solid_torus().layer_on_edge(2).unwrap();
    let again = Triangulation::from_table(&t.table()).unwrap();
    assert_eq!(t.edges, again.edges);
    assert_eq!(t.vertices, again.vertices);
    assert_eq!(t.canonical_hash(), again.canonical_hash());
}

#[test]
fn canonical_hash_ignores_relabelling() {
    let t = one_tet_solid_torus().layer_on_edge(2).unwrap();
    // Swap the two tetrahedra and relabel vertices of one of them.
    let table = t.table();
    let swap = |x: usize| 1 - x;
    let rho: Perm = [2, 0, 3, 1];
    let mut out = GluingTable { tets: 2, gluings: vec![[None; 4]; 2] };
    for a in 0..2 {
        let ra = if a == 0 { rho } else { IDENTITY };
        for f in 0..4u8 {
            if let Some((b, _g, p)) = table.gluings[a][f as usize] {
                let rb = if b == 0 { rho } else { IDENTITY };
                let np = compose(&compose(&rb, &p), &perm_inverse(&ra));
                let nf = ra[f as usize];
                out.gluings[swap(a)][nf as usize] = Some((swap(b), np[nf as usize], np));
            }
        }
    }
    let u = Triangulation::from_table(&out).unwrap();
    assert_eq!(u.edges.len(), t.edges.len());
    assert_eq!(u.canonical_hash(), t.canonical_hash());
}
