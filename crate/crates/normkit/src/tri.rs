//! Generalized triangulations: face gluings, skeleton, boundary surfaces and layering.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// A bijection of the vertex labels `0..4`, stored as images.
pub type Perm = [u8; 4];

pub const IDENTITY: Perm = [0, 1, 2, 3];

/// Vertex pairs of the six edges of a tetrahedron, in index order.
pub const EDGE_VERTS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_index(i: u8, j: u8) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    match (i, j) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {i}{j}"),
    }
}

pub fn perm_inverse(p: &Perm) -> Perm {
    let mut q = [0u8; 4];
    for i in 0..4 {
        q[p[i] as usize] = i as u8;
    }
    q
}

/// `compose(a, b)[i] = a[b[i]]`.
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize], a[b[3] as usize]]
}

pub fn perm_sign(p: &Perm) -> i8 {
    let mut s = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

fn is_perm(p: &Perm) -> bool {
    let mut seen = [false; 4];
    for &x in p {
        if x > 3 || seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
    }
    true
}

/// The three vertices of face `f`, ascending.
pub fn face_verts(f: u8) -> [u8; 3] {
    let mut out = [0u8; 3];
    let mut k = 0;
    for v in 0..4u8 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub face: u8,
    pub perm: Perm,
}

/// External gluing-table format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingTable {
    pub tets: usize,
    pub gluings: Vec<[Option<(usize, u8, Perm)>; 4]>,
}

impl GluingTable {
    pub fn from_json(s: &str) -> Result<GluingTable> {
        serde_json::from_str(s).map_err(|e| Error::MalformedTable(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }

    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    /// Lexicographically smallest (tet, edge index) member.
    pub rep: (usize, usize),
    pub degree: usize,
    pub boundary: bool,
    /// Vertex classes at the two ends, read off the representative.
    pub ends: [usize; 2],
    /// False when the edge is identified with itself in reverse.
    pub valid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub rep: (usize, u8),
    pub boundary: bool,
    pub link_euler: i64,
}

impl VertexClass {
    /// Link is a disk (boundary vertex) or a sphere (interior vertex).
    pub fn manifold_link(&self) -> bool {
        if self.boundary {
            self.link_euler == 1
        } else {
            self.link_euler == 2
        }
    }
}

/// A boundary triangle: an unglued face with its corners in ascending label order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryTriangle {
    pub tet: usize,
    pub face: u8,
    pub corners: [u8; 3],
    /// For the side opposite corner slot `s`: the adjacent (triangle, side slot) and the
    /// images in that triangle's tetrahedron of this side's two endpoints (ascending).
    pub nbr: [(usize, usize, [u8; 2]); 3],
    pub component: usize,
    /// Vertex of the induced boundary surface at each corner slot.
    pub corner_vertex: [usize; 3],
}

impl BoundaryTriangle {
    /// Endpoints (ascending labels) of the side opposite corner slot `s`.
    pub fn side_ends(&self, s: usize) -> [u8; 2] {
        let mut out = [0u8; 2];
        let mut k = 0;
        for (i, &c) in self.corners.iter().enumerate() {
            if i != s {
                out[k] = c;
                k += 1;
            }
        }
        out
    }

    pub fn slot_of(&self, v: u8) -> usize {
        self.corners.iter().position(|&c| c == v).expect("corner of triangle")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryEdge {
    /// Edge class of the triangulation.
    pub class: usize,
    /// The two (triangle, side slot) occurrences.
    pub sides: [(usize, usize); 2],
}

/// Data for a one-vertex torus: edge labels per corner and the homology relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusFrame {
    /// The two boundary triangles, first is the canonical one.
    pub tris: [usize; 2],
    /// `edge_at[t][s]`: local edge index of the side opposite corner slot `s` of `tris[t]`.
    pub edge_at: [[usize; 3]; 2],
    /// E2 = a*E0 + b*E1 in homology, edges oriented canonically.
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryComponent {
    pub id: usize,
    pub triangles: Vec<usize>,
    /// Sorted by edge class index.
    pub edges: Vec<BoundaryEdge>,
    /// Vertex classes of the triangulation met by this component.
    pub vertices: Vec<usize>,
    /// Vertex count of the induced surface.
    pub surface_vertices: usize,
    pub euler: i64,
    pub one_vertex_torus: bool,
    pub torus: Option<TorusFrame>,
}

impl BoundaryComponent {
    pub fn torus(&self) -> Result<&TorusFrame> {
        self.torus.as_ref().ok_or(Error::NotOneVertexTorus(self.id))
    }

    pub fn local_edge(&self, class: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.class == class)
    }
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    glue: Vec<[Option<Gluing>; 4]>,
    edge_of: Vec<[usize; 6]>,
    vertex_of: Vec<[usize; 4]>,
    pub edges: Vec<EdgeClass>,
    pub vertices: Vec<VertexClass>,
    pub boundary_tris: Vec<BoundaryTriangle>,
    pub components: Vec<BoundaryComponent>,
    /// Interior face pairs `(a, f, b, g)` with `(a, f) < (b, g)`.
    pub interior_faces: Vec<(usize, u8, usize, u8)>,
    pub orientable: bool,
    /// Set when the triangulation was produced by a degenerate layering.
    pub degenerate: bool,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.glue == other.glue
    }
}

struct Dsu {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect(), parity: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (r, par) = self.find(p);
        self.parent[x] = r;
        self.parity[x] ^= par;
        (r, self.parity[x])
    }

    /// Join with relative parity; returns false on a parity conflict.
    fn union(&mut self, x: usize, y: usize, odd: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return (px ^ py) == odd;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        self.parity[hi] = px ^ py ^ odd;
        true
    }
}

/// Number classes in order of first (smallest) member.
fn canonical_classes(dsu: &mut Dsu, n: usize) -> (Vec<usize>, usize) {
    let mut label = vec![usize::MAX; n];
    let mut out = vec![0; n];
    let mut next = 0;
    for x in 0..n {
        let (r, _) = dsu.find(x);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        out[x] = label[r];
    }
    (out, next)
}

impl Triangulation {
    pub fn from_table(table: &GluingTable) -> Result<Triangulation> {
        if table.gluings.len() != table.tets {
            return Err(Error::MalformedTable(format!(
                "{} gluing rows for {} tetrahedra",
                table.gluings.len(),
                table.tets
            )));
        }
        let mut glue = vec![[None; 4]; table.tets];
        for (a, row) in table.gluings.iter().enumerate() {
            for f in 0..4 {
                if let Some((b, g, p)) = row[f] {
                    if b >= table.tets || g > 3 || !is_perm(&p) {
                        return Err(Error::MalformedTable(format!("bad entry at ({a},{f})")));
                    }
                    if p[f] != g {
                        return Err(Error::MalformedTable(format!(
                            "permutation at ({a},{f}) does not carry face {f} to face {g}"
                        )));
                    }
                    glue[a][f] = Some(Gluing { tet: b, face: g, perm: p });
                }
            }
        }
        Triangulation::from_gluings(glue)
    }

    pub fn from_json(s: &str) -> Result<Triangulation> {
        Triangulation::from_table(&GluingTable::from_json(s)?)
    }

    pub fn from_gluings(glue: Vec<[Option<Gluing>; 4]>) -> Result<Triangulation> {
        for a in 0..glue.len() {
            for f in 0..4u8 {
                if let Some(gl) = glue[a][f as usize] {
                    if gl.tet == a && gl.face == f {
                        return Err(Error::SelfGluedFaceIdentity(a, f));
                    }
                    let back = glue[gl.tet][gl.face as usize];
                    let expect = Gluing { tet: a, face: f, perm: perm_inverse(&gl.perm) };
                    if back != Some(expect) {
                        return Err(Error::InvolutionViolation(a, f));
                    }
                }
            }
        }
        Ok(Triangulation::derive(glue))
    }

    pub fn table(&self) -> GluingTable {
        GluingTable {
            tets: self.glue.len(),
            gluings: self
                .glue
                .iter()
                .map(|row| {
                    let mut out = [None; 4];
                    for f in 0..4 {
                        out[f] = row[f].map(|g| (g.tet, g.face, g.perm));
                    }
                    out
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        self.table().to_json()
    }

    pub fn tet_count(&self) -> usize {
        self.glue.len()
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Option<Gluing> {
        self.glue[tet][face as usize]
    }

    pub fn gluings(&self) -> &[[Option<Gluing>; 4]] {
        &self.glue
    }

    pub fn edge_class(&self, tet: usize, edge: usize) -> usize {
        self.edge_of[tet][edge]
    }

    pub fn vertex_class(&self, tet: usize, v: u8) -> usize {
        self.vertex_of[tet][v as usize]
    }

    /// Number of distinct face classes (interior pairs plus boundary faces).
    pub fn face_count(&self) -> usize {
        self.interior_faces.len() + self.boundary_tris.len()
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_tris.is_empty()
    }

    /// Edges valid and every vertex link a disk or sphere.
    pub fn is_valid(&self) -> bool {
        self.edges.iter().all(|e| e.valid) && self.vertices.iter().all(|v| v.manifold_link())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.glue.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for g in self.glue[a].iter().flatten() {
                if !seen[g.tet] {
                    seen[g.tet] = true;
                    stack.push(g.tet);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_minimal_vertex(&self) -> bool {
        if self.components.is_empty() {
            return false;
        }
        self.vertices.iter().all(|v| v.boundary) && self.components.iter().all(|c| c.vertices.len() == 1)
    }

    pub fn component(&self, id: usize) -> Result<&BoundaryComponent> {
        self.components.get(id).ok_or(Error::NoSuchBoundary(id))
    }

    fn derive(glue: Vec<[Option<Gluing>; 4]>) -> Triangulation {
        let t = glue.len();

        let mut edsu = Dsu::new(6 * t);
        let mut vdsu = Dsu::new(4 * t);
        let mut edge_ok = true;
        let mut interior_faces = Vec::new();
        for a in 0..t {
            for f in 0..4u8 {
                let Some(gl) = glue[a][f as usize] else { continue };
                if (a, f) < (gl.tet, gl.face) {
                    interior_faces.push((a, f, gl.tet, gl.face));
                }
                let fv = face_verts(f);
                for &v in &fv {
                    vdsu.union(4 * a + v as usize, 4 * gl.tet + gl.perm[v as usize] as usize, false);
                }
                for i in 0..3 {
                    for j in i + 1..3 {
                        let (u, w) = (fv[i], fv[j]);
                        let (pu, pw) = (gl.perm[u as usize], gl.perm[w as usize]);
                        let odd = pu > pw;
                        if !edsu.union(6 * a + edge_index(u, w), 6 * gl.tet + edge_index(pu, pw), odd) {
                            edge_ok = false;
                        }
                    }
                }
            }
        }
        let (ecls, ne) = canonical_classes(&mut edsu, 6 * t);
        let (vcls, nv) = canonical_classes(&mut vdsu, 4 * t);
        let mut edge_of = vec![[0usize; 6]; t];
        let mut vertex_of = vec![[0usize; 4]; t];
        for a in 0..t {
            for e in 0..6 {
                edge_of[a][e] = ecls[6 * a + e];
            }
            for v in 0..4 {
                vertex_of[a][v] = vcls[4 * a + v];
            }
        }

        let mut edges: Vec<Option<EdgeClass>> = vec![None; ne];
        for a in 0..t {
            for e in 0..6 {
                let c = edge_of[a][e];
                match &mut edges[c] {
                    Some(ec) => ec.degree += 1,
                    None => {
                        let (u, w) = EDGE_VERTS[e];
                        edges[c] = Some(EdgeClass {
                            rep: (a, e),
                            degree: 1,
                            boundary: false,
                            ends: [vertex_of[a][u as usize], vertex_of[a][w as usize]],
                            valid: true,
                        });
                    }
                }
            }
        }
        let mut edges: Vec<EdgeClass> = edges.into_iter().map(|e| e.expect("edge class")).collect();
        if !edge_ok {
            // Locate the offending classes.
            let mut bad = vec![false; ne];
            for a in 0..t {
                for f in 0..4u8 {
                    let Some(gl) = glue[a][f as usize] else { continue };
                    let fv = face_verts(f);
                    for i in 0..3 {
                        for j in i + 1..3 {
                            let (u, w) = (fv[i], fv[j]);
                            let (pu, pw) = (gl.perm[u as usize], gl.perm[w as usize]);
                            let x = 6 * a + edge_index(u, w);
                            let y = 6 * gl.tet + edge_index(pu, pw);
                            let (_, px) = edsu.find(x);
                            let (_, py) = edsu.find(y);
                            if (px ^ py) != (pu > pw) {
                                bad[ecls[x]] = true;
                            }
                        }
                    }
                }
            }
            for (c, b) in bad.into_iter().enumerate() {
                if b {
                    edges[c].valid = false;
                }
            }
        }

        // Boundary triangles and side adjacency.
        let mut boundary_tris = Vec::new();
        let mut tri_index = vec![[usize::MAX; 4]; t];
        for a in 0..t {
            for f in 0..4u8 {
                if glue[a][f as usize].is_none() {
                    tri_index[a][f as usize] = boundary_tris.len();
                    boundary_tris.push(BoundaryTriangle {
                        tet: a,
                        face: f,
                        corners: face_verts(f),
                        nbr: [(0, 0, [0, 0]); 3],
                        component: 0,
                        corner_vertex: [0; 3],
                    });
                }
            }
        }
        for i in 0..boundary_tris.len() {
            let (a, f) = (boundary_tris[i].tet, boundary_tris[i].face);
            for s in 0..3 {
                let [p, q] = boundary_tris[i].side_ends(s);
                let r = boundary_tris[i].corners[s];
                let (b, g, pp, qq) = walk_edge(&glue, a, r, f, p, q);
                let j = tri_index[b][g as usize];
                let sj = boundary_tris[j].corners.iter().position(|&c| c != pp && c != qq).unwrap();
                boundary_tris[i].nbr[s] = (j, sj, [pp, qq]);
            }
        }
        for bt in &boundary_tris {
            for e in 0..6 {
                let (u, w) = EDGE_VERTS[e];
                if u != bt.face && w != bt.face {
                    edges[edge_of[bt.tet][e]].boundary = true;
                }
            }
        }

        // Vertex classes with link Euler characteristics.
        let mut vertices: Vec<VertexClass> = (0..nv)
            .map(|_| VertexClass { rep: (usize::MAX, 0), boundary: false, link_euler: 0 })
            .collect();
        // Link faces are corners, link edges are corner-face pairs (halved when interior),
        // link vertices are edge ends.
        let mut link_f = vec![0i64; nv];
        let mut link_e2 = vec![0i64; nv];
        for a in 0..t {
            for v in 0..4u8 {
                let c = vertex_of[a][v as usize];
                if vertices[c].rep.0 == usize::MAX {
                    vertices[c].rep = (a, v);
                }
                link_f[c] += 1;
                for f in 0..4u8 {
                    if f != v {
                        if glue[a][f as usize].is_none() {
                            vertices[c].boundary = true;
                            link_e2[c] += 2;
                        } else {
                            link_e2[c] += 1;
                        }
                    }
                }
            }
        }
        let mut link_v = vec![0i64; nv];
        for ec in &edges {
            link_v[ec.ends[0]] += 1;
            link_v[ec.ends[1]] += 1;
        }
        for c in 0..nv {
            vertices[c].link_euler = link_v[c] - link_e2[c] / 2 + link_f[c];
        }

        // Boundary components.
        let nb = boundary_tris.len();
        let mut cdsu = Dsu::new(nb);
        for i in 0..nb {
            for s in 0..3 {
                cdsu.union(i, boundary_tris[i].nbr[s].0, false);
            }
        }
        let (ccls, ncomp) = canonical_classes(&mut cdsu, nb);
        for i in 0..nb {
            boundary_tris[i].component = ccls[i];
        }
        // Surface vertices of the boundary: union corners across sides.
        let mut sdsu = Dsu::new(3 * nb);
        for i in 0..nb {
            for s in 0..3 {
                let ends = boundary_tris[i].side_ends(s);
                let (j, _, imgs) = boundary_tris[i].nbr[s];
                for k in 0..2 {
                    let si = boundary_tris[i].slot_of(ends[k]);
                    let sj = boundary_tris[j].slot_of(imgs[k]);
                    sdsu.union(3 * i + si, 3 * j + sj, false);
                }
            }
        }
        let (scls, _) = canonical_classes(&mut sdsu, 3 * nb);
        for i in 0..nb {
            for s in 0..3 {
                boundary_tris[i].corner_vertex[s] = scls[3 * i + s];
            }
        }

        let mut components = Vec::with_capacity(ncomp);
        for cid in 0..ncomp {
            let triangles: Vec<usize> = (0..nb).filter(|&i| ccls[i] == cid).collect();
            let mut bedges: Vec<BoundaryEdge> = Vec::new();
            let mut seen = std::collections::BTreeSet::new();
            for &i in &triangles {
                for s in 0..3 {
                    if seen.contains(&(i, s)) {
                        continue;
                    }
                    let (j, sj, _) = boundary_tris[i].nbr[s];
                    seen.insert((i, s));
                    seen.insert((j, sj));
                    let [p, q] = boundary_tris[i].side_ends(s);
                    let class = edge_of[boundary_tris[i].tet][edge_index(p, q)];
                    bedges.push(BoundaryEdge { class, sides: [(i, s), (j, sj)] });
                }
            }
            bedges.sort_by_key(|e| (e.class, e.sides));
            let mut vset: Vec<usize> = Vec::new();
            for &i in &triangles {
                let bt = &boundary_tris[i];
                for &c in &bt.corners {
                    vset.push(vertex_of[bt.tet][c as usize]);
                }
            }
            vset.sort();
            vset.dedup();
            let mut svs: Vec<usize> =
                triangles.iter().flat_map(|&i| (0..3).map(move |s| 3 * i + s)).map(|x| scls[x]).collect();
            svs.sort();
            svs.dedup();
            let euler = svs.len() as i64 - bedges.len() as i64 + triangles.len() as i64;
            let one_vertex_torus = triangles.len() == 2 && bedges.len() == 3 && svs.len() == 1 && vset.len() == 1;
            let mut comp = BoundaryComponent {
                id: cid,
                triangles,
                edges: bedges,
                vertices: vset,
                surface_vertices: svs.len(),
                euler,
                one_vertex_torus,
                torus: None,
            };
            if one_vertex_torus {
                comp.torus = torus_frame(&boundary_tris, &comp);
                if comp.torus.is_none() {
                    comp.one_vertex_torus = false;
                }
            }
            components.push(comp);
        }

        // Orientability by sign propagation.
        let mut sign = vec![0i8; t];
        let mut orientable = true;
        for start in 0..t {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                for gl in glue[a].iter().flatten() {
                    let want = -perm_sign(&gl.perm) * sign[a];
                    if sign[gl.tet] == 0 {
                        sign[gl.tet] = want;
                        stack.push(gl.tet);
                    } else if sign[gl.tet] != want {
                        orientable = false;
                    }
                }
            }
        }

        Triangulation {
            glue,
            edge_of,
            vertex_of,
            edges,
            vertices,
            boundary_tris,
            components,
            interior_faces,
            orientable,
            degenerate: false,
        }
    }

    /// Side occurrences of a boundary edge class, as (triangle, side slot).
    pub fn boundary_sides(&self, class: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, bt) in self.boundary_tris.iter().enumerate() {
            for s in 0..3 {
                let [p, q] = bt.side_ends(s);
                if self.edge_of[bt.tet][edge_index(p, q)] == class {
                    out.push((i, s));
                }
            }
        }
        out
    }

    /// Layer a new tetrahedron on the boundary edge class `class`.
    pub fn layer_on_edge(&self, class: usize) -> Result<Triangulation> {
        let sides = self.boundary_sides(class);
        let Some(&(i, s)) = sides.first() else {
            return Err(Error::EdgeNotOnBoundary(class));
        };
        let sigma = &self.boundary_tris[i];
        let (j, sj, imgs) = sigma.nbr[s];
        if j == i {
            return Err(Error::AdjacentTrianglesNotDistinct(class));
        }
        let beta = &self.boundary_tris[j];
        let [p, q] = sigma.side_ends(s);
        let r = sigma.corners[s];
        let r2 = beta.corners[sj];
        let n = self.glue.len();
        let mut glue = self.glue.clone();
        let pi: Perm = [p, q, r, sigma.face];
        let rho: Perm = [imgs[0], imgs[1], beta.face, r2];
        let mut row = [None; 4];
        row[3] = Some(Gluing { tet: sigma.tet, face: sigma.face, perm: pi });
        row[2] = Some(Gluing { tet: beta.tet, face: beta.face, perm: rho });
        glue.push(row);
        glue[sigma.tet][sigma.face as usize] = Some(Gluing { tet: n, face: 3, perm: perm_inverse(&pi) });
        glue[beta.tet][beta.face as usize] = Some(Gluing { tet: n, face: 2, perm: perm_inverse(&rho) });
        let mut out = Triangulation::from_gluings(glue)?;
        out.degenerate = self.degenerate;
        Ok(out)
    }

    /// Copy of this triangulation with the given extra gluings (face pairs both currently boundary).
    pub fn with_gluings(&self, extra: &[(usize, u8, usize, u8, Perm)]) -> Result<Triangulation> {
        let mut glue = self.glue.clone();
        for &(a, f, b, g, p) in extra {
            if glue[a][f as usize].is_some() || glue[b][g as usize].is_some() || p[f as usize] != g {
                return Err(Error::MalformedTable(format!("cannot glue ({a},{f}) to ({b},{g})")));
            }
            glue[a][f as usize] = Some(Gluing { tet: b, face: g, perm: p });
            glue[b][g as usize] = Some(Gluing { tet: a, face: f, perm: perm_inverse(&p) });
        }
        Triangulation::from_gluings(glue)
    }

    /// Disjoint union; the other triangulation's tetrahedra are appended.
    pub fn disjoint_union(&self, other: &Triangulation) -> Triangulation {
        let off = self.glue.len();
        let mut glue = self.glue.clone();
        for row in &other.glue {
            let mut r = *row;
            for g in r.iter_mut().flatten() {
                g.tet += off;
            }
            glue.push(r);
        }
        Triangulation::from_gluings(glue).expect("union of valid tables")
    }

    /// Gluing table of the tetrahedra in `range`, with gluings leaving the range cut to Boundary.
    pub fn restrict_table(&self, range: std::ops::Range<usize>) -> GluingTable {
        let gluings = self.glue[range.clone()]
            .iter()
            .map(|row| {
                let mut out = [None; 4];
                for f in 0..4 {
                    if let Some(g) = row[f] {
                        if range.contains(&g.tet) {
                            out[f] = Some((g.tet - range.start, g.face, g.perm));
                        }
                    }
                }
                out
            })
            .collect();
        GluingTable { tets: range.len(), gluings }
    }

    /// Isomorphism-invariant form of a connected triangulation: the lexicographically least
    /// relabelled table over all starting tetrahedra and vertex labellings.
    pub fn canonical_table(&self) -> GluingTable {
        let t = self.glue.len();
        if t == 0 || !self.is_connected() {
            return self.table();
        }
        let mut best: Option<Vec<i64>> = None;
        let mut best_table = self.table();
        for start in 0..t {
            for pi in all_perms() {
                let mut new_of = vec![usize::MAX; t];
                let mut rho: Vec<Perm> = vec![IDENTITY; t];
                let mut order = vec![start];
                new_of[start] = 0;
                rho[start] = pi;
                let mut code = Vec::with_capacity(t * 4 * 6);
                let mut k = 0;
                while k < order.len() {
                    let old = order[k];
                    let inv = perm_inverse(&rho[old]);
                    for jf in 0..4u8 {
                        let of = inv[jf as usize];
                        match self.glue[old][of as usize] {
                            None => code.push(-1),
                            Some(g) => {
                                if new_of[g.tet] == usize::MAX {
                                    new_of[g.tet] = order.len();
                                    order.push(g.tet);
                                    rho[g.tet] = compose(&rho[old], &perm_inverse(&g.perm));
                                }
                                let np = compose(&compose(&rho[g.tet], &g.perm), &inv);
                                code.push(new_of[g.tet] as i64);
                                code.extend(np.iter().map(|&x| x as i64));
                            }
                        }
                    }
                    k += 1;
                }
                if best.as_ref().map_or(true, |b| code < *b) {
                    best = Some(code);
                    let mut table = GluingTable { tets: t, gluings: vec![[None; 4]; t] };
                    for old in 0..t {
                        let inv = perm_inverse(&rho[old]);
                        for jf in 0..4u8 {
                            let of = inv[jf as usize];
                            if let Some(g) = self.glue[old][of as usize] {
                                let np = compose(&compose(&rho[g.tet], &g.perm), &inv);
                                table.gluings[new_of[old]][jf as usize] = Some((new_of[g.tet], np[jf as usize], np));
                            }
                        }
                    }
                    best_table = table;
                }
            }
        }
        best_table
    }

    pub fn canonical_hash(&self) -> String {
        self.canonical_table().hash()
    }
}

pub fn all_perms() -> Vec<Perm> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    if is_perm(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// From boundary face (a, f) with edge {p, q} and third corner r, walk around the edge
/// through the interior until the other boundary face containing it.
fn walk_edge(glue: &[[Option<Gluing>; 4]], a: usize, r: u8, f: u8, p: u8, q: u8) -> (usize, u8, u8, u8) {
    let (mut tet, mut face, mut other) = (a, r, f);
    let (mut p, mut q) = (p, q);
    for _ in 0..=4 * glue.len() + 4 {
        match glue[tet][face as usize] {
            None => return (tet, face, p, q),
            Some(g) => {
                p = g.perm[p as usize];
                q = g.perm[q as usize];
                let x = g.perm[other as usize];
                other = g.face;
                tet = g.tet;
                face = x;
            }
        }
    }
    panic!("edge walk did not terminate");
}

fn torus_frame(tris: &[BoundaryTriangle], comp: &BoundaryComponent) -> Option<TorusFrame> {
    let t = [comp.triangles[0], comp.triangles[1]];
    let mut edge_at = [[usize::MAX; 3]; 2];
    for (k, e) in comp.edges.iter().enumerate() {
        for &(i, s) in &e.sides {
            let ti = t.iter().position(|&x| x == i)?;
            edge_at[ti][s] = k;
        }
    }
    for row in &edge_at {
        let mut r = *row;
        r.sort();
        if r != [0, 1, 2] {
            return None;
        }
    }
    // Orient each edge from its first side, ascending labels.
    let sign_of_side = |ti: usize, s: usize, from: u8, to: u8| -> i64 {
        let k = edge_at[ti][s];
        let (fi, fs) = comp.edges[k].sides[0];
        let first = tris[fi].side_ends(fs);
        if (fi, fs) == (t[ti], s) {
            if [from, to] == first {
                1
            } else {
                -1
            }
        } else {
            let (_, _, imgs) = tris[fi].nbr[fs];
            if [from, to] == imgs {
                1
            } else {
                -1
            }
        }
    };
    let c = tris[t[0]].corners;
    // Traverse corners c0 -> c1 -> c2 -> c0; side (ci -> cj) is opposite the remaining slot.
    let mut coeff = [0i64; 3];
    for (from, to, opp) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
        let k = edge_at[0][opp];
        coeff[k] += sign_of_side(0, opp, c[from], c[to]);
    }
    if coeff.iter().any(|x| x.abs() != 1) {
        return None;
    }
    // s0 E0 + s1 E1 + s2 E2 = 0.
    let a = -coeff[2] * coeff[0];
    let b = -coeff[2] * coeff[1];
    Some(TorusFrame { tris: t, edge_at, a, b })
}

/// The one-tetrahedron solid torus: face 3 glued to face 0 by 0->1, 1->2, 2->3, 3->0.
pub fn one_tet_solid_torus() -> Triangulation {
    let glue = vec![[
        Some(Gluing { tet: 0, face: 3, perm: [3, 0, 1, 2] }),
        None,
        None,
        Some(Gluing { tet: 0, face: 0, perm: [1, 2, 3, 0] }),
    ]];
    Triangulation::from_gluings(glue).expect("valid")
}

/// Creased 3-cell: faces 3 and 0 folded together along the edge 12.
pub fn creased_cell() -> Triangulation {
    let glue = vec![[
        Some(Gluing { tet: 0, face: 3, perm: [3, 1, 2, 0] }),
        None,
        None,
        Some(Gluing { tet: 0, face: 0, perm: [3, 1, 2, 0] }),
    ]];
    let mut t = Triangulation::from_gluings(glue).expect("valid");
    t.degenerate = true;
    t
}

pub fn unglued_tetrahedron() -> Triangulation {
    Triangulation::from_gluings(vec![[None; 4]]).expect("valid")
}

/// Edge of the one-triangle Möbius band to layer on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MobiusEdge {
    /// The orientation-reversing interior edge.
    Interior,
    /// The boundary edge.
    Boundary,
}

/// Layer one tetrahedron on the one-triangle Möbius band.
pub fn layer_on_mobius(edge: MobiusEdge) -> Triangulation {
    match edge {
        MobiusEdge::Interior => one_tet_solid_torus(),
        MobiusEdge::Boundary => creased_cell(),
    }
}
