//! Reconstruction of the surface carried by a normal vector.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal::{is_admissible, quad_pairing, quad_sides, vertex_link, NormalVector};
use crate::slopes::{slope_from_curve, CurveSlope, Slope};
use crate::tri::{edge_index, face_verts, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    /// Boundary component of the 3-manifold.
    pub boundary: usize,
    /// Index into `SurfaceGeometry::components`.
    pub component: usize,
    /// Arc-type counts when the boundary is a one-vertex torus.
    pub arcs: Option<[u64; 3]>,
    pub length: u64,
    /// Vertex-linking curve.
    pub trivial: bool,
    pub slope: Option<Slope>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceComponent {
    pub vector: NormalVector,
    pub euler: i64,
    pub orientable: bool,
    pub genus: Option<u64>,
    pub crosscaps: Option<u64>,
    pub boundary_curves: usize,
    pub vertex_linking: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceGeometry {
    pub vector: NormalVector,
    pub components: Vec<SurfaceComponent>,
    pub euler: i64,
    pub weight: u64,
    pub boundary_length: u64,
    /// Indexed by boundary component of the 3-manifold.
    pub boundary_curves: Vec<Vec<BoundaryCurve>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub is_sphere: bool,
    pub is_disk: bool,
    pub is_annulus_or_mobius: bool,
    pub is_planar: bool,
    pub is_torus_or_klein: bool,
    pub genus: Option<u64>,
}

struct Uf {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl Uf {
    fn new(n: usize) -> Uf {
        Uf { parent: (0..n).collect(), parity: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (r, pp) = self.find(p);
        self.parent[x] = r;
        self.parity[x] ^= pp;
        (r, self.parity[x])
    }

    /// Returns false on a parity conflict.
    fn union(&mut self, x: usize, y: usize, odd: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == odd;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        self.parity[hi] = px ^ py ^ odd;
        true
    }
}

/// Tet-local point on edge `{u, w}` at position `i` counted from `u`.
type Local = (u8, u8, u64);

struct Layout<'a> {
    v: &'a NormalVector,
    pt_off: Vec<[usize; 6]>,
    piece_off: Vec<usize>,
    pieces: usize,
    points: usize,
}

impl<'a> Layout<'a> {
    fn new(v: &'a NormalVector) -> Layout<'a> {
        let n = v.tet_count();
        let mut pt_off = vec![[0usize; 6]; n];
        let mut piece_off = vec![0usize; n];
        let (mut points, mut pieces) = (0usize, 0usize);
        for a in 0..n {
            for u in 0..4u8 {
                for w in u + 1..4 {
                    pt_off[a][edge_index(u, w)] = points;
                    points += Self::weight_of(v, a, u, w) as usize;
                }
            }
            piece_off[a] = pieces;
            pieces += v.0[7 * a..7 * a + 7].iter().sum::<u64>() as usize;
        }
        Layout { v, pt_off, piece_off, pieces, points }
    }

    fn weight_of(v: &NormalVector, a: usize, u: u8, w: u8) -> u64 {
        let skip = quad_pairing(u, w);
        v.tri(a, u) + v.tri(a, w) + (0..3).filter(|&q| q != skip).map(|q| v.quad(a, q)).sum::<u64>()
    }

    fn normalize(&self, a: usize, (u, w, i): Local) -> Local {
        if u < w {
            (u, w, i)
        } else {
            (w, u, Self::weight_of(self.v, a, u, w) - 1 - i)
        }
    }

    fn point(&self, a: usize, p: Local) -> usize {
        let (u, w, i) = self.normalize(a, p);
        self.pt_off[a][edge_index(u, w)] + i as usize
    }

    fn tri_piece(&self, a: usize, v: u8, k: u64) -> usize {
        let before: u64 = (0..v).map(|x| self.v.tri(a, x)).sum();
        self.piece_off[a] + (before + k) as usize
    }

    fn quad_piece(&self, a: usize, q: usize, j: u64) -> usize {
        let before: u64 = (0..4).map(|x| self.v.tri(a, x)).sum::<u64>() + (0..q).map(|x| self.v.quad(a, x)).sum::<u64>();
        self.piece_off[a] + (before + j) as usize
    }

    /// Corners of every piece in cyclic order, with the piece's tetrahedron.
    fn corners(&self) -> Vec<(usize, Vec<Local>)> {
        let mut out = Vec::with_capacity(self.pieces);
        for a in 0..self.v.tet_count() {
            for v in 0..4u8 {
                let others: Vec<u8> = (0..4).filter(|&u| u != v).collect();
                for k in 0..self.v.tri(a, v) {
                    out.push((a, others.iter().map(|&u| (v, u, k)).collect()));
                }
            }
            for q in 0..3 {
                let ([s0, s1], [o0, o1]) = quad_sides(q);
                for j in 0..self.v.quad(a, q) {
                    let (i0, i1) = (self.v.tri(a, s0) + j, self.v.tri(a, s1) + j);
                    out.push((a, vec![(s0, o0, i0), (s0, o1, i0), (s1, o1, i1), (s1, o0, i1)]));
                }
            }
        }
        out
    }

    fn arcs_at(&self, a: usize, f: u8, v: u8) -> u64 {
        self.v.tri(a, v) + self.v.quad(a, quad_pairing(v, f))
    }

    /// Piece carrying the `k`-th arc from corner `v` in face `f`.
    fn arc_piece(&self, a: usize, f: u8, v: u8, k: u64) -> usize {
        let x = self.v.tri(a, v);
        if k < x {
            return self.tri_piece(a, v, k);
        }
        let q = quad_pairing(v, f);
        let y = self.v.quad(a, q);
        let from_v = k - x;
        let j = if quad_sides(q).0.contains(&v) { from_v } else { y - 1 - from_v };
        self.quad_piece(a, q, j)
    }
}

fn arc_direction(corners: &[Local], x: Local, y: Local) -> (Local, Local) {
    let n = corners.len();
    let ix = corners.iter().position(|&c| c == x).expect("arc endpoint");
    let iy = corners.iter().position(|&c| c == y).expect("arc endpoint");
    if (ix + 1) % n == iy {
        (x, y)
    } else {
        (y, x)
    }
}

pub fn reconstruct(v: &NormalVector, t: &Triangulation) -> Result<SurfaceGeometry> {
    if !is_admissible(v, t)? {
        return Err(Error::NotAdmissible);
    }
    let lay = Layout::new(v);
    let corners = lay.corners();
    let norm_corners: Vec<Vec<Local>> = corners.iter().map(|(a, cs)| cs.iter().map(|&c| lay.normalize(*a, c)).collect()).collect();
    let mut pieces = Uf::new(lay.pieces);
    let mut points = Uf::new(lay.points);
    let mut conflicts = Vec::new();
    let mut arc_count: Vec<(usize, u64)> = Vec::new();

    for &(a, f, b, g) in &t.interior_faces {
        let s = t.gluing(a, f).expect("interior face").perm;
        let fv = face_verts(f);
        for (i, &u) in fv.iter().enumerate() {
            for &w in &fv[i + 1..] {
                let wt = Layout::weight_of(v, a, u, w);
                for k in 0..wt {
                    points.union(lay.point(a, (u, w, k)), lay.point(b, (s[u as usize], s[w as usize], k)), false);
                }
            }
        }
        for &c in &fv {
            let others: Vec<u8> = fv.iter().copied().filter(|&x| x != c).collect();
            let sc = s[c as usize];
            for k in 0..lay.arcs_at(a, f, c) {
                let p = lay.arc_piece(a, f, c, k);
                let q = lay.arc_piece(b, g, sc, k);
                let (x, y) = (lay.normalize(a, (c, others[0], k)), lay.normalize(a, (c, others[1], k)));
                let dp = arc_direction(&norm_corners[p], x, y);
                let map = |l: Local| -> Local {
                    // Recover the from-c form, then carry across.
                    let (uu, ww) = if l.0 == c || l.1 == c { (c, if l.0 == c { l.1 } else { l.0 }) } else { unreachable!() };
                    lay.normalize(b, (s[uu as usize], s[ww as usize], k))
                };
                let mapped = (map(dp.0), map(dp.1));
                let (xq, yq) = (
                    lay.normalize(b, (sc, s[others[0] as usize], k)),
                    lay.normalize(b, (sc, s[others[1] as usize], k)),
                );
                let dq = arc_direction(&norm_corners[q], xq, yq);
                if !pieces.union(p, q, mapped == dq) {
                    conflicts.push(p);
                }
                arc_count.push((p, 1));
            }
        }
    }

    // Boundary arcs: (boundary triangle, corner slot, piece, endpoints).
    let mut barcs: Vec<(usize, usize, usize, usize, usize)> = Vec::new();
    for (ti, bt) in t.boundary_tris.iter().enumerate() {
        let (a, f) = (bt.tet, bt.face);
        for (slot, &c) in bt.corners.iter().enumerate() {
            let others: Vec<u8> = bt.corners.iter().copied().filter(|&x| x != c).collect();
            for k in 0..lay.arcs_at(a, f, c) {
                let p = lay.arc_piece(a, f, c, k);
                barcs.push((ti, slot, p, lay.point(a, (c, others[0], k)), lay.point(a, (c, others[1], k))));
                arc_count.push((p, 1));
            }
        }
    }

    // Components numbered by smallest piece.
    let mut comp_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut comp_of_piece = vec![0usize; lay.pieces];
    for p in 0..lay.pieces {
        let r = pieces.find(p).0;
        let next = comp_of_root.len();
        comp_of_piece[p] = *comp_of_root.entry(r).or_insert(next);
    }
    let nc = comp_of_root.len();
    let mut orientable = vec![true; nc];
    for p in conflicts {
        orientable[comp_of_piece[p]] = false;
    }
    let mut faces = vec![0i64; nc];
    let mut vectors = vec![NormalVector::zero(t.tet_count()); nc];
    let mut vert_sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nc];
    for (p, (a, cs)) in corners.iter().enumerate() {
        let c = comp_of_piece[p];
        faces[c] += 1;
        let col = if cs.len() == 3 {
            7 * a + cs[0].0 as usize
        } else {
            7 * a + 4 + quad_pairing(cs[0].0, cs[2].0)
        };
        vectors[c].0[col] += 1;
        for &l in cs {
            vert_sets[c].insert(points.find(lay.point(*a, l)).0);
        }
    }
    let mut edges = vec![0i64; nc];
    for (p, k) in arc_count {
        edges[comp_of_piece[p]] += k as i64;
    }

    // Boundary curves.
    let mut curve_uf = Uf::new(barcs.len());
    let mut first_at: HashMap<usize, usize> = HashMap::new();
    for (i, arc) in barcs.iter().enumerate() {
        for end in [arc.3, arc.4] {
            let r = points.find(end).0;
            match first_at.get(&r) {
                Some(&j) => {
                    curve_uf.union(i, j, false);
                }
                None => {
                    first_at.insert(r, i);
                }
            }
        }
    }
    let mut curve_arcs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..barcs.len() {
        curve_arcs.entry(curve_uf.find(i).0).or_default().push(i);
    }
    let mut boundary_curves: Vec<Vec<BoundaryCurve>> = vec![Vec::new(); t.components.len()];
    let mut bcount = vec![0usize; nc];
    for arcs in curve_arcs.values() {
        let bt0 = &t.boundary_tris[barcs[arcs[0]].0];
        let boundary = bt0.component;
        let comp = &t.components[boundary];
        let component = comp_of_piece[barcs[arcs[0]].2];
        bcount[component] += 1;
        let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for &i in arcs {
            *counts.entry((barcs[i].0, barcs[i].1)).or_default() += 1;
        }
        let sv = bt0.corner_vertex[barcs[arcs[0]].1];
        let link: BTreeSet<(usize, usize)> = comp
            .triangles
            .iter()
            .flat_map(|&ti| (0..3).filter(move |&s| t.boundary_tris[ti].corner_vertex[s] == sv).map(move |s| (ti, s)))
            .collect();
        let trivial = counts.values().all(|&c| c == 1) && counts.keys().copied().collect::<BTreeSet<_>>() == link;
        let arcs3 = comp.torus.as_ref().map(|fr| {
            let mut z = [0u64; 3];
            for s in 0..3 {
                z[fr.edge_at[0][s]] += counts.get(&(fr.tris[0], s)).copied().unwrap_or(0);
            }
            z
        });
        let slope = match (arcs3, trivial) {
            (Some(z), false) => match slope_from_curve(z, comp)? {
                CurveSlope::Slope(s) => Some(s),
                CurveSlope::Trivial => None,
            },
            _ => None,
        };
        boundary_curves[boundary].push(BoundaryCurve { boundary, component, arcs: arcs3, length: arcs.len() as u64, trivial, slope });
    }

    let links: Vec<NormalVector> = (0..t.vertices.len()).map(|c| vertex_link(t, c)).collect();
    let mut components = Vec::with_capacity(nc);
    for c in 0..nc {
        let euler = vert_sets[c].len() as i64 - edges[c] + faces[c];
        let b = bcount[c] as i64;
        let (genus, crosscaps) = if orientable[c] {
            (Some(((2 - euler - b) / 2) as u64), None)
        } else {
            (None, Some((2 - euler - b) as u64))
        };
        components.push(SurfaceComponent {
            vertex_linking: links.contains(&vectors[c]),
            vector: vectors[c].clone(),
            euler,
            orientable: orientable[c],
            genus,
            crosscaps,
            boundary_curves: bcount[c],
        });
    }
    let mut weight_roots = BTreeSet::new();
    for p in 0..lay.points {
        weight_roots.insert(points.find(p).0);
    }
    Ok(SurfaceGeometry {
        vector: v.clone(),
        euler: components.iter().map(|c| c.euler).sum(),
        components,
        weight: weight_roots.len() as u64,
        boundary_length: barcs.len() as u64,
        boundary_curves,
    })
}

impl SurfaceGeometry {
    pub fn boundary_count(&self) -> usize {
        self.boundary_curves.iter().map(|c| c.len()).sum()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn orientable(&self) -> bool {
        self.components.iter().all(|c| c.orientable)
    }

    pub fn is_vertex_linking(&self) -> bool {
        !self.components.is_empty() && self.components.iter().all(|c| c.vertex_linking)
    }

    /// Nontrivial curves on boundary component `b`.
    pub fn essential_curves(&self, b: usize) -> Vec<&BoundaryCurve> {
        self.boundary_curves.get(b).map(|cs| cs.iter().filter(|c| !c.trivial).collect()).unwrap_or_default()
    }
}

/// Topological type of a connected surface; an empty or disconnected surface gets all flags false.
pub fn classify(sg: &SurfaceGeometry) -> Classification {
    if !sg.is_connected() {
        return Classification {
            is_sphere: false,
            is_disk: false,
            is_annulus_or_mobius: false,
            is_planar: false,
            is_torus_or_klein: false,
            genus: None,
        };
    }
    let c = &sg.components[0];
    let b = c.boundary_curves;
    Classification {
        is_sphere: c.euler == 2 && b == 0,
        is_disk: c.euler == 1 && b == 1,
        is_annulus_or_mobius: c.euler == 0 && b >= 1,
        is_planar: c.orientable && c.genus == Some(0),
        is_torus_or_klein: c.euler == 0 && b == 0,
        genus: c.genus,
    }
}

pub fn boundary_curves(sg: &SurfaceGeometry) -> &[Vec<BoundaryCurve>] {
    &sg.boundary_curves
}
