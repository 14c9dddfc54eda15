//! Layered solid tori, triangulated Dehn fillings and drillings, and the transfer of
//! normal surfaces between a manifold and its fillings.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use num_bigint::BigInt;

use crate::cone::rank;
use crate::normal::{
    decompose_over, edge_weights, fundamentals_of_system, matching_system, pieces_from_edge_weights, Budget, ConeBasis, Decomposition, NormalVector,
};
use crate::slopes::{arcs_from_weights, slope_from_curve, CurveSlope, Slope};
use crate::surface::reconstruct;
use crate::tri::{edge_index, face_verts, one_tet_solid_torus, Perm, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LstBase {
    /// The one-tetrahedron solid torus.
    OneTet,
    /// Layers on a boundary torus closed by folding the last tetrahedron's two free faces.
    Folded,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayeredSolidTorus {
    #[serde(serialize_with = "ser_table")]
    pub triangulation: Triangulation,
    /// Frame positions flipped, in build order.
    pub flips: Vec<usize>,
    /// Meridian intersections with the boundary edges, by frame position.
    pub meridian_weights: [u64; 3],
    /// Boundary edge class of the solid torus at each frame position.
    pub edge_map: [usize; 3],
    pub base: LstBase,
    pub meridian_disk: NormalVector,
    /// The meridian in the solid torus' own boundary frame.
    pub meridian: Slope,
}

fn ser_table<S: serde::Serializer>(t: &Triangulation, s: S) -> std::result::Result<S::Ok, S::Error> {
    t.table().serialize(s)
}

fn flip_value(w: &[u64; 3], k: usize) -> u64 {
    let (a, b) = (w[(k + 1) % 3], w[(k + 2) % 3]);
    if w[k] == a + b {
        a.abs_diff(b)
    } else {
        a + b
    }
}

fn sorted(w: &[u64; 3]) -> [u64; 3] {
    let mut s = *w;
    s.sort();
    s
}

/// Layers applied to a one-vertex torus boundary, tracking meridian weights on every new edge.
struct Layering {
    tri: Triangulation,
    /// (tet, edge) representative at each frame position.
    pos: [(usize, usize); 3],
    weights: [u64; 3],
    /// Representatives of every edge met so far, with the meridian weight.
    tracked: Vec<((usize, usize), u64)>,
    flips: Vec<usize>,
}

impl Layering {
    fn new(tri: Triangulation, pos: [(usize, usize); 3], weights: [u64; 3]) -> Layering {
        let tracked = (0..3).map(|k| (pos[k], weights[k])).collect();
        Layering { tri, pos, weights, tracked, flips: vec![] }
    }

    fn class_at(&self, k: usize) -> usize {
        self.tri.edge_class(self.pos[k].0, self.pos[k].1)
    }

    fn flip(&mut self, k: usize) -> Result<()> {
        let next = self.tri.layer_on_edge(self.class_at(k))?;
        let n = next.tet_count() - 1;
        self.tri = next;
        self.weights[k] = flip_value(&self.weights, k);
        self.pos[k] = (n, edge_index(2, 3));
        self.tracked.push((self.pos[k], self.weights[k]));
        self.flips.push(k);
        Ok(())
    }

    fn weight_of_class(&self, t: &Triangulation, class: usize) -> u64 {
        self.tracked.iter().find(|((a, e), _)| t.edge_class(*a, *e) == class).map(|x| x.1).expect("tracked edge")
    }

    /// Meridian disk pieces in tetrahedra `range` of `t`, from the tracked edge weights.
    fn disk(&self, t: &Triangulation, range: Range<usize>) -> Result<NormalVector> {
        let mut v = NormalVector::zero(t.tet_count());
        for a in range {
            let mut w = [0u64; 6];
            for (e, x) in w.iter_mut().enumerate() {
                *x = self.weight_of_class(t, t.edge_class(a, e));
            }
            let p = pieces_from_edge_weights(w).ok_or(Error::NotMeridional)?;
            v.0[7 * a..7 * a + 7].copy_from_slice(&p);
        }
        Ok(v)
    }
}

/// Fold the two free faces of the last tetrahedron, fixing the weight-2 edge and
/// identifying the two weight-1 edges. The last new edge must be one of the latter.
fn fold_last(l: &Layering) -> Result<Triangulation> {
    let t = &l.tri;
    let n = t.tet_count() - 1;
    let k = (0..3).find(|&k| l.weights[k] == 2).ok_or(Error::NotMeridional)?;
    let (i, j) = ((k + 1) % 3, (k + 2) % 3);
    let corner_of = |face: u8| -> Result<[u8; 3]> {
        let vs = face_verts(face);
        let mut out = [u8::MAX; 3];
        for &c in &vs {
            let o: Vec<u8> = vs.iter().copied().filter(|&x| x != c).collect();
            let class = t.edge_class(n, edge_index(o[0], o[1]));
            let pos = (0..3).find(|&p| l.class_at(p) == class).ok_or(Error::NotMeridional)?;
            out[pos] = c;
        }
        Ok(out)
    };
    let (a, b) = (corner_of(0)?, corner_of(1)?);
    let mut perm: Perm = [0; 4];
    perm[0] = 1;
    perm[a[k] as usize] = b[k];
    perm[a[i] as usize] = b[j];
    perm[a[j] as usize] = b[i];
    t.with_gluings(&[(n, 0, n, 1, perm)])
}

/// Frame weights descended to a base case: returns the base weights and the
/// flip positions to apply, in build order.
fn descend(target: [u64; 3]) -> ([u64; 3], Vec<usize>) {
    let mut cur = target;
    let mut down = Vec::new();
    loop {
        let s = sorted(&cur);
        let k = if s == [1, 2, 3] {
            break;
        } else if s == [1, 1, 2] {
            (0..3).find(|&k| cur[k] == 1).expect("a one")
        } else if s == [0, 1, 1] {
            (0..3).find(|&k| cur[k] == 0).expect("a zero")
        } else {
            (0..3).max_by_key(|&k| (cur[k], std::cmp::Reverse(k))).expect("three")
        };
        cur[k] = flip_value(&cur, k);
        down.push(k);
    }
    down.reverse();
    (cur, down)
}

/// Minimal layered solid torus whose meridian meets the edges of `boundary` as `meridian` does.
pub fn build_lst(boundary: &crate::tri::BoundaryComponent, meridian: &Slope) -> Result<LayeredSolidTorus> {
    boundary.torus()?;
    let target = meridian.weights();
    let (base, flips) = descend(target);
    let one = one_tet_solid_torus();
    let base_disk = NormalVector(vec![1, 0, 0, 1, 1, 0, 0]);
    let w6 = edge_weights(&base_disk, 0);
    let comp = &one.components[0];
    let mut pos = [(0usize, 0usize); 3];
    for k in 0..3 {
        let e = comp
            .edges
            .iter()
            .map(|e| one.edges[e.class].rep)
            .find(|&(_, e)| w6[e] == base[k])
            .ok_or(Error::NotMeridional)?;
        pos[k] = e;
    }
    let mut l = Layering::new(one, pos, base);
    for &k in &flips {
        l.flip(k)?;
    }
    debug_assert_eq!(l.weights, target);
    let t = l.tri.clone();
    let disk = l.disk(&t, 0..t.tet_count())?;
    let edge_map = [l.class_at(0), l.class_at(1), l.class_at(2)];
    let meridian = own_slope(&t, 0, &edge_map, target)?;
    Ok(LayeredSolidTorus { triangulation: t, flips, meridian_weights: target, edge_map, base: LstBase::OneTet, meridian_disk: disk, meridian })
}

fn own_slope(t: &Triangulation, boundary: usize, edge_map: &[usize; 3], w: [u64; 3]) -> Result<Slope> {
    let comp = t.component(boundary)?;
    let mut local = [0u64; 3];
    for k in 0..3 {
        local[comp.local_edge(edge_map[k]).ok_or(Error::NotOneVertexTorus(boundary))?] = w[k];
    }
    match slope_from_curve(arcs_from_weights(local), comp)? {
        CurveSlope::Slope(s) => Ok(s),
        CurveSlope::Trivial => Err(Error::TrivialSlope),
    }
}

/// Express a slope on boundary `s.boundary` of `from` in the frame of boundary `to_boundary`
/// of `to`, matching edges through shared (tetrahedron, edge) representatives.
pub fn translate_slope(from: &Triangulation, to: &Triangulation, s: &Slope, to_boundary: usize) -> Result<Slope> {
    let fc = from.component(s.boundary)?;
    let tc = to.component(to_boundary)?;
    tc.torus()?;
    let w = s.weights();
    let mut local = [0u64; 3];
    for k in 0..3 {
        let (a, e) = from.edges[fc.edges[k].class].rep;
        if a >= to.tet_count() {
            return Err(Error::BoundaryMismatch);
        }
        let pos = tc.local_edge(to.edge_class(a, e)).ok_or(Error::BoundaryMismatch)?;
        local[pos] = w[k];
    }
    match slope_from_curve(arcs_from_weights(local), tc)? {
        CurveSlope::Slope(x) => Ok(x),
        CurveSlope::Trivial => Err(Error::TrivialSlope),
    }
}

/// Boundary component of `to` containing boundary face `(tet, face)`.
fn component_of_face(to: &Triangulation, tet: usize, face: u8) -> Option<usize> {
    to.boundary_tris.iter().find(|bt| bt.tet == tet && bt.face == face).map(|bt| bt.component)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingRecord {
    /// Boundary id in the base manifold.
    pub boundary: usize,
    /// Filling slope in the base manifold's frame.
    pub slope: Slope,
    pub tets: Range<usize>,
    pub flips: Vec<usize>,
    pub base: LstBase,
    /// Meridian disk coordinates on `tets`.
    pub disk: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FilledManifold {
    #[serde(serialize_with = "ser_table")]
    pub triangulation: Triangulation,
    #[serde(serialize_with = "ser_table")]
    pub base: Triangulation,
    pub base_hash: String,
    pub fillings: Vec<FillingRecord>,
}

impl FilledManifold {
    pub fn base_tets(&self) -> usize {
        self.base.tet_count()
    }

    /// Boundary id in the filled triangulation of base boundary `b` (None if filled).
    pub fn boundary_in_filled(&self, b: usize) -> Option<usize> {
        let bt = &self.base.boundary_tris[*self.base.components.get(b)?.triangles.first()?];
        component_of_face(&self.triangulation, bt.tet, bt.face)
    }

    /// Base boundary id of filled boundary `b`.
    pub fn boundary_in_base(&self, b: usize) -> Option<usize> {
        let bt = &self.triangulation.boundary_tris[*self.triangulation.components.get(b)?.triangles.first()?];
        component_of_face(&self.base, bt.tet, bt.face)
    }

    /// Fill a further boundary component, given by its base id.
    pub fn then_fill(&self, base_boundary: usize, alpha: &Slope) -> Result<FilledManifold> {
        let b = self.boundary_in_filled(base_boundary).ok_or(Error::NoSuchBoundary(base_boundary))?;
        let here = translate_slope(&self.base, &self.triangulation, alpha, b)?;
        let (tri, mut rec) = fill_once(&self.triangulation, b, &here)?;
        rec.boundary = base_boundary;
        rec.slope = *alpha;
        let mut fillings = self.fillings.clone();
        fillings.push(rec);
        Ok(FilledManifold { triangulation: tri, base: self.base.clone(), base_hash: self.base_hash.clone(), fillings })
    }
}

fn fill_once(m: &Triangulation, b: usize, alpha: &Slope) -> Result<(Triangulation, FillingRecord)> {
    let comp = m.component(b)?;
    comp.torus()?;
    if alpha.boundary != b {
        return Err(Error::BoundaryMismatch);
    }
    let pos = [0, 1, 2].map(|k| m.edges[comp.edges[k].class].rep);
    let n0 = m.tet_count();
    let mut l = Layering::new(m.clone(), pos, alpha.weights());
    // Reach weights (1, 2, 3), then flip the 3 so the last new edge meets the meridian once.
    loop {
        let s = sorted(&l.weights);
        let k = if s == [1, 2, 3] {
            break;
        } else if s == [1, 1, 2] {
            (0..3).find(|&k| l.weights[k] == 1).expect("a one")
        } else if s == [0, 1, 1] {
            (0..3).find(|&k| l.weights[k] == 0).expect("a zero")
        } else {
            (0..3).max_by_key(|&k| (l.weights[k], std::cmp::Reverse(k))).expect("three")
        };
        l.flip(k)?;
    }
    l.flip((0..3).find(|&k| l.weights[k] == 3).expect("a three"))?;
    let filled = fold_last(&l)?;
    let range = n0..filled.tet_count();
    let disk = l.disk(&filled, range.clone())?;
    let rec = FillingRecord {
        boundary: b,
        slope: *alpha,
        tets: range.clone(),
        flips: l.flips.clone(),
        base: LstBase::Folded,
        disk: disk.0[7 * range.start..7 * range.end].to_vec(),
    };
    Ok((filled, rec))
}

/// Triangulated Dehn filling of boundary `b` along `alpha`.
pub fn dehn_fill(m: &Triangulation, b: usize, alpha: &Slope) -> Result<FilledManifold> {
    let (tri, rec) = fill_once(m, b, alpha)?;
    Ok(FilledManifold { triangulation: tri, base: m.clone(), base_hash: m.canonical_hash(), fillings: vec![rec] })
}

/// Extend a surface of the base manifold by meridian disks in every filling.
pub fn cap_off(v: &NormalVector, filled: &FilledManifold) -> Result<NormalVector> {
    let sg = reconstruct(v, &filled.base)?;
    let total = filled.triangulation.tet_count();
    let mut out = NormalVector::zero(total);
    out.0[..v.0.len()].copy_from_slice(&v.0);
    for rec in &filled.fillings {
        let curves = &sg.boundary_curves[rec.boundary];
        for c in curves {
            if c.trivial || c.slope != Some(rec.slope) {
                return Err(Error::NotMeridional);
            }
        }
        let k = curves.len() as u64;
        for (i, &x) in rec.disk.iter().enumerate() {
            out.0[7 * rec.tets.start + i] += k * x;
        }
    }
    Ok(out)
}

/// Split a filled-manifold vector into its base part and disk multiplicities per filling.
pub fn restrict(w: &NormalVector, filled: &FilledManifold) -> Option<(NormalVector, Vec<u64>)> {
    let mut caps = Vec::with_capacity(filled.fillings.len());
    for rec in &filled.fillings {
        let part = &w.0[7 * rec.tets.start..7 * rec.tets.end];
        let lead = rec.disk.iter().position(|&x| x > 0)?;
        let k = part[lead] / rec.disk[lead];
        if part.iter().zip(&rec.disk).any(|(&p, &d)| p != k * d) {
            return None;
        }
        caps.push(k);
    }
    Some((NormalVector(w.0[..7 * filled.base_tets()].to_vec()), caps))
}

/// Fundamentals of the filled triangulation whose part in every filling is a multiple of
/// the meridian disk. The meridian disk spans an extreme ray of each filling's own solution
/// cone (checked here), so these surfaces form a face of the filled solution cone and the
/// fundamentals lying in it are the Hilbert basis of that face.
pub fn enumerate_capped_fundamentals(filled: &FilledManifold, budget: &Budget) -> Result<ConeBasis> {
    let t = &filled.triangulation;
    let mut sys = matching_system(t);
    let internal: Vec<Vec<i64>> = sys.rows.clone();
    for rec in &filled.fillings {
        let r = &rec.tets;
        let cols = 7 * r.start..7 * r.end;
        let supp: Vec<usize> = cols.clone().filter(|&c| rec.disk[c - cols.start] > 0).collect();
        let inside: Vec<Vec<BigInt>> = internal
            .iter()
            .filter(|row| row.iter().enumerate().all(|(c, &x)| x == 0 || cols.contains(&c)))
            .map(|row| supp.iter().map(|&c| BigInt::from(row[c])).collect())
            .collect();
        if rank(&inside) + 1 != supp.len() {
            return Err(Error::NotCapped);
        }
        let lead = supp[0];
        let dl = rec.disk[lead - cols.start] as i64;
        for c in cols.clone().filter(|&c| c != lead) {
            let mut row = vec![0i64; sys.cols];
            row[c] = dl;
            row[lead] = -(rec.disk[c - cols.start] as i64);
            sys.rows.push(row);
        }
    }
    fundamentals_of_system(t, &sys, None, budget).map_err(Error::from)
}

/// Decompose the capped surface over `basis` (fundamentals of the filled triangulation) and
/// restrict every summand back to the base manifold.
pub fn rewrite_decomposition(p: &NormalVector, filled: &FilledManifold, basis: &[NormalVector], max_nodes: usize) -> Result<Decomposition> {
    let capped = cap_off(p, filled)?;
    let dec = decompose_over(&capped, basis, max_nodes)?.ok_or(Error::Unrepresentable)?;
    let mut out: Decomposition = Vec::with_capacity(dec.len());
    let mut sum = NormalVector::zero(filled.base_tets());
    for (g, n) in dec {
        let (r, _) = restrict(&g, filled).ok_or(Error::NotCapped)?;
        sum = sum.plus(&r.scaled(n));
        out.push((r, n));
    }
    assert_eq!(&sum, p, "rewritten summands must add up to the surface");
    Ok(out)
}

/// Corners of the pentagon whose fan triangulation, crossed with a circle, gives the drilling block.
/// Corners 0, 1, 4 lie over the old vertex and 2, 3 over the new one; sides 1-2 and 4-3 are glued.
const FAN: [[usize; 3]; 3] = [[0, 1, 2], [0, 2, 3], [0, 3, 4]];
/// Position of each pentagon corner in the order used to split prisms.
const CORNER_ORDER: [usize; 5] = [0, 1, 3, 4, 2];

type Point = (usize, u8);

fn block_tets() -> Vec<[Point; 4]> {
    let mut out = Vec::with_capacity(9);
    for tri in FAN {
        let mut c = tri;
        c.sort_by_key(|&p| CORNER_ORDER[p]);
        let [a, b, cc] = c;
        out.push([(a, 0), (b, 0), (cc, 0), (cc, 1)]);
        out.push([(a, 0), (b, 0), (b, 1), (cc, 1)]);
        out.push([(a, 0), (a, 1), (b, 1), (cc, 1)]);
    }
    out
}

/// Label of a face's corner after the side and circle identifications that apply to that face.
fn face_key(points: &[Point]) -> Vec<Point> {
    let horizontal = points.iter().all(|p| p.1 == points[0].1);
    let on_x = points.iter().all(|p| p.0 == 3 || p.0 == 4);
    let mut k: Vec<Point> = points
        .iter()
        .map(|&(c, l)| {
            let c = if on_x { [0, 1, 2, 2, 1][c] } else { c };
            (c, if horizontal { 0 } else { l })
        })
        .collect();
    k.sort();
    k
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DrilledManifold {
    #[serde(serialize_with = "ser_table")]
    pub triangulation: Triangulation,
    /// Layers added on the drilled boundary before attaching the block.
    pub layers: usize,
    pub block: Range<usize>,
    /// The boundary component parallel to the original one.
    pub boundary: usize,
    /// The new boundary component around the drilled curve.
    pub drilled: usize,
    /// Meridian of the drilled curve, on `drilled`.
    pub mu_star: Slope,
    /// The circle direction on `drilled`.
    pub lambda_star: Slope,
    /// The drilled slope, as it appears on `boundary`.
    pub mu: Slope,
    /// A slope on `boundary` meeting `mu` once.
    pub longitude: Slope,
}

/// Remove a neighbourhood of a pushed-in copy of `mu` on boundary `b`.
pub fn dehn_drill(m: &Triangulation, b: usize, mu: &Slope) -> Result<DrilledManifold> {
    let comp = m.component(b)?;
    comp.torus()?;
    if mu.boundary != b {
        return Err(Error::BoundaryMismatch);
    }
    let pos = [0, 1, 2].map(|k| m.edges[comp.edges[k].class].rep);
    let mut l = Layering::new(m.clone(), pos, mu.weights());
    while !l.weights.contains(&0) {
        let k = (0..3).max_by_key(|&k| (l.weights[k], std::cmp::Reverse(k))).expect("three");
        l.flip(k)?;
    }
    let layered = l.tri.clone();
    let kmu = (0..3).find(|&k| l.weights[k] == 0).expect("zero weight");
    let e_mu = l.pos[kmu];
    let n0 = layered.tet_count();

    let tets = block_tets();
    let mut faces: std::collections::BTreeMap<Vec<Point>, Vec<(usize, u8)>> = Default::default();
    for (i, t) in tets.iter().enumerate() {
        for f in 0..4u8 {
            let pts: Vec<Point> = (0..4).filter(|&v| v != f as usize).map(|v| t[v]).collect();
            faces.entry(face_key(&pts)).or_default().push((i, f));
        }
    }
    let local_key = |i: usize, f: u8, v: usize| -> Point {
        let pts: Vec<Point> = (0..4).filter(|&x| x != f as usize).map(|x| tets[i][x]).collect();
        let horizontal = pts.iter().all(|p| p.1 == pts[0].1);
        let on_x = pts.iter().all(|p| p.0 == 3 || p.0 == 4);
        let (c, l) = tets[i][v];
        (if on_x { [0, 1, 2, 2, 1][c] } else { c }, if horizontal { 0 } else { l })
    };
    let mut glue = layered.gluings().to_vec();
    glue.extend(std::iter::repeat([None; 4]).take(9));
    let mut free: Vec<(usize, u8)> = Vec::new();
    for members in faces.values() {
        match members.as_slice() {
            [(i, f), (j, g)] => {
                let mut perm: Perm = [0; 4];
                perm[*f as usize] = *g;
                for v in (0..4).filter(|&v| v != *f as usize) {
                    let key = local_key(*i, *f, v);
                    perm[v] = (0..4u8).find(|&w| w != *g && local_key(*j, *g, w as usize) == key).expect("matching corner");
                }
                glue[n0 + i][*f as usize] = Some(crate::tri::Gluing { tet: n0 + j, face: *g, perm });
                glue[n0 + j][*g as usize] = Some(crate::tri::Gluing { tet: n0 + i, face: *f, perm: crate::tri::perm_inverse(&perm) });
            }
            [(i, f)] => free.push((n0 + i, *f)),
            _ => unreachable!("a face is shared by at most two tetrahedra"),
        }
    }
    let pre = Triangulation::from_gluings(glue)?;
    // The two free triangles over the side 4-0.
    let side: Vec<(usize, u8)> = free
        .iter()
        .copied()
        .filter(|&(a, f)| (0..4).filter(|&v| v != f as usize).all(|v| matches!(tets[a - n0][v].0, 0 | 4)))
        .collect();
    let bcomp = layered.component(b)?;
    let targets: Vec<(usize, u8)> = bcomp.triangles.iter().map(|&ti| (layered.boundary_tris[ti].tet, layered.boundary_tris[ti].face)).collect();
    let vertical = block_edge(&tets, n0, (0, 0), (0, 1));
    for order in [[0usize, 1], [1, 0]] {
        for p1 in crate::tri::all_perms() {
            for p2 in crate::tri::all_perms() {
                let (s1, s2) = (side[0], side[1]);
                let (t1, t2) = (targets[order[0]], targets[order[1]]);
                if p1[s1.1 as usize] != t1.1 || p2[s2.1 as usize] != t2.1 {
                    continue;
                }
                let Ok(out) = pre.with_gluings(&[(s1.0, s1.1, t1.0, t1.1, p1), (s2.0, s2.1, t2.0, t2.1, p2)]) else {
                    continue;
                };
                let good = out.is_valid()
                    && out.orientable
                    && out.vertices.iter().all(|v| v.manifold_link())
                    && out.components.len() == m.components.len() + 1
                    && out.vertices.len() == m.vertices.len() + 1
                    && out.edge_class(vertical.0, vertical.1) == out.edge_class(e_mu.0, e_mu.1)
                    && out.components.iter().all(|c| c.torus.is_some());
                if !good {
                    continue;
                }
                return drilled_record(out, &tets, n0, l.flips.len(), e_mu);
            }
        }
    }
    Err(Error::MalformedTable("no admissible attachment of the drilling block".into()))
}

/// (tetrahedron, edge index) of the block edge joining two points.
fn block_edge(tets: &[[Point; 4]], n0: usize, p: Point, q: Point) -> (usize, usize) {
    let i = tets.iter().position(|t| t.contains(&p) && t.contains(&q)).expect("edge within a tetrahedron");
    let a = tets[i].iter().position(|&x| x == p).expect("p") as u8;
    let b = tets[i].iter().position(|&x| x == q).expect("q") as u8;
    (n0 + i, edge_index(a.min(b), a.max(b)))
}

fn drilled_record(
    out: Triangulation,
    tets: &[[Point; 4]],
    n0: usize,
    layers: usize,
    e_mu: (usize, usize),
) -> Result<DrilledManifold> {
    let class_of = |p: Point, q: Point| -> usize {
        let (a, e) = block_edge(tets, n0, p, q);
        out.edge_class(a, e)
    };
    let comp_with = |class: usize| out.components.iter().find(|c| c.local_edge(class).is_some()).map(|c| c.id);
    let c_edge = class_of((2, 0), (3, 0));
    let v_edge = class_of((2, 0), (2, 1));
    let b_edge = class_of((0, 0), (1, 0));
    let mu_class = out.edge_class(e_mu.0, e_mu.1);
    let drilled = comp_with(c_edge).ok_or(Error::NotOneVertexTorus(usize::MAX))?;
    let boundary = comp_with(b_edge).ok_or(Error::NotOneVertexTorus(usize::MAX))?;
    let edge_slope = |comp: usize, class: usize| -> Result<Slope> {
        let c = out.component(comp)?;
        Slope::edge(c, c.local_edge(class).ok_or(Error::NotOneVertexTorus(comp))?)
    };
    let mu_star = edge_slope(drilled, c_edge)?;
    let lambda_star = edge_slope(drilled, v_edge)?;
    let mu = edge_slope(boundary, mu_class)?;
    let longitude = edge_slope(boundary, b_edge)?;
    Ok(DrilledManifold { block: n0..n0 + 9, layers, boundary, drilled, mu_star, lambda_star, mu, longitude, triangulation: out })
}
