//! Standard normal coordinates, matching equations, quadrilateral conditions and
//! enumeration of vertex and fundamental solutions.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bounds::{constrained_system, SlopeConstraint};
use crate::cone::{self, Exclusions};
use crate::error::{Error, Result};
use crate::tri::{face_verts, Triangulation};

/// Quad type whose two vertex pairs include {u, w}: 0 = 01|23, 1 = 02|13, 2 = 03|12.
pub fn quad_pairing(u: u8, w: u8) -> usize {
    let x = if u == 0 {
        w
    } else if w == 0 {
        u
    } else {
        6 - u - w
    };
    x as usize - 1
}

/// Vertex pairs of quad type `q`; the first pair contains vertex 0.
pub fn quad_sides(q: usize) -> ([u8; 2], [u8; 2]) {
    match q {
        0 => ([0, 1], [2, 3]),
        1 => ([0, 2], [1, 3]),
        _ => ([0, 3], [1, 2]),
    }
}

/// A normal surface in standard coordinates: per tetrahedron `[t0, t1, t2, t3, q0, q1, q2]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormalVector(pub Vec<u64>);

impl NormalVector {
    pub fn zero(tets: usize) -> NormalVector {
        NormalVector(vec![0; 7 * tets])
    }

    pub fn tet_count(&self) -> usize {
        self.0.len() / 7
    }

    pub fn tri(&self, tet: usize, v: u8) -> u64 {
        self.0[7 * tet + v as usize]
    }

    pub fn quad(&self, tet: usize, q: usize) -> u64 {
        self.0[7 * tet + 4 + q]
    }

    /// The quad type used in `tet`, if any (first one if several).
    pub fn quad_type(&self, tet: usize) -> Option<usize> {
        (0..3).find(|&q| self.quad(tet, q) > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn plus(&self, o: &NormalVector) -> NormalVector {
        NormalVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: u64) -> NormalVector {
        NormalVector(self.0.iter().map(|a| a * k).collect())
    }

    /// `self - o` when `o <= self` componentwise.
    pub fn minus(&self, o: &NormalVector) -> Option<NormalVector> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&o.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(NormalVector(out))
    }

    pub fn le(&self, o: &NormalVector) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    fn from_big(v: &[BigInt]) -> NormalVector {
        NormalVector(v.iter().map(|x| x.to_u64().expect("coordinate fits in u64")).collect())
    }

    /// Each tetrahedron has at most one nonzero quad coordinate.
    pub fn quads_ok(&self) -> bool {
        (0..self.tet_count()).all(|t| (0..3).filter(|&q| self.quad(t, q) > 0).count() <= 1)
    }

    /// First tetrahedron where the two vectors use different quad types.
    pub fn quad_conflict(&self, o: &NormalVector) -> Option<usize> {
        (0..self.tet_count()).find(|&t| {
            let used: Vec<usize> = (0..3).filter(|&q| self.quad(t, q) > 0 || o.quad(t, q) > 0).collect();
            used.len() > 1
        })
    }
}

/// Matching equations: one row per interior face pair and corner of that face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingSystem {
    pub cols: usize,
    pub rows: Vec<Vec<i64>>,
}

impl MatchingSystem {
    pub fn satisfied_by(&self, v: &NormalVector) -> bool {
        self.rows.iter().all(|r| r.iter().zip(&v.0).map(|(a, &b)| a * b as i64).sum::<i64>() == 0)
    }

    fn big_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }
}

/// Per-tetrahedron quadrilateral restriction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadCondition {
    Unrestricted,
    Only(usize),
}

impl QuadCondition {
    pub fn admits(&self, v: &NormalVector, tet: usize) -> bool {
        match self {
            QuadCondition::Unrestricted => true,
            QuadCondition::Only(q) => (0..3).all(|k| k == *q || v.quad(tet, k) == 0),
        }
    }
}

/// The quadrilateral condition satisfied by `v`.
pub fn quad_condition_of(v: &NormalVector) -> Vec<QuadCondition> {
    (0..v.tet_count())
        .map(|t| match v.quad_type(t) {
            Some(q) => QuadCondition::Only(q),
            None => QuadCondition::Unrestricted,
        })
        .collect()
}

/// Column of the arc-inducing piece: triangle at `v` and quad pairing `v` with `f`.
pub fn arc_columns(tet: usize, f: u8, v: u8) -> [usize; 2] {
    [7 * tet + v as usize, 7 * tet + 4 + quad_pairing(v, f)]
}

pub fn matching_system(t: &Triangulation) -> MatchingSystem {
    let cols = 7 * t.tet_count();
    let mut rows = Vec::new();
    for &(a, f, b, _g) in &t.interior_faces {
        let gl = t.gluing(a, f).expect("interior face");
        for v in face_verts(f) {
            let mut row = vec![0i64; cols];
            for c in arc_columns(a, f, v) {
                row[c] += 1;
            }
            for c in arc_columns(b, gl.face, gl.perm[v as usize]) {
                row[c] -= 1;
            }
            rows.push(row);
        }
    }
    MatchingSystem { cols, rows }
}

fn check_len(v: &NormalVector, t: &Triangulation) -> Result<()> {
    if v.0.len() != 7 * t.tet_count() {
        return Err(Error::LengthMismatch { expected: 7 * t.tet_count(), got: v.0.len() });
    }
    Ok(())
}

pub fn is_admissible(v: &NormalVector, t: &Triangulation) -> Result<bool> {
    check_len(v, t)?;
    Ok(v.quads_ok() && matching_system(t).satisfied_by(v))
}

pub fn haken_sum(u: &NormalVector, v: &NormalVector) -> Result<NormalVector> {
    if u.0.len() != v.0.len() {
        return Err(Error::LengthMismatch { expected: u.0.len(), got: v.0.len() });
    }
    if let Some(t) = u.quad_conflict(v) {
        return Err(Error::QuadIncompatible(t));
    }
    Ok(u.plus(v))
}

/// Number of points in which `v` meets each edge of tetrahedron `tet`, by edge index.
pub fn edge_weights(v: &NormalVector, tet: usize) -> [u64; 6] {
    let mut out = [0u64; 6];
    for u in 0..4u8 {
        for w in u + 1..4 {
            let skip = quad_pairing(u, w);
            out[crate::tri::edge_index(u, w)] =
                v.tri(tet, u) + v.tri(tet, w) + (0..3).filter(|&q| q != skip).map(|q| v.quad(tet, q)).sum::<u64>();
        }
    }
    out
}

/// The pieces in one tetrahedron meeting its edges in `w` points, using at most one quad type.
pub fn pieces_from_edge_weights(w: [u64; 6]) -> Option<[u64; 7]> {
    let e = crate::tri::edge_index;
    let top = *w.iter().max()?;
    for q in 0..3 {
        for y in 0..=top {
            let mut c = [0i64; 6];
            for u in 0..4u8 {
                for x in u + 1..4 {
                    let sub = if quad_pairing(u, x) == q { 0 } else { y };
                    c[e(u, x)] = w[e(u, x)] as i64 - sub as i64;
                }
            }
            let t = |u: u8, a: u8, b: u8| c[e(u.min(a), u.max(a))] + c[e(u.min(b), u.max(b))] - c[e(a.min(b), a.max(b))];
            let twice = [t(0, 1, 2), t(1, 0, 2), t(2, 0, 1), t(3, 0, 1)];
            if twice.iter().any(|&x| x < 0 || x % 2 != 0) {
                continue;
            }
            let tris = twice.map(|x| (x / 2) as u64);
            let mut out = [tris[0], tris[1], tris[2], tris[3], 0, 0, 0];
            out[4 + q] = y;
            let v = NormalVector(out.to_vec());
            if edge_weights(&v, 0) == w {
                return Some(out);
            }
        }
    }
    None
}

/// Vertex-linking vector of vertex class `c`.
pub fn vertex_link(t: &Triangulation, c: usize) -> NormalVector {
    let mut v = NormalVector::zero(t.tet_count());
    for a in 0..t.tet_count() {
        for x in 0..4u8 {
            if t.vertex_class(a, x) == c {
                v.0[7 * a + x as usize] += 1;
            }
        }
    }
    v
}

/// support(g) is contained in support(f).
pub fn in_carrier(g: &NormalVector, f: &NormalVector) -> bool {
    g.0.iter().zip(&f.0).all(|(a, b)| *a == 0 || *b > 0)
}

/// Caps for the cone computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest intermediate ray set in double description.
    pub max_rays: usize,
    /// Largest number of lattice candidates examined for the Hilbert basis.
    pub max_candidates: usize,
    /// Total ray pairs examined in double description.
    #[serde(default = "default_pairs")]
    pub max_pairs: u64,
}

fn default_pairs() -> u64 {
    50_000_000
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { max_rays: 200_000, max_candidates: 2_000_000, max_pairs: default_pairs() }
    }
}

impl Budget {
    pub fn scaled(&self, k: usize) -> Budget {
        Budget {
            max_rays: self.max_rays.saturating_mul(k),
            max_candidates: self.max_candidates.saturating_mul(k),
            max_pairs: self.max_pairs.saturating_mul(k as u64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeBasis {
    pub fundamentals: Vec<NormalVector>,
    /// Parallel to `fundamentals`.
    pub vertex_flags: Vec<bool>,
    pub constraint: Option<SlopeConstraint>,
    /// Canonical hash of the triangulation these were computed from.
    pub triangulation: String,
}

impl ConeBasis {
    pub fn vertices(&self) -> Vec<&NormalVector> {
        self.fundamentals.iter().zip(&self.vertex_flags).filter(|(_, &f)| f).map(|(v, _)| v).collect()
    }

    pub fn len(&self) -> usize {
        self.fundamentals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fundamentals.is_empty()
    }
}

/// Enumeration stopped by its budget; carries what was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BudgetExceeded {
    pub partial: ConeBasis,
    /// Number of admissible faces left unexplored.
    pub unexplored_faces: usize,
    pub reason: String,
}

impl From<BudgetExceeded> for Error {
    fn from(b: BudgetExceeded) -> Error {
        Error::ResourceBudgetExceeded(b.reason)
    }
}

fn system_for(t: &Triangulation, constraint: Option<&SlopeConstraint>) -> Result<MatchingSystem> {
    match constraint {
        None => Ok(matching_system(t)),
        Some(c) => constrained_system(t, c),
    }
}

fn exclusions(t: &Triangulation) -> Exclusions {
    Exclusions { groups: (0..t.tet_count()).map(|a| [7 * a + 4, 7 * a + 5, 7 * a + 6]).collect() }
}

fn vertex_rays(t: &Triangulation, sys: &MatchingSystem, budget: &Budget) -> Option<Vec<Vec<BigInt>>> {
    cone::extreme_rays(&sys.big_rows(), sys.cols, &exclusions(t), budget.max_rays, budget.max_pairs)
}

/// Admissible vertex solutions, as primitive integer vectors in lexicographic order.
pub fn enumerate_vertex_solutions(t: &Triangulation, constraint: Option<&SlopeConstraint>) -> Result<ConeBasis> {
    enumerate_vertex_solutions_with(t, constraint, &Budget::default())
}

pub fn enumerate_vertex_solutions_with(t: &Triangulation, constraint: Option<&SlopeConstraint>, budget: &Budget) -> Result<ConeBasis> {
    let sys = system_for(t, constraint)?;
    let rays = vertex_rays(t, &sys, budget).ok_or_else(|| Error::ResourceBudgetExceeded("double description ray cap".into()))?;
    let fundamentals: Vec<NormalVector> = rays.iter().map(|r| NormalVector::from_big(r)).collect();
    Ok(ConeBasis {
        vertex_flags: vec![true; fundamentals.len()],
        fundamentals,
        constraint: constraint.cloned(),
        triangulation: t.canonical_hash(),
    })
}

/// Admissible fundamental solutions (the admissible part of the Hilbert basis).
pub fn enumerate_fundamental_solutions(
    t: &Triangulation,
    constraint: Option<&SlopeConstraint>,
    budget: &Budget,
) -> std::result::Result<ConeBasis, BudgetExceeded> {
    let hash = t.canonical_hash();
    let empty = |reason: &str| BudgetExceeded {
        partial: ConeBasis { fundamentals: vec![], vertex_flags: vec![], constraint: constraint.cloned(), triangulation: hash.clone() },
        unexplored_faces: 0,
        reason: reason.to_string(),
    };
    let sys = system_for(t, constraint).map_err(|e| empty(&e.to_string()))?;
    fundamentals_of_system(t, &sys, constraint, budget)
}

/// Admissible fundamental solutions of `t` subject to the rows of `sys` (which must
/// include the matching equations of `t`).
pub fn fundamentals_of_system(
    t: &Triangulation,
    sys: &MatchingSystem,
    constraint: Option<&SlopeConstraint>,
    budget: &Budget,
) -> std::result::Result<ConeBasis, BudgetExceeded> {
    let hash = t.canonical_hash();
    let empty = |reason: &str| BudgetExceeded {
        partial: ConeBasis { fundamentals: vec![], vertex_flags: vec![], constraint: constraint.cloned(), triangulation: hash.clone() },
        unexplored_faces: 0,
        reason: reason.to_string(),
    };
    let rays = vertex_rays(t, sys, budget).ok_or_else(|| empty("double description ray cap"))?;
    let out = cone::hilbert_basis(&sys.big_rows(), sys.cols, &rays, &exclusions(t), budget.max_candidates);
    let ray_set: HashSet<&Vec<BigInt>> = rays.iter().collect();
    let vertex_flags: Vec<bool> = out.elements.iter().map(|e| ray_set.contains(e)).collect();
    let fundamentals: Vec<NormalVector> = out.elements.iter().map(|e| NormalVector::from_big(e)).collect();
    let basis = ConeBasis { fundamentals, vertex_flags, constraint: constraint.cloned(), triangulation: hash };
    if out.unexplored.is_empty() {
        Ok(basis)
    } else {
        Err(BudgetExceeded {
            partial: basis,
            unexplored_faces: out.unexplored.len(),
            reason: format!("Hilbert basis candidate cap ({} of {} faces unexplored)", out.unexplored.len(), out.cliques),
        })
    }
}

/// A decomposition of a vector over basis elements.
pub type Decomposition = Vec<(NormalVector, u64)>;

/// Decompose `v` as a nonnegative integer combination of quad-compatible basis elements.
/// Returns `Ok(None)` when no decomposition exists.
pub fn decompose_over(v: &NormalVector, basis: &[NormalVector], max_nodes: usize) -> Result<Option<Decomposition>> {
    let mut order: Vec<usize> = (0..basis.len()).filter(|&i| !basis[i].is_zero() && basis[i].le(v) && in_carrier(&basis[i], v)).collect();
    order.sort_by(|&a, &b| basis[b].sum().cmp(&basis[a].sum()).then(basis[a].cmp(&basis[b])));
    let mut failed: HashSet<NormalVector> = HashSet::new();
    let mut nodes = 0usize;
    let mut picks: Vec<usize> = Vec::new();

    fn go(
        rest: &NormalVector,
        order: &[usize],
        basis: &[NormalVector],
        failed: &mut HashSet<NormalVector>,
        nodes: &mut usize,
        max_nodes: usize,
        picks: &mut Vec<usize>,
    ) -> Result<bool> {
        if rest.is_zero() {
            return Ok(true);
        }
        if failed.contains(rest) {
            return Ok(false);
        }
        *nodes += 1;
        if *nodes > max_nodes {
            return Err(Error::DecompositionBudgetExceeded);
        }
        // Some summand must cover the first nonzero coordinate.
        let i = rest.0.iter().position(|&x| x > 0).expect("nonzero");
        for &b in order {
            if basis[b].0[i] == 0 {
                continue;
            }
            if let Some(next) = rest.minus(&basis[b]) {
                picks.push(b);
                if go(&next, order, basis, failed, nodes, max_nodes, picks)? {
                    return Ok(true);
                }
                picks.pop();
            }
        }
        failed.insert(rest.clone());
        Ok(false)
    }

    if !go(v, &order, basis, &mut failed, &mut nodes, max_nodes, &mut picks)? {
        return Ok(None);
    }
    picks.sort();
    let mut out: Decomposition = Vec::new();
    for b in picks {
        match out.last_mut() {
            Some((x, k)) if *x == basis[b] => *k += 1,
            _ => out.push((basis[b].clone(), 1)),
        }
    }
    Ok(Some(out))
}
