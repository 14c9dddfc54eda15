//! Boundary operator, slope-constrained cones, average-length constants and the
//! 0-efficiency audit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal::{arc_columns, enumerate_vertex_solutions_with, matching_system, Budget, MatchingSystem, NormalVector};
use crate::slopes::Slope;
use crate::surface::{classify, reconstruct};
use crate::tri::Triangulation;

/// Rows of the normal boundary operator: one per (boundary triangle, corner slot).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryMap {
    pub rows: Vec<(usize, usize)>,
    pub matrix: Vec<Vec<u8>>,
}

impl BoundaryMap {
    pub fn apply(&self, v: &NormalVector) -> Vec<u64> {
        self.matrix.iter().map(|r| r.iter().zip(&v.0).map(|(&a, &b)| a as u64 * b).sum()).collect()
    }
}

pub fn normal_boundary_map(t: &Triangulation) -> BoundaryMap {
    let cols = 7 * t.tet_count();
    let mut rows = Vec::new();
    let mut matrix = Vec::new();
    for (i, bt) in t.boundary_tris.iter().enumerate() {
        for (s, &c) in bt.corners.iter().enumerate() {
            let mut row = vec![0u8; cols];
            for col in arc_columns(bt.tet, bt.face, c) {
                row[col] = 1;
            }
            rows.push((i, s));
            matrix.push(row);
        }
    }
    BoundaryMap { rows, matrix }
}

/// Surfaces meeting boundary `boundary` only in `slope` (or not at all):
/// arc type `zero` vanishes and `s * arc[i] = r * arc[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeConstraint {
    pub boundary: usize,
    pub slope: Slope,
    pub zero: usize,
    pub pair: [usize; 2],
    pub r: u64,
    pub s: u64,
}

impl SlopeConstraint {
    pub fn new(slope: &Slope) -> SlopeConstraint {
        let z = slope.arcs;
        let zero = (0..3).find(|&k| z[k] == 0).expect("essential slopes have a zero arc coordinate");
        let pair: Vec<usize> = (0..3).filter(|&k| k != zero).collect();
        SlopeConstraint { boundary: slope.boundary, slope: *slope, zero, pair: [pair[0], pair[1]], r: z[pair[0]], s: z[pair[1]] }
    }
}

/// Columns counting arcs of each type on the canonical triangle of a one-vertex torus.
fn arc_type_columns(t: &Triangulation, boundary: usize) -> Result<[Vec<usize>; 3]> {
    let comp = t.component(boundary)?;
    let frame = comp.torus()?;
    let bt = &t.boundary_tris[frame.tris[0]];
    let mut out: [Vec<usize>; 3] = Default::default();
    for s in 0..3 {
        out[frame.edge_at[0][s]].extend(arc_columns(bt.tet, bt.face, bt.corners[s]));
    }
    Ok(out)
}

pub fn constrained_system(t: &Triangulation, c: &SlopeConstraint) -> Result<MatchingSystem> {
    let cols_by_type = arc_type_columns(t, c.boundary)?;
    let mut sys = matching_system(t);
    let mut zero = vec![0i64; sys.cols];
    for &col in &cols_by_type[c.zero] {
        zero[col] += 1;
    }
    let mut ratio = vec![0i64; sys.cols];
    for &col in &cols_by_type[c.pair[0]] {
        ratio[col] += c.s as i64;
    }
    for &col in &cols_by_type[c.pair[1]] {
        ratio[col] -= c.r as i64;
    }
    sys.rows.push(zero);
    sys.rows.push(ratio);
    Ok(sys)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AleVariant {
    Basic,
    Link1,
    SpanningCollection,
    BoundaryConditioned,
}

impl AleVariant {
    fn with_annuli(self) -> bool {
        matches!(self, AleVariant::Link1 | AleVariant::BoundaryConditioned)
    }
}

impl std::str::FromStr for AleVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<AleVariant> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "basic" => Ok(AleVariant::Basic),
            "link1" => Ok(AleVariant::Link1),
            "spanningcollection" | "spanning" => Ok(AleVariant::SpanningCollection),
            "boundaryconditioned" => Ok(AleVariant::BoundaryConditioned),
            _ => Err(Error::Parse(format!("unknown ALE variant '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AleWitness {
    pub vector: NormalVector,
    pub length: u64,
    pub euler: i64,
}

/// An annulus or Mobius band term; `curves` is its number of boundary curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnulusTerm {
    pub vector: NormalVector,
    pub length: u64,
    pub curves: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AleConstant {
    #[serde(with = "crate::ratio")]
    pub value: BigRational,
    pub variant: AleVariant,
    pub witnesses: Vec<AleWitness>,
    pub annulus_terms: Vec<AnnulusTerm>,
}

/// Maximum of `L(dF)/-chi(F)` over negative-Euler elements, and of `L(dA)/curves(A)`
/// over annuli and Mobius bands for the variants that include them. Zero if nothing qualifies.
pub fn ale_constant(t: &Triangulation, collection: &[NormalVector], variant: AleVariant) -> Result<AleConstant> {
    let mut witnesses = Vec::new();
    let mut annulus_terms = Vec::new();
    let mut value = BigRational::zero();
    for v in collection {
        let sg = reconstruct(v, t)?;
        if sg.euler < 0 {
            let r = BigRational::new(BigInt::from(sg.boundary_length), BigInt::from(-sg.euler));
            value = value.max(r);
            witnesses.push(AleWitness { vector: v.clone(), length: sg.boundary_length, euler: sg.euler });
        } else if variant.with_annuli() && classify(&sg).is_annulus_or_mobius {
            let curves = sg.boundary_count() as u64;
            value = value.max(BigRational::new(BigInt::from(sg.boundary_length), BigInt::from(curves)));
            annulus_terms.push(AnnulusTerm { vector: v.clone(), length: sg.boundary_length, curves });
        }
    }
    Ok(AleConstant { value, variant, witnesses, annulus_terms })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub nonlinking_spheres: Vec<NormalVector>,
    pub nonlinking_disks: Vec<NormalVector>,
    /// The non-vertex-linking disks whose boundary is essential on a torus boundary.
    pub compressing_disks: Vec<NormalVector>,
}

impl AuditReport {
    pub fn is_empty(&self) -> bool {
        self.nonlinking_spheres.is_empty() && self.nonlinking_disks.is_empty()
    }
}

/// Non-vertex-linking normal spheres and disks among the vertex solutions.
pub fn audit_zero_efficiency(t: &Triangulation) -> Result<AuditReport> {
    audit_zero_efficiency_with(t, &Budget::default())
}

pub fn audit_zero_efficiency_with(t: &Triangulation, budget: &Budget) -> Result<AuditReport> {
    let verts = enumerate_vertex_solutions_with(t, None, budget)?;
    let mut report = AuditReport::default();
    for v in &verts.fundamentals {
        // Twice a one-sided vertex solution may be the sphere or disk.
        for k in [1u64, 2] {
            let w = v.scaled(k);
            let sg = reconstruct(&w, t)?;
            if !sg.is_connected() || sg.is_vertex_linking() {
                continue;
            }
            let c = classify(&sg);
            if c.is_sphere {
                report.nonlinking_spheres.push(w);
                break;
            }
            if c.is_disk {
                let torus_boundary = sg.boundary_curves.iter().enumerate().any(|(b, cs)| {
                    t.components[b].one_vertex_torus && cs.iter().any(|c| !c.trivial)
                });
                if torus_boundary {
                    report.compressing_disks.push(w.clone());
                }
                report.nonlinking_disks.push(w);
                break;
            }
        }
    }
    Ok(report)
}
