//! Decision drivers over the kernel: disk and annulus scans, essentiality rules, the staged
//! planar-surface search over triangulated fillings, punctured disks with a given slope,
//! longitudes via drilling, and slope sets.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bounds::{ale_constant, audit_zero_efficiency_with, AleVariant, SlopeConstraint};
use crate::error::{Error, Result};
use crate::filling::{cap_off, dehn_drill, dehn_fill, enumerate_capped_fundamentals, restrict, translate_slope, FilledManifold};
use crate::normal::{enumerate_fundamental_solutions, is_admissible, Budget, NormalVector};
use crate::slopes::{enumerate_short_slopes, Slope};
use crate::surface::{classify, reconstruct, SurfaceGeometry};
use crate::tri::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Essential,
    NotEssential,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialityVerdict {
    pub verdict: Verdict,
    pub rules_fired: Vec<String>,
    pub oracle_id: String,
}

/// Decides essentiality where the built-in rules cannot.
pub trait Oracle: Sync {
    fn id(&self) -> String;

    /// Oracles that cannot be called from concurrent branches return true.
    fn serial(&self) -> bool {
        false
    }

    fn judge(&self, t: &Triangulation, sg: &SurfaceGeometry) -> Verdict;
}

/// Answers `Unknown` to everything.
#[derive(Clone, Copy, Debug, Default)]
pub struct DefaultOracle;

impl Oracle for DefaultOracle {
    fn id(&self) -> String {
        "default".into()
    }

    fn judge(&self, _: &Triangulation, _: &SurfaceGeometry) -> Verdict {
        Verdict::Unknown
    }
}

/// Declares a connected orientable surface essential when it has boundary and every
/// boundary curve is nontrivial on a torus component. This is an assumption the user opts
/// into (it holds, for instance, in irreducible boundary-irreducible anannular manifolds);
/// reports name the oracle so conclusions can be traced back to it.
#[derive(Clone, Copy, Debug, Default)]
pub struct TrustNontrivialOracle;

impl Oracle for TrustNontrivialOracle {
    fn id(&self) -> String {
        "trust-nontrivial".into()
    }

    fn judge(&self, t: &Triangulation, sg: &SurfaceGeometry) -> Verdict {
        let curves: Vec<_> = sg.boundary_curves.iter().enumerate().flat_map(|(b, cs)| cs.iter().map(move |c| (b, c))).collect();
        if !sg.is_connected() || !sg.orientable() || curves.is_empty() {
            return Verdict::Unknown;
        }
        if curves.iter().all(|(b, c)| !c.trivial && t.components[*b].one_vertex_torus) {
            Verdict::Essential
        } else {
            Verdict::Unknown
        }
    }
}

pub fn oracle_by_id(id: &str) -> Option<Box<dyn Oracle>> {
    match id {
        "default" => Some(Box::new(DefaultOracle)),
        "trust-nontrivial" => Some(Box::new(TrustNontrivialOracle)),
        _ => None,
    }
}

/// Built-in sound rules first, then the oracle.
pub fn decide_essential(v: &NormalVector, t: &Triangulation, oracle: &dyn Oracle) -> EssentialityVerdict {
    let sg = match reconstruct(v, t) {
        Ok(sg) => sg,
        Err(_) => return EssentialityVerdict { verdict: Verdict::Unknown, rules_fired: vec!["not-admissible".into()], oracle_id: oracle.id() },
    };
    judge_geometry(&sg, t, oracle)
}

fn judge_geometry(sg: &SurfaceGeometry, t: &Triangulation, oracle: &dyn Oracle) -> EssentialityVerdict {
    let mut rules = Vec::new();
    let finish = |verdict, rules: Vec<String>| EssentialityVerdict { verdict, rules_fired: rules, oracle_id: oracle.id() };
    if !sg.is_connected() {
        rules.push("disconnected".into());
        return finish(Verdict::Unknown, rules);
    }
    if sg.is_vertex_linking() {
        rules.push("vertex-linking".into());
        return finish(Verdict::NotEssential, rules);
    }
    let c = classify(sg);
    let curves: Vec<(usize, bool)> = sg.boundary_curves.iter().enumerate().flat_map(|(b, cs)| cs.iter().map(move |c| (b, c.trivial))).collect();
    if c.is_disk {
        if curves.iter().any(|&(b, trivial)| !trivial && t.components[b].one_vertex_torus) {
            rules.push("compressing-disk-on-torus-boundary".into());
            return finish(Verdict::Essential, rules);
        }
        if curves.iter().all(|&(_, trivial)| trivial) {
            rules.push("disk-with-trivial-boundary".into());
            return finish(Verdict::NotEssential, rules);
        }
    } else if curves.iter().any(|&(_, trivial)| trivial) {
        // An innermost trivial curve, pushed into the surface, bounds a disk in the manifold.
        rules.push("trivial-boundary-compressible".into());
        return finish(Verdict::NotEssential, rules);
    }
    if c.is_sphere {
        rules.push("non-vertex-linking-sphere".into());
    }
    if c.is_annulus_or_mobius {
        rules.push("annulus".into());
    }
    if c.is_torus_or_klein {
        rules.push("torus".into());
    }
    rules.push(format!("oracle:{}", oracle.id()));
    finish(oracle.judge(t, sg), rules)
}

/// Limits for the drivers; every field scales under `scaled`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub cone: Budget,
    /// Filled triangulations built over the whole search.
    pub max_fillings: usize,
    /// Candidate slopes tried per boundary component at one node.
    pub max_slopes: usize,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget { cone: Budget::default(), max_fillings: 64, max_slopes: 32 }
    }
}

impl SearchBudget {
    pub fn scaled(&self, k: usize) -> SearchBudget {
        SearchBudget {
            cone: self.cone.scaled(k),
            max_fillings: self.max_fillings.saturating_mul(k),
            max_slopes: self.max_slopes.saturating_mul(k),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetUsage {
    pub enumerations: usize,
    pub fundamentals: usize,
    pub fillings: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InconclusiveReason {
    NotMinimalVertex,
    PrimeDecompositionRequired,
    AnnulusSplitUnsupported,
    OracleUnknown,
    CertificateNotCapped,
    BudgetExceeded(String),
}

/// A surface found by a search, with its geometry in the manifold searched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub vector: NormalVector,
    pub geometry: SurfaceGeometry,
    /// Canonical hash of the triangulation `vector` lives in.
    pub triangulation: String,
    pub verdict: EssentialityVerdict,
    /// The fundamental this came from when it lives in a filling, or the capped surface
    /// when the search ran in a drilled manifold: (triangulation hash, vector).
    pub witness: Option<(String, NormalVector)>,
}

impl Certificate {
    /// Re-checks admissibility and geometry against `t`.
    pub fn verify(&self, t: &Triangulation) -> Result<bool> {
        if t.canonical_hash() != self.triangulation || !is_admissible(&self.vector, t)? {
            return Ok(false);
        }
        Ok(reconstruct(&self.vector, t)? == self.geometry)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Found(Box<Certificate>),
    NotFound,
    Inconclusive(Vec<InconclusiveReason>),
}

impl Outcome {
    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn is_conclusive(&self) -> bool {
        !matches!(self, Outcome::Inconclusive(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Found(_) => "Found",
            Outcome::NotFound => "NotFound",
            Outcome::Inconclusive(_) => "Inconclusive",
        }
    }
}

/// One node of the filling tree: the fillings applied and what was found there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingNode {
    pub depth: usize,
    /// Slopes filled, as `p/q@Bk` in the base manifold's frames.
    pub path: Vec<String>,
    pub collection: usize,
    #[serde(with = "crate::ratio::option")]
    pub constant: Option<BigRational>,
    pub planar_members: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub outcome: Outcome,
    /// Sizes of the collections examined, stage by stage.
    pub stages: Vec<usize>,
    pub filling_tree: Vec<FillingNode>,
    /// Surfaces the oracle could not settle.
    pub candidates: Vec<Certificate>,
    pub usage: BudgetUsage,
    pub oracle: String,
}

struct Run<'a> {
    oracle: &'a dyn Oracle,
    budget: SearchBudget,
    usage: BudgetUsage,
    reasons: Vec<InconclusiveReason>,
    tree: Vec<FillingNode>,
    stages: Vec<usize>,
    candidates: Vec<Certificate>,
}

impl<'a> Run<'a> {
    fn new(oracle: &'a dyn Oracle, budget: &SearchBudget) -> Run<'a> {
        Run { oracle, budget: *budget, usage: BudgetUsage::default(), reasons: vec![], tree: vec![], stages: vec![], candidates: vec![] }
    }

    fn flag(&mut self, r: InconclusiveReason) {
        if !self.reasons.contains(&r) {
            self.reasons.push(r);
        }
    }

    /// Fundamentals, possibly partial; a partial list flags the run.
    fn fundamentals(&mut self, t: &Triangulation, constraint: Option<&SlopeConstraint>) -> Result<(Vec<NormalVector>, bool)> {
        self.usage.enumerations += 1;
        let (basis, complete) = match enumerate_fundamental_solutions(t, constraint, &self.budget.cone) {
            Ok(b) => (b, true),
            Err(e) => {
                self.flag(InconclusiveReason::BudgetExceeded(e.reason.clone()));
                (e.partial, false)
            }
        };
        self.usage.fundamentals += basis.len();
        Ok((basis.fundamentals, complete))
    }

    /// Stage collection: (surface in the base, fundamental it came from).
    fn stage_members(&mut self, base: &Triangulation, node: Option<&FilledManifold>) -> Result<Vec<(NormalVector, NormalVector)>> {
        let Some(f) = node else {
            let (fund, _) = self.fundamentals(base, None)?;
            return Ok(fund.into_iter().map(|v| (v.clone(), v)).collect());
        };
        self.usage.enumerations += 1;
        let capped = match enumerate_capped_fundamentals(f, &self.budget.cone) {
            Ok(b) => b.fundamentals,
            Err(Error::ResourceBudgetExceeded(r)) => {
                self.flag(InconclusiveReason::BudgetExceeded(r));
                return Ok(vec![]);
            }
            Err(e) => return Err(e),
        };
        self.usage.fundamentals += capped.len();
        let mut out = Vec::with_capacity(capped.len());
        for w in capped {
            let (v, _) = restrict(&w, f).ok_or(Error::NotCapped)?;
            assert_eq!(cap_off(&v, f)?, w, "stage members must cap off to fundamentals of the filling");
            out.push((v, w));
        }
        Ok(out)
    }

    fn fill(&mut self, node: Option<&FilledManifold>, base: &Triangulation, b: usize, alpha: &Slope) -> Result<Option<FilledManifold>> {
        if self.usage.fillings >= self.budget.max_fillings {
            self.flag(InconclusiveReason::BudgetExceeded("filling cap".into()));
            return Ok(None);
        }
        self.usage.fillings += 1;
        Ok(Some(match node {
            Some(f) => f.then_fill(b, alpha)?,
            None => dehn_fill(base, b, alpha)?,
        }))
    }

    fn report(self, outcome: Outcome) -> SearchReport {
        let outcome = match outcome {
            Outcome::Inconclusive(mut r) => {
                for x in self.reasons {
                    if !r.contains(&x) {
                        r.push(x);
                    }
                }
                Outcome::Inconclusive(r)
            }
            o => o,
        };
        SearchReport { outcome, stages: self.stages, filling_tree: self.tree, candidates: self.candidates, usage: self.usage, oracle: self.oracle.id() }
    }

    /// Outcome once a scan found nothing: NotFound only if nothing was flagged.
    fn settle(&self) -> Outcome {
        if self.reasons.is_empty() {
            Outcome::NotFound
        } else {
            Outcome::Inconclusive(self.reasons.clone())
        }
    }
}

fn certificate(v: &NormalVector, t: &Triangulation, sg: SurfaceGeometry, verdict: EssentialityVerdict) -> Certificate {
    Certificate { vector: v.clone(), geometry: sg, triangulation: t.canonical_hash(), verdict, witness: None }
}

/// Restricts a surface of a filling to the base manifold and certifies it there.
fn certify_in_base(w: &NormalVector, node: Option<&FilledManifold>, base: &Triangulation, oracle: &dyn Oracle) -> Result<Option<Certificate>> {
    let Some(f) = node else {
        let sg = reconstruct(w, base)?;
        let verdict = judge_geometry(&sg, base, oracle);
        return Ok(Some(certificate(w, base, sg, verdict)));
    };
    let Some((v, _)) = restrict(w, f) else { return Ok(None) };
    let sg = reconstruct(&v, base)?;
    let verdict = judge_geometry(&sg, base, oracle);
    let mut c = certificate(&v, base, sg, verdict);
    c.witness = Some((f.triangulation.canonical_hash(), w.clone()));
    Ok(Some(c))
}

/// A disk among the fundamentals whose boundary is essential in `b`.
pub fn find_essential_disk(t: &Triangulation, b: usize, oracle: &dyn Oracle, budget: &SearchBudget) -> Result<SearchReport> {
    t.component(b)?;
    let mut run = Run::new(oracle, budget);
    let (fund, _) = run.fundamentals(t, None)?;
    run.stages.push(fund.len());
    for v in &fund {
        let sg = reconstruct(v, t)?;
        if !classify(&sg).is_disk || sg.essential_curves(b).is_empty() {
            continue;
        }
        let verdict = judge_geometry(&sg, t, oracle);
        match verdict.verdict {
            Verdict::Essential => {
                let c = certificate(v, t, sg, verdict);
                return Ok(run.report(Outcome::Found(Box::new(c))));
            }
            Verdict::Unknown => run.flag(InconclusiveReason::OracleUnknown),
            Verdict::NotEssential => {}
        }
    }
    let out = run.settle();
    Ok(run.report(out))
}

/// Is this an annulus with one nontrivial curve on each of two distinct boundary components?
fn spanning_annulus(sg: &SurfaceGeometry) -> Option<(usize, usize)> {
    let c = classify(sg);
    if !c.is_annulus_or_mobius || !sg.orientable() || sg.boundary_count() != 2 {
        return None;
    }
    let ends: Vec<usize> = sg.boundary_curves.iter().enumerate().flat_map(|(b, cs)| cs.iter().filter(|c| !c.trivial).map(move |_| b)).collect();
    match ends[..] {
        [x, y] if x != y => Some((x, y)),
        _ => None,
    }
}

/// A fundamental annulus joining boundary components `b` and `b2`.
pub fn find_essential_annulus(t: &Triangulation, b: usize, b2: usize, oracle: &dyn Oracle, budget: &SearchBudget) -> Result<SearchReport> {
    t.component(b)?;
    let mut run = Run::new(oracle, budget);
    if b == b2 || b2 >= t.components.len() {
        return Ok(run.report(Outcome::NotFound));
    }
    let (fund, _) = run.fundamentals(t, None)?;
    run.stages.push(fund.len());
    for v in &fund {
        let sg = reconstruct(v, t)?;
        let Some((x, y)) = spanning_annulus(&sg) else { continue };
        if (x, y) != (b.min(b2), b.max(b2)) {
            continue;
        }
        let verdict = judge_geometry(&sg, t, oracle);
        match verdict.verdict {
            Verdict::Essential => return Ok(run.report(Outcome::Found(Box::new(certificate(v, t, sg, verdict))))),
            Verdict::Unknown => {
                run.flag(InconclusiveReason::OracleUnknown);
                run.candidates.push(certificate(v, t, sg, verdict));
            }
            Verdict::NotEssential => {}
        }
    }
    let out = run.settle();
    Ok(run.report(out))
}

/// Minimal-vertex and 0-efficiency preconditions; `Err` carries the early report outcome.
fn preconditions(t: &Triangulation, run: &mut Run) -> Result<std::result::Result<(), Outcome>> {
    if !t.is_minimal_vertex() {
        return Ok(Err(Outcome::Inconclusive(vec![InconclusiveReason::NotMinimalVertex])));
    }
    let audit = match audit_zero_efficiency_with(t, &run.budget.cone) {
        Ok(a) => a,
        Err(Error::ResourceBudgetExceeded(r)) => return Ok(Err(Outcome::Inconclusive(vec![InconclusiveReason::BudgetExceeded(r)]))),
        Err(e) => return Err(e),
    };
    run.usage.enumerations += 1;
    if let Some(d) = audit.compressing_disks.first() {
        let sg = reconstruct(d, t)?;
        let verdict = judge_geometry(&sg, t, run.oracle);
        return Ok(Err(Outcome::Found(Box::new(certificate(d, t, sg, verdict)))));
    }
    if !audit.is_empty() {
        return Ok(Err(Outcome::Inconclusive(vec![InconclusiveReason::PrimeDecompositionRequired])));
    }
    Ok(Ok(()))
}

fn max_ratio(t: &Triangulation, members: &[NormalVector]) -> Result<BigRational> {
    Ok(ale_constant(t, members, AleVariant::Basic)?.value)
}

fn path_of(node: Option<&FilledManifold>) -> Vec<String> {
    node.map(|f| f.fillings.iter().map(|r| r.slope.to_string()).collect()).unwrap_or_default()
}

/// Essential planar surfaces via fundamentals and iterated triangulated fillings.
pub fn search_planar(t: &Triangulation, oracle: &dyn Oracle, budget: &SearchBudget) -> Result<SearchReport> {
    let mut run = Run::new(oracle, budget);
    if let Err(o) = preconditions(t, &mut run)? {
        if o.is_found() {
            run.stages.push(0);
        }
        return Ok(run.report(o));
    }
    let n = t.components.len();
    let mut level: Vec<(Option<FilledManifold>, Vec<NormalVector>)> = vec![(None, Vec::new())];
    let mut seen: HashSet<String> = HashSet::new();
    for depth in 0..n.max(1) {
        let mut next_level = Vec::new();
        let mut stage_size = 0;
        for (node, _) in &level {
            let members = run.stage_members(t, node.as_ref())?;
            stage_size += members.len();
            let mut planar = 0;
            for (v, w) in &members {
                let sg = reconstruct(v, t)?;
                if !classify(&sg).is_planar || sg.boundary_count() == 0 {
                    continue;
                }
                planar += 1;
                let verdict = judge_geometry(&sg, t, oracle);
                match verdict.verdict {
                    Verdict::Essential => {
                        let mut c = certificate(v, t, sg, verdict);
                        if let Some(f) = node {
                            c.witness = Some((f.triangulation.canonical_hash(), w.clone()));
                        }
                        run.tree.push(FillingNode { depth, path: path_of(node.as_ref()), collection: members.len(), constant: None, planar_members: planar });
                        run.stages.push(stage_size);
                        return Ok(run.report(Outcome::Found(Box::new(c))));
                    }
                    Verdict::Unknown => run.flag(InconclusiveReason::OracleUnknown),
                    Verdict::NotEssential => {}
                }
            }
            let base_members: Vec<NormalVector> = members.iter().map(|(v, _)| v.clone()).collect();
            let constant = max_ratio(t, &base_members)?;
            run.tree.push(FillingNode { depth, path: path_of(node.as_ref()), collection: members.len(), constant: Some(constant.clone()), planar_members: planar });
            if depth + 1 >= n {
                continue;
            }
            let filled: HashSet<usize> = node.as_ref().map(|f| f.fillings.iter().map(|r| r.boundary).collect()).unwrap_or_default();
            for b in (0..n).filter(|b| !filled.contains(b)) {
                if t.components[b].torus.is_none() {
                    continue;
                }
                let slopes = enumerate_short_slopes(&t.components[b], &constant)?;
                if slopes.len() > run.budget.max_slopes {
                    run.flag(InconclusiveReason::BudgetExceeded("slope cap".into()));
                }
                for alpha in slopes.iter().take(run.budget.max_slopes) {
                    let Some(child) = run.fill(node.as_ref(), t, b, alpha)? else { break };
                    if seen.insert(child.triangulation.canonical_hash()) {
                        next_level.push((Some(child), Vec::new()));
                    }
                }
            }
        }
        run.stages.push(stage_size);
        if next_level.is_empty() {
            break;
        }
        level = next_level;
    }
    let out = run.settle();
    Ok(run.report(out))
}

/// A punctured disk whose distinguished boundary has slope `gamma` on boundary `b`.
pub fn search_punctured_disk(t: &Triangulation, b: usize, gamma: &Slope, oracle: &dyn Oracle, budget: &SearchBudget) -> Result<SearchReport> {
    t.component(b)?.torus()?;
    if gamma.boundary != b {
        return Err(Error::BoundaryMismatch);
    }
    let mut run = Run::new(oracle, budget);
    if let Err(o) = preconditions_for_disk(t, &mut run)? {
        return Ok(run.report(o));
    }
    let out = punctured(&mut run, t, None, b, gamma, 0)?;
    Ok(run.report(out))
}

/// Like `preconditions`, but compressing disks are left for the scan, which is decisive for them.
fn preconditions_for_disk(t: &Triangulation, run: &mut Run) -> Result<std::result::Result<(), Outcome>> {
    if !t.is_minimal_vertex() {
        return Ok(Err(Outcome::Inconclusive(vec![InconclusiveReason::NotMinimalVertex])));
    }
    let audit = match audit_zero_efficiency_with(t, &run.budget.cone) {
        Ok(a) => a,
        Err(Error::ResourceBudgetExceeded(r)) => return Ok(Err(Outcome::Inconclusive(vec![InconclusiveReason::BudgetExceeded(r)]))),
        Err(e) => return Err(e),
    };
    run.usage.enumerations += 1;
    let trivial_disks = audit.nonlinking_disks.len() > audit.compressing_disks.len();
    if !audit.nonlinking_spheres.is_empty() || trivial_disks {
        return Ok(Err(Outcome::Inconclusive(vec![InconclusiveReason::PrimeDecompositionRequired])));
    }
    Ok(Ok(()))
}

fn punctured(run: &mut Run, base: &Triangulation, node: Option<&FilledManifold>, b: usize, gamma: &Slope, depth: usize) -> Result<Outcome> {
    let cur = node.map_or(base, |f| &f.triangulation);
    let (bc, g) = match node {
        None => (b, *gamma),
        Some(f) => {
            let bc = f.boundary_in_filled(b).ok_or(Error::NoSuchBoundary(b))?;
            (bc, translate_slope(base, cur, gamma, bc)?)
        }
    };
    let constraint = SlopeConstraint::new(&g);
    let (fund, _) = run.fundamentals(cur, Some(&constraint))?;
    run.stages.push(fund.len());
    let mut planar = 0;
    let mut annulus_unknown = false;
    let mut split = false;
    for w in &fund {
        let sg = reconstruct(w, cur)?;
        let c = classify(&sg);
        let is_disk = c.is_disk && sg.essential_curves(bc).iter().any(|x| x.slope == Some(g));
        let annulus = spanning_annulus(&sg);
        if !is_disk && annulus.is_none() {
            continue;
        }
        planar += 1;
        let verdict = judge_geometry(&sg, cur, run.oracle);
        let touches = annulus.map_or(true, |(x, y)| x == bc || y == bc);
        match verdict.verdict {
            Verdict::Essential if touches => match certify_in_base(w, node, base, run.oracle)? {
                Some(cert) => {
                    run.tree.push(FillingNode { depth, path: path_of(node), collection: fund.len(), constant: None, planar_members: planar });
                    return Ok(Outcome::Found(Box::new(cert)));
                }
                None => run.flag(InconclusiveReason::CertificateNotCapped),
            },
            Verdict::Essential => split = true,
            Verdict::Unknown => {
                if annulus.is_some() {
                    annulus_unknown = true;
                } else {
                    run.flag(InconclusiveReason::OracleUnknown);
                }
                if let Some(c) = certify_in_base(w, node, base, run.oracle)? {
                    run.candidates.push(c);
                }
            }
            Verdict::NotEssential => {}
        }
    }
    let n = cur.components.len();
    if n == 1 {
        run.tree.push(FillingNode { depth, path: path_of(node), collection: fund.len(), constant: None, planar_members: planar });
        return Ok(run.settle());
    }
    if split {
        run.flag(InconclusiveReason::AnnulusSplitUnsupported);
        run.tree.push(FillingNode { depth, path: path_of(node), collection: fund.len(), constant: None, planar_members: planar });
        return Ok(Outcome::Inconclusive(vec![InconclusiveReason::AnnulusSplitUnsupported]));
    }
    if annulus_unknown {
        run.flag(InconclusiveReason::OracleUnknown);
    }
    // Anannular branch: fill the other components along short slopes and recurse.
    let constant = ale_constant(cur, &fund, AleVariant::Link1)?.value;
    run.tree.push(FillingNode { depth, path: path_of(node), collection: fund.len(), constant: Some(constant.clone()), planar_members: planar });
    for other in (0..n).filter(|&k| k != bc) {
        let Some(ob) = node.map_or(Some(other), |f| f.boundary_in_base(other)) else { continue };
        let comp = &cur.components[other];
        if comp.torus.is_none() {
            continue;
        }
        let slopes = enumerate_short_slopes(comp, &constant)?;
        if slopes.len() > run.budget.max_slopes {
            run.flag(InconclusiveReason::BudgetExceeded("slope cap".into()));
        }
        for alpha in slopes.iter().take(run.budget.max_slopes) {
            let alpha_base = match node {
                None => *alpha,
                Some(_) => translate_slope(cur, base, alpha, ob)?,
            };
            let Some(child) = run.fill(node, base, ob, &alpha_base)? else { break };
            if let Outcome::Found(c) = punctured(run, base, Some(&child), b, gamma, depth + 1)? {
                return Ok(Outcome::Found(c));
            }
        }
    }
    Ok(run.settle())
}

/// Whether a longitude of `mu` on `b` bounds a punctured disk, by drilling `mu`.
pub fn search_longitude(t: &Triangulation, b: usize, mu: &Slope, oracle: &dyn Oracle, budget: &SearchBudget) -> Result<SearchReport> {
    let drilled = dehn_drill(t, b, mu)?;
    let dt = &drilled.triangulation;
    let mut report = search_punctured_disk(dt, drilled.boundary, &drilled.longitude, oracle, budget)?;
    if let Outcome::Found(cert) = &mut report.outcome {
        // Cap the curves on the drilled component with meridian disks of the drilled curve.
        if let Ok(filled) = dehn_fill(dt, drilled.drilled, &drilled.mu_star) {
            if let Ok(capped) = cap_off(&cert.vector, &filled) {
                cert.witness = Some((filled.triangulation.canonical_hash(), capped));
            }
        }
    }
    Ok(report)
}

/// Slopes on `b` represented symbolically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlopeFamily {
    /// Every slope on the boundary.
    AllSlopes { boundary: usize },
    /// `base` twisted any number of times along `twist`.
    Twist { base: Slope, twist: Slope },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeSet {
    pub slopes: Vec<Slope>,
    pub families: Vec<SlopeFamily>,
    pub complete: bool,
    pub rules: Vec<String>,
    pub usage: BudgetUsage,
}

/// Slopes on `b` bounding essential punctured disks.
pub fn slope_set(t: &Triangulation, b: usize, oracle: &dyn Oracle, budget: &SearchBudget) -> Result<SlopeSet> {
    t.component(b)?.torus()?;
    let mut run = Run::new(oracle, budget);
    let mut out = SlopeSet { slopes: vec![], families: vec![], complete: true, rules: vec![], usage: BudgetUsage::default() };
    slope_set_at(&mut run, t, None, b, &mut out)?;
    out.slopes.sort_by_key(|s| (s.length(), s.p, s.q));
    out.slopes.dedup();
    let mut seen = HashSet::new();
    out.rules.retain(|r| seen.insert(r.clone()));
    if !run.reasons.is_empty() {
        out.complete = false;
    }
    out.usage = run.usage;
    Ok(out)
}

fn slope_set_at(run: &mut Run, base: &Triangulation, node: Option<&FilledManifold>, b: usize, out: &mut SlopeSet) -> Result<()> {
    let cur = node.map_or(base, |f| &f.triangulation);
    let bc = match node {
        None => b,
        Some(f) => f.boundary_in_filled(b).ok_or(Error::NoSuchBoundary(b))?,
    };
    let (fund, _) = run.fundamentals(cur, None)?;
    let mut anannular = true;
    for w in &fund {
        let sg = reconstruct(w, cur)?;
        let c = classify(&sg);
        if c.is_disk {
            let Some(s) = sg.essential_curves(bc).first().and_then(|x| x.slope) else { continue };
            if judge_geometry(&sg, cur, run.oracle).verdict == Verdict::Essential {
                let s = match node {
                    None => s,
                    Some(_) => translate_slope(cur, base, &s, b)?,
                };
                out.slopes.push(s);
                out.rules.push(format!("disk with slope {s}"));
            }
            continue;
        }
        let Some((x, y)) = spanning_annulus(&sg) else { continue };
        match judge_geometry(&sg, cur, run.oracle).verdict {
            Verdict::NotEssential => {}
            Verdict::Unknown => {
                anannular = false;
                out.complete = false;
                out.rules.push(format!("annulus between B{x} and B{y} of unknown essentiality"));
            }
            Verdict::Essential => {
                anannular = false;
                out.complete = false;
                if x == bc || y == bc {
                    let bb = node.map_or(Some(b), |f| f.boundary_in_base(bc)).unwrap_or(b);
                    out.families.push(SlopeFamily::AllSlopes { boundary: bb });
                    out.rules.push(format!("essential annulus from B{x} to B{y}: punctured disks meet the boundary in every slope"));
                } else {
                    out.rules.push(format!("essential annulus from B{x} to B{y} avoiding the boundary: split manifold not constructed"));
                }
            }
        }
    }
    let n = cur.components.len();
    if n == 1 || !anannular {
        return Ok(());
    }
    let constant = ale_constant(cur, &fund, AleVariant::Link1)?.value;
    run.tree.push(FillingNode { depth: node.map_or(0, |f| f.fillings.len()), path: path_of(node), collection: fund.len(), constant: Some(constant.clone()), planar_members: 0 });
    if constant.is_zero() {
        return Ok(());
    }
    for other in (0..n).filter(|&k| k != bc) {
        let Some(ob) = node.map_or(Some(other), |f| f.boundary_in_base(other)) else { continue };
        let comp = &cur.components[other];
        if comp.torus.is_none() {
            continue;
        }
        let slopes = enumerate_short_slopes(comp, &constant)?;
        if slopes.len() > run.budget.max_slopes {
            run.flag(InconclusiveReason::BudgetExceeded("slope cap".into()));
        }
        for alpha in slopes.iter().take(run.budget.max_slopes) {
            let alpha_base = match node {
                None => *alpha,
                Some(_) => translate_slope(cur, base, alpha, ob)?,
            };
            let Some(child) = run.fill(node, base, ob, &alpha_base)? else { break };
            slope_set_at(run, base, Some(&child), b, out)?;
        }
    }
    Ok(())
}
