use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use normkit::bounds::{ale_constant, audit_zero_efficiency_with, AleVariant, SlopeConstraint};
use normkit::filling::{build_lst, dehn_drill, dehn_fill};
use normkit::normal::{enumerate_fundamental_solutions, enumerate_vertex_solutions_with, is_admissible, Budget, NormalVector};
use normkit::search::{
    find_essential_annulus, find_essential_disk, oracle_by_id, search_longitude, search_planar, search_punctured_disk, slope_set, Oracle,
    SearchBudget, SearchReport,
};
use normkit::slopes::{enumerate_short_slopes, Slope};
use normkit::surface::{classify, reconstruct};
use normkit::tri::{one_tet_solid_torus, Triangulation};
use normkit::{fixtures, Error};

#[derive(Parser)]
#[command(name = "normkit", version, about = "Normal surfaces in triangulated knot and link manifolds")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Worker threads. The drivers are deterministic and currently run serially.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Triangulation checks and layering.
    Tri {
        #[command(subcommand)]
        cmd: TriCmd,
    },
    /// Normal surface enumeration and inspection.
    Ns {
        #[command(subcommand)]
        cmd: NsCmd,
    },
    /// Layered solid tori.
    Lst {
        #[command(subcommand)]
        cmd: LstCmd,
    },
    /// Triangulated Dehn filling.
    Fill(SlopeOnBoundary),
    /// Triangulated Dehn drilling.
    Drill(SlopeOnBoundary),
    /// Average-length constant over the fundamentals.
    Ale {
        input: String,
        #[arg(long, default_value = "basic")]
        variant: String,
        /// Restrict to the slope-constrained cone, as P/Q@Bk.
        #[arg(long)]
        slope: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    Slopes {
        #[command(subcommand)]
        cmd: SlopesCmd,
    },
    Audit {
        #[command(subcommand)]
        cmd: AuditCmd,
    },
    /// Decision drivers.
    Search {
        #[command(subcommand)]
        cmd: SearchCmd,
    },
}

#[derive(Subcommand)]
enum TriCmd {
    Check { input: String },
    Info { input: String },
    Layer {
        input: String,
        /// Boundary edge class to layer on.
        #[arg(long)]
        edge: usize,
    },
}

#[derive(Subcommand)]
enum NsCmd {
    Enumerate {
        input: String,
        #[arg(long, conflicts_with = "fundamental")]
        vertex: bool,
        #[arg(long)]
        fundamental: bool,
        #[arg(long)]
        slope: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    Info {
        input: String,
        /// JSON array of 7t integers.
        #[arg(long)]
        vector: PathBuf,
    },
}

#[derive(Subcommand)]
enum LstCmd {
    Build {
        /// Meridian slope P/Q, in the frame of `--frame` (default: the one-tetrahedron solid torus).
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long)]
        frame: Option<String>,
        #[arg(long, default_value = "B0")]
        boundary: String,
    },
}

#[derive(Args)]
struct SlopeOnBoundary {
    input: String,
    #[arg(long)]
    boundary: String,
    #[arg(long, allow_hyphen_values = true)]
    slope: String,
}

#[derive(Subcommand)]
enum SlopesCmd {
    Short {
        input: String,
        #[arg(long)]
        bound: String,
        #[arg(long)]
        boundary: String,
    },
}

#[derive(Subcommand)]
enum AuditCmd {
    ZeroEfficiency {
        input: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args)]
struct SearchArgs {
    input: String,
    #[arg(long, default_value = "default")]
    oracle: String,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Subcommand)]
enum SearchCmd {
    Planar(SearchArgs),
    PuncturedDisk {
        #[command(flatten)]
        common: SearchArgs,
        #[arg(long)]
        boundary: String,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
    },
    Longitude {
        #[command(flatten)]
        common: SearchArgs,
        #[arg(long)]
        boundary: String,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
    },
    SlopeSet {
        #[command(flatten)]
        common: SearchArgs,
        #[arg(long)]
        boundary: String,
    },
    Disk {
        #[command(flatten)]
        common: SearchArgs,
        #[arg(long)]
        boundary: String,
    },
    Annulus {
        #[command(flatten)]
        common: SearchArgs,
        #[arg(long)]
        boundary: String,
        #[arg(long)]
        other: String,
    },
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    #[arg(long)]
    budget_rays: Option<usize>,
    #[arg(long)]
    budget_candidates: Option<usize>,
    #[arg(long)]
    budget_pairs: Option<u64>,
    #[arg(long)]
    budget_fillings: Option<usize>,
    #[arg(long)]
    budget_slopes: Option<usize>,
}

impl BudgetArgs {
    fn search(&self) -> SearchBudget {
        let mut b = SearchBudget::default();
        b.cone = self.cone();
        if let Some(x) = self.budget_fillings {
            b.max_fillings = x;
        }
        if let Some(x) = self.budget_slopes {
            b.max_slopes = x;
        }
        b
    }

    fn cone(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(x) = self.budget_rays {
            b.max_rays = x;
        }
        if let Some(x) = self.budget_candidates {
            b.max_candidates = x;
        }
        if let Some(x) = self.budget_pairs {
            b.max_pairs = x;
        }
        b
    }
}

#[derive(Serialize)]
struct ReportEnvelope {
    tool: &'static str,
    version: &'static str,
    command: String,
    parameters: Value,
    input_hash: Option<String>,
    result: Value,
    timing_ms: u128,
    budget: Option<Value>,
}

/// A failure with a machine-readable code.
struct Failure {
    code: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::Parse(_) => "parse",
            Error::MalformedTable(_) | Error::InvolutionViolation(..) | Error::SelfGluedFaceIdentity(..) => "table",
            Error::ResourceBudgetExceeded(_) => "budget",
            _ => "kernel",
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: "usage", message: msg.into() }
}

struct Input {
    tri: Triangulation,
    hash: String,
}

fn load(source: &str) -> Result<Input, Failure> {
    let text = match source.strip_prefix("fixture:") {
        Some(name) => fixtures::by_name(name).ok_or_else(|| usage(format!("unknown fixture '{name}'")))?.to_json(),
        None => std::fs::read_to_string(source).map_err(|e| Failure { code: "io", message: format!("{source}: {e}") })?,
    };
    let tri = Triangulation::from_json(&text)?;
    let hash = format!("{:x}", Sha256::digest(text.as_bytes()));
    Ok(Input { tri, hash })
}

fn boundary_id(s: &str) -> Result<usize, Failure> {
    s.trim_start_matches('B').parse().map_err(|_| usage(format!("bad boundary '{s}'")))
}

fn slope_on(t: &Triangulation, s: &str, boundary: Option<usize>) -> Result<Slope, Failure> {
    let (p, q, b) = Slope::parse(s, boundary)?;
    Ok(Slope::new(t.component(b)?, p, q)?)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Result payload plus whether it is conclusive.
type Payload = (Value, bool);

fn tri_summary(t: &Triangulation) -> Value {
    json!({
        "tetrahedra": t.tet_count(),
        "faces": t.face_count(),
        "edges": t.edges.len(),
        "vertices": t.vertices.len(),
        "boundary_components": t.components.len(),
        "one_vertex_tori": t.components.iter().filter(|c| c.one_vertex_torus).count(),
        "valid": t.is_valid(),
        "orientable": t.orientable,
        "connected": t.is_connected(),
        "minimal_vertex": t.is_minimal_vertex(),
        "canonical_hash": t.canonical_hash(),
    })
}

fn search_payload(r: SearchReport) -> Payload {
    let conclusive = r.outcome.is_conclusive();
    (to_value(&r), conclusive)
}

fn oracle(id: &str) -> Result<Box<dyn Oracle>, Failure> {
    oracle_by_id(id).ok_or_else(|| usage(format!("unknown oracle '{id}'")))
}

fn run(cmd: &Cmd) -> Result<(String, Value, Option<String>, Option<Value>, Payload), Failure> {
    Ok(match cmd {
        Cmd::Tri { cmd } => match cmd {
            TriCmd::Check { input } => {
                let i = load(input)?;
                let ok = i.tri.is_valid() && i.tri.orientable;
                ("tri check".into(), json!({ "input": input }), Some(i.hash), None, (json!({ "ok": ok, "summary": tri_summary(&i.tri) }), true))
            }
            TriCmd::Info { input } => {
                let i = load(input)?;
                let t = &i.tri;
                let comps: Vec<Value> = t
                    .components
                    .iter()
                    .map(|c| json!({ "id": c.id, "triangles": c.triangles.len(), "euler": c.euler, "one_vertex_torus": c.one_vertex_torus, "frame": c.torus.as_ref().map(|f| (f.a, f.b)) }))
                    .collect();
                let result = json!({ "summary": tri_summary(t), "boundary": comps, "table": t.table() });
                ("tri info".into(), json!({ "input": input }), Some(i.hash), None, (result, true))
            }
            TriCmd::Layer { input, edge } => {
                let i = load(input)?;
                let l = i.tri.layer_on_edge(*edge)?;
                ("tri layer".into(), json!({ "input": input, "edge": edge }), Some(i.hash), None, (json!({ "summary": tri_summary(&l), "table": l.table() }), true))
            }
        },
        Cmd::Ns { cmd } => match cmd {
            NsCmd::Enumerate { input, vertex, fundamental: _, slope, budget } => {
                let i = load(input)?;
                let t = &i.tri;
                let constraint = match slope {
                    Some(s) => Some(SlopeConstraint::new(&slope_on(t, s, None)?)),
                    None => None,
                };
                let cone = budget.cone();
                let (basis, conclusive) = if *vertex {
                    (enumerate_vertex_solutions_with(t, constraint.as_ref(), &cone)?, true)
                } else {
                    match enumerate_fundamental_solutions(t, constraint.as_ref(), &cone) {
                        Ok(b) => (b, true),
                        Err(e) => (e.partial, false),
                    }
                };
                let mut rows = Vec::new();
                for v in &basis.fundamentals {
                    let sg = reconstruct(v, t)?;
                    let c = classify(&sg);
                    let slopes: Vec<String> = sg.boundary_curves.iter().flatten().filter_map(|c| c.slope.map(|s| s.to_string())).collect();
                    rows.push(json!({
                        "vector": v, "euler": sg.euler, "weight": sg.weight, "boundary_length": sg.boundary_length,
                        "connected": sg.is_connected(), "orientable": sg.orientable(), "vertex_linking": sg.is_vertex_linking(),
                        "disk": c.is_disk, "sphere": c.is_sphere, "annulus_or_mobius": c.is_annulus_or_mobius,
                        "boundary_curves": sg.boundary_count(), "slopes": slopes,
                    }));
                }
                let mode = if *vertex { "vertex" } else { "fundamental" };
                let result = json!({ "mode": mode, "count": rows.len(), "complete": conclusive, "surfaces": rows, "vertex_flags": basis.vertex_flags });
                ("ns enumerate".into(), json!({ "input": input, "mode": mode, "slope": slope }), Some(i.hash), Some(to_value(&cone)), (result, conclusive))
            }
            NsCmd::Info { input, vector } => {
                let i = load(input)?;
                let text = std::fs::read_to_string(vector).map_err(|e| Failure { code: "io", message: format!("{}: {e}", vector.display()) })?;
                let v: NormalVector = serde_json::from_str(&text).map_err(|e| usage(format!("bad vector: {e}")))?;
                let admissible = is_admissible(&v, &i.tri)?;
                let result = if admissible {
                    let sg = reconstruct(&v, &i.tri)?;
                    json!({ "admissible": true, "classification": classify(&sg), "geometry": sg })
                } else {
                    json!({ "admissible": false })
                };
                ("ns info".into(), json!({ "input": input, "vector": vector }), Some(i.hash), None, (result, true))
            }
        },
        Cmd::Lst { cmd: LstCmd::Build { slope, frame, boundary } } => {
            let base = match frame {
                Some(f) => load(f)?.tri,
                None => one_tet_solid_torus(),
            };
            let b = boundary_id(boundary)?;
            let s = slope_on(&base, slope, Some(b))?;
            let l = build_lst(base.component(b)?, &s)?;
            let result = json!({ "summary": tri_summary(&l.triangulation), "lst": l });
            ("lst build".into(), json!({ "slope": s.to_string(), "frame": frame }), None, None, (result, true))
        }
        Cmd::Fill(a) => {
            let i = load(&a.input)?;
            let b = boundary_id(&a.boundary)?;
            let s = slope_on(&i.tri, &a.slope, Some(b))?;
            let f = dehn_fill(&i.tri, b, &s)?;
            let result = json!({ "summary": tri_summary(&f.triangulation), "filling": f });
            ("fill".into(), json!({ "input": a.input, "boundary": b, "slope": s.to_string() }), Some(i.hash), None, (result, true))
        }
        Cmd::Drill(a) => {
            let i = load(&a.input)?;
            let b = boundary_id(&a.boundary)?;
            let s = slope_on(&i.tri, &a.slope, Some(b))?;
            let d = dehn_drill(&i.tri, b, &s)?;
            let result = json!({ "summary": tri_summary(&d.triangulation), "drilling": d });
            ("drill".into(), json!({ "input": a.input, "boundary": b, "slope": s.to_string() }), Some(i.hash), None, (result, true))
        }
        Cmd::Ale { input, variant, slope, budget } => {
            let i = load(input)?;
            let v: AleVariant = variant.parse()?;
            let constraint = match slope {
                Some(s) => Some(SlopeConstraint::new(&slope_on(&i.tri, s, None)?)),
                None => None,
            };
            let cone = budget.cone();
            let (fund, complete) = match enumerate_fundamental_solutions(&i.tri, constraint.as_ref(), &cone) {
                Ok(b) => (b.fundamentals, true),
                Err(e) => (e.partial.fundamentals, false),
            };
            let c = ale_constant(&i.tri, &fund, v)?;
            let audit = audit_zero_efficiency_with(&i.tri, &cone).ok().map(|a| a.is_empty());
            let hypotheses = json!({
                "audited": { "zero_efficient": audit },
                "assumed": ["irreducible", "boundary-irreducible", "anannular"],
            });
            let result = json!({ "constant": c.value.to_string(), "complete": complete, "hypotheses": hypotheses, "ale": c });
            ("ale".into(), json!({ "input": input, "variant": variant, "slope": slope }), Some(i.hash), Some(to_value(&cone)), (result, complete))
        }
        Cmd::Slopes { cmd: SlopesCmd::Short { input, bound, boundary } } => {
            let i = load(input)?;
            let b = boundary_id(boundary)?;
            let c: BigRational = bound.parse().map_err(|_| usage(format!("bad bound '{bound}'")))?;
            let slopes = enumerate_short_slopes(i.tri.component(b)?, &c)?;
            let list: Vec<Value> = slopes.iter().map(|s| json!({ "slope": s.to_string(), "length": s.length() })).collect();
            ("slopes short".into(), json!({ "input": input, "bound": bound, "boundary": b }), Some(i.hash), None, (json!({ "count": list.len(), "slopes": list }), true))
        }
        Cmd::Audit { cmd: AuditCmd::ZeroEfficiency { input, budget } } => {
            let i = load(input)?;
            let cone = budget.cone();
            let a = audit_zero_efficiency_with(&i.tri, &cone)?;
            let result = json!({ "zero_efficient": a.is_empty(), "audit": a });
            ("audit zero-efficiency".into(), json!({ "input": input }), Some(i.hash), Some(to_value(&cone)), (result, true))
        }
        Cmd::Search { cmd } => {
            let (name, common) = match cmd {
                SearchCmd::Planar(c) => ("search planar", c),
                SearchCmd::PuncturedDisk { common, .. } => ("search punctured-disk", common),
                SearchCmd::Longitude { common, .. } => ("search longitude", common),
                SearchCmd::SlopeSet { common, .. } => ("search slope-set", common),
                SearchCmd::Disk { common, .. } => ("search disk", common),
                SearchCmd::Annulus { common, .. } => ("search annulus", common),
            };
            let i = load(&common.input)?;
            let t = &i.tri;
            let o = oracle(&common.oracle)?;
            let budget = common.budget.search();
            let mut params = json!({ "input": common.input, "oracle": o.id() });
            let payload = match cmd {
                SearchCmd::Planar(_) => search_payload(search_planar(t, o.as_ref(), &budget)?),
                SearchCmd::PuncturedDisk { boundary, slope, .. } | SearchCmd::Longitude { boundary, slope, .. } => {
                    let b = boundary_id(boundary)?;
                    let s = slope_on(t, slope, Some(b))?;
                    params["boundary"] = json!(b);
                    params["slope"] = json!(s.to_string());
                    let r = if matches!(cmd, SearchCmd::Longitude { .. }) {
                        search_longitude(t, b, &s, o.as_ref(), &budget)?
                    } else {
                        search_punctured_disk(t, b, &s, o.as_ref(), &budget)?
                    };
                    search_payload(r)
                }
                SearchCmd::SlopeSet { boundary, .. } => {
                    let b = boundary_id(boundary)?;
                    params["boundary"] = json!(b);
                    let s = slope_set(t, b, o.as_ref(), &budget)?;
                    let complete = s.complete;
                    (to_value(&s), complete)
                }
                SearchCmd::Disk { boundary, .. } => {
                    let b = boundary_id(boundary)?;
                    params["boundary"] = json!(b);
                    search_payload(find_essential_disk(t, b, o.as_ref(), &budget)?)
                }
                SearchCmd::Annulus { boundary, other, .. } => {
                    let (b, b2) = (boundary_id(boundary)?, boundary_id(other)?);
                    params["boundary"] = json!(b);
                    params["other"] = json!(b2);
                    search_payload(find_essential_annulus(t, b, b2, o.as_ref(), &budget)?)
                }
            };
            (name.into(), params, Some(i.hash), Some(to_value(&budget)), payload)
        }
    })
}

fn text_summary(command: &str, result: &Value) -> String {
    let mut lines = vec![command.to_string()];
    if let Some(o) = result.get("outcome") {
        let label = match o {
            Value::String(s) => s.clone(),
            Value::Object(m) => m.keys().next().cloned().unwrap_or_default(),
            _ => String::new(),
        };
        lines.push(format!("  outcome: {label}"));
        if let Some(Value::Array(r)) = o.get("Inconclusive") {
            lines.push(format!("  reasons: {}", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")));
        }
    }
    match result {
        Value::Object(m) => {
            for (k, v) in m {
                if k == "outcome" {
                    continue;
                }
                let s = v.to_string();
                if s.len() <= 100 {
                    lines.push(format!("  {k}: {s}"));
                } else {
                    lines.push(format!("  {k}: ({} bytes of JSON)", s.len()));
                }
            }
        }
        other => lines.push(format!("  {other}")),
    }
    lines.join("\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.cmd) {
        Ok((command, parameters, input_hash, budget, (result, conclusive))) => {
            match cli.format {
                Format::Json => {
                    let env = ReportEnvelope {
                        tool: "normkit",
                        version: env!("CARGO_PKG_VERSION"),
                        command,
                        parameters,
                        input_hash,
                        result,
                        timing_ms: start.elapsed().as_millis(),
                        budget,
                    };
                    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&env).expect("envelope serializes"));
                }
                Format::Text => {
                    let _ = writeln!(std::io::stdout(), "{}", text_summary(&command, &result));
                }
            }
            if conclusive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(f) => {
            match cli.format {
                Format::Json => println!("{}", json!({ "error": { "code": f.code, "message": f.message } })),
                Format::Text => eprintln!("error[{}]: {}", f.code, f.message),
            }
            ExitCode::from(1)
        }
    }
}
