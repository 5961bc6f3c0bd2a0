use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use xnum::drawing::explain_drawing;
use xnum::frame::{build_frame, gamma, gamma_plus, normal_drawing, FrameParams};
use xnum::io::{parse_dimacs, parse_graph, serialize_graph, Document};
use xnum::pp::validate_pp;
use xnum::render::{to_dot, to_svg};
use xnum::sat::{build_cm_instance, compose_with_frame, pad_formula, pad_formula_to, shift_constant, theorem21_check};
use xnum::solver::{
    anchored_crossing_number_exact, crossing_number_exact, decide_crossing_le, pp_special_case, verify_anchored_drawing,
    SolveOptions, SolveResult, SolveStatus,
};
use xnum::transform::{almost_planar_instance, plan_almost_planar, AnchoredRotations, TransformOptions};
use xnum::{CnfFormula, Error, OmegaPoly, Result};

#[derive(Parser)]
#[command(name = "xnum", version, about = "Weighted and anchored crossing numbers")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads. Accepted and logged; all work currently runs on one thread.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate gadget instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Instance transformations.
    #[command(subcommand)]
    Transform(TransformCommand),
    /// Exact solvers.
    #[command(subcommand)]
    Solve(SolveCommand),
    /// Structural checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Draw a graph document.
    Render(RenderArgs),
    /// Closed-form polynomials.
    #[command(subcommand)]
    Eval(EvalCommand),
}

#[derive(Args)]
struct OutArgs {
    /// Write the generated document here instead of embedding it in the
    /// result.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Frame gadget F_k.
    Frame {
        #[arg(long)]
        k: usize,
        /// `symbolic` or a positive integer.
        #[arg(long, default_value = "symbolic")]
        omega: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Satisfiability gadget from a DIMACS formula.
    Sat {
        #[arg(long)]
        cnf: PathBuf,
        /// Concrete w; symbolic when omitted.
        #[arg(long)]
        w: Option<String>,
        /// Pad to this k instead of the smallest one.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Satisfiability gadget pasted into the frame.
    Compose {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Merge r0 and b0 into one anchor shared by both parts.
        #[arg(long)]
        identify: bool,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum TransformCommand {
    /// PP anchored instance to a planar graph plus one edge.
    AlmostPlanar {
        #[arg(long = "in")]
        input: PathBuf,
        /// Multicycle weight, or `default`.
        #[arg(long, default_value = "default")]
        m: String,
        /// Wall height, or `default`.
        #[arg(long, default_value = "default")]
        h: String,
        /// Allow parameters below the defaults and check them exactly.
        #[arg(long)]
        scaled: bool,
        /// Refuse results with more vertices than this.
        #[arg(long, default_value_t = 2_000_000)]
        max_vertices: u128,
        /// Report sizes without building the walls.
        #[arg(long)]
        plan_only: bool,
        /// Output G + uv instead of G.
        #[arg(long)]
        with_edge: bool,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Stop above this weight (integer or JSON polynomial).
    #[arg(long)]
    budget: Option<String>,
    #[arg(long)]
    node_limit: Option<u64>,
    #[arg(long)]
    time_limit_ms: Option<u64>,
}

#[derive(Subcommand)]
enum SolveCommand {
    /// Weighted crossing number, ignoring anchors.
    Exact(SolveArgs),
    /// Anchored crossing number.
    Anchored(SolveArgs),
    /// Min-cut formula for PP instances with a part of at most two anchors.
    PpSpecial {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Decide whether the crossing number is at most a threshold.
    Decide {
        #[command(flatten)]
        args: SolveArgs,
        /// Threshold (integer or JSON polynomial).
        #[arg(long)]
        k: String,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// PP instance invariants.
    Pp {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Rebuild a frame from its metadata and compare.
    Frame {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Structural properties of a satisfiability gadget.
    Thm21 {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Validity and weight of a stored drawing.
    Drawing {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Svg,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum EvalCommand {
    /// Optimum of the frame.
    Gamma(EvalArgs),
    /// Optimum of the frame plus its rigidity slack.
    GammaPlus(EvalArgs),
    /// Shift added by the R path of the satisfiability gadget.
    Shift(EvalArgs),
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    k: usize,
    /// Also evaluate at this ω.
    #[arg(long)]
    omega: Option<u64>,
}

/// Result payload and whether the command succeeded.
struct Outcome {
    ok: bool,
    result: Value,
}

fn success(result: Value) -> Result<Outcome> {
    Ok(Outcome { ok: true, result })
}

fn read_text(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    Ok(fs::read_to_string(path)?)
}

fn read_doc(path: &PathBuf) -> Result<Document> {
    parse_graph(&read_text(path)?)
}

fn parse_poly(s: &str) -> Result<OmegaPoly> {
    if let Ok(n) = i64::from_str(s.trim()) {
        return Ok(OmegaPoly::constant(n));
    }
    serde_json::from_str(s).map_err(|e| Error::Invalid(format!("`{s}` is neither an integer nor a polynomial: {e}")))
}

fn parse_big(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::Invalid(format!("`{s}` is not an integer")))
}

fn poly_json(p: &OmegaPoly) -> Value {
    json!({ "text": p.to_string(), "w": p })
}

/// Either write the document to `out` or embed it.
fn emit(doc: &Document, out: &OutArgs, mut result: Value) -> Result<Value> {
    match &out.out {
        Some(path) => {
            fs::write(path, serialize_graph(doc))?;
            result["out"] = json!(path);
        }
        None => result["document"] = serde_json::to_value(doc.to_file())?,
    }
    result["vertices"] = json!(doc.graph.vertex_count());
    result["edges"] = json!(doc.graph.edge_count());
    Ok(result)
}

fn formula(path: &PathBuf, k: Option<usize>) -> Result<(CnfFormula, CnfFormula)> {
    let phi = parse_dimacs(&read_text(path)?)?;
    let padded = match k {
        Some(k) => pad_formula_to(&phi, k)?,
        None => pad_formula(&phi)?,
    };
    Ok((phi, padded.formula))
}

fn frame_params(k: usize, omega: &str) -> Result<FrameParams> {
    let omega = if omega == "symbolic" { None } else { Some(parse_big(omega)?) };
    Ok(FrameParams { k, omega })
}

fn gen(cmd: GenCommand) -> Result<Outcome> {
    match cmd {
        GenCommand::Frame { k, omega, out } => {
            let f = build_frame(frame_params(k, &omega)?)?;
            let normal = normal_drawing(&f).weight(f.graph())?;
            let g = gamma(k);
            let report = json!({
                "k": k,
                "gamma": poly_json(&g),
                "normal_weight": poly_json(&normal),
                "normal_minus_gamma": poly_json(&(&normal - &g)),
            });
            success(emit(&f.document(), &out, report)?)
        }
        GenCommand::Sat { cnf, w, k, out } => {
            let (_, padded) = formula(&cnf, k)?;
            let w = w.as_deref().map(parse_big).transpose()?;
            let h = build_cm_instance(&padded, w)?;
            let report = json!({ "k": h.k, "variables": padded.num_vars, "clauses": padded.clauses.len() });
            success(emit(&h.document(), &out, report)?)
        }
        GenCommand::Compose { cnf, k, identify, out } => {
            let (_, padded) = formula(&cnf, k)?;
            let h = build_cm_instance(&padded, None)?;
            let f = build_frame(FrameParams::symbolic(h.k))?;
            let c = compose_with_frame(&f, &h, identify)?;
            let violations: Vec<String> = c.validate().iter().map(ToString::to_string).collect();
            let mut doc = Document::from_pp(&c.instance);
            doc.meta = Some(json!({ "kind": "compose", "k": c.k, "formula": padded, "identify": identify }));
            let report = json!({ "k": c.k, "pp_violations": violations });
            Ok(Outcome { ok: violations.is_empty(), result: emit(&doc, &out, report)? })
        }
    }
}

fn transform(cmd: TransformCommand) -> Result<Outcome> {
    let TransformCommand::AlmostPlanar { input, m, h, scaled, max_vertices, plan_only, with_edge, out } = cmd;
    let doc = read_doc(&input)?;
    let pp = doc.pp()?;
    let rot = match &doc.planarization {
        Some(p) => AnchoredRotations::from_drawing(&pp, p)?,
        None => AnchoredRotations::from_parts(&pp)?,
    };
    let param = |s: &str, name: &str| -> Result<Option<u64>> {
        if s == "default" {
            return Ok(None);
        }
        u64::from_str(s).map(Some).map_err(|_| Error::Invalid(format!("--{name} must be an integer or `default`")))
    };
    let opts = TransformOptions {
        m: param(&m, "m")?,
        h: param(&h, "h")?.map(|h| h as usize),
        scaled,
        max_vertices: Some(max_vertices),
        solve: SolveOptions::default(),
    };
    let plan = plan_almost_planar(&pp, &rot, &opts)?;
    let g = plan.subdivided.instance.graph();
    let mut report = json!({
        "m": plan.m,
        "h": plan.h,
        "scaled": plan.scaled,
        "subdivided": [plan.subdivided.e1, plan.subdivided.e2],
        "u": g.name(plan.subdivided.v1),
        "v": g.name(plan.subdivided.v2),
        "predicted_vertices": plan.size.0.to_string(),
        "predicted_edges": plan.size.1.to_string(),
    });
    if plan_only {
        return success(report);
    }
    let inst = almost_planar_instance(&pp, &rot, &opts)?;
    let mut out_doc = Document::from_graph(if with_edge { inst.with_edge() } else { inst.graph.clone() });
    out_doc.meta = Some(json!({
        "kind": "almost-planar",
        "u": inst.graph.name(inst.u),
        "v": inst.graph.name(inst.v),
        "m": inst.m,
        "h": inst.h,
        "scaled": inst.scaled,
        "with_edge": with_edge,
    }));
    report["high_degree"] = json!(inst.graph.degrees().iter().filter(|&&d| d > 3).count());
    success(emit(&out_doc, &out, report)?)
}

fn solve_options(a: &SolveArgs) -> Result<SolveOptions> {
    Ok(SolveOptions {
        budget: a.budget.as_deref().map(parse_poly).transpose()?,
        stop_within_budget: false,
        node_limit: a.node_limit,
        time_limit: a.time_limit_ms.map(Duration::from_millis),
    })
}

fn solved(r: SolveResult) -> Result<Outcome> {
    let ok = r.status == SolveStatus::Optimal;
    let status = match r.status {
        SolveStatus::Optimal | SolveStatus::WithinBudget => serde_json::to_value(r.status)?,
        SolveStatus::ExceedsBudget | SolveStatus::Unknown => json!("unknown"),
    };
    Ok(Outcome {
        ok,
        result: json!({
            "status": status,
            "detail": r.status,
            "value": r.value.as_ref().map(poly_json),
            "planarization": r.witness,
            "stats": r.stats,
        }),
    })
}

fn solve(cmd: SolveCommand) -> Result<Outcome> {
    match cmd {
        SolveCommand::Exact(a) => {
            let doc = read_doc(&a.input)?;
            solved(crossing_number_exact(&doc.graph, &solve_options(&a)?))
        }
        SolveCommand::Anchored(a) => {
            let doc = read_doc(&a.input)?;
            solved(anchored_crossing_number_exact(&doc.anchored()?, &solve_options(&a)?)?)
        }
        SolveCommand::PpSpecial { input } => {
            let pp = read_doc(&input)?.pp()?;
            match pp_special_case(&pp)? {
                Some(v) => success(json!({ "value": poly_json(&v) })),
                None => Err(Error::Unsupported("both parts have more than two anchors".into())),
            }
        }
        SolveCommand::Decide { args, k } => {
            let doc = read_doc(&args.input)?;
            let k = parse_poly(&k)?;
            let opts = solve_options(&args)?;
            let graph = if doc.anchors.is_empty() {
                doc.graph.clone()
            } else {
                xnum::planarity::augment_anchored(&doc.anchored()?)?.graph
            };
            match decide_crossing_le(&graph, &k, &opts) {
                Some(answer) => success(json!({ "at_most": answer, "k": poly_json(&k) })),
                None => Ok(Outcome { ok: false, result: json!({ "status": "unknown" }) }),
            }
        }
    }
}

/// The document's graph, anchors and parts, for comparison.
fn skeleton(doc: &Document) -> Result<Value> {
    let mut f = doc.to_file();
    f.features = None;
    f.meta = None;
    f.planarization = None;
    Ok(serde_json::to_value(f)?)
}

fn meta_field<'a>(doc: &'a Document, kind: &str) -> Result<&'a Value> {
    let meta = doc.meta.as_ref().ok_or_else(|| Error::Invalid("document has no meta block".into()))?;
    if meta["kind"] != kind {
        return Err(Error::Invalid(format!("document is not a {kind} instance")));
    }
    Ok(meta)
}

fn verify(cmd: VerifyCommand) -> Result<Outcome> {
    match cmd {
        VerifyCommand::Pp { input } => {
            let pp = read_doc(&input)?.pp()?;
            let v: Vec<String> = validate_pp(&pp).iter().map(ToString::to_string).collect();
            Ok(Outcome { ok: v.is_empty(), result: json!({ "violations": v }) })
        }
        VerifyCommand::Frame { input } => {
            let doc = read_doc(&input)?;
            let meta = meta_field(&doc, "frame")?;
            let k = meta["k"].as_u64().ok_or_else(|| Error::Invalid("meta.k missing".into()))? as usize;
            let omega = meta["omega"].as_str().unwrap_or("symbolic");
            let f = build_frame(frame_params(k, omega)?)?;
            let matches = skeleton(&f.document())? == skeleton(&doc)?;
            let pp: Vec<String> = validate_pp(&f.instance).iter().map(ToString::to_string).collect();
            let p = normal_drawing(&f);
            let drawing = explain_drawing(f.graph(), &p).err().map(|e| e.to_string());
            let residue = &p.weight(f.graph())? - &gamma(k);
            let ok = matches && pp.is_empty() && drawing.is_none();
            Ok(Outcome {
                ok,
                result: json!({
                    "matches_generator": matches,
                    "pp_violations": pp,
                    "normal_drawing_error": drawing,
                    "normal_minus_gamma": poly_json(&residue),
                }),
            })
        }
        VerifyCommand::Thm21 { input } => {
            let doc = read_doc(&input)?;
            let meta = meta_field(&doc, "sat")?;
            let phi: CnfFormula = serde_json::from_value(meta["formula"].clone())?;
            let w = meta["w"].as_str().map(parse_big).transpose()?;
            let h = build_cm_instance(&phi, w)?;
            let matches = skeleton(&h.document())? == skeleton(&doc)?;
            let report = theorem21_check(&h);
            let v: Vec<Value> =
                report.violations.iter().map(|v| json!({ "property": v.property.to_string(), "detail": v.detail })).collect();
            Ok(Outcome { ok: matches && report.is_ok(), result: json!({ "matches_generator": matches, "violations": v }) })
        }
        VerifyCommand::Drawing { input } => {
            let doc = read_doc(&input)?;
            let p = doc.planarization.clone().ok_or_else(|| Error::Invalid("document has no planarization".into()))?;
            let (ok, error) = if doc.anchors.is_empty() {
                match explain_drawing(&doc.graph, &p) {
                    Ok(()) => (true, None),
                    Err(e) => (false, Some(e.to_string())),
                }
            } else {
                let ok = verify_anchored_drawing(&doc.anchored()?, &p);
                (ok, (!ok).then(|| "not a valid anchored drawing".to_string()))
            };
            let weight = if ok { Some(poly_json(&p.weight(&doc.graph)?)) } else { None };
            Ok(Outcome { ok, result: json!({ "valid": ok, "error": error, "weight": weight }) })
        }
    }
}

fn render(a: RenderArgs, seed: u64) -> Result<Outcome> {
    let doc = read_doc(&a.input)?;
    let text = match a.format {
        Format::Dot => to_dot(&doc),
        Format::Svg => to_svg(&doc, seed),
    };
    match &a.out {
        Some(path) => {
            fs::write(path, &text)?;
            success(json!({ "out": path, "bytes": text.len() }))
        }
        None => success(json!({ "text": text })),
    }
}

fn eval(cmd: EvalCommand) -> Result<Outcome> {
    let (name, a, p) = match cmd {
        EvalCommand::Gamma(a) => ("gamma", a.omega, check_k(a.k).map(|_| gamma(a.k))?),
        EvalCommand::GammaPlus(a) => ("gamma-plus", a.omega, check_k(a.k).map(|_| gamma_plus(a.k))?),
        EvalCommand::Shift(a) => ("shift", a.omega, check_k(a.k).map(|_| shift_constant(a.k))?),
    };
    let mut out = json!({ "name": name, "poly": poly_json(&p) });
    if let Some(om) = a {
        out["at"] = json!({ "omega": om, "value": p.eval_u64(om).to_string() });
    }
    success(out)
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Invalid(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

fn name_of(c: &Command) -> &'static str {
    match c {
        Command::Gen(GenCommand::Frame { .. }) => "gen frame",
        Command::Gen(GenCommand::Sat { .. }) => "gen sat",
        Command::Gen(GenCommand::Compose { .. }) => "gen compose",
        Command::Transform(_) => "transform almost-planar",
        Command::Solve(SolveCommand::Exact(_)) => "solve exact",
        Command::Solve(SolveCommand::Anchored(_)) => "solve anchored",
        Command::Solve(SolveCommand::PpSpecial { .. }) => "solve pp-special",
        Command::Solve(SolveCommand::Decide { .. }) => "solve decide",
        Command::Verify(VerifyCommand::Pp { .. }) => "verify pp",
        Command::Verify(VerifyCommand::Frame { .. }) => "verify frame",
        Command::Verify(VerifyCommand::Thm21 { .. }) => "verify thm21",
        Command::Verify(VerifyCommand::Drawing { .. }) => "verify drawing",
        Command::Render(_) => "render",
        Command::Eval(_) => "eval",
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("XNUM_LOG", "warn")).init();
    let cli = Cli::parse();
    log::info!("seed {} threads {}", cli.seed, cli.threads);
    let name = name_of(&cli.command);
    let outcome = match cli.command {
        Command::Gen(c) => gen(c),
        Command::Transform(c) => transform(c),
        Command::Solve(c) => solve(c),
        Command::Verify(c) => verify(c),
        Command::Render(a) => render(a, cli.seed),
        Command::Eval(c) => eval(c),
    };
    let (code, envelope) = match outcome {
        Ok(o) => (u8::from(!o.ok), json!({ "ok": o.ok, "command": name, "result": o.result })),
        Err(e) => {
            log::error!("{e}");
            (1, json!({ "ok": false, "command": name, "error": e.to_string() }))
        }
    };
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&envelope).expect("envelopes serialize"));
    ExitCode::from(code)
}
