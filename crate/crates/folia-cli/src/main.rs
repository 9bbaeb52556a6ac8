//! `folia`: exact analysis of singular holomorphic foliations from the
//! command line.

mod expr;
mod scene;
mod treefmt;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use folia_core::algebra::branch::solve_smooth_branch;
use folia_core::blowup::reduce_seidenberg;
use folia_core::germ::{
    classify_at, cs_index_capped, singular_locus, tang_index, z_index_capped, ResidualFactor,
};
use folia_core::models::{base_chi_orb, kodaira_from_degree, pushforward_degree};
use folia_core::surface::{
    is_nef, kf_degree_report, verify_camacho_sad, zariski_decompose, QDivisor,
};
use folia_core::{BiPoly, FoliationGerm};

#[derive(Parser)]
#[command(name = "folia", version, about = "Exact toolkit for singular holomorphic foliations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Reject unknown fields in JSON inputs.
    #[arg(long, global = true)]
    strict: bool,
    /// Write the reduction dual graph in DOT form to this path.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Blow-up depth cap for reduction.
    #[arg(long, global = true, default_value_t = 32, value_name = "N")]
    max_depth: usize,
    /// Hard cap on adaptive series truncation.
    #[arg(long, global = true, default_value_t = 128, value_name = "N")]
    truncation_cap: usize,
    /// Inline expression input (alternative to a positional file).
    #[arg(long, global = true, value_name = "EXPR", allow_hyphen_values = true)]
    expr: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Singular locus and classification of a foliation expression.
    Analyze { input: Option<PathBuf> },
    /// Seidenberg reduction tree of the singularity at the origin.
    Reduce { input: Option<PathBuf> },
    /// tang/Z/CS index table of a foliation along a curve.
    Indices {
        /// Polynomial equation of the curve.
        #[arg(long, value_name = "POLY")]
        curve: String,
        input: Option<PathBuf>,
    },
    /// Index-theorem checks on a scene file.
    Verify { input: Option<PathBuf> },
    /// Zariski decomposition of the scene's divisor.
    Zariski { input: Option<PathBuf> },
    /// Riccati direct-image degree and Kodaira dimension.
    Riccati { input: Option<String> },
}

/// Exit disciplines: 0 success, 1 check failure, 2 input error.
enum Outcome {
    Pass(Value, String),
    Fail(Value, String),
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(format!("{e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass(v, human)) => {
            emit(&cli, &v, &human);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fail(v, human)) => {
            emit(&cli, &v, &human);
            ExitCode::from(1)
        }
        Err(InputError(msg)) => {
            if cli.json {
                let v = json!({ "error": msg });
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, v: &Value, human: &str) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(v).unwrap());
    } else {
        println!("{human}");
    }
}

/// Terminal styling, controlled by FOLIA_COLOR only; never used in JSON.
fn heading(s: &str) -> String {
    match std::env::var("FOLIA_COLOR").ok().as_deref() {
        Some("1") | Some("always") | Some("true") => format!("\x1b[1m{s}\x1b[0m"),
        _ => s.to_string(),
    }
}

fn read_expression(cli: &Cli, input: &Option<PathBuf>) -> Result<String, InputError> {
    if let Some(e) = &cli.expr {
        return Ok(e.clone());
    }
    match input {
        Some(path) => Ok(std::fs::read_to_string(path)?.trim().to_string()),
        None => Err(InputError(
            "no input: pass a file or --expr".to_string(),
        )),
    }
}

fn read_file(input: &Option<PathBuf>) -> Result<String, InputError> {
    match input {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Err(InputError("no input file".to_string())),
    }
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.cmd {
        Cmd::Analyze { input } => analyze(cli, input),
        Cmd::Reduce { input } => reduce(cli, input),
        Cmd::Indices { curve, input } => indices(cli, curve, input),
        Cmd::Verify { input } => verify(cli, input),
        Cmd::Zariski { input } => zariski(cli, input),
        Cmd::Riccati { input } => riccati(cli, input),
    }
}

fn parse_germ(
    cli: &Cli,
    input: &Option<PathBuf>,
) -> Result<(FoliationGerm, Option<BiPoly>, String, expr::InputKind), InputError> {
    let text = read_expression(cli, input)?;
    let parsed = expr::parse_foliation(&text)?;
    Ok((parsed.germ, parsed.removed_factor, text, parsed.kind))
}

fn kind_name(k: expr::InputKind) -> &'static str {
    match k {
        expr::InputKind::VectorField => "vector-field",
        expr::InputKind::OneForm => "one-form",
    }
}

fn residual_string(r: &ResidualFactor) -> String {
    match r {
        ResidualFactor::InZ(p) => format!("in z: {p:?}"),
        ResidualFactor::InWAt(z0, p) => format!("in w at z = {z0}: {p:?}"),
    }
}

fn analyze(cli: &Cli, input: &Option<PathBuf>) -> Result<Outcome, InputError> {
    let (germ, removed, text, kind) = parse_germ(cli, input)?;
    let locus = singular_locus(&germ);
    let mut points = Vec::new();
    let mut human = format!("{}\n  input: {}\n", heading("analysis"), text);
    if let Some(f) = &removed {
        human.push_str(&format!("  warning: removed common factor {f}\n"));
    }
    for p in &locus.points {
        let class = classify_at(&germ.at_point(p.clone()));
        human.push_str(&format!("  ({}, {}): {}\n", p.0, p.1, class));
        points.push(json!({
            "point": [format!("{}", p.0), format!("{}", p.1)],
            "class": format!("{class}"),
        }));
    }
    let residual: Vec<String> = locus.residual.iter().map(residual_string).collect();
    for r in &residual {
        human.push_str(&format!("  residual factor {r}\n"));
    }
    let v = json!({
        "version": scene::FORMAT_VERSION,
        "input": text,
        "kind": kind_name(kind),
        "canonical": expr::print_foliation(&germ),
        "removed_factor": removed.map(|f| format!("{f}")),
        "singular_points": points,
        "residual": residual,
    });
    Ok(Outcome::Pass(v, human))
}

fn write_atomic(path: &Path, content: &str) -> Result<(), InputError> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn reduce(cli: &Cli, input: &Option<PathBuf>) -> Result<Outcome, InputError> {
    let (germ, _removed, text, _) = parse_germ(cli, input)?;
    let tree = reduce_seidenberg(&germ, cli.max_depth)?;
    if let Some(path) = &cli.dot {
        write_atomic(path, &treefmt::tree_to_dot(&tree))?;
    }
    let mut human = format!(
        "{}\n  input: {}\n  events: {}\n  curves: {}\n  complete: {}\n",
        heading("reduction"),
        text,
        tree.events.len(),
        tree.ledger.len(),
        tree.is_complete()
    );
    for e in &tree.ledger {
        human.push_str(&format!(
            "  {}: self-intersection {}, {}, {} singular point(s)\n",
            treefmt::curve_name(e.id),
            e.self_intersection,
            if e.invariant { "invariant" } else { "not invariant" },
            e.singular_points.len()
        ));
    }
    let mut v = treefmt::tree_to_json(&tree);
    if tree.is_complete() {
        let model = folia_core::blowup::ledger_to_surface(&tree)
            .map_err(|e| InputError(format!("surface model unavailable: {e}")))?;
        v["scene"] = scene::scene_to_json(&model, None);
    }
    Ok(Outcome::Pass(v, human))
}

fn indices(cli: &Cli, curve: &str, input: &Option<PathBuf>) -> Result<Outcome, InputError> {
    let (germ, _removed, text, _) = parse_germ(cli, input)?;
    let f: BiPoly = curve
        .parse()
        .map_err(|e| InputError(format!("invalid curve polynomial: {e:?}")))?;
    let locus = singular_locus(&germ);
    let mut rows = Vec::new();
    let mut human = format!(
        "{}\n  input: {}\n  curve: {}\n",
        heading("indices"),
        text,
        curve
    );
    for p in &locus.points {
        if !f.eval(&p.0, &p.1).is_zero() {
            continue;
        }
        let g = germ.at_point(p.clone());
        let mut row = json!({
            "point": [format!("{}", p.0), format!("{}", p.1)],
        });
        let branch = solve_smooth_branch(&f, p, 16);
        match branch {
            Ok(b) => {
                match z_index_capped(&g, &b, cli.truncation_cap) {
                    Ok(z) => {
                        let cs = cs_index_capped(&g, &b, cli.truncation_cap)
                            .map_err(|e| InputError(format!("CS index failed: {e}")))?;
                        human.push_str(&format!(
                            "  ({}, {}): Z = {z}, CS = {cs}\n",
                            p.0, p.1
                        ));
                        row["z"] = json!(z);
                        row["cs"] = json!(format!("{cs}"));
                    }
                    Err(_) => {
                        // Branch not invariant: tangency index instead.
                        let t = tang_index(&g, &f, p, 1)
                            .map_err(|e| InputError(format!("tang index failed: {e}")))?;
                        human.push_str(&format!("  ({}, {}): tang = {t}\n", p.0, p.1));
                        row["tang"] = json!(format!("{t}"));
                    }
                }
            }
            Err(e) => {
                human.push_str(&format!("  ({}, {}): curve not smooth here ({e})\n", p.0, p.1));
                row["error"] = json!(format!("{e}"));
            }
        }
        rows.push(row);
    }
    let v = json!({
        "version": scene::FORMAT_VERSION,
        "input": text,
        "curve": curve,
        "table": rows,
    });
    Ok(Outcome::Pass(v, human))
}

fn verify(cli: &Cli, input: &Option<PathBuf>) -> Result<Outcome, InputError> {
    let text = read_file(input)?;
    let (model, _) = scene::parse_scene(&text, cli.strict)?;
    let mut checks = Vec::new();
    let mut all_pass = true;
    let mut human = format!("{}\n", heading("verification"));
    for c in model.curves() {
        if c.invariant {
            let v = verify_camacho_sad(&model, c.id)?;
            let pass = v.pass();
            all_pass &= pass;
            human.push_str(&format!(
                "  curve {}: CS sum {} vs C.C {} -> {} (residual {})\n",
                c.id,
                v.cs_sum,
                v.self_intersection,
                if pass { "pass" } else { "FAIL" },
                v.residual
            ));
            checks.push(json!({
                "curve": c.id,
                "check": "camacho-sad",
                "cs_sum": format!("{}", v.cs_sum),
                "self_intersection": format!("{}", v.self_intersection),
                "residual": format!("{}", v.residual),
                "pass": pass,
            }));
        }
        match kf_degree_report(&model, c.id) {
            Ok(r) => {
                let positivity_ok = r
                    .positivity
                    .as_ref()
                    .map(|p| !p.is_negative())
                    .unwrap_or(true);
                all_pass &= positivity_ok;
                human.push_str(&format!(
                    "  curve {}: K_F degree {}{}\n",
                    c.id,
                    r.value,
                    match &r.positivity {
                        Some(p) => format!(", (K_F + C).C = {p}"),
                        None => String::new(),
                    }
                ));
                checks.push(json!({
                    "curve": c.id,
                    "check": "kf-degree",
                    "value": format!("{}", r.value),
                    "positivity": r.positivity.as_ref().map(|p| format!("{p}")),
                    "pass": positivity_ok,
                }));
            }
            Err(e) => {
                human.push_str(&format!("  curve {}: K_F degree unavailable ({e})\n", c.id));
                checks.push(json!({
                    "curve": c.id,
                    "check": "kf-degree",
                    "error": format!("{e}"),
                }));
            }
        }
    }
    let v = json!({
        "version": scene::FORMAT_VERSION,
        "checks": checks,
        "pass": all_pass,
    });
    let verdict = format!("  overall: {}\n", if all_pass { "pass" } else { "FAIL" });
    human.push_str(&verdict);
    Ok(if all_pass {
        Outcome::Pass(v, human)
    } else {
        Outcome::Fail(v, human)
    })
}

fn zariski(cli: &Cli, input: &Option<PathBuf>) -> Result<Outcome, InputError> {
    let text = read_file(input)?;
    let (model, divisor) = scene::parse_scene(&text, cli.strict)?;
    let l = divisor.ok_or_else(|| InputError("scene has no \"divisor\" field".to_string()))?;
    match zariski_decompose(&l, &model) {
        Ok(d) => {
            let human = format!(
                "{}\n  P: {}\n  N: {}\n  support: {:?}\n  nef(P): {}\n",
                heading("zariski decomposition"),
                divisor_string(&d.positive),
                divisor_string(&d.negative),
                d.certificate.support,
                is_nef(&d.positive, &model)?.nef
            );
            let v = json!({
                "version": scene::FORMAT_VERSION,
                "positive": divisor_json(&d.positive),
                "negative": divisor_json(&d.negative),
                "certificate": {
                    "support": d.certificate.support,
                    "gram": d.certificate.gram.iter().map(|row| {
                        row.iter().map(|r| format!("{r}")).collect::<Vec<_>>()
                    }).collect::<Vec<_>>(),
                    "leading_minors": d.certificate.leading_minors.iter()
                        .map(|r| format!("{r}")).collect::<Vec<_>>(),
                    "residuals": d.certificate.residuals.iter()
                        .map(|r| format!("{r}")).collect::<Vec<_>>(),
                },
            });
            Ok(Outcome::Pass(v, human))
        }
        Err(folia_core::surface::ZariskiError::NotDecomposable) => {
            let v = json!({
                "version": scene::FORMAT_VERSION,
                "error": "not decomposable on this model",
            });
            Ok(Outcome::Fail(
                v,
                "divisor is not pseudoeffective on the model".to_string(),
            ))
        }
        Err(folia_core::surface::ZariskiError::Model(e)) => Err(e.into()),
    }
}

fn divisor_string(d: &QDivisor) -> String {
    if d.is_zero() {
        return "0".to_string();
    }
    d.iter()
        .map(|(id, c)| format!("{c}*C{id}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn divisor_json(d: &QDivisor) -> Value {
    Value::Object(
        d.iter()
            .map(|(id, c)| (id.to_string(), Value::String(format!("{c}"))))
            .collect(),
    )
}

fn riccati(cli: &Cli, input: &Option<String>) -> Result<Outcome, InputError> {
    let text = match input {
        Some(s) if s.trim_start().starts_with('{') => s.clone(),
        Some(s) => std::fs::read_to_string(s)?,
        None => return Err(InputError("no model input".to_string())),
    };
    let model = scene::parse_riccati(&text, cli.strict)?;
    model.validate()?;
    let chi = base_chi_orb(&model);
    let deg = pushforward_degree(&model);
    let kod = kodaira_from_degree(&deg);
    let human = format!(
        "{}\n  chi_orb(B) = {}\n  deg = {}\n  kod = {}\n",
        heading("riccati"),
        chi,
        deg,
        kod
    );
    let v = json!({
        "version": scene::FORMAT_VERSION,
        "chi_orb": format!("{chi}"),
        "degree": format!("{deg}"),
        "kodaira": format!("{kod}"),
    });
    Ok(Outcome::Pass(v, human))
}
