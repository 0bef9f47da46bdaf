use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use mixjoin::degeneracy::{check_local_tameness, check_strong_nondegeneracy, DegeneracyConfig, FaceVerdict, TamenessVerdict};
use mixjoin::foxcalc::{
    exact_sequence_dims, h_der_matrix, ladder_commutes, matrix_to_json, representation_from_json, zeta_gd_component,
    ExactSequenceDims, RepresentationJson, WordsJson,
};
use mixjoin::joincore::{
    builtin_bundles, count_axis_function, count_fiber_points, cross_check, join_zeta, method_name, Bundle, CountConfig,
    CountMethod, CrossCheck, FiberCount, JoinConfig, JoinReport,
};
use mixjoin::laurent::CoeffJson;
use mixjoin::mixedpoly::{parse, CoordSubset, MixedPolynomial};
use mixjoin::newton::{canonical_strata, compact_faces, support, LatticePoint, NewtonPolygon, Stratum};
use mixjoin::zeta::{CyclicConvention, ZetaFunction};
use mixjoin::Error;

const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;
const EXIT_FLAGGED: u8 = 4;

#[derive(Parser)]
#[command(name = "mixjoin", version, about = "Newton boundaries, degeneracy checks and join zeta functions of mixed polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the JSON report on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized searches and sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Work limit: objective evaluations per start (analyze) or cells (count, join).
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Disk radius for fiber counts.
    #[arg(long, global = true)]
    radius: Option<f64>,
    /// Regular value whose fiber is counted.
    #[arg(long, global = true)]
    target: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Support, Newton boundary, index sets, strata and degeneracy verdicts.
    Analyze {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 2)]
        vars: usize,
    },
    /// Zeta function of g(f1, f2) from a bundle file or `builtin:<name>`.
    Join {
        #[arg(long)]
        bundle: String,
        /// Reject axis-multiplicity violations instead of flagging them.
        #[arg(long)]
        strict_axis: bool,
        #[arg(long, value_enum, default_value = "one-twist")]
        convention: ConventionArg,
    },
    /// Fiber points of g on an axis; with `--vars 1` the expression is the restriction itself.
    Count {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 2)]
        vars: usize,
        #[arg(long, default_value_t = 1)]
        axis: usize,
    },
    /// Fox-calculus action of h on derivations from a words/representation file.
    Fox {
        #[arg(long)]
        bundle: PathBuf,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ConventionArg {
    OneTwist,
    AllTwist,
}

#[derive(Serialize)]
struct RunConfig {
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    degeneracy: Option<DegeneracyConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<CountConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    join: Option<JoinConfig>,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    config: RunConfig,
    report: T,
}

struct Outcome {
    json: String,
    text: String,
    code: u8,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { expr, vars } => analyze(&cli, expr, *vars),
        Command::Join { bundle, strict_axis, convention } => join(&cli, bundle, *strict_axis, *convention),
        Command::Count { expr, vars, axis } => count(&cli, expr, *vars, *axis),
        Command::Fox { bundle } => fox(&cli, bundle),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(Failure::Input(msg)) => return fail(EXIT_INPUT, msg),
        Err(Failure::Internal(msg)) => return fail(EXIT_INTERNAL, msg),
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{}\n", outcome.json)) {
            return fail(EXIT_INPUT, format!("cannot write {}: {e}", path.display()));
        }
    }
    if cli.json {
        println!("{}", outcome.json);
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(outcome.code)
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

fn render<T: Serialize>(command: &str, config: RunConfig, report: &T) -> std::result::Result<String, Failure> {
    serde_json::to_string_pretty(&Envelope { command, config, report }).map_err(|e| Failure::Internal(e.to_string()))
}

fn count_config(cli: &Cli) -> CountConfig {
    let d = CountConfig::default();
    CountConfig {
        target: cli.target.unwrap_or(d.target),
        radius: cli.radius.unwrap_or(d.radius),
        budget: cli.budget.unwrap_or(d.budget),
    }
}

fn parse_expr(expr: &str, vars: usize) -> std::result::Result<MixedPolynomial, Failure> {
    let p = parse(expr, vars)?;
    if p.is_zero() {
        return Err(Failure::Input(Error::ZeroPolynomial.to_string()));
    }
    Ok(p)
}

fn subset_text(s: &CoordSubset) -> String {
    let idx: Vec<String> = s.indices().iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", idx.join(","))
}

fn point_text(p: &LatticePoint) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct AnalyzeReport {
    expr: String,
    vars: usize,
    support: Vec<LatticePoint>,
    newton_boundary: NewtonPolygon,
    convenient: bool,
    i_v: Vec<CoordSubset>,
    i_nv: Vec<CoordSubset>,
    strata: Vec<Stratum>,
    nondegeneracy: Vec<FaceVerdict>,
    local_tameness: Vec<TamenessVerdict>,
}

fn analyze(cli: &Cli, expr: &str, vars: usize) -> CmdResult {
    let p = parse_expr(expr, vars)?;
    let mut cfg = DegeneracyConfig { seed: cli.seed, ..DegeneracyConfig::default() };
    if let Some(b) = cli.budget {
        cfg.max_evals = b;
    }
    let supp = support(&p)?;
    let poly = compact_faces(&p)?;
    let (i_nv, i_v) = p.index_sets();
    let strata = canonical_strata(&p)?;
    let nondegeneracy = check_strong_nondegeneracy(&p, &cfg)?;
    let local_tameness = check_local_tameness(&p, &cfg)?;

    for f in poly.faces.iter().chain(&poly.noncompact) {
        if let Some(x) = f.lattice_points.iter().find(|x| !supp.contains(x)) {
            return Err(Failure::Internal(format!("face point {} is not in the support", point_text(x))));
        }
    }
    if i_v.len() + i_nv.len() != (1usize << vars) - 1 {
        return Err(Failure::Internal("index sets do not partition the coordinate subsets".into()));
    }

    let report = AnalyzeReport {
        expr: p.format(),
        vars,
        support: supp,
        convenient: p.is_convenient(),
        newton_boundary: poly,
        i_v,
        i_nv,
        strata,
        nondegeneracy,
        local_tameness,
    };
    let mut t = String::new();
    let _ = writeln!(t, "g = {}", report.expr);
    let pts: Vec<String> = report.support.iter().map(point_text).collect();
    let _ = writeln!(t, "support: {}", pts.join(" "));
    let nb = &report.newton_boundary;
    let _ = writeln!(t, "newton boundary: vertices {}, edges {}", nb.vertices().count(), nb.edges().count());
    for f in &nb.faces {
        let _ = writeln!(t, "  {f}");
    }
    let _ = writeln!(t, "convenient: {}", report.convenient);
    let sets = |v: &[CoordSubset]| v.iter().map(subset_text).collect::<Vec<_>>().join(" ");
    let _ = writeln!(t, "I_v = [{}]  I_nv = [{}]", sets(&report.i_v), sets(&report.i_nv));
    let _ = writeln!(t, "strata:");
    for s in &report.strata {
        let _ = writeln!(t, "  {}", s.label);
    }
    let _ = writeln!(t, "strong non-degeneracy:");
    for fv in &report.nondegeneracy {
        let _ = writeln!(t, "  {}: {} ({})", fv.face, fv.verdict.status, fv.verdict.evidence);
    }
    let _ = writeln!(t, "local tameness:");
    if report.local_tameness.is_empty() {
        let _ = writeln!(t, "  no coordinate subset in I_v");
    }
    for tv in &report.local_tameness {
        let _ = writeln!(t, "  I = {}: {} ({})", subset_text(&tv.subset), tv.verdict.status, tv.verdict.evidence);
    }
    let config = RunConfig { seed: cli.seed, degeneracy: Some(cfg), count: None, join: None };
    Ok(Outcome { json: render("analyze", config, &report)?, text: t, code: 0 })
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct JoinOutput<'a> {
    join: &'a JoinReport,
    cross_check: &'a CrossCheck,
}

fn load_bundle(arg: &str) -> std::result::Result<Bundle, Failure> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        let all = builtin_bundles();
        return all.get(name).cloned().ok_or_else(|| {
            let names: Vec<&str> = all.keys().copied().collect();
            Failure::Input(format!("unknown builtin bundle '{name}' (known: {})", names.join(", ")))
        });
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("cannot read {arg}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed bundle: {e}")))
}

fn join(cli: &Cli, bundle: &str, strict_axis: bool, convention: ConventionArg) -> CmdResult {
    let b = load_bundle(bundle)?;
    let input = b.to_input()?;
    let cfg = JoinConfig {
        strict_axis,
        count: count_config(cli),
        convention: match convention {
            ConventionArg::OneTwist => CyclicConvention::OneTwist,
            ConventionArg::AllTwist => CyclicConvention::AllTwist,
        },
    };
    let report = join_zeta(&input, &cfg)?;
    let checks = cross_check(&input, &report, b.chi, &cfg)?;
    let mut t = report.render_text();
    let _ = writeln!(t, "cross-checks:");
    for c in &checks.checks {
        let _ = writeln!(t, "  [{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
    }
    let code = if checks.all_passed() { 0 } else { EXIT_FLAGGED };
    let config = RunConfig { seed: cli.seed, degeneracy: None, count: None, join: Some(cfg) };
    let json = render("join", config, &JoinOutput { join: &report, cross_check: &checks })?;
    Ok(Outcome { json, text: t, code })
}

// ---------------------------------------------------------------------------

fn count(cli: &Cli, expr: &str, vars: usize, axis: usize) -> CmdResult {
    let cfg = count_config(cli);
    let fc: FiberCount = match vars {
        1 => count_axis_function(&parse_expr(expr, 1)?, 0, &cfg)?,
        2 => count_fiber_points(&parse_expr(expr, 2)?, axis, &cfg)?,
        _ => return Err(Failure::Input("count needs --vars 1 or 2".into())),
    };
    let mut t = String::new();
    if fc.axis > 0 {
        let _ = writeln!(t, "axis z{} = 0", fc.axis);
    }
    match fc.count {
        Some(k) => {
            let _ = writeln!(t, "count: {k} [{}]", method_name(fc.method));
        }
        None => {
            let _ = writeln!(t, "count: undetermined [{}]", method_name(fc.method));
        }
    }
    if let Some(f) = fc.formula {
        let _ = writeln!(t, "formula: {f}");
    }
    if let Some(o) = &fc.oracle {
        match o.exact() {
            Some(k) => {
                let _ = writeln!(t, "oracle: {k} ({} cells)", o.cells);
            }
            None => {
                let _ = writeln!(t, "oracle: between {} and {} ({} cells)", o.lower, o.upper, o.cells);
            }
        }
    }
    let _ = writeln!(t, "{}", fc.note);
    let code = if fc.method == CountMethod::MismatchReport { EXIT_FLAGGED } else { 0 };
    let config = RunConfig { seed: cli.seed, degeneracy: None, count: Some(cfg), join: None };
    Ok(Outcome { json: render("count", config, &fc)?, text: t, code })
}

// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct FoxInput {
    #[serde(flatten)]
    words: WordsJson,
    representation: RepresentationJson,
}

#[derive(Serialize)]
struct FoxReport {
    h_der: Vec<Vec<CoeffJson>>,
    exact_sequence: ExactSequenceDims,
    ladder_commutes: bool,
    zeta: ZetaFunction,
    zeta_text: String,
}

fn fox(cli: &Cli, path: &PathBuf) -> CmdResult {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let input: FoxInput = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed input: {e}")))?;
    let words = input.words.to_words()?;
    let (rho, rho_h) = representation_from_json(&input.representation, input.words.mu)?;
    let hder = h_der_matrix(&words, &rho, &rho_h)?;
    let dims = exact_sequence_dims(&rho);
    if dims.alternating_sum() != 0 {
        return Err(Failure::Internal(format!("exact sequence dimensions {dims:?} do not balance")));
    }
    let ladder = ladder_commutes(&words, &rho, &rho_h)?;
    let zeta = zeta_gd_component(&rho_h, &hder)?;
    let report = FoxReport {
        h_der: matrix_to_json(&hder),
        exact_sequence: dims,
        ladder_commutes: ladder,
        zeta_text: zeta.to_string(),
        zeta,
    };
    let mut t = String::new();
    let _ = writeln!(t, "h_Der ({}x{}):", hder.rows(), hder.cols());
    for row in hder.to_rows() {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(t, "  [{}]", cells.join(", "));
    }
    let _ = writeln!(
        t,
        "dims: H0 = {}, A = {}, Der = {}, H1 = {}",
        dims.h0, dims.a, dims.der, dims.h1
    );
    let _ = writeln!(t, "ladder commutes: {ladder}");
    let _ = writeln!(t, "det(I - lambda rho(h)) / det(I - lambda h_Der) = {}", report.zeta_text);
    let code = if ladder { 0 } else { EXIT_FLAGGED };
    let config = RunConfig { seed: cli.seed, degeneracy: None, count: None, join: None };
    Ok(Outcome { json: render("fox", config, &report)?, text: t, code })
}
