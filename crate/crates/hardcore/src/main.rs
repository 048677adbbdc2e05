//! Command-line harness: one subcommand per experiment, JSON for verdicts
//! and reports, CSV for grids and series.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use hardcore::certify::bnb::{CertifyOptions, Status};
use hardcore::certify::registry;
use hardcore::exact;
use hardcore::glauber::{self, StartState};
use hardcore::graph::{self, Graph, RngSeed};
use hardcore::surface;
use hardcore::tree;

#[derive(Parser)]
#[command(name = "hardcore", version, about = "Hard-core model toolkit: exact counting, tree recursions, moment surfaces, sign certification and Glauber dynamics")]
struct Cli {
    /// Load the full subcommand configuration from a JSON file instead of
    /// flags. The file holds the serialized subcommand record, so a saved
    /// config reproduces the run exactly.
    #[arg(long, conflicts_with = "command")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Command {
    /// Critical activity (exact) and the interpolation root for a degree.
    Thresholds(ThresholdsArgs),
    /// Fixed points of the occupancy recursion at (degree, activity).
    FixedPoints(FixedPointsArgs),
    /// Exact partition function of a graph at a rational activity.
    ExactZ(ExactZArgs),
    /// Exact Gibbs measures of the imbalance classes.
    ClassMeasures(ClassMeasuresArgs),
    /// Exact check of the vertex-blowup activity identity on random graphs.
    BlowupCheck(BlowupCheckArgs),
    /// Grid scan of the reduced pair-overlap surface at the fixed point.
    SurfaceScan(SurfaceScanArgs),
    /// Multistart check that the uncorrelated point maximizes the surface.
    VerifyCondition(VerifyConditionArgs),
    /// Sweep the activity grid: fixed points, contraction, gap, verdicts.
    PhaseScan(PhaseScanArgs),
    /// Run the interval certifier on a named sign claim.
    Certify(CertifyArgs),
    /// Simulate Glauber dynamics and report trajectory statistics.
    Glauber(GlauberArgs),
    /// Generate a random bipartite regular graph file.
    GenGraph(GenGraphArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Serialize, Deserialize)]
struct ThresholdsArgs {
    /// Tree degree, at least 3.
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    #[serde(default)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
struct FixedPointsArgs {
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    #[serde(default)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
struct ExactZArgs {
    /// Graph file in the edge-list text format.
    #[arg(long)]
    graph: PathBuf,
    /// Activity as an exact rational: "3", "1/2" or a finite decimal.
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    #[serde(default)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
struct ClassMeasuresArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    lambda: String,
    /// Imbalance slack delta of the class definition, exact rational.
    #[arg(long)]
    slack: String,
    #[arg(long)]
    #[serde(default)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
struct BlowupCheckArgs {
    /// Blowup orders to test, repeatable.
    #[arg(long, default_values_t = vec![2, 3])]
    #[serde(default = "default_ks")]
    k: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    #[serde(default = "default_trials")]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    seed: u64,
    #[arg(long)]
    #[serde(default)]
    out: Option<PathBuf>,
}

fn default_ks() -> Vec<usize> {
    vec![2, 3]
}
fn default_trials() -> usize {
    20
}

#[derive(Args, Serialize, Deserialize)]
struct SurfaceScanArgs {
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    lambda: f64,
    /// Grid resolution per overlap axis.
    #[arg(long, default_value_t = 20)]
    #[serde(default = "default_grid")]
    grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    #[serde(default = "default_csv")]
    format: Format,
    #[arg(long)]
    #[serde(default)]
    out: Option<PathBuf>,
}

fn default_grid() -> usize {
    20
}
fn default_csv() -> Format {
    Format::Csv
}

#[derive(Args, Serialize, Deserialize)]
struct VerifyConditionArgs {
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    lambda: f64,
    /// Number of optimizer starts.
    #[arg(long, default_value_t = 200)]
    #[serde(default = "default_starts")]
    starts: usize,
    #[arg(long)]
    #[serde(default)]
    out: Option<PathBuf>,
}

fn default_starts() -> usize {
    200
}

#[derive(Args, Serialize, Deserialize)]
struct PhaseScanArgs {
    #[arg(long)]
    delta: usize,
    /// Comma-separated activity grid, e.g. "3.9,4.0,4.1".
    #[arg(long, value_delimiter = ',')]
    lambda_grid: Vec<f64>,
    /// Imbalance slack for the first-moment gap column.
    #[arg(long, default_value_t = 0.2)]
    #[serde(default = "default_slack")]
    slack: f64,
    /// Reduced optimizer budget for the per-row verdict.
    #[arg(long, default_value_t = 40)]
    #[serde(default = "default_scan_starts")]
    starts: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    #[serde(default = "default_csv")]
    format: Format,
    #[arg(long)]
    #[serde(default)]
    out: Option<PathBuf>,
}

fn default_slack() -> f64 {
    0.2
}
fn default_scan_starts() -> usize {
    40
}

#[derive(Args, Serialize, Deserialize)]
struct CertifyArgs {
    /// Claim id from the registry; see --list.
    #[arg(long, required_unless_present = "list")]
    #[serde(default)]
    claim: Option<String>,
    /// Print the claim catalog and exit.
    #[arg(long)]
    #[serde(default)]
    list: bool,
    #[arg(long, default_value_t = 0.01)]
    #[serde(default = "default_margin")]
    margin: f64,
    #[arg(long, default_value_t = 24)]
    #[serde(default = "default_depth")]
    depth: u32,
    #[arg(long, default_value_t = 4_000_000)]
    #[serde(default = "default_budget")]
    budget: u64,
    #[arg(long)]
    #[serde(default)]
    out: Option<PathBuf>,
}

fn default_margin() -> f64 {
    0.01
}
fn default_depth() -> u32 {
    24
}
fn default_budget() -> u64 {
    4_000_000
}

#[derive(Args, Serialize, Deserialize)]
struct GlauberArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    steps: u64,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    burn_in: u64,
    /// Sampling stride in steps; 0 means one sweep (n steps).
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    stride: u64,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    seed: u64,
    #[arg(long, default_value = "empty")]
    #[serde(default = "default_start")]
    start: String,
    /// Half-width of the imbalance band for crossing counts.
    #[arg(long, default_value_t = 0.2)]
    #[serde(default = "default_slack")]
    band: f64,
    /// Also write the sampled series as CSV to this path.
    #[arg(long)]
    #[serde(default)]
    series_out: Option<PathBuf>,
    #[arg(long)]
    #[serde(default)]
    out: Option<PathBuf>,
}

fn default_start() -> String {
    "empty".to_owned()
}

#[derive(Args, Serialize, Deserialize)]
struct GenGraphArgs {
    /// Vertices per side.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    degree: usize,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Tree(#[from] tree::TreeError),
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Exact(#[from] exact::ExactError),
    #[error(transparent)]
    Surface(#[from] surface::SurfaceError),
    #[error(transparent)]
    Glauber(#[from] glauber::GlauberError),
    #[error(transparent)]
    Registry(#[from] registry::RegistryError),
    #[error("cannot parse {0:?} as a rational number")]
    BadRational(String),
    #[error("{0}")]
    Invalid(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match load_command(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    match run(command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn load_command(cli: Cli) -> Result<Command, CliError> {
    match (cli.config, cli.command) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            Ok(serde_json::from_str(&text)?)
        }
        (None, Some(cmd)) => Ok(cmd),
        _ => Err(CliError::Invalid(
            "provide either a subcommand or --config".into(),
        )),
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Thresholds(a) => thresholds(a),
        Command::FixedPoints(a) => fixed_points(a),
        Command::ExactZ(a) => exact_z(a),
        Command::ClassMeasures(a) => class_measures(a),
        Command::BlowupCheck(a) => blowup_check(a),
        Command::SurfaceScan(a) => surface_scan(a),
        Command::VerifyCondition(a) => verify_condition(a),
        Command::PhaseScan(a) => phase_scan(a),
        Command::Certify(a) => certify(a),
        Command::Glauber(a) => glauber_cmd(a),
        Command::GenGraph(a) => gen_graph(a),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(out, &text)
}

/// Parse "3", "-1/2" or a finite decimal like "0.25" into an exact rational.
fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::BadRational(s.to_owned());
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(BigRational::new(num, den));
    }
    let num: BigInt = s.trim().parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(num))
}

fn rational_strings(r: &BigRational) -> (String, f64) {
    (r.to_string(), r.to_f64().unwrap_or(f64::NAN))
}

fn thresholds(a: ThresholdsArgs) -> Result<(), CliError> {
    let lc = tree::lambda_c(a.delta)?;
    let (lc_str, lc_f64) = rational_strings(&lc);
    let lh = tree::lambda_half(a.delta)?;
    #[derive(Serialize)]
    struct Report {
        delta: usize,
        lambda_c: String,
        lambda_c_f64: f64,
        lambda_half: f64,
        lambda_half_tolerance: f64,
    }
    emit_json(
        &a.out,
        &Report {
            delta: a.delta,
            lambda_c: lc_str,
            lambda_c_f64: lc_f64,
            lambda_half: lh,
            lambda_half_tolerance: 1e-9,
        },
    )
}

fn fixed_points(a: FixedPointsArgs) -> Result<(), CliError> {
    let fp = tree::fixed_points(a.lambda, a.delta)?;
    #[derive(Serialize)]
    struct Report {
        #[serde(flatten)]
        fp: tree::CriticalPoints,
        residual_tolerance: f64,
    }
    emit_json(
        &a.out,
        &Report {
            fp,
            residual_tolerance: 1e-12,
        },
    )
}

fn exact_z(a: ExactZArgs) -> Result<(), CliError> {
    let g = graph::load_graph(&a.graph)?;
    let lambda = parse_rational(&a.lambda)?;
    let z = exact::partition_function_rational(&g, &lambda)?;
    let (z_str, z_f64) = rational_strings(&z);
    let counts = exact::size_counts(&g)?;
    #[derive(Serialize)]
    struct Report {
        n_vertices: usize,
        lambda: String,
        z: String,
        z_f64: f64,
        independent_sets: String,
        /// Exact rational arithmetic throughout.
        tolerance: f64,
    }
    emit_json(
        &a.out,
        &Report {
            n_vertices: g.n_vertices(),
            lambda: lambda.to_string(),
            z: z_str,
            z_f64,
            independent_sets: counts.iter().sum::<num_bigint::BigUint>().to_string(),
            tolerance: 0.0,
        },
    )
}

fn class_measures(a: ClassMeasuresArgs) -> Result<(), CliError> {
    let g = graph::load_graph(&a.graph)?;
    let lambda = parse_rational(&a.lambda)?;
    let slack = parse_rational(&a.slack)?;
    let m = exact::class_measures(&g, &lambda, &slack)?;
    #[derive(Serialize)]
    struct Report {
        #[serde(flatten)]
        measures: exact::ClassMeasures,
        /// Final float conversion of exact rationals.
        tolerance: f64,
    }
    emit_json(
        &a.out,
        &Report {
            measures: m,
            tolerance: f64::EPSILON,
        },
    )
}

fn blowup_check(a: BlowupCheckArgs) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let activities: Vec<BigRational> = ["1/2", "1", "3"]
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_, _>>()?;
    #[derive(Serialize)]
    struct Trial {
        n: usize,
        edges: usize,
        k: usize,
        lambda: String,
        ok: bool,
    }
    let mut trials = Vec::new();
    let mut failures = 0usize;
    for _ in 0..a.trials {
        let n = rng.gen_range(4..=8usize);
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                if rng.gen_bool(0.4) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, edges).expect("generated edges are in range");
        for &k in &a.k {
            let h = graph::blowup(&g, k);
            for lambda in &activities {
                let lhs =
                    exact::partition_function_rational(&g, &exact::blowup_activity(lambda, k))?;
                let rhs = exact::partition_function_rational(&h, lambda)?;
                let ok = lhs == rhs;
                if !ok {
                    failures += 1;
                }
                trials.push(Trial {
                    n,
                    edges: g.n_edges(),
                    k,
                    lambda: lambda.to_string(),
                    ok,
                });
            }
        }
    }
    #[derive(Serialize)]
    struct Report {
        seed: u64,
        checks: usize,
        failures: usize,
        /// Exact rational equality, zero tolerance.
        tolerance: f64,
        trials: Vec<Trial>,
    }
    emit_json(
        &a.out,
        &Report {
            seed: a.seed,
            checks: trials.len(),
            failures,
            tolerance: 0.0,
            trials,
        },
    )?;
    if failures > 0 {
        return Err(CliError::Invalid(format!(
            "{failures} blowup identity checks failed"
        )));
    }
    Ok(())
}

fn surface_scan(a: SurfaceScanArgs) -> Result<(), CliError> {
    let fp = tree::fixed_points(a.lambda, a.delta)?;
    let (alpha, beta) = (fp.p_plus, fp.p_minus);
    if a.grid < 2 {
        return Err(CliError::Invalid("grid must be at least 2".into()));
    }
    #[derive(Serialize)]
    struct Row {
        gamma: f64,
        delta: f64,
        f: Option<f64>,
        d_gamma: Option<f64>,
        d_delta: Option<f64>,
        error: Option<String>,
    }
    let mut rows = Vec::new();
    for i in 1..a.grid {
        for j in 1..a.grid {
            let gamma = alpha * i as f64 / a.grid as f64;
            let delta = beta * j as f64 / a.grid as f64;
            let mut row = Row {
                gamma,
                delta,
                f: None,
                d_gamma: None,
                d_delta: None,
                error: None,
            };
            match surface::f_value(gamma, delta, alpha, beta, a.lambda, a.delta) {
                Ok(f) => {
                    row.f = Some(f);
                    if let Ok(fg) =
                        surface::f_gradient(gamma, delta, alpha, beta, a.lambda, a.delta)
                    {
                        row.d_gamma = Some(fg.d_gamma);
                        row.d_delta = Some(fg.d_delta);
                    }
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            rows.push(row);
        }
    }
    #[derive(Serialize)]
    struct Report {
        delta_deg: usize,
        lambda: f64,
        alpha: f64,
        beta: f64,
        gradient_tolerance: f64,
        rows: Vec<Row>,
    }
    let report = Report {
        delta_deg: a.delta,
        lambda: a.lambda,
        alpha,
        beta,
        gradient_tolerance: 1e-8,
        rows,
    };
    match a.format {
        Format::Json => emit_json(&a.out, &report),
        Format::Csv => {
            let mut text = String::from("gamma,delta,f,d_gamma,d_delta,error\n");
            for r in &report.rows {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{},{}",
                    r.gamma,
                    r.delta,
                    r.f.map(|v| v.to_string()).unwrap_or_default(),
                    r.d_gamma.map(|v| v.to_string()).unwrap_or_default(),
                    r.d_delta.map(|v| v.to_string()).unwrap_or_default(),
                    r.error.as_deref().unwrap_or("")
                );
            }
            emit(&a.out, &text)
        }
    }
}

fn verify_condition(a: VerifyConditionArgs) -> Result<(), CliError> {
    let verdict = surface::verify_condition(a.lambda, a.delta, a.starts)?;
    #[derive(Serialize)]
    struct Report {
        delta: usize,
        lambda: f64,
        starts: usize,
        maximizer_tolerance: f64,
        verdict: surface::ConditionVerdict,
    }
    emit_json(
        &a.out,
        &Report {
            delta: a.delta,
            lambda: a.lambda,
            starts: a.starts,
            maximizer_tolerance: 1e-6,
            verdict,
        },
    )
}

fn phase_scan(a: PhaseScanArgs) -> Result<(), CliError> {
    if a.lambda_grid.is_empty() {
        return Err(CliError::Invalid("lambda grid is empty".into()));
    }
    #[derive(Serialize)]
    struct Row {
        lambda: f64,
        p_minus: Option<f64>,
        p_star: Option<f64>,
        p_plus: Option<f64>,
        q_product: Option<f64>,
        tau: Option<f64>,
        verdict: Option<String>,
        error: Option<String>,
    }
    let mut rows = Vec::new();
    for &lambda in &a.lambda_grid {
        let mut row = Row {
            lambda,
            p_minus: None,
            p_star: None,
            p_plus: None,
            q_product: None,
            tau: None,
            verdict: None,
            error: None,
        };
        let record_err = |row: &mut Row, e: String| {
            if row.error.is_none() {
                row.error = Some(e);
            }
        };
        match tree::fixed_points(lambda, a.delta) {
            Ok(fp) => {
                row.p_minus = Some(fp.p_minus);
                row.p_star = Some(fp.p_star);
                row.p_plus = Some(fp.p_plus);
            }
            Err(e) => record_err(&mut row, e.to_string()),
        }
        match tree::contraction_factor(lambda, a.delta) {
            Ok(q) => row.q_product = Some(q),
            Err(e) => record_err(&mut row, e.to_string()),
        }
        match surface::phi1_gap(lambda, a.delta, a.slack) {
            Ok(t) => row.tau = Some(t),
            Err(e) => record_err(&mut row, e.to_string()),
        }
        match surface::verify_condition(lambda, a.delta, a.starts) {
            Ok(v) => {
                row.verdict = Some(match v {
                    surface::ConditionVerdict::VerifiedNumerically { .. } => {
                        "VerifiedNumerically".into()
                    }
                    surface::ConditionVerdict::CounterexampleFound { .. } => {
                        "CounterexampleFound".into()
                    }
                    surface::ConditionVerdict::Inconclusive => "Inconclusive".into(),
                })
            }
            Err(e) => record_err(&mut row, e.to_string()),
        }
        rows.push(row);
    }
    #[derive(Serialize)]
    struct Report {
        delta: usize,
        slack: f64,
        starts: usize,
        gap_tolerance: f64,
        rows: Vec<Row>,
    }
    let report = Report {
        delta: a.delta,
        slack: a.slack,
        starts: a.starts,
        gap_tolerance: 1e-6,
        rows,
    };
    match a.format {
        Format::Json => emit_json(&a.out, &report),
        Format::Csv => {
            let mut text =
                String::from("lambda,p_minus,p_star,p_plus,q_product,tau,verdict,error\n");
            let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            for r in &report.rows {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{},{},{},{}",
                    r.lambda,
                    cell(r.p_minus),
                    cell(r.p_star),
                    cell(r.p_plus),
                    cell(r.q_product),
                    cell(r.tau),
                    r.verdict.as_deref().unwrap_or(""),
                    r.error.as_deref().unwrap_or("")
                );
            }
            emit(&a.out, &text)
        }
    }
}

fn certify(a: CertifyArgs) -> Result<(), CliError> {
    if a.list {
        return emit_json(&a.out, &registry::claims());
    }
    let id = a.claim.expect("clap enforces --claim unless --list");
    let info = registry::claim(&id)?;
    let opts = CertifyOptions {
        margin: a.margin,
        max_depth: a.depth,
        cell_budget: a.budget,
    };
    let report = registry::run_claim(&id, &opts)?;
    #[derive(Serialize)]
    struct Full<'a> {
        claim: &'a registry::ClaimInfo,
        report: &'a hardcore::certify::bnb::CertificateReport,
    }
    emit_json(
        &a.out,
        &Full {
            claim: info,
            report: &report,
        },
    )?;
    if report.status == Status::Falsified && info.expected != Status::Falsified {
        return Err(CliError::Invalid(format!("claim {id} was falsified")));
    }
    Ok(())
}

fn glauber_cmd(a: GlauberArgs) -> Result<(), CliError> {
    let g = graph::load_graph(&a.graph)?;
    let start: StartState = a
        .start
        .parse()
        .map_err(CliError::Invalid)?;
    let stride = if a.stride == 0 {
        g.n_vertices().max(1) as u64
    } else {
        a.stride
    };
    let stats = glauber::run_chain(
        &g, a.lambda, a.steps, a.burn_in, stride, a.seed, start, a.band,
    )?;
    if let Some(path) = &a.series_out {
        let mut text = String::from("sample,imbalance,occupancy\n");
        for (i, (imb, occ)) in stats
            .imbalance_series
            .iter()
            .zip(&stats.occupancy_series)
            .enumerate()
        {
            let _ = writeln!(text, "{i},{imb},{occ}");
        }
        std::fs::write(path, text)?;
    }
    #[derive(Serialize)]
    struct Report {
        lambda: f64,
        steps: u64,
        burn_in: u64,
        stride: u64,
        seed: u64,
        start: StartState,
        samples: usize,
        crossings: u64,
        band: f64,
        acceptance_rate: f64,
        mean_imbalance: f64,
        mean_occupancy: f64,
    }
    let mean = |xs: &[f64]| {
        if xs.is_empty() {
            0.0
        } else {
            xs.iter().sum::<f64>() / xs.len() as f64
        }
    };
    emit_json(
        &a.out,
        &Report {
            lambda: a.lambda,
            steps: a.steps,
            burn_in: a.burn_in,
            stride,
            seed: a.seed,
            start,
            samples: stats.imbalance_series.len(),
            crossings: stats.crossings,
            band: stats.band,
            acceptance_rate: stats.acceptance_rate,
            mean_imbalance: mean(&stats.imbalance_series),
            mean_occupancy: mean(&stats.occupancy_series),
        },
    )
}

fn gen_graph(a: GenGraphArgs) -> Result<(), CliError> {
    if a.degree < 1 || a.degree > a.n {
        return Err(CliError::Invalid(format!(
            "degree {} out of range for n {}",
            a.degree, a.n
        )));
    }
    let g = graph::generate_bipartite_regular(a.n, a.degree, RngSeed(a.seed));
    graph::save_graph(&g, &a.out)?;
    Ok(())
}
