//! The `iterlab` experiment driver.
//!
//! Every command reads one TOML config file (`schema = 1`). Exit codes: 0 on
//! success (including an inapplicable bound), 1 when a measured iteration
//! count violates its bound, 2 on any input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{
    family_curves, verify_bound_with, BoundInput, BoundResult, Schedule, VerifyReport,
    VerifyStatus, SCHEMA_VERSION,
};
use crate::degree_dist::{
    build_right_regular, mix_degree_two, Channel, Distribution, EdgeDist, Ensemble, Family,
};
use crate::density_evolution::{
    run_family, threshold_search, tilted_recursion_run, turbo_de_run, CurvePoint, DeConfig,
    FamilyTrajectory, DEFAULT_FP_TOL,
};
use crate::error::{Error, Result};
use crate::peeling_sim::{concentration_report, simulate, SimConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Environment variable that overrides the simulation seed.
pub const SEED_ENV: &str = "ITERLAB_SEED";

#[derive(Parser, Debug)]
#[command(name = "iterlab", version, about = "Iterative decoding analysis on the erasure channel")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run density evolution and write the trajectory.
    De(CommonArgs),
    /// Evaluate one closed-form iteration bound.
    Bound(CommonArgs),
    /// Compare a density-evolution iteration count with its bound.
    Verify(CommonArgs),
    /// Sweep the capacity gap and tabulate iterations and complexity.
    Scan(CommonArgs),
    /// Bisect for the erasure threshold.
    Threshold(CommonArgs),
    /// Monte Carlo decoding on sampled graphs.
    Simulate(CommonArgs),
    /// Sample the decoding curves.
    ExitChart(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    schema: u32,
    ensemble: Option<EnsembleSection>,
    de: Option<DeSection>,
    bound: Option<BoundSection>,
    threshold: Option<ThresholdSection>,
    simulate: Option<SimSection>,
    scan: Option<ScanSection>,
    exit_chart: Option<ExitChartSection>,
    output: Option<OutputSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnsembleSection {
    family: Family,
    lambda: Option<String>,
    rho: Option<String>,
    lambda_file: Option<PathBuf>,
    rho_file: Option<PathBuf>,
    right_regular: Option<RightRegular>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RightRegular {
    a: usize,
    d: usize,
    #[serde(default)]
    mu: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeSection {
    p: f64,
    target_pb: f64,
    #[serde(default = "default_max_iter")]
    max_iter: usize,
    #[serde(default = "default_fp_tol")]
    fp_tol: f64,
    #[serde(default)]
    schedule: Schedule,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum BoundKind {
    Ldpc,
    Ara,
    Turbo,
    IraSystematic,
    IraNonsystematic,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundSection {
    kind: BoundKind,
    epsilon: f64,
    p: f64,
    pb: f64,
    l2: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThresholdSection {
    tol: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimSection {
    n: usize,
    p: f64,
    trials: usize,
    seed: u64,
    #[serde(default = "default_sim_max_iter")]
    max_iter: usize,
    #[serde(default)]
    target_pb: f64,
    #[serde(default = "default_compare")]
    compare_iterations: usize,
    #[serde(default = "default_tolerance")]
    tolerance: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanSection {
    epsilons: Vec<f64>,
    target_pb: f64,
    #[serde(default = "default_max_iter")]
    max_iter: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExitChartSection {
    p: f64,
    #[serde(default = "default_samples")]
    samples: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    path: Option<PathBuf>,
    format: Option<Format>,
}

fn default_max_iter() -> usize {
    100_000
}
fn default_fp_tol() -> f64 {
    DEFAULT_FP_TOL
}
fn default_sim_max_iter() -> usize {
    1000
}
fn default_compare() -> usize {
    50
}
fn default_tolerance() -> f64 {
    0.005
}
fn default_samples() -> usize {
    512
}

/// Command failure, split by exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Six significant digits for human-readable summaries.
fn human(x: f64) -> String {
    match format!("{x:.5e}").parse::<f64>() {
        Ok(v) => format!("{v}"),
        Err(_) => x.to_string(),
    }
}

/// Seventeen significant digits for machine formats.
fn machine(x: f64) -> String {
    format!("{x:.16e}")
}

struct Context {
    config: Config,
    base: PathBuf,
    out: Option<PathBuf>,
    format: Option<Format>,
}

impl Context {
    fn load(args: &CommonArgs) -> std::result::Result<Self, Failure> {
        let text = fs::read_to_string(&args.config).map_err(|e| {
            Failure::Input(format!("cannot read {}: {e}", args.config.display()))
        })?;
        let config: Config =
            toml::from_str(&text).map_err(|e| Failure::Input(format!("bad config: {e}")))?;
        if config.schema != SCHEMA_VERSION {
            return Err(Failure::Input(format!(
                "unsupported schema {} (expected {SCHEMA_VERSION})",
                config.schema
            )));
        }
        let base = args
            .config
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_default();
        let section = config.output.as_ref();
        let out = args
            .out
            .clone()
            .or_else(|| section.and_then(|o| o.path.as_ref()).map(|p| base.join(p)));
        let format = args.format.or_else(|| section.and_then(|o| o.format));
        Ok(Self {
            config,
            base,
            out,
            format,
        })
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn section<'a, T>(&self, s: &'a Option<T>, name: &str) -> std::result::Result<&'a T, Failure> {
        s.as_ref()
            .ok_or_else(|| Failure::Input(format!("config has no [{name}] section")))
    }

    fn distribution(&self, inline: &Option<String>, file: &Option<PathBuf>, name: &str) -> Result<EdgeDist> {
        let text = match (inline, file) {
            (Some(t), None) => t.clone(),
            (None, Some(f)) => {
                let path = self.base.join(f);
                fs::read_to_string(&path)
                    .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?
            }
            _ => {
                return Err(Error::Config(format!(
                    "give exactly one of `{name}` or `{name}_file`"
                )))
            }
        };
        Ok(Distribution::parse(&text)?.into_edge())
    }

    fn ensemble(&self) -> std::result::Result<Ensemble, Failure> {
        let s = self.section(&self.config.ensemble, "ensemble")?;
        if let Some(rr) = &s.right_regular {
            if s.family != Family::Ldpc {
                return Err(Failure::Input("right_regular builds LDPC ensembles only".into()));
            }
            let base = build_right_regular(rr.a, rr.d)?;
            let lambda = mix_degree_two(base.lambda(), rr.mu)?;
            return Ok(Ensemble::ldpc(lambda, base.rho().clone()));
        }
        let lambda = self.distribution(&s.lambda, &s.lambda_file, "lambda")?;
        let rho = self.distribution(&s.rho, &s.rho_file, "rho")?;
        Ok(Ensemble::new(s.family, lambda, rho))
    }

    /// Writes `body` atomically to the output path, or to stdout.
    fn emit(&self, body: &str) -> CmdResult {
        match &self.out {
            Some(path) => write_atomic(path, body),
            None => {
                print!("{body}");
                Ok(())
            }
        }
    }
}

fn write_atomic(path: &Path, body: &str) -> CmdResult {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let io = |e: std::io::Error| Failure::Input(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(body.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> std::result::Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn de_config(s: &DeSection) -> Result<DeConfig> {
    DeConfig::with_tolerance(s.p, s.target_pb, s.max_iter, s.fp_tol)
}

#[derive(Serialize)]
struct TrajectoryJson<'a> {
    schema: u32,
    family: Family,
    schedule: Schedule,
    p: f64,
    target_pb: f64,
    initial_pb: f64,
    iterations_to_target: Option<usize>,
    terminal: &'a str,
    fixed_point_target: Option<f64>,
    pb: &'a [f64],
}

fn cmd_de(ctx: &Context) -> CmdResult {
    let s = ctx.section(&ctx.config.de, "de")?;
    let e = ctx.ensemble()?;
    let cfg = de_config(s)?;
    let traj = match s.schedule {
        Schedule::Flooding => run_family(&e, &cfg)?,
        Schedule::Tilted => FamilyTrajectory::Scalar(tilted_recursion_run(&e, &cfg)?),
        Schedule::Turbo => FamilyTrajectory::Scalar(turbo_de_run(&e, &cfg)?),
    };
    let body = match ctx.format_or(Format::Csv) {
        Format::Csv => traj.to_csv(),
        Format::Json => {
            let initial_pb = match &traj {
                FamilyTrajectory::Scalar(t) => t.initial_pb,
                FamilyTrajectory::Ara(t) => t.initial_pb,
            };
            to_json(&TrajectoryJson {
                schema: SCHEMA_VERSION,
                family: e.family(),
                schedule: s.schedule,
                p: cfg.p,
                target_pb: cfg.target_pb,
                initial_pb,
                iterations_to_target: traj.iterations_to_target(),
                terminal: traj.terminal().name(),
                fixed_point_target: traj.fixed_point_target(),
                pb: traj.pb_per_iter(),
            })?
        }
    };
    ctx.emit(&body)?;
    let l = traj
        .iterations_to_target()
        .map_or_else(|| "not reached".to_string(), |l| l.to_string());
    eprintln!("iterations_to_target: {l}");
    eprintln!("terminal: {}", traj.terminal().name());
    Ok(())
}

#[derive(Serialize)]
struct BoundJson<'a> {
    schema: u32,
    kind: &'a str,
    #[serde(flatten)]
    result: &'a BoundResult,
}

fn cmd_bound(ctx: &Context) -> CmdResult {
    use crate::bounds::{ara_bound, ira_bound, ldpc_bound, turbo_bound_alias};
    let s = ctx.section(&ctx.config.bound, "bound")?;
    let input = BoundInput::new(s.epsilon, s.p, s.pb, s.l2)?;
    let (kind, result) = match s.kind {
        BoundKind::Ldpc => ("ldpc", ldpc_bound(input)?),
        BoundKind::Ara => ("ara", ara_bound(input)?),
        BoundKind::Turbo => ("turbo", turbo_bound_alias(input)?),
        BoundKind::IraSystematic => ("ira-systematic", ira_bound(input, true)?),
        BoundKind::IraNonsystematic => ("ira-nonsystematic", ira_bound(input, false)?),
    };
    let body = match ctx.format_or(Format::Json) {
        Format::Json => to_json(&BoundJson {
            schema: SCHEMA_VERSION,
            kind,
            result: &result,
        })?,
        Format::Csv => format!(
            "schema,kind,epsilon,p,pb,l2,value,applicable,precondition\n{},{kind},{},{},{},{},{},{},{}\n",
            SCHEMA_VERSION,
            machine(input.epsilon),
            machine(input.p),
            machine(input.pb),
            machine(input.l2),
            machine(result.value),
            result.applicable,
            result.precondition
        ),
    };
    ctx.emit(&body)?;
    if result.applicable {
        eprintln!("bound: {}", human(result.value));
    } else {
        eprintln!("bound inapplicable: {} does not hold", result.precondition);
    }
    Ok(())
}

fn report_body(ctx: &Context, reports: &[VerifyReport]) -> std::result::Result<String, Failure> {
    Ok(match ctx.format_or(Format::Json) {
        Format::Json if reports.len() == 1 => to_json(&reports[0])?,
        Format::Json => to_json(&reports)?,
        Format::Csv => {
            let mut s = format!("{}\n", VerifyReport::CSV_HEADER);
            for r in reports {
                s.push_str(&r.to_csv_row());
                s.push('\n');
            }
            s
        }
    })
}

fn cmd_verify(ctx: &Context) -> CmdResult {
    let s = ctx.section(&ctx.config.de, "de")?;
    let e = ctx.ensemble()?;
    let report = verify_bound_with(&e, &de_config(s)?, s.schedule)?;
    ctx.emit(&report_body(ctx, std::slice::from_ref(&report))?)?;
    eprintln!(
        "measured {} vs bound {}: {}",
        report
            .measured_l
            .map_or_else(|| "not reached".to_string(), |l| l.to_string()),
        human(report.bound_l),
        report.status.name()
    );
    if report.status == VerifyStatus::Violated {
        return Err(Failure::Violation(format!(
            "measured iterations {:?} fall below the bound {}",
            report.measured_l, report.bound_l
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct ScanRow {
    epsilon: f64,
    p: f64,
    measured_l: Option<usize>,
    bound_l: f64,
    l_times_epsilon: Option<f64>,
    complexity: f64,
    status: VerifyStatus,
}

#[derive(Serialize)]
struct ScanJson<'a> {
    schema: u32,
    family: Family,
    rate: f64,
    rows: &'a [ScanRow],
}

fn cmd_scan(ctx: &Context) -> CmdResult {
    let s = ctx.section(&ctx.config.scan, "scan")?;
    if s.epsilons.is_empty() {
        return Err(Failure::Input("scan needs at least one epsilon".into()));
    }
    let e = ctx.ensemble()?;
    let rate = e.design_rate()?;
    let complexity = e.graphical_complexity()?;
    let mut rows = Vec::with_capacity(s.epsilons.len());
    let mut violated = false;
    for &eps in &s.epsilons {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Failure::Input(format!("epsilon {eps} is outside (0, 1)")));
        }
        let p = 1.0 - rate / (1.0 - eps);
        if !(0.0..1.0).contains(&p) {
            return Err(Failure::Input(format!("epsilon {eps} gives p = {p}")));
        }
        let cfg = DeConfig::new(p, s.target_pb, s.max_iter)?;
        let r = verify_bound_with(&e, &cfg, Schedule::Flooding)?;
        violated |= r.status == VerifyStatus::Violated;
        rows.push(ScanRow {
            epsilon: r.epsilon,
            p,
            measured_l: r.measured_l,
            bound_l: r.bound_l,
            l_times_epsilon: r.measured_l.map(|l| l as f64 * r.epsilon),
            complexity,
            status: r.status,
        });
    }
    let body = match ctx.format_or(Format::Csv) {
        Format::Json => to_json(&ScanJson {
            schema: SCHEMA_VERSION,
            family: e.family(),
            rate,
            rows: &rows,
        })?,
        Format::Csv => {
            let mut b = String::from("epsilon,p,measured_l,bound_l,l_times_epsilon,complexity,status\n");
            for r in &rows {
                b.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    machine(r.epsilon),
                    machine(r.p),
                    r.measured_l.map_or(String::new(), |l| l.to_string()),
                    machine(r.bound_l),
                    r.l_times_epsilon.map_or(String::new(), machine),
                    machine(r.complexity),
                    r.status.name()
                ));
            }
            b
        }
    };
    ctx.emit(&body)?;
    if violated {
        return Err(Failure::Violation("a scan point violates its bound".into()));
    }
    Ok(())
}

fn cmd_threshold(ctx: &Context) -> CmdResult {
    let s = ctx.section(&ctx.config.threshold, "threshold")?;
    let e = ctx.ensemble()?;
    let p = threshold_search(&e, s.tol)?;
    let digits = (-s.tol.log10()).ceil().max(0.0) as usize + 1;
    let body = match ctx.format_or(Format::Json) {
        Format::Json => format!(
            "{{\n  \"schema\": {SCHEMA_VERSION},\n  \"threshold\": {p:.digits$},\n  \"tol\": {}\n}}\n",
            s.tol
        ),
        Format::Csv => format!("threshold,tol\n{p:.digits$},{}\n", s.tol),
    };
    ctx.emit(&body)?;
    eprintln!("threshold: {p:.digits$}");
    Ok(())
}

#[derive(Serialize)]
struct SimJson<'a> {
    schema: u32,
    family: Family,
    n: usize,
    p: f64,
    trials: usize,
    seed: u64,
    mean_iterations: f64,
    mean_residual: &'a [f64],
    std_residual: &'a [f64],
    concentration: &'a crate::peeling_sim::ConcentrationReport,
}

fn seed_override() -> std::result::Result<Option<u64>, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Input(format!("{SEED_ENV}=`{v}` is not a 64-bit integer"))),
        Err(_) => Ok(None),
    }
}

fn cmd_simulate(ctx: &Context) -> CmdResult {
    let s = ctx.section(&ctx.config.simulate, "simulate")?;
    let e = ctx.ensemble()?;
    let seed = seed_override()?.unwrap_or(s.seed);
    let cfg = SimConfig {
        n: s.n,
        p: s.p,
        trials: s.trials,
        master_seed: seed,
        max_iter: s.max_iter,
        target_pb: s.target_pb,
    };
    cfg.validate()?;
    let sim = simulate(&e, &cfg)?;
    let de = run_family(&e, &DeConfig::new(s.p, s.target_pb, s.max_iter.max(s.compare_iterations))?)?;
    let report = concentration_report(&sim, de.pb_per_iter(), s.compare_iterations, s.tolerance)?;
    let json = to_json(&SimJson {
        schema: SCHEMA_VERSION,
        family: e.family(),
        n: s.n,
        p: s.p,
        trials: s.trials,
        seed,
        mean_iterations: sim.mean_iterations,
        mean_residual: &sim.mean_residual,
        std_residual: &sim.std_residual,
        concentration: &report,
    })?;
    match ctx.format_or(Format::Csv) {
        Format::Json => ctx.emit(&json)?,
        Format::Csv => {
            ctx.emit(&sim.to_csv())?;
            if let Some(out) = &ctx.out {
                write_atomic(&out.with_extension("concentration.json"), &json)?;
            }
        }
    }
    eprintln!(
        "trials: {}, mean iterations: {}, max deviation from DE: {}, within tolerance: {}",
        s.trials,
        human(sim.mean_iterations),
        human(report.max_deviation),
        human(report.fraction_within)
    );
    Ok(())
}

#[derive(Serialize)]
struct ChartJson<'a> {
    schema: u32,
    family: Family,
    p: f64,
    min_gap: f64,
    points: &'a [CurvePoint],
}

fn cmd_exit_chart(ctx: &Context) -> CmdResult {
    let s = ctx.section(&ctx.config.exit_chart, "exit_chart")?;
    let e = ctx.ensemble()?;
    Channel::new(s.p)?;
    let pts = family_curves(&e, s.p, s.samples)?;
    let upper = match e.family() {
        Family::Ldpc | Family::IraSystematic => s.p,
        _ => 1.0,
    };
    let (_, min_gap) = crate::density_evolution::curves_predict_success(&pts, upper);
    let body = match ctx.format_or(Format::Csv) {
        Format::Json => to_json(&ChartJson {
            schema: SCHEMA_VERSION,
            family: e.family(),
            p: s.p,
            min_gap,
            points: &pts,
        })?,
        Format::Csv => {
            let mut b = String::from("x,c,v\n");
            for pt in &pts {
                b.push_str(&format!("{},{},{}\n", machine(pt.x), machine(pt.c), machine(pt.v)));
            }
            b
        }
    };
    ctx.emit(&body)?;
    eprintln!("min v - c: {}", human(min_gap));
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (args, cmd): (&CommonArgs, fn(&Context) -> CmdResult) = match &cli.command {
        Command::De(a) => (a, cmd_de),
        Command::Bound(a) => (a, cmd_bound),
        Command::Verify(a) => (a, cmd_verify),
        Command::Scan(a) => (a, cmd_scan),
        Command::Threshold(a) => (a, cmd_threshold),
        Command::Simulate(a) => (a, cmd_simulate),
        Command::ExitChart(a) => (a, cmd_exit_chart),
    };
    match Context::load(args).and_then(|ctx| cmd(&ctx)) {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("bound violated: {msg}");
            EXIT_VIOLATION
        }
    }
}
