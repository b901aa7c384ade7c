//! Argument handling and output formatting for the `qwc` binary.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use qwalk::oracle::time_averages;
use qwalk::{
    asymptotic_reduced_density, bloch_temperature_scan, build_coin, coin_phase_temperature_scan,
    entanglement_temperature, limiting_distribution, make_state, parse_angle, parse_coin, parse_initial_state,
    run_verification, CoinParams, Distribution, InitialStateSpec, ReducedDensity, ScanAxis, ScanGrid,
    VerifyConfig, WalkState,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qwc", version, about = "Asymptotics of coined quantum walks on N-cycles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Limiting position distribution π(v)
    Ld(WalkArgs),
    /// Asymptotic reduced coin density matrix
    Rdcm(WalkArgs),
    /// Brute-force time averages over t = 1..=tmax
    Simulate(SimulateArgs),
    /// Entanglement-temperature scans (T/T₀ on a grid)
    Temp(TempArgs),
    /// Randomized closed-form vs. brute-force sweep
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct WalkArgs {
    /// Number of nodes on the cycle
    #[arg(short = 'N', long = "nodes")]
    pub n_nodes: usize,

    /// hadamard | diaz:THETA | u2:THETA,ZETA,XI[,ETA]
    #[arg(long, default_value = "hadamard")]
    pub coin: String,

    /// local:J[,c0re,c0im,c1re,c1im] | bloch:G,P[@J] | entangled:P | separable:P | raw:@FILE
    #[arg(long, default_value = "local:0")]
    pub init: String,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub walk: WalkArgs,

    /// Number of steps averaged
    #[arg(long, default_value_t = 200_000)]
    pub tmax: usize,

    /// Emit the reduced coin density instead of the distribution
    #[arg(long)]
    pub reduce: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    /// Initial coin state over (γ, φ) for a fixed coin
    Bloch,
    /// Coin phases (ζ, ξ) for a fixed initial state and θ
    Phase,
}

#[derive(Args, Debug, Clone)]
pub struct TempArgs {
    #[arg(short = 'N', long = "nodes", default_value_t = 100)]
    pub n_nodes: usize,

    #[arg(long, value_enum, default_value_t = ScanKind::Bloch)]
    pub scan: ScanKind,

    /// Coin for the bloch scan
    #[arg(long, default_value = "hadamard")]
    pub coin: String,

    /// Mixing angle θ for the phase scan
    #[arg(long, default_value = "pi/4")]
    pub theta: String,

    /// Initial state for the phase scan
    #[arg(long, default_value = "bloch:pi/4,0")]
    pub init: String,

    /// First axis a:b:n (γ or ζ)
    #[arg(long, allow_hyphen_values = true)]
    pub axis1: Option<String>,

    /// Second axis a:b:n (φ or ξ)
    #[arg(long, allow_hyphen_values = true)]
    pub axis2: Option<String>,

    /// Energy scale E₀ of the reference temperature
    #[arg(long, default_value_t = 1.0)]
    pub e0: f64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    pub seed: u64,

    #[arg(long, default_value_t = VerifyConfig::default().t_max)]
    pub tmax: usize,

    /// Random coins per cycle size
    #[arg(long, default_value_t = VerifyConfig::default().coins_per_n)]
    pub coins: usize,

    /// Random initial states per coin
    #[arg(long, default_value_t = VerifyConfig::default().states_per_coin)]
    pub states: usize,

    #[arg(long, default_value_t = VerifyConfig::default().n_min)]
    pub n_min: usize,

    #[arg(long, default_value_t = VerifyConfig::default().n_max)]
    pub n_max: usize,

    #[arg(long, default_value_t = VerifyConfig::default().tolerance)]
    pub tol: f64,
}

/// Parses the command line and runs it, returning the process exit code.
pub fn run_from_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INVALID
        }
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Ld(a) => cmd_ld(a),
        Command::Rdcm(a) => cmd_rdcm(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Temp(a) => cmd_temp(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn walk_setup(a: &WalkArgs) -> anyhow::Result<(CoinParams<f64>, WalkState<f64>)> {
    let coin = parse_coin::<f64>(&a.coin).with_context(|| format!("--coin {}", a.coin))?;
    let spec: InitialStateSpec<f64> = parse_initial_state(&a.init).with_context(|| format!("--init {}", a.init))?;
    let state = make_state(&spec, a.n_nodes).with_context(|| format!("--init {} with N={}", a.init, a.n_nodes))?;
    Ok((coin, state))
}

fn cmd_ld(a: &WalkArgs) -> anyhow::Result<i32> {
    let (coin, state) = walk_setup(a)?;
    let ld = limiting_distribution(&state, &coin, a.n_nodes)?;
    emit(&a.output, &distribution_doc(a, &coin, &ld, None)?)?;
    Ok(EXIT_OK)
}

fn cmd_rdcm(a: &WalkArgs) -> anyhow::Result<i32> {
    let (coin, state) = walk_setup(a)?;
    let rho = asymptotic_reduced_density(&state, &coin, a.n_nodes)?;
    emit(&a.output, &density_doc(a, &coin, &rho, None)?)?;
    Ok(EXIT_OK)
}

fn cmd_simulate(a: &SimulateArgs) -> anyhow::Result<i32> {
    let (coin, state) = walk_setup(&a.walk)?;
    let avg = time_averages(&state, &build_coin(&coin), a.tmax)?;
    let doc = if a.reduce {
        density_doc(&a.walk, &coin, &avg.reduced, Some(a.tmax))?
    } else {
        distribution_doc(&a.walk, &coin, &avg.distribution, Some(a.tmax))?
    };
    emit(&a.walk.output, &doc)?;
    Ok(EXIT_OK)
}

fn default_axes(kind: ScanKind) -> (&'static str, &'static str) {
    match kind {
        ScanKind::Bloch => ("0:pi:101", "0:2pi:101"),
        ScanKind::Phase => ("-pi:pi:101", "-pi:pi:101"),
    }
}

fn cmd_temp(a: &TempArgs) -> anyhow::Result<i32> {
    if !(a.e0.is_finite() && a.e0 > 0.0) {
        bail!("--e0 must be positive, got {}", a.e0);
    }
    let (d1, d2) = default_axes(a.scan);
    let axis1: ScanAxis<f64> = a.axis1.as_deref().unwrap_or(d1).parse().context("--axis1")?;
    let axis2: ScanAxis<f64> = a.axis2.as_deref().unwrap_or(d2).parse().context("--axis2")?;
    let (grid, names, meta) = match a.scan {
        ScanKind::Bloch => {
            let coin = parse_coin::<f64>(&a.coin).with_context(|| format!("--coin {}", a.coin))?;
            let grid = bloch_temperature_scan(&coin, a.n_nodes, &axis1, &axis2)?;
            (grid, ("gamma", "phi"), json!({ "coin": coin.to_string() }))
        }
        ScanKind::Phase => {
            let theta = parse_angle::<f64>(&a.theta).context("--theta")?.radians();
            let spec: InitialStateSpec<f64> =
                parse_initial_state(&a.init).with_context(|| format!("--init {}", a.init))?;
            let grid = coin_phase_temperature_scan(theta, &spec, a.n_nodes, &axis1, &axis2)?;
            (grid, ("zeta", "xi"), json!({ "theta": theta, "init": a.init }))
        }
    };
    let reference = grid.reference();
    // the grid is computed at E₀ = 1; temperatures scale linearly
    let t0 = reference.temperature * a.e0;
    let doc = Document::Scan {
        grid: &grid,
        json: json!({
            "scan": format!("{:?}", a.scan).to_lowercase(),
            "n_nodes": a.n_nodes,
            "parameters": meta,
            "e0": a.e0,
            "reference": {
                "lambda1": reference.lambda1,
                "lambda2": reference.lambda2,
                "temperature": number_or_inf(t0),
            },
            "axis1": axis_json(names.0, &axis1),
            "axis2": axis_json(names.1, &axis2),
            "ratios": grid.ratios().iter().map(|&r| number_or_inf(r)).collect::<Vec<_>>(),
        }),
    };
    emit(&a.output, &doc)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs) -> anyhow::Result<i32> {
    let config = VerifyConfig {
        seed: a.seed,
        n_min: a.n_min,
        n_max: a.n_max,
        coins_per_n: a.coins,
        states_per_coin: a.states,
        t_max: a.tmax,
        tolerance: a.tol,
    };
    let report = run_verification(&config)?;
    let mut out = io::stdout().lock();
    writeln!(out, "seed: {}", config.seed)?;
    writeln!(out, "instances: {}", report.results.len())?;
    writeln!(out, "t_max: {}", config.t_max)?;
    writeln!(out, "max LD deviation: {:.3e}", report.max_ld_deviation())?;
    writeln!(out, "max RDCM deviation: {:.3e}", report.max_rdcm_deviation())?;
    if let Some(w) = report.worst_ld() {
        writeln!(out, "worst LD instance: {}", w.instance)?;
    }
    if let Some(w) = report.worst_rdcm() {
        writeln!(out, "worst RDCM instance: {}", w.instance)?;
    }
    if report.passed() {
        writeln!(out, "PASS (tolerance {:e})", config.tolerance)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "FAIL (tolerance {:e})", config.tolerance)?;
    drop(out);
    for r in report
        .results
        .iter()
        .filter(|r| r.ld_deviation >= config.tolerance || r.rdcm_deviation >= config.tolerance || !r.densities_valid)
    {
        eprintln!(
            "breach: {} ld_dev={:.3e} rdcm_dev={:.3e} valid={}",
            r.instance, r.ld_deviation, r.rdcm_deviation, r.densities_valid
        );
    }
    Ok(EXIT_VERIFY_FAILED)
}

/// `+∞` is not representable in JSON numbers; it is written as `"inf"`.
pub fn number_or_inf(x: f64) -> Value {
    if x.is_infinite() && x > 0.0 {
        Value::String("inf".into())
    } else {
        json!(x)
    }
}

fn axis_json(name: &str, axis: &ScanAxis<f64>) -> Value {
    json!({ "name": name, "start": axis.start, "end": axis.end, "points": axis.points })
}

#[derive(Serialize)]
struct Entry {
    re: f64,
    im: f64,
}

enum Document<'a> {
    Distribution(&'a Distribution<f64>, Value),
    Density(&'a ReducedDensity<f64>, Value),
    Scan {
        grid: &'a ScanGrid<f64>,
        json: Value,
    },
}

fn walk_meta(a: &WalkArgs, coin: &CoinParams<f64>, t_max: Option<usize>) -> Value {
    let mut meta = json!({ "n_nodes": a.n_nodes, "coin": coin.to_string(), "init": a.init });
    if let Some(t) = t_max {
        meta["t_max"] = json!(t);
    }
    meta
}

fn distribution_doc<'a>(
    a: &WalkArgs,
    coin: &CoinParams<f64>,
    ld: &'a Distribution<f64>,
    t_max: Option<usize>,
) -> anyhow::Result<Document<'a>> {
    if !ld.is_valid(1e-12, 1e-10) {
        bail!("distribution failed validation (sum {})", ld.sum());
    }
    let mut meta = walk_meta(a, coin, t_max);
    meta["pi"] = json!(ld.probs());
    Ok(Document::Distribution(ld, meta))
}

fn density_doc<'a>(
    a: &WalkArgs,
    coin: &CoinParams<f64>,
    rho: &'a ReducedDensity<f64>,
    t_max: Option<usize>,
) -> anyhow::Result<Document<'a>> {
    if !rho.is_valid(1e-10) {
        bail!("reduced density failed validation");
    }
    let mut meta = walk_meta(a, coin, t_max);
    let entries: Vec<Vec<Entry>> = (0..2)
        .map(|r| (0..2).map(|c| Entry { re: rho[(r, c)].re, im: rho[(r, c)].im }).collect())
        .collect();
    meta["entries"] = serde_json::to_value(entries)?;
    let (l1, l2) = rho.eigenvalues();
    meta["eigenvalues"] = json!([l1, l2]);
    let t = entanglement_temperature(rho, 1.0)?;
    meta["temperature"] = number_or_inf(t.temperature);
    Ok(Document::Density(rho, meta))
}

fn fmt_f64(x: f64) -> String {
    if x.is_infinite() && x > 0.0 {
        "inf".into()
    } else {
        // shortest representation that parses back exactly, with an exponent
        // for very small or large magnitudes
        format!("{x:?}")
    }
}

fn write_csv<W: Write>(doc: &Document<'_>, w: W) -> anyhow::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    match doc {
        Document::Distribution(ld, _) => {
            wtr.write_record(["v", "pi_v"])?;
            for (v, p) in ld.probs().iter().enumerate() {
                wtr.write_record([v.to_string(), fmt_f64(*p)])?;
            }
        }
        Document::Density(rho, _) => {
            wtr.write_record(["row", "col", "re", "im"])?;
            for r in 0..2 {
                for c in 0..2 {
                    let z = rho[(r, c)];
                    wtr.write_record([r.to_string(), c.to_string(), fmt_f64(z.re), fmt_f64(z.im)])?;
                }
            }
        }
        Document::Scan { grid, .. } => {
            wtr.write_record(["axis1", "axis2", "ratio"])?;
            for (x, y, r) in grid.rows() {
                wtr.write_record([fmt_f64(x), fmt_f64(y), fmt_f64(r)])?;
            }
        }
    }
    wtr.flush()?;
    Ok(())
}

fn write_json<W: Write>(doc: &Document<'_>, mut w: W) -> anyhow::Result<()> {
    let value = match doc {
        Document::Distribution(_, v) | Document::Density(_, v) => v,
        Document::Scan { json, .. } => json,
    };
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

fn emit(output: &OutputArgs, doc: &Document<'_>) -> anyhow::Result<()> {
    match &output.out {
        Some(path) => write_to(doc, output.format, create(path)?),
        None => write_to(doc, output.format, io::stdout().lock()),
    }
}

fn create(path: &Path) -> anyhow::Result<io::BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(io::BufWriter::new(f))
}

fn write_to<W: Write>(doc: &Document<'_>, format: Format, w: W) -> anyhow::Result<()> {
    match format {
        Format::Csv => write_csv(doc, w),
        Format::Json => write_json(doc, w),
    }
}
