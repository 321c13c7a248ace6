//! Command-line front end over the detector library: parameter estimation
//! from labeled CSV, detector reports, ROC export (CSV/JSON/SVG), unit
//! ranking, side-by-side comparison, and the seeded numerical self-test.
//!
//! Exit status contract: 0 success, 1 invariant violation (a failing
//! self-test), 2 input or usage error.

#![forbid(unsafe_code)]

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qdetect::detection::{
    classical_roc, coordinates, helstrom_spectrum, incompatibility_norm, mixed_operating_point,
    mixed_region, pure_region_in_computational_basis, quantum_operating_point, quantum_roc_curve,
    CoordinateMatrix, DetectorParams, OperatingPoint, Region, RocCurve,
};
use qdetect::ranker::{
    compare, contingency, estimate, parse_units, score_units, Counts, EstimationResult,
    Estimator, Mode, RankedList, TrainingSet, UnitRecord,
};
use qdetect::selftest::{self, SelfTestConfig, SelfTestReport, Tolerances};

#[derive(Parser)]
#[command(
    name = "qdetect",
    version,
    about = "Set-based vs subspace-based binary detection for ranking information units"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate hypothesis probabilities from a labeled training CSV.
    Estimate {
        /// Training CSV with header unit_id,feature,label.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        estimation: EstimationArgs,
        /// Write here instead of stdout (atomic replace).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Report the detector spectrum, regions, and operating points as JSON.
    Detect {
        #[command(flatten)]
        source: SourceArgs,
        /// Write here instead of stdout (atomic replace).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Export the classical envelope and the quantum ROC on a size grid.
    Roc {
        #[command(flatten)]
        source: SourceArgs,
        /// Uniform grid sizes; the envelope vertex sizes are inserted too.
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Write here instead of stdout (atomic replace).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Score units from a CSV and write the ranked list of one detector.
    Rank {
        /// Units CSV; labeled rows double as training data.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Quantum)]
        mode: ModeArg,
        /// Write here instead of stdout (atomic replace).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Rank under both detectors and report where they disagree.
    Compare {
        /// Units CSV; labeled rows double as training data.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
        /// ROC sampling grid carried in the report.
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        /// Write here instead of stdout (atomic replace).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the seeded randomized invariant sweeps.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random draws per sweep.
        #[arg(long, default_value_t = 10_000)]
        draws: usize,
        /// ROC grid for the dominance sweep.
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        /// Zero every tolerance, forcing a deterministic failure (fault
        /// injection for the exit-status contract).
        #[arg(long)]
        zero_tolerances: bool,
        /// Emit the full JSON report instead of one line per sweep.
        #[arg(long)]
        json: bool,
        /// Write here instead of stdout (atomic replace).
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EstimationArgs {
    /// Which reading of the training frequencies to use.
    #[arg(long, value_enum, default_value_t = EstimatorArg::Likelihood)]
    estimator: EstimatorArg,
    /// Additive smoothing for the frequency estimates.
    #[arg(long, default_value_t = 0.0)]
    smoothing: f64,
}

/// Detector parameters from explicit values and/or an estimated training
/// file. Explicit --p0/--p1 win over estimation.
#[derive(Args)]
struct SourceArgs {
    /// Training CSV to estimate missing parameters from.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Feature probability under the null hypothesis.
    #[arg(long)]
    p0: Option<f64>,
    /// Feature probability under the alternative hypothesis.
    #[arg(long)]
    p1: Option<f64>,
    /// Threshold weighting the null in the detector matrix.
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[command(flatten)]
    estimation: EstimationArgs,
}

/// Like [`SourceArgs`], but the units file is the subcommand's own required
/// input, so only the overrides live here.
#[derive(Args)]
struct OverrideArgs {
    /// Feature probability under the null hypothesis; overrides estimation.
    #[arg(long)]
    p0: Option<f64>,
    /// Feature probability under the alternative; overrides estimation.
    #[arg(long)]
    p1: Option<f64>,
    /// Threshold weighting the null in the detector matrix.
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[command(flatten)]
    estimation: EstimationArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum EstimatorArg {
    Likelihood,
    ExampleCompat,
}

impl From<EstimatorArg> for Estimator {
    fn from(v: EstimatorArg) -> Estimator {
        match v {
            EstimatorArg::Likelihood => Estimator::Likelihood,
            EstimatorArg::ExampleCompat => Estimator::ExampleCompat,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Classical,
    Quantum,
}

impl From<ModeArg> for Mode {
    fn from(v: ModeArg) -> Mode {
        match v {
            ModeArg::Classical => Mode::Classical,
            ModeArg::Quantum => Mode::Quantum,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Svg,
}

/// Failure with the exit status it maps to. 2 is an input/usage problem;
/// 1 (invariant violation) is returned as a success-path status instead so
/// the report still gets written.
#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }
}

impl From<qdetect::Error> for CliError {
    fn from(e: qdetect::Error) -> CliError {
        CliError::input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Estimate { input, estimation, output } => {
            let units = load_units(input)?;
            let est = estimate_from_units(&units, estimation)?;
            write_output(output.as_deref(), &to_json(&est)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Detect { source, output } => {
            let (params, estimation) = source.resolve()?;
            let report = detect_report(&params, estimation);
            write_output(output.as_deref(), &to_json(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Roc { source, grid, format, output } => {
            let grid = require_grid(*grid)?;
            let (params, _) = source.resolve()?;
            let classical = classical_roc(&params);
            let quantum = quantum_roc_curve(&params, grid);
            let rows: Vec<RocRow> = quantum
                .points()
                .iter()
                .map(|pt| RocRow {
                    size: pt.size,
                    power_classical: classical.eval(pt.size),
                    power_quantum: pt.power,
                })
                .collect();
            let text = match format {
                FormatArg::Csv => roc_csv(&rows),
                FormatArg::Json => {
                    to_json(&RocFile { params: &params, grid, classical: &classical, quantum: &quantum })?
                }
                FormatArg::Svg => roc_svg(&rows, &classical, &params),
            };
            write_output(output.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Rank { input, overrides, mode, output } => {
            let units = load_units(input)?;
            let est = overrides.resolve(&units)?;
            let list = score_units(&units, &est, overrides.lambda, (*mode).into())?;
            write_output(output.as_deref(), &ranked_csv(&list)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { input, overrides, grid, output } => {
            let grid = require_grid(*grid)?;
            let units = load_units(input)?;
            let est = overrides.resolve(&units)?;
            let report = compare(&units, &est, overrides.lambda, grid)?;
            write_output(output.as_deref(), &to_json(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { seed, draws, grid, zero_tolerances, json, output } => {
            let grid = require_grid(*grid)?;
            let tolerances = if *zero_tolerances {
                Tolerances { structural: 0.0, oracle: 0.0, dominance: 0.0 }
            } else {
                Tolerances::default()
            };
            let config = SelfTestConfig { seed: *seed, draws: *draws, grid, tolerances };
            let report = selftest::run(&config);
            let text = if *json { to_json(&report)? } else { selftest_text(&report) };
            write_output(output.as_deref(), &text)?;
            if report.passed {
                Ok(ExitCode::SUCCESS)
            } else {
                for sweep in report.sweeps.iter().filter(|s| !s.passed) {
                    eprintln!(
                        "self-test violation in {}: max error {:e} > tolerance {:e}{}",
                        sweep.name,
                        sweep.max_error,
                        sweep.tolerance,
                        sweep
                            .worst_case
                            .as_deref()
                            .map(|w| format!(" at {w}"))
                            .unwrap_or_default()
                    );
                }
                Ok(ExitCode::from(1))
            }
        }
    }
}

impl SourceArgs {
    fn resolve(&self) -> Result<(DetectorParams, Option<EstimationResult>), CliError> {
        let estimation = if self.p0.is_some() && self.p1.is_some() {
            None
        } else if let Some(path) = &self.input {
            let units = load_units(path)?;
            Some(estimate_from_units(&units, &self.estimation)?)
        } else {
            return Err(CliError::input(
                "no detector parameters: pass --p0 and --p1, or --input with labeled rows",
            ));
        };
        let p0 = self.p0.or_else(|| estimation.as_ref().map(|e| e.p0)).expect("override or estimate");
        let p1 = self.p1.or_else(|| estimation.as_ref().map(|e| e.p1)).expect("override or estimate");
        Ok((DetectorParams::new(p0, p1, self.lambda)?, estimation))
    }
}

impl OverrideArgs {
    fn resolve(&self, units: &[UnitRecord]) -> Result<EstimationResult, CliError> {
        if let (Some(p0), Some(p1)) = (self.p0, self.p1) {
            let counts = match labeled_training(units) {
                Ok(ts) => contingency(&ts),
                Err(_) => Counts {
                    present_useful: 0,
                    present_useless: 0,
                    absent_useful: 0,
                    absent_useless: 0,
                },
            };
            return Ok(EstimationResult {
                p0,
                p1,
                estimator: self.estimation.estimator.into(),
                smoothing: self.estimation.smoothing,
                counts,
            });
        }
        let mut est = estimate_from_units(units, &self.estimation)?;
        if let Some(p0) = self.p0 {
            est.p0 = p0;
        }
        if let Some(p1) = self.p1 {
            est.p1 = p1;
        }
        Ok(est)
    }
}

fn labeled_training(units: &[UnitRecord]) -> qdetect::Result<TrainingSet> {
    let labeled: Vec<UnitRecord> =
        units.iter().filter(|u| u.label().is_some()).cloned().collect();
    TrainingSet::new(labeled)
}

fn estimate_from_units(
    units: &[UnitRecord],
    args: &EstimationArgs,
) -> Result<EstimationResult, CliError> {
    let ts = labeled_training(units)?;
    Ok(estimate(&ts, args.estimator.into(), args.smoothing)?)
}

fn load_units(path: &Path) -> Result<Vec<UnitRecord>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    if text.trim().is_empty() {
        return Err(CliError::input("empty training set"));
    }
    Ok(parse_units(text.as_bytes())?)
}

fn require_grid(grid: usize) -> Result<usize, CliError> {
    if grid < 2 {
        return Err(CliError::input(format!("grid = {grid} must be at least 2")));
    }
    Ok(grid)
}

/// Detector summary. Spectrum-derived fields are omitted when the detector
/// matrix is degenerate; `degenerate` says so explicitly and the command
/// still succeeds.
#[derive(Serialize)]
struct DetectReport {
    params: DetectorParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    estimation: Option<EstimationResult>,
    overlap: f64,
    eta0: f64,
    eta1: f64,
    big_r: f64,
    degenerate: bool,
    mixed_region: Region,
    pure_region: Region,
    classical_point: OperatingPoint,
    #[serde(skip_serializing_if = "Option::is_none")]
    quantum_point: Option<OperatingPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coordinates: Option<CoordinateTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    incompatibility: Option<f64>,
}

/// Eigenbasis coordinates of the two hypothesis states, raw and squared.
#[derive(Serialize)]
struct CoordinateTable {
    x00: f64,
    x01: f64,
    x10: f64,
    x11: f64,
    x00_sq: f64,
    x01_sq: f64,
    x10_sq: f64,
    x11_sq: f64,
}

impl From<&CoordinateMatrix> for CoordinateTable {
    fn from(c: &CoordinateMatrix) -> CoordinateTable {
        CoordinateTable {
            x00: c.x00(),
            x01: c.x01(),
            x10: c.x10(),
            x11: c.x11(),
            x00_sq: c.x00_sq(),
            x01_sq: c.x01_sq(),
            x10_sq: c.x10_sq(),
            x11_sq: c.x11_sq(),
        }
    }
}

fn detect_report(params: &DetectorParams, estimation: Option<EstimationResult>) -> DetectReport {
    let sol = helstrom_spectrum(params);
    DetectReport {
        params: *params,
        estimation,
        overlap: sol.overlap(),
        eta0: sol.eta0(),
        eta1: sol.eta1(),
        big_r: sol.big_r(),
        degenerate: sol.is_degenerate(),
        mixed_region: mixed_region(params).choice(),
        pure_region: pure_region_in_computational_basis(params).choice(),
        classical_point: mixed_operating_point(params),
        quantum_point: quantum_operating_point(params).ok(),
        coordinates: coordinates(params).ok().map(|c| CoordinateTable::from(&c)),
        incompatibility: incompatibility_norm(params).ok(),
    }
}

#[derive(Serialize)]
struct RocRow {
    size: f64,
    power_classical: f64,
    power_quantum: f64,
}

#[derive(Serialize)]
struct RocFile<'a> {
    params: &'a DetectorParams,
    grid: usize,
    classical: &'a RocCurve,
    quantum: &'a RocCurve,
}

fn roc_csv(rows: &[RocRow]) -> String {
    let mut s = String::from("size,power_classical,power_quantum\n");
    for r in rows {
        s.push_str(&fmt_f64(r.size));
        s.push(',');
        s.push_str(&fmt_f64(r.power_classical));
        s.push(',');
        s.push_str(&fmt_f64(r.power_quantum));
        s.push('\n');
    }
    s
}

fn ranked_csv(list: &RankedList) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::input(format!("CSV write failed: {e}"));
    w.write_record(["unit_id", "score", "accepted"]).map_err(fail)?;
    for e in list.entries() {
        w.write_record([
            e.unit_id.as_str(),
            &fmt_f64(e.score),
            if e.accepted { "true" } else { "false" },
        ])
        .map_err(fail)?;
    }
    let bytes =
        w.into_inner().map_err(|e| CliError::input(format!("CSV write failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

fn selftest_text(report: &SelfTestReport) -> String {
    let mut s = String::new();
    for sweep in &report.sweeps {
        let status = if sweep.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!(
            "{status} {:<32} cases {:>6}  max error {:>10.3e}  tolerance {:.0e}\n",
            sweep.name, sweep.cases, sweep.max_error, sweep.tolerance
        ));
        if !sweep.passed {
            if let Some(worst) = &sweep.worst_case {
                s.push_str(&format!("     worst case: {worst}\n"));
            }
        }
    }
    s.push_str(&format!(
        "self-test {} (seed {}, {} draws per sweep, grid {})\n",
        if report.passed { "passed" } else { "FAILED" },
        report.config.seed,
        report.config.draws,
        report.config.grid,
    ));
    s
}

/// Static ROC plot: axes, gridlines, chance diagonal, both curves, legend.
fn roc_svg(rows: &[RocRow], classical: &RocCurve, params: &DetectorParams) -> String {
    const W: f64 = 640.0;
    const H: f64 = 480.0;
    const ML: f64 = 62.0;
    const MR: f64 = 24.0;
    const MT: f64 = 42.0;
    const MB: f64 = 54.0;
    let x = |size: f64| ML + size * (W - ML - MR);
    let y = |power: f64| MT + (1.0 - power) * (H - MT - MB);
    let poly = |pts: &mut dyn Iterator<Item = (f64, f64)>| -> String {
        pts.map(|(s, p)| format!("{:.2},{:.2}", x(s), y(p))).collect::<Vec<_>>().join(" ")
    };

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\" \
         font-family=\"sans-serif\" font-size=\"13\">\n"
    ));
    s.push_str(&format!(
        "<title>ROC: p0={} p1={}</title>\n",
        fmt_f64(params.p0()),
        fmt_f64(params.p1())
    ));
    s.push_str(&format!(
        "<text x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">\
         ROC: p0={} p1={}</text>\n",
        W / 2.0,
        fmt_f64(params.p0()),
        fmt_f64(params.p1())
    ));
    for i in 0..=4u32 {
        let v = f64::from(i) / 4.0;
        s.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#ddd\"/>\n",
            x(v),
            y(0.0),
            x(v),
            y(1.0)
        ));
        s.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#ddd\"/>\n",
            x(0.0),
            y(v),
            x(1.0),
            y(v)
        ));
        s.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{v}</text>\n",
            x(v),
            y(0.0) + 20.0
        ));
        s.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" dominant-baseline=\"middle\">{v}</text>\n",
            x(0.0) - 8.0,
            y(v)
        ));
    }
    s.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#999\" \
         stroke-dasharray=\"5 4\"/>\n",
        x(0.0),
        y(0.0),
        x(1.0),
        y(1.0)
    ));
    s.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.8\"/>\n",
        poly(&mut classical.points().iter().map(|p| (p.size, p.power)))
    ));
    s.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.8\"/>\n",
        poly(&mut rows.iter().map(|r| (r.size, r.power_quantum)))
    ));
    s.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#333\"/>\n",
        ML,
        MT,
        W - ML - MR,
        H - MT - MB
    ));
    let legend_x = ML + 14.0;
    for (dy, color, label) in [
        (18.0, "#d62728", "subspace detector"),
        (36.0, "#1f77b4", "set-based envelope"),
        (54.0, "#999", "chance"),
    ] {
        s.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"1.8\"/>\n",
            legend_x,
            MT + dy,
            legend_x + 26.0,
            MT + dy
        ));
        s.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" dominant-baseline=\"middle\">{label}</text>\n",
            legend_x + 34.0,
            MT + dy
        ));
    }
    s.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">false-alarm size</text>\n",
        (ML + W - MR) / 2.0,
        H - 14.0
    ));
    s.push_str(&format!(
        "<text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">\
         detection power</text>\n",
        (MT + H - MB) / 2.0,
        (MT + H - MB) / 2.0
    ));
    s.push_str("</svg>\n");
    s
}

/// Decimal form with at least six decimal places that still parses back to
/// the same bits: the zero-padded fixed form when that is exact, the
/// shortest round-trip form otherwise.
fn fmt_f64(v: f64) -> String {
    let fixed = format!("{v:.6}");
    if fixed.parse::<f64>().map(f64::to_bits) == Ok(v.to_bits()) {
        fixed
    } else {
        format!("{v}")
    }
}

/// JSON formatter that widens the default shortest-round-trip floats to at
/// least six decimal places (still exact) per the output contract.
struct SixDecimalFormatter;

impl serde_json::ser::Formatter for SixDecimalFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        writer.write_all(fmt_f64(value).as_bytes())
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SixDecimalFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| CliError::input(format!("serialization failed: {e}")))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("JSON output is UTF-8"))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        None => {
            io::stdout()
                .write_all(content.as_bytes())
                .map_err(|e| CliError::input(format!("stdout: {e}")))
        }
        Some(path) => atomic_write(path, content),
    }
}

/// Whole-file write-then-rename, so readers never observe a partial file.
fn atomic_write(path: &Path, content: &str) -> Result<(), CliError> {
    let context = |e: &dyn std::fmt::Display| format!("{}: {e}", path.display());
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp =
        tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::input(context(&e)))?;
    tmp.write_all(content.as_bytes()).map_err(|e| CliError::input(context(&e)))?;
    tmp.persist(path).map_err(|e| CliError::input(context(&e)))?;
    Ok(())
}
