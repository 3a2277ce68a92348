//! `circseg` command-line front end.
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure,
//! 2 usage or domain error, 3 I/O error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use circseg::oracle::mc_region_area;
use circseg::region::{region_spec, RegionId};
use circseg::symbolic::{ledger_table, BasisTerm};
use circseg::{
    build_triangle, construct_scene, region_area, render_figure, verify_all, FigureId, OracleEstimate,
    RenderOptions, VerificationReport, VerifyConfig,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Parse { .. } => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
        }
    }

    fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl From<circseg::Error> for CliError {
    fn from(e: circseg::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "circseg", version, about = "Verify the circle-segment decomposition of a right triangle's hypotenuse semicircle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every check on one triangle.
    Verify {
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, required = true)]
        legs: Vec<f64>,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative tolerance for analytic checks.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Closed-form areas of the nine regions and three triangles.
    Areas {
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, required = true)]
        legs: Vec<f64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Verify every triangle of a CSV file (header `a,b`).
    Batch {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write one figure as SVG.
    Render {
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, required = true)]
        legs: Vec<f64>,
        #[arg(long)]
        figure: u8,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 512)]
        width: u32,
        #[arg(long, default_value_t = 6)]
        decimals: usize,
    },
    /// Monte-Carlo estimate of one region's area.
    Oracle {
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, required = true)]
        legs: Vec<f64>,
        #[arg(long)]
        region: String,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Print the exact coefficient ledger.
    Ledger,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let rendered = e.render().to_string();
                    let _ = write!(stderr, "{rendered}");
                    if !rendered.contains("Usage:") {
                        use clap::CommandFactory;
                        let _ = writeln!(stderr, "\n{}", Cli::command().render_usage());
                    }
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn legs_pair(legs: &[f64]) -> Result<(f64, f64), CliError> {
    let (a, b) = (legs[0], legs[1]);
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(CliError::Domain(format!("legs must be positive (got {a}, {b})")));
    }
    Ok((a, b))
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Verify {
            legs,
            samples,
            seed,
            tol,
            report,
        } => {
            let (a, b) = legs_pair(&legs)?;
            let tri = build_triangle(a, b)?;
            let config = VerifyConfig {
                samples,
                seed,
                tol_analytic: tol,
                ..VerifyConfig::default()
            };
            let result = verify_all(&tri, &config)?;
            write_verify_summary(&result, stdout).map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
            if let Some(path) = report {
                let doc = ReportDocument::from_report(&result);
                let mut json = serde_json::to_string_pretty(&doc).expect("report serializes");
                json.push('\n');
                fs::write(&path, json).map_err(|e| CliError::io(&path, e))?;
            }
            Ok(if result.overall_pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Areas { legs, format } => {
            let (a, b) = legs_pair(&legs)?;
            let tri = build_triangle(a, b)?;
            let rows: Vec<(RegionId, f64)> =
                RegionId::ALL.iter().map(|&id| (id, region_area(id, &tri))).collect();
            let text = match format {
                Format::Table => {
                    let mut s = format!("{:<8} {:>14}\n", "region", "area");
                    for (id, v) in &rows {
                        s.push_str(&format!("{:<8} {:>14.6}\n", id.name(), v));
                    }
                    s
                }
                Format::Csv => {
                    let mut s = String::from("region,area\n");
                    for (id, v) in &rows {
                        s.push_str(&format!("{},{:.6}\n", id.name(), v));
                    }
                    s
                }
                Format::Json => {
                    let entries: Vec<AreaEntry> = rows
                        .iter()
                        .map(|(id, v)| AreaEntry { region: id.name(), area: *v })
                        .collect();
                    let mut s = serde_json::to_string_pretty(&entries).expect("areas serialize");
                    s.push('\n');
                    s
                }
            };
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
            Ok(EXIT_OK)
        }
        Command::Batch {
            input,
            output,
            samples,
            seed,
        } => {
            let mut text = String::new();
            fs::File::open(&input)
                .and_then(|mut f| f.read_to_string(&mut text))
                .map_err(|e| CliError::io(&input, e))?;
            let parsed = parse_batch(text.as_bytes())?;
            for w in &parsed.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            let config = VerifyConfig {
                samples,
                seed,
                ..VerifyConfig::default()
            };
            let mut all_pass = true;
            let mut out = String::from("a,b,c,theta_deg,RA,RB,RC,RD,RE,RF,residual,pass\n");
            for row in &parsed.rows {
                let tri = build_triangle(row.a, row.b)?;
                let report = verify_all(&tri, &config)?;
                all_pass &= report.overall_pass;
                let residual = circseg::pythagoras_residual(tri.a(), tri.b(), tri.c())?;
                let mut fields = vec![tri.a(), tri.b(), tri.c(), tri.theta_deg()];
                fields.extend(RegionId::SEGMENTS.iter().map(|&id| region_area(id, &tri)));
                fields.push(residual);
                let joined: Vec<String> = fields.iter().map(|v| v.to_string()).collect();
                out.push_str(&joined.join(","));
                out.push_str(if report.overall_pass { ",true\n" } else { ",false\n" });
            }
            fs::write(&output, out).map_err(|e| CliError::io(&output, e))?;
            let _ = writeln!(
                stderr,
                "batch: {} rows written, {} warnings",
                parsed.rows.len(),
                parsed.warnings.len()
            );
            Ok(if all_pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Render {
            legs,
            figure,
            out,
            width,
            decimals,
        } => {
            let (a, b) = legs_pair(&legs)?;
            let scene = construct_scene(build_triangle(a, b)?)?;
            let opts = RenderOptions {
                width_px: width,
                decimals,
                ..RenderOptions::default()
            };
            let svg = render_figure(&scene, FigureId::new(figure)?, &opts)?;
            fs::write(&out, svg).map_err(|e| CliError::io(&out, e))?;
            Ok(EXIT_OK)
        }
        Command::Oracle {
            legs,
            region,
            samples,
            seed,
        } => {
            let (a, b) = legs_pair(&legs)?;
            let id: RegionId = region.parse()?;
            let tri = build_triangle(a, b)?;
            let scene = construct_scene(tri)?;
            let spec = region_spec(id, &scene)?;
            let est = mc_region_area(&spec, &scene.circle_d(), samples, seed)?;
            write_estimate(&est, region_area(id, &tri), stdout)
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
            Ok(EXIT_OK)
        }
        Command::Ledger => {
            stdout
                .write_all(format_ledger().as_bytes())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
            Ok(EXIT_OK)
        }
    }
}

#[derive(Serialize)]
struct AreaEntry {
    region: &'static str,
    area: f64,
}

fn write_verify_summary(report: &VerificationReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "triangle a={:.6} b={:.6} c={:.6} theta={:.6} deg",
        report.a, report.b, report.c, report.theta_deg
    )?;
    for c in &report.checks {
        writeln!(
            out,
            "{} {:<32} residual={:.6e} tolerance={:.6e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.residual,
            c.tolerance
        )?;
    }
    for n in &report.notes {
        writeln!(out, "note: {n}")?;
    }
    writeln!(out, "overall: {}", if report.overall_pass { "PASS" } else { "FAIL" })
}

fn write_estimate(est: &OracleEstimate, closed: f64, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "region     {}", est.region)?;
    writeln!(out, "samples    {}", est.samples)?;
    writeln!(out, "seed       {}", est.seed)?;
    writeln!(out, "mean       {:.6}", est.mean)?;
    writeln!(out, "std_error  {:.6}", est.std_error)?;
    writeln!(out, "closed     {:.6}", closed)?;
    writeln!(out, "z          {:.6}", (est.mean - closed) / est.std_error)
}

/// Coefficient table, columns in basis order `PA, PB, PC, UPA, UPB, UPC, AB, A3B, AB3`.
pub fn format_ledger() -> String {
    let mut s = format!("{:<8}", "term");
    for t in BasisTerm::ALL {
        s.push_str(&format!(" {:>6}", t.name()));
    }
    s.push('\n');
    for (name, expr) in ledger_table() {
        s.push_str(&format!("{name:<8}"));
        for t in BasisTerm::ALL {
            s.push_str(&format!(" {:>6}", expr.coeff(t).to_string()));
        }
        s.push('\n');
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleSummary {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub theta_deg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateEntry {
    pub region: String,
    pub mean: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSummary {
    pub seed: u64,
    pub samples: u64,
    pub estimates: Vec<EstimateEntry>,
}

/// JSON report written by `verify --report`. Field order is the key order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub triangle: TriangleSummary,
    pub checks: Vec<CheckEntry>,
    pub oracle: OracleSummary,
    pub overall_pass: bool,
}

impl ReportDocument {
    pub fn from_report(r: &VerificationReport) -> Self {
        ReportDocument {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            triangle: TriangleSummary {
                a: r.a,
                b: r.b,
                c: r.c,
                theta_deg: r.theta_deg,
            },
            checks: r
                .checks
                .iter()
                .map(|c| CheckEntry {
                    name: c.name.clone(),
                    pass: c.pass,
                    residual: c.residual,
                    tolerance: c.tolerance,
                })
                .collect(),
            oracle: OracleSummary {
                seed: r.seed,
                samples: r.samples,
                estimates: r
                    .estimates
                    .iter()
                    .map(|e| EstimateEntry {
                        region: e.region.name().to_string(),
                        mean: e.mean,
                        std_error: e.std_error,
                    })
                    .collect(),
            },
            overall_pass: r.overall_pass,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchRow {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BatchInput {
    pub rows: Vec<BatchRow>,
    /// One message per skipped row.
    pub warnings: Vec<String>,
}

/// Reads `a,b` rows. Blank lines are skipped; nonpositive legs skip the row
/// with a warning; anything malformed is an error carrying its 1-based line.
pub fn parse_batch<R: Read>(input: R) -> Result<BatchInput, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader.headers().map_err(|e| csv_error(e, 1))?.clone();
    if headers.len() != 2 || &headers[0] != "a" || &headers[1] != "b" {
        return Err(CliError::Parse {
            line: 1,
            message: "expected header `a,b`".to_string(),
        });
    }
    let mut out = BatchInput::default();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            csv_error(e, line)
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| -> Result<f64, CliError> {
            record[i].parse::<f64>().map_err(|_| CliError::Parse {
                line,
                message: format!("`{}` is not a number", &record[i]),
            })
        };
        let (a, b) = (field(0)?, field(1)?);
        if a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite() {
            out.rows.push(BatchRow { a, b });
        } else {
            out.warnings
                .push(format!("line {line}: legs must be positive (got {a}, {b}); row skipped"));
        }
    }
    Ok(out)
}

fn csv_error(e: csv::Error, line: u64) -> CliError {
    let message = match e.kind() {
        csv::ErrorKind::UnequalLengths { len, .. } => format!("expected 2 fields, found {len}"),
        _ => e.to_string(),
    };
    CliError::Parse { line, message }
}
