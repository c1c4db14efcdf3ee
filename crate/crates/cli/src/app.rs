//! Command-line surface.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use qdt_core::geometry::DEFAULT_RESOLUTION;
use qdt_core::{
    classical_bounds, concurrency, contour, extremal_weights, quantum_bounds, sample_trajectory,
    trajectory, Choice, Phases,
};

use crate::dataset::{self, ExperimentFile, LoadOptions};
use crate::error::{CliError, Result};
use crate::export::{contour_csv, contour_svg, trajectory_csv, write_atomic};
use crate::oracle;
use crate::render::{fixed, sig12, table};
use crate::report;

/// Default directory for files written by `contour` and `trajectory` when
/// `--output` is not given.
pub const OUTPUT_DIR_ENV: &str = "QDT_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "qdt",
    version,
    about = "Interference model of two-condition, two-choice decisions"
)]
pub struct Cli {
    /// Weight of condition 0. Fills blank q0 cells; overrides the file when given.
    #[arg(long, global = true)]
    pub q0: Option<f64>,

    /// Decimal places in tables.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=12))]
    pub decimals: u8,

    /// Write the result to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ContourFormat {
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical prediction, bounds and sure-thing flags per record.
    Report {
        file: PathBuf,
        /// Emit full-precision rows as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Classical and quantum bounds for both choices.
    Bounds { file: PathBuf },
    /// Phase pairs reproducing the observed (or a given) probability.
    Trajectory {
        file: PathBuf,
        #[arg(long)]
        label: String,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Level to trace instead of the observed value.
        #[arg(long)]
        target: Option<f64>,
    },
    /// Common phase point of two trajectories.
    Intersect {
        file: PathBuf,
        /// Two labels, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
        /// Report every record's residual at the intersection.
        #[arg(long)]
        check_all: bool,
    },
    /// Grid of the mixed-condition probability over both phases.
    Contour {
        file: PathBuf,
        #[arg(long)]
        label: String,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
        #[arg(long, value_enum, default_value_t = ContourFormat::Csv)]
        format: ContourFormat,
    },
    /// Compare the closed form with the amplitude construction.
    OracleCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 25)]
        grid: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Random gauge draws per grid point.
        #[arg(long, default_value_t = 10)]
        gauges: usize,
    },
    /// Condition weights that push the bounds of choice 0 to 1 and to 0.
    ExtremalQ {
        #[arg(long)]
        p0: f64,
        #[arg(long)]
        p1: f64,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(Outcome {
            text,
            default_name,
            code,
        }) => match deliver(&cli, &text, default_name.as_deref(), out, err) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

struct Outcome {
    text: String,
    /// File name used under the output-directory variable.
    default_name: Option<String>,
    code: i32,
}

impl Outcome {
    fn stdout(text: String) -> Self {
        Outcome {
            text,
            default_name: None,
            code: 0,
        }
    }
}

fn deliver(
    cli: &Cli,
    text: &str,
    default_name: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let target = match (&cli.output, default_name, std::env::var_os(OUTPUT_DIR_ENV)) {
        (Some(path), _, _) => Some(path.clone()),
        (None, Some(name), Some(dir)) => Some(Path::new(&dir).join(name)),
        _ => None,
    };
    match target {
        Some(path) => {
            write_atomic(&path, text)?;
            let _ = writeln!(err, "wrote {}", path.display());
            Ok(())
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn load(cli: &Cli, file: &Path, err: &mut dyn Write) -> Result<ExperimentFile> {
    if let Some(q0) = cli.q0 {
        if !(0.0..=1.0).contains(&q0) {
            return Err(CliError::Usage(format!("--q0 {q0} is outside [0, 1]")));
        }
    }
    let loaded = dataset::load(file, LoadOptions { q0: cli.q0 })?;
    if loaded.is_empty() {
        let _ = writeln!(err, "warning: {} contains no records", file.display());
    }
    Ok(loaded)
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Outcome> {
    let decimals = cli.decimals as usize;
    match &cli.command {
        Command::Report { file, json } => {
            let data = load(cli, file, err)?;
            let entries = report::report(&data);
            let failed = entries.iter().any(|(_, r)| r.is_err());
            let text = if *json {
                let rows: Vec<_> = entries
                    .iter()
                    .filter_map(|(_, r)| r.as_ref().ok())
                    .collect();
                serde_json::to_string_pretty(&rows).expect("plain data serializes") + "\n"
            } else {
                report::render(&entries, decimals)
            };
            if *json {
                for (exp, r) in &entries {
                    if let Err(e) = r {
                        let _ = writeln!(err, "error: {}: {e}", exp.label);
                    }
                }
            }
            Ok(Outcome {
                text,
                default_name: None,
                code: if failed { 2 } else { 0 },
            })
        }
        Command::Bounds { file } => {
            let data = load(cli, file, err)?;
            let mut rows = Vec::new();
            for exp in data.experiments() {
                for j in Choice::ALL {
                    let cl = classical_bounds(&exp, j)?;
                    let qb = quantum_bounds(&exp, j)?;
                    rows.push(vec![
                        exp.label.clone(),
                        j.to_string(),
                        fixed(cl.lo(), decimals),
                        fixed(cl.hi(), decimals),
                        fixed(qb.interval.lo(), decimals),
                        fixed(qb.interval.hi(), decimals),
                        fixed(qb.correction, decimals),
                    ]);
                }
            }
            let header = ["label", "choice", "cl_lo", "cl_hi", "q_lo", "q_hi", "f_j"];
            Ok(Outcome::stdout(table(&header, &rows)))
        }
        Command::Trajectory {
            file,
            label,
            samples,
            target,
        } => {
            let data = load(cli, file, err)?;
            let exp = &data.get(label)?.experiment;
            let line = trajectory(exp, *target)?;
            let points = sample_trajectory(&line, *samples)?;
            if points.is_empty() {
                let _ = writeln!(
                    err,
                    "warning: level lies outside the quantum bounds; trajectory is empty"
                );
            }
            Ok(Outcome {
                text: trajectory_csv(&points, exp),
                default_name: Some(format!("{label}-trajectory.csv")),
                code: 0,
            })
        }
        Command::Intersect {
            file,
            labels,
            check_all,
        } => {
            if labels.len() != 2 {
                return Err(CliError::Usage(format!(
                    "--labels takes exactly two labels, got {}",
                    labels.len()
                )));
            }
            let data = load(cli, file, err)?;
            let index = |l: &str| {
                data.records
                    .iter()
                    .position(|r| r.experiment.label == l)
                    .ok_or_else(|| CliError::UnknownLabel(l.to_string()))
            };
            let pair = (index(&labels[0])?, index(&labels[1])?);
            let exps = data.experiments();
            let rep = concurrency(&exps, pair)?;
            let (c0, c1) = rep.point;
            let mut text = format!(
                "fit: {} x {}\nc0 = {}\nc1 = {}\n",
                labels[0],
                labels[1],
                sig12(c0),
                sig12(c1)
            );
            if rep.in_range {
                let p = Phases::from_cosines(c0, c1);
                text.push_str(&format!(
                    "theta0 = {}\ntheta1 = {}\n(principal branch; 2π − θ gives the mirror copies)\n",
                    sig12(p.theta0),
                    sig12(p.theta1)
                ));
            } else {
                text.push_str("point lies outside the unit square: no real phases\n");
            }
            if *check_all {
                let rows: Vec<Vec<String>> = exps
                    .iter()
                    .zip(&rep.residuals)
                    .enumerate()
                    .map(|(i, (e, r))| {
                        let role = if i == pair.0 || i == pair.1 {
                            "fitted"
                        } else {
                            ""
                        };
                        vec![
                            e.label.clone(),
                            format!("{r:+.6e}"),
                            format!("{:.6e}", r.abs()),
                            role.to_string(),
                        ]
                    })
                    .collect();
                text.push('\n');
                text.push_str(&table(&["label", "residual", "|residual|", ""], &rows));
                let others: Vec<(usize, f64)> = rep
                    .residuals
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != pair.0 && *i != pair.1)
                    .map(|(i, r)| (i, r.abs()))
                    .collect();
                if others.len() >= 2 {
                    let mut sorted = others.clone();
                    sorted.sort_by(|a, b| b.1.total_cmp(&a.1));
                    let (worst, next) = (sorted[0], sorted[1]);
                    let ratio = if next.1 > 0.0 {
                        worst.1 / next.1
                    } else {
                        f64::INFINITY
                    };
                    text.push_str(&format!(
                        "largest residual: {} ({:.1}x the next, {})\n",
                        exps[worst.0].label, ratio, exps[next.0].label
                    ));
                }
            }
            Ok(Outcome::stdout(text))
        }
        Command::Contour {
            file,
            label,
            resolution,
            format,
        } => {
            let data = load(cli, file, err)?;
            let exp = &data.get(label)?.experiment;
            let grid = contour(exp, *resolution)?;
            let (text, ext) = match format {
                ContourFormat::Csv => (contour_csv(&grid), "csv"),
                ContourFormat::Svg => (contour_svg(exp, &grid), "svg"),
            };
            Ok(Outcome {
                text,
                default_name: Some(format!("{label}-contour.{ext}")),
                code: 0,
            })
        }
        Command::OracleCheck {
            file,
            grid,
            seed,
            gauges,
        } => {
            if *grid == 0 || *gauges == 0 {
                return Err(CliError::Usage(
                    "--grid and --gauges must be positive".to_string(),
                ));
            }
            let data = load(cli, file, err)?;
            let summary = oracle::run(&data.experiments(), *grid, *gauges, *seed)?;
            let mut text = format!(
                "records: {}\ngrid: {grid}x{grid}, gauges per point: {gauges}, seed: {seed}\nevaluations: {}\nskipped (singular): {}\nmax |closed-form - amplitude|: {:e}\n",
                data.records.len(),
                summary.evaluations,
                summary.skipped,
                summary.max_deviation
            );
            if let Some(w) = &summary.worst {
                text.push_str(&format!(
                    "worst: {} at theta0 = {}, theta1 = {}\n",
                    w.label,
                    sig12(w.phases.theta0),
                    sig12(w.phases.theta1)
                ));
            }
            if summary.passed() {
                text.push_str(&format!("PASS (tolerance {:e})\n", oracle::TOLERANCE));
                Ok(Outcome::stdout(text))
            } else {
                text.push_str(&format!("FAIL (tolerance {:e})\n", oracle::TOLERANCE));
                Ok(Outcome {
                    text,
                    default_name: None,
                    code: 2,
                })
            }
        }
        Command::ExtremalQ { p0, p1 } => {
            let w = extremal_weights(*p0, *p1)?;
            Ok(Outcome::stdout(format!(
                "X = {}\nq_max = {}\nq_min = {}\n",
                fixed(w.x_j, decimals),
                fixed(w.q_max, decimals),
                fixed(w.q_min, decimals)
            )))
        }
    }
}
