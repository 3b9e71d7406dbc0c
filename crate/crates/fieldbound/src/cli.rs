use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fieldbound_core::campaigns::{aggregate_theorem_bound, run_all, run_family, takeuchi_degree_bound, FamilyId};
use fieldbound_core::pentagon::{minimize_gamma, objective_f_gradient, pentagon_residuals};
use fieldbound_core::{Error as CoreError, GAMMA0};

use crate::config::{Format, RunConfig};
use crate::report::{render, to_json, AggregateDoc, ReportDoc};
use crate::{field_info, verify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_BORDERLINE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

const AFTER_HELP: &str = "\
Exit codes:
  0   success
  1   error
  2   a borderline candidate was flagged (the report is still written)
  64  usage error (unknown family, out-of-range argument, bad flag)

Environment:
  FIELDBOUND_OUT_DIR  directory for scan output when --out is not given";

#[derive(Debug, Parser)]
#[command(name = "fieldbound", version, about = "Degree bounds for ground fields of arithmetic hyperbolic reflection groups", after_help = AFTER_HELP)]
struct Cli {
    /// Guard width for every floating-point comparison.
    #[arg(long, global = true, default_value_t = 1e-9)]
    epsilon: f64,
    /// Significant digits for the high-precision floor recheck.
    #[arg(long = "precision-digits", global = true, default_value_t = 30)]
    precision_digits: u32,
    /// Search cap for method A.
    #[arg(long = "method-a-cap", global = true, default_value_t = 1_000_000)]
    method_a_cap: u64,
    /// Output format [default: json for scan, text otherwise].
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file (default: stdout, or a file under $FIELDBOUND_OUT_DIR).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scan one graph family, or all of them plus the aggregate bound.
    Scan {
        /// gamma6_1, gamma6_2, gamma6_3, gamma7_1, gamma7_2 or all
        #[arg(long)]
        family: String,
    },
    /// Recompute every published value and compare.
    Verify,
    /// Degree, discriminant and norms of F_l or F_{k,s}.
    FieldInfo {
        #[arg(long, conflicts_with_all = ["k", "s"], required_unless_present = "k")]
        l: Option<u64>,
        #[arg(long, requires = "s")]
        k: Option<u64>,
        #[arg(long, requires = "k")]
        s: Option<u64>,
    },
    /// Fuchsian degree bound for signature genus g with t cone points.
    Takeuchi {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        t: u32,
    },
    /// Numerically re-check a lemma.
    VerifyLemma {
        #[arg(value_enum)]
        lemma: Lemma,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Lemma {
    PentagonMin,
}

/// A failure that should exit with the usage code.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_OK {
                write!(stdout, "{}", e.render())
            } else {
                write!(stderr, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            // Reader went away (`| head`); nothing left to report.
            if e.downcast_ref::<std::io::Error>().map(|io| io.kind()) == Some(std::io::ErrorKind::BrokenPipe) {
                return EXIT_OK;
            }
            let _ = writeln!(stderr, "error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                EXIT_USAGE
            } else {
                EXIT_ERROR
            }
        }
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let default_format = match cli.command {
        Command::Scan { .. } => Format::Json,
        _ => Format::Text,
    };
    let config = RunConfig {
        epsilon: cli.epsilon,
        high_precision_digits: cli.precision_digits,
        method_a_cap: cli.method_a_cap,
        output_format: cli.format.unwrap_or(default_format),
        output_path: cli.out,
    };
    match cli.command {
        Command::Scan { family } => cmd_scan(&family, &config, stdout, stderr),
        Command::Verify => cmd_verify(&config, stdout),
        Command::FieldInfo { l, k, s } => cmd_field_info(l, k.zip(s), &config, stdout),
        Command::Takeuchi { g, t } => cmd_takeuchi(g, t, &config, stdout),
        Command::VerifyLemma {
            lemma: Lemma::PentagonMin,
        } => cmd_pentagon_min(&config, stdout),
    }
}

fn emit(config: &RunConfig, stem: &str, body: &str, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match config.resolve_output(stem) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
            writeln!(stderr, "wrote {}", path.display())?;
        }
        None => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn cmd_scan(family: &str, config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    config.validate().map_err(|e| usage(e.to_string()))?;
    let policy = config.policy();
    let (docs, aggregate) = if family == "all" {
        let reports = run_all(&policy)?;
        let agg = aggregate_theorem_bound(&reports, &policy)?;
        (
            reports.iter().map(ReportDoc::from).collect::<Vec<_>>(),
            Some(AggregateDoc::from(&agg)),
        )
    } else {
        let id = FamilyId::parse(family)
            .filter(|f| *f != FamilyId::FuchsianPentagon)
            .ok_or_else(|| {
                usage(format!(
                    "unknown family '{family}' (expected gamma6_1, gamma6_2, gamma6_3, gamma7_1, gamma7_2 or all)"
                ))
            })?;
        (vec![ReportDoc::from(&run_family(id, &policy)?)], None)
    };
    let body = render(config.output_format, &docs, aggregate.as_ref())?;
    emit(config, &format!("scan-{family}"), &body, stdout, stderr)?;
    for d in docs.iter().filter(|d| d.has_borderline()) {
        writeln!(
            stderr,
            "warning: {} has {} borderline candidate(s)",
            d.family, d.borderline_count
        )?;
    }
    Ok(if docs.iter().any(ReportDoc::has_borderline) {
        EXIT_BORDERLINE
    } else {
        EXIT_OK
    })
}

fn cmd_verify(config: &RunConfig, stdout: &mut dyn Write) -> Result<i32> {
    config.validate_for_verify().map_err(|e| usage(e.to_string()))?;
    let items = verify::run(&config.policy())?;
    match config.output_format {
        Format::Json => stdout.write_all(to_json(&items)?.as_bytes())?,
        _ => {
            for i in &items {
                writeln!(stdout, "{i}")?;
            }
            let failed = items.iter().filter(|i| i.status == verify::Status::Fail).count();
            let warned = items.iter().filter(|i| i.status == verify::Status::Borderline).count();
            writeln!(
                stdout,
                "{} items, {} failed, {} borderline",
                items.len(),
                failed,
                warned
            )?;
        }
    }
    Ok(if verify::all_pass(&items) { EXIT_OK } else { EXIT_ERROR })
}

fn core_usage(e: CoreError) -> anyhow::Error {
    match e {
        CoreError::InvalidArgument { .. } | CoreError::InvalidSignature { .. } => usage(e.to_string()),
        other => other.into(),
    }
}

fn cmd_field_info(l: Option<u64>, ks: Option<(u64, u64)>, config: &RunConfig, stdout: &mut dyn Write) -> Result<i32> {
    let info = match (l, ks) {
        (Some(l), _) => field_info::single(l),
        (None, Some((k, s))) => field_info::pair(k, s),
        (None, None) => return Err(usage("give --l, or --k and --s")),
    }
    .map_err(core_usage)?;
    match config.output_format {
        Format::Json => stdout.write_all(to_json(&info)?.as_bytes())?,
        _ => write!(stdout, "{info}")?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct TakeuchiDoc {
    g: u32,
    t: u32,
    bound: u64,
}

fn cmd_takeuchi(g: u32, t: u32, config: &RunConfig, stdout: &mut dyn Write) -> Result<i32> {
    let bound = takeuchi_degree_bound(g, t).map_err(core_usage)?;
    match config.output_format {
        Format::Json => stdout.write_all(to_json(&TakeuchiDoc { g, t, bound })?.as_bytes())?,
        _ => writeln!(stdout, "[K:Q] <= {bound} for (g, t) = ({g}, {t})")?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct PentagonMinDoc {
    min_gamma: f64,
    closed_form: f64,
    abs_error: f64,
    argmin: [f64; 5],
    argmin_error: f64,
    max_residual: f64,
    gradient: [f64; 2],
    grid_point: [f64; 2],
    grid_error: f64,
    boundary_max_f: f64,
    interior_max_f: f64,
    newton_steps: u32,
    pass: bool,
}

fn cmd_pentagon_min(config: &RunConfig, stdout: &mut dyn Write) -> Result<i32> {
    let m = minimize_gamma()?;
    let q = m.argmin;
    let argmin = [q.q13, q.q14, q.q24, q.q25, q.q35];
    let x_star = 2.0 * (5f64.sqrt() - 1.0);
    let argmin_error = argmin.iter().map(|v| (v - x_star).abs()).fold(0.0, f64::max);
    let max_residual = pentagon_residuals(&q).iter().map(|r| r.abs()).fold(0.0, f64::max);
    let (gx, gy) = objective_f_gradient(q.q13, q.q24)?;
    let grid_error = (-2.0 * m.grid.value + GAMMA0).abs();
    let doc = PentagonMinDoc {
        min_gamma: m.min_value,
        closed_form: -GAMMA0,
        abs_error: (m.min_value + GAMMA0).abs(),
        argmin,
        argmin_error,
        max_residual,
        gradient: [gx, gy],
        grid_point: [m.grid.x, m.grid.y],
        grid_error,
        boundary_max_f: m.boundary_max,
        interior_max_f: m.f_max,
        newton_steps: m.newton_steps,
        pass: (m.min_value + GAMMA0).abs() < 1e-9
            && argmin_error < 1e-6
            && max_residual < 1e-10
            && grid_error < 1e-4
            && m.boundary_max < m.f_max,
    };
    match config.output_format {
        Format::Json => stdout.write_all(to_json(&doc)?.as_bytes())?,
        _ => {
            writeln!(stdout, "min gamma      {}", doc.min_gamma)?;
            writeln!(stdout, "-(sqrt5-1)^5   {}", doc.closed_form)?;
            writeln!(stdout, "abs error      {:e}", doc.abs_error)?;
            writeln!(stdout, "argmin q       {:?}", doc.argmin)?;
            writeln!(stdout, "argmin error   {:e}", doc.argmin_error)?;
            writeln!(stdout, "max residual   {:e}", doc.max_residual)?;
            writeln!(stdout, "grid error     {:e}", doc.grid_error)?;
            writeln!(
                stdout,
                "boundary max F {} < interior max F {}",
                doc.boundary_max_f, doc.interior_max_f
            )?;
            writeln!(stdout, "{}", if doc.pass { "PASS" } else { "FAIL" })?;
        }
    }
    Ok(if doc.pass { EXIT_OK } else { EXIT_ERROR })
}
