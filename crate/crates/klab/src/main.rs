//! Command-line front end.
//!
//! Every subcommand prints its results to stdout and exits 0 exactly when no
//! check FAILED (skipped cells do not fail a run).

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use klab::bounds::{
    gruss_bound_t42, gv_residual, paltanea_sup, rate_fit, simultaneous_bound_t25,
    uniform_bound_t24, voronovskaya_bound_t31, BoundReport, CheckStatus, TheoremId,
};
use klab::corpus::{builtin_corpus, find};
use klab::kantorovich::{central_moment_closed, central_moment_exact, KantorovichOp};
use klab::moduli::{majorant_of_modulus, modulus};
use klab::rat::{format_rat, parse_rat, to_f64};
use klab::report::{emit, fmt_float, Format};
use klab::suite::{run_suite, SuiteConfig};
use klab::{Error, Result, BOUND_TOL, DEFAULT_GRID};

#[derive(Parser)]
#[command(name = "klab", version, about = "Verification laboratory for Kantorovich operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the operator: K_n(f; x)
    Apply {
        #[arg(long)]
        n: usize,
        #[arg(long = "fn")]
        func: String,
        #[arg(long)]
        x: f64,
    },
    /// Central moments M_m(n; x) at a rational point
    Moments {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: u32,
        /// Rational evaluation point, e.g. 1/4
        #[arg(long)]
        x: String,
        /// Use the exact summation instead of the closed form
        #[arg(long)]
        exact: bool,
    },
    /// k-th modulus of smoothness at step t
    Modulus {
        #[arg(long = "fn")]
        func: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Least concave majorant of the first modulus, evaluated at t
    Majorant {
        #[arg(long = "fn")]
        func: String,
        #[arg(long)]
        t: f64,
    },
    /// Check one theorem over a list of n
    Check {
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long = "fn")]
        func: Option<String>,
        /// Second function for pair theorems
        #[arg(long = "gn")]
        g_func: Option<String>,
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Fit the decay rate of the Grüss-Voronovskaya residual for a pair
    Rates {
        /// Comma-separated pair, e.g. e2,e2
        #[arg(long, value_delimiter = ',')]
        pair: Vec<String>,
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Run the full verification suite
    Suite {
        #[arg(long)]
        config: Option<String>,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
}

fn print_record(rec: &BoundReport) {
    let func = match rec.r {
        Some(r) => format!("{}#r{}", rec.function, r),
        None => rec.function.clone(),
    };
    let pair = match &rec.g_function {
        Some(g) => format!("{func},{g}"),
        None => func,
    };
    let status = match rec.status {
        CheckStatus::Passed => "PASSED",
        CheckStatus::Failed => "FAILED",
        CheckStatus::Skipped => "SKIPPED",
    };
    let mut line = format!("{} {} n={} lhs={}", rec.theorem, pair, rec.n, fmt_float(rec.lhs));
    if let Some(rhs) = rec.rhs {
        line.push_str(&format!(" rhs={}", fmt_float(rhs)));
    }
    if let Some(m) = rec.margin {
        line.push_str(&format!(" margin={}", fmt_float(m)));
    }
    if let Some(x) = rec.x_worst {
        line.push_str(&format!(" x_worst={}", fmt_float(x)));
    }
    println!("{line} {status}");
}

/// Runs one check cell; mirrors the suite's eligibility rules.
fn check_cell(
    theorem: TheoremId,
    f_id: &str,
    g_id: Option<&str>,
    n: usize,
    grid: usize,
) -> Result<Vec<BoundReport>> {
    let corpus = builtin_corpus();
    let f = find(&corpus, f_id)?;
    let op = KantorovichOp::new(n)?;
    let mut out = Vec::new();
    match theorem {
        TheoremId::UniformT24 => {
            if n < 4 {
                out.push(BoundReport::skipped(theorem, f_id, n, grid));
            } else {
                out.push(uniform_bound_t24(&op, f, grid)?);
            }
        }
        TheoremId::SimultaneousT25 => {
            for r in [1u32, 2] {
                if n < 4 || f.deriv_order() < r || f.smoothness.continuity() < r {
                    let mut rep = BoundReport::skipped(theorem, f_id, n, grid);
                    rep.r = Some(r);
                    out.push(rep);
                } else {
                    out.push(simultaneous_bound_t25(&op, r, f, grid)?);
                }
            }
        }
        TheoremId::VoronovskayaT31 => {
            if f.deriv_order() < 2 || f.smoothness.continuity() < 2 {
                out.push(BoundReport::skipped(theorem, f_id, n, grid));
            } else {
                out.push(voronovskaya_bound_t31(&op, f, grid)?);
            }
        }
        TheoremId::GrussT42 => {
            let g_id = g_id.ok_or_else(|| {
                Error::Config("GRUSS_T42 needs --gn for the second function".into())
            })?;
            let g = find(&corpus, g_id)?;
            out.push(gruss_bound_t42(&op, f, g, grid)?);
        }
        TheoremId::Paltanea => {
            if n < 4 {
                out.push(BoundReport::skipped(theorem, f_id, n, grid));
            } else {
                let (bound, x_at) = paltanea_sup(&op, f, grid)?;
                let t24 = uniform_bound_t24(&op, f, grid)?;
                let lhs = t24.lhs;
                let status = if lhs <= bound + BOUND_TOL {
                    CheckStatus::Passed
                } else {
                    CheckStatus::Failed
                };
                out.push(BoundReport {
                    theorem,
                    function: f_id.to_string(),
                    g_function: None,
                    r: None,
                    n,
                    lhs,
                    rhs: Some(bound),
                    margin: Some(bound - lhs),
                    status,
                    x_worst: Some(x_at),
                    grid_points: grid,
                });
            }
        }
        TheoremId::GvRateT52 | TheoremId::GvRateT53 => {
            return Err(Error::Config(format!(
                "{theorem} is a rate statement; use the `rates` subcommand"
            )));
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<bool> {
    let mut any_failed = false;
    match cli.command {
        Command::Apply { n, func, x } => {
            let corpus = builtin_corpus();
            let f = find(&corpus, &func)?;
            let op = KantorovichOp::new(n)?;
            println!("{}", fmt_float(op.apply(f, x)?));
        }
        Command::Moments { n, order, x, exact } => {
            let x = parse_rat(&x)?;
            let m = if exact {
                central_moment_exact(n, order, &x)?
            } else {
                central_moment_closed(n, order, &x)?
            };
            println!("{} ({})", format_rat(&m), fmt_float(to_f64(&m)));
        }
        Command::Modulus { func, k, t, grid } => {
            let corpus = builtin_corpus();
            let f = find(&corpus, &func)?;
            let est = modulus(f, k, t, grid)?;
            println!("{}", fmt_float(est.value));
        }
        Command::Majorant { func, t } => {
            let corpus = builtin_corpus();
            let f = find(&corpus, &func)?;
            println!("{}", fmt_float(majorant_of_modulus(f, t, DEFAULT_GRID)?));
        }
        Command::Check { theorem, func, g_func, n_list, grid } => {
            let func = func.ok_or_else(|| Error::Config("check needs --fn".into()))?;
            for &n in &n_list {
                for rec in check_cell(theorem, &func, g_func.as_deref(), n, grid)? {
                    any_failed |= rec.status == CheckStatus::Failed;
                    print_record(&rec);
                }
            }
        }
        Command::Rates { pair, n_list, grid } => {
            if pair.len() != 2 {
                return Err(Error::Config("--pair takes exactly two function ids, e.g. e2,e2".into()));
            }
            let corpus = builtin_corpus();
            let f = find(&corpus, &pair[0])?;
            let g = find(&corpus, &pair[1])?;
            let mut samples = Vec::new();
            for &n in &n_list {
                let op = KantorovichOp::new(n)?;
                let res = gv_residual(&op, f, g, grid)?;
                println!("n={n} residual={}", fmt_float(res));
                samples.push((n, res));
            }
            match rate_fit(&samples) {
                Ok(fit) => println!(
                    "slope={} intercept={} r_squared={} (from {} samples, {} dropped)",
                    fmt_float(fit.slope),
                    fmt_float(fit.intercept),
                    fmt_float(fit.r_squared),
                    fit.samples.len(),
                    fit.dropped
                ),
                Err(e) => println!("no fit: {e}"),
            }
        }
        Command::Suite { config, format } => {
            let cfg = match config {
                Some(path) => SuiteConfig::from_json_file(&path)?,
                None => SuiteConfig::default(),
            };
            let report = run_suite(&cfg)?;
            for rec in &report.records {
                print_record(rec);
            }
            for fit in &report.rate_fits {
                let status = if fit.passed { "PASSED" } else { "FAILED" };
                println!(
                    "{} {},{} rate-fit [{}] {} {status}",
                    fit.theorem, fit.function, fit.g_function, fit.class, fit.criterion
                );
            }
            let bad_identities = report.identity_checks.iter().filter(|c| !c.ok).count();
            for c in report.identity_checks.iter().filter(|c| !c.ok) {
                println!("IDENTITY {} n={} {} FAILED", c.name, c.n, c.detail);
            }
            let path = emit(&report, format, &cfg.output_path)?;
            let failed = report.failed();
            println!(
                "suite: {} records, {} rate fits, {} identity checks ({} failed) -> {}",
                report.records.len(),
                report.rate_fits.len(),
                report.identity_checks.len(),
                failed,
                path
            );
            any_failed |= failed > 0 || bad_identities > 0;
        }
    }
    Ok(any_failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
