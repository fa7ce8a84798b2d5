use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mockq_core::numeric::{self, CheckReport, NumericScene, CHECK_NAMES};
use mockq_core::registry::{self, VerifyReport};
use mockq_core::{mocktheta, Error, GRID};
use serde_json::json;

#[derive(Parser)]
#[command(name = "mockq", version, about = "Verify third order mock theta identities exactly and numerically")]
struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one identity to q^order.
    Verify {
        #[arg(long)]
        id: String,
        /// Precision in powers of q (the record's default if omitted).
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        order: Option<i64>,
    },
    /// Verify every identity in the registry.
    VerifyAll {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        order: Option<i64>,
    },
    /// Run a numerical transformation check, or `all`.
    Numeric {
        #[arg(long)]
        check: String,
        /// Point in the upper half plane, e.g. "0.25+1i"; the five-point battery if omitted.
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Dump exact coefficients of a mock theta function.
    Coeffs {
        /// One of f, omega, phi, f-watson, omega-watson, omega-neg.
        #[arg(long)]
        series: String,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        order: i64,
        /// Only print nonzero coefficients.
        #[arg(long)]
        nonzero: bool,
    },
    /// List identities, numeric checks and series.
    List,
}

/// Report text plus whether everything passed.
struct Output {
    text: String,
    ok: bool,
}

fn usage(e: Error) -> (u8, String) {
    (2, format!("error: {e}"))
}

fn verify_table(reports: &[VerifyReport]) -> String {
    let mut s = format!("{:<20} {:<6} {:>6} {:>8}  {}\n", "id", "status", "order", "ms", "detail");
    for r in reports {
        let mut detail = String::new();
        if let Some(m) = &r.first_mismatch {
            let _ = write!(detail, "first mismatch at q^({}/24): {} vs {}", m.exponent_num_24, m.lhs, m.rhs);
        }
        if let Some(n) = &r.note {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str(n);
        }
        let status = if r.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(s, "{:<20} {:<6} {:>6} {:>8}  {}", r.id, status, r.order, r.ms, detail);
    }
    s
}

fn check_table(reports: &[CheckReport]) -> String {
    let mut s = format!("{:<22} {:<26} {:>10} {:>8} {:<6} {}\n", "check", "tau", "residual", "tol", "status", "detail");
    for r in reports {
        let status = if r.passed { "pass" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{:<22} {:<26} {:>10.3e} {:>8.0e} {:<6} {}",
            r.check,
            r.tau,
            r.residual,
            r.tol,
            status,
            r.detail.as_deref().unwrap_or("")
        );
    }
    s
}

fn run_numeric(check: &str, tau: Option<&str>, tol: Option<f64>) -> Result<Vec<CheckReport>, (u8, String)> {
    let names: Vec<&str> = if check == "all" {
        CHECK_NAMES.to_vec()
    } else if CHECK_NAMES.contains(&check) {
        vec![check]
    } else {
        return Err(usage(Error::UnknownCheck { name: check.into(), valid: CHECK_NAMES.join(", ") }));
    };
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err((2, format!("error: tolerance {t} must be positive")));
        }
    }
    let scenes = match tau {
        Some(text) => {
            let z = numeric::parse_tau(text).map_err(usage)?;
            vec![NumericScene::new(z).map_err(usage)?]
        }
        None => numeric::battery_scenes(),
    };
    let jobs: Vec<(&str, &NumericScene)> = names.iter().flat_map(|n| scenes.iter().map(move |s| (*n, s))).collect();
    use rayon::prelude::*;
    let out: Vec<CheckReport> = jobs
        .par_iter()
        .map(|(name, sc)| {
            numeric::run_check(name, sc, tol).unwrap_or_else(|e| CheckReport {
                check: name.to_string(),
                tau: format!("{}{:+}i", sc.tau.re, sc.tau.im),
                residual: f64::NAN,
                tol: tol.unwrap_or(f64::NAN),
                passed: false,
                detail: Some(format!("error: {e}")),
            })
        })
        .collect();
    Ok(out)
}

fn execute(cli: &Cli) -> Result<Output, (u8, String)> {
    match &cli.command {
        Command::Verify { id, order } => {
            let rec = registry::find(id).map_err(usage)?;
            let rep = registry::verify_record(&rec, order.unwrap_or(rec.default_order));
            let reports = vec![rep];
            let ok = reports[0].passed();
            let text = if cli.json { registry::reports_to_json(&reports) + "\n" } else { verify_table(&reports) };
            Ok(Output { text, ok })
        }
        Command::VerifyAll { order } => {
            let reports = registry::verify_all(*order);
            let ok = reports.iter().all(VerifyReport::passed);
            let mut text = if cli.json { registry::reports_to_json(&reports) + "\n" } else { verify_table(&reports) };
            if !cli.json {
                let passed = reports.iter().filter(|r| r.passed()).count();
                let _ = writeln!(text, "{passed}/{} identities verified", reports.len());
            }
            Ok(Output { text, ok })
        }
        Command::Numeric { check, tau, tol } => {
            let reports = run_numeric(check, tau.as_deref(), *tol)?;
            let ok = reports.iter().all(|r| r.passed);
            let text = if cli.json {
                serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n"
            } else {
                check_table(&reports)
            };
            Ok(Output { text, ok })
        }
        Command::Coeffs { series, order, nonzero } => {
            let s = match mocktheta::by_name(series, order * GRID) {
                Some(r) => r.map_err(|e| (1, format!("error: {e}")))?,
                None => {
                    return Err((2, format!("error: unknown series `{series}`; valid: {}", mocktheta::SERIES_NAMES.join(", "))))
                }
            };
            let text = if cli.json {
                let rows: Vec<_> = (s.low()..s.cap())
                    .filter_map(|e| {
                        let c = s.coeff(e).ok()?;
                        if *nonzero && c.is_zero() {
                            return None;
                        }
                        let comps: Vec<String> = c.coeffs().iter().map(|r| r.to_string()).collect();
                        Some(json!({ "exponent_num_24": e, "coeffs": comps }))
                    })
                    .collect();
                serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
            } else {
                s.dump(*nonzero)
            };
            Ok(Output { text, ok: true })
        }
        Command::List => {
            let cat = registry::catalog();
            let text = if cli.json {
                let ids: Vec<_> = cat
                    .iter()
                    .map(|r| json!({ "id": r.id, "description": r.description, "default_order": r.default_order }))
                    .collect();
                let v = json!({ "identities": ids, "checks": CHECK_NAMES, "series": mocktheta::SERIES_NAMES });
                serde_json::to_string_pretty(&v).expect("list serializes") + "\n"
            } else {
                let mut s = String::from("identities:\n");
                for r in &cat {
                    let _ = writeln!(s, "  {:<20} q^{:<4} {}", r.id, r.default_order, r.description);
                }
                let _ = writeln!(s, "numeric checks:\n  {}", CHECK_NAMES.join(" "));
                let _ = writeln!(s, "series:\n  {}", mocktheta::SERIES_NAMES.join(" "));
                s
            };
            Ok(Output { text, ok: true })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j as usize).build_global() {
            eprintln!("error: cannot set up {j} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(&cli) {
        Ok(out) => {
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &out.text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err((code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
