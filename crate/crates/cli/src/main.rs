//! gt-risk: mean-squared error of the Good-Turing missing-mass estimator,
//! exactly, asymptotically, at the worst case, and by simulation.

mod distspec;
mod render;

use clap::{Parser, Subcommand, ValueEnum};
use gt_risk::{
    AlphabetSize, beta_kernel, beta_mode, brute_force_mse, exact_mse, exp_quad,
    exp_quad_extremes, exp_quad_inflections, monte_carlo_mse, mse_first_moment, mse_poissonized,
    phase_curve, solve_worst_case,
};
use render::{csv_field, sig};
use serde_json::json;
use std::fmt::Write as _;
use std::num::NonZeroU64;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gt-risk",
    version,
    about = "Mean-squared error of the Good-Turing missing-mass estimator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_alphabet(s: &str) -> Result<AlphabetSize, String> {
    let a: AlphabetSize = s.parse().map_err(|e: gt_risk::Error| e.to_string())?;
    if let AlphabetSize::Finite(m) = a
        && m < 2
    {
        return Err("alphabet size must be at least 2, or 'inf'".to_string());
    }
    Ok(a)
}

#[derive(Subcommand)]
enum Command {
    /// Exact MSE (with moment breakdown) and both asymptotic approximations
    Mse {
        /// Distribution: uniform:m, dirac-uniform:m:w, zipf:m:s, a file of
        /// probabilities, or an inline weight list like 0.7,0.2,0.1
        #[arg(long)]
        dist: String,
        /// Sample size
        #[arg(long)]
        n: NonZeroU64,
        /// Also run the m^n enumeration oracle (desk-scale instances only)
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Write output here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Worst-case scaled MSE over all distributions on an alphabet
    WorstCase {
        /// Sample size (at least 2)
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        /// Alphabet size: an integer >= 2, or 'inf'
        #[arg(long, value_parser = parse_alphabet)]
        m: AlphabetSize,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Worst-case constant as a function of b = m/n (CSV by default)
    PhaseCurve {
        #[arg(long, default_value_t = 0.05)]
        b_min: f64,
        #[arg(long, default_value_t = 2.0)]
        b_max: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        /// Explicit comma-separated ratio list overriding the range
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["b_min", "b_max", "step"])]
        ratios: Option<Vec<f64>>,
        /// Reference sample size defining m = round(b * n_ref)
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(2..))]
        n_ref: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the MSE, reproducible by seed
    Simulate {
        #[arg(long)]
        dist: String,
        #[arg(long)]
        n: NonZeroU64,
        /// Number of independent trials (at least 2)
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Closed-form facts about the analysis kernels, with residual checks
    Lemmas {
        #[command(subcommand)]
        lemma: Lemma,
    },
}

#[derive(Subcommand)]
enum Lemma {
    /// Extremes and inflections of g(u) = (u^2 + b u) e^-u
    ExpQuad {
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// argmax of x^a (1-x)^b on [0, 1]
    BetaMode {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

/// Library errors split into the two exit classes: bad input is on the
/// user (2), instances we refuse to compute are on the math (1).
fn classify(e: gt_risk::Error) -> Failure {
    match e {
        gt_risk::Error::OracleTooLarge { .. } | gt_risk::Error::SupportExceedsAlphabet { .. } => {
            Failure::Compute(e.to_string())
        }
        _ => Failure::Usage(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|_| run(cli.command));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn init_threads() -> Result<(), Failure> {
    let raw = match std::env::var("GT_RISK_THREADS") {
        Ok(v) => v,
        Err(std::env::VarError::NotPresent) => return Ok(()),
        Err(e) => return Err(Failure::Usage(format!("GT_RISK_THREADS: {e}"))),
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| {
            Failure::Usage(format!(
                "GT_RISK_THREADS must be a positive integer, got '{raw}'"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Compute(format!("thread pool setup: {e}")))
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Compute(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn kv_csv(rows: &[(&str, String)]) -> String {
    let mut out = String::from("key,value\n");
    for (k, v) in rows {
        let _ = writeln!(out, "{},{}", csv_field(k), csv_field(v));
    }
    out
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Mse {
            dist,
            n,
            oracle,
            format,
            output,
        } => cmd_mse(&dist, n, oracle, format, output.as_ref()),
        Command::WorstCase {
            n,
            m,
            format,
            output,
        } => cmd_worst_case(m, n, format, output.as_ref()),
        Command::PhaseCurve {
            b_min,
            b_max,
            step,
            ratios,
            n_ref,
            format,
            output,
        } => cmd_phase_curve(b_min, b_max, step, ratios, n_ref, format, output.as_ref()),
        Command::Simulate {
            dist,
            n,
            trials,
            seed,
            format,
            output,
        } => cmd_simulate(&dist, n, trials, seed, format, output.as_ref()),
        Command::Lemmas { lemma } => match lemma {
            Lemma::ExpQuad { b, format, output } => cmd_exp_quad(b, format, output.as_ref()),
            Lemma::BetaMode {
                a,
                b,
                format,
                output,
            } => cmd_beta_mode(a, b, format, output.as_ref()),
        },
    }
}

fn cmd_mse(
    spec: &str,
    n: NonZeroU64,
    oracle: bool,
    format: Option<Format>,
    output: Option<&PathBuf>,
) -> Result<(), Failure> {
    let dist = distspec::parse(spec).map_err(Failure::Usage)?;
    let n = n.get();
    let report = exact_mse(&dist, n).map_err(classify)?;
    let first_moment = if n >= 2 {
        Some(mse_first_moment(&dist, n).map_err(classify)?)
    } else {
        None
    };
    let poissonized = mse_poissonized(&dist, n).map_err(classify)?;
    let oracle_value = if oracle {
        Some(brute_force_mse(&dist, n).map_err(classify)?)
    } else {
        None
    };

    let gap_fm = first_moment.map(|v| (report.mse - v).abs());
    let gap_po = (report.mse - poissonized).abs();
    let gap_fm_po = first_moment.map(|v| (v - poissonized).abs());

    let text = match format {
        None => {
            let mut t = String::new();
            let _ = writeln!(t, "distribution: {spec} (m = {})", dist.support_size());
            let _ = writeln!(t, "n: {n}");
            let _ = writeln!(t, "exact mse: {}", sig(report.mse));
            let _ = writeln!(t, "  E[estimate^2]: {}", sig(report.e_gt_sq));
            let _ = writeln!(t, "  E[estimate * missing]: {}", sig(report.e_cross));
            let _ = writeln!(t, "  E[missing^2]: {}", sig(report.e_mm_sq));
            match first_moment {
                Some(v) => {
                    let _ = writeln!(t, "first-moment approximation: {}", sig(v));
                }
                None => {
                    let _ = writeln!(t, "first-moment approximation: n/a (needs n >= 2)");
                }
            }
            let _ = writeln!(t, "poissonized approximation: {}", sig(poissonized));
            if let Some(g) = gap_fm {
                let _ = writeln!(t, "|exact - first-moment|: {}", sig(g));
            }
            let _ = writeln!(t, "|exact - poissonized|: {}", sig(gap_po));
            if let Some(g) = gap_fm_po {
                let _ = writeln!(t, "|first-moment - poissonized|: {}", sig(g));
            }
            if let Some(v) = oracle_value {
                let _ = writeln!(t, "enumeration oracle: {}", sig(v));
                let _ = writeln!(t, "|exact - oracle|: {}", sig((report.mse - v).abs()));
            }
            t
        }
        Some(Format::Csv) => {
            let mut rows: Vec<(&str, String)> = vec![
                ("dist", spec.to_string()),
                ("m", dist.support_size().to_string()),
                ("n", n.to_string()),
                ("exact_mse", sig(report.mse)),
                ("e_gt_sq", sig(report.e_gt_sq)),
                ("e_cross", sig(report.e_cross)),
                ("e_mm_sq", sig(report.e_mm_sq)),
            ];
            rows.push((
                "first_moment",
                first_moment.map_or("n/a".to_string(), sig),
            ));
            rows.push(("poissonized", sig(poissonized)));
            rows.push(("gap_first_moment", gap_fm.map_or("n/a".to_string(), sig)));
            rows.push(("gap_poissonized", sig(gap_po)));
            rows.push((
                "gap_first_moment_poissonized",
                gap_fm_po.map_or("n/a".to_string(), sig),
            ));
            if let Some(v) = oracle_value {
                rows.push(("oracle", sig(v)));
                rows.push(("gap_oracle", sig((report.mse - v).abs())));
            }
            kv_csv(&rows)
        }
        Some(Format::Json) => {
            let value = json!({
                "dist": spec,
                "m": dist.support_size(),
                "n": n,
                "exact": {
                    "mse": report.mse,
                    "e_gt_sq": report.e_gt_sq,
                    "e_cross": report.e_cross,
                    "e_mm_sq": report.e_mm_sq,
                },
                "first_moment": first_moment,
                "poissonized": poissonized,
                "gap_first_moment": gap_fm,
                "gap_poissonized": gap_po,
                "gap_first_moment_poissonized": gap_fm_po,
                "oracle": oracle_value,
            });
            format!("{value:#}\n")
        }
    };
    emit(&text, output)
}

fn cmd_worst_case(
    m: AlphabetSize,
    n: u64,
    format: Option<Format>,
    output: Option<&PathBuf>,
) -> Result<(), Failure> {
    let sol = solve_worst_case(m, n).map_err(classify)?;
    let atom_mass = 1.0 - sol.w;
    let text = match format {
        None => {
            let mut t = String::new();
            let _ = writeln!(t, "m: {m}");
            let _ = writeln!(t, "n: {n}");
            let _ = writeln!(t, "regime: {}", sol.regime);
            let _ = writeln!(t, "alpha: {}", sig(sol.alpha));
            let _ = writeln!(t, "w: {}", sig(sol.w));
            let _ = writeln!(t, "c: {}", sig(sol.c));
            let _ = writeln!(t, "alpha/n: {}", sig(sol.mse_leading));
            if sol.w < 1.0 {
                let _ = writeln!(
                    t,
                    "extremal distribution: {} uniform symbols + atom of mass {}",
                    sol.uniform_support,
                    sig(atom_mass)
                );
            } else {
                let _ = writeln!(
                    t,
                    "extremal distribution: {} uniform symbols, no atom",
                    sol.uniform_support
                );
            }
            t
        }
        Some(Format::Csv) => kv_csv(&[
            ("m", m.to_string()),
            ("n", n.to_string()),
            ("regime", sol.regime.to_string()),
            ("alpha", sig(sol.alpha)),
            ("w", sig(sol.w)),
            ("c", sig(sol.c)),
            ("alpha_over_n", sig(sol.mse_leading)),
            ("uniform_support", sol.uniform_support.to_string()),
            ("atom_mass", sig(atom_mass)),
        ]),
        Some(Format::Json) => {
            let value = json!({
                "m": m.to_string(),
                "n": n,
                "regime": sol.regime.to_string(),
                "alpha": sol.alpha,
                "w": sol.w,
                "c": sol.c,
                "mse_leading": sol.mse_leading,
                "uniform_support": sol.uniform_support,
                "atom_mass": atom_mass,
            });
            format!("{value:#}\n")
        }
    };
    emit(&text, output)
}

fn cmd_phase_curve(
    b_min: f64,
    b_max: f64,
    step: f64,
    ratios: Option<Vec<f64>>,
    n_ref: u64,
    format: Option<Format>,
    output: Option<&PathBuf>,
) -> Result<(), Failure> {
    let ratios = match ratios {
        Some(list) if list.is_empty() => {
            return Err(Failure::Usage("ratio list is empty".to_string()));
        }
        Some(mut list) => {
            // rows go out in ascending b regardless of how they came in
            list.sort_by(f64::total_cmp);
            list
        }
        None => {
            if !step.is_finite() || step <= 0.0 {
                return Err(Failure::Usage(format!("step must be positive, got {step}")));
            }
            if !b_min.is_finite() || !b_max.is_finite() || b_max < b_min {
                return Err(Failure::Usage(format!(
                    "empty ratio range [{b_min}, {b_max}]"
                )));
            }
            let count = ((b_max - b_min) / step + 1e-9).floor() as usize + 1;
            if count > 100_000 {
                return Err(Failure::Usage(format!(
                    "range produces {count} points; cap is 100000"
                )));
            }
            (0..count).map(|i| b_min + i as f64 * step).collect()
        }
    };
    let points = phase_curve(&ratios, n_ref).map_err(classify)?;
    let text = match format {
        // the curve is tabular data; CSV is its native shape
        None | Some(Format::Csv) => {
            let mut t = String::from("b,mse\n");
            for (b, alpha) in &points {
                let _ = writeln!(t, "{},{}", sig(*b), sig(*alpha));
            }
            t
        }
        Some(Format::Json) => {
            let rows: Vec<serde_json::Value> = points
                .iter()
                .map(|(b, alpha)| json!({"b": b, "mse": alpha}))
                .collect();
            let value = json!({"n_ref": n_ref, "points": rows});
            format!("{value:#}\n")
        }
    };
    emit(&text, output)
}

fn cmd_simulate(
    spec: &str,
    n: NonZeroU64,
    trials: u64,
    seed: u64,
    format: Option<Format>,
    output: Option<&PathBuf>,
) -> Result<(), Failure> {
    let dist = distspec::parse(spec).map_err(Failure::Usage)?;
    let result = monte_carlo_mse(&dist, n, trials, seed).map_err(classify)?;
    // the exact cross-check is O(m^2); skip it for huge alphabets
    let exact = if dist.support_size() <= 1000 {
        Some(exact_mse(&dist, n.get()).map_err(classify)?.mse)
    } else {
        None
    };
    let z = exact.map(|e| {
        if result.std_error > 0.0 {
            (result.mse_estimate - e) / result.std_error
        } else {
            0.0
        }
    });
    let text = match format {
        None => {
            let mut t = String::new();
            let _ = writeln!(t, "distribution: {spec} (m = {})", dist.support_size());
            let _ = writeln!(t, "n: {n}");
            let _ = writeln!(t, "trials: {}", result.trials);
            let _ = writeln!(t, "seed: {}", result.seed);
            let _ = writeln!(t, "mse estimate: {}", sig(result.mse_estimate));
            let _ = writeln!(t, "std error: {}", sig(result.std_error));
            if let (Some(e), Some(z)) = (exact, z) {
                let _ = writeln!(t, "exact mse: {}", sig(e));
                let _ = writeln!(t, "z-score: {}", sig(z));
            }
            t
        }
        Some(Format::Csv) => {
            let mut rows: Vec<(&str, String)> = vec![
                ("dist", spec.to_string()),
                ("m", dist.support_size().to_string()),
                ("n", n.to_string()),
                ("trials", result.trials.to_string()),
                ("seed", result.seed.to_string()),
                ("mse_estimate", sig(result.mse_estimate)),
                ("std_error", sig(result.std_error)),
            ];
            if let (Some(e), Some(z)) = (exact, z) {
                rows.push(("exact_mse", sig(e)));
                rows.push(("z_score", sig(z)));
            }
            kv_csv(&rows)
        }
        Some(Format::Json) => {
            let value = json!({
                "dist": spec,
                "m": dist.support_size(),
                "n": n.get(),
                "trials": result.trials,
                "seed": result.seed,
                "mse_estimate": result.mse_estimate,
                "std_error": result.std_error,
                "exact_mse": exact,
                "z_score": z,
            });
            format!("{value:#}\n")
        }
    };
    emit(&text, output)
}

fn fd_first(u: f64, b: f64) -> f64 {
    let h = 1e-5;
    (exp_quad(u + h, b) - exp_quad(u - h, b)) / (2.0 * h)
}

fn fd_second(u: f64, b: f64) -> f64 {
    let h = 2e-4;
    (exp_quad(u + h, b) - 2.0 * exp_quad(u, b) + exp_quad(u - h, b)) / (h * h)
}

fn cmd_exp_quad(b: f64, format: Option<Format>, output: Option<&PathBuf>) -> Result<(), Failure> {
    if !b.is_finite() {
        return Err(Failure::Usage(format!("b must be finite, got {b}")));
    }
    let extremes = exp_quad_extremes(b);
    let inflections = exp_quad_inflections(b);
    let extreme_residuals: Vec<f64> = extremes.iter().map(|&u| fd_first(u, b).abs()).collect();
    let inflection_residuals: Vec<f64> =
        inflections.iter().map(|&u| fd_second(u, b).abs()).collect();
    let text = match format {
        None => {
            let mut t = String::new();
            let _ = writeln!(t, "g(u) = (u^2 + b u) exp(-u) with b = {}", sig(b));
            for (u, r) in extremes.iter().zip(&extreme_residuals) {
                let _ = writeln!(t, "extreme: u = {} (|g'| = {r:.2e})", sig(*u));
            }
            for (u, r) in inflections.iter().zip(&inflection_residuals) {
                let _ = writeln!(t, "inflection: u = {} (|g''| = {r:.2e})", sig(*u));
            }
            t
        }
        Some(Format::Csv) => {
            let mut rows: Vec<(&str, String)> = vec![("b", sig(b))];
            for (u, r) in extremes.iter().zip(&extreme_residuals) {
                rows.push(("extreme", sig(*u)));
                rows.push(("extreme_residual", format!("{r:.2e}")));
            }
            for (u, r) in inflections.iter().zip(&inflection_residuals) {
                rows.push(("inflection", sig(*u)));
                rows.push(("inflection_residual", format!("{r:.2e}")));
            }
            kv_csv(&rows)
        }
        Some(Format::Json) => {
            let value = json!({
                "b": b,
                "extremes": extremes,
                "extreme_residuals": extreme_residuals,
                "inflections": inflections,
                "inflection_residuals": inflection_residuals,
            });
            format!("{value:#}\n")
        }
    };
    emit(&text, output)
}

fn cmd_beta_mode(
    a: f64,
    b: f64,
    format: Option<Format>,
    output: Option<&PathBuf>,
) -> Result<(), Failure> {
    let mode = beta_mode(a, b).map_err(classify)?;
    let h = 1e-6;
    let residual =
        ((beta_kernel(mode + h, a, b) - beta_kernel(mode - h, a, b)) / (2.0 * h)).abs();
    let text = match format {
        None => {
            let mut t = String::new();
            let _ = writeln!(t, "kernel: x^a (1-x)^b with a = {}, b = {}", sig(a), sig(b));
            let _ = writeln!(t, "mode: {}", sig(mode));
            let _ = writeln!(t, "|slope at mode|: {residual:.2e}");
            t
        }
        Some(Format::Csv) => kv_csv(&[
            ("a", sig(a)),
            ("b", sig(b)),
            ("mode", sig(mode)),
            ("slope_residual", format!("{residual:.2e}")),
        ]),
        Some(Format::Json) => {
            let value = json!({
                "a": a,
                "b": b,
                "mode": mode,
                "slope_residual": residual,
            });
            format!("{value:#}\n")
        }
    };
    emit(&text, output)
}
