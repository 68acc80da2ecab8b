//! `hyperconn` command-line interface.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 bound
//! violation found in audit mode.

mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use hyperconn::bounds::{bound_curve, ensemble_statistics, BoundFamily};
use hyperconn::harness::{compare, ExperimentConfig, Format, TailReport};
use hyperconn::hypergraph::{
    algebraic_connectivity, expected_trial_moments, is_m_connected, laplacian_tensor, EnsembleSpec,
};
use hyperconn::spectral::eigenvalues;
use hyperconn::{Error, Hypergraph, DEFAULT_TOL};

#[derive(Parser)]
#[command(name = "hyperconn", version, about = "Algebraic connectivity of random hypergraph ensembles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Algebraic connectivity and spectrum of one hypergraph
    Connectivity {
        /// Hypergraph JSON file
        #[arg(long)]
        input: PathBuf,
        /// Also decide M-connectivity
        #[arg(long)]
        check_mconnected: bool,
    },
    /// Closed-form tail bounds for an ensemble
    Bounds {
        #[arg(long = "m")]
        m: usize,
        #[arg(long = "M")]
        half: usize,
        #[arg(long = "N")]
        n_graphs: usize,
        /// e.g. bernoulli:p=0.5,w=1 | uniform:a=0,b=1 | centered:base=1,scale=0.5
        #[arg(long)]
        dist: String,
        /// Comma-separated list or start:stop:count
        #[arg(long)]
        theta: String,
        /// Subtract the mean Laplacian from each sample
        #[arg(long)]
        centered: bool,
        /// Scale samples to spectral norm at most one
        #[arg(long)]
        normalize: bool,
        /// Print JSON instead of CSV
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo tail estimates against the bounds
    Montecarlo {
        #[arg(long)]
        config: PathBuf,
        /// Defaults to the config's `out`
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: Format,
        #[arg(long)]
        workers: Option<usize>,
        /// Exit with status 3 if any row violates a bound
        #[arg(long)]
        audit: bool,
        /// Record wall time in the JSON metadata
        #[arg(long)]
        timing: bool,
    },
    /// Built-in oracle checks
    Selftest,
}

fn connectivity(input: PathBuf, check_mconnected: bool) -> anyhow::Result<ExitCode> {
    let g = Hypergraph::load(&input).with_context(|| format!("reading {}", input.display()))?;
    let l = laplacian_tensor(&g);
    let spectrum = eigenvalues(&l.value, DEFAULT_TOL)?;
    let alpha = algebraic_connectivity(&l, g.m, g.half)?;
    let k = hyperconn::hypergraph::connectivity_index(g.m, g.half)?;
    let zeros = spectrum.iter().filter(|v| v.abs() <= 1e-9).count();
    println!("m = {}, M = {}, edges = {}", g.m, g.half, g.vertex_sets().len());
    println!("k = {k}");
    println!("alpha = {alpha:.16e}");
    println!("lambda_max = {:.16e}", spectrum[0]);
    println!("lambda_min = {:.16e}", spectrum[spectrum.len() - 1]);
    println!("zero eigenvalues = {zeros} of {}", spectrum.len());
    let listed: Vec<String> = spectrum.iter().map(|v| format!("{v:.10}")).collect();
    println!("spectrum = [{}]", listed.join(", "));
    if check_mconnected {
        println!("m_connected = {}", is_m_connected(&g));
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn bounds(
    m: usize,
    half: usize,
    n_graphs: usize,
    dist: &str,
    theta: &str,
    center: bool,
    normalize: bool,
    json: bool,
) -> anyhow::Result<ExitCode> {
    let spec = EnsembleSpec {
        n_graphs,
        m,
        half,
        distribution: parse::distribution(dist)?,
        center,
        normalize,
        seed: 0,
    };
    spec.validate()?;
    let thetas = parse::thetas(theta)?;
    let moments = expected_trial_moments::<f64>(&spec)?;
    let stats = ensemble_statistics(&moments.first, &moments.second, m, half, n_graphs)?;
    let families = [
        BoundFamily::ChernoffUpper,
        BoundFamily::ChernoffLower,
        BoundFamily::Bennett,
        BoundFamily::Bernstein,
    ];
    let curves: Vec<_> = families.iter().map(|&f| bound_curve(f, &thetas, &stats)).collect();
    if json {
        let out = serde_json::json!({ "statistics": stats, "curves": curves });
        println!("{}", serde_json::to_string_pretty(&out)?);
        return Ok(ExitCode::SUCCESS);
    }
    println!("# nu = {:.16e}", stats.nu);
    println!("# sigma2 = {:.16e}", stats.sigma2);
    println!("# k = {}, dim_upper = {}, dim_lower = {}", stats.k, stats.dim_upper, stats.dim_lower);
    println!("theta,chernoff_upper,chernoff_lower,bennett,bernstein,valid_flags");
    for (i, t) in thetas.iter().enumerate() {
        let mut cells = vec![format!("{t:.16e}")];
        let mut flags = Vec::new();
        for c in &curves {
            cells.push(c.values[i].map(|v| format!("{v:.16e}")).unwrap_or_default());
            flags.push(format!("{}={}", c.family.name(), u8::from(c.validity[i])));
        }
        cells.push(flags.join(";"));
        println!("{}", cells.join(","));
    }
    Ok(ExitCode::SUCCESS)
}

fn montecarlo(
    config: PathBuf,
    out: Option<PathBuf>,
    format: Format,
    workers: Option<usize>,
    audit: bool,
    timing: bool,
) -> anyhow::Result<ExitCode> {
    let cfg = ExperimentConfig::load(&config).with_context(|| format!("reading {}", config.display()))?;
    let Some(out) = out.or_else(|| cfg.out.clone()) else {
        bail!(Error::InvalidArgument("no output path: pass --out or set `out` in the config".into()));
    };
    let report = compare(&cfg, workers, timing)?;
    report
        .emit(&out, format)
        .with_context(|| format!("writing {}", out.display()))?;
    eprintln!(
        "{} rows written to {}; nu = {:.6}, sigma2 = {:.6}; {} violating rows",
        report.rows.len(),
        out.display(),
        report.metadata.nu,
        report.metadata.sigma2,
        report.violation_count()
    );
    Ok(ExitCode::from(audit_status(&report, audit)))
}

/// 3 if auditing and any row violates a bound whose hypotheses hold.
fn audit_status(report: &TailReport, audit: bool) -> u8 {
    if !audit || report.violation_count() == 0 {
        return 0;
    }
    for row in report.rows.iter().filter(|r| !r.violations.is_empty()) {
        let names: Vec<_> = row.violations.iter().map(|f| f.name()).collect();
        eprintln!("violation at theta = {}: {}", row.theta, names.join(", "));
    }
    3
}

fn selftest() -> ExitCode {
    let checks = hyperconn::selftest::run();
    let mut failed = 0;
    for c in &checks {
        println!("{} {:<40} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        failed += usize::from(!c.passed);
    }
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn exit_code(err: &anyhow::Error) -> ExitCode {
    match err.downcast_ref::<Error>() {
        Some(e) if !e.is_input_error() => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Connectivity { input, check_mconnected } => connectivity(input, check_mconnected),
        Command::Bounds {
            m,
            half,
            n_graphs,
            dist,
            theta,
            centered,
            normalize,
            json,
        } => bounds(m, half, n_graphs, &dist, &theta, centered, normalize, json),
        Command::Montecarlo {
            config,
            out,
            format,
            workers,
            audit,
            timing,
        } => montecarlo(config, out, format, workers, audit, timing),
        Command::Selftest => Ok(selftest()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}
