//! Monte Carlo experiments: sample ensembles, estimate tail probabilities of
//! the algebraic connectivity and set them against the bounds.
//!
//! Trial `t` draws the hypergraphs with sample indices `t*N .. t*N + N`, each
//! from its own counter-based RNG stream, so results do not depend on how
//! trials are scheduled across worker threads.

mod report;
mod tail;

pub use report::{Format, ReportMetadata, TailReport, TailRow, CSV_HEADER};
pub use tail::{empirical_lower_tail, empirical_tail, normal_quantile, wilson_interval, TailEstimate};

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    bennett_upper, bernstein_upper, chernoff_lower, chernoff_upper, ensemble_statistics,
    master_laplace_bound, BoundFamily, EnsembleStatistics, LaplaceExponent,
};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{
    algebraic_connectivity, expected_trial_moments, normalization_scale, trial_laplacian, EnsembleSpec, LaplacianTensor,
    TrialTransform, WeightDistribution,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaGrid {
    /// Thresholds on the algebraic connectivity itself.
    Absolute(Vec<f64>),
    /// Thresholds `c * nu`.
    NuMultipliers(Vec<f64>),
    /// Thresholds `c * sqrt(sigma2)`, for centered ensembles where `nu = 0`.
    SigmaMultipliers(Vec<f64>),
}

impl ThetaGrid {
    fn values(&self) -> &[f64] {
        match self {
            ThetaGrid::Absolute(v) | ThetaGrid::NuMultipliers(v) | ThetaGrid::SigmaMultipliers(v) => v,
        }
    }

    pub fn resolve(&self, stats: &EnsembleStatistics<f64>) -> Result<Vec<f64>> {
        let scale = match self {
            ThetaGrid::Absolute(_) => 1.0,
            ThetaGrid::NuMultipliers(_) => stats.nu,
            ThetaGrid::SigmaMultipliers(_) => stats.sigma2.sqrt(),
        };
        if !(scale > 0.0) {
            return Err(invalid(format!("theta grid scale must be positive, got {scale}")));
        }
        Ok(self.values().iter().map(|&c| c * scale).collect())
    }
}

fn default_families() -> Vec<BoundFamily> {
    BoundFamily::ALL.to_vec()
}

fn default_ci_level() -> f64 {
    0.95
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub ensemble: EnsembleSpec,
    pub trials: usize,
    pub theta_grid: ThetaGrid,
    #[serde(default = "default_families")]
    pub bound_families: Vec<BoundFamily>,
    #[serde(default = "default_ci_level")]
    pub ci_level: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl ExperimentConfig {
    pub fn new(ensemble: EnsembleSpec, trials: usize, theta_grid: ThetaGrid) -> Self {
        ExperimentConfig {
            ensemble,
            trials,
            theta_grid,
            bound_families: default_families(),
            ci_level: default_ci_level(),
            out: None,
            label: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.ensemble.validate()?;
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        let grid = self.theta_grid.values();
        if grid.is_empty() {
            return Err(invalid("theta grid is empty"));
        }
        if grid.iter().any(|t| !t.is_finite()) || grid.windows(2).any(|w| w[0] > w[1]) {
            return Err(invalid("theta grid must be finite and sorted ascending"));
        }
        if self.bound_families.is_empty() {
            return Err(invalid("no bound families requested"));
        }
        if !(self.ci_level > 0.0 && self.ci_level < 1.0) {
            return Err(invalid(format!("ci_level must lie in (0, 1), got {}", self.ci_level)));
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }
}

fn one_trial(spec: &EnsembleSpec, transform: &TrialTransform<f64>, trial: u64) -> Result<f64> {
    let n = spec.n_graphs as u64;
    let mut acc: Option<LaplacianTensor<f64>> = None;
    for i in 0..n {
        let l = trial_laplacian(spec, trial * n + i, transform)?;
        acc = Some(match acc {
            None => l,
            Some(mut a) => {
                a.value = a.value.add(&l.value)?;
                a
            }
        });
    }
    let sum = acc.expect("N >= 1");
    algebraic_connectivity(&sum, spec.m, spec.half)
}

/// Algebraic connectivity of `config.trials` independent ensemble sums, in
/// trial order. `workers` sets the thread count (default: all cores).
pub fn run_trials(config: &ExperimentConfig, workers: Option<usize>) -> Result<Vec<f64>> {
    config.validate()?;
    let spec = &config.ensemble;
    let transform = TrialTransform::<f64>::new(spec)?;
    let run = || -> Vec<Result<f64>> {
        (0..config.trials as u64)
            .into_par_iter()
            .map(|t| {
                one_trial(spec, &transform, t).map_err(|e| Error::Trial {
                    trial: t,
                    source: Box::new(e),
                })
            })
            .collect()
    };
    let results = match workers {
        Some(0) => return Err(invalid("workers must be at least 1")),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| invalid(format!("cannot start worker pool: {e}")))?
            .install(run),
        None => run(),
    };
    results.into_iter().collect()
}

/// Which bound families the ensemble's samples satisfy the hypotheses of.
///
/// Every family needs samples with spectral norm at most one almost surely
/// (normalized, or small enough weights). Chernoff also needs positive
/// semidefinite samples (uncentered, nonnegative weights); Bennett and
/// Bernstein need centered ones. The master bound follows whichever form
/// applies.
pub fn hypotheses_hold(spec: &EnsembleSpec, family: BoundFamily) -> Result<bool> {
    let bounded = spec.normalize || normalization_scale::<f64>(spec)? >= 1.0;
    let psd = !spec.center && spec.distribution.nonnegative();
    let centered = spec.center;
    Ok(bounded
        && match family {
            BoundFamily::ChernoffUpper | BoundFamily::ChernoffLower => psd,
            BoundFamily::Bennett | BoundFamily::Bernstein => centered,
            BoundFamily::Master => psd || centered,
        })
}

pub fn statistics(spec: &EnsembleSpec) -> Result<EnsembleStatistics<f64>> {
    let moments = expected_trial_moments::<f64>(spec)?;
    ensemble_statistics(&moments.first, &moments.second, spec.m, spec.half, spec.n_graphs)
}

/// Tail report for precomputed samples.
pub fn compare_samples(config: &ExperimentConfig, samples: &[f64]) -> Result<TailReport> {
    config.validate()?;
    if samples.is_empty() {
        return Err(Error::Empty("sample list"));
    }
    let spec = &config.ensemble;
    let moments = expected_trial_moments::<f64>(spec)?;
    let stats = ensemble_statistics(&moments.first, &moments.second, spec.m, spec.half, spec.n_graphs)?;
    let thetas = config.theta_grid.resolve(&stats)?;
    let count = spec.n_graphs as f64;
    let (exponent, a_sum) = if spec.center {
        (LaplaceExponent::Bennett, moments.second.scale_real(count))
    } else {
        (LaplaceExponent::Chernoff, moments.first.scale_real(count))
    };

    let mut families = config.bound_families.clone();
    families.sort();
    families.dedup();

    let mut rows = Vec::with_capacity(thetas.len());
    for &x in &thetas {
        let empirical = empirical_tail(samples, x, config.ci_level)?;
        let mut lower = None;
        let mut bounds = BTreeMap::new();
        let mut valid = BTreeMap::new();
        let mut violations = Vec::new();
        let mut master_trace = None;
        for &family in &families {
            // Parameter the family's formula is evaluated at.
            let param = match family {
                BoundFamily::ChernoffUpper => x / stats.nu - 1.0,
                BoundFamily::ChernoffLower => 1.0 - x / stats.nu,
                _ => x,
            };
            let value = match family {
                BoundFamily::ChernoffUpper => chernoff_upper(param, &stats).ok(),
                BoundFamily::ChernoffLower if x > 0.0 => chernoff_lower(param, &stats).ok(),
                BoundFamily::ChernoffLower => None,
                BoundFamily::Bennett => bennett_upper(param, &stats).ok(),
                BoundFamily::Bernstein => bernstein_upper(param, &stats).ok(),
                BoundFamily::Master if x > 0.0 => {
                    let b = master_laplace_bound(
                        |t| exponent.eval(t),
                        &a_sum,
                        x,
                        stats.k,
                        exponent.t_range(),
                    )?;
                    master_trace = Some(b.value).filter(|v| v.is_finite());
                    Some(b.relaxed)
                }
                BoundFamily::Master => None,
            }
            .filter(|v| v.is_finite());
            let holds = hypotheses_hold(spec, family)?;
            valid.insert(family, holds && param.is_finite() && family.in_stated_range(param));
            let Some(value) = value else { continue };
            bounds.insert(family, value);
            let tail = if family == BoundFamily::ChernoffLower {
                let est = empirical_lower_tail(samples, x, config.ci_level)?;
                lower = Some(est);
                est
            } else {
                empirical
            };
            if holds && tail.ci_low > value {
                violations.push(family);
            }
        }
        rows.push(TailRow {
            theta: x,
            empirical,
            lower,
            bounds,
            master_trace,
            valid,
            violations,
        });
    }

    Ok(TailReport {
        metadata: ReportMetadata {
            m: spec.m,
            half: spec.half,
            n_graphs: spec.n_graphs,
            trials: samples.len(),
            seed: spec.seed,
            distribution: spec.distribution,
            center: spec.center,
            normalize: spec.normalize,
            ci_level: config.ci_level,
            nu: stats.nu,
            sigma2: stats.sigma2,
            k: stats.k,
            dim_upper: stats.dim_upper,
            dim_lower: stats.dim_lower,
            label: config.label.clone(),
            wall_time_s: None,
        },
        rows,
    })
}

/// Run the trials and build the report. Wall time is recorded only when
/// `timed` is set, since it would otherwise break byte-identical output.
pub fn compare(config: &ExperimentConfig, workers: Option<usize>, timed: bool) -> Result<TailReport> {
    let start = Instant::now();
    let samples = run_trials(config, workers)?;
    let mut report = compare_samples(config, &samples)?;
    if timed {
        report.metadata.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

/// The default experiment suite. The weight distributions are our own
/// choice, and each config's label says so.
///
/// * E1: Chernoff on Bernoulli ensembles, `m in {3, 4}`, `M = 1`,
///   `N in {10, 20}`, `p in {0.3, 0.5, 0.8}`.
/// * E2: Chernoff on Bernoulli ensembles with `M = 2`, `N = 10`, `m in {4, 5}`.
/// * E3: Bennett and Bernstein on centered bounded ensembles.
///
/// Every ensemble is normalized so the samples meet the bounds' norm
/// hypothesis.
pub fn default_suite(trials: usize, seed: u64) -> Vec<ExperimentConfig> {
    let chernoff = vec![BoundFamily::ChernoffUpper, BoundFamily::ChernoffLower, BoundFamily::Master];
    let centered = vec![BoundFamily::Bennett, BoundFamily::Bernstein, BoundFamily::Master];
    let nu_grid = ThetaGrid::NuMultipliers(vec![0.25, 0.5, 0.75, 1.0, 1.1, 1.5, 2.0, 3.0]);
    let sigma_grid = ThetaGrid::SigmaMultipliers(vec![0.25, 0.5, 1.0, 1.5, 2.0, 3.0]);

    let mut suite = Vec::new();
    let mut next_seed = seed;
    let mut push = |spec: EnsembleSpec, grid: &ThetaGrid, families: &Vec<BoundFamily>, label: String| {
        let mut cfg = ExperimentConfig::new(spec, trials, grid.clone());
        cfg.bound_families = families.clone();
        cfg.label = Some(label);
        suite.push(cfg);
    };
    let mut spec = |n_graphs, m, half, distribution, center| {
        next_seed += 1;
        EnsembleSpec {
            n_graphs,
            m,
            half,
            distribution,
            center,
            normalize: true,
            seed: next_seed,
        }
    };
    for m in [3, 4] {
        for n in [10, 20] {
            for p in [0.3, 0.5, 0.8] {
                let d = WeightDistribution::BernoulliEdge { p, weight: 1.0 };
                push(
                    spec(n, m, 1, d, false),
                    &nu_grid,
                    &chernoff,
                    format!("E1 bernoulli m={m} N={n} p={p} (implementer-chosen distribution)"),
                );
            }
        }
    }
    // Every m = 4, M = 2 Laplacian has rank at most 9 < k = 11, so there
    // alpha and nu vanish identically and only absolute thresholds make
    // sense. m = 5, M = 2 is the smallest non-degenerate tensor case.
    let d = WeightDistribution::BernoulliEdge { p: 0.5, weight: 1.0 };
    push(
        spec(10, 4, 2, d, false),
        &ThetaGrid::Absolute(vec![0.5, 1.0, 2.0, 4.0]),
        &chernoff,
        "E2 bernoulli m=4 M=2 N=10 p=0.5 (implementer-chosen distribution)".into(),
    );
    push(
        spec(10, 5, 2, d, false),
        &nu_grid,
        &chernoff,
        "E2 bernoulli m=5 M=2 N=10 p=0.5 (implementer-chosen distribution)".into(),
    );
    for (m, half, n) in [(4, 1, 20), (5, 1, 10), (5, 2, 10)] {
        let d = WeightDistribution::CenteredBounded { base: 1.0, scale: 1.0 };
        push(
            spec(n, m, half, d, true),
            &sigma_grid,
            &centered,
            format!("E3 centered uniform m={m} M={half} N={n} (implementer-chosen distribution)"),
        );
    }
    suite
}

/// Audit summary over a set of reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub reports: usize,
    pub rows: usize,
    pub violating_rows: usize,
}

impl AuditSummary {
    pub fn violation_fraction(&self) -> f64 {
        if self.rows == 0 {
            0.0
        } else {
            self.violating_rows as f64 / self.rows as f64
        }
    }
}

pub fn audit(reports: &[TailReport]) -> AuditSummary {
    AuditSummary {
        reports: reports.len(),
        rows: reports.iter().map(|r| r.rows.len()).sum(),
        violating_rows: reports.iter().map(TailReport::violation_count).sum(),
    }
}
