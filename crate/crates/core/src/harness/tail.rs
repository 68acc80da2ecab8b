use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{invalid, Error, Result};

/// A tail probability estimate with its Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Two-sided standard normal quantile for confidence `level`.
pub fn normal_quantile(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(invalid(format!("confidence level must lie in (0, 1), got {level}")));
    }
    let std = Normal::new(0.0, 1.0).expect("standard normal");
    Ok(std.inverse_cdf(0.5 + level / 2.0))
}

/// Wilson score interval for `hits` successes out of `n`.
pub fn wilson_interval(hits: usize, n: usize, level: f64) -> Result<TailEstimate> {
    if n == 0 {
        return Err(Error::Empty("sample list"));
    }
    let z = normal_quantile(level)?;
    let nf = n as f64;
    let p = hits as f64 / nf;
    let z2n = z * z / nf;
    let center = (p + z2n / 2.0) / (1.0 + z2n);
    let half = z / (1.0 + z2n) * (p * (1.0 - p) / nf + z2n / (4.0 * nf)).sqrt();
    Ok(TailEstimate {
        estimate: p,
        ci_low: (center - half).clamp(0.0, p),
        ci_high: (center + half).clamp(p, 1.0),
    })
}

/// `Pr(alpha >= theta)` estimated as the fraction of samples at or above `theta`.
pub fn empirical_tail(samples: &[f64], theta: f64, level: f64) -> Result<TailEstimate> {
    let hits = samples.iter().filter(|&&s| s >= theta).count();
    wilson_interval(hits, samples.len(), level)
}

/// `Pr(alpha <= theta)`.
pub fn empirical_lower_tail(samples: &[f64], theta: f64, level: f64) -> Result<TailEstimate> {
    let hits = samples.iter().filter(|&&s| s <= theta).count();
    wilson_interval(hits, samples.len(), level)
}
