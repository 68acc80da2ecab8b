//! Tail bounds for the algebraic connectivity of an ensemble hypergraph.
//!
//! All three closed forms come from the same Laplace-transform bound
//!
//! ```text
//! Pr(lambda_k(sum X_i) >= theta)
//!     <= inf_t e^{-t theta} Tr exp(f(t) V^H (sum A_i) V)
//! ```
//!
//! with `V` spanning an `(n - k + 1)`-dimensional subspace, after relaxing
//! the trace to `(n - k + 1) * lambda_max` and evaluating the scalar
//! exponent at its minimizer. [`master_laplace_bound`] evaluates the
//! unrelaxed trace form numerically for a fixed canonical `V`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{connectivity_index, falling_factorial};
use crate::optimize::{grid_then_golden, log_grid};
use crate::spectral::{self, compressed_spectrum, eig_hermitian, empirical_moment, semidefinite_ge};
use crate::tensor::SquareTensor;
use crate::{Scalar, DEFAULT_TOL};

/// Scale parameters and dimension factors of an ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStatistics<R> {
    /// `lambda_k(sum_i E L_i)`.
    pub nu: R,
    /// `lambda_k(sum_i E L_i^2)`.
    pub sigma2: R,
    pub k: usize,
    /// `m^M - m!/(m-M)! + 2`, prefactor of the upper-tail bounds.
    pub dim_upper: usize,
    /// `m!/(m-M)! - 1`, prefactor of the lower-tail bound.
    pub dim_lower: usize,
}

impl<R: Scalar> EnsembleStatistics<R> {
    /// Statistics with explicit `nu`, `sigma2` for an `(m, M)` hypergraph.
    pub fn from_parts(nu: R, sigma2: R, m: usize, half: usize) -> Result<Self> {
        let k = connectivity_index(m, half)?;
        let total = u32::try_from(half)
            .ok()
            .and_then(|h| m.checked_pow(h))
            .ok_or_else(|| invalid("m^M overflows"))?;
        let ordered = falling_factorial(m, half)?;
        Ok(EnsembleStatistics {
            nu,
            sigma2,
            k,
            dim_upper: total - ordered + 2,
            dim_lower: ordered - 1,
        })
    }
}

/// `nu = lambda_k(N E L)`, `sigma2 = lambda_k(N E L^2)` for `N` i.i.d.
/// members with per-member moments `expected_l`, `expected_l2`.
pub fn ensemble_statistics<R: Scalar>(
    expected_l: &SquareTensor<R>,
    expected_l2: &SquareTensor<R>,
    m: usize,
    half: usize,
    n: usize,
) -> Result<EnsembleStatistics<R>> {
    if n == 0 {
        return Err(invalid("ensemble size must be positive"));
    }
    let k = connectivity_index(m, half)?;
    let tol = R::lit(DEFAULT_TOL);
    let count = R::from_usize(n).expect("count fits");
    let first = spectral::eigenvalues(&expected_l.scale_real(count), tol)?;
    let second = spectral::eigenvalues(&expected_l2.scale_real(count), tol)?;
    if first.len() < k {
        return Err(Error::Dimension(format!(
            "tensor of total {} too small for k = {k}",
            first.len()
        )));
    }
    let floor = -tol * R::one().max(second[0].abs());
    if *second.last().expect("nonempty") < floor {
        return Err(Error::Domain("expected squared Laplacian is not PSD".into()));
    }
    EnsembleStatistics::from_parts(snap(&first, k), snap(&second, k), m, half)
}

/// `values[k - 1]`, with round-off-sized values set to exactly zero.
fn snap<R: Scalar>(values: &[R], k: usize) -> R {
    let v = values[k - 1];
    let scale = R::one().max(values[0].abs());
    if v.abs() <= R::lit(1e-12) * scale {
        R::zero()
    } else {
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundFamily {
    ChernoffUpper,
    ChernoffLower,
    Bennett,
    Bernstein,
    Master,
}

impl BoundFamily {
    pub const ALL: [BoundFamily; 5] = [
        BoundFamily::ChernoffUpper,
        BoundFamily::ChernoffLower,
        BoundFamily::Bennett,
        BoundFamily::Bernstein,
        BoundFamily::Master,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundFamily::ChernoffUpper => "chernoff_upper",
            BoundFamily::ChernoffLower => "chernoff_lower",
            BoundFamily::Bennett => "bennett",
            BoundFamily::Bernstein => "bernstein",
            BoundFamily::Master => "master",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        BoundFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| invalid(format!("unknown bound family {s:?}")))
    }

    /// Parameter range stated with each theorem.
    pub fn in_stated_range<R: Scalar>(self, theta: R) -> bool {
        match self {
            BoundFamily::ChernoffUpper => theta > R::one(),
            BoundFamily::ChernoffLower => theta >= R::zero() && theta < R::one(),
            BoundFamily::Bennett | BoundFamily::Bernstein | BoundFamily::Master => theta > R::zero(),
        }
    }
}

fn as_r<R: Scalar>(n: usize) -> R {
    R::from_usize(n).expect("dimension fits")
}

/// `Pr(alpha >= (1 + theta) nu) <= dim_upper [e^theta / (1+theta)^(1+theta)]^nu`.
///
/// Defined for every `theta > 0`; the theorem states it for `theta > 1`.
pub fn chernoff_upper<R: Scalar>(theta: R, stats: &EnsembleStatistics<R>) -> Result<R> {
    if !(theta > R::zero()) {
        return Err(invalid(format!("Chernoff upper tail needs theta > 0, got {theta}")));
    }
    let exponent = stats.nu * (theta - (R::one() + theta) * theta.ln_1p());
    Ok(as_r::<R>(stats.dim_upper) * exponent.exp())
}

/// `Pr(alpha <= (1 - theta) nu) <= dim_lower [e^-theta / (1-theta)^(1-theta)]^nu`
/// for `0 <= theta < 1`.
pub fn chernoff_lower<R: Scalar>(theta: R, stats: &EnsembleStatistics<R>) -> Result<R> {
    if !(theta >= R::zero() && theta < R::one()) {
        return Err(invalid(format!("Chernoff lower tail needs 0 <= theta < 1, got {theta}")));
    }
    let exponent = stats.nu * (-theta - (R::one() - theta) * (-theta).ln_1p());
    Ok(as_r::<R>(stats.dim_lower) * exponent.exp())
}

fn check_sigma2<R: Scalar>(theta: R, stats: &EnsembleStatistics<R>) -> Result<()> {
    if !(stats.sigma2 > R::zero()) {
        return Err(invalid(format!("sigma^2 must be positive, got {}", stats.sigma2)));
    }
    if !(theta > R::zero()) {
        return Err(invalid(format!("theta must be positive, got {theta}")));
    }
    Ok(())
}

/// `Pr(alpha >= theta) <= dim_upper e^theta (1 + theta/sigma2)^-(theta + sigma2)`.
pub fn bennett_upper<R: Scalar>(theta: R, stats: &EnsembleStatistics<R>) -> Result<R> {
    check_sigma2(theta, stats)?;
    let s2 = stats.sigma2;
    let exponent = theta - (theta + s2) * (theta / s2).ln_1p();
    Ok(as_r::<R>(stats.dim_upper) * exponent.exp())
}

/// `Pr(alpha >= theta) <= dim_upper exp(-theta^2 / (2 (theta + sigma2)))`.
pub fn bernstein_upper<R: Scalar>(theta: R, stats: &EnsembleStatistics<R>) -> Result<R> {
    check_sigma2(theta, stats)?;
    let exponent = -theta * theta / (R::lit(2.0) * (theta + stats.sigma2));
    Ok(as_r::<R>(stats.dim_upper) * exponent.exp())
}

/// Closed-form bound of a family at `theta`. `Master` has no closed form.
pub fn closed_form<R: Scalar>(family: BoundFamily, theta: R, stats: &EnsembleStatistics<R>) -> Result<R> {
    match family {
        BoundFamily::ChernoffUpper => chernoff_upper(theta, stats),
        BoundFamily::ChernoffLower => chernoff_lower(theta, stats),
        BoundFamily::Bennett => bennett_upper(theta, stats),
        BoundFamily::Bernstein => bernstein_upper(theta, stats),
        BoundFamily::Master => Err(invalid("the master bound has no closed form")),
    }
}

/// A bound evaluated over a grid of `theta`. Values are not clipped to 1;
/// `None` marks points outside the formula's domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCurve {
    pub family: BoundFamily,
    pub thetas: Vec<f64>,
    pub values: Vec<Option<f64>>,
    /// Whether each `theta` lies in the range stated with the theorem.
    pub validity: Vec<bool>,
}

pub fn bound_curve(family: BoundFamily, thetas: &[f64], stats: &EnsembleStatistics<f64>) -> BoundCurve {
    BoundCurve {
        family,
        thetas: thetas.to_vec(),
        values: thetas.iter().map(|&t| closed_form(family, t, stats).ok()).collect(),
        validity: thetas.iter().map(|&t| family.in_stated_range(t)).collect(),
    }
}

/// The scalar functions `f(t)` bounding `log E exp(t X) <= f(t) A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplaceExponent {
    /// `e^t - 1`, for `0 <= X <= I`.
    Chernoff,
    /// `e^t - t - 1`, for centered `X <= I`.
    Bennett,
    /// `t^2 / (2 (1 - t))` on `0 < t < 1`, for subexponential moments.
    Bernstein,
}

impl LaplaceExponent {
    pub fn eval<R: Scalar>(self, t: R) -> R {
        match self {
            LaplaceExponent::Chernoff => t.exp_m1(),
            LaplaceExponent::Bennett => t.exp_m1() - t,
            LaplaceExponent::Bernstein => t * t / (R::lit(2.0) * (R::one() - t)),
        }
    }

    /// Search interval for the infimum over `t`.
    pub fn t_range<R: Scalar>(self) -> (R, R) {
        match self {
            LaplaceExponent::Bernstein => (R::lit(1e-4), R::lit(1.0 - 1e-4)),
            _ => (R::lit(1e-4), R::lit(20.0)),
        }
    }
}

pub const MASTER_GRID_POINTS: usize = 512;
pub const MASTER_POLISH_WIDTH: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MasterBound<R> {
    /// `inf_t e^{-t theta} Tr exp(f(t) V^H A V)`.
    pub value: R,
    /// Minimizing `t`.
    pub t_opt: R,
    /// Same infimum after `Tr exp(.) <= dim * lambda_max(exp(.))`.
    pub relaxed: R,
    /// `n - k + 1`, the dimension of the projected subspace.
    pub dim: usize,
}

fn log_sum_exp<R: Scalar>(xs: impl Iterator<Item = R> + Clone) -> R {
    let top = xs.clone().fold(R::neg_infinity(), R::max);
    if top == R::neg_infinity() {
        return top;
    }
    top + xs.map(|x| (x - top).exp()).sum::<R>().ln()
}

/// Numeric Laplace-transform bound on `Pr(lambda_k(sum X_i) >= theta)`.
///
/// `V` spans the eigen-tensors of the bottom `n - k + 1` eigenvalues of
/// `a_sum`. The infimum over `t` is a 512-point log grid on `t_range`
/// refined by golden section. Work is done in log space so large
/// exponents do not overflow.
pub fn master_laplace_bound<R: Scalar>(
    f: impl Fn(R) -> R,
    a_sum: &SquareTensor<R>,
    theta: R,
    k: usize,
    t_range: (R, R),
) -> Result<MasterBound<R>> {
    let (lo, hi) = t_range;
    if !(lo > R::zero() && lo < hi) {
        return Err(invalid(format!("empty t range ({lo}, {hi})")));
    }
    let n = a_sum.total();
    if k == 0 || k > n {
        return Err(invalid(format!("k = {k} outside 1..={n}")));
    }
    let eig = eig_hermitian(a_sum, R::lit(DEFAULT_TOL))?;
    let floor = -R::lit(1e-9) * R::one().max(eig.lambda_max().abs());
    if eig.lambda_min() < floor {
        return Err(Error::Domain(format!(
            "master bound needs a PSD sum, smallest eigenvalue {}",
            eig.lambda_min()
        )));
    }
    let columns: Vec<Vec<Complex<R>>> = ((k - 1)..n).map(|j| eig.eigenvector(j)).collect();
    let dim = columns.len();
    let mu = compressed_spectrum(a_sum, &columns)?;
    let mu_max = mu[0];

    let grid = log_grid(lo, hi, MASTER_GRID_POINTS)?;
    let width = R::lit(MASTER_POLISH_WIDTH);
    let trace_form = |t: R| {
        let ft = f(t);
        -t * theta + log_sum_exp(mu.iter().map(move |&m| ft * m))
    };
    let best = grid_then_golden(trace_form, &grid, width)?;
    let relaxed_form = |t: R| -t * theta + f(t) * mu_max;
    let relaxed = grid_then_golden(relaxed_form, &grid, width)?;
    Ok(MasterBound {
        value: best.value.exp(),
        t_opt: best.x,
        relaxed: as_r::<R>(dim) * relaxed.value.exp(),
        dim,
    })
}

/// Checks `E X^p <= p! A^2 / 2` for `2 <= p <= p_max` on the sample.
pub fn check_subexponential<R: Scalar>(samples: &[SquareTensor<R>], a: &SquareTensor<R>, p_max: u32) -> Result<bool> {
    if samples.is_empty() {
        return Err(Error::Empty("sample list"));
    }
    if p_max < 2 {
        return Err(invalid("p_max must be at least 2"));
    }
    let eig = eig_hermitian(a, R::lit(DEFAULT_TOL))?;
    if !(eig.lambda_min() > R::zero()) {
        return Err(Error::Domain("A must be positive definite".into()));
    }
    let a2 = a.einstein_product(a)?;
    let mut factorial = R::one();
    for p in 2..=p_max {
        factorial *= R::from_u32(p).expect("p fits");
        let rhs = a2.scale_real(factorial / R::lit(2.0));
        let lhs = empirical_moment(samples, p)?.value;
        if !semidefinite_ge(&rhs, &lhs, R::lit(1e-6))? {
            return Ok(false);
        }
    }
    Ok(true)
}
