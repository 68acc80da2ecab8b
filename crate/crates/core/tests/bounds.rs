mod common;

use common::*;
use hyperconn::bounds::{
    bennett_upper, bernstein_upper, chernoff_lower, chernoff_upper, ensemble_statistics,
    master_laplace_bound, EnsembleStatistics, LaplaceExponent,
};
use hyperconn::hypergraph::{expected_trial_moments, EnsembleSpec, WeightDistribution};
use rand::Rng;

fn stats(nu: f64, sigma2: f64) -> EnsembleStatistics<f64> {
    EnsembleStatistics::from_parts(nu, sigma2, 4, 1).unwrap()
}

/// Ternary search, kept separate from the library's optimizer.
fn minimize(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    for _ in 0..300 {
        let a = lo + (hi - lo) / 3.0;
        let b = hi - (hi - lo) / 3.0;
        if f(a) < f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let t = 0.5 * (lo + hi);
    (t, f(t))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn strictly_decreasing_on_grids() {
    let s = stats(3.0, 2.0);
    let grid: Vec<f64> = (1..2000).map(|i| i as f64 * 0.005).collect();
    for f in [chernoff_upper::<f64>, bennett_upper, bernstein_upper] {
        let values: Vec<f64> = grid.iter().map(|&t| f(t, &s).unwrap()).collect();
        for w in values.windows(2) {
            assert!(w[1] < w[0] || w[1] == 0.0, "{} !< {}", w[1], w[0]);
        }
    }
}

#[test]
fn closed_forms_are_scalar_optima() {
    let mut rng = rng(23);
    for _ in 0..50 {
        let nu: f64 = rng.random_range(0.5..30.0);
        let s2: f64 = rng.random_range(0.1..20.0);
        let s = stats(nu, s2);
        let d = s.dim_upper as f64;

        let theta: f64 = rng.random_range(0.05..5.0);
        let g = |t: f64| nu * t.exp_m1() - t * (1.0 + theta) * nu;
        let t_star = theta.ln_1p();
        let closed = chernoff_upper(theta, &s).unwrap();
        assert!(rel(d * g(t_star).exp(), closed) < 1e-8);
        let (t_min, g_min) = minimize(g, 0.0, 20.0);
        assert!(rel(d * g_min.exp(), closed) < 1e-8 && (t_min - t_star).abs() < 1e-5);

        let theta_l: f64 = rng.random_range(0.0..0.99);
        let g = |t: f64| nu * (-t).exp_m1() + t * (1.0 - theta_l) * nu;
        let t_star = -(-theta_l).ln_1p();
        let closed = chernoff_lower(theta_l, &s).unwrap();
        let dl = s.dim_lower as f64;
        assert!(rel(dl * g(t_star).exp(), closed) < 1e-8);
        let (_, g_min) = minimize(g, 0.0, 20.0);
        assert!(rel(dl * g_min.exp(), closed) < 1e-8);

        let x: f64 = rng.random_range(0.05..40.0);
        let g = |t: f64| s2 * (t.exp_m1() - t) - t * x;
        let t_star = (x / s2).ln_1p();
        let closed = bennett_upper(x, &s).unwrap();
        assert!(rel(d * g(t_star).exp(), closed) < 1e-8);
        let (_, g_min) = minimize(g, 0.0, 20.0);
        assert!(rel(d * g_min.exp(), closed) < 1e-8);

        // Bernstein's t* is a convenient choice rather than the minimizer,
        // so the numeric infimum can only be smaller.
        let g = |t: f64| s2 * t * t / (2.0 * (1.0 - t)) - t * x;
        let t_star = x / (x + s2);
        let closed = bernstein_upper(x, &s).unwrap();
        assert!(rel(d * g(t_star).exp(), closed) < 1e-8);
        let (_, g_min) = minimize(g, 0.0, 1.0 - 1e-12);
        assert!(d * g_min.exp() <= closed * (1.0 + 1e-8));
    }
}

#[test]
fn bernstein_dominates_bennett() {
    let mut rng = rng(29);
    for _ in 0..200 {
        let s = stats(1.0, rng.random_range(0.01..50.0));
        let x: f64 = rng.random_range(0.001..100.0);
        assert!(bernstein_upper(x, &s).unwrap() >= bennett_upper(x, &s).unwrap() * (1.0 - 1e-12));
    }
}

fn random_spec(rng: &mut rand_chacha::ChaCha8Rng, center: bool) -> EnsembleSpec {
    let (m, half) = [(3, 1), (4, 1), (5, 1), (5, 2)][rng.random_range(0..4)];
    let distribution = if center {
        WeightDistribution::CenteredBounded { base: 1.0, scale: rng.random_range(0.1..1.0) }
    } else {
        WeightDistribution::BernoulliEdge { p: rng.random_range(0.05..1.0), weight: rng.random_range(0.2..2.0) }
    };
    EnsembleSpec {
        n_graphs: rng.random_range(1..30),
        m,
        half,
        distribution,
        center,
        normalize: center,
        seed: 0,
    }
}

#[test]
fn master_bound_below_closed_forms() {
    let mut rng = rng(31);
    for _ in 0..30 {
        let spec = random_spec(&mut rng, false);
        let mom = expected_trial_moments::<f64>(&spec).unwrap();
        let s = ensemble_statistics(&mom.first, &mom.second, spec.m, spec.half, spec.n_graphs).unwrap();
        let a_sum = mom.first.scale_real(spec.n_graphs as f64);
        let theta: f64 = rng.random_range(0.1..3.0);
        let f = LaplaceExponent::Chernoff;
        let b = master_laplace_bound(|t| f.eval(t), &a_sum, (1.0 + theta) * s.nu, s.k, f.t_range()).unwrap();
        let closed = chernoff_upper(theta, &s).unwrap();
        assert_eq!(b.dim, s.dim_upper);
        assert!(b.value <= b.relaxed * (1.0 + 1e-8));
        assert!(b.relaxed <= closed * (1.0 + 1e-8), "{} > {closed}", b.relaxed);
        assert!(rel(b.relaxed, closed) < 1e-6);
    }
    for _ in 0..30 {
        let spec = random_spec(&mut rng, true);
        let mom = expected_trial_moments::<f64>(&spec).unwrap();
        let s = ensemble_statistics(&mom.first, &mom.second, spec.m, spec.half, spec.n_graphs).unwrap();
        let a_sum = mom.second.scale_real(spec.n_graphs as f64);
        let x = rng.random_range(0.1..3.0) * s.sigma2.sqrt();
        for (f, closed) in [
            (LaplaceExponent::Bennett, bennett_upper(x, &s).unwrap()),
            (LaplaceExponent::Bernstein, bernstein_upper(x, &s).unwrap()),
        ] {
            let b = master_laplace_bound(|t| f.eval(t), &a_sum, x, s.k, f.t_range()).unwrap();
            assert!(b.value <= b.relaxed * (1.0 + 1e-8));
            assert!(b.relaxed <= closed * (1.0 + 1e-8), "{f:?}: {} > {closed}", b.relaxed);
        }
    }
}
