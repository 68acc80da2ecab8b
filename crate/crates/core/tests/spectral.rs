mod common;

use common::*;
use hyperconn::spectral::{
    compressed_spectrum, eig_hermitian, eigenvalues, empirical_mgf, empirical_moment, first_cumulant,
    kth_largest_eigenvalue, rayleigh_quotient, second_cumulant, semidefinite_ge, tensor_exp,
    tensor_function, tensor_log,
};
use hyperconn::tensor::{Shape, SquareTensor};
use proptest::prelude::*;
use rand::Rng;

/// `sum_{j < terms} X^j / j!`.
fn exp_series(x: &SquareTensor<f64>, terms: u32) -> SquareTensor<f64> {
    let mut acc = SquareTensor::identity(x.shape().clone());
    let mut term = acc.clone();
    for j in 1..terms {
        term = term.einstein_product(x).unwrap().scale_real(1.0 / j as f64);
        acc = acc.add(&term).unwrap();
    }
    acc
}

proptest! {
    #[test]
    fn eigenvalues_match_oracle(x in arb_hermitian()) {
        let ours = eigenvalues(&x, 1e-10).unwrap();
        let theirs = oracle_eigenvalues(&x);
        for (a, b) in ours.iter().zip(&theirs) {
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn decomposition_reconstructs(x in arb_hermitian()) {
        let d = eig_hermitian(&x, 1e-10).unwrap();
        prop_assert!(frob_diff(&d.reconstruct(), &x) <= 1e-9);
        let u = &d.basis;
        let gram = u.conjugate_transpose().einstein_product(u).unwrap();
        prop_assert!(gram.approx_eq(&SquareTensor::identity(x.shape().clone()), 1e-10));
        prop_assert!(d.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn spectral_mapping(x in arb_hermitian()) {
        // Eigenvalues of f(X) are f applied to those of X.
        let f = |v: f64| v * v * v - 2.0 * v;
        let mut mapped: Vec<f64> = eigenvalues(&x, 1e-10).unwrap().into_iter().map(f).collect();
        mapped.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let direct = eigenvalues(&tensor_function(&x, f).unwrap(), 1e-10).unwrap();
        for (a, b) in mapped.iter().zip(&direct) {
            prop_assert!((a - b).abs() <= 1e-8 * (1.0 + a.abs()));
        }
        let poly = x.power(3).sub(&x.scale_real(2.0)).unwrap();
        prop_assert!(frob_diff(&tensor_function(&x, f).unwrap(), &poly) <= 1e-8 * (1.0 + poly.frobenius_norm()));
    }

    #[test]
    fn courant_fischer(x in arb_hermitian(), seed in any::<u64>()) {
        // lambda_k = min over (n-k+1)-dim subspaces of the max Rayleigh
        // quotient, attained on the bottom eigenvectors.
        let d = eig_hermitian(&x, 1e-10).unwrap();
        let n = x.total();
        let mut rng = rng(seed);
        for k in 1..=n {
            let bottom: Vec<_> = ((k - 1)..n).map(|j| d.eigenvector(j)).collect();
            let mu = compressed_spectrum(&x, &bottom).unwrap();
            prop_assert!((mu[0] - d.eigenvalues[k - 1]).abs() < 1e-9);
            // A random subspace of the same dimension can only do worse.
            let g = random_tensor(&mut rng, x.shape());
            let q = eig_hermitian(&g.add(&g.conjugate_transpose()).unwrap(), 1e-10).unwrap();
            let random: Vec<_> = ((k - 1)..n).map(|j| q.eigenvector(j)).collect();
            let mu_r = compressed_spectrum(&x, &random).unwrap();
            prop_assert!(mu_r[0] >= d.eigenvalues[k - 1] - 1e-9);
            prop_assert!((kth_largest_eigenvalue(&x, k).unwrap() - d.eigenvalues[k - 1]).abs() < 1e-12);
        }
        let v = d.eigenvector(0);
        prop_assert!((rayleigh_quotient(&x, &v).unwrap() - d.lambda_max()).abs() < 1e-9);
    }
}

#[test]
fn exp_series_agrees_with_spectral_exp() {
    let mut rng = rng(11);
    for shape in shapes() {
        for _ in 0..25 {
            let mut x = random_hermitian(&mut rng, &shape);
            let norm = x.frobenius_norm();
            let target = rng.random_range(0.1..2.0);
            x = x.scale_real(target / norm);
            let series = exp_series(&x, 40);
            let spectral = tensor_exp(&x).unwrap();
            assert!(frob_diff(&series, &spectral) <= 1e-8);
            let lmin = *eigenvalues(&spectral, 1e-10).unwrap().last().unwrap();
            assert!(lmin > 0.0);
        }
    }
}

#[test]
fn log_of_non_pd_is_a_domain_error() {
    let shape = Shape::new(vec![2]).unwrap();
    let x = SquareTensor::diagonal(shape.clone(), &[1.0, 0.0]).unwrap();
    assert!(tensor_log(&x).is_err());
    let y = SquareTensor::diagonal(shape, &[1.0, -1.0]).unwrap();
    assert!(tensor_log(&y).is_err());
}

#[test]
fn non_hermitian_rejected() {
    let mut rng = rng(3);
    let a = random_tensor(&mut rng, &Shape::new(vec![3]).unwrap());
    assert!(eig_hermitian(&a, 1e-10).is_err());
}

#[test]
fn operator_inequalities() {
    let mut rng = rng(17);
    let all = shapes();
    for i in 0..100 {
        let shape = &all[i % all.len()];
        let a = random_pd(&mut rng, shape, 0.1);
        let gap = random_pd(&mut rng, shape, 0.0);
        let b = a.add(&gap).unwrap();
        assert!(semidefinite_ge(&b, &a, 1e-10).unwrap());

        // A <= B  =>  tr exp A <= tr exp B
        let ta = tensor_exp(&a).unwrap().trace().re;
        let tb = tensor_exp(&b).unwrap().trace().re;
        assert!(ta <= tb * (1.0 + 1e-8), "trace exp {ta} > {tb}");

        // 0 < A <= B  =>  log A <= log B
        let la = tensor_log(&a).unwrap();
        let lb = tensor_log(&b).unwrap();
        assert!(semidefinite_ge(&lb, &la, 1e-8).unwrap());

        // log((A+C)/2) >= (log A + log C)/2
        let c = random_pd(&mut rng, shape, 0.1);
        let lc = tensor_log(&c).unwrap();
        let mid = tensor_log(&a.add(&c).unwrap().scale_real(0.5)).unwrap();
        let avg = la.add(&lc).unwrap().scale_real(0.5);
        assert!(semidefinite_ge(&mid, &avg, 1e-8).unwrap());
    }
}

#[test]
fn empirical_moments() {
    let shape = Shape::new(vec![2]).unwrap();
    let samples: Vec<_> = [1.0, 3.0]
        .iter()
        .map(|&v| SquareTensor::diagonal(shape.clone(), &[v, -v]).unwrap())
        .collect();
    let m2 = empirical_moment(&samples, 2).unwrap();
    assert_eq!(m2.sample_count, 2);
    assert!(m2.value.approx_eq(&SquareTensor::diagonal(shape.clone(), &[5.0, 5.0]).unwrap(), 1e-14));
    let psi1 = first_cumulant(&samples).unwrap();
    assert!(psi1.approx_eq(&SquareTensor::diagonal(shape.clone(), &[2.0, -2.0]).unwrap(), 1e-14));
    // Variance 1 on each diagonal entry.
    let psi2 = second_cumulant(&samples).unwrap();
    assert!(psi2.approx_eq(&SquareTensor::diagonal(shape.clone(), &[1.0, 1.0]).unwrap(), 1e-12));
    let mgf = empirical_mgf(&samples, 0.5).unwrap();
    let want = |s: f64| ((0.5 * s).exp() + (1.5 * s).exp()) / 2.0;
    assert!(mgf.approx_eq(&SquareTensor::diagonal(shape, &[want(1.0), want(-1.0)]).unwrap(), 1e-12));
    assert!(empirical_moment::<f64>(&[], 2).is_err());
}
