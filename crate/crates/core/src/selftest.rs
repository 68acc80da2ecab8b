//! Fast built-in oracle checks, run by `hyperconn selftest`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{bennett_upper, bernstein_upper, chernoff_upper, EnsembleStatistics};
use crate::harness::empirical_tail;
use crate::hypergraph::{algebraic_connectivity, laplacian_tensor, Hypergraph};
use crate::spectral::{eig_hermitian, eigenvalues, tensor_exp, tensor_log};
use crate::tensor::{Shape, SquareTensor};
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, run: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match run() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn random_tensor(rng: &mut ChaCha8Rng, shape: &Shape) -> SquareTensor<f64> {
    let n = shape.total();
    let entries = (0..n * n)
        .map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    SquareTensor::from_entries(shape.clone(), entries).expect("n*n entries")
}

fn random_hermitian(rng: &mut ChaCha8Rng, shape: &Shape) -> SquareTensor<f64> {
    let a = random_tensor(rng, shape);
    a.add(&a.conjugate_transpose()).expect("same shape").scale_real(0.5)
}

fn ordinary(m: usize, edges: &[(usize, usize)]) -> Result<Hypergraph<f64>> {
    Hypergraph::from_pairs(m, 1, edges.iter().map(|&(a, b)| (vec![a], vec![b], 1.0)))
}

pub fn run() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let shapes: Vec<Shape> = [vec![2], vec![3], vec![2, 2], vec![2, 3]]
        .into_iter()
        .map(|m| Shape::new(m).expect("valid modes"))
        .collect();
    let mut out = Vec::new();

    out.push(check("einstein product = unfolded matmul", || {
        let mut worst = 0.0f64;
        for shape in &shapes {
            for _ in 0..5 {
                let a = random_tensor(&mut rng, shape);
                let b = random_tensor(&mut rng, shape);
                let lhs = a.einstein_product(&b)?.unfold();
                let rhs = a.unfold().matmul(&b.unfold())?;
                let diff: f64 = lhs
                    .as_slice()
                    .iter()
                    .zip(rhs.as_slice())
                    .map(|(x, y)| (x - y).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                worst = worst.max(diff / (1.0 + a.frobenius_norm() * b.frobenius_norm()));
            }
        }
        Ok((worst <= 1e-10, format!("max relative residual {worst:.2e}")))
    }));

    out.push(check("eigendecomposition reconstructs", || {
        let mut worst = 0.0f64;
        for shape in &shapes {
            let x = random_hermitian(&mut rng, shape);
            let d = eig_hermitian(&x, 1e-10)?;
            worst = worst.max(d.reconstruct().sub(&x)?.frobenius_norm());
        }
        Ok((worst <= 1e-9, format!("max residual {worst:.2e}")))
    }));

    out.push(check("log inverts exp", || {
        let x = random_hermitian(&mut rng, &shapes[2]);
        let back = tensor_log(&tensor_exp(&x)?)?;
        let err = back.sub(&x)?.frobenius_norm();
        Ok((err <= 1e-8, format!("residual {err:.2e}")))
    }));

    out.push(check("Fiedler values of small graphs", || {
        let cases: [(&str, usize, Vec<(usize, usize)>, f64); 5] = [
            ("P3", 3, vec![(0, 1), (1, 2)], 1.0),
            ("K3", 3, vec![(0, 1), (1, 2), (0, 2)], 3.0),
            ("C4", 4, vec![(0, 1), (1, 2), (2, 3), (3, 0)], 2.0),
            ("K4", 4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4.0),
            ("2K2", 4, vec![(0, 1), (2, 3)], 0.0),
        ];
        let mut detail = Vec::new();
        let mut ok = true;
        for (name, m, edges, expected) in cases {
            let alpha = algebraic_connectivity(&laplacian_tensor(&ordinary(m, &edges)?), m, 1)?;
            ok &= (alpha - expected).abs() <= 1e-9;
            detail.push(format!("{name}={alpha:.6}"));
        }
        Ok((ok, detail.join(" ")))
    }));

    out.push(check("4-vertex, M = 2 Laplacian null space", || {
        let g = Hypergraph::from_pairs(
            4,
            2,
            [(vec![0, 1], vec![2, 3], 1.5), (vec![0, 2], vec![1, 3], 0.5)],
        )?;
        let l = laplacian_tensor(&g);
        let zeros = eigenvalues(&l.value, 1e-10f64)?.iter().filter(|v| v.abs() <= 1e-8).count();
        let residual = l.ones_residual();
        Ok((
            zeros >= 5 && residual <= 1e-9,
            format!("{zeros} zero eigenvalues, L*1 residual {residual:.1e}"),
        ))
    }));

    out.push(check("closed-form spot values", || {
        let s = EnsembleStatistics::from_parts(1.0, 1.0, 3, 1)?;
        let e = std::f64::consts::E;
        let got = [
            chernoff_upper(2.0, &s)?,
            bennett_upper(1.0, &s)?,
            bernstein_upper(1.0, &s)?,
        ];
        let want = [2.0 * e * e / 27.0, e / 2.0, 2.0 * (-0.25f64).exp()];
        let ok = got.iter().zip(&want).all(|(g, w)| (g - w).abs() <= 1e-12 * w);
        Ok((ok, format!("{:.8} {:.8} {:.8}", got[0], got[1], got[2])))
    }));

    out.push(check("Wilson interval at zero hits", || {
        let t = empirical_tail(&[0.0, 0.5, 1.0], 2.0, 0.95)?;
        Ok((t.estimate == 0.0 && t.ci_high > 0.0, format!("ci_high {:.4}", t.ci_high)))
    }));

    out
}
