#![allow(dead_code)]

use hyperconn::tensor::{Shape, SquareTensor};
use hyperconn::Complex;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = Complex<f64>;

pub fn to_dmatrix(t: &SquareTensor<f64>) -> DMatrix<C> {
    let n = t.total();
    DMatrix::from_row_slice(n, n, t.entries())
}

/// Eigenvalues from nalgebra, sorted descending.
pub fn oracle_eigenvalues(t: &SquareTensor<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = to_dmatrix(t).symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

pub fn shapes() -> Vec<Shape> {
    [vec![2], vec![3], vec![2, 2], vec![2, 3]]
        .into_iter()
        .map(|m| Shape::new(m).unwrap())
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_tensor(rng: &mut ChaCha8Rng, shape: &Shape) -> SquareTensor<f64> {
    let n = shape.total();
    let e = (0..n * n)
        .map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    SquareTensor::from_entries(shape.clone(), e).unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, shape: &Shape) -> SquareTensor<f64> {
    let a = random_tensor(rng, shape);
    a.add(&a.conjugate_transpose()).unwrap().scale_real(0.5)
}

/// `G G^H + eps I`.
pub fn random_pd(rng: &mut ChaCha8Rng, shape: &Shape, eps: f64) -> SquareTensor<f64> {
    let g = random_tensor(rng, shape);
    g.einstein_product(&g.conjugate_transpose())
        .unwrap()
        .add(&SquareTensor::identity(shape.clone()).scale_real(eps))
        .unwrap()
}

pub fn frob_diff(a: &SquareTensor<f64>, b: &SquareTensor<f64>) -> f64 {
    a.sub(b).unwrap().frobenius_norm()
}

pub fn arb_shape() -> impl Strategy<Value = Shape> {
    prop::sample::select(vec![vec![2], vec![3], vec![2, 2], vec![2, 3], vec![3, 2]])
        .prop_map(|m| Shape::new(m).unwrap())
}

pub fn arb_tensor(shape: Shape) -> impl Strategy<Value = SquareTensor<f64>> {
    let n = shape.total();
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n).prop_map(move |v| {
        SquareTensor::from_entries(shape.clone(), v.into_iter().map(|(r, i)| C::new(r, i)).collect()).unwrap()
    })
}

pub fn arb_pair() -> impl Strategy<Value = (SquareTensor<f64>, SquareTensor<f64>)> {
    arb_shape().prop_flat_map(|s| (arb_tensor(s.clone()), arb_tensor(s)))
}

pub fn arb_triple() -> impl Strategy<Value = (SquareTensor<f64>, SquareTensor<f64>, SquareTensor<f64>)> {
    arb_shape().prop_flat_map(|s| (arb_tensor(s.clone()), arb_tensor(s.clone()), arb_tensor(s)))
}

pub fn arb_hermitian() -> impl Strategy<Value = SquareTensor<f64>> {
    arb_shape()
        .prop_flat_map(arb_tensor)
        .prop_map(|a| a.add(&a.conjugate_transpose()).unwrap().scale_real(0.5))
}
