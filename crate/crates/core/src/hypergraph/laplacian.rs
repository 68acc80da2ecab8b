use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::spectral;
use crate::tensor::{OneTensor, Shape, SquareTensor};
use crate::{Scalar, DEFAULT_TOL};

use super::Hypergraph;

/// Laplacian tensor `D - A` of a hypergraph (or a sum of them).
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianTensor<R> {
    pub value: SquareTensor<R>,
    /// Sample index the graph was drawn from, if any.
    pub source: Option<u64>,
}

impl<R: Scalar> LaplacianTensor<R> {
    pub fn new(value: SquareTensor<R>) -> Self {
        LaplacianTensor { value, source: None }
    }

    /// `||L *_M 1||` relative to `||L||_F`.
    pub fn ones_residual(&self) -> R {
        let ones = OneTensor::new(self.value.shape().clone()).entries::<R>();
        let r = self.value.apply(&ones).expect("matching total");
        r.iter().map(|z| z.norm_sqr()).sum::<R>().sqrt()
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Entry `(i_1..i_M, j_1..j_M)` carries `w` for every ordering of the source
/// set on the row side and of the destination set on the column side.
pub fn adjacency_tensor<R: Scalar>(g: &Hypergraph<R>) -> SquareTensor<R> {
    let shape = Shape::uniform(g.m, g.half).expect("validated hypergraph");
    let mut a = SquareTensor::zeros(shape);
    for e in &g.edges {
        let w = Complex::new(e.weight, R::zero());
        let dests = permutations(&e.dest);
        for s in permutations(&e.source) {
            for d in &dests {
                a.set(&s, d, w);
            }
        }
    }
    a
}

/// Diagonal tensor of adjacency row sums.
pub fn degree_tensor<R: Scalar>(g: &Hypergraph<R>) -> SquareTensor<R> {
    degree_of(&adjacency_tensor(g))
}

fn degree_of<R: Scalar>(a: &SquareTensor<R>) -> SquareTensor<R> {
    let n = a.total();
    let sums: Vec<R> = (0..n)
        .map(|r| a.entries()[r * n..(r + 1) * n].iter().map(|z| z.re).sum())
        .collect();
    SquareTensor::diagonal(a.shape().clone(), &sums).expect("one sum per row")
}

pub fn laplacian_tensor<R: Scalar>(g: &Hypergraph<R>) -> LaplacianTensor<R> {
    let a = adjacency_tensor(g);
    let d = degree_of(&a);
    LaplacianTensor::new(d.sub(&a).expect("same shape"))
}

/// `m! / (m - M)!`, the number of ordered `M`-tuples of distinct vertices.
pub fn falling_factorial(m: usize, half: usize) -> Result<usize> {
    if half > m {
        return Err(invalid(format!("M = {half} exceeds m = {m}")));
    }
    ((m - half + 1)..=m)
        .try_fold(1usize, |acc, f| acc.checked_mul(f))
        .ok_or_else(|| invalid("falling factorial overflows"))
}

/// Index `k = m!/(m-M)! - 1` of the eigenvalue (counted from the largest)
/// that equals the algebraic connectivity.
pub fn connectivity_index(m: usize, half: usize) -> Result<usize> {
    if half == 0 || m <= half {
        return Err(invalid(format!("need m > M >= 1, got m = {m}, M = {half}")));
    }
    Ok(falling_factorial(m, half)? - 1)
}

pub fn algebraic_connectivity<R: Scalar>(l: &LaplacianTensor<R>, m: usize, half: usize) -> Result<R> {
    let k = connectivity_index(m, half)?;
    let expected = Shape::uniform(m, half)?;
    if l.value.shape() != &expected {
        return Err(Error::Dimension(format!(
            "Laplacian has modes {:?}, expected {:?}",
            l.value.shape().modes(),
            expected.modes()
        )));
    }
    let spectrum = spectral::eigenvalues(&l.value, R::lit(DEFAULT_TOL))?;
    Ok(spectrum[k - 1])
}
