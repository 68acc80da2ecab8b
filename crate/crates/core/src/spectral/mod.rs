//! Hermitian spectral calculus for square tensors.
//!
//! Decompositions are computed on the unfolding and folded back, so an
//! eigen-tensor `X` of `A` satisfies `A *_M X = lambda X` exactly when its
//! flattened vector is an eigenvector of `unfold(A)`.

mod jacobi;

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::tensor::{Matrix, SquareTensor};
use crate::{Scalar, DEFAULT_TOL};

/// Descending eigenvalues plus a unitary basis of eigen-tensors.
///
/// Column `j` of `unfold(basis)` is the eigenvector belonging to
/// `eigenvalues[j]`. Within a repeated eigenvalue the basis is arbitrary.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<R> {
    pub eigenvalues: Vec<R>,
    pub basis: SquareTensor<R>,
}

impl<R: Scalar> SpectralDecomposition<R> {
    pub fn lambda_max(&self) -> R {
        self.eigenvalues[0]
    }

    pub fn lambda_min(&self) -> R {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// `U *_M diag(values) *_M U^H`.
    pub fn synthesize(&self, values: &[R]) -> SquareTensor<R> {
        let shape = self.basis.shape().clone();
        let diag = SquareTensor::diagonal(shape, values).expect("one value per eigenvalue");
        self.basis
            .einstein_product(&diag)
            .and_then(|t| t.einstein_product(&self.basis.conjugate_transpose()))
            .expect("conformable")
    }

    pub fn reconstruct(&self) -> SquareTensor<R> {
        self.synthesize(&self.eigenvalues)
    }

    /// Spectral mapping: `U f(Lambda) U^H`. Fails if `f` is not finite on
    /// the spectrum.
    pub fn map(&self, f: impl Fn(R) -> R) -> Result<SquareTensor<R>> {
        let mapped = self
            .eigenvalues
            .iter()
            .map(|&l| {
                let y = f(l);
                if y.is_finite() {
                    Ok(y)
                } else {
                    Err(Error::Domain(format!("function undefined at eigenvalue {l}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.synthesize(&mapped))
    }

    /// Eigen-tensor `j` as a flat column vector.
    pub fn eigenvector(&self, j: usize) -> Vec<Complex<R>> {
        let n = self.basis.total();
        (0..n).map(|i| self.basis.entries()[i * n + j]).collect()
    }
}

/// Symmetrize `X` as `(X + X^H)/2` when it is Hermitian within `tol`,
/// otherwise reject it.
pub fn hermitian_part<R: Scalar>(x: &SquareTensor<R>, tol: R) -> Result<SquareTensor<R>> {
    let defect = x.hermitian_defect();
    let allowed = tol * R::one().max(x.frobenius_norm());
    if defect > allowed {
        return Err(Error::NotHermitian {
            asymmetry: defect.to_f64_lossy(),
            allowed: allowed.to_f64_lossy(),
        });
    }
    Ok(x.add(&x.conjugate_transpose())
        .expect("same shape")
        .scale_real(R::lit(0.5)))
}

fn sort_descending<R: Scalar>(values: Vec<R>) -> (Vec<usize>, Vec<R>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(std::cmp::Ordering::Equal));
    let sorted = order.iter().map(|&i| values[i]).collect();
    (order, sorted)
}

pub fn eig_hermitian<R: Scalar>(x: &SquareTensor<R>, tol: R) -> Result<SpectralDecomposition<R>> {
    let h = hermitian_part(x, tol)?;
    let eig = jacobi::hermitian_eigen(&h.unfold(), true);
    let (order, eigenvalues) = sort_descending(eig.values);
    let vectors = eig.vectors.expect("requested");
    let n = vectors.side();
    let mut basis = Matrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            basis.set(i, dst, vectors.get(i, src));
        }
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        basis: SquareTensor::fold(basis, x.shape().clone())?,
    })
}

/// Descending spectrum without eigen-tensors.
pub fn eigenvalues<R: Scalar>(x: &SquareTensor<R>, tol: R) -> Result<Vec<R>> {
    let h = hermitian_part(x, tol)?;
    Ok(sort_descending(jacobi::hermitian_eigen(&h.unfold(), false).values).1)
}

/// Descending spectrum of a Hermitian matrix.
pub fn matrix_eigenvalues<R: Scalar>(m: &Matrix<R>) -> Vec<R> {
    sort_descending(jacobi::hermitian_eigen(m, false).values).1
}

/// `lambda_k`, counting from the largest (`k = 1`).
pub fn kth_largest_eigenvalue<R: Scalar>(x: &SquareTensor<R>, k: usize) -> Result<R> {
    let n = x.total();
    if k == 0 || k > n {
        return Err(invalid(format!("eigenvalue index {k} outside 1..={n}")));
    }
    Ok(eigenvalues(x, R::lit(DEFAULT_TOL))?[k - 1])
}

pub fn tensor_function<R: Scalar>(x: &SquareTensor<R>, f: impl Fn(R) -> R) -> Result<SquareTensor<R>> {
    eig_hermitian(x, R::lit(DEFAULT_TOL))?.map(f)
}

pub fn tensor_exp<R: Scalar>(x: &SquareTensor<R>) -> Result<SquareTensor<R>> {
    tensor_function(x, |l| l.exp())
}

/// Principal logarithm of a positive-definite tensor.
pub fn tensor_log<R: Scalar>(x: &SquareTensor<R>) -> Result<SquareTensor<R>> {
    let eig = eig_hermitian(x, R::lit(DEFAULT_TOL))?;
    let floor = R::lit(DEFAULT_TOL) * R::one().max(eig.lambda_max().abs());
    if eig.lambda_min() <= floor {
        return Err(Error::Domain(format!(
            "logarithm needs a positive-definite tensor, smallest eigenvalue {}",
            eig.lambda_min()
        )));
    }
    eig.map(|l| l.ln())
}

/// `X >= Y` in the semidefinite order: `lambda_min(X - Y) >= -tol`.
pub fn semidefinite_ge<R: Scalar>(x: &SquareTensor<R>, y: &SquareTensor<R>, tol: R) -> Result<bool> {
    let diff = x.sub(y)?;
    let spectrum = eigenvalues(&diff, R::lit(DEFAULT_TOL).max(tol))?;
    Ok(*spectrum.last().expect("nonempty") >= -tol)
}

/// Sample mean of `X_s^n`.
#[derive(Debug, Clone)]
pub struct MomentEstimate<R> {
    pub order: u32,
    pub value: SquareTensor<R>,
    pub sample_count: usize,
}

fn check_samples<R: Scalar>(samples: &[SquareTensor<R>]) -> Result<()> {
    let first = samples.first().ok_or(Error::Empty("sample list"))?;
    if let Some(bad) = samples.iter().find(|s| s.shape() != first.shape()) {
        return Err(Error::Dimension(format!(
            "sample shapes {:?} and {:?} differ",
            first.shape().modes(),
            bad.shape().modes()
        )));
    }
    Ok(())
}

fn mean<R: Scalar>(mut terms: impl Iterator<Item = Result<SquareTensor<R>>>, count: usize) -> Result<SquareTensor<R>> {
    let mut acc = terms.next().ok_or(Error::Empty("sample list"))??;
    for t in terms {
        acc = acc.add(&t?)?;
    }
    Ok(acc.scale_real(R::one() / R::from_usize(count).expect("count fits")))
}

pub fn empirical_moment<R: Scalar>(samples: &[SquareTensor<R>], n: u32) -> Result<MomentEstimate<R>> {
    check_samples(samples)?;
    if n == 0 {
        return Err(invalid("moment order must be positive"));
    }
    let value = mean(samples.iter().map(|s| Ok(s.power(n))), samples.len())?;
    Ok(MomentEstimate {
        order: n,
        value,
        sample_count: samples.len(),
    })
}

/// Sample tensor moment-generating function `mean(exp(t X_s))`.
pub fn empirical_mgf<R: Scalar>(samples: &[SquareTensor<R>], t: R) -> Result<SquareTensor<R>> {
    check_samples(samples)?;
    mean(samples.iter().map(|s| tensor_exp(&s.scale_real(t))), samples.len())
}

/// First cumulant: the sample mean.
pub fn first_cumulant<R: Scalar>(samples: &[SquareTensor<R>]) -> Result<SquareTensor<R>> {
    Ok(empirical_moment(samples, 1)?.value)
}

/// Second cumulant: `E X^2 - (E X)^2` over the sample.
pub fn second_cumulant<R: Scalar>(samples: &[SquareTensor<R>]) -> Result<SquareTensor<R>> {
    let m1 = empirical_moment(samples, 1)?.value;
    let m2 = empirical_moment(samples, 2)?.value;
    m2.sub(&m1.power(2))
}

/// Smallest eigenvalue of `V^H A V` over the columns of `V`, i.e. the
/// minimum Rayleigh quotient of `A` on `span(V)`. Columns are given as flat
/// vectors and must be orthonormal.
pub fn compressed_spectrum<R: Scalar>(a: &SquareTensor<R>, columns: &[Vec<Complex<R>>]) -> Result<Vec<R>> {
    let d = columns.len();
    if d == 0 {
        return Err(Error::Empty("subspace basis"));
    }
    let av = columns
        .iter()
        .map(|c| a.apply(c))
        .collect::<Result<Vec<_>>>()?;
    let mut compressed = Matrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let z: Complex<R> = columns[i].iter().zip(&av[j]).map(|(u, w)| u.conj() * w).sum();
            compressed.set(i, j, z);
        }
    }
    // Symmetrize away rounding.
    let mut sym = Matrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let z = (compressed.get(i, j) + compressed.get(j, i).conj()) * R::lit(0.5);
            sym.set(i, j, if i == j { Complex::new(z.re, R::zero()) } else { z });
        }
    }
    Ok(matrix_eigenvalues(&sym))
}

/// Rayleigh quotient `<x, A x> / <x, x>`.
pub fn rayleigh_quotient<R: Scalar>(a: &SquareTensor<R>, x: &[Complex<R>]) -> Result<R> {
    let ax = a.apply(x)?;
    let num: Complex<R> = x.iter().zip(&ax).map(|(u, w)| u.conj() * w).sum();
    let den: R = x.iter().map(|z| z.norm_sqr()).sum();
    if den.is_zero() {
        return Err(invalid("zero vector"));
    }
    Ok(num.re / den)
}
