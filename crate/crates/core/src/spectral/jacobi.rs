//! Cyclic complex Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the classical real symmetric rotation. The
//! combined 2x2 unitary acting on columns `(p, q)` is
//!
//! ```text
//! G = [[ c,            s          ],
//!      [ -s e^{-i phi}, c e^{-i phi} ]]
//! ```
//!
//! and `A <- G^H A G`, `V <- V G`.

use num_complex::Complex;
use num_traits::Zero;

use crate::tensor::Matrix;
use crate::Scalar;

const MAX_SWEEPS: usize = 100;

pub(crate) struct Eigen<R> {
    /// Unsorted eigenvalues.
    pub values: Vec<R>,
    /// Column `j` is the eigenvector of `values[j]`.
    pub vectors: Option<Matrix<R>>,
}

/// `a` must be Hermitian. Converges quadratically; stops once the
/// off-diagonal mass drops below machine precision relative to `||A||_F`.
pub(crate) fn hermitian_eigen<R: Scalar>(a: &Matrix<R>, want_vectors: bool) -> Eigen<R> {
    let n = a.side();
    let mut a: Vec<Complex<R>> = a.as_slice().to_vec();
    let mut v = want_vectors.then(|| Matrix::<R>::identity(n).into_vec());

    let scale = a.iter().map(|z| z.norm_sqr()).sum::<R>().sqrt();
    let target = R::epsilon() * R::epsilon() * scale * scale;

    for _ in 0..MAX_SWEEPS {
        let off: R = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q].norm_sqr())
            .sum();
        if off <= target || off.is_zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_deref_mut(), n, p, q);
            }
        }
    }

    Eigen {
        values: (0..n).map(|i| a[i * n + i].re).collect(),
        vectors: v.map(|data| Matrix::from_vec(n, data).expect("n x n")),
    }
}

fn rotate<R: Scalar>(a: &mut [Complex<R>], v: Option<&mut [Complex<R>]>, n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r.is_zero() {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    // Skip pivots already negligible against both diagonal entries.
    let tiny = R::epsilon() * R::lit(1e-2) * (app.abs() + aqq.abs());
    if r < tiny {
        a[p * n + q] = Complex::zero();
        a[q * n + p] = Complex::zero();
        return;
    }

    let phase = apq / r; // e^{i phi}
    let theta = (aqq - app) / (R::lit(2.0) * r);
    let t = if theta >= R::zero() {
        R::one() / (theta + (theta * theta + R::one()).sqrt())
    } else {
        -R::one() / (-theta + (theta * theta + R::one()).sqrt())
    };
    let c = R::one() / (t * t + R::one()).sqrt();
    let s = t * c;

    let cplx = |x: R| Complex::new(x, R::zero());
    let g_pp = cplx(c);
    let g_pq = cplx(s);
    let g_qp = phase.conj() * (-s);
    let g_qq = phase.conj() * c;

    // A <- A G
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * g_pp + akq * g_qp;
        a[k * n + q] = akp * g_pq + akq * g_qq;
    }
    // A <- G^H A
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[q * n + k] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[p * n + q] = Complex::zero();
    a[q * n + p] = Complex::zero();
    a[p * n + p] = cplx(a[p * n + p].re);
    a[q * n + q] = cplx(a[q * n + q].re);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[k * n + p];
            let vkq = v[k * n + q];
            v[k * n + p] = vkp * g_pp + vkq * g_qp;
            v[k * n + q] = vkp * g_pq + vkq * g_qq;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        v
    }

    #[test]
    fn two_by_two_complex() {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
        let m = Matrix::from_vec(
            2,
            vec![
                Complex::new(2.0, 0.0),
                Complex::new(0.0, 1.0),
                Complex::new(0.0, -1.0),
                Complex::new(2.0, 0.0),
            ],
        )
        .unwrap();
        let e = hermitian_eigen(&m, true);
        let vals = sorted(e.values.clone());
        assert!((vals[0] - 3.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
        let v = e.vectors.unwrap();
        // A v_j = lambda_j v_j
        for j in 0..2 {
            for i in 0..2 {
                let av: Complex<f64> = (0..2).map(|k| m.get(i, k) * v.get(k, j)).sum();
                assert!((av - v.get(i, j) * e.values[j]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn already_diagonal() {
        let m = Matrix::from_real(3, &[3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0]).unwrap();
        let e = hermitian_eigen(&m, false);
        assert_eq!(e.values, vec![3.0, 1.0, 2.0]);
        assert!(e.vectors.is_none());
    }
}
