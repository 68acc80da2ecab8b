//! Dense even-order square tensors and the Einstein-product algebra.
//!
//! A [`SquareTensor`] of order `2M` has a row part and a column part, both
//! with modes `(I_1, ..., I_M)`. Entry `(i_1..i_M, j_1..j_M)` lives at flat
//! position `row(i) * total + col(j)` where `row`/`col` flatten multi-indices
//! in row-major order. With that layout the unfolding into a
//! `total x total` [`Matrix`] is a reinterpretation of the same storage.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Shape {
    modes: Vec<usize>,
    total: usize,
}

impl Shape {
    pub fn new(modes: Vec<usize>) -> Result<Self> {
        if modes.is_empty() {
            return Err(invalid("shape needs at least one mode"));
        }
        if modes.iter().any(|&d| d == 0) {
            return Err(invalid(format!("mode sizes must be positive, got {modes:?}")));
        }
        let total = modes
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| invalid(format!("shape {modes:?} overflows")))?;
        Ok(Shape { modes, total })
    }

    /// `M` modes, each of size `m` (the vertex count of a hypergraph).
    pub fn uniform(m: usize, order: usize) -> Result<Self> {
        Shape::new(vec![m; order])
    }

    pub fn modes(&self) -> &[usize] {
        &self.modes
    }

    /// Number of modes `M`.
    pub fn order(&self) -> usize {
        self.modes.len()
    }

    /// Product of the mode sizes.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Row-major flat position of a multi-index.
    pub fn flatten(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.modes.len());
        index
            .iter()
            .zip(&self.modes)
            .fold(0, |acc, (&i, &d)| {
                debug_assert!(i < d);
                acc * d + i
            })
    }

    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut index = vec![0; self.modes.len()];
        for (slot, &d) in index.iter_mut().zip(&self.modes).rev() {
            *slot = flat % d;
            flat /= d;
        }
        index
    }

    /// All multi-indices in row-major order.
    pub fn multi_indices(&self) -> MultiIndices<'_> {
        MultiIndices {
            shape: self,
            next: Some(vec![0; self.modes.len()]),
        }
    }
}

impl TryFrom<Vec<usize>> for Shape {
    type Error = Error;
    fn try_from(modes: Vec<usize>) -> Result<Self> {
        Shape::new(modes)
    }
}

impl From<Shape> for Vec<usize> {
    fn from(shape: Shape) -> Self {
        shape.modes
    }
}

/// Odometer over the multi-indices of a [`Shape`].
pub struct MultiIndices<'a> {
    shape: &'a Shape,
    next: Option<Vec<usize>>,
}

impl Iterator for MultiIndices<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for pos in (0..succ.len()).rev() {
            succ[pos] += 1;
            if succ[pos] < self.shape.modes[pos] {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(current)
    }
}

/// Dense square complex matrix, row-major. The unfolded view of a tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<R> {
    side: usize,
    data: Vec<Complex<R>>,
}

impl<R: Scalar> Matrix<R> {
    pub fn zeros(side: usize) -> Self {
        Matrix {
            side,
            data: vec![Complex::zero(); side * side],
        }
    }

    pub fn identity(side: usize) -> Self {
        let mut out = Self::zeros(side);
        for i in 0..side {
            out.data[i * side + i] = Complex::one();
        }
        out
    }

    pub fn from_vec(side: usize, data: Vec<Complex<R>>) -> Result<Self> {
        if data.len() != side * side {
            return Err(Error::Dimension(format!(
                "{} entries cannot form a {side}x{side} matrix",
                data.len()
            )));
        }
        Ok(Matrix { side, data })
    }

    pub fn from_real(side: usize, data: &[R]) -> Result<Self> {
        Self::from_vec(side, data.iter().map(|&x| Complex::new(x, R::zero())).collect())
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn as_slice(&self) -> &[Complex<R>] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Complex<R>> {
        self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<R> {
        self.data[row * self.side + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex<R>) {
        self.data[row * self.side + col] = value;
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.side;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.side != other.side {
            return Err(Error::Dimension(format!(
                "matrix product of sides {} and {}",
                self.side, other.side
            )));
        }
        let n = self.side;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex<R> {
        (0..self.side).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> R {
        self.data.iter().map(|z| z.norm_sqr()).sum::<R>().sqrt()
    }
}

/// Order-`2M` tensor with identical row and column shapes.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareTensor<R> {
    shape: Shape,
    entries: Vec<Complex<R>>,
}

impl<R: Scalar> SquareTensor<R> {
    pub fn zeros(shape: Shape) -> Self {
        let n = shape.total();
        SquareTensor {
            shape,
            entries: vec![Complex::zero(); n * n],
        }
    }

    /// Product of Kronecker deltas over the modes.
    pub fn identity(shape: Shape) -> Self {
        let n = shape.total();
        let mut out = Self::zeros(shape);
        for r in 0..n {
            out.entries[r * n + r] = Complex::one();
        }
        out
    }

    pub fn from_entries(shape: Shape, entries: Vec<Complex<R>>) -> Result<Self> {
        let n = shape.total();
        if entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "shape {:?} needs {} entries, got {}",
                shape.modes(),
                n * n,
                entries.len()
            )));
        }
        Ok(SquareTensor { shape, entries })
    }

    pub fn from_real(shape: Shape, entries: &[R]) -> Result<Self> {
        Self::from_entries(
            shape,
            entries.iter().map(|&x| Complex::new(x, R::zero())).collect(),
        )
    }

    /// Diagonal tensor whose unfolding is `diag(values)`.
    pub fn diagonal(shape: Shape, values: &[R]) -> Result<Self> {
        let n = shape.total();
        if values.len() != n {
            return Err(Error::Dimension(format!(
                "diagonal of length {} for total {n}",
                values.len()
            )));
        }
        let mut out = Self::zeros(shape);
        for (i, &v) in values.iter().enumerate() {
            out.entries[i * n + i] = Complex::new(v, R::zero());
        }
        Ok(out)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn row_shape(&self) -> &Shape {
        &self.shape
    }

    pub fn col_shape(&self) -> &Shape {
        &self.shape
    }

    /// Side of the unfolded matrix.
    pub fn total(&self) -> usize {
        self.shape.total()
    }

    pub fn entries(&self) -> &[Complex<R>] {
        &self.entries
    }

    pub fn get(&self, row: &[usize], col: &[usize]) -> Complex<R> {
        self.entries[self.shape.flatten(row) * self.total() + self.shape.flatten(col)]
    }

    pub fn set(&mut self, row: &[usize], col: &[usize], value: Complex<R>) {
        let n = self.total();
        let pos = self.shape.flatten(row) * n + self.shape.flatten(col);
        self.entries[pos] = value;
    }

    fn check_same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::Dimension(format!(
                "{op}: shapes {:?} and {:?} differ",
                self.shape.modes(),
                other.shape.modes()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<R>, Complex<R>) -> Complex<R>) -> Self {
        SquareTensor {
            shape: self.shape.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex<R>) -> Self {
        SquareTensor {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn scale_real(&self, c: R) -> Self {
        self.scale(Complex::new(c, R::zero()))
    }

    /// `(X *_M Y)_{i,j} = sum_k X_{i,k} Y_{k,j}`, contracting the column
    /// modes of `self` against the row modes of `other`.
    pub fn einstein_product(&self, other: &Self) -> Result<Self> {
        if self.col_shape() != other.row_shape() {
            return Err(Error::Dimension(format!(
                "Einstein product: column modes {:?} vs row modes {:?}",
                self.col_shape().modes(),
                other.row_shape().modes()
            )));
        }
        let n = self.total();
        let shared: Vec<usize> = self
            .col_shape()
            .multi_indices()
            .map(|k| self.col_shape().flatten(&k))
            .collect();
        let mut out = Self::zeros(self.shape.clone());
        for i in self.row_shape().multi_indices() {
            let row = self.row_shape().flatten(&i);
            for &k in &shared {
                let x = self.entries[row * n + k];
                if x.is_zero() {
                    continue;
                }
                let y_row = &other.entries[k * n..(k + 1) * n];
                let out_row = &mut out.entries[row * n..(row + 1) * n];
                for (o, &y) in out_row.iter_mut().zip(y_row) {
                    *o += x * y;
                }
            }
        }
        Ok(out)
    }

    /// `X^n` under the Einstein product; `X^0` is the identity.
    pub fn power(&self, n: u32) -> Self {
        let mut acc = Self::identity(self.shape.clone());
        for _ in 0..n {
            acc = acc
                .einstein_product(self)
                .expect("square tensor is conformable with itself");
        }
        acc
    }

    /// Swap the row and column index blocks and conjugate.
    pub fn conjugate_transpose(&self) -> Self {
        let n = self.total();
        let mut out = Self::zeros(self.shape.clone());
        for r in 0..n {
            for c in 0..n {
                out.entries[c * n + r] = self.entries[r * n + c].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex<R> {
        self.shape.multi_indices().map(|i| self.get(&i, &i)).sum()
    }

    /// `Tr(X^H *_M Y)`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex<R>> {
        self.check_same_shape(other, "inner product")?;
        Ok(self
            .conjugate_transpose()
            .einstein_product(other)
            .expect("shapes checked")
            .trace())
    }

    pub fn frobenius_norm(&self) -> R {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<R>().sqrt()
    }

    /// `||X - X^H||_F <= tol * max(1, ||X||_F)`.
    pub fn is_hermitian(&self, tol: R) -> bool {
        self.hermitian_defect() <= tol * R::one().max(self.frobenius_norm())
    }

    /// `||X - X^H||_F`.
    pub fn hermitian_defect(&self) -> R {
        let n = self.total();
        let mut acc = R::zero();
        for r in 0..n {
            for c in 0..n {
                acc += (self.entries[r * n + c] - self.entries[c * n + r].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Relative Frobenius closeness.
    pub fn approx_eq(&self, other: &Self, tol: R) -> bool {
        self.shape == other.shape
            && self.sub(other).map(|d| d.frobenius_norm()).unwrap_or(R::infinity())
                <= tol * R::one().max(self.frobenius_norm())
    }

    pub fn unfold(&self) -> Matrix<R> {
        Matrix {
            side: self.total(),
            data: self.entries.clone(),
        }
    }

    pub fn fold(matrix: Matrix<R>, shape: Shape) -> Result<Self> {
        if matrix.side != shape.total() {
            return Err(Error::Dimension(format!(
                "cannot fold a {0}x{0} matrix into shape {1:?}",
                matrix.side,
                shape.modes()
            )));
        }
        Ok(SquareTensor {
            shape,
            entries: matrix.data,
        })
    }

    /// Apply the tensor to an `I_1 x ... x I_M` column tensor, given flat.
    pub fn apply(&self, v: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
        let n = self.total();
        if v.len() != n {
            return Err(Error::Dimension(format!("vector of length {} for total {n}", v.len())));
        }
        Ok((0..n)
            .map(|r| {
                self.entries[r * n..(r + 1) * n]
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn to_json_value(&self) -> TensorJson {
        TensorJson {
            modes: self.shape.modes().to_vec(),
            entries: self
                .entries
                .iter()
                .map(|z| [z.re.to_f64_lossy(), z.im.to_f64_lossy()])
                .collect(),
        }
    }

    pub fn from_json_value(json: &TensorJson) -> Result<Self> {
        let shape = Shape::new(json.modes.clone())?;
        let entries = json
            .entries
            .iter()
            .map(|&[re, im]| {
                let re = R::from_f64(re).ok_or_else(|| invalid("entry not representable"))?;
                let im = R::from_f64(im).ok_or_else(|| invalid("entry not representable"))?;
                Ok(Complex::new(re, im))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(shape, entries)
    }
}

/// Debug serialization: `{"modes": [...], "entries": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorJson {
    pub modes: Vec<usize>,
    pub entries: Vec<[f64; 2]>,
}

/// The all-one tensor of dimension `I_1 x ... x I_M x 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OneTensor {
    shape: Shape,
}

impl OneTensor {
    pub fn new(shape: Shape) -> Self {
        OneTensor { shape }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn entries<R: Scalar>(&self) -> Vec<Complex<R>> {
        vec![Complex::one(); self.shape.total()]
    }
}
