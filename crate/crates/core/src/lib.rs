//! Algebraic connectivity of ensembles of random weighted symmetric
//! even-uniform hypergraphs.
//!
//! A hypergraph on `m` vertices whose hyperedges split into a source and a
//! destination part of `M` vertices each is represented by an order-`2M`
//! Laplacian tensor. Under the unfolding isomorphism the Einstein product
//! becomes an ordinary matrix product, so the whole spectral toolbox
//! (eigen-tensors, tensor exponential/logarithm, semidefinite order) carries
//! over from Hermitian matrices.
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`tensor`] | dense square tensors and the Einstein-product algebra |
//! | [`spectral`] | Hermitian eigendecomposition, spectral functions, moments |
//! | [`hypergraph`] | hypergraph model, Laplacian tensors, ensembles, sampling |
//! | [`bounds`] | Chernoff / Bennett / Bernstein tail bounds |
//! | [`harness`] | Monte Carlo experiments and tail reports |
//!
//! The numerical core is generic over the real scalar (`f32` or `f64`);
//! entries are stored as `Complex<R>`. The aliases at the crate root fix
//! the scalar to `f64`, which is what the experiment harness uses.

pub mod bounds;
pub mod error;
pub mod harness;
pub mod hypergraph;
pub mod optimize;
mod scalar;
pub mod selftest;
pub mod spectral;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use num_complex::Complex;

/// Default relative tolerance for Hermitian checks and tensor equality.
pub const DEFAULT_TOL: f64 = 1e-10;

pub type Tensor = tensor::SquareTensor<f64>;
pub type Tensor32 = tensor::SquareTensor<f32>;
pub type Matrix = tensor::Matrix<f64>;
pub type Decomposition = spectral::SpectralDecomposition<f64>;
pub type Hypergraph = hypergraph::Hypergraph<f64>;
pub type Hyperedge = hypergraph::Hyperedge<f64>;
pub type Laplacian = hypergraph::LaplacianTensor<f64>;
pub type Statistics = bounds::EnsembleStatistics<f64>;
