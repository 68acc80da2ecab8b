//! Random ensembles: sampling, population moments and the per-trial
//! centering/normalization transform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::spectral;
use crate::tensor::{Shape, SquareTensor};
use crate::Scalar;

use super::laplacian::{laplacian_tensor, LaplacianTensor};
use super::Hypergraph;

/// Weight law applied independently to every candidate `{S, D}` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightDistribution {
    /// Pair present with probability `p`, at weight `weight`.
    BernoulliEdge { p: f64, weight: f64 },
    /// Every pair present with weight uniform on `[low, high]`.
    UniformWeight { low: f64, high: f64 },
    /// Every pair present with weight `base + U(-scale, scale)`.
    CenteredBounded { base: f64, scale: f64 },
}

impl WeightDistribution {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            WeightDistribution::BernoulliEdge { p, weight } => {
                (0.0..=1.0).contains(&p) && weight.is_finite() && weight > 0.0
            }
            WeightDistribution::UniformWeight { low, high } => {
                low.is_finite() && high.is_finite() && 0.0 <= low && low <= high
            }
            WeightDistribution::CenteredBounded { base, scale } => {
                base.is_finite() && scale.is_finite() && scale >= 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("invalid distribution parameters {self:?}")))
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            WeightDistribution::BernoulliEdge { p, weight } => p * weight,
            WeightDistribution::UniformWeight { low, high } => 0.5 * (low + high),
            WeightDistribution::CenteredBounded { base, .. } => base,
        }
    }

    pub fn variance(&self) -> f64 {
        match *self {
            WeightDistribution::BernoulliEdge { p, weight } => p * (1.0 - p) * weight * weight,
            WeightDistribution::UniformWeight { low, high } => (high - low).powi(2) / 12.0,
            WeightDistribution::CenteredBounded { scale, .. } => scale * scale / 3.0,
        }
    }

    /// Almost-sure bound on `|w - mean|` (centered) or `|w|` (raw).
    pub fn deviation_bound(&self, centered: bool) -> f64 {
        match (*self, centered) {
            (WeightDistribution::BernoulliEdge { p, weight }, true) => p.max(1.0 - p) * weight,
            (WeightDistribution::BernoulliEdge { weight, .. }, false) => weight,
            (WeightDistribution::UniformWeight { low, high }, true) => 0.5 * (high - low),
            (WeightDistribution::UniformWeight { high, .. }, false) => high,
            (WeightDistribution::CenteredBounded { scale, .. }, true) => scale,
            (WeightDistribution::CenteredBounded { base, scale }, false) => {
                (base + scale).abs().max((base - scale).abs())
            }
        }
    }

    /// True when every realized weight is nonnegative, so every Laplacian
    /// is positive semidefinite.
    pub fn nonnegative(&self) -> bool {
        match *self {
            WeightDistribution::CenteredBounded { base, scale } => base - scale >= 0.0,
            _ => true,
        }
    }

    fn draw(&self, rng: &mut impl Rng) -> Option<f64> {
        let u: f64 = rng.random();
        match *self {
            WeightDistribution::BernoulliEdge { p, weight } => (u < p).then_some(weight),
            WeightDistribution::UniformWeight { low, high } => Some(low + (high - low) * u),
            WeightDistribution::CenteredBounded { base, scale } => Some(base + scale * (2.0 * u - 1.0)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    /// Number of hypergraphs summed per ensemble.
    #[serde(rename = "N")]
    pub n_graphs: usize,
    pub m: usize,
    #[serde(rename = "M")]
    pub half: usize,
    pub distribution: WeightDistribution,
    /// Subtract the population mean Laplacian from every sample.
    #[serde(default)]
    pub center: bool,
    /// Rescale samples so that their spectral norm is at most one.
    #[serde(default)]
    pub normalize: bool,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_graphs == 0 {
            return Err(invalid("ensemble size N must be at least 1"));
        }
        if self.half == 0 || self.m <= self.half {
            return Err(invalid(format!(
                "need m > M >= 1, got m = {}, M = {}",
                self.m, self.half
            )));
        }
        Shape::uniform(self.m, self.half)?;
        self.distribution.validate()
    }

    pub fn shape(&self) -> Result<Shape> {
        Shape::uniform(self.m, self.half)
    }
}

/// Every unordered pair `{S, D}` of disjoint `M`-subsets of `0..m`, listed
/// once with `S < D` lexicographically.
pub fn candidate_pairs(m: usize, half: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn subsets(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..m {
            cur.push(v);
            subsets(v + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    subsets(0, m, half, &mut Vec::new(), &mut all);
    let mut pairs = Vec::new();
    for (i, s) in all.iter().enumerate() {
        for d in &all[i + 1..] {
            if s.iter().all(|v| !d.contains(v)) {
                pairs.push((s.clone(), d.clone()));
            }
        }
    }
    pairs
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draw the hypergraph with global sample index `index`. The result depends
/// only on `(spec.seed, index)`.
pub fn sample_hypergraph<R: Scalar>(spec: &EnsembleSpec, index: u64) -> Result<Hypergraph<R>> {
    spec.validate()?;
    let mut rng = stream(spec.seed, index);
    let mut pairs = Vec::new();
    for (s, d) in candidate_pairs(spec.m, spec.half) {
        if let Some(w) = spec.distribution.draw(&mut rng) {
            pairs.push((s, d, R::lit(w)));
        }
    }
    Hypergraph::from_pairs(spec.m, spec.half, pairs)
}

/// Laplacian of a single unit-weight pair `{S, D}` (both directions).
pub fn pair_laplacian<R: Scalar>(m: usize, half: usize, s: &[usize], d: &[usize]) -> Result<SquareTensor<R>> {
    let g = Hypergraph::from_pairs(m, half, [(s.to_vec(), d.to_vec(), R::one())])?;
    Ok(laplacian_tensor(&g).value)
}

/// Laplacian of the complete pair set at unit weight, `sum_e L_e`.
pub fn support_laplacian<R: Scalar>(m: usize, half: usize) -> Result<SquareTensor<R>> {
    complete_laplacian(m, half, R::one())
}

fn complete_laplacian<R: Scalar>(m: usize, half: usize, w: R) -> Result<SquareTensor<R>> {
    let g = Hypergraph::from_pairs(
        m,
        half,
        candidate_pairs(m, half).into_iter().map(|(s, d)| (s, d, w)),
    )?;
    Ok(laplacian_tensor(&g).value)
}

/// Population mean Laplacian `E L`.
pub fn expected_laplacian<R: Scalar>(spec: &EnsembleSpec) -> Result<SquareTensor<R>> {
    spec.validate()?;
    complete_laplacian(spec.m, spec.half, R::lit(spec.distribution.mean()))
}

/// `sum_e L_e^2` over the candidate pairs.
fn sum_pair_squares<R: Scalar>(m: usize, half: usize) -> Result<SquareTensor<R>> {
    let shape = Shape::uniform(m, half)?;
    let mut acc = SquareTensor::zeros(shape);
    for (s, d) in candidate_pairs(m, half) {
        let l = pair_laplacian::<R>(m, half, &s, &d)?;
        acc = acc.add(&l.einstein_product(&l)?)?;
    }
    Ok(acc)
}

/// Population second moment `E L^2 = (E L)^2 + Var(w) sum_e L_e^2`; the
/// cross terms vanish because pair weights are independent.
pub fn expected_laplacian_square<R: Scalar>(spec: &EnsembleSpec) -> Result<SquareTensor<R>> {
    let mean = expected_laplacian::<R>(spec)?;
    let fluct = sum_pair_squares::<R>(spec.m, spec.half)?.scale_real(R::lit(spec.distribution.variance()));
    mean.einstein_product(&mean)?.add(&fluct)
}

/// Factor `c` such that `||c (L - E L)|| <= 1` (centered) or `||c L|| <= 1`
/// almost surely. Uses `L = sum_e w_e L_e` with `L_e >= 0`, so
/// `-D sum_e L_e <= L <= D sum_e L_e` for `|w_e| <= D`.
pub fn normalization_scale<R: Scalar>(spec: &EnsembleSpec) -> Result<R> {
    spec.validate()?;
    let dev = spec.distribution.deviation_bound(spec.center);
    let top = spectral::kth_largest_eigenvalue(&support_laplacian::<R>(spec.m, spec.half)?, 1)?;
    let bound = R::lit(dev) * top;
    Ok(if bound > R::zero() { R::one() / bound } else { R::one() })
}

/// Precomputed centering tensor and scale applied to every sample.
#[derive(Debug, Clone)]
pub struct TrialTransform<R> {
    pub mean: Option<SquareTensor<R>>,
    pub scale: R,
}

impl<R: Scalar> TrialTransform<R> {
    pub fn new(spec: &EnsembleSpec) -> Result<Self> {
        let mean = if spec.center {
            Some(expected_laplacian(spec)?)
        } else {
            None
        };
        let scale = if spec.normalize {
            normalization_scale(spec)?
        } else {
            R::one()
        };
        Ok(TrialTransform { mean, scale })
    }

    pub fn apply(&self, l: &SquareTensor<R>) -> Result<SquareTensor<R>> {
        let centered = match &self.mean {
            Some(mean) => l.sub(mean)?,
            None => l.clone(),
        };
        Ok(if self.scale == R::one() {
            centered
        } else {
            centered.scale_real(self.scale)
        })
    }
}

/// Sampled Laplacian with the ensemble's centering/normalization applied.
pub fn trial_laplacian<R: Scalar>(
    spec: &EnsembleSpec,
    index: u64,
    transform: &TrialTransform<R>,
) -> Result<LaplacianTensor<R>> {
    let g = sample_hypergraph::<R>(spec, index)?;
    let mut l = laplacian_tensor(&g);
    l.value = transform.apply(&l.value)?;
    l.source = Some(index);
    Ok(l)
}

/// `E X` and `E X^2` for one transformed sample `X`.
#[derive(Debug, Clone)]
pub struct TrialMoments<R> {
    pub first: SquareTensor<R>,
    pub second: SquareTensor<R>,
}

pub fn expected_trial_moments<R: Scalar>(spec: &EnsembleSpec) -> Result<TrialMoments<R>> {
    let c = if spec.normalize {
        normalization_scale::<R>(spec)?
    } else {
        R::one()
    };
    if spec.center {
        let shape = spec.shape()?;
        let fluct = sum_pair_squares::<R>(spec.m, spec.half)?
            .scale_real(R::lit(spec.distribution.variance()) * c * c);
        Ok(TrialMoments {
            first: SquareTensor::zeros(shape),
            second: fluct,
        })
    } else {
        Ok(TrialMoments {
            first: expected_laplacian::<R>(spec)?.scale_real(c),
            second: expected_laplacian_square::<R>(spec)?.scale_real(c * c),
        })
    }
}

/// Entrywise sum of Laplacians.
pub fn ensemble_laplacian<R: Scalar>(ls: &[LaplacianTensor<R>]) -> Result<LaplacianTensor<R>> {
    let (first, rest) = ls.split_first().ok_or(Error::Empty("Laplacian list"))?;
    let mut acc = first.value.clone();
    for l in rest {
        acc = acc.add(&l.value)?;
    }
    Ok(LaplacianTensor::new(acc))
}
