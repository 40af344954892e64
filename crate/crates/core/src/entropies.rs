//! Index of coincidence and generalized entropies of probability vectors.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::TOL_STRUCT;

/// Half-width of the window around `α = 1` where the Shannon branch is used.
pub const ALPHA_ONE_WINDOW: f64 = 1e-9;

fn is_alpha_one(alpha: f64) -> bool {
    (alpha - 1.0).abs() <= ALPHA_ONE_WINDOW
}

/// Outcome tag `(group, element)`.
pub type OutcomeLabel = (usize, usize);

/// Normalized probability vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector {
    p: Vec<f64>,
    labels: Option<Vec<OutcomeLabel>>,
}

impl ProbabilityVector {
    /// Entries in `[-TOL_STRUCT, 0)` are clamped to zero and the vector is
    /// renormalized; anything further from a distribution is rejected.
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidProbabilities("empty"));
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidProbabilities("non-finite entry"));
        }
        if p.iter().any(|&x| x < -TOL_STRUCT) {
            return Err(Error::InvalidProbabilities("negative entry"));
        }
        let mut p = p;
        p.iter_mut().for_each(|x| *x = x.max(0.0));
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > TOL_STRUCT {
            return Err(Error::InvalidProbabilities("does not sum to one"));
        }
        p.iter_mut().for_each(|x| *x /= total);
        Ok(ProbabilityVector { p, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<OutcomeLabel>) -> Self {
        assert_eq!(labels.len(), self.p.len(), "one label per outcome");
        self.labels = Some(labels);
        self
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    pub fn labels(&self) -> Option<&[OutcomeLabel]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.p.iter().fold(0.0, |a, &b| a.max(b))
    }

    /// Largest `p_i + p_j` over `i != j`; `None` for a single outcome.
    pub fn max_pair_sum(&self) -> Option<f64> {
        let n = self.p.len();
        if n < 2 {
            return None;
        }
        let mut best = f64::NEG_INFINITY;
        for i in 0..n {
            for j in (i + 1)..n {
                best = best.max(self.p[i] + self.p[j]);
            }
        }
        Some(best)
    }
}

/// `Σ p²`.
pub fn index_of_coincidence(p: &ProbabilityVector) -> f64 {
    p.p.iter().map(|x| x * x).sum()
}

/// α-logarithm `(x^{1-α} - 1)/(1 - α)`, `ln x` at `α = 1`.
pub fn alpha_log(x: f64, alpha: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            what: "alpha_log argument",
            value: x,
        });
    }
    if !(alpha > 0.0) {
        return Err(Error::Domain {
            what: "alpha",
            value: alpha,
        });
    }
    Ok(ln_alpha(x, alpha))
}

pub(crate) fn ln_alpha(x: f64, alpha: f64) -> f64 {
    if is_alpha_one(alpha) {
        libm::log(x)
    } else {
        libm::expm1((1.0 - alpha) * libm::log(x)) / (1.0 - alpha)
    }
}

fn power_sum(p: &ProbabilityVector, alpha: f64) -> f64 {
    p.p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| libm::pow(x, alpha))
        .sum()
}

/// `-Σ p ln p` with `0 ln 0 = 0`.
pub fn shannon_entropy(p: &ProbabilityVector) -> f64 {
    -p.p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * libm::log(x))
        .sum::<f64>()
}

/// Tsallis α-entropy.
pub fn tsallis_entropy(p: &ProbabilityVector, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Domain {
            what: "alpha",
            value: alpha,
        });
    }
    if is_alpha_one(alpha) {
        return Ok(shannon_entropy(p));
    }
    Ok((power_sum(p, alpha) - 1.0) / (1.0 - alpha))
}

/// Rényi α-entropy.
pub fn renyi_entropy(p: &ProbabilityVector, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Domain {
            what: "alpha",
            value: alpha,
        });
    }
    if is_alpha_one(alpha) {
        return Ok(shannon_entropy(p));
    }
    Ok(libm::log(power_sum(p, alpha)) / (1.0 - alpha))
}

/// `-ln max p`, the `α → ∞` limit of the Rényi entropy.
pub fn min_entropy(p: &ProbabilityVector) -> f64 {
    -libm::log(p.max())
}

/// Maps a Tsallis α-entropy value to the matching Rényi value.
pub fn tsallis_to_renyi(h: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Domain {
            what: "alpha",
            value: alpha,
        });
    }
    if is_alpha_one(alpha) {
        return Ok(h);
    }
    let arg = 1.0 + (1.0 - alpha) * h;
    if !(arg > 0.0) {
        return Err(Error::Domain {
            what: "tsallis_to_renyi log argument",
            value: arg,
        });
    }
    Ok(libm::log1p((1.0 - alpha) * h) / (1.0 - alpha))
}
