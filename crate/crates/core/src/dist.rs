//! Probability distributions on the indexed alphabet {0, .., m-1}.
//!
//! Zero-probability entries are legal and count toward the alphabet size m;
//! estimators must treat "symbol with p = 0" and "symbol absent from the
//! vector" identically, and tests hold them to that.

use crate::error::{Error, Result};

/// Accepted drift when callers hand us probabilities rather than weights.
/// Anything inside is renormalized away so downstream code can rely on a
/// unit sum; anything outside is rejected.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// A probability vector over symbols 0..m-1.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

fn validate_entries(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyWeights);
    }
    let mut total = 0.0;
    for (index, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFiniteWeight { index });
        }
        if v < 0.0 {
            return Err(Error::NegativeWeight { index, value: v });
        }
        total += v;
    }
    if total == 0.0 {
        return Err(Error::ZeroTotalWeight);
    }
    Ok(total)
}

impl Distribution {
    /// Builds a distribution from nonnegative weights, normalized by their sum.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let total = validate_entries(weights)?;
        Ok(Self {
            probs: weights.iter().map(|w| w / total).collect(),
        })
    }

    /// Accepts an explicit probability vector whose sum may drift from 1 by
    /// at most [`NORMALIZATION_TOLERANCE`]; the drift is renormalized away.
    pub fn from_probs(probs: &[f64]) -> Result<Self> {
        let total = validate_entries(probs)?;
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized {
                sum: total,
                tolerance: NORMALIZATION_TOLERANCE,
            });
        }
        Self::from_weights(probs)
    }

    pub fn uniform(m: usize) -> Result<Self> {
        Self::from_weights(&vec![1.0; m])
    }

    /// Uniform mass w spread over `m_uniform` symbols plus one atom carrying
    /// 1 - w, appended last. With w = 1 the atom is omitted entirely.
    pub fn dirac_uniform(m_uniform: usize, w: f64) -> Result<Self> {
        if m_uniform == 0 {
            return Err(Error::EmptyWeights);
        }
        if !w.is_finite() || !(0.0..=1.0).contains(&w) {
            return Err(Error::WeightOutOfRange(w));
        }
        let mut probs = vec![w / m_uniform as f64; m_uniform];
        if w < 1.0 {
            probs.push(1.0 - w);
        }
        Ok(Self { probs })
    }

    /// Power law p_i proportional to i^-s on ranks i = 1..m.
    pub fn zipf(m: usize, s: f64) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::NonFiniteExponent(s));
        }
        let weights: Vec<f64> = (1..=m).map(|i| (i as f64).powf(-s)).collect();
        Self::from_weights(&weights)
    }

    /// Alphabet size m, counting zero-probability entries.
    pub fn support_size(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}
