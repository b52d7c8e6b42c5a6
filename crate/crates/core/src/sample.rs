//! Samples summarized by per-symbol counts, their occupancy numbers, and
//! the two quantities the whole crate is about: the Good-Turing estimate
//! N_1/n and the true missing mass it targets.

use std::collections::BTreeMap;

use crate::dist::Distribution;
use crate::error::{Error, Result};

/// Counts f_s of each symbol in a sample of n iid draws. n is always the
/// exact sum of the counts and is at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    counts: Vec<u64>,
    n: u64,
}

impl Sample {
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        let n = counts.iter().sum();
        if n == 0 {
            return Err(Error::EmptySample);
        }
        Ok(Self { counts, n })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Occupancy numbers N_k = #{s : f_s = k}, for the k >= 1 that occur.
    pub fn occupancy(&self) -> OccupancyProfile {
        let mut n_k = BTreeMap::new();
        for &f in &self.counts {
            if f > 0 {
                *n_k.entry(f).or_insert(0) += 1;
            }
        }
        OccupancyProfile { n_k, n: self.n }
    }

    /// The Good-Turing missing-mass estimate N_1 / n.
    pub fn good_turing(&self) -> f64 {
        let n1 = self.counts.iter().filter(|&&f| f == 1).count();
        n1 as f64 / self.n as f64
    }
}

/// Histogram of counts: how many symbols were seen exactly k times.
/// Satisfies sum_k k N_k = n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccupancyProfile {
    n_k: BTreeMap<u64, u64>,
    n: u64,
}

impl OccupancyProfile {
    /// N_k; zero for any k not present.
    pub fn count(&self, k: u64) -> u64 {
        self.n_k.get(&k).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.n_k
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

/// True missing mass M_0: the total probability of symbols absent from the
/// sample. The sample must be indexed by the same alphabet as `dist`.
pub fn missing_mass(dist: &Distribution, sample: &Sample) -> Result<f64> {
    if dist.support_size() != sample.counts().len() {
        return Err(Error::LengthMismatch {
            dist: dist.support_size(),
            sample: sample.counts().len(),
        });
    }
    Ok(dist
        .probs()
        .iter()
        .zip(sample.counts())
        .filter(|&(_, &f)| f == 0)
        .map(|(p, _)| p)
        .sum())
}
