//! Monte Carlo estimation of the Good-Turing MSE, as an end-to-end check on
//! the closed forms.
//!
//! Reproducibility contract: results are a pure function of
//! (distribution, n, trials, seed). Trial t draws from ChaCha8 stream t of
//! the seed, so the schedule is fixed no matter how rayon partitions the
//! trial range, and the final reduction is sequential. Byte-identical output
//! on 1 thread and 64.

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::sample::Sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::num::NonZeroU64;

/// Monte Carlo estimate with its sampling uncertainty.
#[derive(Clone, Copy, Debug)]
pub struct McResult {
    pub mse_estimate: f64,
    /// Standard error of the mean of the squared errors.
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Inverse-CDF sampler over a fixed distribution.
pub struct Sampler {
    edges: Vec<f64>,
}

impl Sampler {
    pub fn new(dist: &Distribution) -> Self {
        let mut edges = Vec::with_capacity(dist.support_size());
        let mut acc = 0.0;
        for &p in dist.probs() {
            acc += p;
            edges.push(acc);
        }
        // pin the last edge so draws in [acc, 1) cannot fall off the end
        *edges.last_mut().expect("distributions are nonempty") = 1.0;
        Sampler { edges }
    }

    /// Symbol whose cumulative slot contains r; r must lie in [0, 1).
    fn draw(&self, r: f64) -> usize {
        self.edges.partition_point(|&e| e <= r)
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// One sample of size n, as occupancy counts aligned with `dist`.
pub fn sample_once(dist: &Distribution, n: NonZeroU64, rng: &mut impl Rng) -> Sample {
    let sampler = Sampler::new(dist);
    let mut counts = vec![0u64; dist.support_size()];
    for _ in 0..n.get() {
        counts[sampler.draw(rng.random::<f64>())] += 1;
    }
    Sample::from_counts(counts).expect("n >= 1 draws")
}

/// Estimate E[(N_1/n - M_0)^2] over independent trials. Trials run in
/// parallel on the current rayon pool; see the module notes for why the
/// result does not depend on the pool.
pub fn monte_carlo_mse(
    dist: &Distribution,
    n: NonZeroU64,
    trials: u64,
    seed: u64,
) -> Result<McResult> {
    if trials < 2 {
        return Err(Error::TooFewTrials(trials));
    }
    let sampler = Sampler::new(dist);
    let p = dist.probs();
    let nf = n.get() as f64;

    let sq_errors: Vec<f64> = (0..trials)
        .into_par_iter()
        .map_init(
            || vec![0u64; p.len()],
            |counts, t| {
                let mut rng = trial_rng(seed, t);
                counts.fill(0);
                for _ in 0..n.get() {
                    counts[sampler.draw(rng.random::<f64>())] += 1;
                }
                let mut n1 = 0u64;
                let mut miss = 0.0;
                for (f, &ps) in counts.iter().zip(p) {
                    match f {
                        0 => miss += ps,
                        1 => n1 += 1,
                        _ => {}
                    }
                }
                let d = n1 as f64 / nf - miss;
                d * d
            },
        )
        .collect();

    let mut mean = CompensatedSum::new();
    for &x in &sq_errors {
        mean.add(x);
    }
    let mean = mean.value() / trials as f64;
    let mut var = CompensatedSum::new();
    for &x in &sq_errors {
        let d = x - mean;
        var.add(d * d);
    }
    let sample_var = var.value() / (trials - 1) as f64;
    Ok(McResult {
        mse_estimate: mean,
        std_error: (sample_var / trials as f64).sqrt(),
        trials,
        seed,
    })
}
