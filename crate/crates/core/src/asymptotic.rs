//! Asymptotic approximations to the Good-Turing MSE, both O(m) per call.
//!
//! `mse_first_moment` keeps the occupancy identity but replaces second
//! moments of N_1 by the squared first moment; `mse_poissonized` further
//! replaces binomial tail factors by their Poisson limits. Both approach the
//! exact MSE at rate O(n^-2).

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::numeric::{CompensatedSum, pow1m};

/// E[N_k], the expected number of symbols seen exactly k times in n draws.
/// Only k = 1 and k = 2 are needed here; larger k is rejected.
pub fn expected_occupancy(dist: &Distribution, n: u64, k: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::SampleSizeTooSmall { min: 1, got: 0 });
    }
    let nf = n as f64;
    let coeff = match k {
        1 => nf,
        2 => {
            if n < 2 {
                return Ok(0.0);
            }
            0.5 * nf * (nf - 1.0)
        }
        _ => return Err(Error::UnsupportedOccupancyOrder(k)),
    };
    let mut acc = CompensatedSum::new();
    for &p in dist.probs() {
        acc.add(coeff * p.powi(k as i32) * pow1m(p, n - k));
    }
    Ok(acc.value())
}

/// First-moment approximation: (2 E[N_2]/n + (E[N_1]/n)(1 - E[N_1]/n)) / n.
pub fn mse_first_moment(dist: &Distribution, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::SampleSizeTooSmall { min: 2, got: n });
    }
    let nf = n as f64;
    let r1 = expected_occupancy(dist, n, 1)? / nf;
    let r2 = expected_occupancy(dist, n, 2)? / nf;
    Ok((2.0 * r2 + r1 * (1.0 - r1)) / nf)
}

/// Poissonized form: with phi_1 = sum_s p_s e^(-n p_s) and
/// phi_2 = sum_s p_s^2 e^(-n p_s),
///
///   mse = (n phi_2 + phi_1 - phi_1^2) / n.
///
/// Valid for any n >= 1; this is the form whose worst case the minimax
/// module optimizes.
pub fn mse_poissonized(dist: &Distribution, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::SampleSizeTooSmall { min: 1, got: 0 });
    }
    let nf = n as f64;
    let mut phi1 = CompensatedSum::new();
    let mut phi2 = CompensatedSum::new();
    for &p in dist.probs() {
        let e = (-nf * p).exp();
        phi1.add(p * e);
        phi2.add(p * p * e);
    }
    let phi1 = phi1.value();
    Ok((nf * phi2.value() + phi1 - phi1 * phi1) / nf)
}
