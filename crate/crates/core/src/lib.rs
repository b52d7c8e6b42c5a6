//! Risk analysis for the Good-Turing missing-mass estimator.
//!
//! After n draws from an unknown discrete distribution, the Good-Turing
//! estimate N_1/n (singleton fraction) predicts the missing mass: the total
//! probability of everything not yet seen. This crate quantifies how wrong
//! that prediction is, in mean square:
//!
//! * [`exact_mse`]: the exact MSE for a known distribution, in O(m^2), with
//!   a brute-force enumeration oracle ([`brute_force_mse`]) for small cases;
//! * [`mse_first_moment`] and [`mse_poissonized`]: O(m) approximations
//!   accurate to O(n^-2);
//! * [`solve_worst_case`] / [`phase_curve`]: the worst case of n * mse over
//!   all distributions on m symbols, which saturates at ~0.608/n once
//!   m/n exceeds 1/W(2) ~ 1.173 and follows a one-parameter family below;
//! * [`monte_carlo_mse`]: simulation with deterministic, thread-count
//!   independent results.

mod numeric;

pub mod asymptotic;
pub mod dist;
pub mod error;
pub mod exact;
pub mod minimax;
pub mod montecarlo;
pub mod sample;
pub mod special;

pub use asymptotic::{expected_occupancy, mse_first_moment, mse_poissonized};
pub use dist::Distribution;
pub use error::{Error, Result};
pub use exact::{MseReport, ORACLE_MAX_SEQUENCES, brute_force_mse, exact_mse, mse_occupancy_exact};
pub use minimax::{
    AlphabetSize, Regime, WorstCaseSolution, objective_alpha, phase_curve, solve_worst_case,
    worst_case_distribution,
};
pub use montecarlo::{McResult, monte_carlo_mse, sample_once};
pub use sample::{OccupancyProfile, Sample, missing_mass};
pub use special::{
    beta_kernel, beta_mode, exp_quad, exp_quad_extremes, exp_quad_inflections, lambert_w0,
};
