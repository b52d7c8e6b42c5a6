//! Shared numeric plumbing.

/// (1 - x)^k for x in [0, 1] and integer k, evaluated as exp(k ln1p(-x)).
///
/// Never a repeated product, so k in the thousands loses nothing. The k = 0
/// case must come first: the pairwise moment sums hit (1 - p_s - p_s')^0
/// with p_s + p_s' = 1 when n = 2, and that term is 1, not 0.
pub fn pow1m(x: f64, k: u64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if x >= 1.0 - 1e-15 {
        return 0.0;
    }
    if x == 0.0 {
        return 1.0;
    }
    ((k as f64) * (-x).ln_1p()).exp()
}

/// Neumaier-compensated accumulator. Callers add terms in a fixed order,
/// which keeps every reduction in this crate reproducible bit-for-bit
/// regardless of thread count.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
