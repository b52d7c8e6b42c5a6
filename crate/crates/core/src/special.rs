//! Special functions backing the worst-case analysis: the principal Lambert
//! W branch, the quadratic-exponential kernel (u^2 + b u) e^-u, and the
//! polynomial kernel x^a (1-x)^b.

use crate::error::{Error, Result};

/// Principal branch W_0: the solution w >= -1 of w e^w = x, for x >= -1/e.
///
/// Near the branch point the iteration loses its quadratic contraction, so
/// for rho = sqrt(2(e x + 1)) < 1e-4 the series
/// w = -1 + rho - rho^2/3 + (11/72) rho^3 is already at full precision and
/// is returned directly. Everywhere else Halley steps from a log-based
/// (x >= 0) or series (x < 0) starting point converge in a handful of
/// iterations to residual 1e-15 |x|.
pub fn lambert_w0(x: f64) -> Result<f64> {
    let branch = -(-1.0f64).exp();
    if !x.is_finite() || x < branch {
        return Err(Error::LambertDomain(x));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let rho_sq = 2.0 * (std::f64::consts::E * x + 1.0);
    // clamp: x within rounding of the branch point may give rho_sq < 0
    let rho = rho_sq.max(0.0).sqrt();
    let series = -1.0 + rho - rho * rho / 3.0 + 11.0 / 72.0 * rho * rho * rho;
    if rho < 1e-4 {
        return Ok(series);
    }
    let mut w = if x >= 0.0 {
        // w ~ ln x - ln ln x for large x; ln_1p keeps small x accurate
        let l = x.ln_1p();
        if l > 1.0 { l - (l.ln()) * l / (1.0 + l) } else { l }
    } else {
        series
    };
    for _ in 0..50 {
        let ew = w.exp();
        let f = w * ew - x;
        if f.abs() <= 1e-15 * x.abs().max(1e-300) {
            return Ok(w);
        }
        let denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * (w + 1.0));
        w -= f / denom;
    }
    Ok(w)
}

/// g(u) = (u^2 + b u) e^-u.
pub fn exp_quad(u: f64, b: f64) -> f64 {
    (u * u + b * u) * (-u).exp()
}

/// Positive critical points of [`exp_quad`] in u, ascending. g'(u) = 0
/// reduces to u^2 - (2 - b) u - b = 0, i.e. u = (2 - b +/- sqrt(b^2 + 4))/2;
/// the "-" root is positive exactly when b < 0, so b < 0 yields two extremes
/// and b >= 0 one.
pub fn exp_quad_extremes(b: f64) -> Vec<f64> {
    let disc = (b * b + 4.0).sqrt();
    let hi = (2.0 - b + disc) / 2.0;
    let lo = (2.0 - b - disc) / 2.0;
    if b < 0.0 { vec![lo, hi] } else { vec![hi] }
}

/// Inflection points of [`exp_quad`], ascending. g''(u) = 0 reduces to
/// u^2 - (4 - b) u + (2 - 2 b) = 0, u = (4 - b +/- sqrt(b^2 + 8))/2;
/// the "-" root crosses zero at b = 1.
pub fn exp_quad_inflections(b: f64) -> Vec<f64> {
    let disc = (b * b + 8.0).sqrt();
    let hi = (4.0 - b + disc) / 2.0;
    let lo = (4.0 - b - disc) / 2.0;
    if b < 1.0 { vec![lo, hi] } else { vec![hi] }
}

/// x^a (1-x)^b on [0, 1].
pub fn beta_kernel(x: f64, a: f64, b: f64) -> f64 {
    x.powf(a) * (1.0 - x).powf(b)
}

/// argmax of [`beta_kernel`] for a, b > 0: a/(a+b).
pub fn beta_mode(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::NonPositiveShape { a, b });
    }
    Ok(a / (a + b))
}
