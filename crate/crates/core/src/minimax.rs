//! Worst-case Good-Turing risk over all distributions on a given alphabet.
//!
//! In the large-n limit the worst case of n * mse is attained inside the
//! two-parameter family "point mass plus uniform block": mass 1 - w on a
//! single heavy symbol and mass w spread over k symbols of probability c/n
//! each (so k = w n / c). Its limiting scaled risk is
//!
//!   alpha(w, c) = w (1 + c) e^-c - (w e^-c)^2,
//!
//! maximized subject to w <= 1 and, on an alphabet of m symbols, the head
//! count constraint k <= m, i.e. w <= (m/n) c. Two regimes result:
//!
//!   * plateau: m/n >= 1/W(2). The head constraint is slack; the optimum is
//!     w = 1, c = W(2), alpha = (W(2)^2 + 2 W(2))/4 ~ 0.608.
//!   * constrained: m/n < 1/W(2). The head constraint binds, w = (m/n) c,
//!     and a one-dimensional search over c in [0, n/m] remains.
//!
//! The transition at m/n = 1/W(2) ~ 1.1729 is the knee of the phase curve.

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::special::lambert_w0;
use std::fmt;
use std::str::FromStr;

const SCAN_POINTS: usize = 10_000;
const GOLDEN_TOL: f64 = 1e-10;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Alphabet size: a symbol budget, or none at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphabetSize {
    Finite(u64),
    Infinite,
}

impl FromStr for AlphabetSize {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinite") {
            return Ok(AlphabetSize::Infinite);
        }
        match t.parse::<u64>() {
            Ok(0) => Err(Error::AlphabetTooSmall(0)),
            Ok(m) => Ok(AlphabetSize::Finite(m)),
            Err(_) => Err(Error::ParseAlphabet(s.to_string())),
        }
    }
}

impl fmt::Display for AlphabetSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphabetSize::Finite(m) => write!(f, "{m}"),
            AlphabetSize::Infinite => write!(f, "inf"),
        }
    }
}

/// Which side of the phase transition a solution sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Plateau,
    Constrained,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Plateau => write!(f, "plateau"),
            Regime::Constrained => write!(f, "constrained"),
        }
    }
}

/// Solution of the worst-case problem at a given (m, n).
#[derive(Clone, Copy, Debug)]
pub struct WorstCaseSolution {
    /// Leading constant: the maximum of alpha(w, c) over the feasible set.
    pub alpha: f64,
    /// Optimal total mass of the uniform block.
    pub w: f64,
    /// Optimal scaled block probability; each block symbol has mass c/n.
    pub c: f64,
    pub regime: Regime,
    /// Block width of the integer-rounded witness distribution.
    pub uniform_support: u64,
    /// alpha / n, the approximate worst-case mse itself.
    pub mse_leading: f64,
}

/// The limiting scaled risk of the point-mass-plus-uniform family.
pub fn objective_alpha(w: f64, c: f64) -> f64 {
    let e = (-c).exp();
    w * (1.0 + c) * e - (w * e) * (w * e)
}

fn golden_max(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut g1 = g(x1);
    let mut g2 = g(x2);
    while hi - lo > GOLDEN_TOL {
        if g1 < g2 {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + INV_PHI * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - INV_PHI * (hi - lo);
            g1 = g(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Maximize the worst-case scaled risk for sample size n on an alphabet of
/// size m. Needs n >= 2 and m >= 2: below that the head-plus-block family
/// does not fit and the asymptotics are meaningless.
pub fn solve_worst_case(m: AlphabetSize, n: u64) -> Result<WorstCaseSolution> {
    if n < 2 {
        return Err(Error::SampleSizeTooSmall { min: 2, got: n });
    }
    if let AlphabetSize::Finite(mm) = m
        && mm < 2
    {
        return Err(Error::AlphabetTooSmall(mm));
    }
    let nf = n as f64;
    let w2 = lambert_w0(2.0)?;
    let plateau = match m {
        AlphabetSize::Infinite => true,
        AlphabetSize::Finite(mm) => mm as f64 / nf >= 1.0 / w2 - 1e-12,
    };

    let (w, c, regime) = if plateau {
        (1.0, w2, Regime::Plateau)
    } else {
        let mf = match m {
            AlphabetSize::Finite(mm) => mm as f64,
            AlphabetSize::Infinite => unreachable!(),
        };
        let b = mf / nf;
        let hi = nf / mf;
        let g = |c: f64| objective_alpha(b * c, c);
        let step = hi / SCAN_POINTS as f64;
        let mut xs: Vec<f64> = (0..=SCAN_POINTS).map(|i| i as f64 * step).collect();
        xs[SCAN_POINTS] = hi;
        let gs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
        let mut best_c = hi;
        let mut best_g = gs[SCAN_POINTS];
        for i in 1..SCAN_POINTS {
            if gs[i] >= gs[i - 1] && gs[i] >= gs[i + 1] {
                let c = golden_max(g, xs[i - 1], xs[i + 1]);
                let v = g(c);
                if v > best_g {
                    best_g = v;
                    best_c = c;
                }
            }
        }
        if best_c >= hi * (1.0 - 1e-9) {
            // maximum sits at the corner w = 1, c = n/m: the uniform
            // distribution on the full alphabet
            (1.0, hi, Regime::Constrained)
        } else {
            (b * best_c, best_c, Regime::Constrained)
        }
    };

    let alpha = objective_alpha(w, c);
    // witness block width; the 1e-9 absorbs roundoff in w n / c when the
    // constraint is active and the true width is the integer m
    let uniform_support = ((w * nf / c - 1.0 + 1e-9).floor()).max(1.0) as u64;
    let total = uniform_support + u64::from(w < 1.0);
    if let AlphabetSize::Finite(mm) = m
        && total > mm
    {
        return Err(Error::SupportExceedsAlphabet {
            support: total,
            m: mm,
        });
    }
    Ok(WorstCaseSolution {
        alpha,
        w,
        c,
        regime,
        uniform_support,
        mse_leading: alpha / nf,
    })
}

/// The integer-rounded extremal distribution itself.
pub fn worst_case_distribution(m: AlphabetSize, n: u64) -> Result<Distribution> {
    let sol = solve_worst_case(m, n)?;
    Distribution::dirac_uniform(sol.uniform_support as usize, sol.w)
}

/// Worst-case leading constant along a sweep of ratios b = m/n, holding
/// n = n_ref and rounding m = b n_ref to the nearest integer. Returns
/// (ratio, alpha) pairs in input order.
pub fn phase_curve(ratios: &[f64], n_ref: u64) -> Result<Vec<(f64, f64)>> {
    if n_ref < 2 {
        return Err(Error::SampleSizeTooSmall { min: 2, got: n_ref });
    }
    let mut out = Vec::with_capacity(ratios.len());
    for &b in ratios {
        if !b.is_finite() || b <= 0.0 {
            return Err(Error::InvalidRatio(b));
        }
        let m = (b * n_ref as f64).round();
        if m < 1.0 {
            return Err(Error::InvalidRatio(b));
        }
        let sol = solve_worst_case(AlphabetSize::Finite(m as u64), n_ref)?;
        out.push((b, sol.alpha));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotic::mse_poissonized;

    const W2: f64 = 0.8526055020137254;

    #[test]
    fn plateau_solution_infinite_alphabet() {
        let sol = solve_worst_case(AlphabetSize::Infinite, 1000).unwrap();
        assert_eq!(sol.regime, Regime::Plateau);
        assert_eq!(sol.w, 1.0);
        assert!((sol.c - W2).abs() < 1e-15);
        assert!((sol.alpha - (W2 * W2 + 2.0 * W2) / 4.0).abs() < 1e-15);
        assert!((sol.alpha - 0.608036786522882).abs() < 1e-14);
        assert_eq!(sol.uniform_support, 1171);
        assert!((sol.mse_leading - sol.alpha / 1000.0).abs() < 1e-18);
    }

    #[test]
    fn plateau_threshold_finite() {
        // 1/W(2) = 1.17287..., so at n = 1000 the knee is between 1172 and 1173
        let below = solve_worst_case(AlphabetSize::Finite(1172), 1000).unwrap();
        assert_eq!(below.regime, Regime::Constrained);
        let above = solve_worst_case(AlphabetSize::Finite(1173), 1000).unwrap();
        assert_eq!(above.regime, Regime::Plateau);
        assert!(below.alpha <= above.alpha);
        assert!(above.alpha - below.alpha < 1e-4);
    }

    #[test]
    fn corner_regime_full_uniform() {
        // b = 1 lies between the interior regime and the plateau: the
        // optimum is the uniform distribution, w = 1 at the corner c = n/m
        let sol = solve_worst_case(AlphabetSize::Finite(100), 100).unwrap();
        assert_eq!(sol.regime, Regime::Constrained);
        assert_eq!(sol.w, 1.0);
        assert_eq!(sol.c, 1.0);
        let want = 2.0 / std::f64::consts::E - (-2.0f64).exp();
        assert!((sol.alpha - want).abs() < 1e-12);
    }

    #[test]
    fn interior_regime_reference_point() {
        let sol = solve_worst_case(AlphabetSize::Finite(50), 100).unwrap();
        assert_eq!(sol.regime, Regime::Constrained);
        // head constraint active: w = (m/n) c exactly as computed
        assert_eq!(sol.w, 0.5 * sol.c);
        assert!(sol.w < 1.0);
        assert!((sol.c - 1.712490).abs() < 1e-4, "c={}", sol.c);
        assert!((sol.alpha - 0.3951620947296217).abs() < 1e-9);
    }

    #[test]
    fn solver_beats_feasible_grid() {
        // one-dimensional certificate along the active constraint
        let sol = solve_worst_case(AlphabetSize::Finite(50), 100).unwrap();
        let hi = 2.0;
        let mut grid_max = f64::NEG_INFINITY;
        for i in 0..=2000 {
            let c = hi * i as f64 / 2000.0;
            grid_max = grid_max.max(objective_alpha(0.5 * c, c));
        }
        assert!(grid_max <= sol.alpha + 1e-9);
        assert!(sol.alpha <= grid_max + 1e-5);
    }

    #[test]
    fn alpha_monotone_in_alphabet_size() {
        let n = 300;
        let plateau = solve_worst_case(AlphabetSize::Infinite, n).unwrap().alpha;
        let mut prev = 0.0;
        for m in (2..=900).step_by(7) {
            let a = solve_worst_case(AlphabetSize::Finite(m), n).unwrap().alpha;
            assert!(a >= prev - 1e-12, "m={m} a={a} prev={prev}");
            assert!(a <= plateau + 1e-12, "m={m}");
            prev = a;
        }
        assert!((prev - plateau).abs() < 1e-12, "plateau not reached");
    }

    #[test]
    fn continuity_near_transition() {
        // n/W(2) = 1172.87...: the regime flips between m = 1172 and 1173,
        // yet the value is continuous there (the kink is in the maximizer)
        let plateau = solve_worst_case(AlphabetSize::Infinite, 1000).unwrap().alpha;
        let mut prev = 0.0;
        for m in 1165..=1180u64 {
            let a = solve_worst_case(AlphabetSize::Finite(m), 1000).unwrap().alpha;
            assert!(a >= prev - 1e-12, "m={m}");
            assert!(a <= plateau + 1e-15, "m={m}");
            if m >= 1173 {
                assert_eq!(a, plateau, "m={m}");
            }
            if m == 1172 {
                assert!(plateau - a <= 1e-6, "jump at the transition: {}", plateau - a);
            }
            prev = a;
        }
    }

    #[test]
    fn witness_distribution_shapes() {
        let d = worst_case_distribution(AlphabetSize::Infinite, 1000).unwrap();
        assert_eq!(d.support_size(), 1171);
        assert!((d.probs()[0] - 1.0 / 1171.0).abs() < 1e-18);

        let d = worst_case_distribution(AlphabetSize::Finite(200), 1000).unwrap();
        assert_eq!(d.support_size(), 200);
        let sol = solve_worst_case(AlphabetSize::Finite(200), 1000).unwrap();
        assert_eq!(sol.uniform_support, 199);
        // heavy symbol carries what the block leaves over
        assert!((d.probs()[199] - (1.0 - sol.w)).abs() < 1e-15);

        // the rounded witness nearly attains the solver value
        let n = 1000u64;
        let scaled = n as f64 * mse_poissonized(&d, n).unwrap();
        assert!(
            scaled >= sol.alpha - 10.0 / n as f64,
            "scaled={scaled} alpha={}",
            sol.alpha
        );
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(matches!(
            solve_worst_case(AlphabetSize::Finite(1), 100),
            Err(Error::AlphabetTooSmall(1))
        ));
        assert!(matches!(
            solve_worst_case(AlphabetSize::Finite(0), 100),
            Err(Error::AlphabetTooSmall(0))
        ));
        assert!(matches!(
            solve_worst_case(AlphabetSize::Infinite, 1),
            Err(Error::SampleSizeTooSmall { min: 2, got: 1 })
        ));
        assert!(matches!(
            phase_curve(&[1.0], 1),
            Err(Error::SampleSizeTooSmall { .. })
        ));
        // smallest legal corner: block of one plus the atom
        let sol = solve_worst_case(AlphabetSize::Finite(2), 100).unwrap();
        assert_eq!(sol.uniform_support, 1);
        assert!(sol.w < 1.0);
    }

    #[test]
    fn phase_curve_points() {
        let pts = phase_curve(&[0.5, 1.0, 1.5], 1000).unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[0].0, 0.5);
        assert!(pts[0].1 < pts[1].1 && pts[1].1 < pts[2].1);
        let plateau = solve_worst_case(AlphabetSize::Infinite, 1000).unwrap().alpha;
        assert_eq!(pts[2].1, plateau);

        assert!(matches!(
            phase_curve(&[0.5, 0.0], 1000),
            Err(Error::InvalidRatio(_))
        ));
        assert!(matches!(
            phase_curve(&[-1.0], 1000),
            Err(Error::InvalidRatio(_))
        ));
        assert!(matches!(
            phase_curve(&[f64::NAN], 1000),
            Err(Error::InvalidRatio(_))
        ));
        assert!(matches!(
            phase_curve(&[1e-9], 1000),
            Err(Error::InvalidRatio(_))
        ));
    }

    #[test]
    fn alphabet_size_parsing() {
        assert_eq!("inf".parse::<AlphabetSize>().unwrap(), AlphabetSize::Infinite);
        assert_eq!("INF".parse::<AlphabetSize>().unwrap(), AlphabetSize::Infinite);
        assert_eq!(
            " infinite ".parse::<AlphabetSize>().unwrap(),
            AlphabetSize::Infinite
        );
        assert_eq!(
            "1000".parse::<AlphabetSize>().unwrap(),
            AlphabetSize::Finite(1000)
        );
        assert!(matches!(
            "0".parse::<AlphabetSize>(),
            Err(Error::AlphabetTooSmall(0))
        ));
        assert!(matches!(
            "-3".parse::<AlphabetSize>(),
            Err(Error::ParseAlphabet(_))
        ));
        assert!(matches!(
            "many".parse::<AlphabetSize>(),
            Err(Error::ParseAlphabet(_))
        ));
        assert_eq!(AlphabetSize::Finite(42).to_string(), "42");
        assert_eq!(AlphabetSize::Infinite.to_string(), "inf");
    }
}
