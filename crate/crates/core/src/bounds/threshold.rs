//! Smallest even `r` for which the primitive-element criterion
//! `(2q^{0.96r/ln ln q^r})^{1/r} ≤ ((q−1)²/q)^{1/8}` holds.
//!
//! Both sides are compared after taking logarithms:
//! `(ln 2 + 0.96·r·ln q / ln(r ln q)) / r ≤ ln((q−1)²/q) / 8`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::real::Real;

/// Left side in the log domain.
pub fn threshold_lhs<R: Real>(q: u64, r: u64) -> R {
    let ln_q = R::from_count(q).ln();
    let r_r = R::from_count(r);
    (R::LN_2() + R::ratio(96, 100) * r_r * ln_q / (r_r * ln_q).ln()) / r_r
}

/// Right side in the log domain.
pub fn threshold_rhs<R: Real>(q: u64) -> R {
    let q1 = R::from_count(q - 1);
    (q1 * q1 / R::from_count(q)).ln() / R::lit(8.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdResult<R> {
    pub q: u64,
    pub r_min: u64,
    pub lhs_at_rmin: R,
    pub rhs: R,
    /// `None` when `r_min = 2`.
    pub lhs_at_rmin_minus_2: Option<R>,
    /// Worst-case rounding error of one side, estimated from `R::epsilon`.
    pub rounding_bound: R,
    /// Both crossing margins exceed ten times the rounding bound.
    pub certified: bool,
}

impl<R: Real> ThresholdResult<R> {
    /// `rhs − lhs(r_min)`, positive when the inequality holds.
    pub fn margin_at_rmin(&self) -> R {
        self.rhs - self.lhs_at_rmin
    }

    /// `lhs(r_min − 2) − rhs`, positive when the inequality fails there.
    pub fn margin_at_rmin_minus_2(&self) -> Option<R> {
        self.lhs_at_rmin_minus_2.map(|l| l - self.rhs)
    }

    pub fn report(&self) -> ThresholdReport {
        ThresholdReport {
            q: self.q,
            r_min: self.r_min,
            lhs_at_rmin: self.lhs_at_rmin.to_f64_lossy(),
            rhs: self.rhs.to_f64_lossy(),
            lhs_at_rmin_minus_2: self.lhs_at_rmin_minus_2.map(Real::to_f64_lossy),
            margin_at_rmin: self.margin_at_rmin().to_f64_lossy(),
            margin_at_rmin_minus_2: self.margin_at_rmin_minus_2().map(Real::to_f64_lossy),
            rounding_bound: self.rounding_bound.to_f64_lossy(),
            certified: self.certified,
        }
    }
}

/// Serialisable view of a [`ThresholdResult`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub q: u64,
    pub r_min: u64,
    pub lhs_at_rmin: f64,
    pub rhs: f64,
    pub lhs_at_rmin_minus_2: Option<f64>,
    pub margin_at_rmin: f64,
    pub margin_at_rmin_minus_2: Option<f64>,
    pub rounding_bound: f64,
    pub certified: bool,
}

/// Exponential bracketing then binary search over even `r`; the left side
/// decreases in `r` once `r ln q > e`, which holds from `r = 2` for `q ≥ 3`.
pub fn threshold_min_even_r<R: Real>(q: u64) -> Result<ThresholdResult<R>> {
    if q < 3 {
        return Err(Error::DomainError(format!("threshold needs q >= 3, got {q}")));
    }
    let rhs = threshold_rhs::<R>(q);
    let holds = |r: u64| threshold_lhs::<R>(q, r) <= rhs;

    let mut hi = 2u64;
    while !holds(hi) {
        hi = hi
            .checked_mul(2)
            .ok_or_else(|| Error::DomainError(format!("no crossing below 2^64 for q = {q}")))?;
    }
    let mut lo = hi / 2;
    if hi == 2 {
        lo = 0;
    }
    while hi - lo > 2 {
        let mid = (lo / 2 + hi / 2) / 2 * 2;
        let mid = if mid == lo { lo + 2 } else { mid };
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let r_min = hi;
    let lhs_at_rmin = threshold_lhs::<R>(q, r_min);
    let lhs_prev = (r_min > 2).then(|| threshold_lhs::<R>(q, r_min - 2));
    // Each side is a handful of correctly rounded operations on values of
    // size ln q; 64 ulps of the larger magnitude is a safe envelope.
    let scale = R::from_count(q).ln().max(R::one());
    let rounding_bound = R::lit(64.0) * R::epsilon() * scale;
    let ten = R::lit(10.0) * rounding_bound;
    let certified = rhs - lhs_at_rmin > ten && lhs_prev.map_or(true, |l| l - rhs > ten);
    Ok(ThresholdResult {
        q,
        r_min,
        lhs_at_rmin,
        rhs,
        lhs_at_rmin_minus_2: lhs_prev,
        rounding_bound,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Extended;

    // Linear scan oracle over even r.
    fn scan(q: u64) -> u64 {
        let rhs = threshold_rhs::<f64>(q);
        (1..).map(|k| 2 * k).find(|&r| threshold_lhs::<f64>(q, r) <= rhs).unwrap()
    }

    #[test]
    fn agrees_with_linear_scan() {
        for q in [7u64, 8, 9, 11, 13, 16] {
            let t = threshold_min_even_r::<Extended>(q).unwrap();
            assert_eq!(t.r_min, scan(q), "q = {q}");
            assert!(t.margin_at_rmin() > <Extended as Real>::lit(0.0));
            assert!(t.margin_at_rmin_minus_2().unwrap() > <Extended as Real>::lit(0.0));
            assert!(t.certified);
        }
    }

    #[test]
    fn lhs_decreasing() {
        for q in [3u64, 4, 9] {
            let mut prev = threshold_lhs::<f64>(q, 2);
            for r in (4..2000).step_by(2) {
                let cur = threshold_lhs::<f64>(q, r);
                assert!(cur < prev);
                prev = cur;
            }
        }
    }

    #[test]
    fn rejects_small_q() {
        assert!(threshold_min_even_r::<f64>(2).is_err());
    }
}
