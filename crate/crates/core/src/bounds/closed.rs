//! Explicit upper bounds on character sums and the lower bound on the
//! number of primitive elements in a hyperplane-avoiding set.

use serde::Serialize;

use super::nt;
use crate::error::{Error, Result};
use crate::real::Real;

fn require_even_r(r: u32) -> Result<()> {
    if r == 0 || r % 2 == 1 {
        return Err(Error::DomainError(format!("r must be positive and even, got {r}")));
    }
    Ok(())
}

fn require_q(q: u64, min: u64) -> Result<()> {
    if q < min {
        return Err(Error::DomainError(format!("q must be at least {min}, got {q}")));
    }
    Ok(())
}

fn pow_ratio<R: Real>(base: u64, num: i64, den: i64) -> R {
    R::from_count(base).powf(R::ratio(num, den))
}

/// `(rD − 1)q^{1/2}`: sums over the base field.
pub fn bound_lemma21<R: Real>(q: u64, r: u32, d: u64) -> R {
    (R::from_count(r as u64 * d) - R::one()) * R::from_count(q).sqrt()
}

/// `(2rD − 1)q^{1/2}`: shifted correlation sums over the base field.
pub fn bound_cor22<R: Real>(q: u64, r: u32, d: u64) -> R {
    (R::from_count(2 * r as u64 * d) - R::one()) * R::from_count(q).sqrt()
}

/// `(4D − 1)q^{r/4}`: shifted correlation sums over `F_{q^{r/2}}`.
pub fn bound_cor24<R: Real>(q: u64, r: u32, d: u64) -> R {
    (R::from_count(4 * d) - R::one()) * pow_ratio::<R>(q, r as i64, 4)
}

/// `2D²·#W`: the bad-pair budget.
pub fn bad_pair_budget(d: u64, w_size: u64) -> u64 {
    2 * d * d * w_size
}

/// `(#G_A)^{1/2} q^{r/8} (Π_{i>r/2} #A_i · (4D − 1) + 2D² q^{r/4})^{1/2}`.
pub fn bound_thm31<R: Real>(q: u64, r: u32, upper_product: R, ga_size: R, d: u64) -> Result<R> {
    require_even_r(r)?;
    require_q(q, 2)?;
    if d == 0 || upper_product <= R::zero() || ga_size <= R::zero() {
        return Err(Error::DomainError("counts and D must be positive".into()));
    }
    let d_r = R::from_count(d);
    let inner = upper_product * (R::lit(4.0) * d_r - R::one())
        + R::lit(2.0) * d_r * d_r * pow_ratio::<R>(q, r as i64, 4);
    Ok(ga_size.sqrt() * pow_ratio::<R>(q, r as i64, 8) * inner.sqrt())
}

/// `δ = 3/4 + ln 3 / (8 ln 2)`.
pub fn cor32_delta<R: Real>() -> R {
    R::ratio(3, 4) + R::lit(3.0).ln() / (R::lit(8.0) * R::LN_2())
}

/// Smallest `r` bound in `r > 4 ln(2D²)/ln(4/3)`.
pub fn cor32_r_threshold<R: Real>(d: u64) -> R {
    let d_r = R::from_count(d);
    R::lit(4.0) * (R::lit(2.0) * d_r * d_r).ln() / R::ratio(4, 3).ln()
}

/// `2√D · 2^{δr}` for `q = 3`, `#A_i = 2`.
pub fn bound_cor32<R: Real>(d: u64, r: u32) -> Result<R> {
    require_even_r(r)?;
    if d == 0 {
        return Err(Error::DomainError("D must be positive".into()));
    }
    let limit = cor32_r_threshold::<R>(d);
    if R::from_count(r as u64) <= limit {
        return Err(Error::PreconditionROutOfRange {
            r,
            reason: format!("need r > 4 ln(2D^2)/ln(4/3) = {limit}"),
        });
    }
    let delta = cor32_delta::<R>();
    Ok(R::lit(2.0) * R::from_count(d).sqrt() * (delta * R::from_count(r as u64)).exp2())
}

/// `(q−1)^{3r/4} q^{r/8} (3 + 2q^{r/4}/(q−1)^{r/2})^{1/2}`: the theorem
/// bound for `f = X` on hyperplane-avoiding sets.
pub fn bound_eq32_sharp<R: Real>(q: u64, r: u32) -> Result<R> {
    require_even_r(r)?;
    require_q(q, 3)?;
    let tail = R::lit(3.0) + R::lit(2.0) * pow_ratio::<R>(q, r as i64, 4) / pow_ratio::<R>(q - 1, r as i64, 2);
    Ok(pow_ratio::<R>(q - 1, 3 * r as i64, 4) * pow_ratio::<R>(q, r as i64, 8) * tail.sqrt())
}

/// `2(q−1)^{3r/4} q^{r/8}`, valid for `q ≥ 3`, even `r ≥ 10`.
pub fn bound_eq32<R: Real>(q: u64, r: u32) -> Result<R> {
    require_even_r(r)?;
    require_q(q, 3)?;
    if r < 10 {
        return Err(Error::DomainError(format!("needs r >= 10, got {r}")));
    }
    Ok(R::lit(2.0) * pow_ratio::<R>(q - 1, 3 * r as i64, 4) * pow_ratio::<R>(q, r as i64, 8))
}

/// Whether `2q^{r/4} < (q−1)^{r/2}`, the step from the sharp form to
/// [`bound_eq32`].
pub fn eq32_precondition<R: Real>(q: u64, r: u32) -> bool {
    R::lit(2.0) * pow_ratio::<R>(q, r as i64, 4) < pow_ratio::<R>(q - 1, r as i64, 2)
}

/// `√3 (q−1)^{r/2} q^{⌈3r/4⌉/2}`.
pub fn bound_lem34<R: Real>(q: u64, r: u32) -> Result<R> {
    require_q(q, 3)?;
    if r == 0 {
        return Err(Error::DomainError("r must be positive".into()));
    }
    let ceil = (3 * r as u64).div_ceil(4);
    Ok(R::lit(3.0).sqrt() * pow_ratio::<R>(q - 1, r as i64, 2) * pow_ratio::<R>(q, ceil as i64, 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WMode {
    /// `W(q^r − 1)` from the factorisation.
    ExactW,
    /// `W(q^r − 1) < (q^r)^{0.96/ln ln q^r}`.
    Lemma36W,
}

/// Sign and log-magnitude of the primitive-count lower bound
/// `φ(n)/n · (q−1)^{3r/4} ((q−1)^{r/4} − 2q^{r/8} W)` with `n = q^r − 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thm35Bound<R> {
    pub mode: WMode,
    /// `-1`, `0` or `1`; a nonpositive bound is vacuous.
    pub sign: i8,
    /// `ln |(q−1)^{3r/4} ((q−1)^{r/4} − 2q^{r/8} W)|`.
    pub ln_abs_core: R,
    pub ln_w: R,
    /// `φ(n)/n`, known only in exact mode.
    pub phi_ratio: Option<R>,
}

impl<R: Real> Thm35Bound<R> {
    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }

    /// The bound itself when `φ(n)/n` is known.
    pub fn value(&self) -> Option<R> {
        let sign = R::from_i64(self.sign as i64).unwrap();
        self.phi_ratio.map(|ratio| sign * ratio * self.ln_abs_core.exp())
    }
}

pub fn lower_bound_thm35<R: Real>(q: u64, r: u32, mode: WMode) -> Result<Thm35Bound<R>> {
    require_even_r(r)?;
    require_q(q, 3)?;
    let ln_q = R::from_count(q).ln();
    let ln_q1 = R::from_count(q - 1).ln();
    let r_r = R::from_count(r as u64);
    let (ln_w, phi_ratio) = match mode {
        WMode::ExactW => {
            let n = (q as u128)
                .checked_pow(r)
                .filter(|&t| t - 1 <= nt::FACTOR_LIMIT as u128)
                .ok_or(Error::FactorizationTooLarge(
                    (q as u128).checked_pow(r).map_or(u128::MAX, |t| t - 1),
                ))?
                - 1;
            let fact = nt::factorize(n as u64)?;
            (
                R::from_count(fact.squarefree_divisor_count()).ln(),
                Some(R::from_count(fact.euler_phi()) / R::from_count(n as u64)),
            )
        }
        WMode::Lemma36W => (nt::lemma36_ln_bound(r_r * ln_q), None),
    };
    let ln_a = r_r / R::lit(4.0) * ln_q1;
    let ln_b = R::LN_2() + r_r / R::lit(8.0) * ln_q + ln_w;
    let (sign, hi, lo) = if ln_a > ln_b {
        (1, ln_a, ln_b)
    } else if ln_a < ln_b {
        (-1, ln_b, ln_a)
    } else {
        (0, ln_a, ln_b)
    };
    let ln_diff = if sign == 0 {
        R::neg_infinity()
    } else {
        hi + (-(lo - hi).exp()).ln_1p()
    };
    Ok(Thm35Bound {
        mode,
        sign,
        ln_abs_core: R::lit(3.0) * r_r / R::lit(4.0) * ln_q1 + ln_diff,
        ln_w,
        phi_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Extended;

    #[test]
    fn delta_constant() {
        assert!((cor32_delta::<f64>() - 0.94812).abs() < 1e-5);
        let ext: Extended = cor32_delta();
        assert!((ext.to_f64_lossy() - cor32_delta::<f64>()).abs() < 1e-15);
    }

    #[test]
    fn cor32_examples() {
        let delta = cor32_delta::<f64>();
        // 4 ln 2 / ln(4/3) = 9.64, so D = 1 needs r >= 10.
        assert!(bound_cor32::<f64>(1, 8).is_err());
        let v = bound_cor32::<f64>(1, 10).unwrap();
        assert!((v - 2.0 * (10.0 * delta).exp2()).abs() < 1e-9);
        let limit = 4.0 * 8f64.ln() / (4f64 / 3.0).ln();
        let r = limit.floor() as u32;
        let r = r - r % 2;
        assert!(matches!(bound_cor32::<f64>(2, r), Err(Error::PreconditionROutOfRange { .. })));
        assert!(bound_cor32::<f64>(2, r + 2).is_ok());
    }

    #[test]
    fn thm31_substitution() {
        for (q, r) in [(3u64, 4u32), (2, 8), (5, 2)] {
            let upper = 1.0;
            let v = bound_thm31::<f64>(q, r, upper, 1.0, 1).unwrap();
            let q = q as f64;
            let expect = q.powf(r as f64 / 8.0) * (3.0 + 2.0 * q.powf(r as f64 / 4.0)).sqrt();
            assert!((v - expect).abs() <= 1e-12 * expect);
        }
        let a = bound_thm31::<f64>(3, 4, 4.0, 16.0, 1).unwrap();
        let b = bound_thm31::<f64>(3, 4, 4.0, 16.0, 2).unwrap();
        assert!(b > a);
        assert!(bound_thm31::<f64>(3, 3, 4.0, 16.0, 1).is_err());
    }

    #[test]
    fn eq32_and_lem34_examples() {
        let eq = bound_eq32::<f64>(3, 10).unwrap();
        assert!((eq - 2.0 * 2f64.powf(7.5) * 3f64.powf(1.25)).abs() < 1e-9);
        let lem = bound_lem34::<f64>(3, 10).unwrap();
        assert!((lem - 3f64.sqrt() * 32.0 * 81.0).abs() < 1e-9);
        assert!(eq32_precondition::<f64>(3, 10));
        assert!(!eq32_precondition::<f64>(3, 8));
        assert!(bound_eq32::<f64>(3, 8).is_err());
        assert!(bound_eq32_sharp::<f64>(3, 10).unwrap() < eq);
    }

    #[test]
    fn thm35_small_field() {
        // n = 80, W = 4, φ = 32: 32/80 · 2^3 · (2 − 2·3^{1/2}·4) < 0, vacuous
        let b = lower_bound_thm35::<f64>(3, 4, WMode::ExactW).unwrap();
        assert_eq!(b.sign, -1);
        assert!(!b.is_positive());
        let expect = 32.0 / 80.0 * 8.0 * (2.0 - 8.0 * 3f64.sqrt());
        assert!((b.value().unwrap() - expect).abs() < 1e-9);
        assert!((b.ln_w - 4f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn thm35_exact_mode_rejects_huge_n() {
        assert!(matches!(
            lower_bound_thm35::<f64>(3, 60, WMode::ExactW),
            Err(Error::FactorizationTooLarge(_))
        ));
        assert!(lower_bound_thm35::<f64>(3, 60, WMode::Lemma36W).is_ok());
    }
}
