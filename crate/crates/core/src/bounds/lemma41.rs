//! Exact check of `Σ_{0≤m≤γn} C(n, m) ≤ 2^{nH(γ)}` for rational `γ`.
//!
//! With `γ = a/b` in lowest terms, `2^{nH(γ)} = (b/a)^{γn} (b/(b−a))^{(1−γ)n}`,
//! so raising both sides to the power `b` gives the integer inequality
//! `S^b · a^{an} · (b−a)^{(b−a)n} ≤ b^{bn}`.

use num_bigint::BigUint;
use serde::Serialize;

use super::nt;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialTailCase {
    pub n: u32,
    pub gamma_num: u32,
    pub gamma_den: u32,
    /// `⌊γn⌋`.
    pub m_max: u32,
    /// `Σ_{m≤γn} C(n, m)`, decimal.
    pub tail_sum: String,
    pub holds: bool,
}

fn binomial_big(n: u32, k: u32) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// The case `(n, γ = num/den)` with `0 < γ < 1`.
pub fn binomial_tail_check(n: u32, num: u32, den: u32) -> Result<BinomialTailCase> {
    if num == 0 || num >= den {
        return Err(Error::DomainError(format!("need 0 < {num}/{den} < 1")));
    }
    let g = nt::gcd(num as u64, den as u64) as u32;
    let (a, b) = (num / g, den / g);
    let m_max = (a as u64 * n as u64 / b as u64) as u32;
    let tail: BigUint = (0..=m_max).map(|m| binomial_big(n, m)).sum();
    let lhs = tail.pow(b)
        * BigUint::from(a).pow(a * n)
        * BigUint::from(b - a).pow((b - a) * n);
    let rhs = BigUint::from(b).pow(b * n);
    Ok(BinomialTailCase {
        n,
        gamma_num: num,
        gamma_den: den,
        m_max,
        tail_sum: tail.to_string(),
        holds: lhs <= rhs,
    })
}

/// Every `n ≤ n_max` against `γ = k/20`, `k = 1..10`.
pub fn binomial_tail_sweep(n_max: u32) -> Result<Vec<BinomialTailCase>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 1..=10 {
            out.push(binomial_tail_check(n, k, 20)?);
        }
    }
    Ok(out)
}
