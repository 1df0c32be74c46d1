//! Integer factorisation and the arithmetic functions built on it.
//!
//! Trial division strips small primes; whatever cofactor remains is split
//! with Brent's variant of Pollard rho and certified with a deterministic
//! Miller–Rabin test (the base set below is exact for all 64-bit inputs).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::real::Real;

/// Largest input accepted by [`factorize`].
pub const FACTOR_LIMIT: u64 = 1 << 63;

const TRIAL_BOUND: u64 = 1 << 12;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Prime factorisation of `t` as ascending `(prime, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .fold(self.n, |acc, &(p, _)| acc / p * (p - 1))
    }

    /// Möbius function; zero when a square divides `n`.
    pub fn mobius(&self) -> i8 {
        if self.factors.iter().any(|&(_, e)| e > 1) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// `W(n) = 2^ω(n)`, the number of squarefree divisors.
    pub fn squarefree_divisor_count(&self) -> u64 {
        1u64 << self.omega()
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Squarefree divisors, ascending.
    pub fn squarefree_divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for p in self.primes() {
            let len = out.len();
            for i in 0..len {
                out.push(out[i] * p);
            }
        }
        out.sort_unstable();
        out
    }
}

pub fn factorize(t: u64) -> Result<Factorization> {
    if t > FACTOR_LIMIT {
        return Err(Error::FactorizationTooLarge(t as u128));
    }
    if t == 0 {
        return Err(Error::DomainError("cannot factor 0".into()));
    }
    let mut rest = t;
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d < TRIAL_BOUND && d * d <= rest {
        while rest % d == 0 {
            primes.push(d);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        split_into(rest, &mut primes);
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { n: t, factors })
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_into(d, out);
    split_into(n / d, out);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's cycle detection with batched gcds. `n` is odd and composite.
fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        const M: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..M.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += M;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard rho exhausted its constants")
}

pub fn euler_phi(t: u64) -> Result<u64> {
    Ok(factorize(t)?.euler_phi())
}

pub fn mobius(t: u64) -> Result<i8> {
    Ok(factorize(t)?.mobius())
}

pub fn squarefree_divisor_count(t: u64) -> Result<u64> {
    Ok(factorize(t)?.squarefree_divisor_count())
}

/// `t^{0.96 / ln ln t}`, the upper bound on `W(t − 1)` valid for `t ≥ 3`.
pub fn lemma36_bound<R: Real>(t: u64) -> Result<R> {
    if t < 3 {
        return Err(Error::DomainError(format!("lemma36_bound needs t >= 3, got {t}")));
    }
    let ln_t = R::from_u64(t).unwrap().ln();
    Ok((R::ratio(96, 100) * ln_t / ln_t.ln()).exp())
}

/// Natural log of [`lemma36_bound`], usable when `t` itself overflows.
pub fn lemma36_ln_bound<R: Real>(ln_t: R) -> R {
    R::ratio(96, 100) * ln_t / ln_t.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(euler_phi(8).unwrap(), 4);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(squarefree_divisor_count(12).unwrap(), 4);
        assert_eq!(squarefree_divisor_count(80).unwrap(), 4);
        assert_eq!(euler_phi(80).unwrap(), 32);
        assert_eq!(factorize(1).unwrap().factors, vec![]);
    }

    #[test]
    fn large_semiprimes_split() {
        let p = 4_294_967_291u64; // largest 32-bit prime
        let q = 2_147_483_647u64;
        let f = factorize(p * q).unwrap();
        assert_eq!(f.factors, vec![(q, 1), (p, 1)]);
        let f = factorize(3u64.pow(38) - 1).unwrap();
        let prod: u64 = f.factors.iter().map(|&(p, e)| p.pow(e)).product();
        assert_eq!(prod, 3u64.pow(38) - 1);
        assert!(f.primes().all(is_prime));
    }

    #[test]
    fn rejects_oversized() {
        assert!(matches!(
            factorize(u64::MAX),
            Err(Error::FactorizationTooLarge(_))
        ));
    }

    #[test]
    fn squarefree_count_matches_enumeration() {
        for t in 1..=10_000u64 {
            let f = factorize(t).unwrap();
            let brute = (1..=t)
                .filter(|d| t % d == 0 && f.primes().all(|p| d % (p * p) != 0))
                .count() as u64;
            assert_eq!(f.squarefree_divisor_count(), brute, "t = {t}");
            assert_eq!(f.squarefree_divisors().len() as u64, brute);
        }
    }

    #[test]
    fn phi_matches_gcd_count() {
        for t in 1..=2_000u64 {
            let brute = (1..=t).filter(|&a| gcd(a, t) == 1).count() as u64;
            assert_eq!(euler_phi(t).unwrap(), brute, "t = {t}");
        }
    }

    #[test]
    fn lemma36_at_81() {
        let b: f64 = lemma36_bound(81).unwrap();
        assert!(4.0 < b, "W(80) = 4 must sit below {b}");
    }
}
