//! Multiplicative characters of `F_{q^r}^*` as exponent maps.
//!
//! `χ_j(g^k) = ζ_n^{jk}` with `ζ_n = e^{2πi/n}` and `n = q^r − 1`. A character
//! of order `d` only ever produces `d`-th roots of unity, so values are kept
//! as residues mod `d` and sums as integer count vectors of length `d`.

use serde::Serialize;

use crate::bounds::nt;
use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::real::{CompensatedSum, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MulChar {
    index: u64,
    group_order: u64,
    order: u64,
}

impl MulChar {
    pub fn new(index: u64, group_order: u64) -> Result<Self> {
        if index >= group_order {
            return Err(Error::IndexOutOfRange {
                index,
                order: group_order,
            });
        }
        let order = group_order / nt::gcd(group_order, index);
        Ok(MulChar {
            index,
            group_order,
            order,
        })
    }

    pub fn of_index(ctx: &FieldCtx, index: u64) -> Result<Self> {
        MulChar::new(index, ctx.order())
    }

    pub fn trivial(group_order: u64) -> Self {
        MulChar {
            index: 0,
            group_order,
            order: 1,
        }
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    pub fn conjugate(&self) -> MulChar {
        MulChar {
            index: (self.group_order - self.index) % self.group_order,
            ..*self
        }
    }

    /// Residue `t` mod `order` with `χ(g^log) = ζ_order^t`.
    pub fn exponent_of_log(&self, log: u64) -> u64 {
        let e = (self.index as u128 * log as u128 % self.group_order as u128) as u64;
        e / (self.group_order / self.order)
    }

    /// `None` for `x = 0`, otherwise the exponent of `ζ_order`.
    pub fn eval_exponent(&self, ctx: &FieldCtx, x: Elt) -> Option<u64> {
        ctx.try_log(x).map(|l| self.exponent_of_log(l))
    }
}

/// Every character of exact order `e`; `φ(e)` of them, ascending by index.
pub fn characters_of_order(ctx: &FieldCtx, e: u64) -> Result<Vec<MulChar>> {
    let n = ctx.order();
    if e == 0 || n % e != 0 {
        return Err(Error::NonDivisorOrder { e, n });
    }
    let step = n / e;
    Ok((0..e)
        .filter(|&t| nt::gcd(t, e) == 1)
        .map(|t| MulChar::new(t * step, n).expect("index below n"))
        .collect())
}

/// Exact tally of a character sum: `counts[t]` summands equal `ζ_d^t`,
/// `zero_hits` summands had a zero argument and contribute nothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumAccumulator {
    counts: Vec<u64>,
    zero_hits: u64,
}

impl SumAccumulator {
    pub fn new(order: u64) -> Self {
        SumAccumulator {
            counts: vec![0; order as usize],
            zero_hits: 0,
        }
    }

    pub fn for_char(chi: &MulChar) -> Self {
        SumAccumulator::new(chi.order())
    }

    pub fn from_counts(counts: Vec<u64>, zero_hits: u64) -> Self {
        assert!(!counts.is_empty(), "accumulator needs order >= 1");
        SumAccumulator { counts, zero_hits }
    }

    #[inline]
    pub fn push(&mut self, value: Option<u64>) {
        match value {
            Some(t) => self.counts[t as usize] += 1,
            None => self.zero_hits += 1,
        }
    }

    pub fn merge(&mut self, other: &SumAccumulator) {
        assert_eq!(self.counts.len(), other.counts.len(), "orders must match");
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.zero_hits += other.zero_hits;
    }

    pub fn merged(mut self, other: &SumAccumulator) -> Self {
        self.merge(other);
        self
    }

    pub fn order(&self) -> u64 {
        self.counts.len() as u64
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn zero_hits(&self) -> u64 {
        self.zero_hits
    }

    pub fn nonzero_terms(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn term_count(&self) -> u64 {
        self.nonzero_terms() + self.zero_hits
    }

    /// `(Re, Im)` of `Σ counts[t]·ζ_d^t`.
    ///
    /// Exponents `t` and `d − t` are paired first, so their cosines are
    /// evaluated once and the imaginary parts cancel exactly.
    pub fn value_in<R: Real>(&self) -> (R, R) {
        let d = self.counts.len();
        let mut re = CompensatedSum::<R>::default();
        let mut im = CompensatedSum::<R>::default();
        re.add(R::from_count(self.counts[0]));
        let tau = R::TAU();
        let d_r = R::from_count(d as u64);
        for t in 1..=d / 2 {
            let u = d - t;
            let plus = if t == u {
                self.counts[t]
            } else {
                self.counts[t] + self.counts[u]
            };
            let angle = tau * R::from_count(t as u64) / d_r;
            if plus > 0 {
                re.add(R::from_count(plus) * angle.cos());
            }
            if t != u {
                let diff = self.counts[t] as i128 - self.counts[u] as i128;
                if diff != 0 {
                    im.add(R::from_i128(diff).unwrap() * angle.sin());
                }
            }
        }
        (re.value(), im.value())
    }

    pub fn value(&self) -> (f64, f64) {
        self.value_in::<f64>()
    }

    pub fn magnitude_in<R: Real>(&self) -> R {
        let (re, im) = self.value_in::<R>();
        re.hypot(im)
    }

    /// `|Σ counts[t]·ζ_d^t|`; absolute error below `1e-9 · Σ counts`.
    pub fn magnitude(&self) -> f64 {
        self.magnitude_in::<f64>()
    }
}
