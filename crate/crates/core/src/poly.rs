//! Dense univariate polynomials over `F_{q^r}`.
//!
//! Every operation borrows the [`FieldCtx`] it works in; a `Poly` is just a
//! trimmed coefficient vector, low degree first.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elt) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `X`.
    pub fn x() -> Self {
        Poly::new(vec![Elt::ZERO, Elt::ONE])
    }

    /// `Π (X − root)` over the given roots, repeated roots allowed.
    pub fn from_roots(ctx: &FieldCtx, roots: &[Elt]) -> Self {
        roots.iter().fold(Poly::constant(Elt::ONE), |acc, &a| {
            acc.mul(ctx, &Poly::new(vec![ctx.neg(a), Elt::ONE]))
        })
    }

    /// Parses comma-separated packed coefficients, low degree first (`"0,1"` is `X`).
    pub fn parse(ctx: &FieldCtx, text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))?;
                ctx.check(Elt(v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    }

    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.0.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Elt> {
        self.coeffs.last().copied()
    }

    /// Horner evaluation.
    pub fn eval(&self, ctx: &FieldCtx, x: Elt) -> Elt {
        self.coeffs
            .iter()
            .rev()
            .fold(Elt::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(Elt::ZERO);
                    let b = other.coeffs.get(i).copied().unwrap_or(Elt::ZERO);
                    ctx.add(a, b)
                })
                .collect(),
        )
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Elt) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elt::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, ctx: &FieldCtx, e: u32) -> Poly {
        (0..e).fold(Poly::constant(Elt::ONE), |acc, _| acc.mul(ctx, self))
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| ctx.mul(ctx.scalar(i as u64), c))
                .collect(),
        )
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, ctx: &FieldCtx, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = ctx.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        let qlen = self.coeffs.len().saturating_sub(dd);
        let mut quot = vec![Elt::ZERO; qlen];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let f = ctx.mul(c, lead_inv);
            quot[top - dd] = f;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = ctx.sub(rem[idx], ctx.mul(f, dc));
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(ctx, ctx.inv(lead)?))
    }

    /// Monic gcd via Euclid, normalising at every step.
    pub fn gcd(&self, ctx: &FieldCtx, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = if self.is_zero() { Poly::zero() } else { self.monic(ctx)? };
        let mut b = if other.is_zero() { Poly::zero() } else { other.monic(ctx)? };
        while !b.is_zero() {
            let (_, r) = a.div_rem(ctx, &b)?;
            a = b;
            b = if r.is_zero() { r } else { r.monic(ctx)? };
        }
        a.monic(ctx)
    }

    /// `f(X + w)`.
    pub fn shift(&self, ctx: &FieldCtx, w: Elt) -> Poly {
        let x_plus_w = Poly::new(vec![w, Elt::ONE]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, &c| {
            acc.mul(ctx, &x_plus_w).add(ctx, &Poly::constant(c))
        })
    }

    /// Degree of the largest squarefree divisor, i.e. the number of distinct
    /// roots in a splitting field.
    pub fn squarefree_degree(&self, ctx: &FieldCtx) -> Result<usize> {
        match self.degree() {
            None => Err(Error::ZeroPolynomial),
            Some(0) => Err(Error::ConstantPolynomial),
            Some(_) => radical_degree(ctx, self),
        }
    }

    /// Roots lying in `F_{q^r}` with multiplicities, ascending by packed value.
    pub fn roots_in_field(&self, ctx: &FieldCtx) -> Result<Vec<(Elt, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        for x in ctx.elements() {
            if !self.eval(ctx, x).is_zero() {
                continue;
            }
            let linear = Poly::new(vec![ctx.neg(x), Elt::ONE]);
            let mut rest = self.clone();
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem(ctx, &linear)?;
                if !r.is_zero() {
                    break;
                }
                mult += 1;
                rest = q;
            }
            out.push((x, mult));
        }
        Ok(out)
    }

    /// Whether the roots in the field account for the whole degree.
    pub fn splits(&self, ctx: &FieldCtx) -> Result<bool> {
        let total: u32 = self.roots_in_field(ctx)?.iter().map(|&(_, m)| m).sum();
        Ok(Some(total as usize) == self.degree())
    }

    /// Smallest root of multiplicity one, if any.
    pub fn simple_root(&self, ctx: &FieldCtx) -> Result<Option<Elt>> {
        Ok(self
            .roots_in_field(ctx)?
            .into_iter()
            .find(|&(_, m)| m == 1)
            .map(|(x, _)| x))
    }

    /// Whether a root of `f(X + w1)` and a root of `f(X + w2)` are conjugate
    /// over `F_{q^d}`, i.e. `ρ2 = ρ1^{(q^d)^j}` for some `0 ≤ j < r/d`.
    ///
    /// Defined only for `f` split over `F_{q^r}`.
    pub fn shares_conjugated_roots(&self, ctx: &FieldCtx, w1: Elt, w2: Elt, d: u32) -> Result<bool> {
        let roots = self.roots_in_field(ctx)?;
        let total: u32 = roots.iter().map(|&(_, m)| m).sum();
        if Some(total as usize) != self.degree() {
            return Err(Error::NonSplittingPolynomial);
        }
        if d == 0 || ctx.r() % d != 0 {
            return Err(Error::InvalidDivisor { d, r: ctx.r() });
        }
        let first: Vec<Elt> = roots.iter().map(|&(x, _)| ctx.sub(x, w1)).collect();
        let second: BTreeSet<Elt> = roots.iter().map(|&(x, _)| ctx.sub(x, w2)).collect();
        let orbit_len = (ctx.r() / d) as u64;
        for &rho in &first {
            for j in 0..orbit_len {
                if second.contains(&ctx.frobenius(rho, d, j)?) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

// Characteristic-p aware radical degree: f / gcd(f, f') collects the
// irreducible factors whose multiplicity is prime to p; what remains after
// stripping them is a p-th power and is handled by recursion on its root.
fn radical_degree(ctx: &FieldCtx, f: &Poly) -> Result<usize> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    let df = f.derivative(ctx);
    if df.is_zero() {
        return radical_degree(ctx, &pth_root(ctx, f));
    }
    let g = f.gcd(ctx, &df)?;
    let (w, _) = f.div_rem(ctx, &g)?;
    let mut rest = g;
    loop {
        let common = rest.gcd(ctx, &w)?;
        if common.degree() == Some(0) {
            break;
        }
        rest = rest.div_rem(ctx, &common)?.0;
    }
    let tail = if rest.degree().unwrap_or(0) == 0 {
        0
    } else {
        radical_degree(ctx, &pth_root(ctx, &rest))?
    };
    Ok(w.degree().unwrap_or(0) + tail)
}

// For f = Σ c_{ip} X^{ip}, returns h with h^p = f: coefficients c_{ip}^{1/p}.
fn pth_root(ctx: &FieldCtx, f: &Poly) -> Poly {
    let p = ctx.p() as usize;
    let degree = ctx.params().degree() as u32;
    // c^{1/p} = c^{p^{degree − 1}}
    let root_exp = ctx.p().pow(degree - 1);
    Poly::new(
        f.coeffs
            .iter()
            .step_by(p)
            .map(|&c| ctx.pow(c, root_exp))
            .collect(),
    )
}
