//! The two subset families: restricted-coordinate sets `G_A` and
//! `s`-sparse sets `G_s`, both relative to the adapted basis.
//!
//! Coordinates are base-field digits (indices into [`FieldCtx::base_field`]);
//! digit 0 is always the zero element. Every stream is lazy and runs in
//! lexicographic order with the first coordinate varying slowest.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};

/// `A_1..A_r`, each a nonempty set of base-field digits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RestrictedFamily {
    sets: Vec<Vec<u32>>,
}

impl RestrictedFamily {
    pub fn new(ctx: &FieldCtx, sets: Vec<Vec<u32>>) -> Result<Self> {
        if sets.len() != ctx.r() as usize {
            return Err(Error::InvalidFamily(format!(
                "expected {} coordinate sets, got {}",
                ctx.r(),
                sets.len()
            )));
        }
        let q = ctx.q();
        let mut normalised = Vec::with_capacity(sets.len());
        for (i, mut set) in sets.into_iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptyCoordinateSet(i + 1));
            }
            if let Some(&bad) = set.iter().find(|&&d| d as u64 >= q) {
                return Err(Error::InvalidFamily(format!(
                    "digit {bad} in A_{} is not below q = {q}",
                    i + 1
                )));
            }
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidFamily(format!("A_{} repeats a digit", i + 1)));
            }
            normalised.push(set);
        }
        Ok(RestrictedFamily { sets: normalised })
    }

    /// Every `A_i = F_q`.
    pub fn whole_field(ctx: &FieldCtx) -> Self {
        let all: Vec<u32> = (0..ctx.q() as u32).collect();
        RestrictedFamily {
            sets: vec![all; ctx.r() as usize],
        }
    }

    /// `A_i = F_q ∖ {c_i}`. For `q = 2` each set is a single digit.
    pub fn hyperplane_avoiding(ctx: &FieldCtx, avoid: &[u32]) -> Result<Self> {
        let q = ctx.q() as u32;
        let sets = avoid
            .iter()
            .map(|&c| (0..q).filter(|&d| d != c).collect())
            .collect();
        if let Some(&bad) = avoid.iter().find(|&&c| c >= q) {
            return Err(Error::InvalidFamily(format!("avoided digit {bad} is not below q = {q}")));
        }
        RestrictedFamily::new(ctx, sets)
    }

    /// Parses `"A_1;A_2;…;A_r"` where each part is a comma list of digits,
    /// `*` for all of `F_q`, or `!c` for `F_q ∖ {c}`.
    pub fn parse(ctx: &FieldCtx, spec: &str) -> Result<Self> {
        let q = ctx.q() as u32;
        let sets = spec
            .split(';')
            .map(|part| {
                let part = part.trim();
                if part == "*" {
                    return Ok((0..q).collect());
                }
                if let Some(rest) = part.strip_prefix('!') {
                    let c = parse_digit(rest)?;
                    if c >= q {
                        return Err(Error::InvalidFamily(format!("avoided digit {c} is not below q = {q}")));
                    }
                    return Ok((0..q).filter(|&d| d != c).collect());
                }
                if part.is_empty() {
                    return Ok(Vec::new());
                }
                part.split(',').map(parse_digit).collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        RestrictedFamily::new(ctx, sets)
    }

    pub fn to_spec_string(&self) -> String {
        self.sets
            .iter()
            .map(|s| s.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    pub fn r(&self) -> usize {
        self.sets.len()
    }

    /// `#G_A = Π #A_i`.
    pub fn size(&self) -> u64 {
        self.sets.iter().map(|s| s.len() as u64).product()
    }

    /// `#A_i` for `i = r/2+1..r`.
    pub fn upper_sizes(&self) -> Vec<u64> {
        let half = self.sets.len() / 2;
        self.sets[half..].iter().map(|s| s.len() as u64).collect()
    }

    pub fn contains_zero(&self) -> bool {
        self.sets.iter().all(|s| s.contains(&0))
    }

    /// Whether every `A_i` has exactly `q − 1` elements.
    pub fn is_hyperplane_avoiding(&self, q: u64) -> bool {
        self.sets.iter().all(|s| s.len() as u64 + 1 == q)
    }

    /// Disjoint sub-families obtained by fixing the first coordinate; their
    /// union is this family.
    pub fn split_first(&self) -> Vec<RestrictedFamily> {
        self.sets[0]
            .iter()
            .map(|&d| {
                let mut sets = self.sets.clone();
                sets[0] = vec![d];
                RestrictedFamily { sets }
            })
            .collect()
    }

    fn check_ctx(&self, ctx: &FieldCtx) -> Result<()> {
        if self.sets.len() != ctx.r() as usize
            || self.sets.iter().flatten().any(|&d| d as u64 >= ctx.q())
        {
            return Err(Error::InconsistentContext(
                "family does not match the field context".into(),
            ));
        }
        Ok(())
    }
}

fn parse_digit(tok: &str) -> Result<u32> {
    tok.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad digit {tok:?}")))
}

/// Weight `s` with `1 ≤ s < r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SparseSpec {
    s: u32,
    r: u32,
}

impl SparseSpec {
    pub fn new(s: u32, r: u32) -> Result<Self> {
        if s == 0 || s >= r {
            return Err(Error::InvalidWeight { s, r });
        }
        Ok(SparseSpec { s, r })
    }

    pub fn for_field(ctx: &FieldCtx, s: u32) -> Result<Self> {
        SparseSpec::new(s, ctx.r())
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `ρ = min{s, r − s}/r`.
    pub fn rho(&self) -> f64 {
        self.s.min(self.r - self.s) as f64 / self.r as f64
    }

    /// `#G_s = C(r, s)·(q − 1)^s`.
    pub fn size(&self, q: u64) -> u64 {
        binomial(self.r as u64, self.s as u64) * (q - 1).pow(self.s)
    }

    fn check_ctx(&self, ctx: &FieldCtx) -> Result<()> {
        if self.r != ctx.r() {
            return Err(Error::InconsistentContext(format!(
                "sparse spec has r = {}, field has r = {}",
                self.r,
                ctx.r()
            )));
        }
        Ok(())
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of nonzero adapted-basis coordinates.
pub fn weight(ctx: &FieldCtx, x: Elt) -> u32 {
    ctx.coords(x).iter().filter(|&&d| d != 0).count() as u32
}

/// Lazy product stream over per-coordinate term lists: yields
/// `Σ_i terms[i][idx_i]` for every index tuple, last index fastest.
pub struct CoordinateProduct<'a> {
    ctx: &'a FieldCtx,
    terms: Vec<Vec<Elt>>,
    idx: Vec<usize>,
    partial: Vec<Elt>,
    done: bool,
}

impl<'a> CoordinateProduct<'a> {
    fn new(ctx: &'a FieldCtx, terms: Vec<Vec<Elt>>) -> Self {
        let done = terms.iter().any(|t| t.is_empty());
        let len = terms.len();
        let mut it = CoordinateProduct {
            ctx,
            terms,
            idx: vec![0; len],
            partial: vec![Elt::ZERO; len + 1],
            done,
        };
        if !it.done {
            it.refresh_from(0);
        }
        it
    }

    fn refresh_from(&mut self, start: usize) {
        for i in start..self.terms.len() {
            self.partial[i + 1] = self.ctx.add(self.partial[i], self.terms[i][self.idx[i]]);
        }
    }
}

impl Iterator for CoordinateProduct<'_> {
    type Item = Elt;

    fn next(&mut self) -> Option<Elt> {
        if self.done {
            return None;
        }
        let out = self.partial[self.terms.len()];
        let mut i = self.terms.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.idx[i] += 1;
            if self.idx[i] < self.terms[i].len() {
                self.refresh_from(i);
                break;
            }
            self.idx[i] = 0;
        }
        Some(out)
    }
}

fn coordinate_terms(ctx: &FieldCtx, sets: &[Vec<u32>], offset: usize) -> Vec<Vec<Elt>> {
    sets.iter()
        .enumerate()
        .map(|(i, set)| {
            let alpha = ctx.basis()[offset + i];
            set.iter()
                .map(|&d| ctx.mul(ctx.base_field()[d as usize], alpha))
                .collect()
        })
        .collect()
}

/// `G_A` as a lazy stream of exactly `#G_A` distinct elements.
pub fn enumerate_ga<'a>(ctx: &'a FieldCtx, family: &RestrictedFamily) -> Result<CoordinateProduct<'a>> {
    family.check_ctx(ctx)?;
    Ok(CoordinateProduct::new(ctx, coordinate_terms(ctx, &family.sets, 0)))
}

/// `G_A = V ⊕ W` with `V` in `F_{q^{r/2}}` (first half of the coordinates)
/// and `W` in the span of the completing basis vectors.
pub fn split_vw(ctx: &FieldCtx, family: &RestrictedFamily) -> Result<(Vec<Elt>, Vec<Elt>)> {
    family.check_ctx(ctx)?;
    let half = family.sets.len() / 2;
    let v = CoordinateProduct::new(ctx, coordinate_terms(ctx, &family.sets[..half], 0)).collect();
    let w = CoordinateProduct::new(ctx, coordinate_terms(ctx, &family.sets[half..], half)).collect();
    Ok((v, w))
}

/// Elements supported on coordinates `lo..hi` with exactly `weight` nonzero
/// coordinates; supports in lexicographic order, digits odometer-style.
pub struct FixedWeight<'a> {
    ctx: &'a FieldCtx,
    lo: usize,
    hi: usize,
    support: Vec<usize>,
    digits: Vec<u32>,
    done: bool,
}

impl<'a> FixedWeight<'a> {
    pub fn new(ctx: &'a FieldCtx, lo: usize, hi: usize, weight: usize) -> Self {
        FixedWeight {
            ctx,
            lo,
            hi,
            support: (lo..lo + weight).collect(),
            digits: vec![1; weight],
            done: lo + weight > hi || ctx.q() < 2,
        }
    }

    fn advance_support(&mut self) -> bool {
        let w = self.support.len();
        let mut i = w;
        while i > 0 {
            i -= 1;
            if self.support[i] < self.hi - (w - i) {
                self.support[i] += 1;
                for j in i + 1..w {
                    self.support[j] = self.support[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for FixedWeight<'_> {
    type Item = Elt;

    fn next(&mut self) -> Option<Elt> {
        if self.done {
            return None;
        }
        let basis = self.ctx.basis();
        let base = self.ctx.base_field();
        let out = self
            .support
            .iter()
            .zip(&self.digits)
            .fold(Elt::ZERO, |acc, (&pos, &d)| {
                self.ctx.add(acc, self.ctx.mul(base[d as usize], basis[pos]))
            });

        let q = self.ctx.q() as u32;
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.digits.iter_mut().for_each(|d| *d = 1);
                if !self.advance_support() {
                    self.done = true;
                }
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < q {
                break;
            }
            self.digits[i] = 1;
        }
        debug_assert!(self.support.iter().all(|&p| p >= self.lo));
        Some(out)
    }
}

/// `G_s` as a lazy stream of `C(r, s)·(q − 1)^s` elements.
pub fn enumerate_sparse<'a>(ctx: &'a FieldCtx, spec: &SparseSpec) -> Result<FixedWeight<'a>> {
    spec.check_ctx(ctx)?;
    Ok(FixedWeight::new(ctx, 0, ctx.r() as usize, spec.s as usize))
}

/// `(U1^{(i)}, U2^{(s−i)})`: lower-half elements of weight `i` and
/// upper-half elements of weight `s − i`.
pub fn split_sparse(ctx: &FieldCtx, spec: &SparseSpec, i: u32) -> Result<(Vec<Elt>, Vec<Elt>)> {
    spec.check_ctx(ctx)?;
    if i > spec.s {
        return Err(Error::IndexOutOfRange {
            index: i as u64,
            order: spec.s as u64 + 1,
        });
    }
    let r = ctx.r() as usize;
    let half = r / 2;
    let lower = FixedWeight::new(ctx, 0, half, i as usize).collect();
    let upper = FixedWeight::new(ctx, half, r, (spec.s - i) as usize).collect();
    Ok((lower, upper))
}
