//! The tower `F_p ⊆ F_q ⊆ F_{q^{r/2}} ⊆ F_{q^r}` in one flat representation.
//!
//! `F_{q^r}` is realised as `F_p[x]/(m(x))` with `deg m = k·r`. An element is
//! packed as the integer whose base-`p` digits are its coefficients in the
//! power basis of `x`, so `0` is the zero element and every prime-field
//! constant `c` packs to `c`. Subfields are never built separately: membership
//! in `F_{q^d}` is the Frobenius fixed-point test `x^{q^d} = x`.
//!
//! Multiplication, division and powers go through discrete log tables with
//! respect to a fixed generator `g`. Addition is digitwise (xor for `p = 2`).

mod fp_poly;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::nt::{self, Factorization};
use crate::error::{Error, Result};
use fp_poly::FpPoly;

/// Upper bound on `q^r`.
pub const MAX_FIELD_SIZE: u64 = 1 << 26;

const NO_LOG: u32 = u32::MAX;

/// Packed element of `F_{q^r}`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elt(pub u32);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `p`, `k` and `r` with `q = p^k` and the top field `F_{q^r}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TowerParams {
    pub p: u64,
    pub k: u32,
    pub r: u32,
}

impl TowerParams {
    pub fn new(p: u64, k: u32, r: u32) -> Result<Self> {
        let params = TowerParams { p, k, r };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !nt::is_prime(self.p) {
            return Err(Error::NonPrime(self.p));
        }
        if self.k == 0 {
            return Err(Error::InvalidParams("k must be positive".into()));
        }
        if self.r == 0 || self.r % 2 != 0 {
            return Err(Error::InvalidParams(format!(
                "r must be a positive even integer, got {}",
                self.r
            )));
        }
        let degree = self.k as u64 * self.r as u64;
        let fits = u32::try_from(degree)
            .ok()
            .and_then(|d| self.p.checked_pow(d))
            .is_some_and(|size| size <= MAX_FIELD_SIZE);
        if !fits {
            return Err(Error::SizeCapExceeded { p: self.p, degree });
        }
        Ok(())
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.k)
    }

    /// Degree of the top field over the prime field, `k·r`.
    pub fn degree(&self) -> usize {
        (self.k * self.r) as usize
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.k * self.r)
    }
}

/// Serialisable fingerprint of a built context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldManifest {
    pub p: u64,
    pub k: u32,
    pub r: u32,
    /// Modulus coefficients, low to high, including the leading 1.
    pub modulus: Vec<u32>,
    pub generator: u32,
    pub basis: Vec<u32>,
}

/// Immutable field tower with log tables and the adapted basis.
pub struct FieldCtx {
    params: TowerParams,
    p: u32,
    q: u64,
    degree: usize,
    size: u32,
    n: u64,
    modulus: FpPoly,
    generator: Elt,
    log: Vec<u32>,
    antilog: Vec<u32>,
    order_factors: Factorization,
    basis: Vec<Elt>,
    base_field: Vec<Elt>,
    base_basis: Vec<Elt>,
    // Inverse of the matrix whose columns are the digit vectors of b_j·α_i.
    coord_solver: Vec<Vec<u32>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("params", &self.params)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .field("basis", &self.basis)
            .finish_non_exhaustive()
    }
}

impl FieldCtx {
    pub fn build(params: TowerParams) -> Result<Self> {
        params.validate()?;
        let p = params.p as u32;
        let degree = params.degree();
        let size = params.size() as u32;
        let n = size as u64 - 1;

        let modulus = find_modulus(p, degree)?;
        let order_factors = nt::factorize(n)?;
        let (generator_poly, generator) = find_generator(p, degree, &modulus, &order_factors)?;

        let (log, antilog) = build_tables(p, degree, size, &modulus, &generator_poly);

        let mut ctx = FieldCtx {
            params,
            p,
            q: params.q(),
            degree,
            size,
            n,
            modulus,
            generator,
            log,
            antilog,
            order_factors,
            basis: Vec::new(),
            base_field: Vec::new(),
            base_basis: Vec::new(),
            coord_solver: Vec::new(),
        };
        ctx.base_field = ctx.subfield_elements(1)?;
        // 1, ζ, …, ζ^{k−1} with ζ generating F_q^*.
        let zeta = ctx.exp(n / (ctx.q - 1));
        ctx.base_basis = (0..params.k as u64).map(|i| ctx.pow(zeta, i)).collect();
        ctx.basis = ctx.build_adapted_basis();
        ctx.coord_solver = ctx.build_coord_solver()?;
        Ok(ctx)
    }

    pub fn params(&self) -> TowerParams {
        self.params
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.params.r
    }

    /// `q^r`.
    pub fn size(&self) -> u64 {
        self.size as u64
    }

    /// Order of the multiplicative group, `q^r − 1`.
    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn order_factorization(&self) -> &Factorization {
        &self.order_factors
    }

    pub fn generator(&self) -> Elt {
        self.generator
    }

    /// Modulus coefficients low to high, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Adapted basis `α_1..α_r`; the first half spans `F_{q^{r/2}}`.
    pub fn basis(&self) -> &[Elt] {
        &self.basis
    }

    /// Elements of `F_q` in ascending packed order. Index = base-field digit.
    pub fn base_field(&self) -> &[Elt] {
        &self.base_field
    }

    pub fn manifest(&self) -> FieldManifest {
        FieldManifest {
            p: self.params.p,
            k: self.params.k,
            r: self.params.r,
            modulus: self.modulus.clone(),
            generator: self.generator.0,
            basis: self.basis.iter().map(|e| e.0).collect(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        (0..self.size).map(Elt)
    }

    pub fn contains(&self, x: Elt) -> bool {
        x.0 < self.size
    }

    pub fn check(&self, x: Elt) -> Result<Elt> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::InvalidElement(x.0))
        }
    }

    /// The prime-field constant `c mod p`.
    pub fn scalar(&self, c: u64) -> Elt {
        Elt((c % self.p as u64) as u32)
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if self.p == 2 {
            return Elt(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        while x != 0 || y != 0 {
            let s = x % p + y % p;
            out += (if s >= p { s - p } else { s }) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elt(out)
    }

    pub fn neg(&self, a: Elt) -> Elt {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut x = a.0;
        let (mut out, mut place) = (0u32, 1u32);
        while x != 0 {
            let d = x % p;
            out += (if d == 0 { 0 } else { p - d }) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Elt(out)
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.is_zero() || b.is_zero() {
            return Elt::ZERO;
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        let s = if s >= self.n { s - self.n } else { s };
        Elt(self.antilog[s as usize])
    }

    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a.0 as usize] as u64;
        Ok(self.exp((self.n - l) % self.n))
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        if a.is_zero() {
            return if e == 0 { Elt::ONE } else { Elt::ZERO };
        }
        let l = self.log[a.0 as usize] as u128;
        self.exp(((l * e as u128) % self.n as u128) as u64)
    }

    /// `g^e`.
    pub fn exp(&self, e: u64) -> Elt {
        Elt(self.antilog[(e % self.n) as usize])
    }

    /// Discrete logarithm to base `g`, in `[0, q^r − 1)`.
    pub fn log(&self, x: Elt) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::LogOfZero);
        }
        Ok(self.log[x.0 as usize] as u64)
    }

    /// Log lookup without the zero check; `None` for zero.
    pub fn try_log(&self, x: Elt) -> Option<u64> {
        match self.log[x.0 as usize] {
            NO_LOG => None,
            l => Some(l as u64),
        }
    }

    pub fn is_primitive(&self, x: Elt) -> bool {
        self.try_log(x).is_some_and(|l| nt::gcd(l, self.n) == 1)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: Elt) -> Result<u64> {
        let l = self.log(x)?;
        Ok(self.n / nt::gcd(l, self.n))
    }

    fn check_divisor(&self, d: u32) -> Result<()> {
        if d == 0 || self.params.r % d != 0 {
            Err(Error::InvalidDivisor { d, r: self.params.r })
        } else {
            Ok(())
        }
    }

    /// `x^{(q^d)^j}` for `d | r`.
    pub fn frobenius(&self, x: Elt, d: u32, j: u64) -> Result<Elt> {
        self.check_divisor(d)?;
        if x.is_zero() {
            return Ok(x);
        }
        let step = nt::pow_mod(self.q, d as u64, self.n);
        let e = nt::pow_mod(step, j, self.n);
        Ok(self.pow(x, e))
    }

    /// Whether `x` lies in `F_{q^d}`.
    pub fn in_subfield(&self, x: Elt, d: u32) -> Result<bool> {
        Ok(self.frobenius(x, d, 1)? == x)
    }

    /// Whether `x` generates `F_{q^r}` over `F_q` (lies in no proper subfield).
    pub fn is_defining_element(&self, x: Elt) -> bool {
        let r = self.params.r;
        (1..r)
            .filter(|d| r % d == 0)
            .all(|d| !self.in_subfield(x, d).expect("d divides r"))
    }

    /// All elements of `F_{q^d}`, ascending.
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<Elt>> {
        self.check_divisor(d)?;
        let sub_order = self.q.pow(d) - 1;
        let step = self.n / sub_order;
        let mut out: Vec<Elt> = std::iter::once(Elt::ZERO)
            .chain((0..sub_order).map(|i| self.exp(i * step)))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    fn build_adapted_basis(&self) -> Vec<Elt> {
        let half = self.params.r / 2;
        let q = self.q;
        // β = g^{(q^r−1)/(q^{r/2}−1)} generates F_{q^{r/2}}^*, so it has degree r/2 over F_q.
        let beta = self.exp(q.pow(half) + 1);
        let lower: Vec<Elt> = (0..half as u64).map(|i| self.pow(beta, i)).collect();
        let gamma = self
            .elements()
            .find(|&x| !self.in_subfield(x, half).expect("r/2 divides r"))
            .expect("F_{q^r} is strictly larger than F_{q^{r/2}}");
        let upper: Vec<Elt> = lower.iter().map(|&a| self.mul(gamma, a)).collect();
        lower.into_iter().chain(upper).collect()
    }

    fn digits(&self, x: Elt) -> Vec<u32> {
        let mut v = x.0;
        (0..self.degree)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    fn build_coord_solver(&self) -> Result<Vec<Vec<u32>>> {
        let n = self.degree;
        let k = self.params.k as usize;
        let mut columns = Vec::with_capacity(n);
        for &alpha in &self.basis {
            for &b in &self.base_basis {
                columns.push(self.digits(self.mul(b, alpha)));
            }
        }
        debug_assert_eq!(columns.len(), n);
        let matrix: Vec<Vec<u32>> = (0..n)
            .map(|row| (0..n).map(|col| columns[col][row]).collect())
            .collect();
        invert_mod_p(matrix, self.p).ok_or_else(|| {
            Error::InconsistentContext(format!(
                "adapted basis is not F_q-independent (k = {k}, r = {})",
                self.params.r
            ))
        })
    }

    /// Coordinates `(a_1..a_r)` of `x` as base-field digits (indices into
    /// [`FieldCtx::base_field`]).
    pub fn coords(&self, x: Elt) -> Vec<u32> {
        let digits = self.digits(x);
        let p = self.p as u64;
        let fp: Vec<u32> = self
            .coord_solver
            .iter()
            .map(|row| {
                (row.iter()
                    .zip(&digits)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum::<u64>()
                    % p) as u32
            })
            .collect();
        let k = self.params.k as usize;
        fp.chunks(k)
            .map(|chunk| {
                if k == 1 {
                    return chunk[0];
                }
                let a = chunk
                    .iter()
                    .zip(&self.base_basis)
                    .fold(Elt::ZERO, |acc, (&c, &b)| {
                        self.add(acc, self.mul(self.scalar(c as u64), b))
                    });
                self.base_digit(a).expect("coordinate lies in F_q")
            })
            .collect()
    }

    /// Inverse of [`FieldCtx::coords`].
    pub fn combine(&self, coords: &[u32]) -> Result<Elt> {
        if coords.len() != self.basis.len() {
            return Err(Error::InconsistentContext(format!(
                "expected {} coordinates, got {}",
                self.basis.len(),
                coords.len()
            )));
        }
        coords
            .iter()
            .zip(&self.basis)
            .try_fold(Elt::ZERO, |acc, (&digit, &alpha)| {
                let a = self.base_element(digit)?;
                Ok(self.add(acc, self.mul(a, alpha)))
            })
    }

    /// The base-field element with digit index `digit`.
    pub fn base_element(&self, digit: u32) -> Result<Elt> {
        self.base_field
            .get(digit as usize)
            .copied()
            .ok_or_else(|| Error::InvalidFamily(format!("digit {digit} exceeds q − 1 = {}", self.q - 1)))
    }

    /// Digit index of a base-field element, `None` outside `F_q`.
    pub fn base_digit(&self, x: Elt) -> Option<u32> {
        self.base_field.binary_search(&x).ok().map(|i| i as u32)
    }
}

fn find_modulus(p: u32, degree: usize) -> Result<FpPoly> {
    let count = (p as u64).pow(degree as u32);
    for tail in 0..count {
        let mut f: FpPoly = Vec::with_capacity(degree + 1);
        let mut t = tail;
        for _ in 0..degree {
            f.push((t % p as u64) as u32);
            t /= p as u64;
        }
        f.push(1);
        if fp_poly::is_irreducible(&f, p) {
            return Ok(f);
        }
    }
    Err(Error::IrreducibleSearchFailed(degree))
}

fn unpack(mut v: u64, p: u32, degree: usize) -> FpPoly {
    let mut f: FpPoly = (0..degree)
        .map(|_| {
            let d = (v % p as u64) as u32;
            v /= p as u64;
            d
        })
        .collect();
    fp_poly::trim(&mut f);
    f
}

fn find_generator(
    p: u32,
    degree: usize,
    modulus: &FpPoly,
    order: &Factorization,
) -> Result<(FpPoly, Elt)> {
    let n = order.n;
    for cand in 1..=n {
        let g = unpack(cand, p, degree);
        let primitive = order
            .primes()
            .all(|l| fp_poly::pow_mod(&g, n / l, modulus, p) != vec![1]);
        if primitive {
            return Ok((g, Elt(cand as u32)));
        }
    }
    Err(Error::InconsistentContext("no generator found".into()))
}

fn build_tables(
    p: u32,
    degree: usize,
    size: u32,
    modulus: &FpPoly,
    generator: &FpPoly,
) -> (Vec<u32>, Vec<u32>) {
    let n = size as usize - 1;
    let mut log = vec![NO_LOG; size as usize];
    let mut antilog = vec![0u32; n];
    let pw = p as u64;
    let mut cur = vec![0u32; degree];
    cur[0] = 1;
    let mut scratch = vec![0u64; degree + generator.len()];
    for (e, slot) in antilog.iter_mut().enumerate() {
        let packed = cur.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        *slot = packed;
        debug_assert_eq!(log[packed as usize], NO_LOG, "generator order too small");
        log[packed as usize] = e as u32;

        // cur ← cur · g mod m
        scratch.iter_mut().for_each(|s| *s = 0);
        for (i, &c) in cur.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &gc) in generator.iter().enumerate() {
                scratch[i + j] += c as u64 * gc as u64;
            }
        }
        for s in scratch.iter_mut() {
            *s %= pw;
        }
        for top in (degree..scratch.len()).rev() {
            let lead = scratch[top];
            if lead == 0 {
                continue;
            }
            scratch[top] = 0;
            for (i, &mc) in modulus.iter().enumerate().take(degree) {
                let idx = top - degree + i;
                scratch[idx] = (scratch[idx] + (pw - lead) * mc as u64) % pw;
            }
        }
        for (c, s) in cur.iter_mut().zip(&scratch) {
            *c = *s as u32;
        }
    }
    (log, antilog)
}

/// Gauss–Jordan inverse over `F_p`; `None` when singular.
fn invert_mod_p(mut a: Vec<Vec<u32>>, p: u32) -> Option<Vec<Vec<u32>>> {
    let n = a.len();
    let pw = p as u64;
    let mut inv: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let s = fp_poly::inv_mod(a[col][col], p) as u64;
        for j in 0..n {
            a[col][j] = ((a[col][j] as u64 * s) % pw) as u32;
            inv[col][j] = ((inv[col][j] as u64 * s) % pw) as u32;
        }
        for row in 0..n {
            if row == col || a[row][col] == 0 {
                continue;
            }
            let f = a[row][col] as u64;
            for j in 0..n {
                a[row][j] = ((a[row][j] as u64 + (pw - f) * a[col][j] as u64) % pw) as u32;
                inv[row][j] = ((inv[row][j] as u64 + (pw - f) * inv[col][j] as u64) % pw) as u32;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn field(p: u64, k: u32, r: u32) -> FieldCtx {
        FieldCtx::build(TowerParams::new(p, k, r).unwrap()).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(field(3, 1, 2).size(), 9);
        assert_eq!(field(3, 1, 2).order(), 8);
        assert_eq!(field(2, 1, 4).order(), 15);
        assert_eq!(field(2, 2, 2).q(), 4);
    }

    #[test]
    fn rejects_bad_params() {
        assert_eq!(TowerParams::new(4, 1, 2), Err(Error::NonPrime(4)));
        assert!(matches!(TowerParams::new(3, 1, 3), Err(Error::InvalidParams(_))));
        assert!(matches!(
            TowerParams::new(2, 1, 28),
            Err(Error::SizeCapExceeded { .. })
        ));
        assert!(TowerParams::new(2, 1, 26).is_ok());
    }

    #[test]
    fn generator_order_via_repeated_multiplication() {
        let f = field(3, 1, 4);
        let g = f.generator();
        let power = |e: u32| (0..e).fold(Elt::ONE, |acc, _| f.mul(acc, g));
        assert_ne!(power(40), Elt::ONE);
        assert_ne!(power(16), Elt::ONE);
        assert_eq!(power(80), Elt::ONE);
        for l in f.order_factorization().primes() {
            assert_ne!(f.pow(g, 80 / l), Elt::ONE);
        }
    }

    #[test]
    fn arithmetic_round_trips_over_f9() {
        let f = field(3, 1, 2);
        for a in f.elements() {
            assert_eq!(f.add(a, Elt::ZERO), a);
            assert_eq!(f.sub(a, a), Elt::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Elt::ONE);
            }
            for b in f.elements().filter(|b| !b.is_zero()) {
                assert_eq!(f.div(f.mul(a, b), b).unwrap(), a);
            }
        }
        assert_eq!(f.div(Elt::ONE, Elt::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn logs_round_trip_over_f81() {
        let f = field(3, 1, 4);
        assert_eq!(f.log(f.generator()).unwrap(), 1);
        assert_eq!(f.log(Elt::ONE).unwrap(), 0);
        assert_eq!(f.log(Elt::ZERO), Err(Error::LogOfZero));
        for x in f.elements().skip(1) {
            assert_eq!(f.exp(f.log(x).unwrap()), x);
        }
    }

    #[test]
    fn frobenius_and_membership() {
        let f = field(2, 1, 4);
        // Subfield F_4 by closure: {0, 1} plus the roots of x^2 + x + 1.
        let closure: HashSet<Elt> = f
            .elements()
            .filter(|&x| f.add(f.mul(x, x), x).is_zero() || f.add(f.add(f.mul(x, x), x), Elt::ONE).is_zero())
            .collect();
        assert_eq!(closure.len(), 4);
        for x in f.elements() {
            assert_eq!(f.frobenius(x, 4, 1).unwrap(), x);
            assert_eq!(f.in_subfield(x, 2).unwrap(), closure.contains(&x));
        }
        assert_eq!(f.frobenius(Elt::ZERO, 2, 5).unwrap(), Elt::ZERO);
        assert!(matches!(f.frobenius(Elt::ONE, 3, 1), Err(Error::InvalidDivisor { .. })));

        let f81 = field(3, 1, 4);
        assert!(f81.in_subfield(Elt::ZERO, 2).unwrap());
        assert!(!f81.in_subfield(f81.generator(), 2).unwrap());
        let count = f81.elements().filter(|&x| f81.in_subfield(x, 2).unwrap()).count();
        assert_eq!(count, 9);
    }

    #[test]
    fn adapted_basis_shape() {
        for (p, k, r) in [(3, 1, 4), (2, 1, 6), (2, 2, 2), (2, 1, 8), (5, 1, 2), (2, 2, 4)] {
            let f = field(p, k, r);
            let basis = f.basis();
            assert_eq!(basis[0], Elt::ONE);
            for &a in &basis[..r as usize / 2] {
                assert!(f.in_subfield(a, r / 2).unwrap());
            }
            // Expansion over all coordinate vectors hits every element once.
            let mut seen = HashSet::new();
            for x in f.elements() {
                let c = f.coords(x);
                assert_eq!(f.combine(&c).unwrap(), x);
                assert!(seen.insert(c));
            }
            assert_eq!(seen.len() as u64, f.size());
            for (i, &a) in basis.iter().enumerate() {
                let c = f.coords(a);
                for (j, &cj) in c.iter().enumerate() {
                    assert_eq!(cj, u32::from(i == j));
                }
            }
        }
    }

    #[test]
    fn coords_are_linear_over_fq() {
        let f = field(2, 2, 2);
        let q = f.q() as usize;
        for x in f.elements().step_by(3) {
            for y in f.elements().step_by(5) {
                let s = f.coords(f.add(x, y));
                let (cx, cy) = (f.coords(x), f.coords(y));
                for i in 0..2 {
                    let sum = f.add(f.base_field()[cx[i] as usize], f.base_field()[cy[i] as usize]);
                    assert_eq!(f.base_field()[s[i] as usize], sum);
                }
            }
        }
        assert_eq!(f.base_field().len(), q);
        assert_eq!(f.coords(Elt::ZERO), vec![0, 0]);
    }

    #[test]
    fn deterministic_build() {
        let a = field(3, 1, 4).manifest();
        let b = field(3, 1, 4).manifest();
        assert_eq!(a, b);
        assert_eq!(a.modulus.len(), 5);
        assert_eq!(*a.modulus.last().unwrap(), 1);
    }
}
