//! Exact character sums over the two subset families, the base-field and
//! subfield correlation sums, and primitive-element counts.
//!
//! Every sum is an integer [`SumAccumulator`]; parallel paths partition the
//! outer enumeration and merge, so results do not depend on the schedule.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, nt};
use crate::characters::{characters_of_order, MulChar, SumAccumulator};
use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::parallel;
use crate::poly::Poly;
use crate::real::{CompensatedSum, Real};
use crate::subsets::{self, RestrictedFamily, SparseSpec};
use crate::Extended;

/// The set a sum runs over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SumSet {
    Restricted(RestrictedFamily),
    Sparse(SparseSpec),
}

impl SumSet {
    pub fn size(&self, q: u64) -> u64 {
        match self {
            SumSet::Restricted(fam) => fam.size(),
            SumSet::Sparse(spec) => spec.size(q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SumResult {
    pub accumulator: SumAccumulator,
    pub magnitude: f64,
    pub term_count: u64,
    pub zero_hits: u64,
}

impl SumResult {
    pub fn from_accumulator(accumulator: SumAccumulator) -> Self {
        SumResult {
            magnitude: accumulator.magnitude_in::<Extended>().to_f64_lossy(),
            term_count: accumulator.term_count(),
            zero_hits: accumulator.zero_hits(),
            accumulator,
        }
    }
}

fn check_inputs(ctx: &FieldCtx, chi: &MulChar, polys: &[&Poly]) -> Result<()> {
    if chi.group_order() != ctx.order() {
        return Err(Error::InconsistentContext(format!(
            "character is defined mod {}, field has q^r - 1 = {}",
            chi.group_order(),
            ctx.order()
        )));
    }
    for f in polys {
        if let Some(&c) = f.coeffs().iter().find(|&&c| !ctx.contains(c)) {
            return Err(Error::InconsistentContext(format!(
                "coefficient {c} is not a field element"
            )));
        }
    }
    Ok(())
}

fn tally<I: IntoIterator<Item = Elt>>(ctx: &FieldCtx, chi: &MulChar, f: &Poly, xs: I) -> SumAccumulator {
    let mut acc = SumAccumulator::for_char(chi);
    for x in xs {
        acc.push(chi.eval_exponent(ctx, f.eval(ctx, x)));
    }
    acc
}

fn merge_all(chi: &MulChar, parts: impl Iterator<Item = SumAccumulator>) -> SumAccumulator {
    parts.fold(SumAccumulator::for_char(chi), |acc, part| acc.merged(&part))
}

/// `Σ_{v∈V} Σ_{w∈W} χ(f(v + w))`, parallel over `V`.
fn sum_over_pairs(ctx: &FieldCtx, chi: &MulChar, f: &Poly, left: &[Elt], right: &[Elt]) -> SumAccumulator {
    parallel::install(|| {
        left.par_iter()
            .map(|&v| tally(ctx, chi, f, right.iter().map(|&w| ctx.add(v, w))))
            .reduce(|| SumAccumulator::for_char(chi), |a, b| a.merged(&b))
    })
}

/// `S(G, χ, f) = Σ_{γ∈G} χ(f(γ))` through the structured decompositions:
/// `G_A = V ⊕ W` for restricted families and `G_s = ⋃_i (U1_i + U2_{s−i})`
/// for sparse sets.
pub fn char_sum(ctx: &FieldCtx, set: &SumSet, chi: &MulChar, f: &Poly) -> Result<SumResult> {
    check_inputs(ctx, chi, &[f])?;
    let acc = match set {
        SumSet::Restricted(fam) => {
            let (v, w) = subsets::split_vw(ctx, fam)?;
            sum_over_pairs(ctx, chi, f, &v, &w)
        }
        SumSet::Sparse(spec) => {
            let parts = mi_accumulators(ctx, spec, chi, f)?;
            merge_all(chi, parts.into_iter())
        }
    };
    Ok(SumResult::from_accumulator(acc))
}

/// The same sum by a single sequential pass over the lazy set stream.
pub fn char_sum_streaming(ctx: &FieldCtx, set: &SumSet, chi: &MulChar, f: &Poly) -> Result<SumResult> {
    check_inputs(ctx, chi, &[f])?;
    let acc = match set {
        SumSet::Restricted(fam) => tally(ctx, chi, f, subsets::enumerate_ga(ctx, fam)?),
        SumSet::Sparse(spec) => tally(ctx, chi, f, subsets::enumerate_sparse(ctx, spec)?),
    };
    Ok(SumResult::from_accumulator(acc))
}

fn mi_accumulators(ctx: &FieldCtx, spec: &SparseSpec, chi: &MulChar, f: &Poly) -> Result<Vec<SumAccumulator>> {
    (0..=spec.s())
        .map(|i| {
            let (u1, u2) = subsets::split_sparse(ctx, spec, i)?;
            Ok(sum_over_pairs(ctx, chi, f, &u1, &u2))
        })
        .collect()
}

/// `M_0..M_s` with `M_i = Σ_{u1∈U1_i} Σ_{u2∈U2_{s−i}} χ(f(u1 + u2))`.
pub fn mi_decomposition(ctx: &FieldCtx, spec: &SparseSpec, chi: &MulChar, f: &Poly) -> Result<Vec<SumResult>> {
    check_inputs(ctx, chi, &[f])?;
    Ok(mi_accumulators(ctx, spec, chi, f)?
        .into_iter()
        .map(SumResult::from_accumulator)
        .collect())
}

/// A sum together with the bound it is compared against.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundedSum {
    pub result: SumResult,
    /// Squarefree-part degree `D`; 0 for constant `f`.
    pub d: usize,
    pub bound: f64,
    /// Whether the bound's hypotheses were verified for this instance.
    pub applicable: bool,
    pub note: String,
}

impl BoundedSum {
    pub fn violated(&self) -> bool {
        self.applicable && self.result.magnitude > self.bound * (1.0 + 1e-12)
    }
}

fn sqfree_degree_or_zero(ctx: &FieldCtx, f: &Poly) -> Result<usize> {
    match f.squarefree_degree(ctx) {
        Ok(d) => Ok(d),
        Err(Error::ConstantPolynomial) => Ok(0),
        Err(e) => Err(e),
    }
}

/// Degree of `x` over `F_q`: smallest `e | r` with `x ∈ F_{q^e}`.
fn degree_over_base(ctx: &FieldCtx, x: Elt) -> u32 {
    let r = ctx.r();
    (1..=r)
        .filter(|e| r % e == 0)
        .find(|&e| ctx.in_subfield(x, e).expect("e divides r"))
        .expect("x lies in F_{q^r}")
}

/// Whether `χ^m` is nontrivial on `F_{q^e}^*`.
fn power_nontrivial_on_subfield(ctx: &FieldCtx, chi: &MulChar, m: u32, e: u32) -> bool {
    let n = ctx.order() as u128;
    let sub_gen_log = n / (ctx.q().pow(e) as u128 - 1);
    chi.index() as u128 * m as u128 % n * sub_gen_log % n != 0
}

/// `Σ_{a∈F_q} Π_i χ_i(f_i(a))` with the bound `(rD − 1)q^{1/2}`.
///
/// The hypotheses are checked for split `f_i` only: no two `f_i` share
/// roots conjugate over `F_q`, and some root `ξ` of multiplicity `m` has
/// `χ_i^m` nontrivial on `F_q(ξ)^*`.
pub fn basefield_weil_sum(ctx: &FieldCtx, pairs: &[(MulChar, Poly)]) -> Result<BoundedSum> {
    if pairs.is_empty() {
        return Err(Error::EmptyProduct);
    }
    for (chi, f) in pairs {
        check_inputs(ctx, chi, &[f])?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
    }
    let n = ctx.order();
    let lcm = pairs
        .iter()
        .fold(1u64, |l, (chi, _)| l / nt::gcd(l, chi.order()) * chi.order());
    let unit = n / lcm;
    let mut acc = SumAccumulator::new(lcm);
    for &a in ctx.base_field() {
        let mut total: u128 = 0;
        let mut zero = false;
        for (chi, f) in pairs {
            match ctx.try_log(f.eval(ctx, a)) {
                Some(l) => total = (total + chi.index() as u128 * l as u128) % n as u128,
                None => zero = true,
            }
        }
        acc.push(if zero { None } else { Some(total as u64 / unit) });
    }

    let product = pairs
        .iter()
        .fold(Poly::constant(Elt::ONE), |p, (_, f)| p.mul(ctx, f));
    let d = sqfree_degree_or_zero(ctx, &product)?;
    let bound = bounds::bound_lemma21::<f64>(ctx.q(), ctx.r(), d as u64);
    let (applicable, note) = weil_hypotheses(ctx, pairs)?;
    Ok(BoundedSum {
        result: SumResult::from_accumulator(acc),
        d,
        bound,
        applicable,
        note,
    })
}

fn weil_hypotheses(ctx: &FieldCtx, pairs: &[(MulChar, Poly)]) -> Result<(bool, String)> {
    let mut roots = Vec::with_capacity(pairs.len());
    for (_, f) in pairs {
        if f.degree() == Some(0) {
            return Ok((false, "constant polynomial".into()));
        }
        if !f.splits(ctx)? {
            return Ok((false, "polynomial does not split over F_{q^r}".into()));
        }
        roots.push(f.roots_in_field(ctx)?);
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            for &(x, _) in &roots[i] {
                for k in 0..ctx.r() as u64 {
                    let conj = ctx.frobenius(x, 1, k)?;
                    if roots[j].iter().any(|&(y, _)| y == conj) {
                        return Ok((false, format!("f_{} and f_{} share conjugated roots", i + 1, j + 1)));
                    }
                }
            }
        }
    }
    let witness = pairs.iter().zip(&roots).any(|((chi, _), rs)| {
        rs.iter()
            .any(|&(xi, m)| power_nontrivial_on_subfield(ctx, chi, m, degree_over_base(ctx, xi)))
    });
    if witness {
        Ok((true, String::new()))
    } else {
        Ok((false, "no root with chi^m nontrivial on F_q(xi)^*".into()))
    }
}

/// `Σ_{a∈F_{q^{r/2}}} χ(f(a + w1)) χ̄(f(a + w2))` with the bound
/// `(4D − 1)q^{r/4}`.
///
/// Applicable when `f` splits, has a simple root `ξ`, the shifts share no
/// roots conjugate over `F_{q^{r/2}}`, and `ξ − w_i ∉ F_{q^{r/2}}` for some `i`.
pub fn correlation_sum(ctx: &FieldCtx, w1: Elt, w2: Elt, chi: &MulChar, f: &Poly) -> Result<BoundedSum> {
    let half = ctx.r() / 2;
    let domain = ctx.subfield_elements(half)?;
    pair_sum(ctx, &domain, w1, w2, chi, f, half)
}

/// `Σ_{a∈F_q} χ(f(a + w1)) χ̄(f(a + w2))` with the bound `(2rD − 1)q^{1/2}`.
///
/// Applicable when `f` splits, the shifts share no roots conjugate over
/// `F_q`, and some simple root `ξ` has `ξ − w1` or `ξ − w2` defining `F_{q^r}`.
pub fn basefield_correlation_sum(ctx: &FieldCtx, w1: Elt, w2: Elt, chi: &MulChar, f: &Poly) -> Result<BoundedSum> {
    let domain = ctx.base_field().to_vec();
    pair_sum(ctx, &domain, w1, w2, chi, f, 1)
}

fn pair_sum(
    ctx: &FieldCtx,
    domain: &[Elt],
    w1: Elt,
    w2: Elt,
    chi: &MulChar,
    f: &Poly,
    sub: u32,
) -> Result<BoundedSum> {
    check_inputs(ctx, chi, &[f])?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (w1, w2) = (ctx.check(w1)?, ctx.check(w2)?);
    let d_order = chi.order();
    let mut acc = SumAccumulator::for_char(chi);
    for &a in domain {
        let x = chi.eval_exponent(ctx, f.eval(ctx, ctx.add(a, w1)));
        let y = chi.eval_exponent(ctx, f.eval(ctx, ctx.add(a, w2)));
        acc.push(match (x, y) {
            (Some(x), Some(y)) => Some((x + d_order - y) % d_order),
            _ => None,
        });
    }
    let d = sqfree_degree_or_zero(ctx, f)?;
    let (bound, (applicable, note)) = if sub == 1 {
        (
            bounds::bound_cor22::<f64>(ctx.q(), ctx.r(), d as u64),
            pair_hypotheses(ctx, f, w1, w2, 1, |x| ctx.is_defining_element(x))?,
        )
    } else {
        let half = ctx.r() / 2;
        (
            bounds::bound_cor24::<f64>(ctx.q(), ctx.r(), d as u64),
            pair_hypotheses(ctx, f, w1, w2, half, |x| {
                !ctx.in_subfield(x, half).expect("r/2 divides r")
            })?,
        )
    };
    Ok(BoundedSum {
        result: SumResult::from_accumulator(acc),
        d,
        bound,
        applicable: applicable && !chi.is_trivial(),
        note: if chi.is_trivial() { "trivial character".into() } else { note },
    })
}

fn pair_hypotheses(
    ctx: &FieldCtx,
    f: &Poly,
    w1: Elt,
    w2: Elt,
    sub: u32,
    defining: impl Fn(Elt) -> bool,
) -> Result<(bool, String)> {
    if f.degree() == Some(0) {
        return Ok((false, "constant polynomial".into()));
    }
    if !f.splits(ctx)? {
        return Ok((false, "polynomial does not split over F_{q^r}".into()));
    }
    if f.shares_conjugated_roots(ctx, w1, w2, sub)? {
        return Ok((false, "shifts share conjugated roots (bad pair)".into()));
    }
    let simple: Vec<Elt> = f
        .roots_in_field(ctx)?
        .into_iter()
        .filter(|&(_, m)| m == 1)
        .map(|(x, _)| x)
        .collect();
    if simple.is_empty() {
        return Ok((false, "no simple root".into()));
    }
    let ok = simple
        .iter()
        .any(|&xi| defining(ctx.sub(xi, w1)) || defining(ctx.sub(xi, w2)));
    if ok {
        Ok((true, String::new()))
    } else {
        Ok((false, "no shifted simple root is a defining element".into()))
    }
}

/// Index pairs `(i, j)` of `ws` whose shifts of `f` share roots conjugate
/// over `F_{q^{r/2}}`: the exempt set `B`.
pub fn bad_pairs(ctx: &FieldCtx, f: &Poly, ws: &[Elt]) -> Result<Vec<(usize, usize)>> {
    let half = ctx.r() / 2;
    let mut out = Vec::new();
    for (i, &w1) in ws.iter().enumerate() {
        for (j, &w2) in ws.iter().enumerate() {
            if f.shares_conjugated_roots(ctx, w1, w2, half)? {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// `N(G_A)`: elements of `G_A` whose discrete log is prime to `q^r − 1`.
pub fn primitive_count_direct(ctx: &FieldCtx, family: &RestrictedFamily) -> Result<u64> {
    let n = ctx.order();
    Ok(subsets::enumerate_ga(ctx, family)?
        .filter_map(|x| ctx.try_log(x))
        .filter(|&l| nt::gcd(l, n) == 1)
        .count() as u64)
}

/// Right-hand side of the Vinogradov formula and the count it implies.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VinogradovCount {
    /// `Σ_{e | n} μ(e)/φ(e) Σ_{χ∈Λ_e} Σ_{w∈G_A} χ(w)`, real part.
    pub rhs: f64,
    /// Imaginary residue of the same sum; zero up to rounding.
    pub rhs_imag: f64,
    /// `φ(n)/n · rhs`.
    pub count: f64,
    pub characters_used: u64,
}

/// `N(G_A)` through the Vinogradov formula; terms with `μ(e) = 0` vanish
/// and are skipped.
pub fn primitive_count_vinogradov(ctx: &FieldCtx, family: &RestrictedFamily) -> Result<VinogradovCount> {
    primitive_count_vinogradov_in::<Extended>(ctx, family)
}

pub fn primitive_count_vinogradov_in<R: Real>(ctx: &FieldCtx, family: &RestrictedFamily) -> Result<VinogradovCount> {
    let logs: Vec<Option<u64>> = subsets::enumerate_ga(ctx, family)?
        .map(|x| ctx.try_log(x))
        .collect();
    let fact = ctx.order_factorization();
    let n = ctx.order();
    let mut re = CompensatedSum::<R>::default();
    let mut im = CompensatedSum::<R>::default();
    let mut used = 0;
    for e in fact.squarefree_divisors() {
        let ef = nt::factorize(e)?;
        let weight = R::from_i64(ef.mobius() as i64).unwrap() / R::from_count(ef.euler_phi());
        for chi in characters_of_order(ctx, e)? {
            let mut acc = SumAccumulator::for_char(&chi);
            for &l in &logs {
                acc.push(l.map(|l| chi.exponent_of_log(l)));
            }
            let (x, y) = acc.value_in::<R>();
            re.add(weight * x);
            im.add(weight * y);
            used += 1;
        }
    }
    let rhs = re.value();
    let count = R::from_count(fact.euler_phi()) / R::from_count(n) * rhs;
    Ok(VinogradovCount {
        rhs: rhs.to_f64_lossy(),
        rhs_imag: im.value().to_f64_lossy(),
        count: count.to_f64_lossy(),
        characters_used: used,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundEntry {
    pub name: String,
    pub value: f64,
    pub ratio: f64,
    /// Hard bounds must hold; informational ones carry unspecified `o(r)` terms.
    pub hard: bool,
    pub violated: bool,
}

impl BoundEntry {
    fn new(name: &str, magnitude: f64, value: f64, hard: bool) -> Self {
        BoundEntry {
            name: name.into(),
            value,
            ratio: magnitude / value,
            hard,
            violated: hard && magnitude > value * (1.0 + 1e-12),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub magnitude: f64,
    pub term_count: u64,
    pub zero_hits: u64,
    pub d: usize,
    pub simple_root: Option<Elt>,
    pub bounds: Vec<BoundEntry>,
    pub violation: bool,
}

/// Exact `|S(G, χ, f)|` against every bound whose hypotheses hold.
pub fn bound_audit(ctx: &FieldCtx, set: &SumSet, chi: &MulChar, f: &Poly) -> Result<BoundReport> {
    check_inputs(ctx, chi, &[f])?;
    if chi.is_trivial() {
        return Err(Error::PrereqUnmet("character is trivial".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let simple = f.simple_root(ctx)?;
    let Some(xi) = simple else {
        return Err(Error::PrereqUnmet("f has no simple root in F_{q^r}".into()));
    };
    let d = f.squarefree_degree(ctx)?;
    let sum = char_sum(ctx, set, chi, f)?;
    let mag = sum.magnitude;
    let (q, r) = (ctx.q(), ctx.r());
    let mut entries = Vec::new();
    let size = set.size(q);
    entries.push(BoundEntry::new("trivial", mag, size as f64, true));
    match set {
        SumSet::Restricted(fam) => {
            let upper: f64 = fam.upper_sizes().iter().map(|&s| s as f64).product();
            let thm31 = bounds::bound_thm31::<Extended>(q, r, <Extended as Real>::lit(upper), <Extended as Real>::lit(size as f64), d as u64)?;
            entries.push(BoundEntry::new("thm31", mag, thm31.to_f64_lossy(), true));
            let pairs_of_three = q == 3 && fam.sets().iter().all(|s| s.len() == 2);
            if pairs_of_three {
                if let Ok(v) = bounds::bound_cor32::<f64>(d as u64, r) {
                    entries.push(BoundEntry::new("cor32", mag, v, true));
                }
            }
            let f_is_x = *f == Poly::x();
            if f_is_x && q >= 3 && fam.is_hyperplane_avoiding(q) {
                entries.push(BoundEntry::new("eq32_sharp", mag, bounds::bound_eq32_sharp::<f64>(q, r)?, true));
                if r >= 10 {
                    entries.push(BoundEntry::new("eq32", mag, bounds::bound_eq32::<f64>(q, r)?, true));
                }
                entries.push(BoundEntry::new("lem34", mag, bounds::bound_lem34::<f64>(q, r)?, true));
            }
        }
        SumSet::Sparse(spec) => {
            if q == 2 {
                let eta = bounds::eta_prime::<f64>(spec.rho())?;
                entries.push(BoundEntry::new("thm42_leading", mag, (eta.value * r as f64).exp2(), false));
            }
        }
    }
    let violation = entries.iter().any(|e| e.violated);
    Ok(BoundReport {
        magnitude: mag,
        term_count: sum.term_count,
        zero_hits: sum.zero_hits,
        d,
        simple_root: Some(xi),
        bounds: entries,
        violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::TowerParams;

    fn field(p: u64, k: u32, r: u32) -> FieldCtx {
        FieldCtx::build(TowerParams::new(p, k, r).unwrap()).unwrap()
    }

    #[test]
    fn whole_field_orthogonality_and_trivial_char() {
        let f = field(3, 1, 4);
        let whole = SumSet::Restricted(RestrictedFamily::whole_field(&f));
        let chi = MulChar::of_index(&f, 1).unwrap();
        let s = char_sum(&f, &whole, &chi, &Poly::x()).unwrap();
        assert!(s.magnitude <= 1e-6);
        assert_eq!(s.term_count, 81);
        assert_eq!(s.zero_hits, 1);
        let triv = MulChar::trivial(80);
        let s = char_sum(&f, &whole, &triv, &Poly::x()).unwrap();
        assert_eq!(s.magnitude, 80.0);
    }

    #[test]
    fn structured_matches_streaming() {
        let f = field(3, 1, 4);
        let fam = RestrictedFamily::parse(&f, "1,2;1,2;1,2;1,2").unwrap();
        let set = SumSet::Restricted(fam);
        let poly = Poly::from_roots(&f, &[Elt::ZERO, Elt::ONE]);
        for j in [1, 2, 5, 16, 40] {
            let chi = MulChar::of_index(&f, j).unwrap();
            let a = char_sum(&f, &set, &chi, &poly).unwrap();
            let b = char_sum_streaming(&f, &set, &chi, &poly).unwrap();
            assert_eq!(a.accumulator, b.accumulator);
        }
    }

    #[test]
    fn mismatched_character_is_rejected() {
        let f = field(3, 1, 2);
        let chi = MulChar::new(1, 80).unwrap();
        let set = SumSet::Restricted(RestrictedFamily::whole_field(&f));
        assert!(matches!(char_sum(&f, &set, &chi, &Poly::x()), Err(Error::InconsistentContext(_))));
    }

    #[test]
    fn weil_sum_examples() {
        let f = field(3, 1, 2);
        let chi = MulChar::of_index(&f, 1).unwrap();
        let s = basefield_weil_sum(&f, &[(chi, Poly::x())]).unwrap();
        assert_eq!(s.d, 1);
        assert!((s.bound - 3f64.sqrt()).abs() < 1e-12);
        assert!(s.applicable);
        assert!(s.result.magnitude <= s.bound);

        let triv = MulChar::trivial(8);
        let g = Poly::from_roots(&f, &[Elt::ONE]);
        let s = basefield_weil_sum(&f, &[(triv, Poly::x()), (triv, g)]).unwrap();
        assert_eq!(s.result.magnitude, 1.0);

        let c = f.exp(4);
        let s = basefield_weil_sum(&f, &[(chi, Poly::constant(c))]).unwrap();
        assert!((s.result.magnitude - 3.0).abs() < 1e-12);
        assert!(!s.applicable);
        assert_eq!(basefield_weil_sum(&f, &[]), Err(Error::EmptyProduct));
    }

    #[test]
    fn correlation_examples() {
        let f = field(2, 1, 8);
        let chi = MulChar::of_index(&f, 1).unwrap();
        let w = f.generator();
        let same = correlation_sum(&f, w, w, &chi, &Poly::x()).unwrap();
        assert!(!same.applicable);
        assert_eq!(same.result.accumulator.counts()[0], same.result.accumulator.nonzero_terms());
        let s = correlation_sum(&f, Elt::ZERO, w, &chi, &Poly::x()).unwrap();
        assert_eq!(s.result.term_count, 16);
        assert_eq!(s.bound, 12.0);
        if s.applicable {
            assert!(s.result.magnitude <= 12.0);
        }
        let c = correlation_sum(&f, Elt::ZERO, w, &chi, &Poly::constant(w)).unwrap();
        assert!((c.result.magnitude - 16.0).abs() < 1e-9);
    }

    #[test]
    fn primitive_counts() {
        let f = field(3, 1, 2);
        let whole = RestrictedFamily::whole_field(&f);
        assert_eq!(primitive_count_direct(&f, &whole).unwrap(), 4);
        let v = primitive_count_vinogradov(&f, &whole).unwrap();
        assert!((v.count - 4.0).abs() < 1e-9);
        let zero = RestrictedFamily::new(&f, vec![vec![0], vec![0]]).unwrap();
        assert_eq!(primitive_count_direct(&f, &zero).unwrap(), 0);
        assert!(primitive_count_vinogradov(&f, &zero).unwrap().count.abs() < 1e-9);
    }

    #[test]
    fn audit_prereqs() {
        let f = field(3, 1, 4);
        let set = SumSet::Restricted(RestrictedFamily::parse(&f, "!0;!0;!0;!0").unwrap());
        let triv = MulChar::trivial(80);
        assert!(matches!(bound_audit(&f, &set, &triv, &Poly::x()), Err(Error::PrereqUnmet(_))));
        let chi = MulChar::of_index(&f, 1).unwrap();
        let square = Poly::x().pow(&f, 2);
        assert!(matches!(bound_audit(&f, &set, &chi, &square), Err(Error::PrereqUnmet(_))));
        let rep = bound_audit(&f, &set, &chi, &Poly::x()).unwrap();
        assert!(!rep.violation);
        assert!(rep.bounds.iter().any(|b| b.name == "thm31"));
        assert!(rep.bounds.iter().any(|b| b.name == "lem34"));
    }
}
