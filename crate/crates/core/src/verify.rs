//! Exhaustive consistency suites over small fields.
//!
//! Each suite returns a [`SuiteReport`]; the first failing instance is kept
//! as a JSON counterexample. Inapplicable instances (bound hypotheses not
//! met) are counted separately and never count as passes.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{self, nt, WMode};
use crate::characters::{MulChar, SumAccumulator};
use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx, TowerParams};
use crate::poly::Poly;
use crate::subsets::{self, RestrictedFamily, SparseSpec};
use crate::sums::{self, SumSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Orthogonality,
    Wan,
    Cor24,
    Vinogradov,
    Lemma41,
    Lemma36,
    Eq32,
    Decomposition,
    AuditSweep,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Orthogonality,
        Suite::Wan,
        Suite::Cor24,
        Suite::Vinogradov,
        Suite::Lemma41,
        Suite::Lemma36,
        Suite::Eq32,
        Suite::Decomposition,
        Suite::AuditSweep,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Wan => "wan",
            Suite::Cor24 => "cor24",
            Suite::Vinogradov => "vinogradov",
            Suite::Lemma41 => "lemma41",
            Suite::Lemma36 => "lemma36",
            Suite::Eq32 => "eq32",
            Suite::Decomposition => "decomposition",
            Suite::AuditSweep => "audit-sweep",
            Suite::Oracle => "oracle",
        }
    }

    pub fn run(self) -> Result<SuiteReport> {
        match self {
            Suite::Orthogonality => orthogonality(&default_fields()),
            Suite::Wan => wan(),
            Suite::Cor24 => cor24(),
            Suite::Vinogradov => vinogradov(),
            Suite::Lemma41 => lemma41(30),
            Suite::Lemma36 => lemma36(100_000),
            Suite::Eq32 => eq32_vs_lem34(),
            Suite::Decomposition => decomposition(12, 20),
            Suite::AuditSweep => audit_sweep(),
            Suite::Oracle => oracle(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: u64,
    /// Instances whose hypotheses did not hold; not counted as checks.
    pub skipped: u64,
    pub counterexample: Option<Value>,
}

struct Tally {
    suite: Suite,
    checks: u64,
    skipped: u64,
    counterexample: Option<Value>,
    failures: u64,
}

impl Tally {
    fn new(suite: Suite) -> Self {
        Tally {
            suite,
            checks: 0,
            skipped: 0,
            counterexample: None,
            failures: 0,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    fn skip(&mut self) {
        self.skipped += 1;
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite.name().into(),
            passed: self.failures == 0 && self.checks > 0,
            checks: self.checks,
            skipped: self.skipped,
            counterexample: self.counterexample,
        }
    }
}

fn build(p: u64, k: u32, r: u32) -> Result<FieldCtx> {
    FieldCtx::build(TowerParams::new(p, k, r)?)
}

/// Fields used by the orthogonality sweep; all at most `2^12` elements.
pub fn default_fields() -> Vec<TowerParams> {
    [
        (2, 1, 2),
        (3, 1, 2),
        (2, 1, 4),
        (5, 1, 2),
        (7, 1, 2),
        (2, 1, 6),
        (3, 1, 4),
        (3, 2, 2),
        (2, 1, 8),
        (2, 2, 4),
        (5, 1, 4),
        (3, 1, 6),
        (2, 1, 10),
        (2, 1, 12),
    ]
    .into_iter()
    .map(|(p, k, r)| TowerParams::new(p, k, r).expect("valid tower"))
    .collect()
}

/// `Σ_{x∈F^*} χ(x) = 0` for every nontrivial `χ` of every listed field.
pub fn orthogonality(fields: &[TowerParams]) -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::Orthogonality);
    for &params in fields {
        let ctx = FieldCtx::build(params)?;
        let nonzero: Vec<Elt> = ctx.elements().skip(1).collect();
        for j in 1..ctx.order() {
            let chi = MulChar::of_index(&ctx, j)?;
            let mut acc = SumAccumulator::for_char(&chi);
            for &x in &nonzero {
                acc.push(chi.eval_exponent(&ctx, x));
            }
            let mag = acc.magnitude();
            tally.check(mag <= 1e-6, || {
                json!({"field": params, "chi": j, "magnitude": mag, "counts": acc.counts()})
            });
        }
    }
    Ok(tally.finish())
}

/// Sample polynomials with known roots: `(roots with multiplicity)`.
fn split_polys(ctx: &FieldCtx) -> Vec<Poly> {
    let g = ctx.generator();
    let g2 = ctx.mul(g, g);
    let one = Elt::ONE;
    let z = Elt::ZERO;
    vec![
        Poly::from_roots(ctx, &[z]),
        Poly::from_roots(ctx, &[one]),
        Poly::from_roots(ctx, &[g]),
        Poly::from_roots(ctx, &[z, one]),
        Poly::from_roots(ctx, &[z, g]),
        Poly::from_roots(ctx, &[z, z, one]),
        Poly::from_roots(ctx, &[one, g, g2]),
    ]
}

fn character_sample(ctx: &FieldCtx, limit: usize) -> Result<Vec<MulChar>> {
    let n = ctx.order();
    let stride = ((n - 1) as usize / limit).max(1) as u64;
    let mut js: Vec<u64> = (1..n).step_by(stride as usize).collect();
    // Always include every character of small order.
    for e in ctx.order_factorization().divisors() {
        if e > 1 && e <= 8 {
            js.push(n / e);
        }
    }
    js.sort_unstable();
    js.dedup();
    js.into_iter().map(|j| MulChar::of_index(ctx, j)).collect()
}

/// Base-field sums `Σ_{a∈F_q} Π χ_i(f_i(a))` and base-field correlation
/// sums against `(rD − 1)√q` and `(2rD − 1)√q`.
pub fn wan() -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::Wan);
    for (p, k, r) in [(3, 1, 2), (2, 1, 4), (3, 1, 4), (2, 2, 2), (2, 1, 6)] {
        let ctx = build(p, k, r)?;
        let polys = split_polys(&ctx);
        let chars = character_sample(&ctx, 24)?;
        for chi in &chars {
            for f in &polys {
                record(&mut tally, sums::basefield_weil_sum(&ctx, &[(*chi, f.clone())])?, || {
                    json!({"kind": "single", "field": [p, k, r], "chi": chi.index(), "f": f.to_text()})
                });
            }
            let other = chi.conjugate();
            for (a, b) in [(0, 1), (1, 2), (3, 6)] {
                let pairs = [(*chi, polys[a].clone()), (other, polys[b].clone())];
                record(&mut tally, sums::basefield_weil_sum(&ctx, &pairs)?, || {
                    json!({"kind": "pair", "field": [p, k, r], "chi": chi.index(), "f": [polys[a].to_text(), polys[b].to_text()]})
                });
            }
        }
        let shifts: Vec<Elt> = ctx.elements().step_by((ctx.size() as usize / 12).max(1)).collect();
        for chi in chars.iter().take(6) {
            for f in polys.iter().take(5) {
                for &w1 in &shifts {
                    for &w2 in &shifts {
                        let s = sums::basefield_correlation_sum(&ctx, w1, w2, chi, f)?;
                        record(&mut tally, s, || {
                            json!({"kind": "cor22", "field": [p, k, r], "chi": chi.index(), "f": f.to_text(), "w": [w1, w2]})
                        });
                    }
                }
            }
        }
    }
    Ok(tally.finish())
}

fn record(tally: &mut Tally, s: sums::BoundedSum, describe: impl FnOnce() -> Value) {
    if !s.applicable {
        tally.skip();
        return;
    }
    let violated = s.violated();
    tally.check(!violated, || {
        let mut v = describe();
        v["magnitude"] = json!(s.result.magnitude);
        v["bound"] = json!(s.bound);
        v
    });
}

/// Correlation sums over `F_{q^{r/2}}` for shifts in the complementary
/// span, against `(4D − 1)q^{r/4}`, plus `#B ≤ 2D²#W`.
pub fn cor24() -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::Cor24);
    for (p, k, r) in [(2, 1, 8), (3, 1, 4), (2, 1, 4)] {
        let ctx = build(p, k, r)?;
        let whole = RestrictedFamily::whole_field(&ctx);
        let (_, w) = subsets::split_vw(&ctx, &whole)?;
        let chars = character_sample(&ctx, 6)?;
        for f in split_polys(&ctx) {
            let d = f.squarefree_degree(&ctx)? as u64;
            if d > 3 {
                continue;
            }
            let bad = sums::bad_pairs(&ctx, &f, &w)?;
            let budget = bounds::bad_pair_budget(d, w.len() as u64);
            tally.check(bad.len() as u64 <= budget, || {
                json!({"kind": "bad_pairs", "field": [p, k, r], "f": f.to_text(), "count": bad.len(), "budget": budget})
            });
            for chi in &chars {
                for (i, &w1) in w.iter().enumerate() {
                    for (j, &w2) in w.iter().enumerate() {
                        if bad.binary_search(&(i, j)).is_ok() {
                            tally.skip();
                            continue;
                        }
                        let s = sums::correlation_sum(&ctx, w1, w2, chi, &f)?;
                        record(&mut tally, s, || {
                            json!({"kind": "cor24", "field": [p, k, r], "chi": chi.index(), "f": f.to_text(), "w": [w1, w2]})
                        });
                    }
                }
            }
        }
    }
    Ok(tally.finish())
}

fn sample_families(ctx: &FieldCtx) -> Result<Vec<RestrictedFamily>> {
    let r = ctx.r() as usize;
    let q = ctx.q() as u32;
    let mut out = vec![
        RestrictedFamily::whole_field(ctx),
        RestrictedFamily::new(ctx, vec![vec![0]; r])?,
        RestrictedFamily::hyperplane_avoiding(ctx, &vec![0; r])?,
        RestrictedFamily::hyperplane_avoiding(ctx, &(0..r as u32).map(|i| i % q).collect::<Vec<_>>())?,
    ];
    if q >= 3 {
        out.push(RestrictedFamily::new(ctx, vec![vec![1, 2]; r])?);
        out.push(RestrictedFamily::new(ctx, vec![vec![0, 2]; r])?);
    }
    let mixed: Vec<Vec<u32>> = (0..r as u32)
        .map(|i| (0..q).filter(|d| (d + i) % 2 == 0 || *d == 1).collect())
        .collect();
    out.push(RestrictedFamily::new(ctx, mixed)?);
    Ok(out)
}

/// Direct primitive counts against the Vinogradov formula, and against the
/// exact-`W` lower bound whenever that bound is positive.
pub fn vinogradov() -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::Vinogradov);
    for (p, k, r) in [(3, 1, 2), (3, 1, 4), (2, 1, 8), (2, 1, 4), (5, 1, 2)] {
        let ctx = build(p, k, r)?;
        for fam in sample_families(&ctx)? {
            let direct = sums::primitive_count_direct(&ctx, &fam)?;
            let vin = sums::primitive_count_vinogradov(&ctx, &fam)?;
            tally.check((direct as f64 - vin.count).abs() <= 1e-6, || {
                json!({"field": [p, k, r], "family": fam.to_spec_string(), "direct": direct, "vinogradov": vin.count})
            });
            if ctx.q() >= 3 && fam.is_hyperplane_avoiding(ctx.q()) {
                let lb = bounds::lower_bound_thm35::<f64>(ctx.q(), ctx.r(), WMode::ExactW)?;
                match lb.value() {
                    Some(v) if lb.is_positive() => tally.check(direct as f64 >= v, || {
                        json!({"field": [p, k, r], "family": fam.to_spec_string(), "direct": direct, "lower_bound": v})
                    }),
                    _ => tally.skip(),
                }
            }
        }
    }
    Ok(tally.finish())
}

/// `Σ_{m≤γn} C(n, m) ≤ 2^{nH(γ)}`, exact, `n ≤ n_max`, `γ = k/20 ≤ ½`.
pub fn lemma41(n_max: u32) -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::Lemma41);
    for case in bounds::binomial_tail_sweep(n_max)? {
        tally.check(case.holds, || serde_json::to_value(&case).expect("serialisable"));
    }
    Ok(tally.finish())
}

/// `W(t − 1) < t^{0.96/ln ln t}` for `3 ≤ t ≤ t_max`.
pub fn lemma36(t_max: u64) -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::Lemma36);
    for t in 3..=t_max {
        let w = nt::squarefree_divisor_count(t - 1)?;
        let bound = nt::lemma36_bound::<f64>(t)?;
        tally.check((w as f64) < bound, || json!({"t": t, "W": w, "bound": bound}));
    }
    Ok(tally.finish())
}

/// The improved bound is below the hyperplane-avoiding reference bound for
/// `q ∈ {3, 4, 5}`, even `r ∈ [10, 40]`.
pub fn eq32_vs_lem34() -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::Eq32);
    for q in [3u64, 4, 5] {
        for r in (10..=40).step_by(2) {
            let eq = bounds::bound_eq32::<f64>(q, r)?;
            let sharp = bounds::bound_eq32_sharp::<f64>(q, r)?;
            let lem = bounds::bound_lem34::<f64>(q, r)?;
            let pre = bounds::eq32_precondition::<f64>(q, r);
            tally.check(sharp < eq && eq < lem && pre, || {
                json!({"q": q, "r": r, "eq32_sharp": sharp, "eq32": eq, "lem34": lem, "precondition": pre})
            });
        }
    }
    Ok(tally.finish())
}

/// Deterministic polynomials of degree 1..=4 with coefficients walking the
/// discrete-log table.
pub fn sample_polys(ctx: &FieldCtx, count: usize) -> Vec<Poly> {
    let n = ctx.order();
    (0..count)
        .map(|i| {
            let degree = 1 + i % 4;
            let coeffs: Vec<Elt> = (0..=degree)
                .map(|c| {
                    let e = (7 * i as u64 + 3 * c as u64 + 1) % (n + 1);
                    if e == n { Elt::ZERO } else { ctx.exp(e) }
                })
                .collect();
            let mut coeffs = coeffs;
            *coeffs.last_mut().expect("degree >= 1") = Elt::ONE;
            Poly::new(coeffs)
        })
        .collect()
}

/// Merged `M_i` tallies equal the direct `G_s` tally for `q = 2`, every
/// even `r ≤ r_max` and every `1 ≤ s < r`.
pub fn decomposition(r_max: u32, poly_count: usize) -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::Decomposition);
    for r in (2..=r_max).step_by(2) {
        let ctx = build(2, 1, r)?;
        let polys = sample_polys(&ctx, poly_count);
        let chi = MulChar::of_index(&ctx, 1)?;
        for s in 1..r {
            let spec = SparseSpec::new(s, r)?;
            let set = SumSet::Sparse(spec);
            for f in &polys {
                let parts = sums::mi_decomposition(&ctx, &spec, &chi, f)?;
                let merged = parts
                    .iter()
                    .fold(SumAccumulator::for_char(&chi), |acc, m| acc.merged(&m.accumulator));
                let direct = sums::char_sum_streaming(&ctx, &set, &chi, f)?;
                tally.check(merged == direct.accumulator, || {
                    json!({"r": r, "s": s, "f": f.to_text(), "merged": merged.counts(), "direct": direct.accumulator.counts()})
                });
            }
        }
    }
    Ok(tally.finish())
}

/// Every nontrivial character of `F_{3^4}` on `A_i = {1, 2}`, `f = X`.
pub fn audit_sweep() -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::AuditSweep);
    let ctx = build(3, 1, 4)?;
    let set = SumSet::Restricted(RestrictedFamily::new(&ctx, vec![vec![1, 2]; 4])?);
    for j in 1..ctx.order() {
        let chi = MulChar::of_index(&ctx, j)?;
        let report = sums::bound_audit(&ctx, &set, &chi, &Poly::x())?;
        tally.check(!report.violation, || {
            json!({"chi": j, "report": serde_json::to_value(&report).expect("serialisable")})
        });
    }
    Ok(tally.finish())
}

/// `S(G, χ, f)` by a full scan of the field, keeping the elements whose
/// coordinates lie in the family; shares no code with the enumerators.
pub fn scan_oracle(ctx: &FieldCtx, set: &SumSet, chi: &MulChar, f: &Poly) -> SumAccumulator {
    let mut acc = SumAccumulator::for_char(chi);
    for x in ctx.elements() {
        let coords = ctx.coords(x);
        let member = match set {
            SumSet::Restricted(fam) => coords.iter().zip(fam.sets()).all(|(c, a)| a.contains(c)),
            SumSet::Sparse(spec) => coords.iter().filter(|&&c| c != 0).count() as u32 == spec.s(),
        };
        if member {
            acc.push(chi.eval_exponent(ctx, f.eval(ctx, x)));
        }
    }
    acc
}

/// Structured sums against [`scan_oracle`] on at least 200 instances.
pub fn oracle() -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::Oracle);
    for (p, k, r) in [(3, 1, 2), (3, 1, 4), (2, 1, 8), (5, 1, 2), (2, 2, 4), (2, 1, 10)] {
        let ctx = build(p, k, r)?;
        let mut sets: Vec<SumSet> = sample_families(&ctx)?.into_iter().map(SumSet::Restricted).collect();
        for s in [1, ctx.r() / 2, ctx.r() - 1] {
            sets.push(SumSet::Sparse(SparseSpec::new(s, ctx.r())?));
        }
        let polys = sample_polys(&ctx, 3);
        let chars = character_sample(&ctx, 3)?;
        for set in &sets {
            for chi in &chars {
                for f in &polys {
                    let structured = sums::char_sum(&ctx, set, chi, f)?;
                    let naive = scan_oracle(&ctx, set, chi, f);
                    tally.check(structured.accumulator == naive, || {
                        json!({"field": [p, k, r], "set": set, "chi": chi.index(), "f": f.to_text()})
                    });
                }
            }
        }
    }
    Ok(tally.finish())
}
