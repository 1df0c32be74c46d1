//! Binary entropy and the exponent `η′(ρ)` of the sparse-set bound.
//!
//! `η′(ρ) = min_{0<λ≤ρ/2} max{f, g, h}` where
//!
//! ```text
//! f(ρ,λ) = ½H*(2λ) + ½H*(2ρ−2λ)
//! g(ρ,λ) = 1/8 + ½H(ρ) + ¼H*(2ρ−2λ)
//! h(ρ)   = ½H(ρ) + ¼
//! ```

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parallel;
use crate::real::Real;

/// Lower end of the `λ` search domain.
pub const LAMBDA_EPS: f64 = 1e-7;
/// Spacing of the coarse `λ` grid.
pub const LAMBDA_STEP: f64 = 1e-5;

/// Reference values of the earlier exponent `η(ρ)`, carried verbatim for
/// curve annotations.
pub const ETA_REFERENCE: [(&str, &str); 2] = [("0.13", "0.62751"), ("0.32", "0.82719")];

fn h_unchecked<R: Real>(x: R) -> R {
    if x <= R::zero() || x >= R::one() {
        return R::zero();
    }
    let y = R::one() - x;
    -(x * x.log2() + y * y.log2())
}

fn h_star_unchecked<R: Real>(x: R) -> R {
    if x > R::lit(0.5) {
        R::one()
    } else {
        h_unchecked(x)
    }
}

/// `H(x) = −x log₂ x − (1−x) log₂(1−x)`, with `H(0) = H(1) = 0`.
pub fn entropy<R: Real>(x: R) -> Result<R> {
    if !(x >= R::zero() && x <= R::one()) {
        return Err(Error::DomainError(format!("entropy needs 0 <= x <= 1, got {x}")));
    }
    Ok(h_unchecked(x))
}

/// `H*(x)`: `H(x)` on `[0, ½]`, 1 above.
pub fn entropy_star<R: Real>(x: R) -> Result<R> {
    if !(x >= R::zero()) || x.is_infinite() {
        return Err(Error::DomainError(format!("entropy_star needs finite x >= 0, got {x}")));
    }
    Ok(h_star_unchecked(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EntropyPoint<R> {
    pub rho: R,
    pub lambda: R,
    pub f: R,
    pub g: R,
    pub h: R,
}

impl<R: Real> EntropyPoint<R> {
    pub fn max(&self) -> R {
        self.f.max(self.g).max(self.h)
    }
}

fn check_rho<R: Real>(rho: R) -> Result<()> {
    if !(rho > R::zero() && rho <= R::lit(0.5)) {
        return Err(Error::DomainError(format!("need 0 < rho <= 1/2, got {rho}")));
    }
    Ok(())
}

fn point<R: Real>(rho: R, lambda: R, h_rho: R) -> EntropyPoint<R> {
    let two = R::lit(2.0);
    let half = R::lit(0.5);
    let quarter = R::lit(0.25);
    let tail = h_star_unchecked(two * (rho - lambda));
    EntropyPoint {
        rho,
        lambda,
        f: half * h_star_unchecked(two * lambda) + half * tail,
        g: R::lit(0.125) + half * h_rho + quarter * tail,
        h: half * h_rho + quarter,
    }
}

/// `(f, g, h)` at `(ρ, λ)` with `0 < λ ≤ ρ/2 ≤ 1/4`.
pub fn fgh<R: Real>(rho: R, lambda: R) -> Result<EntropyPoint<R>> {
    check_rho(rho)?;
    if !(lambda > R::zero() && lambda <= rho / R::lit(2.0)) {
        return Err(Error::DomainError(format!("need 0 < lambda <= rho/2, got {lambda}")));
    }
    Ok(point(rho, lambda, h_unchecked(rho)))
}

/// `min{ρ, 1 − ρ}` for `0 < ρ < 1`, the symmetric weight ratio.
pub fn reflect_rho<R: Real>(x: R) -> Result<R> {
    if !(x > R::zero() && x < R::one()) {
        return Err(Error::DomainError(format!("need 0 < rho < 1, got {x}")));
    }
    Ok(x.min(R::one() - x))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EtaPrime<R> {
    pub rho: R,
    pub value: R,
    /// Minimising `λ*`.
    pub lambda: R,
}

/// `η′(ρ)`: the `λ` grid from [`LAMBDA_EPS`] in steps of [`LAMBDA_STEP`]
/// (plus the endpoint `ρ/2`), then ternary refinement around the best cell.
///
/// `max{f, g, h}` is unimodal in `λ`: `f` falls then rises, `g` rises.
pub fn eta_prime<R: Real>(rho: R) -> Result<EtaPrime<R>> {
    check_rho(rho)?;
    let h_rho = h_unchecked(rho);
    let objective = |lambda: R| point(rho, lambda, h_rho).max();
    let top = rho / R::lit(2.0);
    let eps = R::lit(LAMBDA_EPS);
    let step = R::lit(LAMBDA_STEP);
    if top <= eps {
        return Ok(EtaPrime { rho, value: objective(top), lambda: top });
    }

    let cells = ((top - eps) / step).floor().to_u64().unwrap_or(0);
    let grid = |i: u64| if i > cells { top } else { eps + step * R::from_count(i) };
    let mut best = (0u64, objective(eps));
    for i in 1..=cells + 1 {
        let v = objective(grid(i));
        if v < best.1 {
            best = (i, v);
        }
    }

    let mut lo = grid(best.0.saturating_sub(1));
    let mut hi = grid((best.0 + 1).min(cells + 1));
    let third = R::lit(3.0);
    for _ in 0..200 {
        if hi - lo <= R::lit(1e-14) {
            break;
        }
        let m1 = lo + (hi - lo) / third;
        let m2 = hi - (hi - lo) / third;
        if objective(m1) <= objective(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let mid = (lo + hi) / R::lit(2.0);
    let refined = objective(mid);
    let (lambda, value) = if refined < best.1 { (mid, refined) } else { (grid(best.0), best.1) };
    Ok(EtaPrime { rho, value, lambda })
}

/// The min-max restricted to `λ ∈ {step, 2·step, …} ∩ (0, ρ/2]`.
pub fn eta_prime_on_lambda_lattice<R: Real>(rho: R, step: R) -> Result<EtaPrime<R>> {
    check_rho(rho)?;
    if !(step > R::zero()) {
        return Err(Error::DomainError(format!("lattice step must be positive, got {step}")));
    }
    let h_rho = h_unchecked(rho);
    let top = rho / R::lit(2.0);
    let count = (top / step + R::lit(1e-9)).floor().to_u64().unwrap_or(0);
    (1..=count)
        .map(|k| {
            let lambda = step * R::from_count(k);
            let lambda = lambda.min(top);
            EtaPrime { rho, value: point(rho, lambda, h_rho).max(), lambda }
        })
        .min_by(|a, b| a.value.partial_cmp(&b.value).expect("finite objective"))
        .ok_or_else(|| Error::DomainError(format!("no lattice point in (0, {top}]")))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveRow {
    pub rho: f64,
    #[serde(rename = "H")]
    pub h: f64,
    pub eta_prime: f64,
}

/// Rows `ρ = i·step`, `i = 1..⌊0.5/step⌋`, with `H(ρ)` and `η′(ρ)`.
pub fn figure1_data<R: Real>(step: f64) -> Result<Vec<CurveRow>> {
    if !(step > 0.0 && step <= 0.01) {
        return Err(Error::DomainError(format!("need 0 < step <= 0.01, got {step}")));
    }
    let rows = (0.5 / step + 1e-9).floor() as u64;
    parallel::install(|| {
        (1..=rows)
            .into_par_iter()
            .map(|i| {
                let rho = R::lit(step) * R::from_count(i);
                let rho = rho.min(R::lit(0.5));
                let eta = eta_prime(rho)?;
                Ok(CurveRow {
                    rho: rho.to_f64_lossy(),
                    h: h_unchecked(rho).to_f64_lossy(),
                    eta_prime: eta.value.to_f64_lossy(),
                })
            })
            .collect()
    })
}

/// Annotation rows, the `rho,H,eta_prime` header, then one line per row.
pub fn figure1_csv(rows: &[CurveRow]) -> String {
    let mut out = String::new();
    for (rho, eta) in ETA_REFERENCE {
        out.push_str(&format!("#eta_ref,{rho},{eta}\n"));
    }
    out.push_str("rho,H,eta_prime\n");
    for row in rows {
        out.push_str(&format!("{},{:.10},{:.10}\n", fmt_rho(row.rho), row.h, row.eta_prime));
    }
    out
}

fn fmt_rho(rho: f64) -> String {
    let s = format!("{rho:.8}");
    let s = s.trim_end_matches('0');
    s.trim_end_matches('.').to_string()
}
