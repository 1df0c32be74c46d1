use std::fmt::Write as _;

use serde_json::{json, Value};

use charsum::bounds::{self, WMode};
use charsum::sums::{self, SumSet};
use charsum::verify::{Suite, SuiteReport};
use charsum::{Error, Extended, FieldCtx, MulChar, Poly, RestrictedFamily, SparseSpec};

use crate::manifest::{render, RunManifest};
use crate::{CharsumArgs, EtaArgs, FieldArgs, Format, PrimitiveArgs, ThresholdArgs, VerifyArgs};

pub struct Output {
    pub text: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PrereqUnmet(_)
            | Error::PreconditionROutOfRange { .. }
            | Error::SizeCapExceeded { .. }
            | Error::IrreducibleSearchFailed(_)
            | Error::FactorizationTooLarge(_)
            | Error::NonSplittingPolynomial => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<Output, Failure>;

fn json_output(manifest: RunManifest, data: Value, code: u8) -> CmdResult {
    Ok(Output { text: render(&manifest, &data), code })
}

fn build(field: FieldArgs) -> Result<FieldCtx, Failure> {
    Ok(FieldCtx::build(field.params()?)?)
}

pub fn field_info(argv: &[String], a: FieldArgs) -> CmdResult {
    let ctx = build(a)?;
    let data = json!({
        "q": ctx.q(),
        "size": ctx.size(),
        "n": ctx.order(),
        "context": ctx.manifest(),
    });
    json_output(RunManifest::new(argv, Some(ctx.manifest())), data, 0)
}

pub fn charsum(argv: &[String], a: CharsumArgs) -> CmdResult {
    let ctx = build(a.field)?;
    let set = match (&a.set, a.sparse) {
        (Some(spec), _) => SumSet::Restricted(RestrictedFamily::parse(&ctx, spec)?),
        (None, Some(s)) => SumSet::Sparse(SparseSpec::for_field(&ctx, s)?),
        (None, None) => unreachable!("clap enforces the group"),
    };
    let chi = MulChar::of_index(&ctx, a.chi)?;
    let f = Poly::parse(&ctx, &a.f)?;
    let sum = if a.streaming {
        sums::char_sum_streaming(&ctx, &set, &chi, &f)?
    } else {
        sums::char_sum(&ctx, &set, &chi, &f)?
    };
    let audit = sums::bound_audit(&ctx, &set, &chi, &f)?;
    let set_json = match &set {
        SumSet::Restricted(fam) => json!({"family": fam.to_spec_string()}),
        SumSet::Sparse(spec) => json!({"sparse": spec.s()}),
    };
    let code = if audit.violation { 1 } else { 0 };
    let data = json!({
        "set": set_json,
        "chi": {"index": chi.index(), "order": chi.order()},
        "f": f.to_text(),
        "sum": sum,
        "audit": audit,
    });
    json_output(RunManifest::new(argv, Some(ctx.manifest())), data, code)
}

pub fn thresholds(argv: &[String], a: ThresholdArgs) -> CmdResult {
    let reports = a
        .q
        .iter()
        .map(|&q| bounds::threshold_min_even_r::<Extended>(q).map(|t| t.report()))
        .collect::<Result<Vec<_>, _>>()?;
    let manifest = RunManifest::new(argv, None);
    let text = match a.format {
        Format::Json => render(&manifest, &serde_json::to_value(&reports).expect("serialisable")),
        Format::Csv => {
            let mut s = String::from("q,r_min,lhs_at_rmin,rhs,margin_at_rmin,margin_at_rmin_minus_2,rounding_bound,certified\n");
            for t in &reports {
                let prev = t.margin_at_rmin_minus_2.map_or(String::new(), |m| format!("{m:e}"));
                writeln!(
                    s,
                    "{},{},{:.17e},{:.17e},{:e},{},{:e},{}",
                    t.q, t.r_min, t.lhs_at_rmin, t.rhs, t.margin_at_rmin, prev, t.rounding_bound, t.certified
                )
                .unwrap();
            }
            s
        }
        Format::Table => {
            let mut s = format!("{:>6}  {:>16}  {:>12}  {:>12}  {}\n", "q", "r_min", "margin", "margin(-2)", "certified");
            for t in &reports {
                let prev = t.margin_at_rmin_minus_2.map_or("-".into(), |m| format!("{m:.3e}"));
                writeln!(s, "{:>6}  {:>16}  {:>12.3e}  {:>12}  {}", t.q, t.r_min, t.margin_at_rmin, prev, t.certified).unwrap();
            }
            s
        }
    };
    Ok(Output { text, code: 0 })
}

pub fn eta(argv: &[String], a: EtaArgs) -> CmdResult {
    let manifest = RunManifest::new(argv, None);
    if a.curve {
        let step = a.step.expect("clap requires step");
        let out = a.out.expect("clap requires out");
        let rows = bounds::figure1_data::<f64>(step)?;
        std::fs::write(&out, bounds::figure1_csv(&rows))
            .map_err(|e| Failure { code: 2, message: format!("writing {}: {e}", out.display()) })?;
        let data = json!({"out": out.display().to_string(), "step": step, "rows": rows.len()});
        return json_output(manifest, data, 0);
    }
    let input = a.rho.expect("clap requires rho or curve");
    let rho = bounds::reflect_rho(input)?;
    let eta = match a.lattice {
        Some(step) => bounds::eta_prime_on_lambda_lattice(rho, step)?,
        None => bounds::eta_prime(rho)?,
    };
    let data = json!({
        "rho_input": input,
        "rho": rho,
        "eta_prime": eta.value,
        "lambda": eta.lambda,
        "lattice_step": a.lattice,
        "entropy": bounds::entropy(rho)?,
    });
    json_output(manifest, data, 0)
}

pub fn verify(argv: &[String], a: VerifyArgs) -> CmdResult {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse()?]
    };
    let reports = suites.into_iter().map(Suite::run).collect::<Result<Vec<SuiteReport>, _>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let data = json!({"passed": passed, "reports": reports});
    json_output(RunManifest::new(argv, None), data, if passed { 0 } else { 1 })
}

fn parse_digits(text: &str) -> Result<Vec<u32>, Error> {
    text.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad digit {t:?}"))))
        .collect()
}

pub fn primitive(argv: &[String], a: PrimitiveArgs) -> CmdResult {
    let ctx = build(a.field)?;
    let family = match (&a.family, &a.avoid) {
        (Some(spec), _) => RestrictedFamily::parse(&ctx, spec)?,
        (None, Some(avoid)) => RestrictedFamily::hyperplane_avoiding(&ctx, &parse_digits(avoid)?)?,
        (None, None) => unreachable!("clap enforces the group"),
    };
    let direct = sums::primitive_count_direct(&ctx, &family)?;
    let vin = sums::primitive_count_vinogradov(&ctx, &family)?;

    let applicable = ctx.q() >= 3 && family.is_hyperplane_avoiding(ctx.q());
    let (bound, sign) = if applicable {
        let b = bounds::lower_bound_thm35::<f64>(ctx.q(), ctx.r(), WMode::ExactW)?;
        (b.value(), Some(b.sign))
    } else {
        (None, None)
    };
    let consistent = match bound {
        Some(v) if v > 0.0 => direct as f64 >= v,
        _ => true,
    };
    let data = json!({
        "family": family.to_spec_string(),
        "family_size": family.size(),
        "n_direct": direct,
        "n_vinogradov": vin.count,
        "vinogradov_imag": vin.rhs_imag,
        "characters_used": vin.characters_used,
        "thm35_applicable": applicable,
        "thm35_sign": sign,
        "thm35_lower_bound": bound,
        "consistent": consistent,
    });
    json_output(RunManifest::new(argv, Some(ctx.manifest())), data, if consistent { 0 } else { 1 })
}
