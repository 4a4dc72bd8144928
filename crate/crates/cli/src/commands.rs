use nhairy_core::num::{bits_for_digits, parse_rational, MIN_DIGITS};
use nhairy_core::special::{
    airy_homogeneous, hyp1f2, lommel_integral, lommel_polya_form, lommel_series, polya_weight, scorer, AiryKind, Hyp1F2Args,
    LommelParams, ScorerKind,
};
use nhairy_core::transform::{
    energy_identity_residual, transform_eval_residual, verify_homogeneity, verify_quasi_periodicity, xi_square_integral,
    SolutionDescription,
};
use nhairy_core::zeros::{asymptotic_modulus, ray_zeros, real_zeros, ZeroRecord};
use nhairy_core::{
    apply_transform, walk_zeros, Complex, Error, ExactComplex, InitialData, NextZeroOptions, Parameters, TransformSpec,
    WalkDiagnostics,
};
use rug::{Float, Rational};
use serde_json::{json, Value};

use crate::args::{Check, HypArgs, ParamArgs, ScorerArgs, TableArgs, VerifyArgs, WalkArgs, ZerosArgs};
use crate::report::{complex, float, sci, ParamsOut, Table};

pub const DEFAULT_WORKING_DIGITS: u32 = 60;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(m) => CliError::Usage(m),
            Error::DegenerateA => CliError::Usage(e.to_string()),
            other => CliError::Numeric(other),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Numeric(e) => write!(f, "numeric failure: {e}"),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Default)]
pub struct Outcome {
    pub params: Option<ParamsOut>,
    pub terms: Option<usize>,
    pub results: Value,
    pub table: Table,
    pub diagnostics: Vec<String>,
    /// False when a requested check failed.
    pub passed: bool,
}

/// Working precision: `NHAIRY_DIGITS` (default 60), raised to leave ten guard
/// digits beyond the printed ones.
pub fn working_digits(printed: u32) -> CliResult<u32> {
    let base = match std::env::var("NHAIRY_DIGITS") {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .map_err(|_| CliError::Usage(format!("NHAIRY_DIGITS = {v:?} is not a digit count")))?,
        Err(_) => DEFAULT_WORKING_DIGITS,
    };
    Ok(base.max(printed + 10).max(MIN_DIGITS))
}

fn exact(s: &str, name: &str) -> CliResult<ExactComplex> {
    s.parse().map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn parameters(p: &ParamArgs) -> CliResult<(Parameters, ParamsOut)> {
    let params =
        Parameters::new(exact(&p.a, "a")?, exact(&p.b, "b")?, exact(&p.c, "c")?).with_deriv_norm(exact(&p.deriv, "deriv")?);
    let out = ParamsOut {
        a: p.a.clone(),
        b: p.b.clone(),
        c: p.c.clone(),
        deriv: p.deriv.clone(),
    };
    Ok((params, out))
}

fn polish_tol(work: u32) -> f64 {
    10f64.powf(-(work as f64) / 2.0)
}

fn zero_kind(z: &ZeroRecord) -> &'static str {
    if z.multiplicity >= 2 {
        "double"
    } else {
        "simple"
    }
}

fn parse_interval(s: &str) -> CliResult<(f64, f64)> {
    let bad = || CliError::Usage(format!("--real expects LO:HI, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn zeros(args: &ZerosArgs, work: u32) -> CliResult<Outcome> {
    let (params, pout) = parameters(&args.params)?;
    let digits = args.out.digits;
    let tol = polish_tol(work);
    let mut out = Outcome {
        params: Some(pout),
        passed: true,
        ..Outcome::default()
    };
    if args.rays {
        if !params.b.is_zero() {
            return Err(CliError::Usage("--rays needs b = 0".into()));
        }
        if let Some(p) = &args.double_at {
            if !exact(p, "double-at")?.is_zero() {
                return Err(CliError::Usage("--rays needs the double zero at the origin".into()));
            }
        }
        if params.c.is_zero() {
            return Err(CliError::Usage("--rays needs c != 0".into()));
        }
        let zs = ray_zeros(&params.a, args.max_k, tol, work)?;
        out.table.header = vec!["k", "ray", "re", "im", "modulus", "angle_deviation"];
        let mut list = Vec::new();
        for z in &zs {
            out.table.rows.push(vec![
                z.k.to_string(),
                z.ray.to_string(),
                float(&z.record.location.re, digits),
                float(&z.record.location.im, digits),
                float(&z.record.location.abs(), digits),
                sci(z.angle_deviation),
            ]);
            list.push(json!({
                "k": z.k,
                "ray": z.ray,
                "location": complex(&z.record.location, digits),
                "modulus": float(&z.record.location.abs(), digits),
                "multiplicity": z.record.multiplicity,
                "kind": zero_kind(&z.record),
                "residual": z.record.residual,
                "angle_deviation": z.angle_deviation,
            }));
        }
        out.diagnostics.push("double zero at the origin not listed".into());
        out.results = json!({ "origin_multiplicity": 2, "zeros": list });
        return Ok(out);
    }
    let real = args
        .real
        .as_deref()
        .ok_or_else(|| CliError::Usage("one of --real or --rays is required".into()))?;
    let (lo, hi) = parse_interval(real)?;
    let data = match &args.double_at {
        Some(p) => InitialData::double_zero(&params, exact(p, "double-at")?),
        None => InitialData::principal(&params)?,
    };
    let found = real_zeros(&data, lo, hi, tol, work)?;
    if let Some(a) = &found.advisory {
        out.diagnostics.push(a.clone());
    }
    out.table.header = vec!["re", "im", "multiplicity", "kind", "residual"];
    let mut list = Vec::new();
    for z in &found.zeros {
        out.table.rows.push(vec![
            float(&z.location.re, digits),
            float(&z.location.im, digits),
            z.multiplicity.to_string(),
            zero_kind(z).to_string(),
            sci(z.residual),
        ]);
        list.push(json!({
            "location": complex(&z.location, digits),
            "multiplicity": z.multiplicity,
            "kind": zero_kind(z),
            "residual": z.residual,
        }));
    }
    out.results = json!({ "interval": [lo, hi], "zeros": list });
    Ok(out)
}

fn walk_status(d: WalkDiagnostics) -> &'static str {
    match d {
        WalkDiagnostics::Converged => "converged",
        WalkDiagnostics::Oscillating2Periodic => "oscillating_2_periodic",
        WalkDiagnostics::Diverging => "diverging",
        WalkDiagnostics::MaxTerms => "max_terms",
    }
}

pub fn laurent_walk(args: &WalkArgs, work: u32) -> CliResult<Outcome> {
    let (params, pout) = parameters(&args.params)?;
    let digits = args.out.digits;
    let w = walk_zeros(&params, args.steps, args.terms, work, &NextZeroOptions::default())?;
    let mut out = Outcome {
        params: Some(pout),
        terms: Some(args.terms),
        passed: true,
        ..Outcome::default()
    };
    out.table.header = vec![
        "step",
        "zero_re",
        "zero_im",
        "step_re",
        "step_im",
        "stride",
        "newton_correction",
        "verified",
    ];
    let mut steps = Vec::new();
    for (i, s) in w.steps.iter().enumerate() {
        out.table.rows.push(vec![
            (i + 1).to_string(),
            float(&s.zero.re, digits),
            float(&s.zero.im, digits),
            float(&s.step.re, digits),
            float(&s.step.im, digits),
            s.stride.to_string(),
            sci(s.newton_correction),
            s.verified.to_string(),
        ]);
        steps.push(json!({
            "from": complex(&s.from, digits),
            "zero": complex(&s.zero, digits),
            "step": complex(&s.step, digits),
            "stride": s.stride,
            "newton_correction": s.newton_correction,
            "verified": s.verified,
        }));
    }
    let status = walk_status(w.diagnostics);
    out.diagnostics.push(format!("walk status: {status}"));
    if let Some(n) = &w.note {
        out.diagnostics.push(n.clone());
    }
    out.results = json!({
        "status": status,
        "current_zero": complex(&w.current_zero, digits),
        "steps": steps,
    });
    Ok(out)
}

pub fn table_za(args: &TableArgs, work: u32) -> CliResult<Outcome> {
    if args.max_k == 0 {
        return Err(CliError::Usage("--max-k must be at least 1".into()));
    }
    let digits = args.out.digits;
    let zs = ray_zeros(&ExactComplex::from_i64(1), args.max_k, polish_tol(work), work)?;
    let mut out = Outcome {
        passed: true,
        ..Outcome::default()
    };
    out.table.header = vec!["k", "exact", "asymptotic", "rel_err", "bound_applies", "within_bound"];
    let mut rows = Vec::new();
    for k in 1..=args.max_k {
        let z = zs
            .iter()
            .find(|z| z.k == k)
            .ok_or(CliError::Numeric(Error::IntervalMiss { k: k as usize }))?;
        let exact = z.record.location.abs();
        let approx = asymptotic_modulus(k)?;
        let rel = (approx - exact.to_f64()).abs() / exact.to_f64();
        let applies = k > 3;
        let within = rel < 0.01;
        if applies && !within {
            out.passed = false;
        }
        out.table.rows.push(vec![
            k.to_string(),
            float(&exact, digits),
            format!("{approx:.10}"),
            sci(rel),
            applies.to_string(),
            within.to_string(),
        ]);
        rows.push(json!({
            "k": k,
            "exact": float(&exact, digits),
            "asymptotic": approx,
            "rel_err": rel,
            "bound_applies": applies,
            "within_bound": within,
        }));
    }
    if !out.passed {
        out.diagnostics
            .push("relative error bound 0.01 violated for some k > 3".into());
    }
    out.results = json!({ "rows": rows });
    Ok(out)
}

#[derive(Debug)]
struct CheckResult {
    name: &'static str,
    status: &'static str,
    max_residual: f64,
    tolerance: f64,
    detail: String,
}

impl CheckResult {
    fn graded(name: &'static str, max_residual: f64, tolerance: f64, detail: String) -> Self {
        CheckResult {
            name,
            status: if max_residual <= tolerance { "pass" } else { "fail" },
            max_residual,
            tolerance,
            detail,
        }
    }
}

fn c64(work: u32, re: f64, im: f64) -> Complex {
    Complex::from_f64(bits_for_digits(work), re, im)
}

fn check_transform(params: &Parameters, work: u32) -> CliResult<CheckResult> {
    let spec = TransformSpec::new(exact("2,-1/2", "A")?, exact("1/2,1/4", "B")?);
    let t = apply_transform(
        &spec,
        params,
        &SolutionDescription::principal(params.deriv_norm.clone()),
        false,
    )?;
    let mut worst: f64 = 0.0;
    for (re, im) in [(1.0, 0.25), (0.5, 0.75), (-0.2, 0.1)] {
        worst = worst.max(transform_eval_residual(&t, &c64(work, re, im), work)?);
    }
    Ok(CheckResult::graded(
        "transform",
        worst,
        polish_tol(work),
        "image A y(z - B) against the series of the target parameters, A = 2 - i/2, B = 1/2 + i/4".into(),
    ))
}

fn check_quasiperiod(params: &Parameters, work: u32) -> CliResult<CheckResult> {
    let tol = polish_tol(work);
    match verify_quasi_periodicity(params, 1, 3, tol, work) {
        Ok(r) => Ok(CheckResult::graded(
            "quasiperiod",
            r.max_distance,
            tol,
            format!("zero set shifted by the nearest zero, {} zeros matched", r.matched),
        )),
        Err(Error::ZeroSetMismatch { max_distance, tol }) => Ok(CheckResult::graded(
            "quasiperiod",
            max_distance,
            tol,
            "zero sets differ".into(),
        )),
        Err(e) => Err(e.into()),
    }
}

fn check_homogeneity(params: &Parameters, lambda: &ExactComplex, work: u32) -> CliResult<CheckResult> {
    let samples = [c64(work, 0.5, 0.0), c64(work, 1.0, 0.5), c64(work, -1.2, 0.3)];
    let r = verify_homogeneity(&params.a, &params.b, lambda, &samples, work)?;
    Ok(CheckResult::graded(
        "homogeneity",
        r.max_residual,
        polish_tol(work),
        format!(
            "Xi(z/lambda, lambda^3 a, lambda^2 b) = lambda^-2 Xi(z, a, b) at {} points",
            r.samples
        ),
    ))
}

fn check_energy(params: &Parameters, work: u32) -> CliResult<CheckResult> {
    let tol = polish_tol(work);
    if !(params.a.is_real() && params.b.is_real() && params.c.is_real()) {
        return Ok(CheckResult {
            name: "energy",
            status: "skipped",
            max_residual: 0.0,
            tolerance: tol,
            detail: "needs real a, b, c".into(),
        });
    }
    let mut worst: f64 = 0.0;
    for z in [0.5, 1.0, 2.0] {
        worst = worst.max(energy_identity_residual(&params.a, &params.b, &params.c, z, tol, work)?);
    }
    let mut smallest = f64::INFINITY;
    for p in [-5.0, -2.0, -1.0, 1.0, 2.0, 5.0] {
        smallest = smallest.min(xi_square_integral(&params.a, &params.b, p, tol, work)?.to_f64());
    }
    let mut r = CheckResult::graded(
        "energy",
        worst,
        tol,
        format!("identity at z = 0.5, 1, 2; smallest square integral {smallest:.6e}"),
    );
    if smallest.is_nan() || smallest <= 0.0 {
        r.status = "fail";
    }
    Ok(r)
}

fn check_scorer(work: u32) -> CliResult<CheckResult> {
    let mut worst: f64 = 0.0;
    for i in -6..=6 {
        let z = c64(work, i as f64 / 2.0, 0.0);
        let gi = scorer(ScorerKind::Gi, &z, work)?;
        let hi = scorer(ScorerKind::Hi, &z, work)?;
        let bi = airy_homogeneous(AiryKind::Bi, &z, work)?;
        worst = worst.max((&gi + &hi).dist_f64(&bi));
    }
    Ok(CheckResult::graded(
        "scorer",
        worst,
        1e-20,
        "Gi + Hi = Bi on z = -3, -2.5, ..., 3".into(),
    ))
}

fn check_polya() -> CliResult<CheckResult> {
    let mut failures = 0usize;
    let mut smallest = f64::INFINITY;
    for nu in [0.1, 1.0 / 3.0, 0.7] {
        let mut prev = 0.0;
        for i in 1..10_000 {
            let w = polya_weight(nu, i as f64 / 10_000.0)?;
            smallest = smallest.min(w);
            if !(w > 0.0 && w > prev) {
                failures += 1;
            }
            prev = w;
        }
    }
    Ok(CheckResult {
        name: "polya",
        status: if failures == 0 { "pass" } else { "fail" },
        max_residual: failures as f64,
        tolerance: 0.0,
        detail: format!("weight positive and increasing on 10^4 points for nu = 0.1, 1/3, 0.7; minimum {smallest:.6}"),
    })
}

fn check_lommel(work: u32) -> CliResult<CheckResult> {
    let prec = bits_for_digits(work);
    let mut worst: f64 = 0.0;
    for nu in [Rational::from((1, 10)), Rational::from((1, 3)), Rational::from((7, 10))] {
        for z in [0.5, 2.0, 5.0, 10.0] {
            let zf = Float::with_val(prec, z);
            let s = lommel_series(&LommelParams::new(0, nu.clone()), &Complex::real(zf.clone()), work)?;
            let i = lommel_integral(&nu, &zf, 1e-20)?;
            let p = lommel_polya_form(&nu, &zf, 1e-20)?;
            worst = worst.max(Float::with_val(prec, &s.re - &i).abs().to_f64());
            worst = worst.max(Float::with_val(prec, &i - &p).abs().to_f64());
        }
    }
    Ok(CheckResult::graded(
        "lommel",
        worst,
        1e-15,
        "series, integral and sine-transform forms for nu = 0.1, 1/3, 0.7 and z = 0.5, 2, 5, 10".into(),
    ))
}

pub fn verify(args: &VerifyArgs, work: u32) -> CliResult<Outcome> {
    let (params, pout) = parameters(&args.params)?;
    let lambda = exact(&args.lambda, "lambda")?;
    let checks: Vec<Check> = if args.all { Check::ALL.to_vec() } else { args.check.clone() };
    let mut results = Vec::new();
    for c in checks {
        let r = match c {
            Check::Transform => check_transform(&params, work)?,
            Check::Quasiperiod => check_quasiperiod(&params, work)?,
            Check::Homogeneity => check_homogeneity(&params, &lambda, work)?,
            Check::Energy => check_energy(&params, work)?,
            Check::Scorer => check_scorer(work)?,
            Check::Polya => check_polya()?,
            Check::Lommel => check_lommel(work)?,
        };
        debug_assert_eq!(r.name, c.name());
        results.push(r);
    }
    let mut out = Outcome {
        params: Some(pout),
        passed: results.iter().all(|r| r.status != "fail"),
        ..Outcome::default()
    };
    out.table.header = vec!["check", "status", "max_residual", "tolerance", "detail"];
    let mut list = Vec::new();
    for r in &results {
        out.table.rows.push(vec![
            r.name.to_string(),
            r.status.to_string(),
            sci(r.max_residual),
            sci(r.tolerance),
            r.detail.clone(),
        ]);
        if r.status == "fail" {
            out.diagnostics.push(format!(
                "check {} failed: {:.3e} > {:.3e}",
                r.name, r.max_residual, r.tolerance
            ));
        }
        list.push(json!({
            "check": r.name,
            "status": r.status,
            "max_residual": r.max_residual,
            "tolerance": r.tolerance,
            "detail": r.detail,
        }));
    }
    out.results = json!({ "checks": list, "all_passed": out.passed });
    Ok(out)
}

pub fn scorer_values(args: &ScorerArgs, work: u32) -> CliResult<Outcome> {
    let digits = args.out.digits;
    let z = exact(&args.z, "z")?.to_complex(bits_for_digits(work));
    let values = [
        ("Ai", airy_homogeneous(AiryKind::Ai, &z, work)?),
        ("Bi", airy_homogeneous(AiryKind::Bi, &z, work)?),
        ("Gi", scorer(ScorerKind::Gi, &z, work)?),
        ("Hi", scorer(ScorerKind::Hi, &z, work)?),
    ];
    let mut out = Outcome {
        passed: true,
        ..Outcome::default()
    };
    out.table.header = vec!["function", "re", "im"];
    let mut map = serde_json::Map::new();
    map.insert("z".into(), complex(&z, digits));
    for (name, v) in &values {
        out.table
            .rows
            .push(vec![name.to_string(), float(&v.re, digits), float(&v.im, digits)]);
        map.insert(name.to_string(), complex(v, digits));
    }
    out.results = Value::Object(map);
    Ok(out)
}

pub fn hyp(args: &HypArgs, work: u32) -> CliResult<Outcome> {
    let rat = |s: &str, name: &str| parse_rational(s).map_err(|e| CliError::Usage(format!("--{name}: {e}")));
    let a = Hyp1F2Args::new(rat(&args.a1, "a1")?, rat(&args.b1, "b1")?, rat(&args.b2, "b2")?);
    let x = exact(&args.x, "x")?.to_complex(bits_for_digits(work));
    let v = hyp1f2(&a, &x, work)?;
    let digits = args.out.digits;
    let mut out = Outcome {
        passed: true,
        ..Outcome::default()
    };
    out.table.header = vec!["re", "im"];
    out.table.rows.push(vec![float(&v.re, digits), float(&v.im, digits)]);
    out.results = json!({ "x": complex(&x, digits), "value": complex(&v, digits) });
    Ok(out)
}
