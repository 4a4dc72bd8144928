//! Laurent coefficients of the logarithmic derivative around a simple zero,
//! and the ratio-limit walk from zero to zero.
//!
//! If `S(xi) = 0 != S'(xi)`, then near `xi`
//!
//! ```text
//! S'/S = 1/h + c0 + c1 h + c2 h^2 + ...,   h = z - xi
//! ```
//!
//! where the `c_n` depend only on `a`, `b_eff = b + a xi` and
//! `beta = c / (2 S'(xi))`. They obey a cubic recursion. Since
//! `c_n = -sum 1/(xi_k - xi)^(n+1)` over the other zeros, the ratio
//! `c_n / c_(n+1)` tends to the offset of the nearest zero when that zero is
//! unique.

use crate::error::{Error, Result};
use crate::num::{bits_for_digits, log10_abs, Complex, ExactComplex};
use crate::series::{InitialData, Parameters};
use crate::zeros::ZeroRecord;

/// Coefficients `c_0..=c_N` of `S'/S - 1/h` about a simple zero.
#[derive(Clone, Debug)]
pub struct LaurentSequence {
    pub a: Complex,
    pub b_eff: Complex,
    pub beta: Complex,
    pub coeffs: Vec<Complex>,
    pub digits: u32,
}

impl LaurentSequence {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Runs the cubic recursion up to `c_n_max`.
///
/// Seeds: `c0 = beta`, `c1 = b/3 - c0^2`, `c2 = c0^3 - b c0/4 + a/4`; then for
/// `n >= 1`
///
/// ```text
/// (n+4)(n+2) c(n+2) = b c(n) + a c(n-1)
///                     - 3 sum_{k=0}^{n+1} c(k) c(n+1-k)
///                     - 3 sum_{k=0}^{n} (k+1) c(k+1) c(n-k)
///                     - sum_{k=0}^{n} sum_{j=0}^{k} c(j) c(k-j) c(n-k)
/// ```
pub fn laurent_coeffs(a: &Complex, b_eff: &Complex, beta: &Complex, n_max: usize, digits: u32) -> Result<LaurentSequence> {
    if n_max < 3 {
        return Err(Error::InvalidInput(format!("N = {n_max} must be at least 3")));
    }
    for (v, name) in [(a, "a"), (b_eff, "b"), (beta, "beta")] {
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!("{name} is not finite")));
        }
    }
    let prec = bits_for_digits(digits);
    let a = a.with_prec(prec);
    let b = b_eff.with_prec(prec);
    let c0 = beta.with_prec(prec);
    let c0sq = &c0 * &c0;
    let c1 = &b.div_u64(3) - &c0sq;
    let c2 = &(&(&c0sq * &c0) - &(&b * &c0).div_u64(4)) + &a.div_u64(4);
    let mut c = vec![c0, c1, c2];
    // sq[m] = sum_{j=0}^{m} c(j) c(m-j), kept up to the largest index available.
    let mut sq: Vec<Complex> = Vec::with_capacity(n_max + 1);
    let conv = |c: &[Complex], m: usize| {
        let mut s = Complex::zero(prec);
        for j in 0..=m {
            s += &(&c[j] * &c[m - j]);
        }
        s
    };
    for m in 0..3 {
        sq.push(conv(&c, m));
    }
    for n in 1..=n_max.saturating_sub(2) {
        // sq has entries up to n + 1.
        let mut rhs = &(&b * &c[n]) + &(&a * &c[n - 1]);
        rhs -= &sq[n + 1].mul_i64(3);
        let mut lin = Complex::zero(prec);
        for k in 0..=n {
            lin += &(&c[k + 1] * &c[n - k]).mul_i64((k + 1) as i64);
        }
        rhs -= &lin.mul_i64(3);
        let mut cubic = Complex::zero(prec);
        for k in 0..=n {
            cubic += &(&sq[k] * &c[n - k]);
        }
        rhs -= &cubic;
        let next = rhs.div_u64(((n + 4) * (n + 2)) as u64);
        c.push(next);
        sq.push(conv(&c, n + 2));
    }
    c.truncate(n_max + 1);
    Ok(LaurentSequence {
        a,
        b_eff: b,
        beta: beta.with_prec(prec),
        coeffs: c,
        digits,
    })
}

/// Outcome of [`power_sum_residual`].
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSum {
    /// `|c_n + sum_{k<=K} xi_k^-(n+1)|`.
    pub residual: f64,
    /// Bound on the omitted zeros' contribution.
    pub tail_bound: f64,
    pub zeros_used: usize,
}

/// Compares `c_n` with `-sum xi_k^-(n+1)` over the given zeros (measured from
/// the zero the sequence was built at).
///
/// The tail is bounded assuming the zero count grows like `r^(3/2)`: with
/// `C = max_j j / |xi_j|^(3/2)` over the supplied zeros sorted by modulus and
/// `r_K` the largest modulus,
/// `sum_{j>K} |xi_j|^-(n+1) <= 2 * (3/2) C r_K^(1/2 - n) / (n - 1/2)`
/// (factor 2 for safety). Fails with `InsufficientZeros` when the bound
/// exceeds `target`.
pub fn power_sum_residual(seq: &LaurentSequence, zeros: &[ZeroRecord], n: usize, target: f64) -> Result<PowerSum> {
    if n < 1 || n >= seq.coeffs.len() {
        return Err(Error::InvalidInput(format!("n = {n} outside 1..{}", seq.coeffs.len())));
    }
    let prec = bits_for_digits(seq.digits);
    let mut locs: Vec<&Complex> = zeros.iter().map(|z| &z.location).filter(|z| !z.is_zero()).collect();
    if locs.is_empty() {
        return Err(Error::InsufficientZeros {
            tail: f64::INFINITY,
            target,
        });
    }
    locs.sort_by(|x, y| x.abs_f64().total_cmp(&y.abs_f64()));
    let mut sum = seq.coeffs[n].with_prec(prec);
    for z in &locs {
        sum += &z.with_prec(prec).powu((n + 1) as u32).recip();
    }
    let growth = locs
        .iter()
        .enumerate()
        .map(|(j, z)| (j + 1) as f64 / z.abs_f64().powf(1.5))
        .fold(0.0, f64::max);
    let r_k = locs.last().map(|z| z.abs_f64()).unwrap_or(1.0);
    let nf = n as f64;
    let tail_bound = 2.0 * 1.5 * growth * r_k.powf(0.5 - nf) / (nf - 0.5);
    if tail_bound > target {
        return Err(Error::InsufficientZeros {
            tail: tail_bound,
            target,
        });
    }
    Ok(PowerSum {
        residual: sum.abs_f64(),
        tail_bound,
        zeros_used: locs.len(),
    })
}

/// How `beta` is formed at a walk step.
#[derive(Clone, Debug, PartialEq)]
pub enum BetaNorm {
    /// `beta = c / (2 S'(xi_k))`.
    Derivative,
    /// `beta = beta_0 / S'(xi_k)` with `beta_0 = c / (2 S'(0))`; agrees with
    /// `Derivative` when `S'(0) = 1`.
    Literal { deriv_at_origin: Complex },
}

#[derive(Clone, Debug, PartialEq)]
pub struct NextZeroOptions {
    /// Relative tolerance on successive ratios.
    pub tol: f64,
    /// Consecutive agreeing ratios required.
    pub window: usize,
    /// Length of the alternation window for the oscillation test.
    pub osc_window: usize,
    /// Absolute floor for the re-verification Newton correction.
    pub verify_tol: f64,
    pub beta: BetaNorm,
}

impl Default for NextZeroOptions {
    fn default() -> Self {
        NextZeroOptions {
            tol: 1e-6,
            window: 5,
            osc_window: 10,
            verify_tol: 1e-12,
            beta: BetaNorm::Derivative,
        }
    }
}

/// A converged ratio-limit step.
#[derive(Clone, Debug)]
pub struct NextZero {
    /// `xi_k + c_N / c_(N+1)`.
    pub zero: Complex,
    pub step: Complex,
    /// 1 for the plain ratio, 2 when only every other coefficient is nonzero
    /// and the step is the principal root of `lim c_(n-1)/c_(n+1)`.
    pub stride: usize,
    /// Last ratios examined (as computed, for diagnostics).
    pub ratio_tail: Vec<Complex>,
    /// `|S/S'|` at `zero`.
    pub newton_correction: f64,
    /// One Newton step from `zero`.
    pub polished: Complex,
    pub verified: bool,
}

enum Verdict {
    Converged(Complex, usize, Vec<Complex>),
    Oscillating(Complex, Complex),
    NotConverged,
    ZeroDivision,
}

fn rel_close(x: &Complex, y: &Complex, tol: f64) -> bool {
    x.dist_f64(y) < tol * x.abs_f64().max(y.abs_f64())
}

fn parity_degenerate(c: &[Complex], digits: u32) -> Option<usize> {
    let from = c.len() / 2;
    let max = c[from..]
        .iter()
        .map(|v| log10_abs(&v.abs()))
        .fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return None;
    }
    let small = |v: &Complex| log10_abs(&v.abs()) < max - digits as f64 / 2.0;
    for parity in 0..2 {
        let vanish = (from..c.len()).filter(|n| n % 2 == parity).all(|n| small(&c[n]));
        let live = (from..c.len()).filter(|n| n % 2 != parity).all(|n| !small(&c[n]));
        if vanish && live {
            return Some(parity);
        }
    }
    None
}

fn analyse(c: &[Complex], digits: u32, opts: &NextZeroOptions) -> Verdict {
    let last = c.len() - 1;
    if let Some(dead) = parity_degenerate(c, digits) {
        // r_n = c(n-1)/c(n+1) over the live parity.
        let ns: Vec<usize> = (c.len() / 2..=last).filter(|n| n % 2 != dead && *n >= 2).collect();
        let r: Vec<Complex> = ns.iter().map(|&n| &c[n - 2] / &c[n]).collect();
        if r.len() > opts.window
            && r[r.len() - opts.window - 1..]
                .windows(2)
                .all(|w| rel_close(&w[1], &w[0], opts.tol))
        {
            let lim = r.last().expect("nonempty").clone();
            return Verdict::Converged(lim.sqrt(), 2, r);
        }
        return Verdict::NotConverged;
    }
    if c[last / 2..].iter().any(Complex::is_zero) {
        return Verdict::ZeroDivision;
    }
    let r: Vec<Complex> = (0..last).map(|n| &c[n] / &c[n + 1]).collect();
    let m = r.len();
    if m > opts.window && r[m - opts.window - 1..].windows(2).all(|w| rel_close(&w[1], &w[0], opts.tol)) {
        let tail = r[m - opts.window - 1..].to_vec();
        return Verdict::Converged(r[m - 1].clone(), 1, tail);
    }
    if m >= opts.osc_window {
        let tail = &r[m - opts.osc_window..];
        let even: Vec<&Complex> = tail.iter().step_by(2).collect();
        let odd: Vec<&Complex> = tail.iter().skip(1).step_by(2).collect();
        let e = even[even.len() - 1];
        let o = odd[odd.len() - 1];
        let gap = e.dist_f64(o);
        let scale = e.abs_f64().max(o.abs_f64());
        let spread = |v: &[&Complex], x: &Complex| v.iter().map(|y| y.dist_f64(x)).fold(0.0, f64::max);
        if gap > 1e3 * opts.tol * scale && spread(&even, e) < 0.1 * gap && spread(&odd, o) < 0.1 * gap {
            return Verdict::Oscillating(e.clone(), o.clone());
        }
    }
    Verdict::NotConverged
}

/// Working digits for a walk with `n_terms` coefficients.
pub fn walk_digits(requested: u32, n_terms: usize) -> u32 {
    requested.max(30 + (n_terms / 2) as u32)
}

/// One ratio-limit step from the simple zero `xi_k` of the solution of the ODE
/// with `S'(xi_k) = deriv_at_xi_k`.
///
/// Coefficients `c_0..=c_(N+1)` are computed at `max(digits, 30 + N/2)`
/// digits. If a coefficient in the ratio window vanishes at working precision,
/// the precision is doubled once before giving up.
pub fn next_zero(
    params: &Parameters,
    xi_k: &Complex,
    deriv_at_xi_k: &Complex,
    n_terms: usize,
    digits: u32,
    opts: &NextZeroOptions,
) -> Result<NextZero> {
    if deriv_at_xi_k.is_zero() || !deriv_at_xi_k.is_finite() {
        return Err(Error::NotASimpleZero {
            deriv_abs: deriv_at_xi_k.abs_f64(),
        });
    }
    let mut work = walk_digits(digits, n_terms);
    let mut escalated = false;
    loop {
        let prec = bits_for_digits(work);
        let (a, b, c) = params.at(prec);
        let xi = xi_k.with_prec(prec);
        let d = deriv_at_xi_k.with_prec(prec);
        let b_eff = &b + &(&a * &xi);
        let beta = match &opts.beta {
            BetaNorm::Derivative => &c / &d.mul_i64(2),
            BetaNorm::Literal { deriv_at_origin } => &(&c / &deriv_at_origin.with_prec(prec).mul_i64(2)) / &d,
        };
        let seq = laurent_coeffs(&a, &b_eff, &beta, n_terms + 1, work)?;
        match analyse(&seq.coeffs, work, opts) {
            Verdict::Converged(step, stride, ratio_tail) => {
                let zero = &xi + &step;
                let anchor = InitialData::general(
                    params,
                    ExactComplex::from_complex(xi_k)?,
                    ExactComplex::zero(),
                    ExactComplex::from_complex(deriv_at_xi_k)?,
                );
                let check = anchor.series_covering(&zero, 1e-3, work.min(digits.max(40)))?;
                let (v, dv) = check.eval_with_derivative(&zero)?;
                let corr = &v.value / &dv.value;
                let newton_correction = corr.abs_f64();
                let allowed = opts.verify_tol.max(10.0 * opts.tol * step.abs_f64());
                return Ok(NextZero {
                    polished: &zero - &corr,
                    zero,
                    step,
                    stride,
                    ratio_tail,
                    newton_correction,
                    verified: newton_correction <= allowed,
                });
            }
            Verdict::Oscillating(x, y) => {
                return Err(Error::Oscillating {
                    first: format!("{:.12}", &xi + &x),
                    second: format!("{:.12}", &xi + &y),
                })
            }
            Verdict::ZeroDivision if !escalated => {
                escalated = true;
                work *= 2;
            }
            Verdict::ZeroDivision | Verdict::NotConverged => {
                return Err(Error::NotConverged {
                    what: "ratio c_n/c_(n+1)".into(),
                    terms: n_terms,
                })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkDiagnostics {
    Converged,
    Oscillating2Periodic,
    Diverging,
    MaxTerms,
}

#[derive(Clone, Debug)]
pub struct WalkStep {
    pub from: Complex,
    pub deriv: Complex,
    pub zero: Complex,
    pub step: Complex,
    pub stride: usize,
    pub newton_correction: f64,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct WalkState {
    pub current_zero: Complex,
    pub steps: Vec<WalkStep>,
    pub diagnostics: WalkDiagnostics,
    /// Why the walk stopped early, if it did.
    pub note: Option<String>,
}

impl WalkState {
    pub fn step_history(&self) -> Vec<Complex> {
        self.steps.iter().map(|s| s.step.clone()).collect()
    }

    pub fn zeros(&self) -> Vec<Complex> {
        self.steps.iter().map(|s| s.zero.clone()).collect()
    }
}

/// Walks from the simple zero at the origin (`S'(0) = deriv_norm`) for up to
/// `max_steps` steps. `S'` at each new point is taken from the same solution,
/// re-centered there. Errors from a step end the walk and are recorded.
pub fn walk_zeros(
    params: &Parameters,
    max_steps: usize,
    n_terms: usize,
    digits: u32,
    opts: &NextZeroOptions,
) -> Result<WalkState> {
    let data = InitialData::principal(params)?;
    let work = walk_digits(digits, n_terms);
    let prec = bits_for_digits(work);
    let mut here = Complex::zero(prec);
    let mut history = vec![here.clone()];
    let mut state = WalkState {
        current_zero: here.clone(),
        steps: Vec::new(),
        diagnostics: WalkDiagnostics::Converged,
        note: None,
    };
    for _ in 0..max_steps {
        let s = data.series_covering(&here, 1e-3, work)?;
        let (_, d) = s.eval_with_derivative(&here)?;
        let deriv = d.value;
        match next_zero(params, &here, &deriv, n_terms, work, opts) {
            Ok(nz) => {
                let verified = nz.verified;
                let step = WalkStep {
                    from: here.clone(),
                    deriv,
                    zero: nz.zero.clone(),
                    step: nz.step.clone(),
                    stride: nz.stride,
                    newton_correction: nz.newton_correction,
                    verified,
                };
                let back = history.len().checked_sub(2).map(|i| history[i].clone());
                let scale = 10.0 * opts.tol * nz.step.abs_f64().max(1.0);
                state.steps.push(step);
                state.current_zero = nz.zero.clone();
                if !verified {
                    state.diagnostics = WalkDiagnostics::Diverging;
                    state.note = Some(format!(
                        "ratio limit is not a zero (Newton correction {:.3e})",
                        nz.newton_correction
                    ));
                    break;
                }
                if let Some(prev) = back {
                    if nz.zero.dist_f64(&prev) < scale {
                        state.diagnostics = WalkDiagnostics::Oscillating2Periodic;
                        state.note = Some("returned to the zero two steps back".into());
                        break;
                    }
                }
                here = nz.zero;
                history.push(here.clone());
            }
            Err(Error::Oscillating { first, second }) => {
                state.diagnostics = WalkDiagnostics::Oscillating2Periodic;
                state.note = Some(format!("ratios alternate between {first} and {second}"));
                break;
            }
            Err(Error::NotConverged { what, terms }) => {
                state.diagnostics = WalkDiagnostics::MaxTerms;
                state.note = Some(format!("{what} not settled with {terms} terms"));
                break;
            }
            Err(e) => {
                state.diagnostics = WalkDiagnostics::Diverging;
                state.note = Some(e.to_string());
                break;
            }
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: u32 = 60;

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(bits_for_digits(D), re, im)
    }

    /// Riccati recursion for `c = 0`: `u = S'/S` solves `u' + u^2 = a h + b`,
    /// so `c0 = 0` and `(m+3) c(m+1) = b [m=0] + a [m=1] - sum_j c(j) c(m-j)`.
    fn quadratic(a: &Complex, b: &Complex, n_max: usize) -> Vec<Complex> {
        let prec = bits_for_digits(D);
        let mut out = vec![Complex::zero(prec)];
        for m in 0..n_max {
            let mut rhs = Complex::zero(prec);
            if m == 0 {
                rhs += b;
            }
            if m == 1 {
                rhs += a;
            }
            for j in 0..=m {
                rhs -= &(&out[j] * &out[m - j]);
            }
            out.push(rhs.div_u64((m + 3) as u64));
        }
        out
    }

    #[test]
    fn seeds() {
        let s = laurent_coeffs(&c(-1.0, 0.0), &c(-1.0, 0.0), &c(0.0, 0.0), 5, D).unwrap();
        assert!(s.coeffs[1].dist_f64(&c(-1.0 / 3.0, 0.0)) < 1e-16);
        assert!(s.coeffs[2].dist_f64(&c(-0.25, 0.0)) < 1e-50);
        let s = laurent_coeffs(&c(-1.0, 0.0), &c(-1.0, 0.0), &c(-0.05, 0.0), 5, D).unwrap();
        assert!((s.coeffs[1].re.to_f64() + 0.335_833_333_333_333_3).abs() < 1e-15);
        assert!(laurent_coeffs(&c(1.0, 0.0), &c(0.0, 0.0), &c(0.0, 0.0), 2, D).is_err());
    }

    #[test]
    fn matches_series_division() {
        let (a, b, beta) = (c(0.7, -0.2), c(-1.3, 0.4), c(0.25, 0.1));
        let s = laurent_coeffs(&a, &b, &beta, 20, D).unwrap();
        let o = laurent_by_division(&a, &b, &beta, 20, D);
        for n in 0..=20 {
            assert!(s.coeffs[n].dist_f64(&o[n]) < 1e-30 * o[n].abs_f64().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn homogeneous_reduces_to_quadratic() {
        let (a, b) = (c(-1.0, 0.5), c(2.0, -1.0));
        let s = laurent_coeffs(&a, &b, &c(0.0, 0.0), 25, D).unwrap();
        let q = quadratic(&a, &b, 25);
        for n in 0..=25 {
            assert!(s.coeffs[n].dist_f64(&q[n]) < 1e-40 * q[n].abs_f64().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn sine_step_is_pi() {
        let p = Parameters::parse("0", "-1", "0").unwrap();
        let nz = next_zero(&p, &c(0.0, 0.0), &c(1.0, 0.0), 120, D, &NextZeroOptions::default()).unwrap();
        assert_eq!(nz.stride, 2);
        assert!(nz.step.dist_f64(&Complex::real(Complex::pi(bits_for_digits(D)))) < 1e-30);
        assert!(nz.verified);
    }

    #[test]
    fn first_step_of_worked_example() {
        let p = Parameters::parse("-1", "-1", "-0.1").unwrap();
        let nz = next_zero(&p, &c(0.0, 0.0), &c(1.0, 0.0), 80, D, &NextZeroOptions::default()).unwrap();
        assert!((nz.zero.re.to_f64() - 2.097_715_2).abs() < 5e-7);
        assert!(nz.verified);
    }

    #[test]
    fn rejects_zero_derivative() {
        let p = Parameters::parse("-1", "-1", "-0.1").unwrap();
        assert!(matches!(
            next_zero(&p, &c(0.0, 0.0), &c(0.0, 0.0), 20, D, &NextZeroOptions::default()),
            Err(Error::NotASimpleZero { .. })
        ));
    }

    #[test]
    fn literal_beta_agrees_under_unit_normalization() {
        let p = Parameters::parse("-1", "-1", "-0.1").unwrap();
        let lit = NextZeroOptions {
            beta: BetaNorm::Literal {
                deriv_at_origin: c(1.0, 0.0),
            },
            ..NextZeroOptions::default()
        };
        let a = next_zero(&p, &c(0.0, 0.0), &c(1.0, 0.0), 60, D, &lit).unwrap();
        let b = next_zero(&p, &c(0.0, 0.0), &c(1.0, 0.0), 60, D, &NextZeroOptions::default()).unwrap();
        assert!(a.zero.dist_f64(&b.zero) < 1e-40);
    }

    #[test]
    fn walk_reproduces_triple() {
        let p = Parameters::parse("-1", "-1", "-0.1").unwrap();
        let w = walk_zeros(&p, 3, 80, 60, &NextZeroOptions::default()).unwrap();
        assert_eq!(w.diagnostics, WalkDiagnostics::Converged, "{:?}", w.note);
        let z: Vec<f64> = w.zeros().iter().map(|z| z.re.to_f64()).collect();
        for (got, want) in z.iter().zip([2.097_715_2, 3.723_315_1, 5.050_714_9]) {
            assert!((got - want).abs() < 5e-7, "{got} vs {want}");
        }
    }

    #[test]
    fn walk_is_two_periodic_for_large_c() {
        let p = Parameters::parse("-1", "-1", "-1").unwrap();
        let w = walk_zeros(&p, 4, 80, 60, &NextZeroOptions::default()).unwrap();
        assert_eq!(w.diagnostics, WalkDiagnostics::Oscillating2Periodic);
        assert!((w.steps[0].zero.re.to_f64() - 1.423_060_3).abs() < 5e-7);
        assert!(w.steps[1].zero.abs_f64() < 1e-6);
    }

    /// Independent route to the same coefficients: Taylor-expand the solution
    /// with `S(0) = 0`, `S'(0) = 1`, `S'' (0) = 2 beta` of
    /// `y'' = (a h + b_eff) y + 2 beta`, then divide power series.
    ///
    /// With `S = h Q(h)`, `S'/S - 1/h = (S' - Q)/(h Q)`.
    fn laurent_by_division(a: &Complex, b_eff: &Complex, beta: &Complex, n_max: usize, digits: u32) -> Vec<Complex> {
        let prec = bits_for_digits(digits);
        let a = a.with_prec(prec);
        let b = b_eff.with_prec(prec);
        let c = beta.with_prec(prec).mul_i64(2);
        let len = n_max + 3;
        let mut g = vec![Complex::zero(prec), Complex::one(prec)];
        g.push(&(&b * &g[0]) + &c);
        g[2] = g[2].div_u64(2);
        g.push((&(&b * &g[1]) + &(&a * &g[0])).div_u64(6));
        while g.len() < len + 1 {
            let k = g.len() - 2;
            let v = (&(&b * &g[k]) + &(&a * &g[k - 1])).div_u64(((k + 1) * (k + 2)) as u64);
            g.push(v);
        }
        // Q(h) = sum g(n+1) h^n; numerator (S' - Q)/h = sum (n+1) g(n+2) h^n.
        let q: Vec<Complex> = (0..len).map(|n| g[n + 1].clone()).collect();
        let num: Vec<Complex> = (0..len - 1).map(|n| g[n + 2].mul_i64((n + 1) as i64)).collect();
        let mut out: Vec<Complex> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut acc = num[n].clone();
            for k in 0..n {
                acc -= &(&out[k] * &q[n - k]);
            }
            out.push(&acc / &q[0]);
        }
        out
    }
}
