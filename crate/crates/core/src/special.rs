//! Special functions tied to the nonhomogeneous Airy equation.
//!
//! Everything here is evaluated independently of the zero finder so it can
//! serve as a cross-check: the generalized hypergeometric `1F2`, the Lommel
//! function `s_{mu,nu}` through its series and two integral forms, the weight
//! in Polya's sine-transform theorem, and the Airy/Scorer functions obtained
//! from the series engine with initial values from MPFR's Gamma function.

use rug::float::Constant;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::num::{bits_for_digits, log10_abs, quad, Complex, ExactComplex, MIN_DIGITS};
use crate::series::{evaluate, InitialData, Parameters};

/// Default cap on the number of `1F2` terms.
pub const HYP_TERM_CAP: usize = 100_000;

/// Upper parameter `a1` and lower parameters `b1`, `b2` of `1F2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyp1F2Args {
    pub a1: Rational,
    pub b1: Rational,
    pub b2: Rational,
}

impl Hyp1F2Args {
    pub fn new(a1: impl Into<Rational>, b1: impl Into<Rational>, b2: impl Into<Rational>) -> Self {
        Hyp1F2Args {
            a1: a1.into(),
            b1: b1.into(),
            b2: b2.into(),
        }
    }

    fn validate(&self) -> Result<()> {
        for b in [&self.b1, &self.b2] {
            if *b.denom() == 1 && *b.numer() <= 0 {
                return Err(Error::InvalidInput(format!(
                    "lower parameter {b} is zero or a negative integer"
                )));
            }
        }
        Ok(())
    }
}

/// `1F2(a1; b1, b2; x)` summed to `digits` significant digits.
pub fn hyp1f2(args: &Hyp1F2Args, x: &Complex, digits: u32) -> Result<Complex> {
    hyp1f2_capped(args, x, digits, HYP_TERM_CAP)
}

/// As [`hyp1f2`] with an explicit term cap.
///
/// The working precision is raised by the number of digits the largest term
/// exceeds 1, estimated from a double-precision pass over the term ratios.
pub fn hyp1f2_capped(args: &Hyp1F2Args, x: &Complex, digits: u32, cap: usize) -> Result<Complex> {
    args.validate()?;
    if !x.is_finite() {
        return Err(Error::InvalidInput("argument is not finite".into()));
    }
    let (a1, b1, b2) = (args.a1.to_f64(), args.b1.to_f64(), args.b2.to_f64());
    let log_x = log10_abs(&x.abs());
    let terminates_at =
        (*args.a1.denom() == 1 && *args.a1.numer() <= 0).then(|| (-args.a1.numer().to_i64().unwrap_or(i64::MIN)) as usize);

    // Pass 1: locate the peak term and the stopping index.
    let mut log_t = 0.0f64;
    let mut peak = 0.0f64;
    let mut decreasing_since = None;
    let mut n = 0usize;
    let stop_log = -(digits as f64) - 5.0;
    loop {
        if let Some(m) = terminates_at {
            if n > m {
                break;
            }
        }
        let nf = n as f64;
        let ratio = ((a1 + nf).abs() / ((b1 + nf).abs() * (b2 + nf).abs() * (nf + 1.0))).log10() + log_x;
        if !ratio.is_finite() {
            // x = 0 or the series terminates here.
            break;
        }
        if ratio < 0.0 && decreasing_since.is_none() {
            decreasing_since = Some(n);
        }
        if ratio >= 0.0 {
            decreasing_since = None;
        }
        log_t += ratio;
        peak = peak.max(log_t);
        n += 1;
        if decreasing_since.is_some() && log_t < stop_log {
            break;
        }
        if n >= cap {
            if decreasing_since.is_none() {
                return Err(Error::NoConvergence {
                    what: "1F2".into(),
                    terms: cap,
                });
            }
            break;
        }
    }
    let terms = n + 1;
    let extra = peak.max(0.0).ceil() as u32;
    let prec = bits_for_digits(digits + extra + 10);

    // Pass 2: sum at the raised precision.
    let x = x.with_prec(prec);
    let fa = Float::with_val(prec, &args.a1);
    let fb1 = Float::with_val(prec, &args.b1);
    let fb2 = Float::with_val(prec, &args.b2);
    let mut term = Complex::one(prec);
    let mut sum = Complex::one(prec);
    for k in 0..terms {
        let num = Float::with_val(prec, &fa + k as u32);
        let mut den = Float::with_val(prec, &fb1 + k as u32);
        den *= Float::with_val(prec, &fb2 + k as u32);
        den *= (k + 1) as u32;
        if num.is_zero() {
            break;
        }
        term = (&term * &x).scale(&Float::with_val(prec, &num / &den));
        sum += &term;
    }
    Ok(sum)
}

/// `mu`, `nu` of the Lommel function `s_{mu,nu}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LommelParams {
    pub mu: Rational,
    pub nu: Rational,
}

impl LommelParams {
    pub fn new(mu: impl Into<Rational>, nu: impl Into<Rational>) -> Self {
        LommelParams {
            mu: mu.into(),
            nu: nu.into(),
        }
    }

    /// The series `z^(mu+1) sum (-z^2/4)^m / prod_{k=1}^{m+1} ((mu+2k-1)^2 - nu^2)`
    /// requires `(mu + 2k - 1)^2 != nu^2` for every `k >= 1`.
    fn validate(&self) -> Result<()> {
        let one = Rational::from(1);
        let diff = Rational::from(&self.mu + &one) - &self.nu;
        let sum = Rational::from(&self.mu + &one) + &self.nu;
        for d in [diff, sum] {
            // d + 2(k-1) = 0 for some k >= 1  <=>  d is a non-positive even integer.
            if *d.denom() == 1 && *d.numer() <= 0 && d.numer().is_even() {
                return Err(Error::InvalidInput(format!(
                    "Lommel parameters (mu, nu) = ({}, {}) are degenerate",
                    self.mu, self.nu
                )));
            }
        }
        Ok(())
    }

    fn hyp_args(&self) -> Hyp1F2Args {
        let three = Rational::from(3);
        let lo = (Rational::from(&self.mu - &self.nu) + &three) / 2u32;
        let hi = (Rational::from(&self.mu + &self.nu) + three) / 2u32;
        Hyp1F2Args::new(1, lo, hi)
    }
}

/// `s_{mu,nu}(z) = z^(mu+1) / ((mu+1)^2 - nu^2) * 1F2(1; (mu-nu+3)/2, (mu+nu+3)/2; -z^2/4)`.
pub fn lommel_series(params: &LommelParams, z: &Complex, digits: u32) -> Result<Complex> {
    params.validate()?;
    let prec = bits_for_digits(digits + 10);
    let z = z.with_prec(prec);
    let arg = (&z * &z).mul_f64(-0.25);
    let f = hyp1f2(&params.hyp_args(), &arg, digits + 10)?.with_prec(prec);
    let mu1 = Rational::from(&params.mu + 1u32);
    let denom = Rational::from(mu1.square_ref()) - Rational::from(params.nu.square_ref());
    let pow = if *mu1.denom() == 1 {
        let e = mu1.numer().to_i64().unwrap_or(0);
        if e >= 0 {
            z.powu(e as u32)
        } else {
            z.powu((-e) as u32).recip()
        }
    } else {
        z.powc(&Complex::real(Float::with_val(prec, &mu1)))
    };
    let scale = Float::with_val(prec, &denom).recip();
    Ok((&pow * &f).scale(&scale))
}

fn lommel_prefactor(nu: &Float) -> Float {
    let prec = nu.prec();
    let pi = Float::with_val(prec, Constant::Pi);
    let c = Float::with_val(prec, &pi * nu).cos();
    Float::with_val(prec, 1 + c).recip()
}

fn check_lommel_nu(nu: &Rational) -> Result<()> {
    if Rational::from(nu.abs_ref()) >= 1 {
        return Err(Error::InvalidInput(format!("|nu| = |{nu}| must be < 1")));
    }
    Ok(())
}

fn digits_for_tol(tol: f64) -> u32 {
    MIN_DIGITS.max((-tol.log10()).ceil() as u32 + 10)
}

/// `s_{0,nu}(z) = 1/(1 + cos(pi nu)) * int_0^pi sin(z sin t) cos(nu t) dt`,
/// by adaptive quadrature to absolute tolerance `tol`.
pub fn lommel_integral(nu: &Rational, z: &Float, tol: f64) -> Result<Float> {
    check_lommel_nu(nu)?;
    let prec = bits_for_digits(digits_for_tol(tol));
    let fnu = Float::with_val(prec, nu);
    let z = Float::with_val(prec, z);
    let pre = lommel_prefactor(&fnu);
    let lo = Float::new(prec);
    let hi = Float::with_val(prec, Constant::Pi);
    let inner_tol = tol / 4.0 / pre.to_f64().max(1.0);
    let v = quad::integrate(
        |t| {
            let s = Float::with_val(prec, Float::with_val(prec, t.sin_ref()) * &z).sin();
            let c = Float::with_val(prec, &fnu * t).cos();
            Ok(s * c)
        },
        &lo,
        &hi,
        inner_tol,
        prec,
    )?;
    Ok(v * pre)
}

/// The sine-transform form `1/(1+cos(pi nu)) int_0^1 sin(z t) w(t) dt` with the
/// weight of [`polya_weight`], integrated after `t = sin(theta)`:
/// `int_0^(pi/2) sin(z sin(theta)) [cos(nu theta) + cos(nu (pi - theta))] dtheta`.
/// The substitution removes the `1/sqrt(1 - t^2)` endpoint singularity exactly.
pub fn lommel_polya_form(nu: &Rational, z: &Float, tol: f64) -> Result<Float> {
    check_lommel_nu(nu)?;
    let prec = bits_for_digits(digits_for_tol(tol));
    let fnu = Float::with_val(prec, nu);
    let z = Float::with_val(prec, z);
    let pi = Float::with_val(prec, Constant::Pi);
    let pre = lommel_prefactor(&fnu);
    let lo = Float::new(prec);
    let hi = Float::with_val(prec, &pi / 2u32);
    let inner_tol = tol / 4.0 / pre.to_f64().max(1.0);
    let v = quad::integrate(
        |th| {
            let s = Float::with_val(prec, Float::with_val(prec, th.sin_ref()) * &z).sin();
            let w1 = Float::with_val(prec, &fnu * th).cos();
            let w2 = Float::with_val(prec, Float::with_val(prec, &pi - th) * &fnu).cos();
            Ok(s * (w1 + w2))
        },
        &lo,
        &hi,
        inner_tol,
        prec,
    )?;
    Ok(v * pre)
}

/// Weight multiplying `sin(zt)` in the sine-transform representation of
/// `s_{0,nu}`, without the `1/(1 + cos(pi nu))` prefactor:
/// `[cos(nu asin t) + cos(nu pi - nu asin t)] / sqrt(1 - t^2)` on `0 < t < 1`.
pub fn polya_weight(nu: f64, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidInput(format!("t = {t} outside (0, 1)")));
    }
    if nu.is_nan() || nu.abs() >= 1.0 {
        return Err(Error::InvalidInput(format!("|nu| = {} must be < 1", nu.abs())));
    }
    let s = t.asin();
    let num = (nu * s).cos() + (nu * std::f64::consts::PI - nu * s).cos();
    Ok(num / (1.0 - t * t).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AiryKind {
    Ai,
    Bi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScorerKind {
    Hi,
    Gi,
}

fn gamma_third(prec: u32, num: u32) -> Float {
    Float::with_val(prec, Rational::from((num, 3))).gamma()
}

fn pow3(prec: u32, num: i32, den: u32) -> Float {
    let e = Float::with_val(prec, Rational::from((num, den)));
    Float::with_val(prec, 3).pow_ref_float(&e)
}

trait PowFloat {
    fn pow_ref_float(self, e: &Float) -> Float;
}

impl PowFloat for Float {
    fn pow_ref_float(self, e: &Float) -> Float {
        let p = self.prec();
        Float::with_val(p, self.ln() * e).exp()
    }
}

fn exact(f: Float) -> ExactComplex {
    ExactComplex::real(f.to_rational().expect("finite initial value"))
}

/// `(y(0), y'(0))` for Ai or Bi.
pub fn airy_initial_values(kind: AiryKind, digits: u32) -> (Float, Float) {
    let prec = bits_for_digits(digits);
    let g13 = gamma_third(prec, 1);
    let g23 = gamma_third(prec, 2);
    match kind {
        AiryKind::Ai => ((pow3(prec, 2, 3) * g23).recip(), -(pow3(prec, 1, 3) * g13).recip()),
        AiryKind::Bi => ((pow3(prec, 1, 6) * g23).recip(), pow3(prec, 1, 6) / g13),
    }
}

/// `(y(0), y'(0))` for Hi or Gi: `Gi(0) = Hi(0)/2 = 1/(3^(7/6) Gamma(2/3))`,
/// `Gi'(0) = Hi'(0)/2 = 1/(3^(5/6) Gamma(1/3))`.
pub fn scorer_initial_values(kind: ScorerKind, digits: u32) -> (Float, Float) {
    let prec = bits_for_digits(digits);
    let gi0 = (pow3(prec, 7, 6) * gamma_third(prec, 2)).recip();
    let gi1 = (pow3(prec, 5, 6) * gamma_third(prec, 1)).recip();
    match kind {
        ScorerKind::Gi => (gi0, gi1),
        ScorerKind::Hi => (gi0 * 2u32, gi1 * 2u32),
    }
}

/// Initial data (at the origin, `a = 1`, `b = 0`, `c = 0`) of Ai or Bi.
pub fn airy_data(kind: AiryKind, digits: u32) -> InitialData {
    let (v, d) = airy_initial_values(kind, digits + 20);
    let params = Parameters::new(ExactComplex::from_i64(1), ExactComplex::zero(), ExactComplex::zero());
    InitialData::general(&params, ExactComplex::zero(), exact(v), exact(d))
}

/// Initial data of Hi (`c = +1/pi`) or Gi (`c = -1/pi`).
pub fn scorer_data(kind: ScorerKind, digits: u32) -> InitialData {
    let prec = bits_for_digits(digits + 20);
    let (v, d) = scorer_initial_values(kind, digits + 20);
    let inv_pi = Float::with_val(prec, Constant::Pi).recip();
    let c = match kind {
        ScorerKind::Hi => inv_pi,
        ScorerKind::Gi => -inv_pi,
    };
    let params = Parameters::new(ExactComplex::from_i64(1), ExactComplex::zero(), exact(c));
    InitialData::general(&params, ExactComplex::zero(), exact(v), exact(d))
}

/// Ai(z) or Bi(z).
pub fn airy_homogeneous(kind: AiryKind, z: &Complex, digits: u32) -> Result<Complex> {
    Ok(evaluate(&airy_data(kind, digits), z, digits)?.value)
}

/// Value and derivative of Ai or Bi.
pub fn airy_with_derivative(kind: AiryKind, z: &Complex, digits: u32) -> Result<(Complex, Complex)> {
    let s = airy_data(kind, digits).series_covering(z, 1e-3, digits)?;
    let (v, d) = s.eval_with_derivative(z)?;
    Ok((v.value, d.value))
}

/// Hi(z) or Gi(z).
pub fn scorer(kind: ScorerKind, z: &Complex, digits: u32) -> Result<Complex> {
    Ok(evaluate(&scorer_data(kind, digits), z, digits)?.value)
}

/// `int_from^to y(x) dx` along the real segment for a solution given by
/// initial data, by adaptive quadrature on a single covering series.
pub fn integrate_real_segment(data: &InitialData, from: &Float, to: &Float, tol: f64, digits: u32) -> Result<Float> {
    let prec = bits_for_digits(digits);
    let mid = Complex::real(Float::with_val(prec, from + to) / 2u32);
    let half = Float::with_val(prec, to - from).abs().to_f64() / 2.0;
    let series = data.series_covering(&mid, half * 1.01 + 1e-6, digits)?;
    quad::integrate(|x| Ok(series.eval(&Complex::real(x.clone()))?.value.re), from, to, tol, prec)
}

/// `int_from^to Ai(x) dx` or `int_from^to Bi(x) dx` on the real line.
pub fn airy_integral(kind: AiryKind, from: &Float, to: &Float, tol: f64, digits: u32) -> Result<Float> {
    integrate_real_segment(&airy_data(kind, digits), from, to, tol, digits)
}

/// The double-zero solution written through Airy functions,
/// `c pi (Bi(z) int_p^z Ai - Ai(z) int_p^z Bi)`, for real `p` and `z`.
pub fn double_zero_via_airy(c: &Float, p: &Float, z: &Float, tol: f64, digits: u32) -> Result<Float> {
    let prec = bits_for_digits(digits);
    let zc = Complex::real(z.clone());
    let ai = airy_homogeneous(AiryKind::Ai, &zc, digits)?.re;
    let bi = airy_homogeneous(AiryKind::Bi, &zc, digits)?.re;
    let iai = airy_integral(AiryKind::Ai, p, z, tol, digits)?;
    let ibi = airy_integral(AiryKind::Bi, p, z, tol, digits)?;
    let pi = Float::with_val(prec, Constant::Pi);
    let inner = Float::with_val(prec, &bi * &iai) - Float::with_val(prec, &ai * &ibi);
    Ok(inner * pi * c)
}

/// Derivative `alpha` at the simple zero `q` for which the solution of
/// `y'' = zy + c` also has a double zero at `p` (real `p`, `q`):
/// `alpha = c int_q^p Ai / Ai(q) = c int_q^p Bi / Bi(q)`. Both forms are
/// returned.
pub fn double_zero_alpha(c: &Float, q: &Float, p: &Float, tol: f64, digits: u32) -> Result<(Float, Float)> {
    let prec = bits_for_digits(digits);
    let qc = Complex::real(q.clone());
    let ai_q = airy_homogeneous(AiryKind::Ai, &qc, digits)?.re;
    let bi_q = airy_homogeneous(AiryKind::Bi, &qc, digits)?.re;
    let iai = airy_integral(AiryKind::Ai, q, p, tol, digits)?;
    let ibi = airy_integral(AiryKind::Bi, q, p, tol, digits)?;
    let from_ai = Float::with_val(prec, c * &iai) / ai_q;
    let from_bi = Float::with_val(prec, c * &ibi) / bi_q;
    Ok((from_ai, from_bi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::roots;

    const D: u32 = 40;

    fn prec() -> u32 {
        bits_for_digits(D)
    }

    fn cr(v: f64) -> Complex {
        Complex::from_f64(prec(), v, 0.0)
    }

    fn third(n: i32) -> Rational {
        Rational::from((n, 3))
    }

    #[test]
    fn hyp_at_zero_is_one() {
        let args = Hyp1F2Args::new(1, third(4), third(5));
        assert_eq!(hyp1f2(&args, &cr(0.0), D).unwrap().to_f64_pair(), (1.0, 0.0));
    }

    #[test]
    fn hyp_rejects_nonpositive_integer_lower_parameter() {
        let args = Hyp1F2Args::new(1, 0, third(5));
        assert!(hyp1f2(&args, &cr(0.5), D).is_err());
        let args = Hyp1F2Args::new(1, -2, third(5));
        assert!(hyp1f2(&args, &cr(0.5), D).is_err());
    }

    #[test]
    fn hyp_terminating_series() {
        // 1F2(-2; 1, 1; x) = 1 - 2x + x^2/4
        let args = Hyp1F2Args::new(-2, 1, 1);
        let v = hyp1f2(&args, &cr(3.0), D).unwrap();
        assert!(v.dist_f64(&cr(1.0 - 6.0 + 9.0 / 4.0)) < 1e-35);
    }

    #[test]
    fn hyp_cap_is_reported() {
        let args = Hyp1F2Args::new(1, third(4), third(5));
        assert!(matches!(
            hyp1f2_capped(&args, &cr(-1.0e6), D, 10),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn hyp_large_negative_argument_keeps_digits() {
        // 1F2(1; 3/2, 1; -z^2/4) = sin(z)/z ... with b2 = 1 that is
        // sum (-z^2/4)^n / ((3/2)_n n!) = sin(z)/z.
        let args = Hyp1F2Args::new(1, Rational::from((3, 2)), 1);
        let z = 40.0f64;
        let v = hyp1f2(&args, &cr(-z * z / 4.0), D).unwrap();
        let want = Float::with_val(prec(), z).sin() / z;
        assert!(Float::with_val(prec(), &v.re - &want).abs() < 1e-35);
    }

    #[test]
    fn lommel_small_z_behaviour() {
        let p = LommelParams::new(0, third(1));
        let z = 1e-8;
        let v = lommel_series(&p, &cr(z), D).unwrap();
        let ratio = v.re.to_f64() / z;
        assert!((ratio - 9.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn lommel_series_is_odd_for_mu_zero() {
        let p = LommelParams::new(0, third(1));
        let plus = lommel_series(&p, &cr(2.0), D).unwrap();
        let minus = lommel_series(&p, &cr(-2.0), D).unwrap();
        assert!((&plus + &minus).abs_f64() < 1e-35);
    }

    #[test]
    fn lommel_degenerate_parameters_rejected() {
        // (mu + 1)^2 = nu^2
        assert!(lommel_series(&LommelParams::new(0, 1), &cr(1.0), D).is_err());
        // (mu + 3)^2 = nu^2
        assert!(lommel_series(&LommelParams::new(-2, 1), &cr(1.0), D).is_err());
    }

    #[test]
    fn lommel_integral_vanishes_at_zero_and_matches_series() {
        let nu = third(1);
        let zero = Float::new(prec());
        assert!(lommel_integral(&nu, &zero, 1e-25).unwrap().is_zero());
        let z = Float::with_val(prec(), 2);
        let i = lommel_integral(&nu, &z, 1e-25).unwrap();
        let s = lommel_series(&LommelParams::new(0, third(1)), &cr(2.0), D).unwrap();
        assert!(Float::with_val(prec(), &i - &s.re).abs() < 1e-20);
    }

    #[test]
    fn both_integral_forms_agree() {
        let nu = third(1);
        let z = Float::with_val(prec(), 5);
        let a = lommel_integral(&nu, &z, 1e-25).unwrap();
        let b = lommel_polya_form(&nu, &z, 1e-25).unwrap();
        assert!(Float::with_val(prec(), &a - &b).abs() < 1e-24);
        assert!(lommel_integral(&Rational::from(1), &z, 1e-10).is_err());
    }

    #[test]
    fn polya_weight_values() {
        assert!((polya_weight(0.0, 0.5).unwrap() - 4.0 / 3f64.sqrt()).abs() < 1e-14);
        assert!(polya_weight(0.3, 0.0).is_err());
        assert!(polya_weight(0.3, 1.0).is_err());
        assert!(polya_weight(1.0, 0.5).is_err());
        let mut prev = 0.0;
        for t in [0.9, 0.99, 0.9999, 0.999_999_9] {
            let w = polya_weight(0.9, t).unwrap();
            assert!(w > prev);
            prev = w;
        }
        assert!(prev > 500.0);
    }

    #[test]
    fn polya_weight_positive_increasing_on_grid() {
        let nu = 1.0 / 3.0;
        let n = 10_000;
        let mut prev = f64::NEG_INFINITY;
        for i in 1..n {
            let t = i as f64 / n as f64;
            let w = polya_weight(nu, t).unwrap();
            assert!(w > 0.0 && w > prev, "t = {t}");
            prev = w;
        }
    }

    #[test]
    fn hyp_remark_zero_in_first_interval() {
        // 1F2(1; (3-nu)/2, (3+nu)/2; x) has a simple zero in -[pi^2, pi^2/4].
        let nu = third(1);
        let args = Hyp1F2Args::new(1, (Rational::from(3) - &nu) / 2u32, (Rational::from(3) + &nu) / 2u32);
        let pi2 = std::f64::consts::PI.powi(2);
        let lo = Float::with_val(prec(), -pi2);
        let hi = Float::with_val(prec(), -pi2 / 4.0);
        let f = |x: &Float| Ok(hyp1f2(&args, &Complex::real(x.clone()), D)?.re);
        let (a, b) = roots::bisect(f, &lo, &hi, 1e-30).unwrap();
        let v = hyp1f2(&args, &Complex::real(a.clone()), D).unwrap();
        assert!(v.abs_f64() < 1e-25);
        assert!(Float::with_val(prec(), &b - &a).to_f64() <= 1e-30);
    }

    #[test]
    fn gi_at_zero() {
        let v = scorer(ScorerKind::Gi, &cr(0.0), D).unwrap();
        assert!((v.re.to_f64() - 0.204_975_5).abs() < 1e-7);
    }

    #[test]
    fn scorer_sum_is_bi() {
        let z = cr(1.0);
        let gi = scorer(ScorerKind::Gi, &z, D).unwrap();
        let hi = scorer(ScorerKind::Hi, &z, D).unwrap();
        let bi = airy_homogeneous(AiryKind::Bi, &z, D).unwrap();
        assert!((&(&gi + &hi) - &bi).abs_f64() < 1e-20);
    }

    #[test]
    fn hi_solves_forced_airy() {
        let data = scorer_data(ScorerKind::Hi, D);
        let s = data.series_covering(&cr(1.0), 0.1, D).unwrap();
        assert!(s.residual_check(&cr(1.0)).unwrap() < 1e-25);
    }

    #[test]
    fn airy_wronskian_is_one_over_pi() {
        let inv_pi = 1.0 / std::f64::consts::PI;
        for z in [0.0, 1.0, -2.0] {
            let (ai, dai) = airy_with_derivative(AiryKind::Ai, &cr(z), D).unwrap();
            let (bi, dbi) = airy_with_derivative(AiryKind::Bi, &cr(z), D).unwrap();
            let w = &(&ai * &dbi) - &(&dai * &bi);
            let want = Complex::real(Complex::pi(prec()).recip());
            assert!(w.dist_f64(&want) < 1e-20, "z = {z}: {}", w.re.to_f64() - inv_pi);
        }
        let data = airy_data(AiryKind::Ai, D);
        let s = data.series_covering(&cr(1.0), 0.1, D).unwrap();
        assert!(s.residual_check(&cr(1.0)).unwrap() < 1e-25);
    }
}
