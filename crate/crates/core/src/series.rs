//! Taylor-series solutions of `y'' = (az + b) y + c`.
//!
//! About a center `z0` the ODE reads `y'' = ((a z0 + b) + a h) y + c` with
//! `h = z - z0`, so the Taylor coefficients obey the three-term recursion
//!
//! ```text
//! g2     = ((a z0 + b) g0 + c) / 2
//! g3     = ((a z0 + b) g1 + a g0) / 6
//! g(n+2) = ((a z0 + b) g(n) + a g(n-1)) / ((n + 1)(n + 2)),   n >= 2
//! ```
//!
//! Every solution is entire; truncation is controlled a posteriori by the
//! size of the last retained terms (see [`SeriesSolution::eval`]).

use crate::error::{Error, Result};
use crate::num::{bits_for_digits, log10_abs, Complex, ExactComplex, MIN_DIGITS};

/// Coefficients of the ODE `y'' = (az + b) y + c` plus the derivative value
/// used to normalize principal-family solutions at their reference zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Parameters {
    pub a: ExactComplex,
    pub b: ExactComplex,
    pub c: ExactComplex,
    pub deriv_norm: ExactComplex,
}

impl Parameters {
    pub fn new(a: ExactComplex, b: ExactComplex, c: ExactComplex) -> Self {
        Parameters {
            a,
            b,
            c,
            deriv_norm: ExactComplex::from_i64(1),
        }
    }

    /// Parses decimal/fraction literals (`"-0.1"`, `"1/3"`, `"1,2"` for
    /// `1 + 2i`). Decimal literals are kept exact.
    pub fn parse(a: &str, b: &str, c: &str) -> Result<Self> {
        Ok(Parameters::new(a.parse()?, b.parse()?, c.parse()?))
    }

    /// From binary doubles (the exact double value is used).
    pub fn from_f64(a: f64, b: f64, c: f64) -> Result<Self> {
        Ok(Parameters::new(
            ExactComplex::from_f64(a)?,
            ExactComplex::from_f64(b)?,
            ExactComplex::from_f64(c)?,
        ))
    }

    pub fn with_deriv_norm(mut self, d: ExactComplex) -> Self {
        self.deriv_norm = d;
        self
    }

    pub fn is_real(&self) -> bool {
        self.a.is_real() && self.b.is_real() && self.c.is_real() && self.deriv_norm.is_real()
    }

    /// Fails if a principal-family solution is requested with `y'(0) = 0`.
    pub fn require_principal(&self) -> Result<()> {
        if self.deriv_norm.is_zero() {
            return Err(Error::InvalidInput(
                "deriv_norm must be nonzero for a simple-zero solution".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn at(&self, prec: u32) -> (Complex, Complex, Complex) {
        (self.a.to_complex(prec), self.b.to_complex(prec), self.c.to_complex(prec))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    /// `y(center) = y'(center) = 0`.
    DoubleZero,
    /// `y(center) = 0 != y'(center)`.
    SimpleZero,
    General,
}

#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: Complex,
    /// Truncation estimate plus a rounding bound.
    pub abs_error_bound: f64,
    pub terms_used: usize,
}

/// A truncated Taylor expansion `sum g_n (z - center)^n`.
///
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct SeriesSolution {
    center: Complex,
    coeffs: Vec<Complex>,
    digits: u32,
    family: FamilyTag,
    /// `None` for series obtained by differentiation.
    ode: Option<Parameters>,
}

/// Default working precision for a requested accuracy and series order.
pub fn default_precision(requested_digits: u32, order: usize) -> u32 {
    50u32.max(requested_digits + (order / 10) as u32)
}

fn check_finite(z: &Complex, what: &str) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{what} is not finite")))
    }
}

/// Builds the order-`order` Taylor series about `center` of the solution with
/// `y(center) = y0`, `y'(center) = y1`, at `digits` decimal digits.
pub fn build_series(
    params: &Parameters,
    center: &Complex,
    y0: &Complex,
    y1: &Complex,
    order: usize,
    digits: u32,
) -> Result<SeriesSolution> {
    if order < 4 {
        return Err(Error::InvalidInput(format!("order {order} < 4")));
    }
    if digits < MIN_DIGITS {
        return Err(Error::InvalidInput(format!("precision {digits} < {MIN_DIGITS} digits")));
    }
    check_finite(center, "center")?;
    check_finite(y0, "y0")?;
    check_finite(y1, "y1")?;
    let prec = bits_for_digits(digits);
    let center = center.with_prec(prec);
    let coeffs = recursion(params, &center, y0, y1, order, prec);
    let family = match (y0.is_zero(), y1.is_zero()) {
        (true, true) => FamilyTag::DoubleZero,
        (true, false) => FamilyTag::SimpleZero,
        _ => FamilyTag::General,
    };
    Ok(SeriesSolution {
        center,
        coeffs,
        digits,
        family,
        ode: Some(params.clone()),
    })
}

fn recursion(params: &Parameters, center: &Complex, y0: &Complex, y1: &Complex, order: usize, prec: u32) -> Vec<Complex> {
    let (a, b, c) = params.at(prec);
    let local_b = &(&a * center) + &b;
    let mut g = Vec::with_capacity(order + 1);
    g.push(y0.with_prec(prec));
    g.push(y1.with_prec(prec));
    g.push((&(&local_b * &g[0]) + &c).div_u64(2));
    g.push((&(&local_b * &g[1]) + &(&a * &g[0])).div_u64(6));
    for n in 2..order.saturating_sub(1) {
        let next = (&(&local_b * &g[n]) + &(&a * &g[n - 1])).div_u64(((n + 1) * (n + 2)) as u64);
        g.push(next);
    }
    g.truncate(order + 1);
    g
}

impl SeriesSolution {
    pub fn center(&self) -> &Complex {
        &self.center
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn prec(&self) -> u32 {
        bits_for_digits(self.digits)
    }

    pub fn family(&self) -> FamilyTag {
        self.family
    }

    pub fn params(&self) -> Option<&Parameters> {
        self.ode.as_ref()
    }

    fn accept_threshold(&self) -> f64 {
        log10_threshold(self.digits)
    }

    /// Horner evaluation at `z`.
    ///
    /// Rejects `z` with `RadiusExceeded` unless the largest of the last three
    /// retained terms, relative to `max(1, |value|)`, is below
    /// `10^(10 - digits)`. Three terms are used because for `b = 0` about the
    /// origin two out of three coefficients vanish identically.
    pub fn eval(&self, z: &Complex) -> Result<EvalResult> {
        eval_coeffs(&self.coeffs, &self.center, z, self.prec(), self.accept_threshold())
    }

    /// Value and first derivative in one call.
    pub fn eval_with_derivative(&self, z: &Complex) -> Result<(EvalResult, EvalResult)> {
        let v = self.eval(z)?;
        let d = eval_coeffs(
            &derived_coeffs(&self.coeffs),
            &self.center,
            z,
            self.prec(),
            self.accept_threshold(),
        )?;
        Ok((v, d))
    }

    /// Term-by-term derivative (order `N - 1`, family `General`).
    pub fn derivative(&self) -> SeriesSolution {
        SeriesSolution {
            center: self.center.clone(),
            coeffs: derived_coeffs(&self.coeffs),
            digits: self.digits,
            family: FamilyTag::General,
            ode: None,
        }
    }

    /// `|y'' - (az + b) y - c|` at `z`.
    pub fn residual_check(&self, z: &Complex) -> Result<f64> {
        let params = self.ode.as_ref().ok_or(Error::NotAnOdeSolution)?;
        let prec = self.prec();
        let y = self.eval(z)?;
        let d2 = derived_coeffs(&derived_coeffs(&self.coeffs));
        let ypp = eval_coeffs(&d2, &self.center, z, prec, self.accept_threshold())?;
        let (a, b, c) = params.at(prec);
        let z = z.with_prec(prec);
        let rhs = &(&(&(&a * &z) + &b) * &y.value) + &c;
        Ok((&ypp.value - &rhs).abs_f64())
    }

    /// Value and derivative at `new_center` feed a fresh series there.
    pub fn recenter(&self, new_center: &Complex, order: usize) -> Result<SeriesSolution> {
        let params = self.ode.as_ref().ok_or(Error::NotAnOdeSolution)?;
        let (v, d) = self.eval_with_derivative(new_center)?;
        build_series(params, new_center, &v.value, &d.value, order, self.digits)
    }
}

fn log10_threshold(digits: u32) -> f64 {
    10.0 - digits as f64
}

fn derived_coeffs(g: &[Complex]) -> Vec<Complex> {
    if g.len() <= 1 {
        return vec![Complex::zero(g.first().map_or(64, |c| c.prec()))];
    }
    g.iter().enumerate().skip(1).map(|(n, c)| c.mul_i64(n as i64)).collect()
}

fn eval_coeffs(g: &[Complex], center: &Complex, z: &Complex, prec: u32, log10_accept: f64) -> Result<EvalResult> {
    let h = &z.with_prec(prec) - center;
    let n = g.len() - 1;
    let mut acc = Complex::zero(prec);
    for c in g.iter().rev() {
        acc = &(&acc * &h) + c;
    }
    if h.is_zero() {
        return Ok(EvalResult {
            value: acc,
            abs_error_bound: 0.0,
            terms_used: 1,
        });
    }
    // Term magnitudes in log10, robust beyond the f64 exponent range.
    let log_h = log10_abs(&h.abs());
    let term_log = |k: usize| log10_abs(&g[k].abs()) + k as f64 * log_h;
    let tail_log = (n.saturating_sub(2)..=n).map(term_log).fold(f64::NEG_INFINITY, f64::max);
    let value_log = log10_abs(&acc.abs()).max(0.0);
    if tail_log.is_finite() && tail_log - value_log >= log10_accept {
        return Err(Error::RadiusExceeded {
            distance: h.abs_f64(),
            order: n,
        });
    }
    let sum_log = (0..=n).map(term_log).fold(f64::NEG_INFINITY, |m, t| {
        // log10(10^m + 10^t) without overflow.
        if m == f64::NEG_INFINITY {
            t
        } else if t == f64::NEG_INFINITY {
            m
        } else {
            let hi = m.max(t);
            hi + (1.0 + 10f64.powf(-(m - t).abs())).log10()
        }
    });
    let eps_log = -(prec as f64) * std::f64::consts::LOG10_2;
    let rounding = 10f64.powf(sum_log + eps_log + ((n + 1) as f64 * 4.0).log10());
    let tail = if tail_log.is_finite() {
        2.0 * 10f64.powf(tail_log)
    } else {
        0.0
    };
    Ok(EvalResult {
        value: acc,
        abs_error_bound: tail + rounding,
        terms_used: n + 1,
    })
}

/// Largest series order [`plan_order`] will schedule.
pub const MAX_ORDER: usize = 20_000;
/// Largest working precision [`plan_order`] will schedule.
pub const MAX_WORKING_DIGITS: u32 = 4_000;

/// Smallest order meeting the tail criterion on a disk of `radius`, together
/// with the working precision (digits) the evaluation should use.
///
/// Magnitudes are estimated by running the recursion at 64 bits. The working
/// precision follows [`default_precision`] and is raised further when the
/// largest term on the disk exceeds 1, so that cancellation in the sum does
/// not consume the requested digits.
///
/// Fails with `NoConvergence` past [`MAX_ORDER`] terms and with
/// `PrecisionLimit` past [`MAX_WORKING_DIGITS`] digits.
pub fn plan_order(
    params: &Parameters,
    center: &Complex,
    y0: &Complex,
    y1: &Complex,
    radius: f64,
    digits: u32,
) -> Result<(usize, u32)> {
    let probe = 64;
    let (a, b, c) = params.at(probe);
    let local_b = &(&a * &center.with_prec(probe)) + &b;
    let log_r = radius.max(1e-300).log10();
    let mut g: Vec<Complex> = vec![y0.with_prec(probe), y1.with_prec(probe)];
    g.push((&(&local_b * &g[0]) + &c).div_u64(2));
    g.push((&(&local_b * &g[1]) + &(&a * &g[0])).div_u64(6));
    let term = |g: &[Complex], k: usize| log10_abs(&g[k].abs()) + k as f64 * log_r;
    let mut max_log = (0..g.len()).map(|k| term(&g, k)).fold(f64::NEG_INFINITY, f64::max);
    let mut n = 3usize;
    loop {
        let k = n - 1;
        let next = (&(&local_b * &g[k]) + &(&a * &g[k - 1])).div_u64(((k + 1) * (k + 2)) as u64);
        g.push(next);
        n += 1;
        max_log = max_log.max(term(&g, n));
        let work = default_precision(digits, n).max(digits + max_log.max(0.0).ceil() as u32 + 5);
        // The derivative's tail is larger by about n / radius; cover both.
        let tail =
            (n - 2..=n).map(|k| term(&g, k)).fold(f64::NEG_INFINITY, f64::max) + (n as f64 / radius.max(1e-300)).log10().max(0.0);
        let terminated = tail == f64::NEG_INFINITY && g[n - 3].is_zero();
        if n >= 8 && (terminated || tail < log10_threshold(work) - 1.0) {
            return Ok((n, work));
        }
        if work > MAX_WORKING_DIGITS {
            return Err(Error::PrecisionLimit {
                what: format!("a disk of radius {radius:.3e}"),
                needed: work,
                limit: MAX_WORKING_DIGITS,
            });
        }
        if n >= MAX_ORDER {
            return Err(Error::NoConvergence {
                what: format!("a disk of radius {radius:.3e}"),
                terms: n,
            });
        }
    }
}

/// Initial data `y(point) = y0`, `y'(point) = y1` for the ODE; produces series
/// centered anywhere by marching from `point`.
#[derive(Clone, Debug)]
pub struct InitialData {
    pub params: Parameters,
    pub point: ExactComplex,
    pub y0: ExactComplex,
    pub y1: ExactComplex,
}

impl InitialData {
    /// Solution with a simple zero at the origin and `y'(0) = deriv_norm`.
    pub fn principal(params: &Parameters) -> Result<Self> {
        params.require_principal()?;
        Ok(InitialData {
            params: params.clone(),
            point: ExactComplex::zero(),
            y0: ExactComplex::zero(),
            y1: params.deriv_norm.clone(),
        })
    }

    /// The solution with a double zero at `p` (proportional to `c`).
    pub fn double_zero(params: &Parameters, p: ExactComplex) -> Self {
        InitialData {
            params: params.clone(),
            point: p,
            y0: ExactComplex::zero(),
            y1: ExactComplex::zero(),
        }
    }

    pub fn general(params: &Parameters, point: ExactComplex, y0: ExactComplex, y1: ExactComplex) -> Self {
        InitialData {
            params: params.clone(),
            point,
            y0,
            y1,
        }
    }

    /// A series centered at `center` accurate (to about `digits` digits
    /// relative to `max(1, |y|)`) on the disk `|z - center| <= radius`.
    pub fn series_covering(&self, center: &Complex, radius: f64, digits: u32) -> Result<SeriesSolution> {
        let reach = self.point.to_complex(64).dist_f64(center).max(center.abs_f64()) + radius;
        let growth = self.growth_digits(reach);
        if digits as f64 + growth > MAX_WORKING_DIGITS as f64 {
            return Err(Error::PrecisionLimit {
                what: format!("a disk reaching |z| = {reach:.3e}"),
                needed: (digits as f64 + growth).ceil() as u32,
                limit: MAX_WORKING_DIGITS,
            });
        }
        let start_prec = bits_for_digits(digits + 20);
        let point = self.point.to_complex(start_prec);
        let mut y0 = self.y0.to_complex(start_prec);
        let mut y1 = self.y1.to_complex(start_prec);
        let mut here = point.clone();
        let target = center.with_prec(start_prec);
        let dist = here.dist_f64(&target);
        if dist > 0.0 {
            let step = self.march_step(&here, &target);
            let hops = (dist / step).ceil().max(1.0) as usize;
            let dir = (&target - &here).div_u64(hops as u64);
            for i in 1..=hops {
                let next = if i == hops { target.clone() } else { &here + &dir };
                let hop = here.dist_f64(&next);
                let (order, work) = plan_order(&self.params, &here, &y0, &y1, hop * 1.05, digits + 10)?;
                let s = build_series(&self.params, &here, &y0, &y1, order, work)?;
                let (v, d) = s.eval_with_derivative(&next)?;
                y0 = v.value;
                y1 = d.value;
                here = next;
            }
        }
        let (order, work) = plan_order(&self.params, &here, &y0, &y1, radius.max(1e-3), digits)?;
        let mut s = build_series(&self.params, &here, &y0, &y1, order, work)?;
        // Preserve the family tag of the anchor when no marching happened.
        if dist == 0.0 {
            s.family = match (self.y0.is_zero(), self.y1.is_zero()) {
                (true, true) => FamilyTag::DoubleZero,
                (true, false) => FamilyTag::SimpleZero,
                _ => FamilyTag::General,
            };
        }
        Ok(s)
    }

    /// WKB estimate of log10 of the growth of solutions out to distance `r`:
    /// `(2/3) sqrt|a| r^(3/2) + sqrt|b| r`, over ln 10.
    fn growth_digits(&self, r: f64) -> f64 {
        let (a, b) = (self.params.a.to_f64_pair(), self.params.b.to_f64_pair());
        let (a, b) = (a.0.hypot(a.1), b.0.hypot(b.1));
        (2.0 / 3.0 * a.sqrt() * r.powf(1.5) + b.sqrt() * r) / std::f64::consts::LN_10
    }

    /// Hop length for marching, shrinking where the local coefficient
    /// `|a z + b|` is large.
    fn march_step(&self, from: &Complex, to: &Complex) -> f64 {
        let (a, b) = (self.params.a.to_f64_pair(), self.params.b.to_f64_pair());
        let scale = |z: &Complex| {
            let (x, y) = z.to_f64_pair();
            let re = a.0 * x - a.1 * y + b.0;
            let im = a.0 * y + a.1 * x + b.1;
            re.hypot(im).sqrt().max((a.0.hypot(a.1)).cbrt()).max(1.0)
        };
        let w = scale(from).max(scale(to));
        3.0 / w
    }
}

/// Value of the solution at a single point (marching as needed).
pub fn evaluate(data: &InitialData, z: &Complex, digits: u32) -> Result<EvalResult> {
    let s = data.series_covering(z, 1e-3, digits)?;
    s.eval(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::{Float, Rational};

    const D: u32 = 50;

    fn prec() -> u32 {
        bits_for_digits(D)
    }

    fn c(re: f64) -> Complex {
        Complex::from_f64(prec(), re, 0.0)
    }

    fn assert_coeff(s: &SeriesSolution, n: usize, expect: Rational) {
        let want = Float::with_val(prec(), &expect);
        let got = &s.coeffs()[n];
        assert!(
            Float::with_val(prec(), &got.re - &want).abs() < 1e-45 && got.im.is_zero(),
            "g{n} = {got}, want {want}"
        );
    }

    #[test]
    fn double_zero_coefficients_at_origin() {
        let p = Parameters::parse("1", "0", "1").unwrap();
        let s = build_series(&p, &c(0.0), &c(0.0), &c(0.0), 12, D).unwrap();
        assert_eq!(s.family(), FamilyTag::DoubleZero);
        assert_coeff(&s, 0, Rational::new());
        assert_coeff(&s, 1, Rational::new());
        assert_coeff(&s, 2, Rational::from((1, 2)));
        assert_coeff(&s, 3, Rational::new());
        assert_coeff(&s, 4, Rational::new());
        assert_coeff(&s, 5, Rational::from((1, 40)));
        // 3^2 2! / 8! = 18 / 40320
        assert_coeff(&s, 8, Rational::from((18, 40320)));
    }

    #[test]
    fn sine_coefficients() {
        let p = Parameters::parse("0", "-1", "0").unwrap();
        let s = build_series(&p, &c(0.0), &c(0.0), &c(1.0), 10, D).unwrap();
        assert_eq!(s.family(), FamilyTag::SimpleZero);
        assert_coeff(&s, 1, Rational::from(1));
        assert_coeff(&s, 2, Rational::new());
        assert_coeff(&s, 3, Rational::from((-1, 6)));
        assert_coeff(&s, 5, Rational::from((1, 120)));
        assert_coeff(&s, 7, Rational::from((-1, 5040)));
    }

    #[test]
    fn shifted_double_zero_e4() {
        let p = Parameters::parse("1", "0", "1").unwrap();
        let s = build_series(&p, &c(2.0), &c(0.0), &c(0.0), 10, D).unwrap();
        assert_coeff(&s, 2, Rational::from((1, 2)));
        assert_coeff(&s, 3, Rational::new());
        assert_coeff(&s, 4, Rational::from((1, 12)));
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = Parameters::parse("1", "0", "1").unwrap();
        assert!(matches!(
            build_series(&p, &c(0.0), &c(0.0), &c(0.0), 3, D),
            Err(Error::InvalidInput(_))
        ));
        assert!(build_series(&p, &c(0.0), &c(0.0), &c(0.0), 10, 20).is_err());
        let nan = Complex::from_f64(prec(), f64::NAN, 0.0);
        assert!(build_series(&p, &nan, &c(0.0), &c(0.0), 10, D).is_err());
        assert!(Parameters::from_f64(f64::INFINITY, 0.0, 0.0).is_err());
        let p0 = Parameters::parse("1", "0", "1")
            .unwrap()
            .with_deriv_norm(ExactComplex::zero());
        assert!(InitialData::principal(&p0).is_err());
    }

    #[test]
    fn eval_at_center_of_double_zero_is_exact() {
        let p = Parameters::parse("1", "0", "1").unwrap();
        let s = build_series(&p, &c(0.0), &c(0.0), &c(0.0), 30, D).unwrap();
        let r = s.eval(&c(0.0)).unwrap();
        assert!(r.value.is_zero());
        assert_eq!(r.abs_error_bound, 0.0);
    }

    #[test]
    fn sine_vanishes_at_pi() {
        let p = Parameters::parse("0", "-1", "0").unwrap();
        let s = build_series(&p, &c(0.0), &c(0.0), &c(1.0), 80, D).unwrap();
        let pi = Complex::real(Complex::pi(prec()));
        let r = s.eval(&pi).unwrap();
        assert!(r.value.abs_f64() < 1e-30, "{}", r.value);
        assert!(r.abs_error_bound < 1e-30);
    }

    #[test]
    fn double_zero_is_proportional_to_c() {
        let p1 = Parameters::parse("1", "0", "1").unwrap();
        let p2 = Parameters::parse("1", "0", "2").unwrap();
        let s1 = build_series(&p1, &c(0.0), &c(0.0), &c(0.0), 60, D).unwrap();
        let s2 = build_series(&p2, &c(0.0), &c(0.0), &c(0.0), 60, D).unwrap();
        let v1 = s1.eval(&c(1.0)).unwrap().value;
        let v2 = s2.eval(&c(1.0)).unwrap().value;
        assert_eq!(v1.mul_i64(2), v2);
    }

    #[test]
    fn derivative_values() {
        let p = Parameters::parse("1", "0", "1").unwrap();
        let s = build_series(&p, &c(0.5), &c(0.0), &c(0.0), 30, D).unwrap();
        assert!(s.derivative().eval(&c(0.5)).unwrap().value.is_zero());
        assert_eq!(s.derivative().family(), FamilyTag::General);
        assert_eq!(s.derivative().order(), 29);

        let sine = Parameters::parse("0", "-1", "0").unwrap();
        let s = build_series(&sine, &c(0.0), &c(0.0), &c(1.0), 30, D).unwrap();
        let d0 = s.derivative().eval(&c(0.0)).unwrap().value;
        assert_eq!(d0, Complex::one(prec()));

        let alpha = Complex::from_f64(prec(), 0.3, -1.25);
        let s = build_series(&p, &c(1.0), &c(0.0), &alpha, 30, D).unwrap();
        assert_eq!(s.derivative().eval(&c(1.0)).unwrap().value, alpha);
        assert!(matches!(s.derivative().residual_check(&c(1.0)), Err(Error::NotAnOdeSolution)));
    }

    #[test]
    fn residuals() {
        let p = Parameters::parse("0.3", "-1.7", "0.25").unwrap();
        let s = build_series(&p, &c(0.4), &c(0.1), &c(-0.6), 60, D).unwrap();
        assert!(s.residual_check(&c(0.4)).unwrap() < 10f64.powi(-(D as i32) + 5));

        let sine = Parameters::parse("0", "-1", "0").unwrap();
        let s = build_series(&sine, &c(0.0), &c(0.0), &c(1.0), 60, D).unwrap();
        assert!(s.residual_check(&c(1.0)).unwrap() < 1e-30);
        assert!(matches!(s.residual_check(&c(40.0)), Err(Error::RadiusExceeded { .. })));
        assert!(matches!(s.eval(&c(40.0)), Err(Error::RadiusExceeded { .. })));
    }

    #[test]
    fn degenerate_constant_forcing_terminates() {
        let p = Parameters::parse("0", "0", "3").unwrap();
        let s = build_series(&p, &c(0.0), &c(1.0), &c(2.0), 20, D).unwrap();
        // y = 1 + 2z + 3z^2/2
        let r = s.eval(&c(10.0)).unwrap();
        assert!(r.value.dist_f64(&c(171.0)) < 1e-40);
        assert!(s.coeffs()[4..].iter().all(Complex::is_zero));
    }

    #[test]
    fn covering_series_marches_to_far_centers() {
        let sine = Parameters::parse("0", "-1", "0").unwrap();
        let data = InitialData::principal(&sine).unwrap();
        let z = c(20.0);
        let s = data.series_covering(&z, 1.0, D).unwrap();
        let want = Float::with_val(prec(), 20.0).sin();
        let got = s.eval(&c(20.5)).unwrap().value;
        let want_far = Float::with_val(prec(), 20.5).sin();
        assert!(Float::with_val(prec(), &got.re - &want_far).abs() < 1e-35);
        let got0 = s.eval(&z).unwrap().value;
        assert!(Float::with_val(prec(), &got0.re - &want).abs() < 1e-35);
    }

    #[test]
    fn plan_order_handles_sparse_coefficients() {
        // b = 0 about the origin: only every third coefficient is nonzero.
        let p = Parameters::parse("1", "0", "1").unwrap();
        let (n, work) = plan_order(&p, &c(0.0), &c(0.0), &c(0.0), 5.0, D).unwrap();
        let s = build_series(&p, &c(0.0), &c(0.0), &c(0.0), n, work).unwrap();
        assert!(s.eval(&c(-5.0)).is_ok());
        assert!(work >= 50);
    }

    #[test]
    fn plan_order_refuses_huge_disks() {
        let p = Parameters::parse("1", "0", "1").unwrap();
        let r = plan_order(&p, &c(0.0), &c(0.0), &c(0.0), 500.0, D);
        assert!(
            matches!(r, Err(Error::NoConvergence { .. } | Error::PrecisionLimit { .. })),
            "{r:?}"
        );
        let data = InitialData::double_zero(&p, ExactComplex::zero());
        let r = data.series_covering(&c(500.0), 500.0, D);
        assert!(matches!(r, Err(Error::PrecisionLimit { .. })), "{r:?}");
    }
}
