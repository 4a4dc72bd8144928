//! Scalar root refinement: sign-change bisection and Newton polishing.

use rug::Float;

use super::Complex;
use crate::error::Error;

/// Shrinks a sign-change bracket `[lo, hi]` of `f` to width `width`.
///
/// Returns the final bracket. Fails if the endpoints do not straddle a sign
/// change.
pub fn bisect<F>(mut f: F, lo: &Float, hi: &Float, width: f64) -> Result<(Float, Float), Error>
where
    F: FnMut(&Float) -> Result<Float, Error>,
{
    let prec = lo.prec().max(hi.prec());
    let mut a = Float::with_val(prec, lo);
    let mut b = Float::with_val(prec, hi);
    let fa = f(&a)?;
    let fb = f(&b)?;
    if fa.is_zero() {
        return Ok((a.clone(), a));
    }
    if fb.is_zero() {
        return Ok((b.clone(), b));
    }
    if fa.is_sign_negative() == fb.is_sign_negative() {
        return Err(Error::InvalidInput("bracket has no sign change".into()));
    }
    let neg_at_a = fa.is_sign_negative();
    for _ in 0..4 * prec {
        if Float::with_val(prec, &b - &a).to_f64().abs() <= width {
            break;
        }
        let m = Float::with_val(prec, &a + &b) / 2u32;
        let fm = f(&m)?;
        if fm.is_zero() {
            return Ok((m.clone(), m));
        }
        if fm.is_sign_negative() == neg_at_a {
            a = m;
        } else {
            b = m;
        }
    }
    Ok((a, b))
}

/// Outcome of a Newton polish.
#[derive(Clone, Debug)]
pub struct Polished {
    pub root: Complex,
    pub value_abs: f64,
    pub last_step: f64,
    pub iterations: u32,
}

/// Newton iteration on `f` with derivative, stopping when the step falls
/// below `step_tol` or `|f|` below `value_tol`.
///
/// `f_df` returns `(f(z), f'(z))`. Steps are damped so that `|f|` does not
/// grow by more than a factor 4 per iteration.
pub fn newton<F>(mut f_df: F, start: &Complex, step_tol: f64, value_tol: f64, max_iter: u32) -> Result<Polished, Error>
where
    F: FnMut(&Complex) -> Result<(Complex, Complex), Error>,
{
    let mut z = start.clone();
    let (mut fz, mut dz) = f_df(&z)?;
    let mut fabs = fz.abs_f64();
    let mut last_step = f64::INFINITY;
    for it in 0..max_iter {
        if fabs <= value_tol && it > 0 {
            return Ok(Polished {
                root: z,
                value_abs: fabs,
                last_step,
                iterations: it,
            });
        }
        if dz.is_zero() {
            return Err(Error::NotConverged {
                what: "newton (zero derivative)".into(),
                terms: it as usize,
            });
        }
        let mut step = &fz / &dz;
        let mut accepted = false;
        for _ in 0..30 {
            let cand = &z - &step;
            let (fc, dc) = f_df(&cand)?;
            let fcabs = fc.abs_f64();
            if fcabs <= 4.0 * fabs || fabs == 0.0 {
                last_step = step.abs_f64();
                z = cand;
                fz = fc;
                dz = dc;
                fabs = fcabs;
                accepted = true;
                break;
            }
            step = step.mul_f64(0.5);
        }
        if !accepted {
            break;
        }
        if last_step <= step_tol || fabs <= value_tol {
            return Ok(Polished {
                root: z,
                value_abs: fabs,
                last_step,
                iterations: it + 1,
            });
        }
    }
    Err(Error::NotConverged {
        what: "newton".into(),
        terms: max_iter as usize,
    })
}
