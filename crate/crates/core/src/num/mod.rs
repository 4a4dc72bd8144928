//! Multiprecision building blocks shared by every module.

mod complex;
mod exact;
pub mod quad;
pub mod roots;

pub use complex::Complex;
pub use exact::{parse_rational, ExactComplex};

use rug::Float;

/// Lowest working precision accepted by the series and special-function
/// routines, in decimal digits.
pub const MIN_DIGITS: u32 = 30;

/// Decimal digits to MPFR bits, with a few guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
}

/// Inverse of [`bits_for_digits`], rounded down.
pub fn digits_for_bits(bits: u32) -> u32 {
    ((bits.saturating_sub(8)) as f64 / std::f64::consts::LOG2_10).floor() as u32
}

/// `10^-digits` as an f64 (saturating to 0 below the f64 range).
pub fn ten_pow_neg(digits: f64) -> f64 {
    10f64.powf(-digits)
}

/// `log10 |x|`, with `-inf` for zero. Works beyond the f64 exponent range.
pub fn log10_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    m.abs().log10() + e as f64 * std::f64::consts::LOG10_2
}

pub fn float(prec: u32, v: f64) -> Float {
    Float::with_val(prec, v)
}
