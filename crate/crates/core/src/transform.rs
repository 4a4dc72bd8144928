//! The map `T_{A,B} y(z) = A y(z - B)` between solutions, and the identities
//! built on it: quasi-periodicity of zeros, homogeneity in the parameters and
//! the energy identity of the double-zero solution.
//!
//! If `y` solves the ODE with `(a, b + aB, c/A)` then `A y(z - B)` solves it
//! with `(a, b, c)`.

use rug::Float;

use crate::error::{Error, Result};
use crate::num::{bits_for_digits, quad, Complex, ExactComplex};
use crate::series::{InitialData, Parameters};
use crate::zeros::{disk_zeros, nearest_zeros, ray_zeros, ZeroRecord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformSpec {
    pub a: ExactComplex,
    pub b: ExactComplex,
}

impl TransformSpec {
    pub fn new(a: ExactComplex, b: ExactComplex) -> Self {
        TransformSpec { a, b }
    }

    pub fn identity() -> Self {
        TransformSpec::new(ExactComplex::from_i64(1), ExactComplex::zero())
    }

    /// `T_{A2,B2} . T_{A1,B1} = T_{A1 A2, B1 + B2}`.
    pub fn then(&self, next: &TransformSpec) -> TransformSpec {
        TransformSpec::new(self.a.mul(&next.a), self.b.add(&next.b))
    }
}

/// Parameters the source must carry so that the image solves `params`:
/// `(a, b + aB, c/A)`.
pub fn map_parameters(spec: &TransformSpec, params: &Parameters) -> Result<Parameters> {
    if spec.a.is_zero() {
        return Err(Error::DegenerateA);
    }
    Ok(Parameters {
        a: params.a.clone(),
        b: params.b.add(&params.a.mul(&spec.b)),
        c: params.c.div(&spec.a)?,
        deriv_norm: params.deriv_norm.clone(),
    })
}

/// A solution by its data at one point, independent of the parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionDescription {
    pub point: ExactComplex,
    pub y0: ExactComplex,
    pub y1: ExactComplex,
}

impl SolutionDescription {
    /// Simple zero at the origin with `y'(0) = d`.
    pub fn principal(d: ExactComplex) -> Self {
        SolutionDescription {
            point: ExactComplex::zero(),
            y0: ExactComplex::zero(),
            y1: d,
        }
    }

    pub fn with_params(&self, params: &Parameters) -> InitialData {
        InitialData::general(params, self.point.clone(), self.y0.clone(), self.y1.clone())
    }
}

#[derive(Clone, Debug)]
pub struct Transformed {
    /// Solution of the target parameters.
    pub image: InitialData,
    /// The source solution (with mapped parameters); `None` on the degenerate path.
    pub source: Option<InitialData>,
    pub spec: TransformSpec,
}

/// Applies `T_{A,B}` to the member `src` of the family with parameters
/// `map_parameters(spec, params)`, giving a solution for `params`.
///
/// With `A = 0` the limit keeps only the part proportional to `c`: the
/// double-zero solution at `src.point + B`. It is returned only when
/// `allow_degenerate` is set; otherwise `DegenerateA`.
pub fn apply_transform(
    spec: &TransformSpec,
    params: &Parameters,
    src: &SolutionDescription,
    allow_degenerate: bool,
) -> Result<Transformed> {
    let point = src.point.add(&spec.b);
    if spec.a.is_zero() {
        if !allow_degenerate {
            return Err(Error::DegenerateA);
        }
        return Ok(Transformed {
            image: InitialData::double_zero(params, point),
            source: None,
            spec: spec.clone(),
        });
    }
    let source = src.with_params(&map_parameters(spec, params)?);
    let image = InitialData::general(params, point, spec.a.mul(&src.y0), spec.a.mul(&src.y1));
    Ok(Transformed {
        image,
        source: Some(source),
        spec: spec.clone(),
    })
}

/// `|image(z) - A source(z - B)|` at `z`.
pub fn transform_eval_residual(t: &Transformed, z: &Complex, digits: u32) -> Result<f64> {
    let source = t.source.as_ref().ok_or(Error::DegenerateA)?;
    let prec = bits_for_digits(digits);
    let lhs = crate::series::evaluate(&t.image, z, digits)?.value;
    let shifted = &z.with_prec(prec) - &t.spec.b.to_complex(prec);
    let rhs = &t.spec.a.to_complex(prec) * &crate::series::evaluate(source, &shifted, digits)?.value;
    Ok(lhs.dist_f64(&rhs))
}

fn exact(z: &Complex) -> Result<ExactComplex> {
    ExactComplex::from_complex(z)
}

/// Prop. "identity transform": with `B = xi_n - xi_m`, `A = S'(xi_n)/S'(xi_m)`
/// for zeros of the principal solution `S`, `T_{A,B}` maps the member of the
/// `(a, b + aB, c/A)` family vanishing at `xi_m` with slope `S'(xi_m)` onto
/// `S`. Returns the largest `|T S - S|` over `samples`.
pub fn identity_transform_residual(
    params: &Parameters,
    xi_m: &Complex,
    xi_n: &Complex,
    samples: &[Complex],
    digits: u32,
) -> Result<f64> {
    let data = InitialData::principal(params)?;
    let slope = |x: &Complex| -> Result<Complex> {
        let s = data.series_covering(x, 1e-3, digits)?;
        Ok(s.eval_with_derivative(x)?.1.value)
    };
    let dm = slope(xi_m)?;
    let dn = slope(xi_n)?;
    let spec = TransformSpec::new(exact(&(&dn / &dm))?, exact(&(xi_n - xi_m))?);
    let src = SolutionDescription {
        point: exact(xi_m)?,
        y0: ExactComplex::zero(),
        y1: exact(&dm)?,
    };
    let t = apply_transform(&spec, params, &src, false)?;
    let source = t.source.as_ref().expect("nondegenerate");
    let prec = bits_for_digits(digits);
    let mut worst: f64 = 0.0;
    for z in samples {
        let s = crate::series::evaluate(&data, z, digits)?.value;
        let shifted = &z.with_prec(prec) - &spec.b.to_complex(prec);
        let ts = &spec.a.to_complex(prec) * &crate::series::evaluate(source, &shifted, digits)?.value;
        worst = worst.max(s.dist_f64(&ts) / s.abs_f64().max(1.0));
    }
    Ok(worst)
}

#[derive(Clone, Debug)]
pub struct QuasiPeriodReport {
    /// `xi_n`.
    pub shift: Complex,
    /// `A_n = S'(xi_n) / S'(0)`.
    pub factor: Complex,
    pub max_distance: f64,
    pub matched: usize,
    /// Zeros of the original solution (the window, including the anchor).
    pub original: Vec<ZeroRecord>,
    /// Zeros of the re-parameterized solution in the translated window.
    pub shifted: Vec<ZeroRecord>,
}

/// Checks `{zeros of S(., a, b + a xi_n, c/A_n)} = {zeros of S} - xi_n`.
///
/// The window is the disk about the origin holding the anchor and at least
/// `k` further zeros, with its radius placed midway between two distinct zero
/// moduli. The re-parameterized zeros are searched in the same disk translated
/// by `-xi_n`, so both windows cover the same points and no boundary
/// exclusion is needed. `n` indexes the window zeros by distance from the
/// origin (`n = 0` is the anchor).
pub fn verify_quasi_periodicity(params: &Parameters, n: usize, k: usize, tol: f64, digits: u32) -> Result<QuasiPeriodReport> {
    if n == 0 || n > k {
        return Err(Error::InvalidInput(format!("need 1 <= n <= K, got n = {n}, K = {k}")));
    }
    let prec = bits_for_digits(digits);
    let data = InitialData::principal(params)?;
    let origin = Complex::zero(prec);
    let zero_tol = 10f64.powf(-(digits as f64) + 10.0);
    let mut pool = nearest_zeros(&data, &origin, k + 6, zero_tol, digits)?;
    pool.sort_by(|a, b| a.location.abs_f64().total_cmp(&b.location.abs_f64()));
    let mut cut = k + 1;
    while cut < pool.len() {
        let (r0, r1) = (pool[cut - 1].location.abs_f64(), pool[cut].location.abs_f64());
        if r1 - r0 > 1e-6 * r1.max(1.0) {
            break;
        }
        cut += 1;
    }
    if cut >= pool.len() {
        return Err(Error::Inconclusive("no gap in zero moduli to place the window".into()));
    }
    let radius = (pool[cut - 1].location.abs_f64() + pool[cut].location.abs_f64()) / 2.0;
    let original: Vec<ZeroRecord> = pool[..cut].to_vec();
    let xi_n = original[n].location.clone();
    let s = data.series_covering(&xi_n, 1e-3, digits)?;
    let dn = s.eval_with_derivative(&xi_n)?.1.value;
    let factor = &dn / &params.deriv_norm.to_complex(prec);
    let reparam = Parameters {
        a: params.a.clone(),
        b: params.b.add(&params.a.mul(&exact(&xi_n)?)),
        c: params.c.div(&exact(&factor)?)?,
        deriv_norm: params.deriv_norm.clone(),
    };
    let other = InitialData::principal(&reparam)?;
    let center = -&xi_n;
    let shifted = disk_zeros(&other, &center, radius, zero_tol, digits)?;
    let weight = |v: &[ZeroRecord]| v.iter().map(|r| r.multiplicity as usize).sum::<usize>();
    if weight(&shifted) != weight(&original) {
        return Err(Error::ZeroSetMismatch {
            max_distance: f64::INFINITY,
            tol,
        });
    }
    // Greedy nearest-neighbour matching.
    let mut free: Vec<bool> = vec![true; shifted.len()];
    let mut max_distance: f64 = 0.0;
    for z in &original {
        let target = &z.location - &xi_n;
        let best = shifted
            .iter()
            .enumerate()
            .filter(|(i, _)| free[*i])
            .map(|(i, r)| (i, r.location.dist_f64(&target)))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        match best {
            Some((i, d)) => {
                free[i] = false;
                max_distance = max_distance.max(d);
            }
            None => max_distance = f64::INFINITY,
        }
    }
    if max_distance > tol {
        return Err(Error::ZeroSetMismatch { max_distance, tol });
    }
    Ok(QuasiPeriodReport {
        shift: xi_n,
        factor,
        max_distance,
        matched: original.len(),
        original,
        shifted,
    })
}

/// The double-zero solution `Xi(., a, b)` (with `c = 1`).
pub fn xi_solution(a: &ExactComplex, b: &ExactComplex) -> InitialData {
    let p = Parameters::new(a.clone(), b.clone(), ExactComplex::from_i64(1));
    InitialData::double_zero(&p, ExactComplex::zero())
}

#[derive(Clone, Debug)]
pub struct HomogeneityReport {
    /// Largest `|Xi(z/lambda, lambda^3 a, lambda^2 b) - lambda^-2 Xi(z, a, b)|`
    /// relative to `max(1, |lambda^-2 Xi(z, a, b)|)`.
    pub max_residual: f64,
    pub samples: usize,
}

/// `Xi(z/lambda, lambda^3 a, lambda^2 b) = lambda^-2 Xi(z, a, b)` at each sample.
///
/// Substituting `w(z) = Xi(z/lambda, lambda^3 a, lambda^2 b)` gives
/// `w'' = (az + b) w + lambda^-2` with a double zero at the origin, hence the
/// factor `lambda^-2`. Zero sets are related by the same rescaling either way.
pub fn verify_homogeneity(
    a: &ExactComplex,
    b: &ExactComplex,
    lambda: &ExactComplex,
    samples: &[Complex],
    digits: u32,
) -> Result<HomogeneityReport> {
    if lambda.is_zero() {
        return Err(Error::InvalidInput("lambda must be nonzero".into()));
    }
    let prec = bits_for_digits(digits);
    let l2 = lambda.mul(lambda);
    let l3 = l2.mul(lambda);
    let base = xi_solution(a, b);
    let scaled = xi_solution(&l3.mul(a), &l2.mul(b));
    let lam = lambda.to_complex(prec);
    let l2c = l2.to_complex(prec).recip();
    let mut worst: f64 = 0.0;
    for z in samples {
        let rhs = &l2c * &crate::series::evaluate(&base, z, digits)?.value;
        let lhs = crate::series::evaluate(&scaled, &(&z.with_prec(prec) / &lam), digits)?.value;
        worst = worst.max(lhs.dist_f64(&rhs) / rhs.abs_f64().max(1.0));
    }
    Ok(HomogeneityReport {
        max_residual: worst,
        samples: samples.len(),
    })
}

/// First ray-zero modulus of `Xi(., lambda^3 a, 0)` times `|lambda|`, and that
/// of `Xi(., a, 0)`; equal by homogeneity.
pub fn homogeneity_zero_scaling(a: &ExactComplex, lambda: &ExactComplex, digits: u32) -> Result<(f64, f64)> {
    let l3 = lambda.mul(lambda).mul(lambda);
    let prec = bits_for_digits(digits);
    let tol = 10f64.powf(-(digits as f64) + 10.0);
    let base = ray_zeros(a, 1, tol, digits)?;
    let scaled = ray_zeros(&l3.mul(a), 1, tol, digits)?;
    let lam = lambda.to_complex(prec).abs_f64();
    Ok((scaled[0].modulus * lam, base[0].modulus))
}

fn real_params(a: &ExactComplex, b: &ExactComplex, c: &ExactComplex) -> Result<()> {
    if a.is_real() && b.is_real() && c.is_real() {
        Ok(())
    } else {
        Err(Error::InvalidInput("energy identity needs real parameters".into()))
    }
}

/// `int_0^z y^2` on the real axis by adaptive quadrature on one covering series.
fn square_integral(data: &InitialData, z: f64, quad_tol: f64, digits: u32) -> Result<Float> {
    let prec = bits_for_digits(digits);
    if z == 0.0 {
        return Ok(Float::new(prec));
    }
    let mid = Complex::from_f64(prec, z / 2.0, 0.0);
    let s = data.series_covering(&mid, z.abs() / 2.0 * 1.01 + 1e-6, digits)?;
    let lo = Float::new(prec);
    let hi = Float::with_val(prec, z);
    quad::integrate(
        |x| {
            let v = s.eval(&Complex::real(x.clone()))?.value.re;
            Ok(Float::with_val(prec, v.square_ref()))
        },
        &lo,
        &hi,
        quad_tol,
        prec,
    )
}

/// `|y'^2 - (az + b) y^2 - 2cy + a int_0^z y^2|` for `y = c Xi(., a, b)`, the
/// solution of the ODE with a double zero at the origin.
pub fn energy_identity_residual(
    a: &ExactComplex,
    b: &ExactComplex,
    c: &ExactComplex,
    z: f64,
    quad_tol: f64,
    digits: u32,
) -> Result<f64> {
    real_params(a, b, c)?;
    let prec = bits_for_digits(digits);
    let p = Parameters::new(a.clone(), b.clone(), c.clone());
    let data = InitialData::double_zero(&p, ExactComplex::zero());
    let zc = Complex::from_f64(prec, z, 0.0);
    let s = data.series_covering(&zc, 1e-3, digits)?;
    let (y, dy) = s.eval_with_derivative(&zc)?;
    let (y, dy) = (y.value.re, dy.value.re);
    let (af, bf, cf) = (
        Float::with_val(prec, &a.re),
        Float::with_val(prec, &b.re),
        Float::with_val(prec, &c.re),
    );
    let lhs = Float::with_val(prec, dy.square_ref());
    let coef = Float::with_val(prec, &af * z) + &bf;
    let mut rhs = coef * Float::with_val(prec, y.square_ref());
    rhs += Float::with_val(prec, &cf * &y) * 2u32;
    rhs -= af * square_integral(&data, z, quad_tol, digits)?;
    Ok(Float::with_val(prec, lhs - rhs).abs().to_f64())
}

/// Integral of `Xi(x, a, b)^2` over the segment between 0 and `p` (real
/// parameters and `p`), i.e. `int_0^p` for `p > 0` and `int_p^0` for `p < 0`.
pub fn xi_square_integral(a: &ExactComplex, b: &ExactComplex, p: f64, quad_tol: f64, digits: u32) -> Result<Float> {
    real_params(a, b, &ExactComplex::zero())?;
    let v = square_integral(&xi_solution(a, b), p, quad_tol, digits)?;
    Ok(if p < 0.0 { -v } else { v })
}
