//! Adaptive Gauss–Legendre quadrature at arbitrary precision.

use rug::Float;

use crate::error::Error;

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<Float>,
    weights: Vec<Float>,
}

impl GaussLegendre {
    /// `n`-point rule with nodes refined by Newton's method on `P_n`.
    pub fn new(n: usize, prec: u32) -> Self {
        assert!(n >= 2);
        let work = prec + 32;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let eps = Float::with_val(work, Float::i_exp(1, -(prec as i32) - 4));
        for i in 0..n {
            // Tricomi initial guess.
            let guess = ((i as f64 + 0.75) / (n as f64 + 0.5) * std::f64::consts::PI).cos();
            let mut x = Float::with_val(work, guess);
            for _ in 0..100 {
                let (p, d) = legendre(n, &x);
                let dx = Float::with_val(work, &p / &d);
                x -= &dx;
                if dx.abs() < eps {
                    break;
                }
            }
            let (_, dp) = legendre(n, &x);
            let one_minus = Float::with_val(work, 1 - Float::with_val(work, x.square_ref()));
            let w = Float::with_val(work, 2u32 / (one_minus * Float::with_val(work, dp.square_ref())));
            nodes.push(Float::with_val(prec, &x));
            weights.push(Float::with_val(prec, &w));
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Applies the rule on `[a, b]`.
    pub fn panel<F>(&self, f: &mut F, a: &Float, b: &Float) -> Result<Float, Error>
    where
        F: FnMut(&Float) -> Result<Float, Error>,
    {
        let prec = self.nodes[0].prec().max(a.prec());
        let half = Float::with_val(prec, b - a) / 2u32;
        let mid = Float::with_val(prec, a + b) / 2u32;
        let mut acc = Float::new(prec);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let t = Float::with_val(prec, &half * x) + &mid;
            let v = f(&t)?;
            acc += Float::with_val(prec, &v * w);
        }
        Ok(acc * half)
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        let kf = k as u32;
        let mut p2 = Float::with_val(prec, x * &p1) * (2 * kf - 1);
        p2 -= Float::with_val(prec, &p0 * (kf - 1));
        p2 /= kf;
        p0 = p1;
        p1 = p2;
    }
    let denom = Float::with_val(prec, x.square_ref()) - 1u32;
    let mut d = Float::with_val(prec, x * &p1) - &p0;
    d *= n as u32;
    d /= denom;
    (p1, d)
}

/// Adaptive integration of `f` over `[a, b]` by panel bisection.
///
/// A panel is accepted when the rule on the panel and on its two halves agree
/// within the panel's share of `tol` (absolute), or within `tol / 128`
/// outright; the latter terminates refinement toward endpoint singularities.
pub fn integrate<F>(mut f: F, a: &Float, b: &Float, tol: f64, prec: u32) -> Result<Float, Error>
where
    F: FnMut(&Float) -> Result<Float, Error>,
{
    const MAX_DEPTH: u32 = 160;
    const MAX_PANELS: usize = 20_000;
    let rule = GaussLegendre::new(20, prec);
    let total = Float::with_val(prec, b - a).abs().to_f64();
    if total == 0.0 {
        return Ok(Float::new(prec));
    }
    let mut result = Float::new(prec);
    let mut stack = vec![(
        Float::with_val(prec, a),
        Float::with_val(prec, b),
        rule.panel(&mut f, a, b)?,
        0u32,
    )];
    let mut panels = 0usize;
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        panels += 1;
        let mid = Float::with_val(prec, &lo + &hi) / 2u32;
        let left = rule.panel(&mut f, &lo, &mid)?;
        let right = rule.panel(&mut f, &mid, &hi)?;
        let halves = Float::with_val(prec, &left + &right);
        let err = Float::with_val(prec, &halves - &whole).abs().to_f64();
        let width = Float::with_val(prec, &hi - &lo).abs().to_f64();
        let share = tol * width / total;
        if err <= share || err <= tol / 128.0 {
            result += halves;
            continue;
        }
        if depth >= MAX_DEPTH || panels > MAX_PANELS {
            return Err(Error::QuadratureFailure {
                achieved: err,
                requested: tol,
            });
        }
        stack.push((lo, mid.clone(), left, depth + 1));
        stack.push((mid, hi, right, depth + 1));
    }
    Ok(result)
}
