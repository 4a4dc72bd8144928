//! Locating, counting and classifying zeros of series solutions.

use rayon::prelude::*;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::num::{bits_for_digits, log10_abs, roots, Complex, ExactComplex};
use crate::series::{InitialData, Parameters, SeriesSolution};
use crate::special::{hyp1f2, Hyp1F2Args};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroMethod {
    Bisection,
    Newton,
    ArgumentPrinciple,
    RecursionWalk,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Bracket {
    Interval { lo: f64, hi: f64 },
    Disk { center: (f64, f64), radius: f64 },
}

#[derive(Clone, Debug)]
pub struct ZeroRecord {
    pub location: Complex,
    pub multiplicity: u32,
    /// `|S|` at `location`.
    pub residual: f64,
    pub bracket: Option<Bracket>,
    pub method: ZeroMethod,
}

/// Modulus interval `[(3 pi k / 2)^(2/3), (3 pi (k+1) / 2)^(2/3)]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroInterval {
    pub k: u32,
    pub lo: f64,
    pub hi: f64,
}

impl ZeroInterval {
    pub fn contains(&self, r: f64) -> bool {
        self.lo <= r && r <= self.hi
    }
}

fn polya_edge(k: f64) -> f64 {
    (1.5 * std::f64::consts::PI * k).powf(2.0 / 3.0)
}

pub fn polya_interval(k: u32) -> Result<ZeroInterval> {
    if k == 0 {
        return Err(Error::InvalidInput("interval index starts at 1".into()));
    }
    Ok(ZeroInterval {
        k,
        lo: polya_edge(k as f64),
        hi: polya_edge(k as f64 + 1.0),
    })
}

/// `(3 pi (k + 1/4) / 2)^(2/3)`.
pub fn asymptotic_modulus(k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidInput("zero index starts at 1".into()));
    }
    Ok(polya_edge(k as f64 + 0.25))
}

fn dedupe_push(found: &mut Vec<ZeroRecord>, rec: ZeroRecord, sep: f64) {
    let scale = rec.location.abs_f64().max(1.0);
    if !found.iter().any(|r| r.location.dist_f64(&rec.location) < sep * scale) {
        found.push(rec);
    }
}

fn wrap_angle(x: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut y = x % tau;
    if y > std::f64::consts::PI {
        y -= tau;
    }
    if y < -std::f64::consts::PI {
        y += tau;
    }
    y
}

fn circle_point(center: &Complex, radius: f64, theta: f64) -> Complex {
    let p = center.prec();
    let off = Complex::from_f64(p, radius * theta.cos(), radius * theta.sin());
    center + &off
}

/// Winding number of `s` around the circle `|z - center| = radius`.
///
/// Sums principal argument increments over `2^m` equispaced points, doubling
/// `m` until the integer repeats twice with every increment below `pi/2`.
/// A sample whose Newton distance `|S/S'|` is below `band * radius` signals a
/// zero on (or too close to) the contour.
fn winding(s: &SeriesSolution, center: &Complex, radius: f64, band: f64) -> Result<i64> {
    let mut last: Option<i64> = None;
    for m in 6..=15u32 {
        let n = 1usize << m;
        let vals: Vec<(f64, f64, f64)> = (0..n)
            .into_par_iter()
            .map(|j| {
                let th = std::f64::consts::TAU * j as f64 / n as f64;
                let (v, d) = s.eval_with_derivative(&circle_point(center, radius, th))?;
                let dist = if d.value.is_zero() {
                    if v.value.is_zero() {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    (&v.value / &d.value).abs_f64()
                };
                Ok((v.value.arg().to_f64(), dist, v.value.abs_f64()))
            })
            .collect::<Result<_>>()?;
        if let Some(v) = vals.iter().min_by(|x, y| x.1.total_cmp(&y.1)) {
            if v.1 < band * radius {
                return Err(Error::ZeroOnContour { min_abs: v.2 });
            }
        }
        let mut total = 0.0;
        let mut biggest: f64 = 0.0;
        for j in 0..n {
            let d = wrap_angle(vals[(j + 1) % n].0 - vals[j].0);
            biggest = biggest.max(d.abs());
            total += d;
        }
        let w = (total / std::f64::consts::TAU).round() as i64;
        if biggest < std::f64::consts::FRAC_PI_2 && last == Some(w) {
            return Ok(w);
        }
        last = Some(w);
    }
    Err(Error::NoConvergence {
        what: "winding number".into(),
        terms: 1 << 15,
    })
}

/// Number of zeros (with multiplicity) of the solution inside the disk.
///
/// Fails with `ZeroOnContour` when some point of the circle lies within
/// `quad_tol * radius` of a zero, estimated by the Newton distance `|S/S'|`.
pub fn argument_principle_count(data: &InitialData, center: &Complex, radius: f64, quad_tol: f64, digits: u32) -> Result<usize> {
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    let s = data.series_covering(center, radius * 1.05, digits)?;
    let w = winding(&s, center, radius, quad_tol)?;
    Ok(w.max(0) as usize)
}

fn newton_on(s: &SeriesSolution, start: &Complex, tol: f64, digits: u32) -> Result<roots::Polished> {
    let step_tol = 10f64.powf(-(digits as f64) + 8.0) * start.abs_f64().max(1.0);
    roots::newton(
        |z| {
            let (v, d) = s.eval_with_derivative(z)?;
            Ok((v.value, d.value))
        },
        start,
        step_tol,
        tol,
        200,
    )
}

/// Grid minima of `|S|` as Newton starts; multiplicity 2 when `S'` also
/// vanishes, then polished on `S'`.
fn find_in_disk(
    s: &SeriesSolution,
    center: &Complex,
    radius: f64,
    expected: usize,
    tol: f64,
    digits: u32,
) -> Result<Vec<ZeroRecord>> {
    let prec = s.prec();
    let ds = s.derivative();
    let sep = 10f64.powf(-(digits as f64) / 3.0).max(1e-12);
    let mut found: Vec<ZeroRecord> = Vec::new();
    if expected == 0 {
        return Ok(found);
    }
    let mut g = 24usize;
    while g <= 384 {
        let h = 2.0 * radius / g as f64;
        let grid: Vec<Vec<f64>> = (0..=g)
            .into_par_iter()
            .map(|i| {
                (0..=g)
                    .map(|j| {
                        let z = center + &Complex::from_f64(prec, -radius + i as f64 * h, -radius + j as f64 * h);
                        s.eval(&z).map(|v| log10_abs(&v.value.abs())).unwrap_or(f64::INFINITY)
                    })
                    .collect()
            })
            .collect();
        let mut starts = Vec::new();
        for i in 0..=g {
            for j in 0..=g {
                let x = -radius + i as f64 * h;
                let y = -radius + j as f64 * h;
                if x.hypot(y) > radius + h {
                    continue;
                }
                let v = grid[i][j];
                let mut is_min = true;
                for di in -1i64..=1 {
                    for dj in -1i64..=1 {
                        let (ii, jj) = (i as i64 + di, j as i64 + dj);
                        if (di, dj) == (0, 0) || ii < 0 || jj < 0 || ii > g as i64 || jj > g as i64 {
                            continue;
                        }
                        if grid[ii as usize][jj as usize] < v {
                            is_min = false;
                        }
                    }
                }
                if is_min {
                    starts.push(center + &Complex::from_f64(prec, x, y));
                }
            }
        }
        let polished: Vec<Option<ZeroRecord>> = starts.par_iter().map(|z0| polish_any(s, &ds, z0, tol, digits).ok()).collect();
        for rec in polished.into_iter().flatten() {
            if rec.location.dist_f64(center) <= radius {
                dedupe_push(&mut found, rec, sep);
            }
        }
        let total: usize = found.iter().map(|r| r.multiplicity as usize).sum();
        if total >= expected {
            break;
        }
        g *= 2;
    }
    let total: usize = found.iter().map(|r| r.multiplicity as usize).sum();
    if total != expected {
        return Err(Error::Inconclusive(format!(
            "located {total} of {expected} zeros counted by the argument principle"
        )));
    }
    for r in &mut found {
        r.method = ZeroMethod::ArgumentPrinciple;
        r.bracket = Some(Bracket::Disk {
            center: center.to_f64_pair(),
            radius,
        });
    }
    found.sort_by(|a, b| a.location.abs_f64().total_cmp(&b.location.abs_f64()));
    Ok(found)
}

fn polish_any(s: &SeriesSolution, ds: &SeriesSolution, start: &Complex, tol: f64, digits: u32) -> Result<ZeroRecord> {
    let p = newton_on(s, start, tol, digits)?;
    let (v, d) = s.eval_with_derivative(&p.root)?;
    let dscale = 10f64.powf(-(digits as f64) / 4.0);
    if d.value.abs_f64() < dscale {
        // Nearly double: the zero of S' is the better-conditioned target.
        let q = newton_on(ds, &p.root, tol, digits)?;
        let v2 = s.eval(&q.root)?.value.abs_f64();
        if v2 <= tol {
            return Ok(ZeroRecord {
                location: q.root,
                multiplicity: 2,
                residual: v2,
                bracket: None,
                method: ZeroMethod::Newton,
            });
        }
    }
    let residual = v.value.abs_f64();
    if residual > tol {
        return Err(Error::NotConverged {
            what: "newton".into(),
            terms: p.iterations as usize,
        });
    }
    Ok(ZeroRecord {
        location: p.root,
        multiplicity: 1,
        residual,
        bracket: None,
        method: ZeroMethod::Newton,
    })
}

/// All zeros (with multiplicity) of the solution in the disk.
pub fn disk_zeros(data: &InitialData, center: &Complex, radius: f64, tol: f64, digits: u32) -> Result<Vec<ZeroRecord>> {
    let s = data.series_covering(center, radius * 1.05, digits)?;
    let n = winding(&s, center, radius, 1e-12)?.max(0) as usize;
    find_in_disk(&s, center, radius, n, tol, digits)
}

/// The `k` zeros nearest to `center` (growing the disk until it holds at
/// least `k`), sorted by distance.
pub fn nearest_zeros(data: &InitialData, center: &Complex, k: usize, tol: f64, digits: u32) -> Result<Vec<ZeroRecord>> {
    let mut radius = 2.0;
    for _ in 0..40 {
        let s = data.series_covering(center, radius * 1.05, digits)?;
        match winding(&s, center, radius, 1e-12) {
            Ok(n) if n as usize >= k => {
                let mut z = find_in_disk(&s, center, radius, n as usize, tol, digits)?;
                z.sort_by(|a, b| a.location.dist_f64(center).total_cmp(&b.location.dist_f64(center)));
                z.truncate(k);
                return Ok(z);
            }
            Ok(_) => radius *= 1.25,
            Err(Error::ZeroOnContour { .. }) => radius *= 1.01,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Inconclusive(format!("fewer than {k} zeros within radius {radius}")))
}

#[derive(Clone, Debug)]
pub struct RealZeros {
    pub zeros: Vec<ZeroRecord>,
    /// Set when the argument principle saw more real zeros than the scan.
    pub advisory: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealZeroOptions {
    /// Initial number of scan cells.
    pub cells: usize,
    /// Cross-check the scan with the argument principle.
    pub ap_check: bool,
}

impl Default for RealZeroOptions {
    fn default() -> Self {
        RealZeroOptions {
            cells: 64,
            ap_check: true,
        }
    }
}

fn require_real(data: &InitialData) -> Result<()> {
    let real = data.params.a.is_real()
        && data.params.b.is_real()
        && data.params.c.is_real()
        && data.point.is_real()
        && data.y0.is_real()
        && data.y1.is_real();
    if real {
        Ok(())
    } else {
        Err(Error::InvalidInput("real-axis search needs a real solution".into()))
    }
}

fn scan(s: &SeriesSolution, lo: f64, hi: f64, cells: usize, tol: f64, digits: u32) -> Result<Vec<ZeroRecord>> {
    let prec = s.prec();
    let xs: Vec<Float> = (0..=cells)
        .map(|i| {
            let t = Float::with_val(prec, i as u32) / cells as u32;
            Float::with_val(prec, lo) + t * (hi - lo)
        })
        .collect();
    let fs: Vec<Float> = xs
        .par_iter()
        .map(|x| Ok(s.eval(&Complex::real(x.clone()))?.value.re))
        .collect::<Result<_>>()?;
    let f = |x: &Float| Ok(s.eval(&Complex::real(x.clone()))?.value.re);
    let mut out = Vec::new();
    for i in 0..cells {
        // Exact zeros on the grid: interior ones are kept, endpoints excluded.
        if i > 0 && fs[i].is_zero() {
            out.push(ZeroRecord {
                location: Complex::real(xs[i].clone()),
                multiplicity: 1,
                residual: 0.0,
                bracket: Some(Bracket::Interval {
                    lo: xs[i - 1].to_f64(),
                    hi: xs[i + 1].to_f64(),
                }),
                method: ZeroMethod::Bisection,
            });
            continue;
        }
        if fs[i].is_zero() || fs[i + 1].is_zero() || fs[i].is_sign_negative() == fs[i + 1].is_sign_negative() {
            continue;
        }
        let (a, b) = roots::bisect(f, &xs[i], &xs[i + 1], 1e-3)?;
        let mid = Complex::real(Float::with_val(prec, &a + &b) / 2u32);
        let p = newton_on(s, &mid, tol, digits)?;
        let root = Complex::real(p.root.re.clone());
        let residual = s.eval(&root)?.value.abs_f64();
        if residual > tol {
            return Err(Error::NotConverged {
                what: "real newton".into(),
                terms: p.iterations as usize,
            });
        }
        out.push(ZeroRecord {
            location: root,
            multiplicity: 1,
            residual,
            bracket: Some(Bracket::Interval {
                lo: xs[i].to_f64(),
                hi: xs[i + 1].to_f64(),
            }),
            method: ZeroMethod::Newton,
        });
    }
    Ok(out)
}

/// Real zeros of a real solution in `[lo, hi]`.
///
/// The interval is treated as open at endpoints where the solution vanishes
/// exactly (for example the anchor zero of a principal solution). Odd zeros are
/// found by sign changes on a grid, bisection to width `1e-3` and Newton;
/// the argument principle on the circumscribed disk then looks for zeros the
/// grid missed (including even ones), halving the step up to four times.
pub fn real_zeros(data: &InitialData, lo: f64, hi: f64, tol: f64, digits: u32) -> Result<RealZeros> {
    real_zeros_with(data, lo, hi, tol, digits, &RealZeroOptions::default())
}

pub fn real_zeros_with(data: &InitialData, lo: f64, hi: f64, tol: f64, digits: u32, opts: &RealZeroOptions) -> Result<RealZeros> {
    require_real(data)?;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidInput(format!("bad interval [{lo}, {hi}]")));
    }
    let prec = bits_for_digits(digits);
    let center = Complex::from_f64(prec, (lo + hi) / 2.0, 0.0);
    let half = (hi - lo) / 2.0;
    let mut radius = half * (1.0 + 1.0 / 128.0);
    let s = data.series_covering(&center, radius * 1.05 + 1e-6, digits)?;
    let mut cells = opts.cells.max(2);
    let mut zeros = scan(&s, lo, hi, cells, tol, digits)?;
    if !opts.ap_check {
        return Ok(RealZeros { zeros, advisory: None });
    }
    let mut count = None;
    for _ in 0..8 {
        match winding(&s, &center, radius, 1e-12) {
            Ok(n) => {
                count = Some(n.max(0) as usize);
                break;
            }
            Err(Error::ZeroOnContour { .. }) => radius *= 1.0 + 1.0 / 64.0,
            Err(e) => return Err(e),
        }
    }
    let count = count.ok_or(Error::ZeroOnContour { min_abs: 0.0 })?;
    let in_disk = find_in_disk(&s, &center, radius, count, tol, digits)?;
    let im_tol = 10f64.powf(-(digits as f64) / 3.0);
    let on_axis: Vec<ZeroRecord> = in_disk
        .into_iter()
        .filter(|r| {
            let (x, y) = r.location.to_f64_pair();
            y.abs() < im_tol * x.abs().max(1.0) && x > lo && x < hi && !(r.residual == 0.0 && (x == lo || x == hi))
        })
        .filter(|r| {
            // Drop the anchor and other exact endpoint zeros.
            let x = r.location.re.to_f64();
            (x - lo).abs() > im_tol && (x - hi).abs() > im_tol
        })
        .collect();
    let weight = |v: &[ZeroRecord]| v.iter().map(|r| r.multiplicity as usize).sum::<usize>();
    let mut halvings = 0;
    while weight(&zeros) < weight(&on_axis) && halvings < 4 {
        cells *= 2;
        halvings += 1;
        zeros = scan(&s, lo, hi, cells, tol, digits)?;
    }
    let mut advisory = None;
    if weight(&zeros) < weight(&on_axis) {
        advisory = Some(format!(
            "ScanTooCoarse: argument principle finds {} real zeros, scan finds {}",
            weight(&on_axis),
            weight(&zeros)
        ));
    }
    // Even-multiplicity zeros are only visible to the disk search.
    let sep = 10f64.powf(-(digits as f64) / 3.0).max(1e-12);
    for mut r in on_axis {
        r.location = Complex::real(r.location.re.clone());
        dedupe_push(&mut zeros, r, sep.max(1e-9));
    }
    if data.y0.is_zero() && data.point.is_real() {
        // The zero the solution is anchored at is known, not searched for.
        let p = data.point.re.to_f64();
        let near = 10f64.powf(-(digits as f64) / 3.0) * p.abs().max(1.0);
        zeros.retain(|r| (r.location.re.to_f64() - p).abs() > near);
    }
    zeros.sort_by(|a, b| a.location.re.total_cmp(&b.location.re));
    Ok(RealZeros { zeros, advisory })
}

/// A zero of `Xi(., a, 0)` found on one of its three rays.
#[derive(Clone, Debug)]
pub struct RayZero {
    pub k: u32,
    /// Ray index `j` in `omega_j = exp(i (pi - arg a + 2 pi j) / 3)`.
    pub ray: u32,
    pub record: ZeroRecord,
    pub modulus: f64,
    /// `|arg(zero) - arg(omega_j)|`, wrapped.
    pub angle_deviation: f64,
}

/// Parameters `(a, 0, 1)` and the solution with a double zero at the origin.
pub fn double_zero_solution(a: &ExactComplex) -> InitialData {
    let p = Parameters::new(a.clone(), ExactComplex::zero(), ExactComplex::from_i64(1));
    InitialData::double_zero(&p, ExactComplex::zero())
}

/// Ray directions `omega_j` with `a omega_j^3 = -|a|`.
pub fn ray_directions(a: &ExactComplex, prec: u32) -> Result<[Complex; 3]> {
    if a.is_zero() {
        return Err(Error::InvalidInput("a must be nonzero".into()));
    }
    let ac = a.to_complex(prec);
    let arg = ac.arg();
    let pi = Complex::pi(prec);
    let mk = |j: u32| {
        let th = (Float::with_val(prec, &pi - &arg) + Float::with_val(prec, &pi * (2 * j))) / 3u32;
        Complex::cis(&th)
    };
    Ok([mk(0), mk(1), mk(2)])
}

/// The first `max_k` zero triples of `Xi(., a, 0)`.
///
/// On the ray `t omega_j`, `Xi = omega^2 t^2 / 2 * 1F2(1; 4/3, 5/3; -|a| t^3 / 9)`,
/// so each modulus is a real root located by bisection inside its (scaled)
/// Polya interval, then every ray point is polished by complex Newton on
/// the series solution.
pub fn ray_zeros(a: &ExactComplex, max_k: u32, tol: f64, digits: u32) -> Result<Vec<RayZero>> {
    let prec = bits_for_digits(digits);
    let dirs = ray_directions(a, prec)?;
    let abs_a = a.to_complex(prec).abs();
    let scale = Float::with_val(prec, abs_a.cbrt_ref()).to_f64();
    let args = Hyp1F2Args::new(1, Rational::from((4, 3)), Rational::from((5, 3)));
    let f = |t: &Float| -> Result<Float> {
        let t3 = Float::with_val(prec, t * t) * t;
        let x = -(t3 * &abs_a) / 9u32;
        Ok(hyp1f2(&args, &Complex::real(x), digits)?.re)
    };
    let data = double_zero_solution(a);
    let triples: Vec<Result<Vec<RayZero>>> = (1..=max_k)
        .into_par_iter()
        .map(|k| {
            let iv = polya_interval(k)?;
            let (lo, hi) = (iv.lo / scale, iv.hi / scale);
            let cells = 32;
            let pts: Vec<Float> = (0..=cells)
                .map(|i| Float::with_val(prec, lo + (hi - lo) * i as f64 / cells as f64))
                .collect();
            let vals: Vec<Float> = pts.iter().map(&f).collect::<Result<_>>()?;
            let changes: Vec<usize> = (0..cells)
                .filter(|&i| vals[i].is_sign_negative() != vals[i + 1].is_sign_negative())
                .collect();
            match changes.len() {
                0 => return Err(Error::IntervalMiss { k: k as usize }),
                1 => {}
                n => return Err(Error::Inconclusive(format!("{n} sign changes in interval {k}"))),
            }
            let i = changes[0];
            let (x, y) = roots::bisect(&f, &pts[i], &pts[i + 1], 1e-8)?;
            let t = Float::with_val(prec, &x + &y) / 2u32;
            let mut out = Vec::with_capacity(3);
            for (j, w) in dirs.iter().enumerate() {
                let z0 = w.scale(&t);
                let s = data.series_covering(&z0, 1e-2, digits)?;
                let p = newton_on(&s, &z0, tol, digits)?;
                let residual = s.eval(&p.root)?.value.abs_f64();
                if residual > tol {
                    return Err(Error::NotConverged {
                        what: "ray newton".into(),
                        terms: p.iterations as usize,
                    });
                }
                let dev = Float::with_val(prec, &p.root.arg() - &w.arg());
                let tau = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
                let mut dev = dev.abs();
                if dev > Float::with_val(prec, &tau / 2u32) {
                    dev = Float::with_val(prec, &tau - &dev).abs();
                }
                let modulus = p.root.abs_f64();
                out.push(RayZero {
                    k,
                    ray: j as u32,
                    modulus,
                    angle_deviation: dev.to_f64(),
                    record: ZeroRecord {
                        location: p.root,
                        multiplicity: 1,
                        residual,
                        bracket: Some(Bracket::Interval { lo, hi }),
                        method: ZeroMethod::Newton,
                    },
                });
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for t in triples {
        all.extend(t?);
    }
    Ok(all)
}

/// First-order displacement of a zero of `Xi(., a, 0)` under `b`, in the
/// three forms that should agree.
#[derive(Clone, Debug)]
pub struct ZeroShift {
    /// `-b Xi_1(xi0) / Xi_0'(xi0)` with `Xi_1` summed term by term.
    pub series: Complex,
    /// Same, with `Xi_1 = z^4/8 1F2(1;5/3,7/3;x) - z^4/12 1F2(1;2,7/3;x)`, `x = a z^3/9`.
    pub resummed: Complex,
    /// `-(5b/(9a)) [3 1F2(1;5/3,7/3;x) - 2 1F2(1;2,7/3;x)] / 1F2(2;7/3,8/3;x)`;
    /// `None` for `a = 0`.
    pub hypergeometric: Option<Complex>,
}

/// `Xi_1(z) = sum_n a^n (3^(n+1)(n+1)!/(3n+4)! - prod_{k=1}^{n+1} (3k+1)^-1 / (3^(n+1) (n+1)!)) z^(3n+4)`.
fn xi1_series(a: &Complex, z: &Complex, digits: u32) -> Complex {
    // Guard digits for the growth of the terms before they decay.
    let growth = (a.abs_f64().sqrt() * z.abs_f64().powf(1.5) * std::f64::consts::LOG10_E).ceil() as u32;
    let prec = bits_for_digits(digits + growth + 10);
    let a = a.with_prec(prec);
    let z = z.with_prec(prec);
    let z3 = z.powu(3);
    let mut pw = z.powu(4);
    let mut sum = Complex::zero(prec);
    // first(n) = 3^(n+1)(n+1)!/(3n+4)!, second(n) = prod (3k+1)^-1 / (3^(n+1)(n+1)!)
    let mut first = Float::with_val(prec, 3) / 24u32;
    let mut second = Float::with_val(prec, 1) / 12u32;
    let stop = -(digits as f64) - growth as f64 - 5.0;
    for n in 0..10_000u32 {
        let coeff = Float::with_val(prec, &first - &second);
        let term = pw.scale(&coeff);
        sum += &term;
        if n > 4 && log10_abs(&term.abs()) < stop + log10_abs(&sum.abs()).max(0.0) {
            break;
        }
        pw = &(&pw * &z3) * &a;
        let m = n + 1;
        // (3m+4)!/(3m+1)! = (3m+2)(3m+3)(3m+4)
        first *= 3 * (m + 1);
        first /= (3 * m + 2) * (3 * m + 3) * (3 * m + 4);
        second /= (3 * m + 4) * 3 * (m + 1);
    }
    sum.with_prec(bits_for_digits(digits))
}

pub fn perturbed_zero_shift(xi0: &Complex, a: &ExactComplex, b_small: &Complex, digits: u32) -> Result<ZeroShift> {
    let prec = bits_for_digits(digits);
    let data = double_zero_solution(a);
    let s = data.series_covering(xi0, 1e-3, digits)?;
    let (_, d0) = s.eval_with_derivative(xi0)?;
    let d0 = d0.value;
    let scale = xi0.abs_f64().max(1.0).powi(4);
    if d0.abs_f64() < 10f64.powf(-(digits as f64) / 2.0) * scale {
        return Err(Error::NotASimpleZero { deriv_abs: d0.abs_f64() });
    }
    let ac = a.to_complex(prec);
    let b = b_small.with_prec(prec);
    let xi1 = xi1_series(&ac, xi0, digits);
    let series = -(&(&b * &xi1) / &d0);

    let x = (&ac * &xi0.powu(3)).div_u64(9);
    let f_a = hyp1f2(
        &Hyp1F2Args::new(1, Rational::from((5, 3)), Rational::from((7, 3))),
        &x,
        digits,
    )?;
    let f_b = hyp1f2(&Hyp1F2Args::new(1, 2, Rational::from((7, 3))), &x, digits)?;
    let z4 = xi0.with_prec(prec).powu(4);
    let xi1_resummed = &(&z4 * &f_a).div_u64(8) - &(&z4 * &f_b).div_u64(12);
    let resummed = -(&(&b * &xi1_resummed) / &d0);

    let hypergeometric = if a.is_zero() {
        None
    } else {
        let f_c = hyp1f2(
            &Hyp1F2Args::new(2, Rational::from((7, 3)), Rational::from((8, 3))),
            &x,
            digits,
        )?;
        let bracket = &f_a.mul_i64(3) - &f_b.mul_i64(2);
        let pre = &b.mul_i64(-5) / &ac.mul_i64(9);
        Some(&(&pre * &bracket) / &f_c)
    };
    Ok(ZeroShift {
        series,
        resummed,
        hypergeometric,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Principal,
    Particular,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub family: Family,
    pub double_zero: Option<Complex>,
    /// Center and radius of the disk that was searched.
    pub region: (Complex, f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassifyOptions {
    pub center: (f64, f64),
    pub radius: f64,
    /// `|S|` below this at a zero of `S'` is a double zero.
    pub double_tol: f64,
    /// `|S|` above this at every zero of `S'` rules double zeros out.
    pub clear_tol: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            center: (0.0, 0.0),
            radius: 10.0,
            double_tol: 1e-12,
            clear_tol: 1e-6,
        }
    }
}

/// Decides whether the solution with `y(q) = 0`, `y'(q) = alpha` has a double
/// zero in the search disk. A double zero of `S` is a zero of `S'`, so the
/// zeros of `S'` are located (argument principle + Newton) and `|S|` is read
/// off there. The answer is only claimed for the searched disk.
pub fn classify_families(
    q: &ExactComplex,
    alpha: &ExactComplex,
    params: &Parameters,
    digits: u32,
    opts: &ClassifyOptions,
) -> Result<Classification> {
    let prec = bits_for_digits(digits);
    let center = Complex::from_f64(prec, opts.center.0, opts.center.1);
    let qc = q.to_complex(prec);
    if qc.dist_f64(&center) > opts.radius {
        return Err(Error::Inconclusive("q lies outside the searched region".into()));
    }
    let region = (center.clone(), opts.radius);
    if alpha.is_zero() {
        return Ok(Classification {
            family: Family::Particular,
            double_zero: Some(qc),
            region,
        });
    }
    if params.c.is_zero() {
        // A double zero would force the solution to vanish identically.
        return Ok(Classification {
            family: Family::Principal,
            double_zero: None,
            region,
        });
    }
    let data = InitialData::general(params, q.clone(), ExactComplex::zero(), alpha.clone());
    let mut radius = opts.radius;
    let mut crit = None;
    for _ in 0..8 {
        let s = data.series_covering(&center, radius * 1.05, digits)?;
        let ds = s.derivative();
        match winding(&ds, &center, radius, 1e-12) {
            Ok(n) => {
                let tol = 10f64.powf(-(digits as f64) / 2.0);
                crit = Some((s.clone(), find_in_disk(&ds, &center, radius, n.max(0) as usize, tol, digits)?));
                break;
            }
            Err(Error::ZeroOnContour { .. }) => radius *= 1.0 + 1.0 / 256.0,
            Err(e) => return Err(e),
        }
    }
    let (s, crit) = crit.ok_or(Error::ZeroOnContour { min_abs: 0.0 })?;
    let mut gray = None;
    for r in crit {
        let v = s.eval(&r.location)?.value.abs_f64();
        if v <= opts.double_tol {
            return Ok(Classification {
                family: Family::Particular,
                double_zero: Some(r.location),
                region: (center, radius),
            });
        }
        if v < opts.clear_tol {
            gray = Some(v);
        }
    }
    if let Some(v) = gray {
        return Err(Error::Inconclusive(format!(
            "|S| = {v:.3e} at a critical point is neither zero nor clearly nonzero"
        )));
    }
    Ok(Classification {
        family: Family::Principal,
        double_zero: None,
        region: (center, radius),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: u32 = 40;

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(bits_for_digits(D), re, im)
    }

    #[test]
    fn polya_intervals() {
        let i1 = polya_interval(1).unwrap();
        assert!((i1.lo - 2.8108).abs() < 1e-4 && (i1.hi - 4.4617).abs() < 2e-4);
        assert_eq!(polya_interval(2).unwrap().lo, i1.hi);
        let i10 = polya_interval(10).unwrap();
        assert!(i10.hi - i10.lo < i1.hi - i1.lo);
        assert!(polya_interval(0).is_err());
        assert!((asymptotic_modulus(1).unwrap() - 3.2616).abs() < 1e-4);
        for k in 1..50 {
            assert!(polya_interval(k).unwrap().contains(asymptotic_modulus(k).unwrap()));
        }
    }

    #[test]
    fn worked_example_first_zero() {
        let p = Parameters::parse("-1", "-1", "-0.1").unwrap();
        let d = InitialData::principal(&p).unwrap();
        let r = real_zeros(&d, 0.5, 3.0, 1e-25, D).unwrap();
        assert_eq!(r.zeros.len(), 1);
        assert!((r.zeros[0].location.re.to_f64() - 2.097_715_2).abs() < 5e-7);
        assert!(r.advisory.is_none());
    }

    #[test]
    fn sine_zeros_exclude_anchor() {
        let p = Parameters::parse("0", "-1", "0").unwrap();
        let d = InitialData::principal(&p).unwrap();
        let r = real_zeros(&d, 0.0, 10.0, 1e-25, D).unwrap();
        assert_eq!(r.zeros.len(), 3);
        for (k, z) in r.zeros.iter().enumerate() {
            assert!((z.location.re.to_f64() - (k + 1) as f64 * std::f64::consts::PI).abs() < 1e-14);
        }
    }

    #[test]
    fn double_zero_counts_two() {
        let a = ExactComplex::from_i64(1);
        let d = double_zero_solution(&a);
        assert_eq!(argument_principle_count(&d, &c(0.0, 0.0), 1.0, 1e-12, D).unwrap(), 2);
        let i = polya_interval(1).unwrap();
        let inner = argument_principle_count(&d, &c(0.0, 0.0), i.lo - 0.05, 1e-12, D).unwrap();
        let outer = argument_principle_count(&d, &c(0.0, 0.0), i.hi + 0.05, 1e-12, D).unwrap();
        assert_eq!(outer - inner, 3);
    }

    #[test]
    fn ray_zeros_in_polya_intervals() {
        let a = ExactComplex::from_i64(1);
        let z = ray_zeros(&a, 3, 1e-30, D).unwrap();
        assert_eq!(z.len(), 9);
        for r in &z {
            assert!(polya_interval(r.k).unwrap().contains(r.modulus));
            assert!(r.angle_deviation < 1e-20);
        }
        let eight = ExactComplex::from_i64(8);
        let z8 = ray_zeros(&eight, 1, 1e-30, D).unwrap();
        assert!((z8[0].modulus - z[0].modulus / 2.0).abs() < 1e-25);
    }

    #[test]
    fn shift_forms_agree() {
        let a = ExactComplex::from_i64(1);
        let z = ray_zeros(&a, 1, 1e-30, D).unwrap();
        let xi0 = &z[0].record.location;
        let s = perturbed_zero_shift(xi0, &a, &c(0.01, 0.0), D).unwrap();
        assert!(s.series.dist_f64(&s.resummed) < 1e-25);
        assert!(s.series.dist_f64(s.hypergeometric.as_ref().unwrap()) < 1e-20);
        let zero = perturbed_zero_shift(xi0, &a, &c(0.0, 0.0), D).unwrap();
        assert!(zero.series.is_zero());
        assert!(matches!(
            perturbed_zero_shift(&c(0.0, 0.0), &a, &c(0.01, 0.0), D),
            Err(Error::NotASimpleZero { .. })
        ));
    }

    #[test]
    fn xi1_leading_coefficient() {
        let z = c(1e-3, 0.0);
        let v = xi1_series(&c(1.0, 0.0), &z, D);
        assert!((v.re.to_f64() / 1e-12 - 1.0 / 24.0).abs() < 1e-8);
    }

    #[test]
    fn classification() {
        let p = Parameters::parse("-1", "-1", "-0.1").unwrap();
        let zero = ExactComplex::zero();
        let one = ExactComplex::from_i64(1);
        let opts = ClassifyOptions::default();
        let r = classify_families(&zero, &zero, &p, D, &opts).unwrap();
        assert_eq!(r.family, Family::Particular);
        let r = classify_families(&zero, &one, &p, D, &opts).unwrap();
        assert_eq!(r.family, Family::Principal);
        let far = ExactComplex::from_i64(50);
        assert!(matches!(
            classify_families(&far, &one, &p, D, &opts),
            Err(Error::Inconclusive(_))
        ));
    }
}
