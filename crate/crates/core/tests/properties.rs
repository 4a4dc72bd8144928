use nhairy_core::num::bits_for_digits;
use nhairy_core::num::roots::newton;
use nhairy_core::special::{airy_homogeneous, hyp1f2, polya_weight, scorer, AiryKind, Hyp1F2Args, ScorerKind};
use nhairy_core::transform::{map_parameters, transform_eval_residual, verify_homogeneity, SolutionDescription};
use nhairy_core::zeros::nearest_zeros;
use nhairy_core::{apply_transform, build_series, laurent_coeffs, Complex, ExactComplex, InitialData, Parameters, TransformSpec};
use proptest::prelude::*;
use rug::Rational;

const D: u32 = 40;

fn prec() -> u32 {
    bits_for_digits(D)
}

fn c(re: f64, im: f64) -> Complex {
    Complex::from_f64(prec(), re, im)
}

fn ex(p: (f64, f64)) -> ExactComplex {
    ExactComplex::from_f64_pair(p.0, p.1).unwrap()
}

fn pair(r: f64) -> impl Strategy<Value = (f64, f64)> {
    (-r..r, -r..r)
}

fn unit_disk_offset(r: f64) -> impl Strategy<Value = (f64, f64)> {
    (0.0..r, 0.0..std::f64::consts::TAU).prop_map(|(m, t)| (m * t.cos(), m * t.sin()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_satisfies_ode(
        a in pair(2.0), b in pair(2.0), cc in pair(2.0),
        center in pair(2.0), y0 in pair(2.0), y1 in pair(2.0),
        off in unit_disk_offset(1.0),
    ) {
        let p = Parameters::new(ex(a), ex(b), ex(cc));
        let s = build_series(&p, &c(center.0, center.1), &c(y0.0, y0.1), &c(y1.0, y1.1), 90, D).unwrap();
        let z = c(center.0 + off.0, center.1 + off.1);
        let r = s.residual_check(&z).unwrap();
        prop_assert!(r < 1e-20, "residual {r:e}");
    }

    #[test]
    fn series_is_linear_in_data_and_forcing(
        a in pair(2.0), b in pair(2.0),
        c1 in pair(2.0), c2 in pair(2.0),
        u0 in pair(2.0), u1 in pair(2.0), v0 in pair(2.0), v1 in pair(2.0),
    ) {
        let build = |cc: ExactComplex, y0: &Complex, y1: &Complex| {
            build_series(&Parameters::new(ex(a), ex(b), cc), &c(0.3, -0.2), y0, y1, 40, D).unwrap()
        };
        let (u0, u1, v0, v1) = (c(u0.0, u0.1), c(u1.0, u1.1), c(v0.0, v0.1), c(v1.0, v1.1));
        let s = build(ex(c1), &u0, &u1);
        let t = build(ex(c2), &v0, &v1);
        let sum = build(ex(c1).add(&ex(c2)), &(&u0 + &v0), &(&u1 + &v1));
        for ((x, y), z) in s.coeffs().iter().zip(t.coeffs()).zip(sum.coeffs()) {
            let d = (x + y).dist_f64(z);
            prop_assert!(d <= 1e-35 * z.abs_f64().max(1.0), "difference {d:e}");
        }
    }

    #[test]
    fn derivative_matches_central_difference(
        a in pair(1.5), b in pair(1.5), cc in pair(1.5), y1 in pair(1.5),
        off in unit_disk_offset(1.0),
    ) {
        let p = Parameters::new(ex(a), ex(b), ex(cc));
        let s = build_series(&p, &c(0.0, 0.0), &c(0.0, 0.0), &c(y1.0, y1.1), 80, D).unwrap();
        let z = c(off.0, off.1);
        let h = c(1e-12, 0.0);
        let fd = &(&s.eval(&(&z + &h)).unwrap().value - &s.eval(&(&z - &h)).unwrap().value) / &h.mul_i64(2);
        let d = s.derivative().eval(&z).unwrap().value;
        let err = fd.dist_f64(&d);
        prop_assert!(err < 1e-18 * d.abs_f64().max(1.0), "error {err:e}");
    }

    #[test]
    fn double_zero_scales_with_forcing(a in pair(2.0), b in pair(2.0), cc in pair(2.0), center in pair(1.0)) {
        let z0 = c(0.0, 0.0);
        let one = build_series(&Parameters::new(ex(a), ex(b), ex(cc)), &c(center.0, center.1), &z0, &z0, 40, D).unwrap();
        let two = build_series(&Parameters::new(ex(a), ex(b), ex(cc).add(&ex(cc))), &c(center.0, center.1), &z0, &z0, 40, D).unwrap();
        for (x, y) in one.coeffs().iter().zip(two.coeffs()) {
            prop_assert_eq!(&x.mul_i64(2), y);
        }
    }

    #[test]
    fn laurent_recursion_matches_series_division(a in pair(2.0), b in pair(2.0), beta in pair(2.0)) {
        let (a, b, beta) = (ex(a), ex(b), ex(beta));
        let n_max = 20;
        let seq = laurent_coeffs(&a.to_complex(prec()), &b.to_complex(prec()), &beta.to_complex(prec()), n_max, D).unwrap();
        let p = Parameters::new(a, b, beta.add(&beta));
        let g = build_series(&p, &c(0.0, 0.0), &c(0.0, 0.0), &c(1.0, 0.0), n_max + 4, D).unwrap();
        let g = g.coeffs();
        // S = h Q(h): S'/S - 1/h = (S' - Q) / (h Q)
        let mut out: Vec<Complex> = Vec::new();
        for n in 0..=n_max {
            let mut acc = g[n + 2].mul_i64((n + 1) as i64);
            for k in 0..n {
                acc -= &(&out[k] * &g[n - k + 1]);
            }
            out.push(&acc / &g[1]);
        }
        for n in 0..=n_max {
            let d = seq.coeffs[n].dist_f64(&out[n]);
            prop_assert!(d < 1e-20 * out[n].abs_f64().max(1.0), "n = {n}: {d:e}");
        }
    }

    #[test]
    fn transforms_compose(
        a in pair(2.0), b in pair(2.0), cc in pair(2.0),
        t1 in pair(2.0), s1 in pair(2.0), t2 in pair(2.0), s2 in pair(2.0),
    ) {
        prop_assume!(t1 != (0.0, 0.0) && t2 != (0.0, 0.0));
        let p = Parameters::new(ex(a), ex(b), ex(cc));
        let first = TransformSpec::new(ex(t1), ex(s1));
        let second = TransformSpec::new(ex(t2), ex(s2));
        let stepwise = map_parameters(&first, &map_parameters(&second, &p).unwrap()).unwrap();
        let composed = map_parameters(&first.then(&second), &p).unwrap();
        prop_assert_eq!(stepwise, composed);
    }

    #[test]
    fn transformed_solution_solves_target(
        a in pair(1.0), b in pair(1.0), cc in pair(1.0),
        t in pair(2.0), s in pair(1.0), d in pair(2.0), off in unit_disk_offset(1.0),
    ) {
        prop_assume!(t.0.abs() + t.1.abs() > 0.1 && d.0.abs() + d.1.abs() > 0.1);
        let p = Parameters::new(ex(a), ex(b), ex(cc));
        let tr = apply_transform(&TransformSpec::new(ex(t), ex(s)), &p, &SolutionDescription::principal(ex(d)), false).unwrap();
        let z = c(s.0 + off.0, s.1 + off.1);
        let r = transform_eval_residual(&tr, &z, D).unwrap();
        prop_assert!(r < 1e-30, "residual {r:e}");
    }

    #[test]
    fn homogeneity_under_rescaling(
        a in pair(1.0), b in pair(1.0), m in 0.5f64..2.0, theta in 0.0..std::f64::consts::TAU,
        z in unit_disk_offset(1.5),
    ) {
        let lambda = ExactComplex::from_f64_pair(m * theta.cos(), m * theta.sin()).unwrap();
        let r = verify_homogeneity(&ex(a), &ex(b), &lambda, &[c(z.0, z.1)], D).unwrap();
        prop_assert!(r.max_residual < 1e-30, "residual {:e}", r.max_residual);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn newton_from_nearby_start_returns_to_zero(
        a in pair(1.0), b in pair(1.0), cc in pair(1.0), kick in unit_disk_offset(1e-3),
    ) {
        let p = Parameters::new(ex(a), ex(b), ex(cc));
        let data = InitialData::principal(&p).unwrap();
        let zs = nearest_zeros(&data, &c(0.0, 0.0), 2, 1e-25, D).unwrap();
        let z = zs.iter().find(|z| z.location.abs_f64() > 1e-15).unwrap();
        let s = data.series_covering(&z.location, 0.01, D).unwrap();
        let start = &z.location + &c(kick.0, kick.1);
        let pol = newton(
            |w| {
                let (v, d) = s.eval_with_derivative(w)?;
                Ok((v.value, d.value))
            },
            &start,
            1e-30,
            1e-35,
            60,
        )
        .unwrap();
        let d = pol.root.dist_f64(&z.location);
        prop_assert!(d < 1e-20 * z.location.abs_f64().max(1.0), "moved by {d:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scorer_functions_sum_to_bi(x in -3.0f64..3.0) {
        let z = c(x, 0.0);
        let gi = scorer(ScorerKind::Gi, &z, D).unwrap();
        let hi = scorer(ScorerKind::Hi, &z, D).unwrap();
        let bi = airy_homogeneous(AiryKind::Bi, &z, D).unwrap();
        prop_assert!((&gi + &hi).dist_f64(&bi) < 1e-25);
    }

    #[test]
    fn hypergeometric_converges_within_cap(re in -100.0f64..100.0, im in -100.0f64..100.0) {
        prop_assume!(re * re + im * im <= 1e4);
        let args = Hyp1F2Args::new(1, Rational::from((4, 3)), Rational::from((5, 3)));
        prop_assert!(hyp1f2(&args, &c(re, im), 30).is_ok());
    }

    #[test]
    fn polya_weight_positive_and_increasing(nu in -0.99f64..0.99) {
        let mut prev = 0.0;
        for i in 1..1000 {
            let w = polya_weight(nu, i as f64 / 1000.0).unwrap();
            prop_assert!(w > 0.0 && w > prev, "nu = {nu}, t = {}", i as f64 / 1000.0);
            prev = w;
        }
    }
}
