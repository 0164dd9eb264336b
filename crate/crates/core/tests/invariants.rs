use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schwarzkit::algebra::chordal_distance;
use schwarzkit::cubic::h_alpha;
use schwarzkit::primitivity::{
    check_polynomial_criterion, classify_holonomy, extract_configuration, HolonomyClass,
};
use schwarzkit::reconstruction::{catalan, default_attempts, reconstruct_rational, solve_fiber, wronskian};
use schwarzkit::schwarzian::{infinity_type, laurent_at, schwarzian, InfinityType};
use schwarzkit::{ComplexPolynomial, MobiusMap, RationalMap, RiemannPoint, TruncatedSeries, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn random_c(rng: &mut ChaCha8Rng, r: f64) -> C64 {
    c(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn spread(rng: &mut ChaCha8Rng, k: usize, r: f64, gap: f64) -> Vec<C64> {
    loop {
        let pts: Vec<C64> = (0..k).map(|_| random_c(rng, r)).collect();
        let ok = (0..k).all(|i| (0..i).all(|j| (pts[i] - pts[j]).norm() > gap));
        if ok {
            return pts;
        }
    }
}

fn samples() -> Vec<C64> {
    (0..16).map(|k| C64::from_polar(0.4 + 0.1 * k as f64, 0.7 + 2.1 * k as f64)).collect()
}

#[test]
fn cubics_are_rigid_given_their_critical_points() {
    for alpha in [c(0.3, 0.2), c(-0.5, 0.4), c(1.7, -0.3), c(0.1, -1.2)] {
        let h = h_alpha(alpha).unwrap();
        let crit: Vec<C64> = h.critical_points(1e-10).unwrap().into_iter().map(|(p, _)| p.as_finite().unwrap()).collect();
        assert_eq!(crit.len(), 4);
        let maps = reconstruct_rational(&crit, default_attempts(2), 5).unwrap();
        let target: Vec<RiemannPoint> = crit.iter().map(|&p| h.eval_point(p.into())).collect();
        let matched = maps.iter().any(|f| {
            let values: Vec<RiemannPoint> = crit.iter().map(|&p| f.eval_point(p.into())).collect();
            let Ok(m) = MobiusMap::from_triples([values[0], values[1], values[2]], [target[0], target[1], target[2]])
            else {
                return false;
            };
            samples().iter().all(|&z| {
                let z = RiemannPoint::Finite(z);
                chordal_distance(m.apply(f.eval_point(z)), h.eval_point(z)) < 1e-7
            })
        });
        assert!(matched, "no reconstructed cubic is a Möbius image of h_alpha for alpha = {alpha}");
    }
}

#[test]
fn fiber_solutions_are_valid_and_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let roots = spread(&mut rng, 4, 1.5, 0.3);
        let target = ComplexPolynomial::from_roots(&roots);
        let report = solve_fiber(&target, default_attempts(2), 9).unwrap();
        assert!(!report.solutions.is_empty());
        assert!(report.solutions.len() as u64 <= report.expected_max && report.expected_max == catalan(3));
        for sol in &report.solutions {
            let w = wronskian(sol);
            let err = (0..=4).map(|k| (w.coeff(k) - target.coeff(k)).norm()).fold(0.0, f64::max);
            assert!(err < 1e-8, "wronskian off by {err:e}");
        }
        assert_eq!(solve_fiber(&target, default_attempts(2), 9).unwrap(), report);
    }
}

#[test]
fn distinct_fiber_maps_have_distinct_schwarzians() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..6 {
        let points = spread(&mut rng, 4, 1.5, 0.3);
        let maps = reconstruct_rational(&points, default_attempts(2), 3).unwrap();
        let s: Vec<RationalMap> = maps.iter().map(|f| schwarzian(f).unwrap()).collect();
        for i in 0..s.len() {
            for j in 0..i {
                assert!(s[i].coefficient_distance(&s[j]) > 1e-6);
            }
        }
    }
}

#[test]
fn schwarzian_poles_record_local_degrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10 {
        let num = ComplexPolynomial::new((0..4).map(|_| random_c(&mut rng, 1.0)).collect());
        let den = ComplexPolynomial::new((0..4).map(|_| random_c(&mut rng, 1.0)).collect());
        let f = RationalMap::new(num, den).unwrap();
        let s = schwarzian(&f).unwrap();
        for (p, d) in f.critical_points(1e-9).unwrap() {
            let Some(p) = p.as_finite() else { continue };
            let germ = laurent_at(&s, p, 6).unwrap();
            let expected = (1.0 - (d * d) as f64) / 2.0;
            assert!((germ.leading - expected).norm() < 1e-6, "leading {} for d = {d}", germ.leading);
            assert_eq!(germ.local_degree_hint, Some(d as u32));
            let tail = TruncatedSeries::new(p, germ.residue_and_tail.clone()).unwrap();
            assert_eq!(classify_holonomy(&germ, &tail), HolonomyClass::Identity);
        }
    }
}

#[test]
fn polynomials_have_a_double_pole_at_infinity() {
    for n in 2..6 {
        let mut coeffs = vec![c(0.0, 0.0); n + 1];
        coeffs[0] = c(0.5, 0.0);
        coeffs[1] = c(-1.0, 0.25);
        coeffs[n] = c(1.0, 0.0);
        let s = schwarzian(&RationalMap::from_poly(ComplexPolynomial::new(coeffs))).unwrap();
        match infinity_type(&s).unwrap() {
            InfinityType::DoublePole { leading } => {
                let d = n as f64;
                assert!((leading - (1.0 - d * d) / 2.0).norm() < 1e-9, "degree {n}: {leading}");
            }
            other => panic!("degree {n}: {other:?}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn polynomial_criterion_round_trip(seed in 0u64..1000, k in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = spread(&mut rng, k, 1.5, 0.3);
        let (config, record) = check_polynomial_criterion(&points).unwrap();
        prop_assert!(record.overall);
        // the polynomial with these simple critical points
        let dp = ComplexPolynomial::from_roots(&points);
        let mut integral = vec![c(0.0, 0.0)];
        integral.extend(dp.coeffs().iter().enumerate().map(|(i, a)| a / (i + 1) as f64));
        let p = ComplexPolynomial::new(integral);
        let s = schwarzian(&RationalMap::from_poly(p)).unwrap();
        let extracted = extract_configuration(&s).unwrap();
        prop_assert_eq!(extracted.len(), k);
        for (pt, a) in config.points.iter().zip(&config.params) {
            let i = extracted.points.iter().position(|q| (q - pt).norm() < 1e-6).unwrap();
            prop_assert!((extracted.params[i] - a).norm() < 1e-6 * (1.0 + a.norm()));
        }
    }
}
