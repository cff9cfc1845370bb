mod common;

use std::f64::consts::PI;

use common::{discrepancy_brute_force, random_st_series, rng, toy_series};
use proptest::prelude::*;
use rand::Rng;
use satotate_core::curve::catalog;
use satotate_core::equidist::{
    cheb_sum_bound, cheb_sum_bound_2d, count_in_interval, erdos_turan_bound, erdos_turan_profile,
    erdos_turan_uniform, exact_discrepancy_1d, fit_decay_exponent, interval_discrepancy, joint_box_discrepancy,
    joint_box_discrepancy_uniform, joint_count, least_prime_in_interval, least_prime_in_series,
    theoretical_bound_curves, BoundShape,
};
use satotate_core::measure::{mu_st, st_cdf};
use satotate_core::primes::prime_count;
use satotate_core::{build_angle_series, AngleSeries, AngleSource, Error, Interval};

fn series_11a1(x: u64) -> AngleSeries {
    build_angle_series(&AngleSource::Curve(catalog::c11a1()), x).unwrap()
}

fn series_37a1(x: u64) -> AngleSeries {
    build_angle_series(&AngleSource::Curve(catalog::c37a1()), x).unwrap()
}

#[test]
fn exact_discrepancy_matches_brute_force() {
    let mut r = rng(17);
    for set in 0..50 {
        let n = r.gen_range(1..=200);
        // Every fifth set snaps values to a coarse lattice to create ties and endpoints.
        let mut us: Vec<f64> = (0..n)
            .map(|_| {
                let u: f64 = r.gen();
                if set % 5 == 0 {
                    (u * 8.0).round() / 8.0
                } else {
                    u
                }
            })
            .collect();
        let brute = discrepancy_brute_force(&us);
        let fast = interval_discrepancy(&mut us);
        assert!((fast - brute).abs() <= 1e-12, "set {set}: {fast} vs {brute}");
    }
}

#[test]
fn discrepancy_landmarks() {
    assert_eq!(interval_discrepancy(&mut [0.0]), discrepancy_brute_force(&[0.0]));
    let q = [0.25, 0.75];
    assert!((interval_discrepancy(&mut q.clone()) - discrepancy_brute_force(&q)).abs() < 1e-15);
}

#[test]
fn erdos_turan_dominates_random_sets() {
    let mut r = rng(23);
    for set in 0..100 {
        let n = if set < 10 { set + 1 } else { r.gen_range(1..=10_000) };
        let mut us: Vec<f64> = (0..n).map(|_| r.gen()).collect();
        let m = r.gen_range(1..=60);
        let bound = erdos_turan_uniform(&us, m).unwrap();
        let exact = interval_discrepancy(&mut us);
        assert!(bound >= exact, "set {set}: ET {bound} < D {exact}");
    }
}

#[test]
fn erdos_turan_dominates_curve_series() {
    let s11 = series_11a1(100_000);
    let s37 = series_37a1(100_000);
    for s in [&s11, &s37] {
        for x in [10_000, 100_000] {
            let et = erdos_turan_bound(s, x, 50).unwrap();
            let d = exact_discrepancy_1d(s, x).unwrap();
            assert!(et >= d, "{} x = {x}: {et} < {d}", s.meta.label);
        }
    }
}

#[test]
fn erdos_turan_profile_incremental() {
    let mut r = rng(29);
    let us: Vec<f64> = (0..500).map(|_| r.gen()).collect();
    let profile = erdos_turan_profile(&us, 40).unwrap();
    for m in 1..40 {
        // Direct recomputation of the added term.
        let (c, s) = us.iter().fold((0.0, 0.0), |(c, s), &u| {
            let ph = 2.0 * PI * (m + 1) as f64 * u;
            (c + ph.cos(), s + ph.sin())
        });
        let added = 3.0 * c.hypot(s) / (m + 1) as f64 / us.len() as f64;
        let expect = profile[m - 1] - 1.0 / (m + 1) as f64 + 1.0 / (m + 2) as f64 + added;
        assert!((profile[m] - expect).abs() <= 1e-12, "M = {}", m + 1);
    }
}

#[test]
fn counts_and_complements() {
    let s = series_11a1(20_000);
    let x = 20_000;
    let pi_x = prime_count(x);
    assert_eq!(count_in_interval(&s, &Interval::full(), x).unwrap(), pi_x - 1);
    let i = Interval::new(0.0, PI / 2.0).unwrap();
    assert_eq!(count_in_interval(&s, &i, 10).unwrap(), 1);
    let mut r = rng(31);
    for _ in 0..50 {
        let a: f64 = r.gen_range(0.0..PI);
        let b: f64 = r.gen_range(a..PI);
        let inside = count_in_interval(&s, &Interval::new(a, b).unwrap(), x).unwrap();
        let below = s.up_to(x).unwrap().iter().filter(|pt| pt.theta < a).count() as u64;
        let above = s.up_to(x).unwrap().iter().filter(|pt| pt.theta > b).count() as u64;
        let ties = s.up_to(x).unwrap().iter().filter(|pt| pt.theta == a || pt.theta == b).count();
        assert!(inside + below + above <= pi_x);
        if ties == 0 {
            assert_eq!(inside + below + above, pi_x - 1);
        }
    }
    assert!(matches!(count_in_interval(&s, &i, 30_000), Err(Error::RangeExceeded { .. })));
}

#[test]
fn joint_counts() {
    let a = series_11a1(10_000);
    let b = series_37a1(10_000);
    let half = Interval::new(0.0, PI / 2.0).unwrap();
    let mut brute = 0;
    for pa in a.up_to(100).unwrap() {
        for pb in b.up_to(100).unwrap() {
            if pa.p == pb.p && half.contains(pa.theta) && half.contains(pb.theta) {
                brute += 1;
            }
        }
    }
    assert_eq!(joint_count(&a, &b, &half, &half, 100).unwrap(), brute);
    let full = Interval::full();
    let good_both = satotate_core::primes::primes_up_to(10_000).iter().filter(|&&p| p != 11 && p != 37).count();
    assert_eq!(joint_count(&a, &b, &full, &full, 10_000).unwrap(), good_both as u64);
    // I2 = [0, π] reduces to a single count over primes good for both forms.
    let i = Interval::new(0.3, 2.0).unwrap();
    let single = a.up_to(10_000).unwrap().iter().filter(|pt| pt.p != 37 && i.contains(pt.theta)).count();
    assert_eq!(joint_count(&a, &b, &i, &full, 10_000).unwrap(), single as u64);
}

#[test]
fn cheb2_bound_hand_expansion() {
    let s1 = toy_series("a", 1, vec![(2, 0.4), (3, 1.7), (5, 2.9)], 5);
    let s2 = toy_series("b", 1, vec![(2, 2.2), (3, 0.1), (5, 1.3)], 5);
    let u = |m: usize, t: f64| ((m + 1) as f64 * t).sin() / t.sin();
    let pairs = [(0.4, 2.2), (1.7, 0.1), (2.9, 1.3)];
    let mut terms = 0;
    let mut tail = 0.0;
    for m1 in 0..=3 {
        for m2 in 0..=3 {
            if (m1, m2) == (0, 0) {
                continue;
            }
            let s: f64 = pairs.iter().map(|&(a, b)| u(m1, a) * u(m2, b)).sum();
            tail += s.abs() / ((m1 + 1) * (m2 + 1)) as f64;
            terms += 1;
        }
    }
    assert_eq!(terms, 15);
    let expect = 4.0 * (3.0 / 3.0 + tail);
    let got = cheb_sum_bound_2d(&s1, &s2, 5, 3, 4.0).unwrap();
    assert!((got - expect).abs() <= 1e-12 * expect, "{got} vs {expect}");
    assert!(cheb_sum_bound_2d(&s1, &s2, 5, 2, 4.0).is_err());
}

#[test]
fn cheb_bound_dominates_simulated_series() {
    let mut r = rng(37);
    let mut hits = 0;
    for trial in 0..100 {
        let s = random_st_series(1000 + trial, 20_000);
        let a: f64 = r.gen_range(0.0..PI);
        let b: f64 = r.gen_range(a..PI);
        let i = Interval::new(a, b).unwrap();
        let x = 20_000;
        let err = (count_in_interval(&s, &i, x).unwrap() as f64 - mu_st(&i) * prime_count(x) as f64).abs();
        if cheb_sum_bound(&s, x, 20, 4.0).unwrap() >= err {
            hits += 1;
        }
    }
    assert!(hits >= 99, "{hits}/100");
}

#[test]
fn cheb_bound_records_domination_for_11a1() {
    let s = series_11a1(1_000_000);
    let x = 1_000_000;
    let i = Interval::new(PI / 4.0, 3.0 * PI / 4.0).unwrap();
    let err = (count_in_interval(&s, &i, x).unwrap() as f64 - mu_st(&i) * prime_count(x) as f64).abs();
    assert!(cheb_sum_bound(&s, x, 50, 4.0).unwrap() >= err);
    assert!(cheb_sum_bound(&s, x, 2, 4.0).is_err());
}

#[test]
fn box_discrepancy_independent_and_dependent() {
    let mut r = rng(41);
    let pts: Vec<(f64, f64)> = (0..10_000).map(|_| (r.gen(), r.gen())).collect();
    assert!(joint_box_discrepancy_uniform(&pts, 64).unwrap() <= 0.05);
    let s = series_11a1(20_000);
    assert!(joint_box_discrepancy(&s, &s, 20_000, 64).unwrap() >= 0.2);
    let diag: Vec<(f64, f64)> = (0..1000).map(|_| { let u: f64 = r.gen(); (u, u) }).collect();
    assert!(joint_box_discrepancy_uniform(&diag, 64).unwrap() >= 0.2);
}

#[test]
fn box_discrepancy_grid_brute_force() {
    let mut r = rng(43);
    let g = 6;
    let pts: Vec<(f64, f64)> = (0..60)
        .map(|i| if i % 4 == 0 { ((r.gen_range(0..=g) as f64) / g as f64, r.gen()) } else { (r.gen(), r.gen()) })
        .collect();
    let mut worst: f64 = 0.0;
    for a in 0..=g {
        for b in a..=g {
            for c in 0..=g {
                for d in c..=g {
                    let (a, b, c, d) = (a as f64 / g as f64, b as f64 / g as f64, c as f64 / g as f64, d as f64 / g as f64);
                    let k = pts.iter().filter(|&&(u, v)| a <= u && u <= b && c <= v && v <= d).count();
                    worst = worst.max((k as f64 / 60.0 - (b - a) * (d - c)).abs());
                }
            }
        }
    }
    assert!((joint_box_discrepancy_uniform(&pts, g).unwrap() - worst).abs() < 1e-12);
}

#[test]
fn least_prime_against_series_scan() {
    let s = series_11a1(100_000);
    let src = AngleSource::Curve(catalog::c11a1());
    let i = Interval::new(0.0, 0.2).unwrap();
    let scan = s.points.iter().find(|pt| pt.theta <= 0.2).unwrap().p;
    assert_eq!(least_prime_in_interval(&src, &i, 100_000, 1.0).unwrap().p, scan);
    assert_eq!(least_prime_in_series(&s, &i, 1.0).unwrap().p, scan);
    let half = Interval::new(0.0, PI / 2.0).unwrap();
    assert_eq!(least_prime_in_interval(&src, &half, 100, 1.0).unwrap().p, 5);
}

#[test]
fn bound_shapes() {
    let x = 4f64.exp();
    let g = theoretical_bound_curves(x, 2, 11, BoundShape::Grh, 1.0).unwrap();
    assert!((g - x.powf(0.75) * (22.0 * x).ln() / 4.0).abs() < 1e-12);
    let u = theoretical_bound_curves(3.0, 2, 11, BoundShape::Unconditional, 1.0).unwrap();
    assert!((u - 2.0 * (22.0 * 3f64.ln()).ln() / 3f64.ln().sqrt()).abs() < 1e-12);
    let g2 = theoretical_bound_curves(2.0 * x, 2, 11, BoundShape::Grh, 1.0).unwrap();
    assert!(g2 > g);
}

#[test]
fn decay_fit_pipeline_11a1() {
    let s = series_11a1(1_000_000);
    let i = Interval::new(PI / 4.0, 3.0 * PI / 4.0).unwrap();
    let xs = [1e4, 1e5, 1e6];
    let errs: Vec<f64> = xs
        .iter()
        .map(|&x| {
            let x = x as u64;
            let n = prime_count(x) as f64;
            (count_in_interval(&s, &i, x).unwrap() as f64 / n - mu_st(&i)).abs()
        })
        .collect();
    let fit = fit_decay_exponent(&xs, &errs).unwrap();
    assert!(fit.slope <= -0.25, "slope {}", fit.slope);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn discrepancy_in_unit_range(us in proptest::collection::vec(0.0f64..=1.0, 0..300)) {
        let mut v = us.clone();
        let d = interval_discrepancy(&mut v);
        prop_assert!((0.0..=1.0).contains(&d));
        if !us.is_empty() {
            prop_assert!(d >= 1.0 / (2.0 * us.len() as f64) - 1e-15);
            prop_assert!(erdos_turan_uniform(&us, 10).unwrap() >= d);
        }
    }

    #[test]
    fn transform_is_monotone(a in 0.0..=PI, b in 0.0..=PI) {
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assert!(st_cdf(lo) <= st_cdf(hi));
        prop_assert!((st_cdf(hi) - st_cdf(lo) - mu_st(&Interval::new(lo, hi).unwrap())).abs() <= 1e-14);
    }
}
