//! Acceptance gate: eleven desk-scale checks combining exact identities,
//! explicit-constant inequalities, and log-log slope fits. Each test prints
//! one PASS line with its measured quantities; tolerances are pinned in the
//! assertions.

use approx::assert_relative_eq;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use expsum::diophantine::{
    count_bruteforce, count_spectral, fejer_hat, fejer_kernel, fejer_weighted_count, BoxQuery,
    Rational, FEJER_SANDWICH_CONSTANT,
};
use expsum::moments::{
    exponent_recurrence, fit_exponent, integral_i, moment_exact, moment_quadrature, MomentQuery,
};
use expsum::stationary_phase::{b_transform_residual, expansion_residual, SmoothPhase};
use expsum::sums::IntRange;
use expsum::weyl::{best_rational, near_integer_bounds, near_integer_count, symmetric_differences};

#[test]
fn criterion_01_spectral_count_equals_bruteforce() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0001);
    let mut configurations = 0u32;
    for p in 1..=3u32 {
        for len in 3..=8i64 {
            for _ in 0..20 {
                let lo = rng.gen_range(-4..=8i64);
                let range = IntRange::open_closed(lo, lo + len).unwrap();
                let m = range.max_abs() as i128;
                let t2 = Rational::new(
                    rng.gen_range(0..=2 * p as i128 * m * m),
                    rng.gen_range(1..=8),
                )
                .unwrap();
                let t4 = Rational::new(
                    rng.gen_range(0..=2 * p as i128 * m.pow(4)),
                    rng.gen_range(1..=8),
                )
                .unwrap();
                let q = BoxQuery { p, range, t2, t4 };
                let fast = count_spectral(&q).unwrap().count;
                let brute = count_bruteforce(&q).unwrap().count;
                assert_eq!(
                    fast, brute,
                    "criterion 01: FAIL at p={p}, range={range}, t2={t2:?}, t4={t4:?}"
                );
                configurations += 1;
            }
        }
    }
    println!("criterion 01 (oracle equivalence): PASS - exact agreement on {configurations} random configurations");
}

#[test]
fn criterion_02_full_square_moment_is_parseval_count() {
    let cases = [
        (1, IntRange::open_closed(0, 16).unwrap()),
        (2, IntRange::open_closed(0, 16).unwrap()),
        (3, IntRange::open_closed(0, 16).unwrap()),
        (2, IntRange::open_closed(-6, 7).unwrap()),
        (3, IntRange::open_closed(-3, 5).unwrap()),
    ];
    let mut worst_rel: f64 = 0.0;
    for (p, range) in cases {
        let moment = moment_exact(&MomentQuery::new(p, range, (0.0, 1.0), (0.0, 1.0)))
            .unwrap()
            .value;
        let zero = Rational::new(0, 1).unwrap();
        let count = count_spectral(&BoxQuery {
            p,
            range,
            t2: zero,
            t4: zero,
        })
        .unwrap()
        .count as f64;
        assert_relative_eq!(moment, count, max_relative = 1e-6);
        worst_rel = worst_rel.max((moment - count).abs() / count);
    }
    println!(
        "criterion 02 (Parseval identity): PASS - worst relative error {worst_rel:.3e} <= 1e-6 on {} cases",
        cases.len()
    );
}

#[test]
fn criterion_03_cubic_threshold_count_slope() {
    let ns = [16i64, 32, 64, 128];
    let mut samples = Vec::new();
    for &n in &ns {
        let t4 = Rational::new((n as i128).pow(3), 1).unwrap();
        let q = BoxQuery {
            p: 3,
            range: IntRange::from_zero(n).unwrap(),
            t2: Rational::new(0, 1).unwrap(),
            t4,
        };
        let count = count_spectral(&q).unwrap().count;
        assert!(
            count as f64 >= (n as f64).powi(3),
            "criterion 03: FAIL - count {count} below N^3 at N={n}"
        );
        samples.push((n as f64, count as f64));
    }
    let fit = fit_exponent(&samples).unwrap();
    assert!(
        (2.8..=3.35).contains(&fit.slope),
        "criterion 03: FAIL - slope {} outside [2.8, 3.35]",
        fit.slope
    );
    println!(
        "criterion 03 (count growth): PASS - slope {:.4} in [2.8, 3.35], counts >= N^3 at N in {ns:?}",
        fit.slope
    );
}

#[test]
fn criterion_04_window_integral_slope_and_floor() {
    let ns = [8i64, 16, 32, 64];
    let mut samples = Vec::new();
    for &n in &ns {
        let v = integral_i(n, 3).unwrap().value;
        assert!(v >= 1.0, "criterion 04: FAIL - I({n}) = {v} < 1");
        samples.push((n as f64, v));
    }
    let fit = fit_exponent(&samples).unwrap();
    assert!(
        fit.slope <= 0.5,
        "criterion 04: FAIL - slope {} exceeds 0.5",
        fit.slope
    );
    println!(
        "criterion 04 (window integral): PASS - slope {:.4} <= 0.5, all values >= 1 at N in {ns:?}",
        fit.slope
    );
}

#[test]
fn criterion_05_quadrature_agrees_with_exact() {
    // (p, dyadic base, gamma interval, quadrature safety factor); gamma is
    // the full period for lambda = 1 and the symmetric window for N^-3.
    let n16 = 16f64.powi(3).recip();
    let cases = [
        (1u32, 2i64, (0.0, 1.0), 0.05),
        (1, 8, (-n16, n16), 0.05),
        (2, 2, (0.0, 1.0), 0.05),
        (2, 8, (-n16, n16), 0.1),
    ];
    let mut worst_rel: f64 = 0.0;
    for (p, base, gamma, safety) in cases {
        let q = MomentQuery::full_alpha(p, IntRange::dyadic(base).unwrap(), gamma);
        let exact = moment_exact(&q).unwrap();
        let quad = moment_quadrature(&q, safety).unwrap();
        let diff = (quad.value - exact.value).abs();
        // Float-rounding floor: the estimate may be exactly 0 when both
        // midpoint grids integrate the trigonometric polynomial exactly.
        let floor = 1e-12 * (1.0 + exact.value.abs());
        assert!(
            diff <= quad.error_estimate + floor,
            "criterion 05: FAIL - p={p}, N={}, diff {diff} above estimate {}",
            2 * base,
            quad.error_estimate
        );
        assert_relative_eq!(quad.value, exact.value, max_relative = 0.01);
        worst_rel = worst_rel.max(diff / exact.value.abs());
    }
    println!(
        "criterion 05 (quadrature consistency): PASS - worst relative error {worst_rel:.3e} <= 1e-2 on {} cases",
        cases.len()
    );
}

#[test]
fn criterion_06_transform_residual_envelope() {
    // Envelope with the frozen lambda2 = 1.5 alpha calibration; residuals
    // fluctuate at unit scale, so the doubling check carries a unit floor.
    let envelope = |alpha: f64, n: f64| -> f64 {
        let l2 = 1.5 * alpha;
        10.0 * ((2.0 + n * l2).ln() + l2.sqrt().recip())
    };
    let mut reported = Vec::new();
    for alpha in [0.1, 0.3] {
        let mut previous: Option<f64> = None;
        for n in [256i64, 512, 1024] {
            let phase = SmoothPhase::new(alpha, 0.0, n).unwrap();
            let r = b_transform_residual(&phase).unwrap().residual;
            let e = envelope(alpha, n as f64);
            assert!(
                r <= e,
                "criterion 06: FAIL - residual {r} above envelope {e} at alpha={alpha}, N={n}"
            );
            if let Some(prev) = previous {
                assert!(
                    r <= 2.0 * prev.max(1.0),
                    "criterion 06: FAIL - doubling N grew residual {prev} -> {r} at alpha={alpha}, N={n}"
                );
            }
            previous = Some(r);
            reported.push(format!("({alpha},{n})={r:.3}"));
        }
    }
    println!(
        "criterion 06 (transform residual): PASS - residuals {} all within envelopes",
        reported.join(" ")
    );
}

#[test]
fn criterion_07_expansion_quarter_scaling() {
    let n = 200i64;
    let boundary = 0.25 / (96.0 * (n as f64) * (n as f64));
    let gamma = boundary / 4.0;
    let r_full = expansion_residual(&SmoothPhase::new(0.25, gamma, n).unwrap(), 100).unwrap();
    let r_half = expansion_residual(&SmoothPhase::new(0.25, gamma / 2.0, n).unwrap(), 100).unwrap();
    let ratio = r_half / r_full;
    assert!(
        (1.0 / 16.0..=0.25).contains(&ratio),
        "criterion 07: FAIL - halving ratio {ratio} outside [1/16, 1/4]"
    );
    println!("criterion 07 (expansion scaling): PASS - halving ratio {ratio:.4} in [1/16, 1/4]");
}

#[test]
fn criterion_08_near_integer_explicit_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0008);
    let mut checked_second = 0u32;
    for i in 0..1000 {
        let alpha: f64 = rng.gen();
        let h = rng.gen_range(1u64..=10_000);
        let delta = rng.gen_range(0.0..=0.2);
        let b = near_integer_count(alpha, h, delta).unwrap() as f64;
        let approx = best_rational(alpha, h).unwrap();
        let (b1, b2) = near_integer_bounds(&approx, h, delta);
        assert!(
            b <= b1,
            "criterion 08: FAIL - sample {i}: count {b} above 4(1+q delta)(1+H/q) = {b1}"
        );
        if let Some(b2) = b2 {
            assert!(
                b <= b2,
                "criterion 08: FAIL - sample {i}: count {b} above theta bound {b2}"
            );
            checked_second += 1;
        }
    }
    println!(
        "criterion 08 (explicit count bounds): PASS - zero violations on 1000 samples ({checked_second} with a theta bound)"
    );
}

#[test]
fn criterion_09_difference_coefficient_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0009);
    let mut cases = 0u32;
    for k in [8u32, 9, 10] {
        for _ in 0..10 {
            let r = k - 4;
            let h: Vec<i64> = (0..r)
                .map(|_| {
                    let v = rng.gen_range(1i64..=6);
                    if rng.gen() { v } else { -v }
                })
                .collect();
            let alpha = BigRational::new(
                BigInt::from(rng.gen_range(1i64..=9)),
                BigInt::from(rng.gen_range(1i64..=9)),
            );
            let coeffs = symmetric_differences(k, &h, &alpha).unwrap();
            let mut expected = alpha.clone() * BigRational::from_integer(BigInt::from(2).pow(r));
            for v in &h {
                expected *= BigRational::from_integer(BigInt::from(*v));
            }
            for f in (5..=k as u64).map(BigInt::from) {
                expected *= BigRational::from_integer(f);
            }
            assert_eq!(
                coeffs[4], expected,
                "criterion 09: FAIL - k={k}, h={h:?}: quartic coefficient mismatch"
            );
            cases += 1;
        }
    }
    println!(
        "criterion 09 (difference coefficient): PASS - exact identity on {cases} random tuples"
    );
}

#[test]
fn criterion_10_fejer_facts() {
    assert_eq!(fejer_hat(0.0), 1.0, "criterion 10: FAIL - hat(0) != 1");
    assert_eq!(fejer_hat(1.0), 0.0, "criterion 10: FAIL - hat(1) != 0");
    assert_eq!(fejer_hat(-1.0), 0.0, "criterion 10: FAIL - hat(-1) != 0");

    let mut min_scaled = f64::INFINITY;
    for i in 0..=10_000 {
        let y = -0.5 + i as f64 / 10_000.0;
        min_scaled = min_scaled.min(FEJER_SANDWICH_CONSTANT * fejer_kernel(y));
    }
    assert!(
        min_scaled >= 1.0 - 1e-12,
        "criterion 10: FAIL - sandwich minimum {min_scaled} below 1"
    );

    let zero = Rational::new(0, 1).unwrap();
    let q = BoxQuery {
        p: 2,
        range: IntRange::open_closed(0, 6).unwrap(),
        t2: zero,
        t4: zero,
    };
    let weighted = fejer_weighted_count(&q, 1.0, 1.0).unwrap();
    let sharp = count_spectral(&q).unwrap().count as f64;
    assert!(
        (weighted - sharp).abs() <= 1e-9,
        "criterion 10: FAIL - unit-scale weighted count {weighted} != sharp count {sharp}"
    );
    println!(
        "criterion 10 (kernel facts): PASS - hat values exact, sandwich min {min_scaled:.12}, weighted count = sharp count {sharp}"
    );
}

#[test]
fn criterion_11_monotonicity_and_recurrence() {
    let range = IntRange::open_closed(0, 8).unwrap();
    let zero = Rational::new(0, 1).unwrap();
    let chain: Vec<Rational> = [(0, 1), (1, 3), (1, 2), (2, 1), (10, 1), (100, 1), (4096, 1)]
        .iter()
        .map(|&(n, d)| Rational::new(n, d).unwrap())
        .collect();
    let mut last = 0u128;
    for t4 in &chain {
        let c = count_spectral(&BoxQuery {
            p: 2,
            range,
            t2: zero,
            t4: *t4,
        })
        .unwrap()
        .count;
        assert!(
            c >= last,
            "criterion 11: FAIL - count dropped from {last} to {c} along the t4 chain"
        );
        last = c;
    }
    let mut last = 0u128;
    for t2 in &chain {
        let c = count_spectral(&BoxQuery {
            p: 2,
            range,
            t2: *t2,
            t4: zero,
        })
        .unwrap()
        .count;
        assert!(
            c >= last,
            "criterion 11: FAIL - count dropped from {last} to {c} along the t2 chain"
        );
        last = c;
    }

    let v = exponent_recurrence(3.0, 4).unwrap();
    let closed = 3.0 / 13.0;
    assert!(
        (v - closed).abs() <= 1e-12,
        "criterion 11: FAIL - recurrence {v} differs from closed form {closed}"
    );
    println!(
        "criterion 11 (monotonicity and recurrence): PASS - counts non-decreasing on both chains, recurrence matches 3/13 to 1e-12"
    );
}
