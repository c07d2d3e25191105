use proptest::prelude::*;
use rspec_core::correlation::{correlation, inner_product, CorrelationMode};
use rspec_core::sector::{circle_distance, sector_sample, SectorSample};
use rspec_core::{first_primes, histogram, histogram_entropy, ZeroTable};

#[test]
fn fixture_sectors_are_unit_modulus() {
    let z = ZeroTable::fixture();
    for p in first_primes(100) {
        for q in [1, 3] {
            let s = sector_sample(&z, p, q).unwrap();
            assert!(s.values.iter().all(|v| (v.norm() - 1.0).abs() < 1e-12));
            assert!(s.reduced.iter().all(|r| (0.0..1.0).contains(r)));
            for (r1, rq) in s.turns().iter().zip(&s.reduced) {
                assert!(circle_distance(*r1, q as f64 * rq) < 1e-9);
            }
        }
    }
}

#[test]
fn fixture_p2_histogram_is_spread() {
    let s = sector_sample(&ZeroTable::fixture(), 2, 1).unwrap();
    let h = histogram(&s.reduced, 10).unwrap();
    assert!(h.counts.iter().all(|&c| c > 0));
    let e = histogram_entropy(&h).unwrap();
    assert!(e > 0.9 * 10f64.ln() && e <= 10f64.ln());
}

fn shuffled(zeros: &ZeroTable, seed: u64) -> Vec<f64> {
    // Fisher–Yates with a splitmix64 stream
    let mut v = zeros.ordinates().to_vec();
    let mut state = seed;
    let mut next = || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    for i in (1..v.len()).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        v.swap(i, j);
    }
    v
}

fn sample_from(ts: &[f64], p: u64) -> SectorSample {
    let ln_p = (p as f64).ln();
    SectorSample::from_values(p, ts.iter().map(|&t| num_complex_polar(t * ln_p)).collect()).unwrap()
}

fn num_complex_polar(theta: f64) -> num_complex::Complex64 {
    let (s, c) = theta.sin_cos();
    num_complex::Complex64::new(c, s)
}

#[test]
fn shuffling_zeros_barely_moves_raw_correlation() {
    let z = ZeroTable::fixture();
    for seed in 1..4 {
        let ts = shuffled(&z, seed);
        for &(p, q) in &[(2, 3), (19, 359), (29, 317)] {
            let before = correlation(&sector_sample(&z, p, 1).unwrap(), &sector_sample(&z, q, 1).unwrap(), CorrelationMode::Raw)
                .unwrap();
            let after = correlation(&sample_from(&ts, p), &sample_from(&ts, q), CorrelationMode::Raw).unwrap();
            assert!((before - after).abs() < 1e-9, "{p},{q}: {before} vs {after}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cauchy_schwarz_both_modes(i in 0usize..60, j in 0usize..60, n in 2usize..1000) {
        let ps = first_primes(60);
        let z = ZeroTable::fixture().truncated(n).unwrap();
        let a = sector_sample(&z, ps[i], 1).unwrap();
        let b = sector_sample(&z, ps[j], 1).unwrap();
        let raw = correlation(&a, &b, CorrelationMode::Raw).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&raw));
        let centered = correlation(&a, &b, CorrelationMode::Centered).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&centered));
        let back = correlation(&b, &a, CorrelationMode::Centered).unwrap();
        prop_assert!((centered - back).abs() < 1e-12);
        prop_assert_eq!(inner_product(&a, &b).unwrap(), inner_product(&b, &a).unwrap().conj());
    }
}
