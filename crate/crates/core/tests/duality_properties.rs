use rspec_core::duality::{find_peaks, primes_to_zeros_series, zeros_to_primes_series};
use rspec_core::ZeroTable;

const PRIME_POWERS: [f64; 7] = [2.0, 3.0, 4.0, 5.0, 7.0, 8.0, 9.0];

fn value_at(zeros: &ZeroTable, count: usize, x: f64) -> f64 {
    zeros_to_primes_series(zeros, count, x, x, 1.0).unwrap().values[0]
}

#[test]
fn truncation_is_linear() {
    let z = ZeroTable::fixture();
    let (c1, c2) = (300, 1000);
    let full = zeros_to_primes_series(&z, c2, 1.5, 10.5, 0.01).unwrap();
    let head = zeros_to_primes_series(&z, c1, 1.5, 10.5, 0.01).unwrap();
    let tail_table = z.slice(c1..c2).unwrap();
    let tail = zeros_to_primes_series(&tail_table, c2 - c1, 1.5, 10.5, 0.01).unwrap();
    for k in 0..full.values.len() {
        let diff = full.values[k] - head.values[k];
        assert!((diff - tail.values[k]).abs() < 1e-12, "k={k}: {diff} vs {}", tail.values[k]);
    }
}

#[test]
fn detector_grows_at_prime_powers() {
    let z = ZeroTable::fixture();
    for &x in &[2.0, 3.0, 5.0, 7.0, 9.0] {
        let vs: Vec<f64> = [100, 300, 1000].iter().map(|&c| value_at(&z, c, x)).collect();
        assert!(vs[0] > 0.0, "x={x}: {vs:?}");
        assert!(vs[0] < vs[1] && vs[1] < vs[2], "x={x}: {vs:?}");
    }
}

#[test]
fn prime_power_dominates_gap_point() {
    let z = ZeroTable::fixture();
    let at5 = value_at(&z, 1000, 5.0);
    let at55 = value_at(&z, 1000, 5.5);
    assert!(at5 >= 3.0 * at55.abs(), "{at5} vs {at55}");
}

#[test]
fn top_peaks_are_prime_powers() {
    let z = ZeroTable::fixture();
    let s = zeros_to_primes_series(&z, 1000, 1.5, 10.5, 0.001).unwrap();
    let mut peaks = find_peaks(&s, 0.0).unwrap();
    for w in peaks.windows(2) {
        assert!(w[0].0 < w[1].0);
    }
    peaks.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut top: Vec<f64> = peaks[..7].iter().map(|p| p.0).collect();
    top.sort_by(f64::total_cmp);
    for (got, want) in top.iter().zip(PRIME_POWERS) {
        assert!((got - want).abs() <= 0.02, "{got} vs {want}");
    }
}

#[test]
fn halving_step_keeps_peaks() {
    let z = ZeroTable::fixture();
    let coarse_step = 0.002;
    let coarse = zeros_to_primes_series(&z, 1000, 1.5, 10.5, coarse_step).unwrap();
    let fine = zeros_to_primes_series(&z, 1000, 1.5, 10.5, coarse_step / 2.0).unwrap();
    let fine_peaks = find_peaks(&fine, 0.0).unwrap();
    let mut coarse_peaks = find_peaks(&coarse, 0.0).unwrap();
    coarse_peaks.sort_by(|a, b| b.1.total_cmp(&a.1));
    for &(x, _) in coarse_peaks.iter().take(7) {
        let nearest = fine_peaks.iter().map(|p| (p.0 - x).abs()).fold(f64::INFINITY, f64::min);
        assert!(nearest <= coarse_step + 1e-12, "peak {x} moved by {nearest}");
    }
}

#[test]
fn zeros_from_prime_powers() {
    let s = primes_to_zeros_series(10_000, 10.0, 16.0, 0.001).unwrap();
    let peaks = find_peaks(&s, 0.0).unwrap();
    let top = peaks.iter().cloned().fold((0.0, f64::MIN), |a, b| if b.1 > a.1 { b } else { a });
    assert!((top.0 - 14.134725).abs() <= 0.05, "{top:?}");
}
