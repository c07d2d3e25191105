//! p-sectors `X_p(t) = p^{it}` of a zero table, their reductions to the unit
//! interval, histograms, and bi-distributions under an integer 2×2 transform.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::primes::is_prime;
use crate::zeros::ZeroTable;

pub const DEFAULT_BINS: usize = 100;
pub const DEFAULT_BINS_2D: usize = 50;

#[derive(Debug, Error, PartialEq)]
pub enum SectorError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("compression factor must be at least 1")]
    ZeroCompression,
    #[error("bin count must be at least 1")]
    ZeroBins,
    #[error("value {value} at position {index} is outside [0, 1)")]
    OutOfUnitInterval { index: usize, value: f64 },
    #[error("value at position {index} has modulus {modulus}, not 1")]
    NotUnitModulus { index: usize, modulus: f64 },
    #[error("histogram is empty")]
    EmptyHistogram,
    #[error("transform matrix is singular")]
    SingularMatrix,
}

/// Fractional part in `[0, 1)`, also for negative input.
#[inline]
pub fn frac(x: f64) -> f64 {
    let r = x - x.floor();
    // x slightly below an integer can round up to exactly 1.0
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// `frac(t·ln p / (2π·compression))`.
#[inline]
pub fn reduce(t: f64, ln_p: f64, compression: u32) -> f64 {
    frac(t * ln_p / (TAU * compression as f64))
}

/// Values of `X_p` over a zero table, with their unit-interval reductions.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorSample {
    pub prime: u64,
    pub compression: u32,
    /// `p^{i t_n}` on the unit circle.
    pub values: Vec<Complex64>,
    /// `frac(t_n·ln p / (2π·compression))`.
    pub reduced: Vec<f64>,
    /// Phase of `values[n]` in turns, `frac(t_n·ln p / 2π)`.
    turns: Vec<f64>,
}

impl SectorSample {
    /// Builds a sample from arbitrary unit-modulus values, e.g. for synthetic
    /// tests. Compression is 1 and the reduction is the phase in turns.
    pub fn from_values(prime: u64, values: Vec<Complex64>) -> Result<Self, SectorError> {
        let mut turns = Vec::with_capacity(values.len());
        for (index, v) in values.iter().enumerate() {
            let modulus = v.norm();
            if (modulus - 1.0).abs() > 1e-12 {
                return Err(SectorError::NotUnitModulus { index, modulus });
            }
            turns.push(frac(v.arg() / TAU));
        }
        Ok(Self { prime, compression: 1, values, reduced: turns.clone(), turns })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Phases in turns (compression-independent).
    pub fn turns(&self) -> &[f64] {
        &self.turns
    }
}

/// Evaluates the p-sector over every ordinate of `zeros`.
pub fn sector_sample(zeros: &ZeroTable, p: u64, compression: u32) -> Result<SectorSample, SectorError> {
    if !is_prime(p) {
        return Err(SectorError::NotPrime(p));
    }
    if compression == 0 {
        return Err(SectorError::ZeroCompression);
    }
    let ln_p = (p as f64).ln();
    let rows: Vec<(Complex64, f64, f64)> = zeros
        .ordinates()
        .par_iter()
        .map(|&t| {
            let (s, c) = (t * ln_p).sin_cos();
            (Complex64::new(c, s), reduce(t, ln_p, 1), reduce(t, ln_p, compression))
        })
        .collect();
    let mut values = Vec::with_capacity(rows.len());
    let mut turns = Vec::with_capacity(rows.len());
    let mut reduced = Vec::with_capacity(rows.len());
    for (v, tu, r) in rows {
        values.push(v);
        turns.push(tu);
        reduced.push(r);
    }
    Ok(SectorSample { prime: p, compression, values, reduced, turns })
}

/// Counts over a uniform partition of `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub counts: Vec<u64>,
    pub total: u64,
}

impl Histogram {
    pub fn bin_count(&self) -> usize {
        self.counts.len()
    }

    /// `(low, high)` of bin `k`.
    pub fn edges(&self, k: usize) -> (f64, f64) {
        let b = self.counts.len() as f64;
        (k as f64 / b, (k + 1) as f64 / b)
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.total as f64).collect()
    }
}

#[inline]
fn bin_index(v: f64, bins: usize) -> usize {
    ((v * bins as f64) as usize).min(bins - 1)
}

pub fn histogram(values: &[f64], bins: usize) -> Result<Histogram, SectorError> {
    if bins == 0 {
        return Err(SectorError::ZeroBins);
    }
    if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !(0.0..1.0).contains(*v)) {
        return Err(SectorError::OutOfUnitInterval { index, value });
    }
    let counts = values
        .par_chunks(4096)
        .map(|chunk| {
            let mut c = vec![0u64; bins];
            for &v in chunk {
                c[bin_index(v, bins)] += 1;
            }
            c
        })
        .reduce(|| vec![0u64; bins], add_counts);
    Ok(Histogram { counts, total: values.len() as u64 })
}

fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Shannon entropy of the binned distribution, in nats.
pub fn histogram_entropy(h: &Histogram) -> Result<f64, SectorError> {
    if h.total == 0 {
        return Err(SectorError::EmptyHistogram);
    }
    let total = h.total as f64;
    Ok(-h
        .counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let f = c as f64 / total;
            f * f.ln()
        })
        .sum::<f64>())
}

/// Integer 2×2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntMatrix2(pub [[i64; 2]; 2]);

impl IntMatrix2 {
    pub const IDENTITY: Self = Self([[1, 0], [0, 1]]);
    /// `[[1, 1], [1, -1]]`, the sum/difference transform.
    pub const SUM_DIFF: Self = Self([[1, 1], [1, -1]]);

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn scaled(&self, k: i64) -> Self {
        let [[a, b], [c, d]] = self.0;
        Self([[k * a, k * b], [k * c, k * d]])
    }

    /// Solves `M·α = rhs` via the integer adjugate, dividing by the determinant last.
    pub fn solve(&self, rhs: [f64; 2]) -> Result<[f64; 2], SectorError> {
        let det = self.det();
        if det == 0 {
            return Err(SectorError::SingularMatrix);
        }
        let [[a, b], [c, d]] = self.0;
        let det = det as f64;
        Ok([(d as f64 * rhs[0] - b as f64 * rhs[1]) / det, (a as f64 * rhs[1] - c as f64 * rhs[0]) / det])
    }

    pub fn apply(&self, x: [f64; 2]) -> [f64; 2] {
        let [[a, b], [c, d]] = self.0;
        [a as f64 * x[0] + b as f64 * x[1], c as f64 * x[0] + d as f64 * x[1]]
    }
}

/// Square 2D count grid, `counts[x * bins + y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid2 {
    pub bins: usize,
    pub counts: Vec<u64>,
}

impl Grid2 {
    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.counts[x * self.bins + y]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Joint distribution of `(frac(α₁t_n), frac(α₂t_n))` with `M·α = (ln p₁, ln p₂)/2π`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiDistribution {
    pub primes: (u64, u64),
    pub transform: IntMatrix2,
    pub alpha: [f64; 2],
    pub points: Vec<(f64, f64)>,
    pub grid: Grid2,
}

pub fn bi_distribution(
    zeros: &ZeroTable,
    p1: u64,
    p2: u64,
    transform: IntMatrix2,
    bins: usize,
) -> Result<BiDistribution, SectorError> {
    for p in [p1, p2] {
        if !is_prime(p) {
            return Err(SectorError::NotPrime(p));
        }
    }
    if bins == 0 {
        return Err(SectorError::ZeroBins);
    }
    let rhs = [(p1 as f64).ln() / TAU, (p2 as f64).ln() / TAU];
    let alpha = transform.solve(rhs)?;
    let points: Vec<(f64, f64)> =
        zeros.ordinates().par_iter().map(|&t| (frac(alpha[0] * t), frac(alpha[1] * t))).collect();
    let counts = points
        .par_chunks(4096)
        .map(|chunk| {
            let mut c = vec![0u64; bins * bins];
            for &(x, y) in chunk {
                c[bin_index(x, bins) * bins + bin_index(y, bins)] += 1;
            }
            c
        })
        .reduce(|| vec![0u64; bins * bins], add_counts);
    Ok(BiDistribution { primes: (p1, p2), transform, alpha, points, grid: Grid2 { bins, counts } })
}

/// Circular distance between two points of `R/Z`.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = frac(a - b);
    d.min(1.0 - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{LN_2, PI};

    fn fixture() -> ZeroTable {
        ZeroTable::fixture()
    }

    #[test]
    fn first_value_p2() {
        let s = sector_sample(&fixture(), 2, 1).unwrap();
        // cos/sin/frac of 14.134725142·ln 2, evaluated directly
        assert!((s.values[0].re - -0.931_359_631_971).abs() < 1e-11);
        assert!((s.values[0].im - -0.364_100_584_914).abs() < 1e-11);
        assert!((s.reduced[0] - 0.559_311_782_349).abs() < 1e-11);
        assert_eq!(s.len(), 1000);
    }

    #[test]
    fn full_period_reduces_to_zero() {
        let t = TAU / LN_2;
        assert!(circle_distance(reduce(t, LN_2, 1), 0.0) < 1e-15);
        let (s, c) = (t * LN_2).sin_cos();
        assert!((c - 1.0).abs() < 1e-15 && s.abs() < 1e-15);
    }

    #[test]
    fn compression_three_for_five() {
        let z = fixture();
        let s = sector_sample(&z, 5, 3).unwrap();
        for (r, &t) in s.reduced.iter().zip(z.ordinates()) {
            let direct = (t * 5f64.ln() / (6.0 * PI)).rem_euclid(1.0);
            assert!(circle_distance(*r, direct) < 1e-12);
        }
    }

    #[test]
    fn sample_invariants() {
        let s = sector_sample(&fixture(), 7, 1).unwrap();
        for (v, r) in s.values.iter().zip(&s.reduced) {
            assert!((v.norm() - 1.0).abs() < 1e-12);
            assert!((0.0..1.0).contains(r));
            let e = Complex64::from_polar(1.0, TAU * r);
            assert!((v - e).norm() < 1e-9);
        }
    }

    #[test]
    fn composite_rejected() {
        assert_eq!(sector_sample(&fixture(), 4, 1), Err(SectorError::NotPrime(4)));
        assert_eq!(sector_sample(&fixture(), 3, 0), Err(SectorError::ZeroCompression));
    }

    #[test]
    fn from_values_checks_modulus() {
        assert!(matches!(
            SectorSample::from_values(2, vec![Complex64::new(2.0, 0.0)]),
            Err(SectorError::NotUnitModulus { index: 0, .. })
        ));
        let s = SectorSample::from_values(2, vec![Complex64::new(0.0, -1.0)]).unwrap();
        assert!((s.turns()[0] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn histogram_examples() {
        assert_eq!(histogram(&[0.1, 0.6], 2).unwrap().counts, vec![1, 1]);
        let h = histogram(&[], 4).unwrap();
        assert_eq!(h.counts, vec![0, 0, 0, 0]);
        assert_eq!(h.total, 0);
        assert_eq!(histogram(&[0.5], 0), Err(SectorError::ZeroBins));
        assert_eq!(histogram(&[0.2, 1.0], 3), Err(SectorError::OutOfUnitInterval { index: 1, value: 1.0 }));
        assert!(histogram(&[-0.1], 3).is_err());
        assert!(histogram(&[f64::NAN], 3).is_err());
    }

    #[test]
    fn histogram_bin_boundaries() {
        let h = histogram(&[0.0, 0.25, 0.5, 0.75, 0.999_999_999_999_999_9], 4).unwrap();
        assert_eq!(h.counts, vec![1, 1, 1, 2]);
        assert_eq!(h.edges(1), (0.25, 0.5));
    }

    #[test]
    fn histogram_of_fixture_conserves() {
        let s = sector_sample(&fixture(), 2, 1).unwrap();
        let h = histogram(&s.reduced, 100).unwrap();
        assert_eq!(h.total, 1000);
        assert_eq!(h.counts.iter().sum::<u64>(), 1000);
    }

    #[test]
    fn entropy_examples() {
        let h = |counts: Vec<u64>| Histogram { total: counts.iter().sum(), counts };
        assert!((histogram_entropy(&h(vec![5, 5])).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(histogram_entropy(&h(vec![10, 0, 0, 0])).unwrap(), 0.0);
        assert!((histogram_entropy(&h(vec![1, 1, 1, 1])).unwrap() - 4f64.ln()).abs() < 1e-15);
        assert_eq!(histogram_entropy(&h(vec![0, 0])), Err(SectorError::EmptyHistogram));
    }

    #[test]
    fn bi_distribution_sum_diff() {
        let z = fixture();
        let b = bi_distribution(&z, 2, 3, IntMatrix2::SUM_DIFF, 50).unwrap();
        // (ln 6 / 4π, ln(2/3) / 4π) and their fractional multiples at t₁
        assert!((b.alpha[0] - 0.142_583_688_179_678).abs() < 1e-12);
        assert!((b.alpha[1] - -0.032_265_888_103_352).abs() < 1e-12);
        assert!((b.points[0].0 - 0.015_381_242_152).abs() < 1e-10);
        assert!((b.points[0].1 - 0.543_930_540_197).abs() < 1e-10);
        let back = b.transform.apply(b.alpha);
        assert!((back[0] - 2f64.ln() / TAU).abs() < 1e-12);
        assert!((back[1] - 3f64.ln() / TAU).abs() < 1e-12);
        assert_eq!(b.grid.total(), 1000);
        assert_eq!(b.grid.counts.len(), 2500);
    }

    #[test]
    fn bi_distribution_identity_diagonal() {
        let b = bi_distribution(&fixture(), 2, 2, IntMatrix2::IDENTITY, 10).unwrap();
        assert_eq!(b.alpha[0], b.alpha[1]);
        assert!(b.points.iter().all(|(x, y)| x == y));
        for x in 0..10 {
            for y in 0..10 {
                if x != y {
                    assert_eq!(b.grid.get(x, y), 0);
                }
            }
        }
    }

    #[test]
    fn bi_distribution_errors() {
        let z = fixture();
        assert_eq!(
            bi_distribution(&z, 2, 3, IntMatrix2([[1, 2], [2, 4]]), 5).unwrap_err(),
            SectorError::SingularMatrix
        );
        assert_eq!(bi_distribution(&z, 2, 9, IntMatrix2::IDENTITY, 5).unwrap_err(), SectorError::NotPrime(9));
    }

    #[test]
    fn doubled_matrix_halves_alpha() {
        let z = fixture();
        let m = IntMatrix2([[2, 1], [1, -3]]);
        let a = bi_distribution(&z, 5, 11, m, 8).unwrap();
        let b = bi_distribution(&z, 5, 11, m.scaled(2), 8).unwrap();
        for k in 0..2 {
            assert!((b.alpha[k] - a.alpha[k] / 2.0).abs() < 1e-15);
        }
        for (&t, &(x, y)) in z.ordinates().iter().zip(&b.points) {
            assert!(circle_distance(x, a.alpha[0] / 2.0 * t) < 1e-12);
            assert!(circle_distance(y, a.alpha[1] / 2.0 * t) < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn compression_identity(t in 14.5f64..75_000.0, pi in 0usize..50, q in 1u32..8) {
            let p = crate::primes::first_primes(50)[pi];
            let ln_p = (p as f64).ln();
            let r1 = reduce(t, ln_p, 1);
            let rq = reduce(t, ln_p, q);
            prop_assert!(circle_distance(r1, q as f64 * rq) < 1e-9);
        }

        #[test]
        fn histogram_conserves(vals in prop::collection::vec(0.0f64..1.0, 0..300), bins in 1usize..40) {
            let h = histogram(&vals, bins).unwrap();
            prop_assert_eq!(h.total, vals.len() as u64);
            prop_assert_eq!(h.counts.iter().sum::<u64>(), vals.len() as u64);
            for (k, &c) in h.counts.iter().enumerate() {
                let (lo, hi) = h.edges(k);
                let direct = vals.iter().filter(|&&v| lo <= v && v < hi).count() as u64;
                // boundary rounding can move a value by one bin only when it sits on an edge
                prop_assert!(c.abs_diff(direct) <= vals.iter().filter(|&&v| (v * bins as f64).fract() == 0.0).count() as u64);
            }
        }

        #[test]
        fn entropy_in_range(counts in prop::collection::vec(0u64..50, 1..30)) {
            let total: u64 = counts.iter().sum();
            prop_assume!(total > 0);
            let n = counts.len();
            let e = histogram_entropy(&Histogram { counts, total }).unwrap();
            prop_assert!(e >= 0.0 && e <= (n as f64).ln() + 1e-12);
        }
    }
}
