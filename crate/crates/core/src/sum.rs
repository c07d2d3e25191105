//! Fixed-order pairwise (cascade) summation.
//!
//! The reduction tree depends only on the input length, never on how the
//! work is scheduled, so every caller gets bit-identical results regardless
//! of the worker count. Error grows as O(log n) instead of O(n) for naive
//! accumulation.

use std::ops::Add;

use num_complex::Complex64;

/// Leaves of the reduction tree are summed left to right.
const BLOCK: usize = 32;

pub trait Summand: Copy + Add<Output = Self> {
    const ZERO: Self;
}

impl Summand for f64 {
    const ZERO: Self = 0.0;
}

impl Summand for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
}

/// Pairwise sum of a slice.
pub fn pairwise_sum<T: Summand>(xs: &[T]) -> T {
    if xs.len() <= BLOCK {
        return xs.iter().fold(T::ZERO, |acc, &x| acc + x);
    }
    let mid = split_point(xs.len());
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Pairwise sum of `f(0), f(1), .., f(n-1)` without materializing the terms.
///
/// Produces exactly the same bits as `pairwise_sum` over the collected terms.
pub fn pairwise_sum_by<T, F>(n: usize, f: F) -> T
where
    T: Summand,
    F: Fn(usize) -> T,
{
    fn go<T: Summand, F: Fn(usize) -> T>(lo: usize, hi: usize, f: &F) -> T {
        let len = hi - lo;
        if len <= BLOCK {
            return (lo..hi).fold(T::ZERO, |acc, i| acc + f(i));
        }
        let mid = lo + split_point(len);
        go(lo, mid, f) + go(mid, hi, f)
    }
    go(0, n, &f)
}

// Left half is the largest multiple of BLOCK not exceeding len/2 (at least one
// block), which keeps the leaves block-aligned.
fn split_point(len: usize) -> usize {
    let half = len / 2;
    (half / BLOCK).max(1) * BLOCK
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_and_small() {
        assert_eq!(pairwise_sum::<f64>(&[]), 0.0);
        assert_eq!(pairwise_sum(&[1.0, 2.0, 3.0]), 6.0);
    }

    #[test]
    fn beats_naive_accumulation() {
        let xs = vec![0.1_f64; 1_000_000];
        let naive: f64 = xs.iter().sum();
        let pairwise = pairwise_sum(&xs);
        assert!((pairwise - 100_000.0).abs() < (naive - 100_000.0).abs());
        assert!((pairwise - 100_000.0).abs() < 1e-8);
    }

    #[test]
    fn complex_sum() {
        let xs: Vec<Complex64> = (0..100).map(|k| Complex64::new(k as f64, -(k as f64))).collect();
        assert_eq!(pairwise_sum(&xs), Complex64::new(4950.0, -4950.0));
    }

    proptest! {
        #[test]
        fn closure_form_is_bit_identical(xs in prop::collection::vec(-1e6f64..1e6, 0..500)) {
            let a = pairwise_sum(&xs);
            let b = pairwise_sum_by(xs.len(), |i| xs[i]);
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }

        #[test]
        fn close_to_exact_integer_sum(xs in prop::collection::vec(-1000i64..1000, 0..2000)) {
            let exact: i64 = xs.iter().sum();
            let fl: Vec<f64> = xs.iter().map(|&x| x as f64).collect();
            prop_assert_eq!(pairwise_sum(&fl), exact as f64);
        }
    }
}
