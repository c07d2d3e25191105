//! Truncated explicit-formula sums: zeros detect prime powers, prime powers
//! detect zeros.
//!
//! Both detectors carry a leading minus sign so that their targets show up
//! as maxima.

use rayon::prelude::*;
use thiserror::Error;

use crate::primes::primes_up_to;
use crate::sum::pairwise_sum_by;
use crate::zeros::ZeroTable;

#[derive(Debug, Error, PartialEq)]
pub enum DualityError {
    #[error("grid is empty or ill-formed: start {start}, end {end}, step {step}")]
    BadGrid { start: f64, end: f64, step: f64 },
    #[error("abscissa range must lie above 1 (got {0})")]
    AbscissaNotAboveOne(f64),
    #[error("ordinate range must be non-negative (got {0})")]
    NegativeOrdinate(f64),
    #[error("requested {requested} zeros, table has {available}")]
    NotEnoughZeros { requested: usize, available: usize },
    #[error("series has {0} points, need at least 3")]
    TooShort(usize),
    #[error("prominence must be non-negative")]
    NegativeProminence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `x ↦ −Σ_{n≤C} cos(t_n·ln x)`, peaks at prime powers.
    ZerosToPrimes,
    /// `t ↦ −Σ_{n≤X} Λ(n)·n^{-1/2}·cos(t·ln n)`, peaks at zero ordinates.
    PrimesToZeros,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Self::ZerosToPrimes => "zeros_to_primes",
            Self::PrimesToZeros => "primes_to_zeros",
        }
    }
}

/// Uniform grid `start + k·step`, `k < len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl Grid {
    /// Covers `[start, end]`; the endpoint is included when it lies on the grid
    /// up to rounding. `start == end` gives a single point.
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self, DualityError> {
        let bad = DualityError::BadGrid { start, end, step };
        if !(step > 0.0) || !start.is_finite() || !end.is_finite() || end < start {
            return Err(bad);
        }
        let len = ((end - start) / step + 1e-9).floor() as usize + 1;
        Ok(Self { start, step, len })
    }

    pub fn point(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len).map(|k| self.point(k)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualitySeries {
    pub grid: Vec<f64>,
    pub step: f64,
    pub values: Vec<f64>,
    /// Zeros used, or the prime-power bound X.
    pub truncation: u64,
    pub direction: Direction,
}

/// `−Σ_{n≤count} cos(t_n·ln x)` on `[x_min, x_max]`.
pub fn zeros_to_primes_series(
    zeros: &ZeroTable,
    count: usize,
    x_min: f64,
    x_max: f64,
    step: f64,
) -> Result<DualitySeries, DualityError> {
    if count > zeros.len() {
        return Err(DualityError::NotEnoughZeros { requested: count, available: zeros.len() });
    }
    if !(x_min > 1.0) {
        return Err(DualityError::AbscissaNotAboveOne(x_min));
    }
    let grid = Grid::new(x_min, x_max, step)?;
    let ts = &zeros.ordinates()[..count];
    let xs = grid.points();
    let values = xs
        .par_iter()
        .map(|&x| {
            let ln_x = x.ln();
            -pairwise_sum_by(ts.len(), |n| (ts[n] * ln_x).cos())
        })
        .collect();
    Ok(DualitySeries {
        grid: xs,
        step,
        values,
        truncation: count as u64,
        direction: Direction::ZerosToPrimes,
    })
}

/// `(ln n, Λ(n)/√n)` for every prime power `n ≤ bound`, ordered by `n`.
pub fn prime_power_weights(bound: u64) -> Vec<(f64, f64)> {
    let mut powers: Vec<(u64, f64)> = Vec::new();
    for p in primes_up_to(bound) {
        let ln_p = (p as f64).ln();
        let mut n = p;
        loop {
            powers.push((n, ln_p));
            match n.checked_mul(p) {
                Some(m) if m <= bound => n = m,
                _ => break,
            }
        }
    }
    powers.sort_unstable_by_key(|&(n, _)| n);
    powers.into_iter().map(|(n, lambda)| ((n as f64).ln(), lambda / (n as f64).sqrt())).collect()
}

/// `−Σ_{n≤bound} Λ(n)·n^{-1/2}·cos(t·ln n)` on `[t_min, t_max]`.
pub fn primes_to_zeros_series(bound: u64, t_min: f64, t_max: f64, step: f64) -> Result<DualitySeries, DualityError> {
    if t_min < 0.0 {
        return Err(DualityError::NegativeOrdinate(t_min));
    }
    let grid = Grid::new(t_min, t_max, step)?;
    let weights = prime_power_weights(bound);
    let ts = grid.points();
    let values = ts
        .par_iter()
        .map(|&t| {
            -pairwise_sum_by(weights.len(), |k| {
                let (ln_n, w) = weights[k];
                w * (t * ln_n).cos()
            })
        })
        .collect();
    Ok(DualitySeries { grid: ts, step, values, truncation: bound, direction: Direction::PrimesToZeros })
}

/// Strict local maxima that exceed both neighbours by at least `min_prominence`,
/// as `(abscissa, value)` in grid order.
pub fn find_peaks(series: &DualitySeries, min_prominence: f64) -> Result<Vec<(f64, f64)>, DualityError> {
    let v = &series.values;
    if v.len() < 3 {
        return Err(DualityError::TooShort(v.len()));
    }
    if !(min_prominence >= 0.0) {
        return Err(DualityError::NegativeProminence);
    }
    Ok((1..v.len() - 1)
        .filter(|&i| {
            let (l, c, r) = (v[i - 1], v[i], v[i + 1]);
            c > l && c > r && c - l >= min_prominence && c - r >= min_prominence
        })
        .map(|i| (series.grid[i], v[i]))
        .collect())
}
