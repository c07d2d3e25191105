//! Correlations `c(X_p, X_q)` between p-sectors and poset-annotated resonances.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::primes::{factorize, format_factorization, is_prime, poset_predecessors};
use crate::sector::{sector_sample, SectorError, SectorSample};
use crate::sum::pairwise_sum_by;
use crate::zeros::ZeroTable;

// Σ|a − ā|² at or below this, per sample, counts as a constant sample.
const DEGENERATE_VARIANCE: f64 = 1e-24;
// A baseline spread below this (relative) is rounding noise of a constant row.
const FLAT_BASELINE: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum CorrelationError {
    #[error("samples have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("samples are empty")]
    EmptySample,
    #[error("sample for p = {0} has zero variance")]
    DegenerateSample(u64),
    #[error("only {0} baseline entries, need at least 3")]
    InsufficientData(usize),
    #[error("need {needed} zeros, table has {available}")]
    InsufficientZeros { needed: usize, available: usize },
    #[error("prime {0} listed twice")]
    DuplicatePrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("empty prime list")]
    NoPrimes,
    #[error("invalid config: {0}")]
    InvalidConfig(&'static str),
    #[error(transparent)]
    Sector(#[from] SectorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorrelationMode {
    /// `|⟨X_p, X_q⟩|`, modulus of the normalized Hermitian inner product.
    Raw,
    /// Modulus of the complex Pearson coefficient.
    Centered,
}

impl CorrelationMode {
    pub fn name(self) -> &'static str {
        match self {
            Self::Raw => "raw",
            Self::Centered => "centered",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationConfig {
    pub mode: CorrelationMode,
    /// Number of leading zeros used (N).
    pub zero_count: usize,
    /// Primes `q ≤ small_prime_floor` are left out of the resonance baseline.
    pub small_prime_floor: u64,
    /// Outlier threshold in standard deviations.
    pub resonance_z: f64,
}

impl Default for CorrelationConfig {
    fn default() -> Self {
        Self { mode: CorrelationMode::Raw, zero_count: 1000, small_prime_floor: 50, resonance_z: 3.0 }
    }
}

impl CorrelationConfig {
    pub fn validate(&self) -> Result<(), CorrelationError> {
        if self.zero_count < 2 {
            return Err(CorrelationError::InvalidConfig("zero_count must be at least 2"));
        }
        if !(self.resonance_z > 0.0) {
            return Err(CorrelationError::InvalidConfig("resonance_z must be positive"));
        }
        Ok(())
    }

    fn zeros<'a>(&self, zeros: &'a ZeroTable) -> Result<std::borrow::Cow<'a, ZeroTable>, CorrelationError> {
        if zeros.len() < self.zero_count {
            return Err(CorrelationError::InsufficientZeros { needed: self.zero_count, available: zeros.len() });
        }
        if zeros.len() == self.zero_count {
            return Ok(std::borrow::Cow::Borrowed(zeros));
        }
        Ok(std::borrow::Cow::Owned(zeros.truncated(self.zero_count).expect("non-empty prefix")))
    }
}

fn check_pair(a: &SectorSample, b: &SectorSample) -> Result<usize, CorrelationError> {
    if a.len() != b.len() {
        return Err(CorrelationError::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(CorrelationError::EmptySample);
    }
    Ok(a.len())
}

/// `(1/N) Σ a_n·conj(b_n)`.
///
/// Each term is evaluated from the phase difference, so `a = b` gives exactly `1 + 0i`.
pub fn inner_product(a: &SectorSample, b: &SectorSample) -> Result<Complex64, CorrelationError> {
    let n = check_pair(a, b)?;
    let (ta, tb) = (a.turns(), b.turns());
    let sum = pairwise_sum_by(n, |i| {
        let (s, c) = (TAU * (ta[i] - tb[i])).sin_cos();
        Complex64::new(c, s)
    });
    Ok(sum / n as f64)
}

/// `(1/N) Σ (p/q)^{i t_n}`, the same quantity evaluated from the ratio alone.
pub fn inner_product_by_ratio(zeros: &ZeroTable, p: u64, q: u64) -> Complex64 {
    let ln_ratio = (p as f64).ln() - (q as f64).ln();
    let ts = zeros.ordinates();
    let sum = pairwise_sum_by(ts.len(), |i| {
        let (s, c) = (ts[i] * ln_ratio).sin_cos();
        Complex64::new(c, s)
    });
    sum / ts.len() as f64
}

pub fn correlation(a: &SectorSample, b: &SectorSample, mode: CorrelationMode) -> Result<f64, CorrelationError> {
    match mode {
        CorrelationMode::Raw => Ok(inner_product(a, b)?.norm()),
        CorrelationMode::Centered => centered_correlation(a, b),
    }
}

fn centered_correlation(a: &SectorSample, b: &SectorSample) -> Result<f64, CorrelationError> {
    let n = check_pair(a, b)?;
    let (va, vb) = (&a.values, &b.values);
    let mean_a = pairwise_sum_by(n, |i| va[i]) / n as f64;
    let mean_b = pairwise_sum_by(n, |i| vb[i]) / n as f64;
    let var_a = pairwise_sum_by(n, |i| (va[i] - mean_a).norm_sqr());
    let var_b = pairwise_sum_by(n, |i| (vb[i] - mean_b).norm_sqr());
    if var_a <= DEGENERATE_VARIANCE * n as f64 {
        return Err(CorrelationError::DegenerateSample(a.prime));
    }
    if var_b <= DEGENERATE_VARIANCE * n as f64 {
        return Err(CorrelationError::DegenerateSample(b.prime));
    }
    let cov = pairwise_sum_by(n, |i| (va[i] - mean_a) * (vb[i] - mean_b).conj());
    Ok(cov.norm() / (var_a * var_b).sqrt())
}

fn samples_for(zeros: &ZeroTable, primes: &[u64]) -> Result<Vec<SectorSample>, CorrelationError> {
    primes.par_iter().map(|&p| sector_sample(zeros, p, 1).map_err(CorrelationError::from)).collect()
}

/// Correlation of `X_p` with each `X_q`. The `q = p` entry is reported as 0.
pub fn correlation_row(
    zeros: &ZeroTable,
    p: u64,
    qs: &[u64],
    config: &CorrelationConfig,
) -> Result<Vec<(u64, f64)>, CorrelationError> {
    config.validate()?;
    if qs.is_empty() {
        return Err(CorrelationError::NoPrimes);
    }
    if !is_prime(p) {
        return Err(CorrelationError::NotPrime(p));
    }
    let zeros = config.zeros(zeros)?;
    let base = sector_sample(&zeros, p, 1)?;
    let others = samples_for(&zeros, qs)?;
    others
        .par_iter()
        .map(|s| {
            let c = if s.prime == p { 0.0 } else { correlation(&base, s, config.mode)? };
            Ok((s.prime, c))
        })
        .collect()
}

/// Symmetric matrix of pairwise sector correlations.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub primes: Vec<u64>,
    /// Row-major, `primes.len()²` entries.
    pub entries: Vec<f64>,
    pub config: CorrelationConfig,
}

impl CorrelationMatrix {
    pub fn size(&self) -> usize {
        self.primes.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.primes.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.primes.len();
        &self.entries[i * n..(i + 1) * n]
    }
}

/// All pairwise correlations over `primes`. Cells are independent, so the
/// result does not depend on the rayon worker count.
pub fn correlation_matrix(
    zeros: &ZeroTable,
    primes: &[u64],
    config: &CorrelationConfig,
) -> Result<CorrelationMatrix, CorrelationError> {
    config.validate()?;
    if primes.is_empty() {
        return Err(CorrelationError::NoPrimes);
    }
    let mut seen = BTreeSet::new();
    for &p in primes {
        if !seen.insert(p) {
            return Err(CorrelationError::DuplicatePrime(p));
        }
    }
    let zeros = config.zeros(zeros)?;
    let samples = samples_for(&zeros, primes)?;
    let n = primes.len();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let values: Vec<f64> = cells
        .par_iter()
        .map(|&(i, j)| correlation(&samples[i], &samples[j], config.mode))
        .collect::<Result<_, _>>()?;
    let mut entries = vec![0.0; n * n];
    for (&(i, j), &c) in cells.iter().zip(&values) {
        entries[i * n + j] = c;
        entries[j * n + i] = c;
    }
    Ok(CorrelationMatrix { primes: primes.to_vec(), entries, config: *config })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceRow {
    pub q: u64,
    pub c: f64,
    pub z: f64,
    /// In the baseline domain and at or above the z threshold.
    pub resonant: bool,
    pub q_divides_p_minus_1: bool,
    pub p_divides_q_minus_1: bool,
    /// Primes dividing both `p − 1` and `q − 1`.
    pub shared_predecessors: BTreeSet<u64>,
    pub q_minus_1: Vec<(u64, u32)>,
}

impl ResonanceRow {
    /// Flag names joined by `;`, empty when none apply.
    pub fn flag_names(&self) -> String {
        let mut flags = Vec::new();
        if self.resonant {
            flags.push("resonant");
        }
        if self.q_divides_p_minus_1 {
            flags.push("q_divides_p_minus_1");
        }
        if self.p_divides_q_minus_1 {
            flags.push("p_divides_q_minus_1");
        }
        flags.join(";")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceReport {
    pub base_prime: u64,
    pub baseline_mean: f64,
    pub baseline_std: f64,
    pub baseline_size: usize,
    /// Descending by `c`, ties by ascending `q`.
    pub rows: Vec<ResonanceRow>,
}

impl ResonanceReport {
    pub fn resonances(&self) -> impl Iterator<Item = &ResonanceRow> {
        self.rows.iter().filter(|r| r.resonant)
    }

    pub fn row_for(&self, q: u64) -> Option<&ResonanceRow> {
        self.rows.iter().find(|r| r.q == q)
    }

    /// 1-based rank of `q` in the descending ordering.
    pub fn rank_of(&self, q: u64) -> Option<usize> {
        self.rows.iter().position(|r| r.q == q).map(|i| i + 1)
    }

    pub fn summary(&self) -> String {
        let p = self.base_prime;
        let mut out = String::new();
        let _ = writeln!(out, "p = {p}, p - 1 = {}", format_factorization(&factorize(p - 1)));
        let _ = writeln!(
            out,
            "baseline: {} entries, mean {:.6}, std {:.6}",
            self.baseline_size, self.baseline_mean, self.baseline_std
        );
        let flagged: Vec<_> = self.resonances().collect();
        if flagged.is_empty() {
            let _ = writeln!(out, "no resonances");
        }
        for r in flagged {
            let _ = writeln!(
                out,
                "resonance q = {}: c = {:.6}, z = {:.3}, q - 1 = {}, shared predecessors {{{}}}",
                r.q,
                r.c,
                r.z,
                format_factorization(&r.q_minus_1),
                join_set(&r.shared_predecessors, ", ")
            );
        }
        out
    }
}

pub fn join_set(set: &BTreeSet<u64>, sep: &str) -> String {
    set.iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}

/// Flags outliers of a correlation row against the baseline of entries with
/// `q > small_prime_floor` and `q ≠ p`.
pub fn detect_resonances(
    row: &[(u64, f64)],
    p: u64,
    config: &CorrelationConfig,
) -> Result<ResonanceReport, CorrelationError> {
    config.validate()?;
    if row.is_empty() {
        return Err(CorrelationError::NoPrimes);
    }
    let p_preds = poset_predecessors(p).map_err(|_| CorrelationError::NotPrime(p))?;
    let in_baseline = |q: u64| q > config.small_prime_floor && q != p;
    let baseline: Vec<f64> = row.iter().filter(|(q, _)| in_baseline(*q)).map(|&(_, c)| c).collect();
    if baseline.len() < 3 {
        return Err(CorrelationError::InsufficientData(baseline.len()));
    }
    let m = baseline.len() as f64;
    let mean = baseline.iter().sum::<f64>() / m;
    let std = (baseline.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (m - 1.0)).sqrt();

    let mut rows = row
        .iter()
        .map(|&(q, c)| {
            let q_preds = poset_predecessors(q).map_err(|_| CorrelationError::NotPrime(q))?;
            let z = if std > FLAT_BASELINE * mean.abs().max(1.0) { (c - mean) / std } else { 0.0 };
            Ok(ResonanceRow {
                q,
                c,
                z,
                resonant: in_baseline(q) && z >= config.resonance_z,
                q_divides_p_minus_1: p_preds.contains(&q),
                p_divides_q_minus_1: q_preds.contains(&p),
                shared_predecessors: p_preds.intersection(&q_preds).copied().collect(),
                q_minus_1: factorize(q - 1),
            })
        })
        .collect::<Result<Vec<_>, CorrelationError>>()?;
    rows.sort_by(|a, b| b.c.total_cmp(&a.c).then(a.q.cmp(&b.q)));
    Ok(ResonanceReport { base_prime: p, baseline_mean: mean, baseline_std: std, baseline_size: baseline.len(), rows })
}
