//! Tables of zeta zero ordinates and the zero-counting estimates.

use std::f64::consts::PI;
use std::io::BufRead;
use std::ops::Range;

use thiserror::Error;

/// The bundled table of the first 1000 ordinates.
pub const FIXTURE_1000: &str = include_str!("../data/zeros_1000.txt");

/// Every valid ordinate exceeds this; the first zero sits at 14.1347...
pub const MIN_ORDINATE: f64 = 14.0;

#[derive(Debug, Error)]
pub enum ZeroTableError {
    #[error("line {line}: cannot parse {token:?} as a decimal ordinate")]
    Parse { line: usize, token: String },
    #[error("ordinate {index} ({value}) is not larger than the previous one ({previous})")]
    NotIncreasing { index: usize, value: f64, previous: f64 },
    #[error("ordinate {index} ({value}) is not above {MIN_ORDINATE}")]
    BelowFirstZero { index: usize, value: f64 },
    #[error("no ordinates in input")]
    Empty,
    #[error("read error")]
    Io(#[from] std::io::Error),
}

/// Strictly increasing, non-empty list of zero ordinates `t_n`, all above 14.
///
/// Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    source_label: String,
}

impl ZeroTable {
    /// Validates an ordinate list. Indices in errors are 1-based.
    pub fn new(ordinates: Vec<f64>, source_label: impl Into<String>) -> Result<Self, ZeroTableError> {
        if ordinates.is_empty() {
            return Err(ZeroTableError::Empty);
        }
        for (i, &t) in ordinates.iter().enumerate() {
            if !(t > MIN_ORDINATE) || !t.is_finite() {
                if i > 0 && t <= ordinates[i - 1] {
                    return Err(ZeroTableError::NotIncreasing { index: i + 1, value: t, previous: ordinates[i - 1] });
                }
                return Err(ZeroTableError::BelowFirstZero { index: i + 1, value: t });
            }
            if i > 0 && t <= ordinates[i - 1] {
                return Err(ZeroTableError::NotIncreasing { index: i + 1, value: t, previous: ordinates[i - 1] });
            }
        }
        Ok(Self { ordinates, source_label: source_label.into() })
    }

    pub fn parse_str(text: &str, source_label: impl Into<String>) -> Result<Self, ZeroTableError> {
        Self::parse_reader(text.as_bytes(), source_label)
    }

    /// One decimal per line; blank lines and surrounding whitespace are skipped.
    pub fn parse_reader<R: BufRead>(reader: R, source_label: impl Into<String>) -> Result<Self, ZeroTableError> {
        let mut ordinates = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let token = line.trim();
            if token.is_empty() {
                continue;
            }
            let value: f64 = token
                .parse()
                .map_err(|_| ZeroTableError::Parse { line: lineno + 1, token: token.to_string() })?;
            ordinates.push(value);
        }
        Self::new(ordinates, source_label)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, ZeroTableError> {
        let file = std::fs::File::open(path)?;
        Self::parse_reader(std::io::BufReader::new(file), path.display().to_string())
    }

    /// The bundled 1000-ordinate fixture.
    pub fn fixture() -> Self {
        Self::parse_str(FIXTURE_1000, "bundled fixture (first 1000 zeros)").expect("bundled fixture is valid")
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> f64 {
        self.ordinates[0]
    }

    pub fn last(&self) -> f64 {
        self.ordinates[self.ordinates.len() - 1]
    }

    /// The first `n` ordinates (the whole table if it is shorter).
    pub fn truncated(&self, n: usize) -> Result<Self, ZeroTableError> {
        self.slice(0..n.min(self.len()))
    }

    /// Ordinates `range` (0-based), e.g. zeros `C1+1..=C2` are `slice(C1..C2)`.
    pub fn slice(&self, range: Range<usize>) -> Result<Self, ZeroTableError> {
        let end = range.end.min(self.len());
        let start = range.start.min(end);
        Self::new(self.ordinates[start..end].to_vec(), self.source_label.clone())
    }

    /// Number of ordinates `t_n <= height`.
    pub fn count_below(&self, height: f64) -> usize {
        self.ordinates.partition_point(|&t| t <= height)
    }
}

/// Main term `(T/2π)(log(T/2π) − 1)` of the Riemann–von Mangoldt zero count.
pub fn riemann_vonmangoldt_estimate(height: f64) -> f64 {
    information_integral(height / (2.0 * PI))
}

/// `∫₀^y log x dx = y(log y − 1)`.
pub fn information_integral(y: f64) -> f64 {
    y * (y.ln() - 1.0)
}
