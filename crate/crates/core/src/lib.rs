//! Statistics of the p-sectors `X_p(t) = p^{it}` of the Riemann spectrum.
//!
//! Zero ordinates are loaded from text tables ([`zeros`]); each prime `p`
//! maps them onto the unit circle ([`sector`]); pairs of sectors are
//! correlated and their outliers annotated with the divisibility poset on
//! primes ([`correlation`], [`primes`]). [`duality`] evaluates the truncated
//! explicit-formula sums that recover prime powers from zeros and zeros from
//! prime powers.

pub mod correlation;
pub mod duality;
pub mod primes;
pub mod sector;
pub mod sum;
pub mod zeros;

pub use correlation::{
    correlation, correlation_matrix, correlation_row, detect_resonances, inner_product, CorrelationConfig,
    CorrelationError, CorrelationMatrix, CorrelationMode, ResonanceReport, ResonanceRow,
};
pub use duality::{
    find_peaks, primes_to_zeros_series, zeros_to_primes_series, Direction, DualityError, DualitySeries, Grid,
};
pub use primes::{
    euclid_generate, factorize, first_primes, is_poset_related, is_prime, poset_predecessors, pratt_tree,
    primes_up_to, EuclidCandidate, PosetError, PrattTree,
};
pub use sector::{
    bi_distribution, histogram, histogram_entropy, sector_sample, BiDistribution, Histogram, IntMatrix2,
    SectorError, SectorSample,
};
pub use zeros::{information_integral, riemann_vonmangoldt_estimate, ZeroTable, ZeroTableError};
