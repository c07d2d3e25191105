//! Primes, deterministic primality, and the divisibility poset `q ≪ p ⟺ q | p−1`.
//!
//! The poset is exposed through its covering relation only. Transitive
//! closures are walked on demand from Pratt trees.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Upper bound of the shared smallest-prime-factor table.
pub const SIEVE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("factor {0} is repeated")]
    RepeatedFactor(u64),
    #[error("2·∏factors + 1 does not fit in 64 bits")]
    Overflow,
}

/// Smallest prime factor for every n ≤ SIEVE_LIMIT.
struct SpfTable {
    spf: Vec<u32>,
}

impl SpfTable {
    fn build(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                let mut j = i.saturating_mul(i);
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Self { spf }
    }
}

fn spf_table() -> &'static SpfTable {
    static TABLE: OnceLock<SpfTable> = OnceLock::new();
    TABLE.get_or_init(|| SpfTable::build(SIEVE_LIMIT as usize))
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(SIEVE_LIMIT))
}

/// All primes `≤ n` in increasing order (sieve of Eratosthenes).
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = usize::try_from(n).expect("sieve bound fits in memory");
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i.saturating_mul(i);
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    if k == 0 {
        return Vec::new();
    }
    // p_k < k(ln k + ln ln k) for k ≥ 6
    let kf = k.max(6) as f64;
    let bound = (kf * (kf.ln() + kf.ln().ln())).ceil() as u64 + 10;
    let mut ps = primes_up_to(bound);
    ps.truncate(k);
    ps
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// The first twelve primes as bases decide every n < 3.3·10^24.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test over the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n <= SIEVE_LIMIT {
        return n >= 2 && spf_table().spf[n as usize] as u64 == n;
    }
    for &b in &MR_BASES {
        if n % b == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Brent's variant of Pollard rho. `n` must be odd and composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut ys = 2u64;
        let mut r = 1u64;
        const M: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..M.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += M;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn push_factors(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if n <= SIEVE_LIMIT {
        let spf = &spf_table().spf;
        let mut m = n as usize;
        while m > 1 {
            let p = spf[m] as usize;
            out.push(p as u64);
            m /= p;
        }
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    push_factors(d, out);
    push_factors(n / d, out);
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
/// `factorize(1)` is empty.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factorize(0) is undefined");
    let mut raw = Vec::new();
    let mut m = n;
    if m > SIEVE_LIMIT {
        // strip sieve primes first; Pollard rho only sees the large cofactor
        for &p in small_primes() {
            if p.saturating_mul(p) > m {
                break;
            }
            while m % p == 0 {
                raw.push(p);
                m /= p;
            }
            if m <= SIEVE_LIMIT {
                break;
            }
        }
    }
    push_factors(m, &mut raw);
    raw.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in raw {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Renders a factorization as `2^2·79`.
pub fn format_factorization(factors: &[(u64, u32)]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join("·")
}

fn require_prime(p: u64) -> Result<(), PosetError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(PosetError::NotPrime(p))
    }
}

/// Covering predecessors of `p`: the primes dividing `p − 1`.
pub fn poset_predecessors(p: u64) -> Result<BTreeSet<u64>, PosetError> {
    require_prime(p)?;
    Ok(factorize(p - 1).into_iter().map(|(q, _)| q).collect())
}

/// `q ≪ p`, i.e. `q | p − 1`.
pub fn is_poset_related(q: u64, p: u64) -> Result<bool, PosetError> {
    require_prime(q)?;
    require_prime(p)?;
    Ok((p - 1) % q == 0)
}

/// Every prime below `p` in the transitive closure of the covering relation.
pub fn poset_ancestors(p: u64) -> Result<BTreeSet<u64>, PosetError> {
    let tree = pratt_tree(p)?;
    let mut out = BTreeSet::new();
    let mut stack: Vec<&PrattTree> = tree.edges.iter().map(|e| &e.child).collect();
    while let Some(node) = stack.pop() {
        if out.insert(node.prime) {
            stack.extend(node.edges.iter().map(|e| &e.child));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrattEdge {
    pub child: PrattTree,
    pub exponent: u32,
}

/// Recursive factorization of `p − 1`, down to the leaf 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrattTree {
    pub prime: u64,
    pub edges: Vec<PrattEdge>,
}

pub fn pratt_tree(p: u64) -> Result<PrattTree, PosetError> {
    require_prime(p)?;
    Ok(build_pratt(p))
}

fn build_pratt(p: u64) -> PrattTree {
    let edges = if p == 2 {
        Vec::new()
    } else {
        factorize(p - 1)
            .into_iter()
            .map(|(q, e)| PrattEdge { child: build_pratt(q), exponent: e })
            .collect()
    };
    PrattTree { prime: p, edges }
}

impl PrattTree {
    /// `∏ child^exponent` over the root edges; equals `prime − 1` for a valid tree.
    pub fn edge_product(&self) -> u128 {
        self.edges.iter().map(|e| (e.child.prime as u128).pow(e.exponent)).product()
    }

    /// Checks the product and ordering invariants at every node.
    pub fn is_valid(&self) -> bool {
        if self.prime == 2 {
            return self.edges.is_empty();
        }
        self.edge_product() == (self.prime - 1) as u128
            && self.edges.iter().all(|e| e.child.prime < self.prime && is_prime(e.child.prime) && e.child.is_valid())
    }

    pub fn child_primes(&self) -> BTreeSet<u64> {
        self.edges.iter().map(|e| e.child.prime).collect()
    }

    /// Factorization of `prime − 1` read off the root edges.
    pub fn factorization(&self) -> Vec<(u64, u32)> {
        self.edges.iter().map(|e| (e.child.prime, e.exponent)).collect()
    }

    /// `parent,child,exponent` rows, depth first. Shared subtrees repeat.
    pub fn csv_edges(&self) -> String {
        let mut out = String::from("parent,child,exponent\n");
        self.walk_edges(&mut |parent, edge| {
            out.push_str(&format!("{},{},{}\n", parent, edge.child.prime, edge.exponent));
        });
        out
    }

    fn walk_edges(&self, f: &mut impl FnMut(u64, &PrattEdge)) {
        for edge in &self.edges {
            f(self.prime, edge);
            edge.child.walk_edges(f);
        }
    }
}

impl fmt::Display for PrattTree {
    /// Indented text, one node per line; children are shown as `prime^exponent`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(node: &PrattTree, exponent: Option<u32>, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let indent = "  ".repeat(depth);
            match exponent {
                Some(e) if e > 1 => write!(f, "{indent}{}^{e}", node.prime)?,
                _ => write!(f, "{indent}{}", node.prime)?,
            }
            if !node.edges.is_empty() {
                write!(f, "  [{} - 1 = {}]", node.prime, format_factorization(&node.factorization()))?;
            }
            writeln!(f)?;
            for e in &node.edges {
                go(&e.child, Some(e.exponent), depth + 1, f)?;
            }
            Ok(())
        }
        go(self, None, 0, f)
    }
}

/// `2·q₁⋯q_r + 1` together with its primality verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidCandidate {
    pub factors: Vec<u64>,
    pub candidate: u64,
    pub is_prime: bool,
}

/// Euclid's trick: builds a candidate sitting above every given odd prime in the poset.
pub fn euclid_generate(factors: &[u64]) -> Result<EuclidCandidate, PosetError> {
    let mut sorted = factors.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(PosetError::RepeatedFactor(w[0]));
        }
    }
    let mut product: u64 = 2;
    for &q in &sorted {
        if q == 2 || !is_prime(q) {
            return Err(PosetError::NotOddPrime(q));
        }
        product = product.checked_mul(q).ok_or(PosetError::Overflow)?;
    }
    let candidate = product.checked_add(1).ok_or(PosetError::Overflow)?;
    Ok(EuclidCandidate { factors: sorted, candidate, is_prime: is_prime(candidate) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn primes_up_to_small() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert!(primes_up_to(1).is_empty());
        assert!(primes_up_to(0).is_empty());
        let ps = primes_up_to(541);
        assert_eq!(ps.len(), 100);
        assert_eq!(*ps.last().unwrap(), 541);
    }

    #[test]
    fn first_primes_matches_sieve() {
        for k in 0..300 {
            let ps = first_primes(k);
            assert_eq!(ps.len(), k);
            if k > 0 {
                assert_eq!(ps, primes_up_to(ps[k - 1]));
            }
        }
        assert_eq!(first_primes(100)[99], 541);
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(211));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(15));
        assert!(is_prime(2));
    }

    #[test]
    fn is_prime_agrees_with_trial_division_beyond_sieve() {
        for n in SIEVE_LIMIT - 2000..SIEVE_LIMIT + 20_000 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn is_prime_large() {
        assert!(is_prime(18_446_744_073_709_551_557)); // largest prime below 2^64
        assert!(!is_prime(u64::MAX));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(3_825_123_056_546_413_051)); // strong pseudoprime to bases up to 23
        assert!(!is_prime(4_294_967_291u64 * 4_294_967_279)); // product of two large primes
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).is_empty());
        assert_eq!(factorize(18), vec![(2, 1), (3, 2)]);
        assert_eq!(factorize(378), vec![(2, 1), (3, 3), (7, 1)]);
        let big = 4_294_967_291u64 * 4_294_967_279;
        assert_eq!(factorize(big), vec![(4_294_967_279, 1), (4_294_967_291, 1)]);
        let n = 2u64.pow(10) * 999_983 * 1_000_003;
        assert_eq!(factorize(n), vec![(2, 10), (999_983, 1), (1_000_003, 1)]);
    }

    #[test]
    fn factorization_text() {
        assert_eq!(format_factorization(&factorize(316)), "2^2·79");
        assert_eq!(format_factorization(&factorize(378)), "2·3^3·7");
        assert_eq!(format_factorization(&factorize(462)), "2·3·7·11");
        assert_eq!(format_factorization(&[]), "1");
    }

    #[test]
    fn predecessors() {
        assert_eq!(poset_predecessors(19).unwrap(), BTreeSet::from([2, 3]));
        assert!(poset_predecessors(2).unwrap().is_empty());
        assert_eq!(poset_predecessors(29).unwrap(), BTreeSet::from([2, 7]));
        assert_eq!(poset_predecessors(21), Err(PosetError::NotPrime(21)));
    }

    #[test]
    fn relation() {
        assert!(is_poset_related(3, 19).unwrap());
        assert!(!is_poset_related(5, 19).unwrap());
        assert!(is_poset_related(179, 359).unwrap());
        assert!(!is_poset_related(179, 389).unwrap());
        assert!(is_poset_related(97, 389).unwrap());
        assert_eq!(is_poset_related(4, 19), Err(PosetError::NotPrime(4)));
        assert_eq!(is_poset_related(3, 20), Err(PosetError::NotPrime(20)));
    }

    #[test]
    fn pratt_leaf() {
        let t = pratt_tree(2).unwrap();
        assert_eq!(t.prime, 2);
        assert!(t.edges.is_empty());
        assert!(t.is_valid());
    }

    #[test]
    fn pratt_29() {
        let t = pratt_tree(29).unwrap();
        assert_eq!(t.factorization(), vec![(2, 2), (7, 1)]);
        let seven = &t.edges[1].child;
        assert_eq!(seven.factorization(), vec![(2, 1), (3, 1)]);
        let three = &seven.edges[1].child;
        assert_eq!(three.factorization(), vec![(2, 1)]);
        assert!(t.is_valid());
    }

    #[test]
    fn pratt_317() {
        let t = pratt_tree(317).unwrap();
        assert_eq!(t.factorization(), vec![(2, 2), (79, 1)]);
        assert_eq!(pratt_tree(15), Err(PosetError::NotPrime(15)));
    }

    #[test]
    fn pratt_rendering() {
        let t = pratt_tree(29).unwrap();
        let text = t.to_string();
        assert_eq!(
            text,
            "29  [29 - 1 = 2^2·7]\n  2^2\n  7  [7 - 1 = 2·3]\n    2\n    3  [3 - 1 = 2]\n      2\n"
        );
        assert_eq!(t.csv_edges(), "parent,child,exponent\n29,2,2\n29,7,1\n7,2,1\n7,3,1\n3,2,1\n");
    }

    #[test]
    fn pratt_large_prime() {
        let p = 18_446_744_073_709_551_557u64;
        let t = pratt_tree(p).unwrap();
        assert!(t.is_valid());
    }

    #[test]
    fn ancestors_are_closure() {
        assert_eq!(poset_ancestors(29).unwrap(), BTreeSet::from([2, 3, 7]));
        assert!(poset_ancestors(2).unwrap().is_empty());
    }

    #[test]
    fn euclid_examples() {
        let c = euclid_generate(&[3, 5, 7]).unwrap();
        assert_eq!((c.candidate, c.is_prime), (211, true));
        let c = euclid_generate(&[7]).unwrap();
        assert_eq!((c.candidate, c.is_prime), (15, false));
        let c = euclid_generate(&[5]).unwrap();
        assert_eq!((c.candidate, c.is_prime), (11, true));
        assert_eq!(euclid_generate(&[7, 3, 5]).unwrap().factors, vec![3, 5, 7]);
        assert_eq!(euclid_generate(&[]).unwrap().candidate, 3);
    }

    #[test]
    fn euclid_errors() {
        assert_eq!(euclid_generate(&[3, 3]), Err(PosetError::RepeatedFactor(3)));
        assert_eq!(euclid_generate(&[9]), Err(PosetError::NotOddPrime(9)));
        assert_eq!(euclid_generate(&[2, 3]), Err(PosetError::NotOddPrime(2)));
        let many = first_primes(20)[1..].to_vec();
        assert_eq!(euclid_generate(&many), Err(PosetError::Overflow));
    }
}
