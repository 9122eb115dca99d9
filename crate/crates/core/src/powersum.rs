//! Deciding and enumerating representations `n = x^m + y^m`.
//!
//! Two independent decision routes are kept deliberately separate. The
//! naive route scans the full `x` window and serves as the oracle. The
//! structured route works only for odd `m`, where `x + y` divides
//! `x^m + y^m`, so candidate splits are confined to divisors of `n` and
//! each divisor is resolved by monotone bisection. Their agreement is a
//! tested property, not an assumption.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bigmath::{factor, iroot, iroot_u128, nat, pow_u128_capped, BigmathError, FactorBudget, Natural};
use crate::mersenne::{even_perfect, MersenneError, PerfectNumber};
use crate::par;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PowersumError {
    #[error("no divisor route exists for even exponent {m}")]
    EvenExponent { m: u32 },
    #[error(transparent)]
    Mersenne(#[from] MersenneError),
    #[error(transparent)]
    Math(#[from] BigmathError),
}

/// A normalized representation `n = x^m + y^m` with `x >= y >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Representation {
    m: u32,
    #[serde(with = "crate::decimal")]
    x: Natural,
    #[serde(with = "crate::decimal")]
    y: Natural,
    #[serde(with = "crate::decimal")]
    n: Natural,
}

impl Representation {
    pub(crate) fn new(m: u32, x: Natural, y: Natural) -> Self {
        let (x, y) = if x >= y { (x, y) } else { (y, x) };
        debug_assert!(!y.is_zero());
        let n = x.pow(m) + y.pow(m);
        Representation { m, x, y, n }
    }

    fn from_parts(m: u32, x: Natural, y: Natural, n: Natural) -> Self {
        let rep = Representation { m, x, y, n };
        debug_assert!(rep.verify());
        rep
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn x(&self) -> &Natural {
        &self.x
    }

    pub fn y(&self) -> &Natural {
        &self.y
    }

    pub fn n(&self) -> &Natural {
        &self.n
    }

    /// Re-evaluates the defining equation from scratch.
    pub fn verify(&self) -> bool {
        self.x >= self.y
            && !self.y.is_zero()
            && self.x.pow(self.m) + self.y.pow(self.m) == self.n
    }
}

// Quadratic residue tables for the two-squares fast path. A value that is
// a square must be a square residue modulo 64, 63 and 65; the three
// filters together reject ~98% of non-squares before the exact root.
const fn square_table<const N: usize>() -> [bool; N] {
    let mut t = [false; N];
    let mut i = 0;
    while i < N {
        t[i * i % N] = true;
        i += 1;
    }
    t
}
static SQ64: [bool; 64] = square_table::<64>();
static SQ63: [bool; 63] = square_table::<63>();
static SQ65: [bool; 65] = square_table::<65>();

fn decide_two_squares_u64(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut x = (n - 1).isqrt();
    // r = n - x^2, maintained incrementally as x steps down
    let mut r = n - x * x;
    while r <= x * x {
        if SQ64[(r % 64) as usize] && SQ63[(r % 63) as usize] && SQ65[(r % 65) as usize] {
            let y = r.isqrt();
            if y * y == r {
                out.push((x, y));
            }
        }
        r += 2 * x - 1;
        x -= 1;
    }
    out
}

fn decide_two_squares_u128(n: u128) -> Vec<(u128, u128)> {
    let mut out = Vec::new();
    let mut x = (n - 1).isqrt();
    let mut r = n - x * x;
    while r <= x * x {
        if SQ64[(r % 64) as usize] {
            let y = r.isqrt();
            if y * y == r {
                out.push((x, y));
            }
        }
        r += 2 * x - 1;
        x -= 1;
    }
    out
}

fn decide_pow_u128(n: u128, m: u32) -> Vec<(u128, u128)> {
    let mut out = Vec::new();
    let mut x = iroot_u128(n - 1, m);
    while x >= 1 {
        let xm = pow_u128_capped(x, m, n - 1).expect("x^m <= n-1 by root bound");
        let r = n - xm;
        if r > xm {
            break;
        }
        let y = iroot_u128(r, m);
        if pow_u128_capped(y, m, r) == Some(r) {
            out.push((x, y));
        }
        x -= 1;
    }
    out
}

fn decide_big(n: &Natural, m: u32) -> Vec<(Natural, Natural)> {
    let mut out = Vec::new();
    let mut x = iroot(&(n - 1u32), m);
    while !x.is_zero() {
        let xm = x.pow(m);
        let r = n - &xm;
        if r > xm {
            break;
        }
        let y = iroot(&r, m);
        if !y.is_zero() && y.pow(m) == r {
            out.push((x.clone(), y));
        }
        x -= 1u32;
    }
    out
}

/// Exhaustive decision: every normalized representation of `n` as
/// `x^m + y^m`, sorted by descending `x`.
///
/// Scans `x` downward from `iroot(n-1, m)` and stops once `x^m` drops
/// below `n / 2` (where `y` would overtake `x`). Operands that fit in
/// machine words take specialized loops; the results are identical to the
/// bignum loop by construction and by test.
pub fn decide_naive(n: &Natural, m: u32) -> Vec<Representation> {
    assert!(*n >= nat(2), "decide_naive requires n >= 2");
    assert!(m >= 2, "decide_naive requires m >= 2");
    if let Some(n64) = n.to_u64() {
        let pairs = if m == 2 {
            decide_two_squares_u64(n64)
        } else {
            decide_pow_u128(n64 as u128, m)
                .into_iter()
                .map(|(x, y)| (x as u64, y as u64))
                .collect()
        };
        return pairs
            .into_iter()
            .map(|(x, y)| Representation::from_parts(m, nat(x as u128), nat(y as u128), n.clone()))
            .collect();
    }
    if let Some(n128) = n.to_u128() {
        let pairs = if m == 2 {
            decide_two_squares_u128(n128)
        } else {
            decide_pow_u128(n128, m)
        };
        return pairs
            .into_iter()
            .map(|(x, y)| Representation::from_parts(m, nat(x), nat(y), n.clone()))
            .collect();
    }
    decide_big(n, m)
        .into_iter()
        .map(|(x, y)| Representation::from_parts(m, x, y, n.clone()))
        .collect()
}

/// Solve `x^m + (s - x)^m = n` for integer `x` in `[ceil(s/2), s - 1]`.
///
/// On that interval the left side is strictly increasing in `x` (checked
/// exhaustively in tests for small `s`, `m`), so a single bisection
/// decides existence.
pub(crate) fn bisect_split(n: &Natural, s: &Natural, m: u32) -> Option<(Natural, Natural)> {
    if *s < nat(2) {
        return None;
    }
    let f = |x: &Natural| -> Natural { x.pow(m) + (s - x).pow(m) };
    let mut lo: Natural = (s + 1u32) >> 1;
    let mut hi: Natural = s - 1u32;
    if &f(&hi) < n || &f(&lo) > n {
        return None;
    }
    while lo < hi {
        let mid: Natural = (&lo + &hi) >> 1;
        if &f(&mid) < n {
            lo = mid + 1u32;
        } else {
            hi = mid;
        }
    }
    (f(&lo) == *n).then(|| {
        let y = s - &lo;
        (lo, y)
    })
}

/// Divisor-driven decision for a certified perfect number and odd `m`.
///
/// For odd `m`, `x + y` divides `x^m + y^m`, and the divisors of
/// `2^(p-1)(2^p - 1)` are exactly `2^i` and `2^i (2^p - 1)`; each of the
/// `2p` candidates is resolved by bisection.
pub fn decide_structured(
    pn: &PerfectNumber,
    m: u32,
) -> Result<Vec<Representation>, PowersumError> {
    if m % 2 == 0 {
        return Err(PowersumError::EvenExponent { m });
    }
    assert!(m >= 3, "structured decider requires odd m >= 3");
    let n = pn.n();
    let mut out = Vec::new();
    for s in pn.divisors() {
        if let Some((x, y)) = bisect_split(n, &s, m) {
            out.push(Representation::new(m, x, y));
        }
    }
    out.sort_by(|a, b| b.x.cmp(&a.x));
    Ok(out)
}

/// The same divisor-driven decision for arbitrary `n >= 2` and odd `m`,
/// pulling the divisor list from a complete factorization. Refuses to
/// decide from a partial one.
pub fn decide_divisor(
    n: &Natural,
    m: u32,
    budget: &FactorBudget,
) -> Result<Vec<Representation>, PowersumError> {
    if m % 2 == 0 {
        return Err(PowersumError::EvenExponent { m });
    }
    assert!(*n >= nat(2), "decide_divisor requires n >= 2");
    let f = factor(n, budget);
    if !f.complete {
        return Err(BigmathError::IncompleteFactorization { n: n.clone() }.into());
    }
    let mut out = Vec::new();
    for s in f.divisors() {
        if let Some((x, y)) = bisect_split(n, &s, m) {
            out.push(Representation::new(m, x, y));
        }
    }
    out.sort_by(|a, b| b.x.cmp(&a.x));
    Ok(out)
}

struct Entry {
    n: Natural,
    x: Natural,
    y: Natural,
}

// BinaryHeap is a max-heap; order entries so the smallest n pops first
// and ties pop in descending x.
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.n.cmp(&self.n).then_with(|| self.x.cmp(&other.x))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

/// Ordered stream of every `x^m + y^m <= limit`; see [`enumerate`].
pub struct Enumerate {
    m: u32,
    limit: Natural,
    heap: BinaryHeap<Entry>,
}

/// Emits every `n = x^m + y^m <= limit` (with `x >= y >= 1`) in
/// nondecreasing `n` order, ties in descending `x`, each representation
/// exactly once.
///
/// Rows of constant `y` are merged through a priority queue; a row's
/// successor is inserted lazily when its predecessor pops, and row
/// `y + 1` is opened when the diagonal entry `(y, y)` pops, so the heap
/// holds O(number of active rows) entries.
pub fn enumerate(m: u32, limit: &Natural) -> Enumerate {
    assert!(m >= 2, "enumerate requires m >= 2");
    assert!(*limit >= nat(2), "enumerate requires limit >= 2");
    let mut heap = BinaryHeap::new();
    heap.push(Entry {
        n: nat(2),
        x: Natural::one(),
        y: Natural::one(),
    });
    Enumerate {
        m,
        limit: limit.clone(),
        heap,
    }
}

impl Iterator for Enumerate {
    type Item = Representation;

    fn next(&mut self) -> Option<Representation> {
        let Entry { n, x, y } = self.heap.pop()?;
        let next_x: Natural = &x + 1u32;
        let next_n = next_x.pow(self.m) + y.pow(self.m);
        if next_n <= self.limit {
            self.heap.push(Entry {
                n: next_n,
                x: next_x,
                y: y.clone(),
            });
        }
        if x == y {
            let ny: Natural = &y + 1u32;
            let head = ny.pow(self.m) * 2u32;
            if head <= self.limit {
                self.heap.push(Entry {
                    n: head,
                    x: ny.clone(),
                    y: ny,
                });
            }
        }
        Some(Representation::from_parts(self.m, x, y, n))
    }
}

/// Knobs for [`scan_conjecture`].
#[derive(Debug, Clone)]
pub struct ScanOptions {
    /// Even exponents lack a divisor route, so their exhaustive scans are
    /// capped at this p; larger cells are recorded as skipped.
    pub even_m_max_p: u32,
    pub workers: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            even_m_max_p: 31,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMethod {
    Structured,
    Naive,
    SkippedEvenCap,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanCell {
    pub p: u32,
    pub m: u32,
    pub method: ScanMethod,
    pub representations: Vec<Representation>,
    /// Wall time, text diagnostics only; excluded from serialized reports
    /// so identical inputs serialize identically.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub p: u32,
    pub m: u32,
    pub representation: Representation,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub p_list: Vec<u32>,
    pub m_range: (u32, u32),
    pub cells: Vec<ScanCell>,
    pub findings: Vec<Finding>,
}

/// Scan every `(p, m)` cell with `p` in `p_list`, `2 <= m <= m_max`:
/// structured decision for odd `m`, exhaustive scan for even `m` up to
/// the configured cap. Cells are independent and may run on `workers`
/// threads; the report is assembled in `(p, m)` order regardless.
pub fn scan_conjecture(
    p_list: &[u32],
    m_max: u32,
    opts: &ScanOptions,
) -> Result<ScanReport, PowersumError> {
    assert!(m_max >= 2, "scan_conjecture requires m_max >= 2");
    let perfects = p_list
        .iter()
        .map(|&p| even_perfect(p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cell_inputs = Vec::new();
    for pn in &perfects {
        for m in 2..=m_max {
            cell_inputs.push((pn, m));
        }
    }
    let cells = par::ordered_map(&cell_inputs, opts.workers, |&(pn, m)| {
        let start = Instant::now();
        let (method, representations) = if m % 2 == 1 {
            (
                ScanMethod::Structured,
                decide_structured(pn, m).expect("m is odd"),
            )
        } else if pn.p() <= opts.even_m_max_p {
            (ScanMethod::Naive, decide_naive(pn.n(), m))
        } else {
            (ScanMethod::SkippedEvenCap, Vec::new())
        };
        ScanCell {
            p: pn.p(),
            m,
            method,
            representations,
            elapsed_ms: start.elapsed().as_millis(),
        }
    });
    let findings = cells
        .iter()
        .flat_map(|c| {
            c.representations.iter().map(|r| Finding {
                p: c.p,
                m: c.m,
                representation: r.clone(),
            })
        })
        .collect();
    Ok(ScanReport {
        p_list: p_list.to_vec(),
        m_range: (2, m_max),
        cells,
        findings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mersenne::list_exponents;

    fn rep(m: u32, x: u128, y: u128) -> Representation {
        Representation::new(m, nat(x), nat(y))
    }

    #[test]
    fn naive_examples() {
        assert_eq!(decide_naive(&nat(28), 3), vec![rep(3, 3, 1)]);
        assert_eq!(decide_naive(&nat(2), 7), vec![rep(7, 1, 1)]);
        assert_eq!(decide_naive(&nat(8128), 3), vec![]);
    }

    #[test]
    fn naive_orders_by_descending_x() {
        // 50 = 7^2 + 1^2 = 5^2 + 5^2
        assert_eq!(decide_naive(&nat(50), 2), vec![rep(2, 7, 1), rep(2, 5, 5)]);
        // 1729 = 12^3 + 1^3 = 10^3 + 9^3
        assert_eq!(
            decide_naive(&nat(1729), 3),
            vec![rep(3, 12, 1), rep(3, 10, 9)]
        );
    }

    #[test]
    fn naive_machine_and_bignum_paths_agree() {
        for n in [2u128, 50, 1729, 8128, 65, 1 << 20] {
            for m in 2u32..=5 {
                let big = decide_big(&nat(n), m)
                    .into_iter()
                    .map(|(x, y)| Representation::new(m, x, y))
                    .collect::<Vec<_>>();
                assert_eq!(decide_naive(&nat(n), m), big, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn structured_examples() {
        let p3 = even_perfect(3).unwrap();
        assert_eq!(decide_structured(&p3, 3).unwrap(), vec![rep(3, 3, 1)]);
        let p5 = even_perfect(5).unwrap();
        assert_eq!(decide_structured(&p5, 3).unwrap(), vec![]);
        let p31 = even_perfect(31).unwrap();
        assert_eq!(decide_structured(&p31, 5).unwrap(), vec![]);
        assert!(matches!(
            decide_structured(&p3, 4),
            Err(PowersumError::EvenExponent { m: 4 })
        ));
    }

    #[test]
    fn structured_matches_naive_oracle() {
        for p in list_exponents(31, 1) {
            let pn = even_perfect(p).unwrap();
            for m in [3u32, 5, 7, 9] {
                let structured = decide_structured(&pn, m).unwrap();
                let naive = decide_naive(pn.n(), m);
                assert_eq!(structured, naive, "p={p} m={m}");
            }
        }
    }

    #[test]
    fn divisor_decider_matches_structured_on_perfect_numbers() {
        let budget = FactorBudget::default();
        for p in [2u32, 3, 5, 7, 13] {
            let pn = even_perfect(p).unwrap();
            for m in [3u32, 5] {
                assert_eq!(
                    decide_divisor(pn.n(), m, &budget).unwrap(),
                    decide_structured(&pn, m).unwrap(),
                    "p={p} m={m}"
                );
            }
        }
    }

    #[test]
    fn bisection_interval_is_strictly_increasing() {
        // exhaustive ground for the monotonicity the bisection relies on
        for s in 2u128..=64 {
            for m in 2u32..=7 {
                let lo = s.div_ceil(2);
                let mut prev: Option<u128> = None;
                for x in lo..s {
                    let val = x.pow(m) + (s - x).pow(m);
                    if let Some(p) = prev {
                        assert!(val > p, "s={s} m={m} x={x}");
                    }
                    prev = Some(val);
                }
            }
        }
    }

    #[test]
    fn bisection_finds_every_planted_solution() {
        for s in 2u128..=64 {
            for m in 2u32..=7 {
                for x in s.div_ceil(2)..s {
                    let n = nat(x.pow(m) + (s - x).pow(m));
                    let found = bisect_split(&n, &nat(s), m).expect("planted solution");
                    assert_eq!(found, (nat(x), nat(s - x)));
                }
            }
        }
    }

    #[test]
    fn enumerate_prefixes() {
        let ns: Vec<u128> = enumerate(3, &nat(30))
            .map(|r| r.n().to_u128().unwrap())
            .collect();
        assert_eq!(ns, vec![2, 9, 16, 28]);

        let all: Vec<Representation> = enumerate(2, &nat(2)).collect();
        assert_eq!(all, vec![rep(2, 1, 1)]);

        let ns5: Vec<u128> = enumerate(5, &nat(33))
            .map(|r| r.n().to_u128().unwrap())
            .collect();
        assert_eq!(ns5, vec![2, 33]);
    }

    #[test]
    fn enumerate_is_sorted_with_descending_x_ties() {
        let reps: Vec<Representation> = enumerate(2, &nat(5000)).collect();
        for w in reps.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            assert!(a.n() <= b.n());
            if a.n() == b.n() {
                assert!(a.x() > b.x(), "ties in descending x at n={}", a.n());
            }
        }
        // 50 appears twice, (7,1) before (5,5)
        let fifty: Vec<&Representation> =
            reps.iter().filter(|r| *r.n() == nat(50)).collect();
        assert_eq!(fifty.len(), 2);
        assert_eq!(fifty[0].x(), &nat(7));
        assert_eq!(fifty[1].x(), &nat(5));
    }

    #[test]
    fn scan_examples() {
        let opts = ScanOptions::default();
        let empty = scan_conjecture(&[2], 2, &opts).unwrap();
        assert!(empty.findings.is_empty());

        let cube = scan_conjecture(&[3], 3, &opts).unwrap();
        assert_eq!(cube.findings.len(), 1);
        assert_eq!(cube.findings[0].p, 3);
        assert_eq!(cube.findings[0].m, 3);
        assert_eq!(cube.findings[0].representation, rep(3, 3, 1));

        let small = scan_conjecture(&[2, 3, 5, 7], 6, &opts).unwrap();
        assert_eq!(small.findings.len(), 1);
        assert_eq!(small.findings[0].representation, rep(3, 3, 1));
    }

    #[test]
    fn scan_propagates_certification_failure() {
        assert!(matches!(
            scan_conjecture(&[11], 3, &ScanOptions::default()),
            Err(PowersumError::Mersenne(MersenneError::NotMersennePrime { p: 11 }))
        ));
    }

    #[test]
    fn scan_worker_count_does_not_change_report() {
        let one = scan_conjecture(&[2, 3, 5, 7], 5, &ScanOptions { even_m_max_p: 31, workers: 1 })
            .unwrap();
        let eight = scan_conjecture(&[2, 3, 5, 7], 5, &ScanOptions { even_m_max_p: 31, workers: 8 })
            .unwrap();
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&eight).unwrap()
        );
    }

    #[test]
    fn every_emitted_representation_verifies() {
        for r in enumerate(3, &nat(100_000)) {
            assert!(r.verify());
        }
        for r in decide_naive(&nat(1729), 3) {
            assert!(r.verify());
        }
    }
}
