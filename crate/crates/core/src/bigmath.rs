//! Exact arbitrary-precision integer primitives shared by every verdict path.
//!
//! Everything downstream (divisor windows, inequality chains, radical
//! bounds) reduces to comparisons of exact integers built here. No routine
//! in this module, or anywhere else in the crate, consults floating point:
//! fractional bounds are cleared of denominators by callers and compared as
//! integers.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Non-negative integer of arbitrary size; the value type for every
/// quantity a verdict depends on.
pub type Natural = BigUint;

/// Shorthand for building a [`Natural`] from a machine integer.
pub fn nat(v: u128) -> Natural {
    Natural::from(v)
}

/// Default seed for the randomized factoring stage. Fixed so that repeated
/// runs produce identical factorizations.
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BigmathError {
    #[error("2-adic valuation of zero is undefined")]
    ZeroValuation,
    #[error("factorization of {n} is incomplete under the given budget")]
    IncompleteFactorization { n: Natural },
}

/// Effort limits for [`factor`]. Identical `(n, budget)` inputs give
/// identical outputs; the rho stage draws its constants from `seed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial-divide by every candidate up to this bound first.
    pub trial_bound: u64,
    /// Pollard rho iterations allowed per restart.
    pub rho_iterations: u64,
    /// Rho restarts (fresh polynomial constants) before giving up.
    pub rho_restarts: u32,
    /// Seed for the rho constants.
    pub seed: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 1_000_000,
            rho_iterations: 500_000,
            rho_restarts: 16,
            seed: DEFAULT_SEED,
        }
    }
}

impl FactorBudget {
    /// Default budget with a caller-chosen seed.
    pub fn with_seed(seed: u64) -> Self {
        FactorBudget {
            seed,
            ..FactorBudget::default()
        }
    }
}

/// Prime factorization of a positive integer, possibly partial.
///
/// When `complete` is true the product of `prime^exponent` equals the
/// input and every listed prime passed [`is_prime`]. When false, bounded
/// effort ran out: the listed primes still divide the input, but at least
/// one cofactor is missing and no radical-dependent verdict may be built
/// on top.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    #[serde(with = "crate::decimal::pairs")]
    pub factors: Vec<(Natural, u32)>,
    pub complete: bool,
}

impl Factorization {
    /// Product of `prime^exponent` over the listed factors.
    pub fn product(&self) -> Natural {
        self.factors
            .iter()
            .map(|(p, e)| p.pow(*e))
            .product::<Natural>()
            .max(Natural::one())
    }

    /// Product of the distinct listed primes. Only the full radical of the
    /// input when `complete` is true; use [`radical`] for the checked path.
    pub fn radical_value(&self) -> Natural {
        self.factors
            .iter()
            .map(|(p, _)| p.clone())
            .product::<Natural>()
            .max(Natural::one())
    }

    /// Every divisor of the factored value, ascending. Exhaustive only
    /// when `complete` is true; callers gate on that flag.
    pub fn divisors(&self) -> Vec<Natural> {
        let mut divs = vec![Natural::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
            for d in &divs {
                let mut pk = Natural::one();
                for _ in 0..=*e {
                    next.push(d * &pk);
                    pk *= p;
                }
            }
            divs = next;
        }
        divs.sort();
        divs
    }
}

/// Integer m-th root: the unique `r` with `r^m <= n < (r+1)^m`.
///
/// Binary search on a one-bit bracket derived from the bit length, so every
/// probe is an exact integer power comparison.
///
/// Panics if `m == 0`.
pub fn iroot(n: &Natural, m: u32) -> Natural {
    assert!(m >= 1, "iroot requires m >= 1");
    if n.is_zero() {
        return Natural::zero();
    }
    if m == 1 {
        return n.clone();
    }
    let bits = n.bits();
    let low_exp = (bits - 1) / m as u64;
    // lo^m = 2^(m*low_exp) <= 2^(bits-1) <= n, and hi^m >= 2^bits > n.
    let mut lo = Natural::one() << low_exp;
    let mut hi = Natural::one() << (low_exp + 1);
    while &hi - &lo > Natural::one() {
        let mid: Natural = (&lo + &hi) >> 1;
        if mid.pow(m) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `Some(r)` iff `r^m == n` exactly.
pub fn as_perfect_power(n: &Natural, m: u32) -> Option<Natural> {
    let r = iroot(n, m);
    if r.pow(m) == *n {
        Some(r)
    } else {
        None
    }
}

/// 2-adic valuation: the largest `e` with `2^e | n`. Undefined for zero.
pub fn v2(n: &Natural) -> Result<u64, BigmathError> {
    n.trailing_zeros().ok_or(BigmathError::ZeroValuation)
}

// Bases proven sufficient for deterministic Miller-Rabin below
// 3_317_044_064_679_887_385_961_981 (Sorenson & Webster).
const MR_BASES_SMALL: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
// Fixed extended base set for larger inputs; still a deterministic
// procedure (no random draws), used only at desk scale.
const MR_BASES_LARGE: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn mr_small_threshold() -> &'static Natural {
    static T: OnceLock<Natural> = OnceLock::new();
    T.get_or_init(|| "3317044064679887385961981".parse().expect("literal"))
}

fn miller_rabin(n: &Natural, bases: &[u64]) -> bool {
    // n odd, n >= 3
    let one = Natural::one();
    let n_minus_1 = n - &one;
    let r = n_minus_1.trailing_zeros().expect("n >= 3");
    let d = &n_minus_1 >> r;
    'bases: for &b in bases {
        let b = nat(b as u128) % n;
        if b.is_zero() || b.is_one() {
            continue;
        }
        let mut x = b.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..r {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality test (fixed-base Miller-Rabin; the base set is
/// proven below ~3.3e24 and extended above it).
pub fn is_prime(n: &Natural) -> bool {
    if *n < nat(2) {
        return false;
    }
    for &p in MR_BASES_LARGE.iter() {
        let pb = nat(p as u128);
        if *n == pb {
            return true;
        }
        if (n % pb).is_zero() {
            return false;
        }
    }
    if *n < *mr_small_threshold() {
        miller_rabin(n, &MR_BASES_SMALL)
    } else {
        miller_rabin(n, &MR_BASES_LARGE)
    }
}

/// `Some((b, k))` with `b^k == n`, `k >= 2` prime, if such a decomposition
/// exists.
fn perfect_power(n: &Natural) -> Option<(Natural, u32)> {
    let max_k = n.bits() as u32; // b >= 2 forces k <= log2(n)
    for k in 2..=max_k.max(2) {
        if !small_u64_prime(k as u64) {
            continue;
        }
        if let Some(b) = as_perfect_power(n, k) {
            if b > Natural::one() {
                return Some((b, k));
            }
        }
    }
    None
}

fn small_u64_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Brent-cycle Pollard rho attempting to split an odd composite. Draws the
/// polynomial constant and starting point from a ChaCha stream seeded by
/// the budget, so the whole search is reproducible.
fn rho_split(n: &Natural, budget: &FactorBudget, attempt: &mut u64) -> Option<Natural> {
    let one = Natural::one();
    let batch = 128u64;
    for _ in 0..budget.rho_restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed.wrapping_add(*attempt));
        *attempt += 1;
        let c = rng.gen_biguint_below(&(n - nat(2))) + &one;
        let mut y = rng.gen_biguint_below(n);
        let mut g = one.clone();
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut cycle = 1u64;
        let mut iters = 0u64;
        while g.is_one() && iters < budget.rho_iterations {
            x = y.clone();
            for _ in 0..cycle {
                y = (&y * &y + &c) % n;
            }
            let mut done = 0u64;
            while done < cycle && g.is_one() && iters < budget.rho_iterations {
                ys = y.clone();
                let lim = batch.min(cycle - done);
                for _ in 0..lim {
                    y = (&y * &y + &c) % n;
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                done += lim;
                iters += lim;
            }
            cycle *= 2;
        }
        if g == *n {
            // The batched gcd jumped past the factor; replay stepwise.
            let mut steps = 0u64;
            loop {
                ys = (&ys * &ys + &c) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() || steps > batch {
                    break;
                }
                steps += 1;
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

/// Factor `n >= 1` under the given budget: trial division first, then
/// seeded Brent rho with deterministic primality certification of every
/// emitted prime. Incomplete effort is reported through the `complete`
/// flag, never by guessing.
pub fn factor(n: &Natural, budget: &FactorBudget) -> Factorization {
    assert!(!n.is_zero(), "factor requires n >= 1");
    let mut map: BTreeMap<Natural, u32> = BTreeMap::new();
    let mut complete = true;
    let mut rem = n.clone();

    if let Some(tz) = rem.trailing_zeros().filter(|&t| t > 0) {
        map.insert(nat(2), tz as u32);
        rem >>= tz;
    }
    let mut d = 3u64;
    while d <= budget.trial_bound && !rem.is_one() {
        let db = nat(d as u128);
        if &db * &db > rem {
            break;
        }
        while (&rem % &db).is_zero() {
            rem /= &db;
            *map.entry(db.clone()).or_insert(0) += 1;
        }
        d += 2;
    }
    if !rem.is_one() {
        let mut attempt = 0u64;
        let mut stack: Vec<(Natural, u32)> = vec![(rem, 1)];
        while let Some((c, mult)) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if is_prime(&c) {
                *map.entry(c).or_insert(0) += mult;
                continue;
            }
            if let Some((b, k)) = perfect_power(&c) {
                stack.push((b, mult * k));
                continue;
            }
            match rho_split(&c, budget, &mut attempt) {
                Some(g) => {
                    let other = &c / &g;
                    stack.push((g, mult));
                    stack.push((other, mult));
                }
                None => complete = false,
            }
        }
    }
    Factorization {
        factors: map.into_iter().collect(),
        complete,
    }
}

/// Radical: product of the distinct primes dividing `n`.
///
/// Refuses to answer from a partial factorization; an estimate here would
/// poison every bound built on it.
pub fn radical(n: &Natural, budget: &FactorBudget) -> Result<Natural, BigmathError> {
    let f = factor(n, budget);
    if !f.complete {
        return Err(BigmathError::IncompleteFactorization { n: n.clone() });
    }
    Ok(f.radical_value())
}

// ---------------------------------------------------------------------------
// Machine-word helpers for the scan fast paths. These mirror the bignum
// routines exactly; `decide_naive` switches to them when the operands fit.

/// `x^m` if it stays `<= cap`, else `None`.
pub(crate) fn pow_u128_capped(x: u128, m: u32, cap: u128) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..m {
        acc = acc.checked_mul(x)?;
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}

/// Integer m-th root on machine words; same contract as [`iroot`].
pub(crate) fn iroot_u128(n: u128, m: u32) -> u128 {
    assert!(m >= 1);
    match m {
        1 => n,
        2 => n.isqrt(),
        _ => {
            if n == 0 {
                return 0;
            }
            let bits = 128 - n.leading_zeros() as u64;
            let low_exp = (bits - 1) / m as u64;
            let mut lo: u128 = 1 << low_exp;
            let mut hi: u128 = 1 << (low_exp + 1);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if pow_u128_capped(mid, m, n).is_some() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iroot_examples() {
        assert_eq!(iroot(&nat(28), 3), nat(3));
        assert_eq!(iroot(&nat(0), 5), nat(0));
        assert_eq!(iroot(&(Natural::one() << 90), 3), Natural::one() << 30);
        assert_eq!(iroot(&nat(1), 7), nat(1));
        assert_eq!(iroot(&nat(63), 2), nat(7));
        assert_eq!(iroot(&nat(64), 2), nat(8));
    }

    #[test]
    fn as_perfect_power_examples() {
        assert_eq!(as_perfect_power(&nat(27), 3), Some(nat(3)));
        assert_eq!(as_perfect_power(&nat(28), 3), None);
        // 4N^4 with N = 2^7 is (2N^2)^2
        let n: Natural = nat(1) << 7;
        let four_n4 = nat(4) * n.pow(4);
        assert_eq!(as_perfect_power(&four_n4, 2), Some(nat(2) * &n * &n));
    }

    #[test]
    fn as_perfect_power_roundtrip_exhaustive() {
        for r in 1u128..=1000 {
            for m in 1u32..=9 {
                let n = nat(r).pow(m);
                assert_eq!(as_perfect_power(&n, m), Some(nat(r)), "r={r} m={m}");
            }
        }
    }

    #[test]
    fn v2_examples() {
        assert_eq!(v2(&nat(48)), Ok(4));
        assert_eq!(v2(&nat(7)), Ok(0));
        // 2^(p-1)(2^p-1) at p = 7
        let n = (nat(1) << 6) * ((nat(1) << 7) - nat(1));
        assert_eq!(v2(&n), Ok(6));
        assert_eq!(v2(&nat(0)), Err(BigmathError::ZeroValuation));
    }

    #[test]
    fn factor_examples() {
        let b = FactorBudget::default();
        let f = factor(&nat(72), &b);
        assert!(f.complete);
        assert_eq!(f.factors, vec![(nat(2), 3), (nat(3), 2)]);

        let f1 = factor(&nat(1), &b);
        assert!(f1.complete);
        assert!(f1.factors.is_empty());

        let f2047 = factor(&nat(2047), &b);
        assert!(f2047.complete);
        assert_eq!(f2047.factors, vec![(nat(23), 1), (nat(89), 1)]);
    }

    #[test]
    fn factor_is_deterministic() {
        let b = FactorBudget {
            trial_bound: 100,
            ..FactorBudget::default()
        };
        // past the trial bound so the rho stage actually runs
        let n = nat(1_000_003) * nat(999_983) * nat(4);
        let f1 = factor(&n, &b);
        let f2 = factor(&n, &b);
        assert_eq!(f1, f2);
        assert!(f1.complete);
        assert_eq!(f1.product(), n);
    }

    #[test]
    fn factor_reports_incompleteness_instead_of_guessing() {
        let starved = FactorBudget {
            trial_bound: 10,
            rho_iterations: 2,
            rho_restarts: 1,
            seed: DEFAULT_SEED,
        };
        // product of two ~19-digit primes; unsplittable in 2 iterations
        let p: Natural = "2305843009213693951".parse().unwrap(); // 2^61 - 1
        let q: Natural = "618970019642690137449562111".parse().unwrap(); // 2^89 - 1
        let f = factor(&(&p * &q), &starved);
        assert!(!f.complete);
        assert!(radical(&(&p * &q), &starved).is_err());
    }

    #[test]
    fn radical_examples() {
        let b = FactorBudget::default();
        assert_eq!(radical(&nat(72), &b), Ok(nat(6)));
        assert_eq!(radical(&nat(1), &b), Ok(nat(1)));
        assert_eq!(radical(&nat(101), &b), Ok(nat(101)));
    }

    #[test]
    fn radical_properties_small_range() {
        let b = FactorBudget::default();
        for n in 1u128..=500 {
            let r = radical(&nat(n), &b).unwrap();
            assert!((nat(n) % &r).is_zero(), "rad({n}) divides n");
            let rr = radical(&r, &b).unwrap();
            assert_eq!(rr, r, "rad({n}) squarefree");
            assert_eq!(radical(&(nat(n) * nat(n)), &b).unwrap(), r, "rad(n^2) = rad(n)");
        }
    }

    #[test]
    fn is_prime_spot_checks() {
        assert!(is_prime(&nat(2)));
        assert!(is_prime(&nat(127)));
        assert!(!is_prime(&nat(2047))); // 23 * 89
        assert!(is_prime(&nat(8191)));
        assert!(!is_prime(&nat(1)));
        assert!(!is_prime(&nat(0)));
        let m61: Natural = "2305843009213693951".parse().unwrap();
        assert!(is_prime(&m61));
        // Carmichael number
        assert!(!is_prime(&nat(561)));
    }

    #[test]
    fn perfect_power_splits() {
        assert_eq!(perfect_power(&nat(729)), Some((nat(27), 2)));
        assert_eq!(perfect_power(&nat(8)), Some((nat(2), 3)));
        assert_eq!(perfect_power(&nat(12)), None);
    }

    #[test]
    fn machine_roots_match_bignum() {
        for n in [0u128, 1, 2, 63, 64, 65, 1 << 90, u64::MAX as u128, 12345678901234567890] {
            for m in 1u32..=9 {
                assert_eq!(
                    nat(iroot_u128(n, m)),
                    iroot(&nat(n), m),
                    "n={n} m={m}"
                );
            }
        }
    }
}
