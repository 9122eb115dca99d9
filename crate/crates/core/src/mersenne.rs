//! Even perfect numbers via the Euclid-Euler correspondence.
//!
//! Every even perfect number is `2^(p-1) * (2^p - 1)` with `2^p - 1` prime,
//! so a [`PerfectNumber`] can only be built through a Lucas-Lehmer
//! certification of its exponent. The divisor list of such a number is
//! closed form (`2^i` and `2^i * mersenne`), which the structured decider
//! in `powersum` relies on.

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bigmath::{nat, v2, Natural};
use crate::par;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MersenneError {
    #[error("exponent {p} is not prime")]
    NonPrimeExponent { p: u32 },
    #[error("2^{p} - 1 is not prime")]
    NotMersennePrime { p: u32 },
}

fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Lucas-Lehmer test for `2^p - 1` with prime exponent `p`.
///
/// The recurrence starts at 4 and squares `p - 2` times modulo `2^p - 1`;
/// `p = 2` is outside the recurrence and handled directly (3 is prime).
pub fn lucas_lehmer(p: u32) -> Result<bool, MersenneError> {
    if !is_prime_u32(p) {
        return Err(MersenneError::NonPrimeExponent { p });
    }
    if p == 2 {
        return Ok(true);
    }
    let modulus = (Natural::one() << p) - Natural::one();
    let mut s = nat(4) % &modulus;
    // s^2 - 2 stays non-negative as s^2 + (modulus - 2)
    let shift = &modulus - nat(2);
    for _ in 0..p - 2 {
        s = (&s * &s + &shift) % &modulus;
    }
    Ok(s.is_zero())
}

/// An even perfect number `2^(p-1) * (2^p - 1)` with certified prime
/// `2^p - 1`. Construction goes through [`even_perfect`] or
/// [`recognize_even_perfect`] only, so holding one is holding the
/// certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectNumber {
    p: u32,
    #[serde(with = "crate::decimal")]
    n: Natural,
    #[serde(with = "crate::decimal")]
    mersenne: Natural,
}

impl PerfectNumber {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> &Natural {
        &self.n
    }

    pub fn mersenne(&self) -> &Natural {
        &self.mersenne
    }

    /// All `2p` divisors, ascending: `2^i` and `2^i * mersenne` for
    /// `i` in `0..p`.
    pub fn divisors(&self) -> Vec<Natural> {
        let mut out = Vec::with_capacity(2 * self.p as usize);
        for i in 0..self.p {
            out.push(Natural::one() << i);
            out.push((Natural::one() << i) * &self.mersenne);
        }
        out.sort();
        out
    }
}

/// The perfect number for a certified exponent.
pub fn even_perfect(p: u32) -> Result<PerfectNumber, MersenneError> {
    if !lucas_lehmer(p)? {
        return Err(MersenneError::NotMersennePrime { p });
    }
    let mersenne = (Natural::one() << p) - Natural::one();
    let n = (Natural::one() << (p - 1)) * &mersenne;
    Ok(PerfectNumber { p, n, mersenne })
}

/// All exponents `p <= max_p` with `2^p - 1` prime, ascending. Candidate
/// exponents are tested independently, so they can be spread over
/// `workers` threads; the result order does not depend on the worker
/// count.
pub fn list_exponents(max_p: u32, workers: usize) -> Vec<u32> {
    let candidates: Vec<u32> = (2..=max_p).filter(|&p| is_prime_u32(p)).collect();
    let verdicts = par::ordered_map(&candidates, workers, |&p| {
        lucas_lehmer(p).expect("candidates are prime")
    });
    candidates
        .into_iter()
        .zip(verdicts)
        .filter_map(|(p, ok)| ok.then_some(p))
        .collect()
}

/// Recognize `n` as an even perfect number.
///
/// Reads off `p - 1` as the 2-adic valuation, then verifies the odd part
/// is exactly `2^p - 1` and that the exponent certifies. Odd inputs and 1
/// are rejected immediately.
pub fn recognize_even_perfect(n: &Natural) -> Option<PerfectNumber> {
    if n.is_zero() || n.is_one() {
        return None;
    }
    let e = v2(n).expect("n >= 2");
    if e == 0 {
        return None;
    }
    let p = u32::try_from(e + 1).ok()?;
    let odd: Natural = n >> e;
    let mersenne = (Natural::one() << p) - Natural::one();
    if odd != mersenne {
        return None;
    }
    match lucas_lehmer(p) {
        Ok(true) => Some(PerfectNumber {
            p,
            n: n.clone(),
            mersenne,
        }),
        // composite exponent means 2^p - 1 is composite too
        _ => None,
    }
}

/// Exponents whose perfect numbers fit comfortably in machine words; used
/// by callers that cap exhaustive work.
pub fn fits_u64(pn: &PerfectNumber) -> bool {
    pn.n.to_u64().is_some()
}
