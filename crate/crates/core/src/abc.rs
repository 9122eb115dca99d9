//! ABC triples, the explicit fourth-versus-seventh power bound, and the
//! conditional inequality chain that caps the exponent at 29.
//!
//! The chain steps bak1 through bak15 are instantiated as concrete
//! integer inequalities and evaluated one by one; nothing is carried over
//! from the prose. Rational bounds are cleared of denominators, so the
//! derived window for `h` is a pair of exact ceiling/floor integers.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bigmath::{factor, nat, radical, v2, BigmathError, FactorBudget, Natural};
use crate::mersenne::{even_perfect, lucas_lehmer, MersenneError, PerfectNumber};
use crate::par;
use crate::powersum::bisect_split;

/// A sum `A + B = C` with its radical data and the exact verdict of
/// `max(A,B,C)^4 < rad(ABC)^7`. Radical and verdict exist only for
/// coprime pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbcTriple {
    #[serde(with = "crate::decimal")]
    pub a: Natural,
    #[serde(with = "crate::decimal")]
    pub b: Natural,
    #[serde(with = "crate::decimal")]
    pub c: Natural,
    pub coprime: bool,
    #[serde(with = "crate::decimal::opt")]
    pub rad_abc: Option<Natural>,
    pub baker_holds: Option<bool>,
}

/// Build the triple for `a + b = c` under the given factoring budget.
pub fn triple_with(
    a: &Natural,
    b: &Natural,
    budget: &FactorBudget,
) -> Result<AbcTriple, BigmathError> {
    assert!(!a.is_zero() && !b.is_zero(), "triple requires a, b >= 1");
    let c: Natural = a + b;
    let coprime = a.gcd(b).is_one();
    if !coprime {
        return Ok(AbcTriple {
            a: a.clone(),
            b: b.clone(),
            c,
            coprime,
            rad_abc: None,
            baker_holds: None,
        });
    }
    let rad = radical(&(a * b * &c), budget)?;
    let max = a.max(b).max(&c);
    let baker_holds = max.pow(4) < rad.pow(7);
    Ok(AbcTriple {
        a: a.clone(),
        b: b.clone(),
        c,
        coprime,
        rad_abc: Some(rad),
        baker_holds: Some(baker_holds),
    })
}

/// [`triple_with`] under the default budget.
pub fn triple(a: &Natural, b: &Natural) -> Result<AbcTriple, BigmathError> {
    triple_with(a, b, &FactorBudget::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepStatus {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub id: &'static str,
    pub instance: String,
    pub status: StepStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ChainStep {
    fn new(id: &'static str, instance: String, holds: bool) -> Self {
        ChainStep {
            id,
            instance,
            status: if holds { StepStatus::Holds } else { StepStatus::Fails },
            note: None,
        }
    }

    fn not_applicable(id: &'static str, instance: String, note: &str) -> Self {
        ChainStep {
            id,
            instance,
            status: StepStatus::NotApplicable,
            note: Some(note.to_string()),
        }
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Consistent,
    ContradictionFound,
}

/// The evaluated chain at one `(p, m, h)`, plus the h-window the chain
/// forces for `(p, m)` alone.
#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub p: u32,
    pub m: u32,
    pub h: u32,
    /// ceil((2p + 10) / 28), the lower bound forced at bak9.
    pub h_lower_bound: u32,
    /// floor((2p - 2) / (m - 1)), the upper bound forced at bak13.
    pub h_upper_bound: u32,
    pub interval_empty: bool,
    pub steps: Vec<ChainStep>,
    pub conclusion: Conclusion,
    /// The argument states `p > 3` without proof; smaller p are evaluated
    /// anyway and flagged here.
    pub outside_stated_assumption: bool,
}

fn h_bounds(p: u32, m: u32) -> (u32, u32) {
    let lower = (2 * p + 10).div_ceil(28);
    let upper = (2 * p - 2) / (m - 1);
    (lower, upper)
}

/// The window `(lower, upper)` the chain forces on `h` for `(p, m)`
/// alone, independent of any concrete split. Empty when lower > upper.
pub fn h_window(p: u32, m: u32) -> (u32, u32) {
    assert!(p >= 2, "h_window requires p >= 2");
    assert!(m >= 2, "h_window requires m >= 2");
    h_bounds(p, m)
}

const CHAIN_IDS: [&str; 16] = [
    "bak1", "bak2", "bak3", "bak4", "bak5", "bak6", "bak7", "bak7a", "bak8", "bak9", "bak10",
    "bak11", "bak12", "bak13", "bak14", "bak15",
];

/// Evaluate every chain step at concrete `(p, m, h)`, with `rad(ax)`
/// taken at its bak6 worst case `2^(2h-2)` unless a concrete radical is
/// supplied.
fn chain_steps(p: u32, m: u32, h: u32, rad_ax: Option<&Natural>) -> Vec<ChainStep> {
    let pi = p as i128;
    let mi = m as i128;
    let hi = h as i128;
    let mersenne: Natural = (Natural::one() << p) - Natural::one();
    let rad_bound: Natural = Natural::one() << (2 * h - 2);
    let (rad, rad_desc) = match rad_ax {
        Some(r) => (r.clone(), format!("rad(ax) = {r}")),
        None => (rad_bound.clone(), format!("rad(ax) at bound 2^(2*{h}-2)")),
    };
    let n: Natural = &mersenne << (p - 1);
    let mut steps = Vec::with_capacity(16);

    // bak1: (2^p - 1) 2^(p-1) < (2 rad(ax) (2^p - 1))^(7/4), cleared to
    // fourth vs seventh powers
    let bak1 = n.pow(4) < (nat(2) * &rad * &mersenne).pow(7);
    steps.push(ChainStep::new(
        "bak1",
        format!("((2^{p}-1) * 2^({p}-1))^4 < (2 * rad * (2^{p}-1))^7, {rad_desc}"),
        bak1,
    ));

    // bak2: (2^p-1)^4 * 2^(4p-4) < 2^7 * rad^7 * (2^p-1)^7
    let bak2 = mersenne.pow(4) * (Natural::one() << (4 * p - 4))
        < (Natural::one() << 7) * rad.pow(7) * mersenne.pow(7);
    steps.push(ChainStep::new(
        "bak2",
        format!("(2^{p}-1)^4 * 2^(4*{p}-4) < 2^7 * rad^7 * (2^{p}-1)^7, {rad_desc}"),
        bak2,
    ));

    // bak3: 2^(4p-11) < rad^7 * (2^p-1)^3, cleared by 2^11
    let bak3 = Natural::one() << (4 * p) < (Natural::one() << 11) * rad.pow(7) * mersenne.pow(3);
    steps.push(ChainStep::new(
        "bak3",
        format!("2^(4*{p}) < 2^11 * rad^7 * (2^{p}-1)^3, {rad_desc}"),
        bak3,
    ));

    // bak4 and bak5 compare against concrete x and a; without them only
    // the combined bound bak6 is checkable
    match rad_ax {
        Some(_) => {
            // caller substitutes the concrete steps; placeholder filled
            // in theorem_conditions
            steps.push(ChainStep::not_applicable(
                "bak4",
                "4ax <= (x+a)^2".to_string(),
                "replaced by the concrete evaluation in the theorem report",
            ));
            steps.push(ChainStep::not_applicable(
                "bak5",
                "rad(ax) <= ax".to_string(),
                "replaced by the concrete evaluation in the theorem report",
            ));
        }
        None => {
            steps.push(ChainStep::not_applicable(
                "bak4",
                "4ax <= (x+a)^2".to_string(),
                "needs concrete x and a",
            ));
            steps.push(ChainStep::not_applicable(
                "bak5",
                "rad(ax) <= ax".to_string(),
                "needs concrete x and a",
            ));
        }
    }

    // bak6: rad(ax) <= 2^(2h-2); with x + a = 2^h this is ax <= (x+a)^2/4
    let bak6 = rad <= rad_bound;
    steps.push(ChainStep::new(
        "bak6",
        format!("rad(ax) <= 2^(2*{h}-2), {rad_desc}"),
        bak6,
    ));

    // bak7: 2^(4p-11) < 2^(14h-14) (2^p-1)^3 < 2^(14h-14) 2^(3p);
    // first part cleared by 2^11, second part reduces to (2^p-1)^3 < 2^(3p)
    let bak7_first =
        Natural::one() << (4 * p) < (Natural::one() << (14 * (h as u64) - 3)) * mersenne.pow(3);
    let bak7_second = mersenne.pow(3) < Natural::one() << (3 * p);
    steps.push(ChainStep::new(
        "bak7",
        format!("2^(4*{p}) < 2^(14*{h}-3) * (2^{p}-1)^3 and (2^{p}-1)^3 < 2^(3*{p})"),
        bak7_first && bak7_second,
    ));

    // bak7a: printed as 2^(p-11) < 2^(14h-4), but bak7 yields exponent
    // comparison p - 11 < 14h - 14; evaluated as deduced
    let bak7a = pi - 11 < 14 * hi - 14;
    steps.push(
        ChainStep::new("bak7a", format!("{p} - 11 < 14*{h} - 14"), bak7a).with_note(
            "printed exponent 14h-4 is inconsistent with bak7, which gives 14h-14; \
             the deduced form is evaluated"
                .to_string(),
        ),
    );

    // bak8: 14h - 14 >= p - 9; the strict bak7a gap is closed by parity
    let bak8 = 14 * hi - 14 >= pi - 9;
    let parity_note = format!(
        "14h-14 is even; p-11 is {} for p = {p}",
        if (pi - 11).rem_euclid(2) == 0 { "even" } else { "odd" }
    );
    steps.push(ChainStep::new("bak8", format!("14*{h} - 14 >= {p} - 9"), bak8).with_note(parity_note));

    // bak9: h >= (2p+10)/28, cleared
    let bak9 = 28 * hi >= 2 * pi + 10;
    steps.push(ChainStep::new("bak9", format!("28*{h} >= 2*{p} + 10"), bak9));

    // bak10: 2^(h(m-2)) < 2^(p-1-h) (2^p-1) < 2^(p-1-h) 2^p; both sides
    // multiplied by 2^h, so no negative exponent appears
    let lhs10 = Natural::one() << ((h as u64) * ((m as u64) - 1));
    let bak10_first = lhs10 < n;
    let bak10_second = mersenne < Natural::one() << p;
    steps.push(ChainStep::new(
        "bak10",
        format!("2^({h}*({m}-1)) < (2^{p}-1) * 2^({p}-1) and (2^{p}-1) < 2^{p}"),
        bak10_first && bak10_second,
    ));

    // bak11: 2p - 1 - h >= h(m-2) + 1
    let bak11 = 2 * pi - 1 - hi >= hi * (mi - 2) + 1;
    steps.push(ChainStep::new(
        "bak11",
        format!("2*{p} - 1 - {h} >= {h}*({m}-2) + 1"),
        bak11,
    ));

    // bak12: 2p - 2 >= h(m-1)
    let bak12 = 2 * pi - 2 >= hi * (mi - 1);
    steps.push(ChainStep::new(
        "bak12",
        format!("2*{p} - 2 >= {h}*({m}-1)"),
        bak12,
    ));

    // bak13: h <= (2p-2)/(m-1) <= (2p+10)/(m-1), cleared by (m-1)
    let bak13 = hi * (mi - 1) <= 2 * pi - 2 && 2 * pi - 2 <= 2 * pi + 10;
    steps.push(ChainStep::new(
        "bak13",
        format!("{h}*({m}-1) <= 2*{p} - 2 and 2*{p} - 2 <= 2*{p} + 10"),
        bak13,
    ));

    // bak14: (2p+10)/28 <= (2p+10)/(m-1), cleared: (m-1)(2p+10) <= 28(2p+10)
    let bak14 = (mi - 1) * (2 * pi + 10) <= 28 * (2 * pi + 10);
    steps.push(ChainStep::new(
        "bak14",
        format!("({m}-1)*(2*{p}+10) <= 28*(2*{p}+10)"),
        bak14,
    ));

    // bak15: m <= 29
    let bak15 = mi <= 29;
    steps.push(ChainStep::new("bak15", format!("{m} <= 29"), bak15));

    debug_assert_eq!(
        steps.iter().map(|s| s.id).collect::<Vec<_>>(),
        CHAIN_IDS.to_vec()
    );
    steps
}

/// Instantiate and evaluate the inequality chain at `(p, m, h)`.
///
/// Per-step verdicts are only meaningful under the theorem's premises, so
/// every step is reported not-applicable when `m <= 29` (condition (a)
/// fails). The conclusion is independent of `h`: contradiction is found
/// exactly when the bak9 lower bound strictly exceeds the bak13 upper
/// bound.
pub fn verify_chain(p: u32, m: u32, h: u32) -> Result<ChainReport, MersenneError> {
    assert!(m >= 2, "verify_chain requires m >= 2");
    assert!(h >= 1, "verify_chain requires h >= 1");
    assert!(m <= 4096 && h <= 4096, "chain instantiation is desk-scale");
    if !lucas_lehmer(p)? {
        return Err(MersenneError::NotMersennePrime { p });
    }
    let (h_lower_bound, h_upper_bound) = h_bounds(p, m);
    let interval_empty = h_lower_bound > h_upper_bound;
    let steps = if m > 29 {
        chain_steps(p, m, h, None)
    } else {
        CHAIN_IDS
            .iter()
            .map(|id| {
                ChainStep::not_applicable(
                    id,
                    String::new(),
                    &format!("condition (a) fails: m = {m} is not > 29"),
                )
            })
            .collect()
    };
    Ok(ChainReport {
        p,
        m,
        h,
        h_lower_bound,
        h_upper_bound,
        interval_empty,
        steps,
        conclusion: if interval_empty {
            Conclusion::ContradictionFound
        } else {
            Conclusion::Consistent
        },
        outside_stated_assumption: p <= 3,
    })
}

/// Full evaluation of the theorem's five conditions at concrete
/// `(p, m, x, a)`.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub p: u32,
    pub m: u32,
    #[serde(with = "crate::decimal")]
    pub x: Natural,
    #[serde(with = "crate::decimal")]
    pub a: Natural,
    /// `v2(x + a)` when `x + a` is exactly a power of two.
    pub h: Option<u64>,
    /// `x^m + a^m` equals the perfect number for p.
    pub cond_zero: bool,
    /// m > 29.
    pub cond_a: bool,
    /// `(x+a)^(m-2) <= x^m + a^m`.
    pub cond_b: bool,
    /// both odd.
    pub cond_c: bool,
    /// `x + a = 2^h`.
    pub cond_d: bool,
    /// `(x^m + a^m) / (x + a) = (2^p - 1) 2^(p-1-h)` exactly.
    pub cond_e: bool,
    /// gcd(x^m, a^m), recorded rather than inferred from (c) and (d).
    #[serde(with = "crate::decimal")]
    pub gcd_xm_am: Natural,
    pub chain: Vec<ChainStep>,
    pub conclusion: Conclusion,
}

/// Evaluate conditions (zero) and (a) through (e) exactly, then the chain.
///
/// The chain runs on the concrete radical only when (b) through (e) hold
/// together with (a); otherwise its steps are reported not-applicable,
/// except bak4 and bak5, which are unconditional facts about x and a and
/// are always evaluated concretely.
pub fn theorem_conditions(
    p: u32,
    m: u32,
    x: &Natural,
    a: &Natural,
) -> Result<TheoremReport, MersenneError> {
    assert!(m >= 2, "theorem_conditions requires m >= 2");
    assert!(
        !x.is_zero() && !a.is_zero(),
        "theorem_conditions requires x, a >= 1"
    );
    let pn = even_perfect(p)?;
    let n = pn.n();
    let s: Natural = x + a;
    let power_sum = x.pow(m) + a.pow(m);

    let cond_zero = power_sum == *n;
    let cond_a = m > 29;
    let cond_b = s.pow(m - 2) <= power_sum;
    let cond_c = x.is_odd() && a.is_odd();
    let h_val = v2(&s).expect("s >= 2");
    let cond_d = Natural::one() << h_val == s;
    let h = cond_d.then_some(h_val);
    let cond_e = match h {
        Some(h_val) if h_val <= (p - 1) as u64 => {
            let (q, r) = power_sum.div_rem(&s);
            r.is_zero() && q == pn.mersenne() << ((p - 1) as u64 - h_val)
        }
        _ => false,
    };
    let gcd_xm_am = x.pow(m).gcd(&a.pow(m));

    let budget = FactorBudget::default();
    let ax = x * a;
    let fact = factor(&ax, &budget);
    let premises = cond_a && cond_b && cond_c && cond_d && cond_e;

    let mut chain = if premises {
        let rad_ax = fact.complete.then(|| fact.radical_value());
        match (&rad_ax, h) {
            (Some(r), Some(h_val)) => chain_steps(p, m, h_val as u32, Some(r)),
            _ => CHAIN_IDS
                .iter()
                .map(|id| {
                    ChainStep::not_applicable(
                        id,
                        String::new(),
                        "factorization of ax incomplete under the default budget",
                    )
                })
                .collect(),
        }
    } else {
        CHAIN_IDS
            .iter()
            .map(|id| {
                ChainStep::not_applicable(
                    id,
                    String::new(),
                    "premises (a)-(e) do not all hold at these inputs",
                )
            })
            .collect()
    };

    // bak4 and bak5 are plain arithmetic about x and a: evaluate them
    // concretely no matter what the premises said
    let bak4_holds = nat(4) * &ax <= &s * &s;
    chain[3] = ChainStep::new(
        "bak4",
        format!("4*{x}*{a} <= ({x}+{a})^2"),
        bak4_holds,
    );
    chain[4] = if fact.complete {
        let r = fact.radical_value();
        ChainStep::new("bak5", format!("rad({ax}) = {r} <= {ax}"), r <= ax)
    } else {
        ChainStep::not_applicable(
            "bak5",
            format!("rad({ax}) <= {ax}"),
            "factorization of ax incomplete under the default budget",
        )
    };

    let (h_lower_bound, h_upper_bound) = h_bounds(p, m);
    Ok(TheoremReport {
        p,
        m,
        x: x.clone(),
        a: a.clone(),
        h,
        cond_zero,
        cond_a,
        cond_b,
        cond_c,
        cond_d,
        cond_e,
        gcd_xm_am,
        chain,
        conclusion: if h_lower_bound > h_upper_bound {
            Conclusion::ContradictionFound
        } else {
            Conclusion::Consistent
        },
    })
}

/// Effort limits for [`search_conditional_counterexample`].
#[derive(Debug, Clone)]
pub struct SearchBudget {
    pub m_max: u32,
    pub workers: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            m_max: 200,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchHit {
    pub p: u32,
    pub m: u32,
    pub h: u32,
    #[serde(with = "crate::decimal")]
    pub x: Natural,
    #[serde(with = "crate::decimal")]
    pub a: Natural,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub p_list: Vec<u32>,
    pub m_min: u32,
    pub m_max: u32,
    pub cells_scanned: u64,
    pub hits: Vec<SearchHit>,
}

/// Desk-scale search for inputs satisfying conditions (d) and (e) with
/// `m > 29`: every split `x + a = 2^h`, `h <= p - 1`, is resolved by the
/// same monotone bisection the structured decider uses. Expected empty.
pub fn search_conditional_counterexample(
    p_list: &[u32],
    m_min: u32,
    budget: &SearchBudget,
) -> Result<SearchReport, MersenneError> {
    assert!(m_min > 29, "the search targets the regime m > 29");
    assert!(budget.m_max >= m_min, "budget m_max below m_min");
    let perfects = p_list
        .iter()
        .map(|&p| even_perfect(p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cells: Vec<(&PerfectNumber, u32)> = Vec::new();
    for pn in &perfects {
        for m in m_min..=budget.m_max {
            cells.push((pn, m));
        }
    }
    let per_cell = par::ordered_map(&cells, budget.workers, |&(pn, m)| {
        let p = pn.p();
        let n = pn.n();
        // n has exactly 2p - 1 bits; splits whose power-sum range cannot
        // reach it are skipped by exponent comparison alone
        let mut hits = Vec::new();
        for h in 1..=(p - 1) as u64 {
            let hm = h * m as u64;
            if (h - 1) * m as u64 + 1 >= 2 * p as u64 - 1 || hm <= 2 * p as u64 - 3 {
                continue;
            }
            let s: Natural = Natural::one() << h;
            if let Some((x, a)) = bisect_split(n, &s, m) {
                hits.push(SearchHit {
                    p,
                    m,
                    h: h as u32,
                    x,
                    a,
                });
            }
        }
        hits
    });
    Ok(SearchReport {
        p_list: p_list.to_vec(),
        m_min,
        m_max: budget.m_max,
        cells_scanned: cells.len() as u64,
        hits: per_cell.into_iter().flatten().collect(),
    })
}
