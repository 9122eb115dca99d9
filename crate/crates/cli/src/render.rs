//! Plain-text renderings of the library reports. One report in, one
//! newline-terminated block out; timings never appear here.

use std::fmt::Write;

use perfnum::abc::{AbcTriple, ChainReport, ChainStep, Conclusion, SearchReport, StepStatus, TheoremReport};
use perfnum::bigmath::Natural;
use perfnum::mersenne::PerfectNumber;
use perfnum::powersum::{Representation, ScanMethod, ScanReport};
use perfnum::proofcheck::{ProofStepReport, StepDetail, StepId, Verdict, Witness};

use crate::suite::CriterionReport;

pub fn mersenne_list(max_p: u32, exponents: &[u32]) -> String {
    let list = exponents
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    if exponents.is_empty() {
        format!("no p <= {max_p} with 2^p - 1 prime\n")
    } else {
        format!("2^p - 1 is prime for p <= {max_p}: {list}\n")
    }
}

pub fn perfect(pn: &PerfectNumber) -> String {
    format!(
        "p = {}\nmersenne = {}\nn = {} = 2^{} * (2^{} - 1)\n",
        pn.p(),
        pn.mersenne(),
        pn.n(),
        pn.p() - 1,
        pn.p(),
    )
}

pub fn representation(r: &Representation) -> String {
    format!("{} = {}^{} + {}^{}", r.n(), r.x(), r.m(), r.y(), r.m())
}

fn route_lines(out: &mut String, label: &str, reps: &[Representation]) {
    if reps.is_empty() {
        writeln!(out, "{label}: no representation").unwrap();
    } else {
        for r in reps {
            writeln!(out, "{label}: {}", representation(r)).unwrap();
        }
    }
}

pub fn decide(
    n: &Natural,
    m: u32,
    perfect: Option<u32>,
    naive: Option<&[Representation]>,
    structured: Option<&[Representation]>,
    routes_agree: Option<bool>,
) -> String {
    let mut out = String::new();
    match perfect {
        Some(p) => writeln!(out, "n = {n} (perfect number for p = {p}), m = {m}").unwrap(),
        None => writeln!(out, "n = {n}, m = {m}").unwrap(),
    }
    if let Some(reps) = structured {
        route_lines(&mut out, "structured", reps);
    }
    if let Some(reps) = naive {
        route_lines(&mut out, "naive", reps);
    }
    if let Some(agree) = routes_agree {
        writeln!(out, "routes agree: {}", if agree { "yes" } else { "NO" }).unwrap();
    }
    out
}

pub fn scan(report: &ScanReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "scan over p in {:?}, m in {}..={}",
        report.p_list, report.m_range.0, report.m_range.1
    )
    .unwrap();
    for cell in &report.cells {
        let method = match cell.method {
            ScanMethod::Structured => "structured",
            ScanMethod::Naive => "naive",
            ScanMethod::SkippedEvenCap => "skipped (even-m cap)",
        };
        match cell.representations.len() {
            0 => writeln!(out, "p = {:>3}, m = {:>2}: {method}, none", cell.p, cell.m).unwrap(),
            _ => {
                for r in &cell.representations {
                    writeln!(
                        out,
                        "p = {:>3}, m = {:>2}: {method}, {}",
                        cell.p,
                        cell.m,
                        representation(r)
                    )
                    .unwrap();
                }
            }
        }
    }
    writeln!(out, "findings: {}", report.findings.len()).unwrap();
    for f in &report.findings {
        writeln!(out, "  p = {}, m = {}: {}", f.p, f.m, representation(&f.representation))
            .unwrap();
    }
    out
}

fn step_name(id: StepId) -> &'static str {
    match id {
        StepId::Case1Ellipse => "case1-ellipse",
        StepId::Case2Contradiction => "case2",
        StepId::HWindow => "h-window",
        StepId::FinalEquation => "final-eq",
        StepId::SquaresMod4 => "squares-mod4",
        StepId::M5Bounds => "m5-bounds",
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::PassWithDocumentedExceptions => "pass with documented exceptions",
    }
}

fn witness_tuple(w: &Witness) -> String {
    let inner = w
        .values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    format!("({inner})")
}

fn u32_list(values: &[u32]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn proof_step(report: &ProofStepReport) -> String {
    let mut out = String::new();
    writeln!(out, "step: {}", step_name(report.step_id)).unwrap();
    writeln!(out, "domain: {}", report.domain_checked).unwrap();
    match &report.detail {
        StepDetail::Ellipse {
            conic_discriminant,
            admissible_a,
            integer_points,
        } => {
            writeln!(out, "conic discriminant: {conic_discriminant}").unwrap();
            writeln!(
                out,
                "admissible a: {}",
                admissible_a
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
            .unwrap();
            for (x, a) in integer_points {
                writeln!(out, "integer point: (x, a) = ({x}, {a})").unwrap();
            }
        }
        StepDetail::Growth {
            s_checked_from,
            s_checked_to,
            root_bound,
            tail_witness_s,
            tail_positive,
        } => {
            writeln!(out, "checked s in {s_checked_from}..={s_checked_to}").unwrap();
            writeln!(
                out,
                "tail: roots bounded by {root_bound}, margin positive at s = {tail_witness_s}: {}",
                if *tail_positive { "yes" } else { "NO" }
            )
            .unwrap();
        }
        StepDetail::HWindow { p, h_set, allowed_h } => {
            writeln!(out, "p = {p}").unwrap();
            writeln!(out, "h satisfying both inequalities: {{{}}}", u32_list(h_set)).unwrap();
            writeln!(out, "h allowed by 3h in {{2p-1, 2p}}: {{{}}}", u32_list(allowed_h)).unwrap();
        }
        StepDetail::FinalEquation {
            q_max,
            enumerated_up_to_q,
        } => {
            writeln!(out, "q checked up to {q_max}").unwrap();
            writeln!(out, "solution sets enumerated for q <= {enumerated_up_to_q}").unwrap();
        }
        StepDetail::SquaresMod4 {
            residues,
            two_square_scanned,
        } => {
            for (p, r) in residues {
                writeln!(out, "2^{p} - 1 mod 4 = {r}").unwrap();
            }
            writeln!(
                out,
                "two-square scan over perfect numbers for p in {{{}}}",
                u32_list(two_square_scanned)
            )
            .unwrap();
        }
        StepDetail::M5 {
            xy_max,
            p,
            paper_h_interval,
            paper_h_width,
            strict_h_set,
            weak_h_set,
        } => {
            writeln!(out, "pairs scanned up to x, y = {xy_max}").unwrap();
            writeln!(
                out,
                "p = {p}: linearized window {}..={} (width {paper_h_width})",
                paper_h_interval.0, paper_h_interval.1
            )
            .unwrap();
            writeln!(out, "exact strict window: {{{}}}", u32_list(strict_h_set)).unwrap();
            writeln!(out, "exact weak window: {{{}}}", u32_list(weak_h_set)).unwrap();
        }
    }
    if !report.exceptions.is_empty() {
        let list = report
            .exceptions
            .iter()
            .map(witness_tuple)
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(out, "exceptions: {list}").unwrap();
    }
    writeln!(out, "verdict: {}", verdict_name(report.verdict)).unwrap();
    out
}

pub fn quality(t: &AbcTriple) -> String {
    let mut out = String::new();
    writeln!(out, "a = {}, b = {}, c = {}", t.a, t.b, t.c).unwrap();
    writeln!(out, "coprime: {}", if t.coprime { "yes" } else { "no" }).unwrap();
    match (&t.rad_abc, t.baker_holds) {
        (Some(rad), Some(holds)) => {
            writeln!(out, "rad(abc) = {rad}").unwrap();
            writeln!(
                out,
                "max(a,b,c)^4 < rad(abc)^7: {}",
                if holds { "holds" } else { "FAILS" }
            )
            .unwrap();
        }
        _ => writeln!(out, "no radical verdict: gcd(a, b) != 1").unwrap(),
    }
    out
}

fn status_name(s: StepStatus) -> &'static str {
    match s {
        StepStatus::Holds => "holds",
        StepStatus::Fails => "fails",
        StepStatus::NotApplicable => "n/a",
    }
}

fn chain_step_lines(out: &mut String, steps: &[ChainStep]) {
    for step in steps {
        write!(out, "  {:<6} {:<6} {}", step.id, status_name(step.status), step.instance).unwrap();
        match &step.note {
            Some(note) => writeln!(out, " [{note}]").unwrap(),
            None => writeln!(out).unwrap(),
        }
    }
}

fn conclusion_name(c: Conclusion) -> &'static str {
    match c {
        Conclusion::Consistent => "consistent",
        Conclusion::ContradictionFound => "contradiction found",
    }
}

pub fn chain(report: &ChainReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "chain at p = {}, m = {}, h = {}",
        report.p, report.m, report.h
    )
    .unwrap();
    writeln!(
        out,
        "forced window: {} <= h <= {} ({})",
        report.h_lower_bound,
        report.h_upper_bound,
        if report.interval_empty { "empty" } else { "non-empty" }
    )
    .unwrap();
    chain_step_lines(&mut out, &report.steps);
    if report.outside_stated_assumption {
        writeln!(out, "note: the argument assumes p > 3; this p is outside it").unwrap();
    }
    writeln!(out, "conclusion: {}", conclusion_name(report.conclusion)).unwrap();
    out
}

fn cond_line(out: &mut String, name: &str, holds: bool, meaning: &str) {
    writeln!(out, "  {name:<6} {:<5} {meaning}", if holds { "true" } else { "false" }).unwrap();
}

pub fn theorem(report: &TheoremReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "candidate x = {}, a = {} at p = {}, m = {}",
        report.x, report.a, report.p, report.m
    )
    .unwrap();
    cond_line(&mut out, "(zero)", report.cond_zero, "x^m + a^m equals the perfect number");
    cond_line(&mut out, "(a)", report.cond_a, "m > 29");
    cond_line(&mut out, "(b)", report.cond_b, "(x+a)^(m-2) <= x^m + a^m");
    cond_line(&mut out, "(c)", report.cond_c, "x and a both odd");
    cond_line(&mut out, "(d)", report.cond_d, "x + a is a power of two");
    cond_line(&mut out, "(e)", report.cond_e, "quotient matches (2^p - 1) 2^(p-1-h)");
    match report.h {
        Some(h) => writeln!(out, "h = {h}").unwrap(),
        None => writeln!(out, "h undefined: x + a is not a power of two").unwrap(),
    }
    writeln!(out, "gcd(x^m, a^m) = {}", report.gcd_xm_am).unwrap();
    writeln!(out, "chain:").unwrap();
    chain_step_lines(&mut out, &report.chain);
    writeln!(out, "conclusion: {}", conclusion_name(report.conclusion)).unwrap();
    out
}

pub fn search(report: &SearchReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "searched p in {:?}, m in {}..={}: {} cells",
        report.p_list, report.m_min, report.m_max, report.cells_scanned
    )
    .unwrap();
    if report.hits.is_empty() {
        writeln!(out, "no conditional counterexample").unwrap();
    } else {
        for hit in &report.hits {
            writeln!(
                out,
                "HIT: p = {}, m = {}, h = {}, x = {}, a = {}",
                hit.p, hit.m, hit.h, hit.x, hit.a
            )
            .unwrap();
        }
    }
    out
}

pub fn verify_all(criteria: &[CriterionReport]) -> String {
    let mut out = String::new();
    for c in criteria {
        writeln!(
            out,
            "criterion {} ({}): {} - {}",
            c.id,
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            c.detail
        )
        .unwrap();
    }
    let passed = criteria.iter().filter(|c| c.pass).count();
    writeln!(out, "{passed}/{} criteria pass", criteria.len()).unwrap();
    out
}
