//! Command-line front end. Every subcommand computes a report through the
//! library, prints it as text or as a versioned JSON envelope, and exits
//! 0 (pass / expected findings), 1 (unexpected exception or
//! counterexample), 2 (usage), or 3 (budget exhausted).
//!
//! JSON goes through a sorted-key value tree, so identical inputs print
//! identical bytes regardless of worker count; wall time is reported on
//! standard error only.

mod render;
mod suite;

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use perfnum::abc;
use perfnum::bigmath::{self, nat, BigmathError, FactorBudget, Natural};
use perfnum::mersenne;
use perfnum::powersum::{self, PowersumError, ScanOptions};
use perfnum::proofcheck::{self, ProofCheckError, Verdict as StepVerdict};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "perfnum",
    version,
    about = "Exact desk-scale checks on even perfect numbers as sums of two m-th powers"
)]
struct Cli {
    /// Report format on standard output
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for scans and searches; never changes report bytes
    #[arg(long, global = true, env = "PERFNUM_THREADS", default_value_t = 1)]
    threads: usize,

    /// Seed for the randomized factoring method
    #[arg(long, global = true, default_value_t = bigmath::DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Certified Mersenne prime exponents
    Mersenne {
        #[command(subcommand)]
        cmd: MersenneCmd,
    },
    /// Even perfect numbers
    Perfect {
        #[command(subcommand)]
        cmd: PerfectCmd,
    },
    /// Sums of two m-th powers
    Powersum {
        #[command(subcommand)]
        cmd: PowersumCmd,
    },
    /// Individual argument steps
    Proof {
        #[command(subcommand)]
        cmd: ProofCmd,
    },
    /// Explicit abc inequality and the exponent chain built on it
    Abc {
        #[command(subcommand)]
        cmd: AbcCmd,
    },
    /// Run every desk-scale check and report one verdict per criterion
    VerifyAll {
        /// Desk-scale profile (the only one available)
        #[arg(long, required = true)]
        desk_scale: bool,
    },
}

#[derive(Subcommand)]
enum MersenneCmd {
    /// List p <= max-p with 2^p - 1 prime, certified by Lucas-Lehmer
    List {
        #[arg(long)]
        max_p: u32,
    },
}

#[derive(Subcommand)]
enum PerfectCmd {
    /// Construct 2^(p-1) (2^p - 1) after certifying the exponent
    Gen {
        #[arg(long)]
        p: u32,
    },
}

#[derive(Subcommand)]
enum PowersumCmd {
    /// Decide whether n = x^m + y^m has a solution with x >= y >= 1
    Decide {
        /// Decimal n; alternative to --perfect
        #[arg(long, value_parser = parse_natural, conflicts_with = "perfect",
              required_unless_present = "perfect")]
        n: Option<Natural>,
        /// Take n as the even perfect number for this exponent
        #[arg(long)]
        perfect: Option<u32>,
        #[arg(long)]
        m: u32,
        /// Decision route; defaults to both for odd m, naive for even m
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Scan every (p, m) cell for representations of perfect numbers
    Scan {
        /// Comma-separated Mersenne exponents
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<u32>,
        #[arg(long)]
        m_max: u32,
        /// Cap on p for exhaustive even-m scans; larger cells are skipped
        #[arg(long, default_value_t = 31)]
        even_m_max_p: u32,
    },
    /// Stream every x^m + y^m <= limit in nondecreasing order, one record
    /// per line
    Enum {
        #[arg(long)]
        m: u32,
        /// Decimal inclusive bound
        #[arg(long, value_parser = parse_natural)]
        limit: Natural,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Naive,
    Structured,
    Both,
}

#[derive(Subcommand)]
enum ProofCmd {
    /// Check one step against its stated domain
    Verify {
        #[arg(long, value_enum)]
        step: StepName,
        /// Upper end of the verified range for the growth step
        #[arg(long, value_parser = parse_natural)]
        bound: Option<Natural>,
        /// Largest exponent q for the power-of-two equation step
        #[arg(long)]
        q_max: Option<u32>,
        /// Mersenne exponent for the window and m5 steps
        #[arg(long)]
        p: Option<u32>,
        /// Exponents for the residue step
        #[arg(long, value_delimiter = ',')]
        p_list: Option<Vec<u32>>,
        /// Pair scan bound for the m5 step
        #[arg(long)]
        xy_max: Option<u64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StepName {
    #[value(name = "case1-ellipse")]
    Case1Ellipse,
    #[value(name = "case2")]
    Case2,
    #[value(name = "h-window")]
    HWindow,
    #[value(name = "final-eq")]
    FinalEq,
    #[value(name = "squares-mod4")]
    SquaresMod4,
    #[value(name = "m5-bounds")]
    M5Bounds,
}

#[derive(Subcommand)]
enum AbcCmd {
    /// Evaluate max(a,b,c)^4 < rad(abc)^7 for a + b = c
    Quality {
        #[arg(long, value_parser = parse_natural)]
        a: Natural,
        #[arg(long, value_parser = parse_natural)]
        b: Natural,
    },
    /// Evaluate the theorem's conditions at (p, m), optionally at a
    /// concrete candidate split x, a
    Theorem {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_parser = parse_natural, requires = "a")]
        x: Option<Natural>,
        #[arg(long, value_parser = parse_natural, requires = "x")]
        a: Option<Natural>,
    },
    /// Evaluate the exponent chain at (p, m) and a choice of h
    Chain {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        /// Defaults to the chain's own lower bound for h
        #[arg(long)]
        h: Option<u32>,
    },
    /// Search all power-of-two splits for conditional counterexamples
    Search {
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<u32>,
        #[arg(long, default_value_t = 30)]
        m_min: u32,
        #[arg(long, default_value_t = 200)]
        m_max: u32,
    },
}

fn parse_natural(s: &str) -> Result<Natural, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err("expected a plain decimal integer".to_string());
    }
    Natural::parse_bytes(s.as_bytes(), 10).ok_or_else(|| "expected a decimal integer".to_string())
}

enum Failure {
    Usage(String),
    Resource(String),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn from_bigmath(e: BigmathError) -> Failure {
    match e {
        BigmathError::IncompleteFactorization { .. } => Failure::Resource(e.to_string()),
        BigmathError::ZeroValuation => Failure::Usage(e.to_string()),
    }
}

fn from_powersum(e: PowersumError) -> Failure {
    match e {
        PowersumError::Math(inner) => from_bigmath(inner),
        other => Failure::Usage(other.to_string()),
    }
}

fn from_proofcheck(e: ProofCheckError) -> Failure {
    Failure::Usage(e.to_string())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RunVerdict {
    Pass,
    Fail,
    PreconditionFailed,
}

impl RunVerdict {
    fn as_str(self) -> &'static str {
        match self {
            RunVerdict::Pass => "pass",
            RunVerdict::Fail => "fail",
            RunVerdict::PreconditionFailed => "precondition-failed",
        }
    }

    fn exit_code(self) -> i32 {
        match self {
            RunVerdict::Pass => 0,
            RunVerdict::Fail => 1,
            RunVerdict::PreconditionFailed => 2,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    };
    eprintln!("elapsed: {} ms", started.elapsed().as_millis());
    std::process::exit(code);
}

/// Print the finished report and map the verdict to an exit code. JSON
/// passes through a sorted-key tree so the envelope bytes depend only on
/// the declared inputs.
fn emit(
    cli: &Cli,
    command: &str,
    params: Value,
    verdict: RunVerdict,
    report: Value,
    text: String,
) -> i32 {
    match cli.format {
        Format::Json => {
            let envelope = json!({
                "schema": "perfnum/1",
                "command": command,
                "params": params,
                "version": env!("CARGO_PKG_VERSION"),
                "verdict": verdict.as_str(),
                "report": report,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&envelope).expect("reports serialize")
            );
        }
        Format::Text => print!("{text}"),
    }
    verdict.exit_code()
}

fn to_value<T: serde::Serialize>(report: &T) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

fn run(cli: &Cli) -> Result<i32, Failure> {
    if cli.threads == 0 {
        return Err(usage("threads must be at least 1"));
    }
    match &cli.command {
        Command::Mersenne {
            cmd: MersenneCmd::List { max_p },
        } => cmd_mersenne_list(cli, *max_p),
        Command::Perfect {
            cmd: PerfectCmd::Gen { p },
        } => cmd_perfect_gen(cli, *p),
        Command::Powersum { cmd } => match cmd {
            PowersumCmd::Decide {
                n,
                perfect,
                m,
                method,
            } => cmd_decide(cli, n.clone(), *perfect, *m, *method),
            PowersumCmd::Scan {
                p_list,
                m_max,
                even_m_max_p,
            } => cmd_scan(cli, p_list, *m_max, *even_m_max_p),
            PowersumCmd::Enum { m, limit } => cmd_enum(cli, *m, limit),
        },
        Command::Proof {
            cmd:
                ProofCmd::Verify {
                    step,
                    bound,
                    q_max,
                    p,
                    p_list,
                    xy_max,
                },
        } => cmd_proof(cli, *step, bound.clone(), *q_max, *p, p_list.clone(), *xy_max),
        Command::Abc { cmd } => match cmd {
            AbcCmd::Quality { a, b } => cmd_quality(cli, a, b),
            AbcCmd::Theorem { p, m, x, a } => cmd_theorem(cli, *p, *m, x.clone(), a.clone()),
            AbcCmd::Chain { p, m, h } => cmd_chain(cli, *p, *m, *h),
            AbcCmd::Search {
                p_list,
                m_min,
                m_max,
            } => cmd_search(cli, p_list, *m_min, *m_max),
        },
        Command::VerifyAll { .. } => cmd_verify_all(cli),
    }
}

fn cmd_mersenne_list(cli: &Cli, max_p: u32) -> Result<i32, Failure> {
    let exponents = mersenne::list_exponents(max_p, cli.threads);
    let report = json!({ "max_p": max_p, "exponents": exponents });
    let text = render::mersenne_list(max_p, &exponents);
    Ok(emit(
        cli,
        "mersenne list",
        json!({ "max_p": max_p }),
        RunVerdict::Pass,
        report,
        text,
    ))
}

fn cmd_perfect_gen(cli: &Cli, p: u32) -> Result<i32, Failure> {
    let pn = mersenne::even_perfect(p).map_err(|e| usage(e.to_string()))?;
    let text = render::perfect(&pn);
    Ok(emit(
        cli,
        "perfect gen",
        json!({ "p": p }),
        RunVerdict::Pass,
        to_value(&pn),
        text,
    ))
}

fn cmd_decide(
    cli: &Cli,
    n: Option<Natural>,
    perfect: Option<u32>,
    m: u32,
    method: Option<Method>,
) -> Result<i32, Failure> {
    if m < 2 {
        return Err(usage("m must be at least 2"));
    }
    let method = method.unwrap_or(if m % 2 == 1 { Method::Both } else { Method::Naive });
    if m % 2 == 0 && method != Method::Naive {
        return Err(usage(format!(
            "the structured route needs odd m, got {m}; use --method naive"
        )));
    }
    let pn = perfect
        .map(|p| mersenne::even_perfect(p).map_err(|e| usage(e.to_string())))
        .transpose()?;
    let n = match (&pn, n) {
        (Some(pn), _) => pn.n().clone(),
        (None, Some(n)) => {
            if n < nat(2) {
                return Err(usage("n must be at least 2"));
            }
            n
        }
        (None, None) => unreachable!("clap enforces one of --n / --perfect"),
    };

    let naive = matches!(method, Method::Naive | Method::Both)
        .then(|| powersum::decide_naive(&n, m));
    let structured = match method {
        Method::Naive => None,
        Method::Structured | Method::Both => Some(match &pn {
            Some(pn) => powersum::decide_structured(pn, m).map_err(from_powersum)?,
            None => match mersenne::recognize_even_perfect(&n) {
                Some(pn) => powersum::decide_structured(&pn, m).map_err(from_powersum)?,
                None => {
                    let budget = FactorBudget::with_seed(cli.seed);
                    powersum::decide_divisor(&n, m, &budget).map_err(from_powersum)?
                }
            },
        }),
    };
    let routes_agree = match (&naive, &structured) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let verdict = if routes_agree == Some(false) {
        RunVerdict::Fail
    } else {
        RunVerdict::Pass
    };

    let method_name = match method {
        Method::Naive => "naive",
        Method::Structured => "structured",
        Method::Both => "both",
    };
    let mut params = json!({
        "m": m,
        "method": method_name,
        "n": n.to_str_radix(10),
    });
    if let Some(p) = perfect {
        params["perfect"] = json!(p);
    }
    let report = json!({
        "n": n.to_str_radix(10),
        "m": m,
        "method": method_name,
        "naive": naive.as_ref().map(to_value),
        "structured": structured.as_ref().map(to_value),
        "routes_agree": routes_agree,
    });
    let text = render::decide(
        &n,
        m,
        perfect,
        naive.as_deref(),
        structured.as_deref(),
        routes_agree,
    );
    Ok(emit(cli, "powersum decide", params, verdict, report, text))
}

fn cmd_scan(cli: &Cli, p_list: &[u32], m_max: u32, even_m_max_p: u32) -> Result<i32, Failure> {
    if p_list.is_empty() {
        return Err(usage("p-list must not be empty"));
    }
    if m_max < 2 {
        return Err(usage("m-max must be at least 2"));
    }
    let opts = ScanOptions {
        even_m_max_p,
        workers: cli.threads,
    };
    let report = powersum::scan_conjecture(p_list, m_max, &opts).map_err(from_powersum)?;
    let verdict = if report.findings.iter().all(suite::finding_is_expected) {
        RunVerdict::Pass
    } else {
        RunVerdict::Fail
    };
    let params = json!({
        "even_m_max_p": even_m_max_p,
        "m_max": m_max,
        "p_list": p_list,
    });
    let text = render::scan(&report);
    Ok(emit(
        cli,
        "powersum scan",
        params,
        verdict,
        to_value(&report),
        text,
    ))
}

fn cmd_enum(cli: &Cli, m: u32, limit: &Natural) -> Result<i32, Failure> {
    if m < 2 {
        return Err(usage("m must be at least 2"));
    }
    if *limit < nat(2) {
        return Err(usage("limit must be at least 2"));
    }
    for rep in powersum::enumerate(m, limit) {
        match cli.format {
            Format::Json => {
                let line = json!({
                    "m": m,
                    "n": rep.n().to_str_radix(10),
                    "x": rep.x().to_str_radix(10),
                    "y": rep.y().to_str_radix(10),
                });
                println!("{line}");
            }
            Format::Text => println!("{}", render::representation(&rep)),
        }
    }
    Ok(0)
}

fn cmd_proof(
    cli: &Cli,
    step: StepName,
    bound: Option<Natural>,
    q_max: Option<u32>,
    p: Option<u32>,
    p_list: Option<Vec<u32>>,
    xy_max: Option<u64>,
) -> Result<i32, Failure> {
    let mut params = json!({});
    let report = match step {
        StepName::Case1Ellipse => {
            params = json!({ "step": "case1-ellipse" });
            proofcheck::check_case1_ellipse().map_err(from_proofcheck)?
        }
        StepName::Case2 => {
            let bound = bound.unwrap_or_else(|| nat(10_000));
            let s_max = u64::try_from(&bound)
                .map_err(|_| usage("bound exceeds the desk-scale range (u64)"))?;
            params = json!({ "step": "case2", "bound": s_max.to_string() });
            proofcheck::check_case2_contradiction(s_max).map_err(from_proofcheck)?
        }
        StepName::HWindow => {
            let p = p.ok_or_else(|| usage("--p is required for the window step"))?;
            params = json!({ "step": "h-window", "p": p });
            proofcheck::check_h_window(p).map_err(from_proofcheck)?
        }
        StepName::FinalEq => {
            let q_max = q_max.unwrap_or(60);
            params = json!({ "step": "final-eq", "q_max": q_max });
            proofcheck::check_final_equation(q_max).map_err(from_proofcheck)?
        }
        StepName::SquaresMod4 => {
            let p_list = p_list.unwrap_or_else(|| vec![2, 3, 5, 7, 13]);
            if p_list.is_empty() {
                return Err(usage("p-list must not be empty"));
            }
            params = json!({ "step": "squares-mod4", "p_list": p_list });
            proofcheck::check_squares_mod4(&p_list).map_err(from_proofcheck)?
        }
        StepName::M5Bounds => {
            let xy_max = xy_max.unwrap_or(100);
            if !(2..=1_000_000).contains(&xy_max) {
                return Err(usage("xy-max must lie in 2..=1000000"));
            }
            let p = p.unwrap_or(31);
            params = json!({ "step": "m5-bounds", "p": p, "xy_max": xy_max });
            proofcheck::check_m5_bounds(xy_max, p).map_err(from_proofcheck)?
        }
    };
    let verdict = if report.verdict == StepVerdict::Fail {
        RunVerdict::Fail
    } else {
        RunVerdict::Pass
    };
    let text = render::proof_step(&report);
    Ok(emit(
        cli,
        "proof verify",
        params,
        verdict,
        to_value(&report),
        text,
    ))
}

fn cmd_quality(cli: &Cli, a: &Natural, b: &Natural) -> Result<i32, Failure> {
    if a.is_zero() || b.is_zero() {
        return Err(usage("a and b must be at least 1"));
    }
    let budget = FactorBudget::with_seed(cli.seed);
    let triple = abc::triple_with(a, b, &budget).map_err(from_bigmath)?;
    let verdict = if !triple.coprime {
        RunVerdict::PreconditionFailed
    } else if triple.baker_holds == Some(true) {
        RunVerdict::Pass
    } else {
        RunVerdict::Fail
    };
    let params = json!({
        "a": a.to_str_radix(10),
        "b": b.to_str_radix(10),
        "seed": cli.seed,
    });
    let text = render::quality(&triple);
    Ok(emit(
        cli,
        "abc quality",
        params,
        verdict,
        to_value(&triple),
        text,
    ))
}

fn cmd_theorem(
    cli: &Cli,
    p: u32,
    m: u32,
    x: Option<Natural>,
    a: Option<Natural>,
) -> Result<i32, Failure> {
    if !(2..=4096).contains(&m) {
        return Err(usage("m must lie in 2..=4096"));
    }
    match (x, a) {
        (Some(x), Some(a)) => {
            if x.is_zero() || a.is_zero() {
                return Err(usage("x and a must be at least 1"));
            }
            if x.bits() > 4096 || a.bits() > 4096 {
                return Err(usage("x and a must fit in 4096 bits at desk scale"));
            }
            let report = abc::theorem_conditions(p, m, &x, &a).map_err(|e| usage(e.to_string()))?;
            let all_conditions_hold = report.cond_zero
                && report.cond_a
                && report.cond_b
                && report.cond_c
                && report.cond_d
                && report.cond_e;
            let verdict = if all_conditions_hold {
                RunVerdict::Fail
            } else {
                RunVerdict::Pass
            };
            let params = json!({
                "p": p,
                "m": m,
                "x": x.to_str_radix(10),
                "a": a.to_str_radix(10),
            });
            let text = render::theorem(&report);
            Ok(emit(cli, "abc theorem", params, verdict, to_value(&report), text))
        }
        (None, None) => {
            // Without a candidate split the theorem at (p, m) is decided
            // by the chain alone; evaluate it at the window's lower edge.
            let (lower, _) = abc::h_window(p.max(2), m);
            let h = lower.max(1);
            let report = chain_report(p, m, h)?;
            let verdict = chain_verdict(&report);
            let params = json!({ "p": p, "m": m });
            let text = render::chain(&report);
            Ok(emit(cli, "abc theorem", params, verdict, to_value(&report), text))
        }
        _ => unreachable!("clap ties --x and --a together"),
    }
}

fn chain_report(p: u32, m: u32, h: u32) -> Result<abc::ChainReport, Failure> {
    if !(2..=4096).contains(&m) {
        return Err(usage("m must lie in 2..=4096"));
    }
    if !(1..=4096).contains(&h) {
        return Err(usage("h must lie in 1..=4096"));
    }
    abc::verify_chain(p, m, h).map_err(|e| usage(e.to_string()))
}

/// A chain that stays consistent where the argument proves emptiness is a
/// counterexample; everything else is the expected outcome.
fn chain_verdict(report: &abc::ChainReport) -> RunVerdict {
    if report.m > 29 && report.conclusion == abc::Conclusion::Consistent {
        RunVerdict::Fail
    } else {
        RunVerdict::Pass
    }
}

fn cmd_chain(cli: &Cli, p: u32, m: u32, h: Option<u32>) -> Result<i32, Failure> {
    if !(2..=4096).contains(&m) {
        return Err(usage("m must lie in 2..=4096"));
    }
    let h = h.unwrap_or_else(|| {
        let (lower, _) = abc::h_window(p.max(2), m);
        lower.max(1)
    });
    let report = chain_report(p, m, h)?;
    let verdict = chain_verdict(&report);
    let params = json!({ "p": p, "m": m, "h": h });
    let text = render::chain(&report);
    Ok(emit(cli, "abc chain", params, verdict, to_value(&report), text))
}

fn cmd_search(cli: &Cli, p_list: &[u32], m_min: u32, m_max: u32) -> Result<i32, Failure> {
    if p_list.is_empty() {
        return Err(usage("p-list must not be empty"));
    }
    if m_min <= 29 {
        return Err(usage("the search targets m > 29; lower m is settled by scan"));
    }
    if m_max < m_min || m_max > 4096 {
        return Err(usage("m-max must lie in m-min..=4096"));
    }
    let budget = abc::SearchBudget {
        m_max,
        workers: cli.threads,
    };
    let report = abc::search_conditional_counterexample(p_list, m_min, &budget)
        .map_err(|e| usage(e.to_string()))?;
    let verdict = if report.hits.is_empty() {
        RunVerdict::Pass
    } else {
        RunVerdict::Fail
    };
    let params = json!({ "m_max": m_max, "m_min": m_min, "p_list": p_list });
    let text = render::search(&report);
    Ok(emit(cli, "abc search", params, verdict, to_value(&report), text))
}

fn cmd_verify_all(cli: &Cli) -> Result<i32, Failure> {
    let criteria = suite::run_all(cli.threads, cli.seed);
    let passed = criteria.iter().filter(|c| c.pass).count();
    let verdict = if passed == criteria.len() {
        RunVerdict::Pass
    } else {
        RunVerdict::Fail
    };
    let report = json!({
        "criteria": to_value(&criteria),
        "passed": passed,
        "total": criteria.len(),
    });
    let params = json!({ "desk_scale": true, "seed": cli.seed });
    let text = render::verify_all(&criteria);
    Ok(emit(cli, "verify-all", params, verdict, report, text))
}
