//! End-to-end checks of the binary: exit codes, envelope shape, stream
//! formats, and thread invariance of the emitted bytes.

use std::process::{Command, Output};

fn perfnum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perfnum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn non_coprime_quality_is_a_usage_error() {
    let out = perfnum(&["abc", "quality", "--a", "2", "--b", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_str(&out).contains("coprime: no"));
}

#[test]
fn quality_verdict_appears_in_json_envelope() {
    let out = perfnum(&["--format", "json", "abc", "quality", "--a", "1", "--b", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("valid json");
    assert_eq!(v["schema"], "perfnum/1");
    assert_eq!(v["command"], "abc quality");
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["report"]["rad_abc"], "6");
    assert_eq!(v["report"]["baker_holds"], true);
}

#[test]
fn decide_reports_the_cube_split_of_28() {
    let out = perfnum(&[
        "powersum", "decide", "--perfect", "3", "--m", "3", "--method", "both",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("28 = 3^3 + 1^3"));
    assert!(text.contains("routes agree: yes"));
}

#[test]
fn final_equation_step_passes() {
    let out = perfnum(&["proof", "verify", "--step", "final-eq", "--q-max", "60"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_str(&out).contains("verdict: pass"));
}

#[test]
fn non_mersenne_exponent_is_a_usage_error() {
    let out = perfnum(&["perfect", "gen", "--p", "11"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn structured_route_rejects_even_m() {
    let out = perfnum(&[
        "powersum", "decide", "--n", "28", "--m", "2", "--method", "structured",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_input_is_a_usage_error() {
    let out = perfnum(&["powersum", "decide", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn factoring_budget_exhaustion_exits_3() {
    // Semiprime with 10^16-scale factors: trial division and the seeded
    // rho budget both run out before it splits.
    let out = perfnum(&[
        "powersum",
        "decide",
        "--n",
        "100000000000001300000000000004209",
        "--m",
        "3",
        "--method",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn json_envelope_round_trips_byte_identically() {
    let out = perfnum(&["--format", "json", "abc", "chain", "--p", "31", "--m", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let raw = stdout_str(&out);
    let parsed: serde_json::Value = serde_json::from_str(&raw).expect("valid json");
    let reprinted = format!(
        "{}\n",
        serde_json::to_string_pretty(&parsed).expect("serializable")
    );
    assert_eq!(raw, reprinted);
    assert_eq!(parsed["report"]["conclusion"], "contradiction_found");
    assert_eq!(parsed["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn enum_streams_parseable_records_in_order() {
    let out = perfnum(&["--format", "json", "powersum", "enum", "--m", "3", "--limit", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let mut previous = 0u64;
    let mut count = 0usize;
    for line in stdout_str(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("one record per line");
        let n: u64 = v["n"].as_str().unwrap().parse().unwrap();
        let x: u64 = v["x"].as_str().unwrap().parse().unwrap();
        let y: u64 = v["y"].as_str().unwrap().parse().unwrap();
        assert_eq!(v["m"], 3);
        assert_eq!(x.pow(3) + y.pow(3), n);
        assert!(n >= previous, "stream must be nondecreasing in n");
        previous = n;
        count += 1;
    }
    assert!(count > 10);
}

#[test]
fn scan_bytes_do_not_depend_on_thread_count() {
    let args = ["--format", "json", "powersum", "scan", "--p-list", "2,3,5,7,13", "--m-max", "5"];
    let single = perfnum(&["--threads", "1"].iter().chain(args.iter()).copied().collect::<Vec<_>>());
    let multi = perfnum(&["--threads", "2"].iter().chain(args.iter()).copied().collect::<Vec<_>>());
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(multi.status.code(), Some(0));
    assert_eq!(single.stdout, multi.stdout);
}

#[test]
fn mersenne_list_matches_the_certified_exponents() {
    let out = perfnum(&["--format", "json", "mersenne", "list", "--max-p", "127"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("valid json");
    assert_eq!(
        v["report"]["exponents"],
        serde_json::json!([2, 3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127])
    );
}

#[test]
fn search_finds_nothing_at_desk_scale() {
    let out = perfnum(&["abc", "search", "--p-list", "31", "--m-min", "31", "--m-max", "35"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_str(&out).contains("no conditional counterexample"));
}
