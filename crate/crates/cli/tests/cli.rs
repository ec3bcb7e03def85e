use std::ffi::OsString;

use descent_core::{Partition, Permutation};
use descent_forge::run_with_env;
use serde_json::Value;

struct Run {
    code: u8,
    out: String,
    err: String,
}

fn run_env(args: &[&str], cache: Option<OsString>) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("descent-forge").chain(args.iter().copied());
    let code = run_with_env(argv, cache, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn run(args: &[&str]) -> Run {
    run_env(args, None)
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let r = run(&full);
    assert_eq!(r.code, 0, "{}", r.err);
    serde_json::from_str(&r.out).unwrap()
}

fn perm_from_json(v: &Value) -> Permutation {
    let images: Vec<usize> = serde_json::from_value(v.clone()).unwrap();
    Permutation::from_one_line(&images).unwrap()
}

#[test]
fn min_rep_of_443() {
    let r = run(&["min-rep", "--type", "4,4,3"]);
    assert_eq!(r.code, 0);
    assert!(r.err.is_empty());
    assert!(r.out.contains("[7,10,11,1,2,3,4,5,6,8,9]"), "{}", r.out);
    assert!(r.out.lines().any(|l| l.split_whitespace().eq(["des", "1"])));

    let v = json(&["min-rep", "--type", "3,4,4"]);
    assert_eq!(v["type"], serde_json::json!([4, 4, 3]));
    assert_eq!(v["des"], 1);
    let p = perm_from_json(&v["permutation"]);
    assert_eq!(p.one_line(), vec![7, 10, 11, 1, 2, 3, 4, 5, 6, 8, 9]);
    assert_eq!(Permutation::parse_cycles(v["cycles"].as_str().unwrap(), None).unwrap(), p);
}

#[test]
fn unattainable_target_exits_one() {
    let r = run(&["realize", "--type", "3", "--target", "2"]);
    assert_eq!(r.code, 1);
    assert!(r.out.is_empty());
    assert_eq!(r.err, "error: value not attained, maximum is 1\n");
}

#[test]
fn eulerian_degree_one() {
    let r = run(&["eulerian", "--n", "1"]);
    assert_eq!((r.code, r.out.as_str()), (0, "1\n"));
    let v = json(&["eulerian", "--n", "4"]);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "11", "11", "1"]));
}

#[test]
fn big_values_are_decimal_strings() {
    let v = json(&["eulerian", "--n", "25"]);
    let coeffs = v["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 25);
    assert!(coeffs.iter().all(Value::is_string));
    let l = json(&["lyndon", "--n", "100"]);
    assert!(l["lyndon_count"].as_str().unwrap().len() > 20);
}

#[test]
fn realize_trace_is_consistent() {
    let v = json(&["realize", "--type", "3,3,2,2", "--target", "5", "--trace"]);
    let p = perm_from_json(&v["permutation"]);
    assert_eq!(p.des(), 5);
    assert_eq!(p.cycle_type(), "3,3,2,2".parse::<Partition>().unwrap());
    let trace = v["trace"].as_array().unwrap();
    assert_eq!(trace[0]["step"], "start");
    assert_eq!(perm_from_json(&trace.last().unwrap()["perm"]), p);
    for step in trace {
        assert_eq!(perm_from_json(&step["perm"]).des(), step["des"].as_u64().unwrap() as usize);
    }
}

#[test]
fn realize_is_deterministic() {
    let args = ["realize", "--type", "4,3,3", "--target", "6", "--trace", "--seed", "7", "--exhaustive-limit", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, 0, "{}", a.err);
    assert_eq!(a.out, b.out);
}

#[test]
fn printed_permutations_reparse_in_every_format() {
    let table = run(&["min-rep", "--type", "5,2"]);
    let line = table.out.lines().find(|l| l.starts_with("permutation")).unwrap();
    let p: Permutation = line.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert_eq!(p.cycle_type().to_string(), "5,2");

    let csv = run(&["min-rep", "--type", "5,2", "--format", "csv"]);
    let mut reader = csv::Reader::from_reader(csv.out.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["type", "permutation", "cycles", "des"]);
    let record = reader.records().next().unwrap().unwrap();
    assert_eq!(record[1].parse::<Permutation>().unwrap(), p);
    assert_eq!(Permutation::parse_cycles(&record[2], None).unwrap(), p);
}

#[test]
fn class_stats_formats() {
    let v = json(&["class-stats", "--type", "2,2"]);
    assert_eq!(v["counts"], serde_json::json!({"1": 1, "2": 1, "3": 1}));
    assert_eq!(v["contiguous"], true);

    let r = run(&["class-stats", "--n", "3", "--all", "--format", "csv"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines[0], "lambda,des,count,class_size,min_des,max_des,contiguous");
    assert_eq!(
        lines[1..],
        ["3,1,2,2,1,1,true", "\"2,1\",1,2,3,1,2,true", "\"2,1\",2,1,3,1,2,true", "\"1,1,1\",0,1,1,0,0,true",]
    );

    assert_eq!(run(&["class-stats"]).code, 2);
    assert_eq!(run(&["class-stats", "--n", "4"]).code, 2);
    assert_eq!(run(&["class-stats", "--type", "5,5"]).code, 2);
}

#[test]
fn class_stats_uses_cache_directory() {
    let flag_dir = tempfile::tempdir().unwrap();
    let env_dir = tempfile::tempdir().unwrap();
    let flag = flag_dir.path().to_str().unwrap();
    let env = Some(env_dir.path().as_os_str().to_owned());

    let r = run_env(&["class-stats", "--n", "4", "--all", "--cache-dir", flag], env);
    assert_eq!(r.code, 0);
    assert!(env_dir.path().join("classes_n4.json").exists());
    assert!(!flag_dir.path().join("classes_n4.json").exists());

    let first = run(&["class-stats", "--n", "4", "--all", "--cache-dir", flag]);
    let cached = run(&["class-stats", "--n", "4", "--all", "--cache-dir", flag]);
    assert!(flag_dir.path().join("classes_n4.json").exists());
    assert_eq!(first.out, cached.out);

    std::fs::write(flag_dir.path().join("classes_n4.json"), "{}").unwrap();
    let broken = run(&["class-stats", "--n", "4", "--all", "--cache-dir", flag]);
    assert_eq!(broken.code, 1);
    assert!(broken.err.starts_with("error:"));
}

#[test]
fn verify_exit_code_tracks_reports() {
    let r = run(&["verify", "--n", "4", "--checks", "all", "--threads", "2"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.err.is_empty());

    let r = run(&["verify", "--n", "5", "--checks", "step2,jump2_shape", "--format", "json"]);
    assert_eq!(r.code, 1);
    let reports: Value = serde_json::from_str(&r.out).unwrap();
    let passed: Vec<bool> = reports.as_array().unwrap().iter().map(|r| r["passed"].as_bool().unwrap()).collect();
    assert_eq!(passed, [true, false]);
    assert_eq!(reports[1]["counterexample"]["permutations"][0], serde_json::json!([3, 4, 5, 1, 2]));
    assert_eq!(r.err.lines().count(), 1);
    assert!(r.err.starts_with("error: check jump2_shape failed at n=5"));
}

#[test]
fn verify_csv_has_header() {
    let r = run(&["verify", "--n", "3", "--checks", "cdes_invariance,swap1", "--format", "csv"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let mut lines = r.out.lines();
    assert_eq!(lines.next(), Some("n,check_name,passed,cases_checked,counterexample"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn lyndon_verify() {
    let v = json(&["lyndon", "--n", "7", "--verify"]);
    assert_eq!(v["lyndon_count"], "18");
    assert_eq!(v["class_count"], "18");
    assert_eq!(v["matches"], true);
    assert_eq!(run(&["lyndon", "--n", "6"]).out, "9\n");
    assert_eq!(run(&["lyndon", "--n", "10", "--verify"]).code, 2);
    assert_eq!(run(&["lyndon", "--n", "1", "--verify"]).code, 2);
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    for args in [
        &["min-rep", "--type", "3,0"][..],
        &["min-rep"],
        &["realize", "--type", "3", "--target", "x"],
        &["verify", "--n", "4", "--checks", "nonsense"],
        &["verify", "--n", "8", "--checks", "step2"],
        &["eulerian", "--n", "3", "--format", "xml"],
        &["bogus"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.err);
        assert!(r.out.is_empty(), "{args:?}");
        assert_eq!(r.err.lines().count(), 1, "{args:?}: {}", r.err);
        assert!(r.err.starts_with("error:"), "{args:?}: {}", r.err);
    }
}

#[test]
fn identity_class() {
    let r = run(&["realize", "--type", "1,1,1", "--target", "0"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("[1,2,3]"));
    let r = run(&["min-rep", "--type", "1,1", "--format", "json"]);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["des"], 0);
}
