mod common;

use genset::cli::{make_code, run, CodeFamily, CodeFamilySpec, RunOutcome};
use genset::erasure::min_max_distance;
use genset::gf2::BinMatrix;
use genset::verify::{is_good_set, GoodMethod, VectorSet};
use serde_json::Value;

fn genset(args: &[&str]) -> RunOutcome {
    run(std::iter::once("genset").chain(args.iter().copied()))
}

fn json(out: &RunOutcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn path(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

#[test]
fn families_have_documented_parameters() {
    let cases: &[(CodeFamily, &[usize], (usize, usize, usize))] = &[
        (CodeFamily::Hamming, &[3], (7, 4, 3)),
        (CodeFamily::Hamming, &[4], (15, 11, 3)),
        (CodeFamily::ExtendedHamming, &[3], (8, 4, 4)),
        (CodeFamily::Simplex, &[3], (7, 3, 4)),
        (CodeFamily::PuncturedSimplex, &[3], (6, 3, 3)),
        (CodeFamily::Repetition, &[3], (3, 1, 3)),
        (CodeFamily::SingleParity, &[5], (5, 4, 2)),
    ];
    for &(family, params, (n, k, d)) in cases {
        let code = make_code(&CodeFamilySpec::new(family, params)).unwrap();
        assert_eq!((code.n(), code.k()), (n, k), "{family:?}");
        let words = common::span_closure(code.generator().rows());
        assert_eq!(common::min_weight(&words), Some(d), "{family:?}");
        assert_eq!(min_max_distance(&code).unwrap().0, d);
    }
    assert!(make_code(&CodeFamilySpec::new(CodeFamily::Hamming, &[1])).is_err());
    assert!(make_code(&CodeFamilySpec::new(CodeFamily::Random, &[8, 4])).is_err());
    let spec: CodeFamilySpec = "random:8,4".parse().unwrap();
    assert_eq!(spec.to_string(), "random:8,4");
    assert!("golay:23".parse::<CodeFamilySpec>().is_err());
}

#[test]
fn punctured_simplex_columns_form_a_codimension_one_set() {
    let code = make_code(&CodeFamilySpec::new(CodeFamily::PuncturedSimplex, &[3])).unwrap();
    let cols = code.generator().columns();
    let a = VectorSet::new(3, cols).unwrap();
    assert_eq!(a.len(), 6);
    assert!(is_good_set(&a, 2, GoodMethod::Flats).unwrap().holds());
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = path(&dir, "good.txt");
    std::fs::write(&good, "100\n010\n110\n001\n101\n011\n").unwrap();
    let out = genset(&["verify", "--set", &good, "--property", "good", "--s", "2"]);
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    assert_eq!(json(&out)["results"]["holds"], true);

    let bad = path(&dir, "bad.txt");
    std::fs::write(&bad, "100\n010\n001\n").unwrap();
    let out = genset(&["verify", "--set", &bad, "--property", "good", "--s", "2"]);
    assert_eq!(out.exit_code, 1);
    let cert = &json(&out)["results"]["certificate"];
    assert_eq!(cert["kind"], "missed_flat");

    let out = genset(&["verify", "--set", &bad, "--property", "good"]);
    assert_eq!(out.exit_code, 2);
    let out = genset(&[
        "verify",
        "--set",
        &path(&dir, "missing.txt"),
        "--property",
        "good",
        "--s",
        "2",
    ]);
    assert_eq!(out.exit_code, 2);
    let out = genset(&[
        "verify",
        "--set",
        &bad,
        "--property",
        "good",
        "--s",
        "2",
        "--method",
        "nope",
    ]);
    assert_eq!(out.exit_code, 2);
    let out = genset(&[
        "--budget",
        "1",
        "verify",
        "--set",
        &bad,
        "--property",
        "generic",
        "--s",
        "2",
        "--method",
        "matrices",
    ]);
    assert_eq!(out.exit_code, 3);
}

#[test]
fn search_reports_exact_optimum() {
    let out = genset(&["search", "--kind", "good", "--r", "3", "--s", "2"]);
    assert_eq!(out.exit_code, 0);
    let v = json(&out);
    assert_eq!(v["results"]["size"], 6);
    assert_eq!(v["results"]["optimal"], true);
    let out = genset(&["search", "--kind", "good", "--r", "7", "--s", "3"]);
    assert_eq!(out.exit_code, 3);
}

#[test]
fn random_search_records_seed() {
    let a = genset(&[
        "--seed",
        "5",
        "search",
        "--kind",
        "generic",
        "--r",
        "4",
        "--s",
        "2",
        "--strategy",
        "random",
    ]);
    assert_eq!(a.exit_code, 0);
    assert_eq!(json(&a)["seed"], 5);
    let b = genset(&[
        "search",
        "--kind",
        "generic",
        "--r",
        "4",
        "--s",
        "2",
        "--strategy",
        "random",
    ]);
    assert_eq!(json(&b)["seed"], 20_240_601);
}

#[test]
fn reports_are_deterministic_apart_from_timings() {
    let args = [
        "--seed",
        "3",
        "simulate",
        "--code",
        "hamming:3",
        "--p",
        "0.2",
        "--trials",
        "500",
    ];
    let a = genset(&args);
    let b = genset(&args);
    assert_eq!(a.exit_code, 0);
    let (a, b) = (a.report.unwrap(), b.report.unwrap());
    assert_eq!(a.deterministic_json(), b.deterministic_json());
    assert!(!a.deterministic_json().contains("elapsed_ms"));
}

#[test]
fn construct_output_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = path(&dir, "g.txt");
    let out = genset(&[
        "construct",
        "--kind",
        "good",
        "--r",
        "5",
        "--s",
        "2",
        "--out",
        &out_path,
    ]);
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    let text = std::fs::read_to_string(&out_path).unwrap();
    let set = VectorSet::parse_text(&text).unwrap();
    assert_eq!(set.to_text(), text);
    let side: Value =
        serde_json::from_str(&std::fs::read_to_string(format!("{out_path}.json")).unwrap())
            .unwrap();
    assert_eq!(side["size"], set.len());
    assert_eq!(side["verified"], true);
    let out = genset(&[
        "verify",
        "--set",
        &out_path,
        "--property",
        "good",
        "--s",
        "2",
    ]);
    assert_eq!(out.exit_code, 0);

    let h_path = path(&dir, "h.txt");
    let out = genset(&[
        "construct",
        "--kind",
        "parity-check",
        "--code",
        "hamming:3",
        "--out",
        &h_path,
    ]);
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    let h = BinMatrix::parse_text(&std::fs::read_to_string(&h_path).unwrap()).unwrap();
    let out = genset(&["stopping", "--matrix", &h_path]);
    let v = json(&out);
    assert_eq!(v["results"]["stopping_distance"], 3);
    assert_eq!(v["results"]["rows"], h.nrows());
}

#[test]
fn bounds_table_flags_s_two_rows() {
    let out = genset(&["bounds", "table", "--kmax", "6", "--smax", "4"]);
    assert_eq!(out.exit_code, 0);
    let v = json(&out);
    let rows = v["results"]["rows"].as_array().unwrap();
    let flagged: Vec<u64> = rows
        .iter()
        .filter(|r| r["s"] == 2)
        .map(|r| r["flags"].as_array().unwrap().len() as u64)
        .collect();
    assert!(flagged.iter().all(|&n| n > 0));
    let text = genset(&[
        "--format", "text", "bounds", "table", "--kmax", "4", "--smax", "2",
    ]);
    assert!(text.stdout.lines().nth(1).unwrap().starts_with('k'));
}

#[test]
fn bounds_targets() {
    let out = genset(&["bounds", "--target", "G1", "--params", "k=4,s=2"]);
    let v = json(&out);
    let values = v["results"]["values"].as_array().unwrap();
    let threshold = values
        .iter()
        .find(|x| x["name"] == "G1.upper.random_threshold")
        .unwrap();
    assert!(threshold["value"].is_u64());
    let out = genset(&["bounds", "--target", "blocking", "--params", "q=2,k=4,s=2"]);
    assert_eq!(json(&out)["results"]["value"], 7);
    let out = genset(&[
        "bounds",
        "--target",
        "rho",
        "--code",
        "hamming:3",
        "--format",
        "csv",
    ]);
    assert!(out.stdout.starts_with("target,name,kind"));
    let out = genset(&["bounds", "--target", "F", "--params", "r=4"]);
    assert_eq!(out.exit_code, 2);
    let out = genset(&["bounds", "--target", "F", "--params", "r=4,s=x"]);
    assert_eq!(out.exit_code, 2);
}

#[test]
fn budget_env_and_flag_precedence() {
    // env var only read when --budget is absent; exercised in one test to
    // avoid racing other tests on the environment
    std::env::set_var("GENSET_BUDGET", "2");
    let env_only = genset(&["search", "--kind", "good", "--r", "4", "--s", "2"]);
    let flag = genset(&[
        "--budget",
        "100000000",
        "search",
        "--kind",
        "good",
        "--r",
        "4",
        "--s",
        "2",
    ]);
    std::env::set_var("GENSET_BUDGET", "lots");
    let bad = genset(&["search", "--kind", "good", "--r", "3", "--s", "2"]);
    std::env::remove_var("GENSET_BUDGET");
    assert_eq!(env_only.exit_code, 3);
    assert_eq!(flag.exit_code, 0);
    assert_eq!(bad.exit_code, 2);
}

#[test]
fn simulate_with_generic_set_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let set = path(&dir, "a.txt");
    std::fs::write(&set, "100\n010\n001\n").unwrap();
    let out = genset(&[
        "--format",
        "csv",
        "simulate",
        "--code",
        "hamming:3",
        "--p",
        "0.1",
        "--trials",
        "200",
        "--set",
        &set,
    ]);
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_bytes());
    let names: Vec<String> = rdr.records().map(|r| r.unwrap()[4].to_string()).collect();
    assert_eq!(
        names,
        vec!["parity-check", "greedy-parity-check", "generic-set"]
    );
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(genset(&["--help"]).exit_code, 0);
    assert_eq!(genset(&["--version"]).exit_code, 0);
    assert_eq!(genset(&["frobnicate"]).exit_code, 2);
}
