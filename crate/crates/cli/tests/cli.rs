use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn data(name: &str) -> PathBuf {
    crate_dir().join("data").join(name)
}

fn rr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rr"))
        .args(args)
        .env_remove("RR_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn rr_env(args: &[&str], key: &str, value: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rr"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn validate(schema: &str, value: &Value) {
    let text = std::fs::read_to_string(crate_dir().join("schemas").join(schema)).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(value)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}\n{value}");
}

fn strip_meta(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("meta");
    v
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .unwrap_or_else(|| x.to_string())
        })
        .collect()
}

#[test]
fn verify_passes_and_lists_suites() {
    let o = rr(&["verify", "--json"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v = json(&o);
    validate("verify.schema.json", &v);
    let suites = v["suites"].as_array().unwrap();
    assert!(suites.len() >= 7);
    assert!(suites.iter().all(|s| s["pass"] == true));
}

#[test]
fn injected_fault_names_the_euler_suite() {
    let o = rr(&["verify", "--inject-fault", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    validate("verify.schema.json", &v);
    let first = v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["pass"] == false)
        .unwrap();
    assert_eq!(first["name"], "euler_vs_bernoulli");
    assert!(String::from_utf8_lossy(&o.stderr).contains("euler_vs_bernoulli"));
}

#[test]
fn gti_tables() {
    let v = json(&rr(&["gti", "--delta", "1", "--lambda", "0", "--json"]));
    validate("gti.schema.json", &v);
    assert_eq!(strings(&v["tail"]), ["3/4", "-1/4"]);
    let v = json(&rr(&["gti", "--delta", "3", "--json"]));
    assert_eq!(strings(&v["tail"]), ["15/16", "-11/16", "5/16", "-1/16"]);
    let v = json(&rr(&["gti", "--delta", "0", "--lambda", "2", "--json"]));
    assert_eq!(v["prefix_signs"], serde_json::json!([1, -1]));
    assert_eq!(strings(&v["tail"]), ["1/2"]);
    let pretty = stdout(&rr(&["gti", "--delta", "1"]));
    assert!(pretty.contains("3/4 -1/4"), "{pretty}");
}

#[test]
fn number_tables() {
    let v = json(&rr(&["stirling", "--max", "3", "--json"]));
    validate("stirling.schema.json", &v);
    assert_eq!(strings(&v["rows"][3]), ["0", "2", "-3", "1"]);
    let v = json(&rr(&["euler-numbers", "--max", "3", "--json"]));
    validate("euler-numbers.schema.json", &v);
    assert_eq!(strings(&v["euler"]), ["1", "-1/2", "0", "1/4"]);
    let tsv = stdout(&rr(&["euler-numbers", "--max", "1", "--format", "tsv"]));
    assert_eq!(tsv, "j\tE\n0\t1\n1\t-1/2\n");
}

#[test]
fn hilbert_files() {
    for (file, chi, hp) in [
        ("curve_plain.ideal", 3, "m + 3"),
        ("plane.ideal", 1, ""),
        ("conic.ideal", 1, "2*m + 1"),
    ] {
        let path = data(file);
        let v = json(&rr(&["hilbert", path.to_str().unwrap(), "--json"]));
        validate("hilbert.schema.json", &v);
        assert_eq!(v["chi"], chi, "{file}");
        let pretty = stdout(&rr(&["hilbert", path.to_str().unwrap()]));
        assert!(pretty.contains(&format!("χ = {chi}")), "{pretty}");
        if !hp.is_empty() {
            assert!(
                pretty.contains(&format!("Hilbert polynomial: {hp}\n")),
                "{pretty}"
            );
        }
    }
    let lex = json(&rr(&[
        "hilbert",
        data("curve_plain.ideal").to_str().unwrap(),
        "--order",
        "lex",
        "--json",
    ]));
    assert_eq!(lex["chi"], 3);
}

#[test]
fn hilbert_parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ideal");
    std::fs::write(&bad, "char 5\nvars x y z\nx*z\nx**y\n").unwrap();
    let o = rr(&["hilbert", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("4:"),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn curve_example_end_to_end() {
    let o = rr(&[
        "diagonal-example",
        "--curve",
        "x*z, z^3",
        "--char",
        "5",
        "--max-n",
        "10",
        "--delta",
        "1",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    validate("diagonal.schema.json", &v);
    assert_eq!(
        v["chi"]["chi"],
        serde_json::json!([3, 5, 7, 7, 5, 0, -7, -16, -27, -40])
    );
    assert_eq!(
        strings(&v["gti"]["values"]),
        ["7/4", "2", "5/2", "5/2", "11/4", "3", "3", "3", "3"]
    );
    let st = &v["gti"]["stabilization"];
    assert_eq!(
        (st["lambda_star"].as_u64(), st["value"].as_str()),
        (Some(5), Some("3"))
    );
    assert_eq!(
        (st["matches_reference"].as_bool(), st["status"].as_str()),
        (Some(true), Some("empirical"))
    );
}

#[test]
fn smooth_oracle() {
    let v = json(&rr(&[
        "diagonal-example",
        "--p1p1",
        "--max-n",
        "6",
        "--json",
    ]));
    validate("diagonal.schema.json", &v);
    let expected: Vec<i64> = (1..=6).map(|n| n * (2 - n)).collect();
    assert_eq!(v["chi"]["chi"], serde_json::json!(expected));
    assert_eq!(v["gti"]["stabilization"]["lambda_star"], 0);
}

#[test]
fn imported_table_skips_groebner() {
    let path = data("curve_chi.json");
    let text = std::fs::read_to_string(&path).unwrap();
    validate(
        "chi-table.schema.json",
        &serde_json::from_str(&text).unwrap(),
    );
    let v = json(&rr(&[
        "diagonal-example",
        "--import",
        path.to_str().unwrap(),
        "--delta",
        "1",
        "--json",
    ]));
    validate("diagonal.schema.json", &v);
    assert_eq!(v["chi"]["provenance"], "imported");
    assert!(v["meta"].get("entries").is_none());
    assert_eq!(v["gti"]["stabilization"]["lambda_star"], 5);
    let via_pipeline = json(&rr(&["chi-pipeline", path.to_str().unwrap(), "--json"]));
    assert_eq!(strip_meta(via_pipeline)["gti"], v["gti"]);
}

#[test]
fn scenario_file_matches_flags() {
    let from_file = json(&rr(&[
        "chi-pipeline",
        data("curve.ideal").to_str().unwrap(),
        "--max-n",
        "4",
        "--json",
    ]));
    let from_flags = json(&rr(&[
        "diagonal-example",
        "--curve",
        "x*z,z^3",
        "--max-n",
        "4",
        "--json",
    ]));
    assert_eq!(strip_meta(from_file), strip_meta(from_flags));
    let via_flag = json(&rr(&[
        "diagonal-example",
        "--scenario",
        data("curve.ideal").to_str().unwrap(),
        "--max-n",
        "2",
        "--json",
    ]));
    assert_eq!(via_flag["chi"]["chi"], serde_json::json!([3, 5]));
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "diagonal-example",
        "--curve",
        "x*z, z^3",
        "--max-n",
        "5",
        "--cache-dir",
        d,
    ];
    for format in ["pretty", "tsv"] {
        let mut a = args.to_vec();
        a.extend(["--format", format]);
        let cold = rr(&a);
        let warm = rr(&a);
        assert_eq!(cold.stdout, warm.stdout, "{format}");
    }
    let mut a = args.to_vec();
    a.push("--json");
    let warm = json(&rr(&a));
    assert!(warm["meta"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["cached"] == true));
    let fresh = json(&rr(&[
        "diagonal-example",
        "--curve",
        "x*z, z^3",
        "--max-n",
        "5",
        "--json",
    ]));
    assert_eq!(strip_meta(warm).to_string(), strip_meta(fresh).to_string());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 5);
}

#[test]
fn cache_dir_from_environment_and_flag_precedence() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let base = [
        "diagonal-example",
        "--curve",
        "x*z, z^3",
        "--max-n",
        "2",
        "--json",
    ];
    let o = rr_env(&base, "RR_CACHE_DIR", env_dir.path());
    assert_eq!(
        json(&o)["meta"]["cache_dir"],
        env_dir.path().to_str().unwrap()
    );
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 2);
    let mut with_flag = base.to_vec();
    with_flag.extend(["--cache-dir", flag_dir.path().to_str().unwrap()]);
    let o = rr_env(&with_flag, "RR_CACHE_DIR", env_dir.path());
    assert_eq!(
        json(&o)["meta"]["cache_dir"],
        flag_dir.path().to_str().unwrap()
    );
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 2);
}

#[test]
fn budget_exhaustion_is_exit_three_with_partial_results() {
    let o = rr(&[
        "diagonal-example",
        "--curve",
        "x*z, z^3",
        "--max-n",
        "6",
        "--budget",
        "0.000001",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    validate("diagonal.schema.json", &v);
    assert_eq!(v["complete"], false);
    let got = v["chi"]["chi"].as_array().unwrap().len();
    assert_eq!(v["gap"]["n"].as_u64(), Some(got as u64 + 1));
}

#[test]
fn usage_errors_are_exit_two() {
    for args in [
        vec!["gti"],
        vec!["diagonal-example", "--p1p1", "--curve", "x*z"],
        vec!["diagonal-example", "--curve", "x*z", "--char", "2"],
        vec!["diagonal-example", "--curve", "x*z", "--char", "6"],
        vec!["diagonal-example", "--curve", "x*z", "--max-n", "0"],
        vec!["diagonal-example", "--curve", "x*z + y"],
        vec!["diagonal-example"],
        vec!["hilbert", "/nonexistent.ideal"],
        vec!["hilbert", "x.ideal", "--order", "deglex"],
        vec!["verify", "--bogus"],
    ] {
        let o = rr(&args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("chi.json");
    std::fs::write(&bad, r#"{"n_start": 2, "chi": [1]}"#).unwrap();
    assert_eq!(
        rr(&["chi-pipeline", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn short_table_reports_no_gti_values() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("chi.json");
    std::fs::write(&one, r#"{"n_start": 1, "chi": [1]}"#).unwrap();
    let o = rr(&["chi-pipeline", one.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    validate("diagonal.schema.json", &v);
    assert_eq!(v["gti"]["values"], serde_json::json!([]));
    assert!(stdout(&rr(&["chi-pipeline", one.to_str().unwrap()])).contains("needs χ up to n = 2"));
}
