use std::path::{Path, PathBuf};
use std::process::Command;

use ears_cli::Report;
use serde_json::Value;

fn specs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("specs")
}

fn ears(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ears")).current_dir(specs()).args(args).output().expect("runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

fn report(args: &[&str]) -> (i32, Report) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = ears(&full);
    let r: Report = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, r)
}

/// Report with the timing field cleared, pretty printed.
fn frozen(mut r: Report) -> String {
    r.elapsed_ms = 0;
    serde_json::to_string_pretty(&r).unwrap() + "\n"
}

fn golden(name: &str, r: Report) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let text = frozen(r);
    if std::env::var_os("EARS_BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}; rerun with EARS_BLESS=1", path.display()));
    assert_eq!(text, want, "{name}");
}

#[test]
fn axioms_pass_on_elliptic_a1() {
    let (code, out, _) = ears(&["axioms", "a1-ind0.json", "--box", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("definitions agree: true"));
}

#[test]
fn canonical_base_is_cardinality_minimal() {
    let (code, r) = report(&["classify", "a1-ind0.json", "canonical"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["m_c"]["Yes"].as_str().map(|s| !s.is_empty()), Some(true));
    assert_eq!(r.system.as_ref().unwrap()["ind"], 0);
    golden("classify_a1_ind0.json", r);
}

#[test]
fn build_report_is_stable() {
    let (code, a) = report(&["build", "b3-nu2-t1.json"]);
    assert_eq!(code, 0);
    let (_, b) = report(&["build", "b3-nu2-t1.json"]);
    assert_eq!(frozen(a.clone()), frozen(b));
    let round: Report = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
    assert_eq!(round, a);
    assert_eq!(a.result["expected_cardinality"]["total"], 5);
    golden("build_b3_nu2_t1.json", a);
}

#[test]
fn lie_dims_on_listed_roots() {
    let (code, r) = report(&["lie", "dims", "a1-ind0.json", "--maxlen", "5"]);
    assert_eq!(code, 0);
    let dims = r.result["dims"].as_object().unwrap();
    for w in ["a1", "-a1+s1", "-a1+s2", "a1-s1+2s2", "-a1+2s1", "a1-2s1"] {
        assert_eq!(dims[w], 1, "{w}");
    }
    assert_eq!(dims["2a1"], 0);
    assert_eq!(dims["-a1+s1+s2"], 0);
    assert_eq!(dims["a1-s1+s2"], 0);
}

#[test]
fn weyl_word_identity() {
    let (code, out, _) = ears(&["weyl", "eval", "a1-nu3.json", "--word", "a1-nu3-word.json", "--reflection=-a1+s1+s2+s3"]);
    assert_eq!(code, 0);
    assert!(out.contains("equal: true"));
    let (code, _, _) = ears(&["weyl", "eval", "a1-nu3.json", "--word", "a1,-a1+s1", "--reflection", "a1"]);
    assert_eq!(code, 1);
}

#[test]
fn weyl_cpair_and_reduced() {
    let (code, r) = report(&["weyl", "cpair", "b3-nu2-t1.json", "--alpha", "a3", "--sigma", "2,-3"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["k_alpha"], 2);
    let (code, r) = report(&["weyl", "reduced", "b3-nu2-t1.json", "--random", "4", "--seed", "11"]);
    assert_eq!(code, 0);
    assert_eq!(r.seed, 11);
    assert_eq!(r.result.as_array().unwrap().len(), 4);
    let (_, again) = report(&["weyl", "reduced", "b3-nu2-t1.json", "--random", "4", "--seed", "11"]);
    assert_eq!(frozen(r), frozen(again));
    let single = r#"[{"eps":1,"long":false,"eta":[1,1]}]"#;
    let (code, _, err) = ears(&["weyl", "reduced", "a1-ind0.json", "--collection", single]);
    assert_eq!(code, 2);
    assert!(err.contains("a1+s1+s2 is not a root"));
    let balanced = r#"[{"eps":1,"long":false,"eta":[2,1]},{"eps":-1,"long":false,"eta":[1,2]}]"#;
    let (code, r) = report(&["weyl", "reduced", "a1-ind0.json", "--collection", balanced]);
    assert_eq!(code, 0);
    assert_eq!(r.result[0]["reduced"], true);
}

#[test]
fn weyl_search_finds_witness() {
    let gens = "a1,-a1+s1,-a1+s2,-a1+s3,-a1+s1+s2,-a1+s1+s3,-a1+s2+s3";
    let (code, r) = report(&["weyl", "search", "a1-nu3.json", "--target=-a1+s1+s2+s3", "--gens", gens, "--maxlen", "7"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["result"]["Found"].as_array().unwrap().len(), 7);
}

#[test]
fn base_verdicts_set_exit_codes() {
    let (code, _, _) = ears(&["base", "a2-nu2.json", "a2-five.json"]);
    assert_eq!(code, 0);
    let (code, _, _) = ears(&["base", "a2-nu2.json", "a1,a2,a1+2s1,a2+s2"]);
    assert_eq!(code, 1);
    let (code, _, err) = ears(&["base", "a2-nu2.json", "a1,a3"]);
    assert_eq!(code, 2);
    assert!(err.contains("a3"));
    let (code, _, _) = ears(&["build", r#"{"type":"Q","rank":1,"nu":1}"#]);
    assert_eq!(code, 2);
    let (code, _, _) = ears(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn member_reports_classes() {
    let (_, r) = report(&["member", "a1-ind0.json", "--root=-a1+s1+s2", "--root", "2s1", "--root", "a1+3s2"]);
    let m: Vec<&Value> = r.result.as_array().unwrap().iter().map(|x| &x["membership"]).collect();
    assert_eq!(m, [&Value::from("NotARoot"), &Value::from("Isotropic"), &serde_json::json!({"Nonisotropic": "Short"})]);
}

#[test]
fn tables_filter_and_write() {
    let dir = std::env::temp_dir().join(format!("ears-golden-{}", std::process::id()));
    let d = dir.to_string_lossy().into_owned();
    let (code, r) = report(&["tables", "table4", "--type", "C3", "--nu", "2", "--t", "0", "--write-golden", &d]);
    assert_eq!(code, 0);
    let rows = r.result[0]["rows"].as_array().unwrap();
    assert!(rows.iter().any(|x| x["ind_R"] == 1 && x["size"] == 6));
    let written = std::fs::read_to_string(dir.join("table4.json")).unwrap();
    assert_eq!(written, include_str!("../../core/data/table4.json"));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn lie_cartan_and_mic1() {
    let (code, r) = report(&["lie", "cartan", "a1-ind0.json"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["cartan_dim"], 5);
    let (code, r) = report(&["lie", "mic1", "a1-ind1.json", "--mic1", "--maxlen", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["outcome"], "HoldsNontrivially");
    let (code, r) = report(&["lie", "mic1", "a1-ind1.json", "--relations", "none", "--maxlen", "4"]);
    assert_eq!(code, 1);
    assert_eq!(r.result["outcome"], "Fails");
}
