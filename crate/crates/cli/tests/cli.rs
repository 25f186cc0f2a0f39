use std::path::Path;
use std::process::{Command, Output};

use kronwebs::exact_core::scalar::int;
use kronwebs::io::{to_string_pretty, RelationJson, SkewPairJson};
use kronwebs::relations::{jordan_relation, kronecker_relation, relation_direct_sum, ProjPoint};
use kronwebs::skew_pairs::{make_jordan_pair, make_kron_pair, pair_direct_sum, Mu};
use serde_json::Value;
use tempfile::TempDir;

fn kronwebs(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kronwebs"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("KRONWEBS_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn decompose_kronecker_model() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k3.json", &to_string_pretty(&SkewPairJson::from(&make_kron_pair(2))));
    let r = json(&kronwebs(&["pair-decompose", "--input", &f], None));
    assert_eq!(r["command"], "pair-decompose");
    assert_eq!(r["verified"], true);
    assert_eq!(r["result"]["decomposition"]["blocks"], serde_json::json!([{"kind": "Kronecker", "dim": 3}]));
    assert_eq!(r["result"]["micro_kronecker"], true);
    assert!(r["conventions"]["relation_kernel"].as_str().unwrap().contains("l1*P1 - l2*P2"));
}

#[test]
fn decompose_reports_jordan_factors() {
    let dir = TempDir::new().unwrap();
    let p = pair_direct_sum(&[make_kron_pair(1), make_jordan_pair(1, &Mu::Finite(int(2)))]);
    let f = write(&dir, "p.json", &to_string_pretty(&SkewPairJson::from(&p)));
    let r = json(&kronwebs(&["pair-decompose", "--input", &f], None));
    assert_eq!(r["result"]["micro_kronecker"], false);
    assert_eq!(r["result"]["exceptional"].as_array().unwrap().len(), 1);
    assert_eq!(r["result"]["exceptional"][0]["corank"], 3);
    let text = kronwebs(&["pair-decompose", "--input", &f, "--format", "text"], None);
    assert!(String::from_utf8(text.stdout).unwrap().contains("blocks: K1 + J2"));
}

#[test]
fn action_subspace_of_kronecker_pair() {
    let dir = TempDir::new().unwrap();
    let p = pair_direct_sum(&[make_kron_pair(3), make_kron_pair(2)]);
    let f = write(&dir, "p.json", &to_string_pretty(&SkewPairJson::from(&p)));
    let r = json(&kronwebs(&["pair-action", "--input", &f], None));
    assert_eq!(r["verified"], true);
    assert_eq!(r["result"]["dim"], 5);
    assert_eq!(r["result"]["expected_dim"], 5);
    assert_eq!(r["result"]["isotropic"], true);
    assert_eq!(r["result"]["induced_relation_kronecker"], true);

    // not micro-Kronecker: a domain error
    let j = write(&dir, "j.json", &to_string_pretty(&SkewPairJson::from(&make_jordan_pair(1, &Mu::Infinity))));
    let out = kronwebs(&["pair-action", "--input", &j], None);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reconstruction_from_sampled_kernels() {
    let dir = TempDir::new().unwrap();
    let r = relation_direct_sum(&[kronecker_relation(2), kronecker_relation(3)]);
    let f = write(&dir, "r.json", &to_string_pretty(&RelationJson::from(&r)));
    let full = json(&kronwebs(&["relation-reconstruct", "--input", &f], None));
    assert_eq!(full["result"]["equals_source"], true);
    assert_eq!(full["result"]["kernels"].as_array().unwrap().len(), 6);
    // blocks of dimension 3 need 4 points; 2 are not enough
    let short = json(&kronwebs(&["relation-reconstruct", "--input", &f, "--samples", "2"], None));
    assert_eq!(short["result"]["equals_source"], false);
    assert_eq!(short["result"]["contained_in_source"], true);
    assert_eq!(short["verified"], true);
}

#[test]
fn reconstruction_from_explicit_kernels() {
    let dir = TempDir::new().unwrap();
    let data = r#"{"dim_v": 2, "kernels": [
        {"point": ["1", "0"], "basis": {"rows": 2, "cols": 1, "entries": ["0", "1"]}},
        {"point": ["0", "1"], "basis": {"rows": 2, "cols": 1, "entries": ["1", "0"]}},
        {"point": ["1", "1"], "basis": {"rows": 2, "cols": 1, "entries": ["1", "1"]}}
    ]}"#;
    let f = write(&dir, "k.json", data);
    let r = json(&kronwebs(&["relation-reconstruct", "--input", &f], None));
    let expected = serde_json::to_value(RelationJson::from(&kronecker_relation(2))).unwrap();
    assert_eq!(r["result"]["relation"], expected);
    assert!(r["result"].get("equals_source").is_none());
}

#[test]
fn analyze_relations_and_pencils() {
    let dir = TempDir::new().unwrap();
    let r = relation_direct_sum(&[kronecker_relation(2), kronecker_relation(3)]);
    let f = write(&dir, "r.json", &to_string_pretty(&RelationJson::from(&r)));
    let a = json(&kronwebs(&["relation-analyze", "--input", &f], None));
    assert_eq!(a["result"]["kronecker"]["kronecker"], true);
    assert_eq!(a["result"]["kronecker"]["rank"], 2);
    assert_eq!(a["result"]["filtration"]["block_counts"], serde_json::json!([[2, 1], [3, 1]]));
    assert_eq!(a["result"]["blocks"].as_array().unwrap().len(), 2);

    let j = jordan_relation(2, &ProjPoint::affine(int(3)));
    let f = write(&dir, "j.json", &to_string_pretty(&RelationJson::from(&j)));
    let a = json(&kronwebs(&["relation-analyze", "--input", &f], None));
    assert_eq!(a["result"]["kronecker"]["kronecker"], false);
    assert_eq!(a["result"]["exceptional"].as_array().unwrap().len(), 1);
    assert!(a["result"].get("filtration").is_none());

    let pencil = r#"{"p1": {"rows": 1, "cols": 2, "entries": ["1", "0"]},
                     "p2": {"rows": 1, "cols": 2, "entries": ["0", "1"]}}"#;
    let f = write(&dir, "p.json", pencil);
    let a = json(&kronwebs(&["relation-analyze", "--input", &f], None));
    assert_eq!(a["result"]["kronecker"]["kronecker"], true);
    assert_eq!(a["result"]["dim"], 3);
}

#[test]
fn scan_sl2_along_h() {
    let out = kronwebs(&["lie-scan", "--algebra", "sl2", "--c1", "0,0,1", "--samples", "10"], None);
    let r = json(&out);
    let pts = r["result"]["points"].as_array().unwrap();
    assert_eq!(pts.len(), 10);
    for p in pts.iter().filter(|p| p["compatible"] == true) {
        assert_eq!(p["rank"], 1);
        assert_eq!(p["blocks"], serde_json::json!([{"kind": "Kronecker", "dim": 3}]));
    }
    assert_eq!(r["result"]["compatible_points_full_rank"], true);
}

#[test]
fn reports_are_deterministic() {
    let a = kronwebs(&["lie-scan", "--algebra", "gl2", "--seed", "7"], Some("1"));
    let b = kronwebs(&["lie-scan", "--algebra", "gl2", "--seed", "7"], Some("3"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = kronwebs(&["lie-scan", "--algebra", "gl2", "--seed", "8"], Some("1"));
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn custom_algebra_file() {
    let dir = TempDir::new().unwrap();
    // so(3) with [L1,L2] = L3 and cyclic; Casimir L1² + L2² + L3²; ι = −id
    let so3 = r#"{
        "name": "so3",
        "n": 3,
        "brackets": [
            {"i": 0, "j": 1, "coeffs": [[2, "1"]]},
            {"i": 0, "j": 2, "coeffs": [[1, "-1"]]},
            {"i": 1, "j": 2, "coeffs": [[0, "1"]]}
        ],
        "c1": ["0", "0", "1"],
        "invariants": [{"nvars": 3, "terms": [[[2, 0, 0], "1"], [[0, 2, 0], "1"], [[0, 0, 2], "1"]]}],
        "iota": {"rows": 3, "cols": 3, "entries": ["-1", "0", "0", "0", "-1", "0", "0", "0", "-1"]}
    }"#;
    let f = write(&dir, "so3.json", so3);
    let v = json(&kronwebs(&["lie-validate", "--input", &f], None));
    assert_eq!(v["result"]["rank"], 1);
    assert_eq!(v["result"]["c1_regular"], true);
    assert_eq!(v["result"]["dimension_identity"]["holds"], true);
    // ι* = −id fixes nothing, so the probe is vacuous
    assert_eq!(v["result"]["anti_involution"]["fixed_dim"], 0);
    assert_eq!(v["result"]["anti_involution"]["admissible"], true);
    let w = json(&kronwebs(&["lie-web", "--input", &f, "--samples", "4"], None));
    assert_eq!(w["result"]["flat"], true);
    assert_eq!(w["result"]["expected_jacobian_rank"], 2);

    // L1² + L2² + 2L3² is not invariant
    let bad = so3.replace(r#"[[0, 0, 2], "1"]"#, r#"[[0, 0, 2], "2"]"#);
    assert_ne!(bad, so3);
    let f = write(&dir, "bad.json", &bad);
    assert_eq!(kronwebs(&["lie-validate", "--input", &f], None).status.code(), Some(3));
}

#[test]
fn builtin_tables_validate() {
    for name in ["sl2", "sl3", "gl2", "gl3", "so3"] {
        let r = json(&kronwebs(&["lie-validate", "--algebra", name], None));
        assert_eq!(r["verified"], true, "{name}");
    }
    let w = json(&kronwebs(&["lie-web", "--algebra", "sl3", "--samples", "3"], None));
    assert_eq!(w["result"]["web_identity"], 8);
    assert_eq!(w["result"]["literal_identity"], 12);
}

#[test]
fn input_errors_exit_nonzero() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "broken.json", "{\"n\": 2, \"h1\": ");
    assert_eq!(kronwebs(&["pair-decompose", "--input", &f], None).status.code(), Some(2));
    let f = write(&dir, "rat.json", r#"{"n": 1, "h1": {"rows": 1, "cols": 1, "entries": ["1/0"]},
                                        "h2": {"rows": 1, "cols": 1, "entries": ["0"]}}"#);
    assert_eq!(kronwebs(&["pair-decompose", "--input", &f], None).status.code(), Some(2));
    let f = write(&dir, "skew.json", r#"{"n": 1, "h1": {"rows": 1, "cols": 1, "entries": ["1"]},
                                         "h2": {"rows": 1, "cols": 1, "entries": ["0"]}}"#);
    assert_eq!(kronwebs(&["pair-decompose", "--input", &f], None).status.code(), Some(3));
    assert_eq!(kronwebs(&["pair-decompose", "--input", "/nonexistent.json"], None).status.code(), Some(2));
    assert_eq!(kronwebs(&["pair-decompose"], None).status.code(), Some(2));
    assert_eq!(kronwebs(&["lie-scan", "--algebra", "e8"], None).status.code(), Some(3));
}

#[test]
fn output_file_and_selftest_criterion() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.txt");
    let o = kronwebs(&["selftest", "--only", "7", "--format", "text", "--output", out.to_str().unwrap()], None);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(Path::new(&out)).unwrap();
    assert!(text.starts_with("[PASS]  7."), "{text}");
    assert!(text.contains("1/1 criteria passed"));
    assert_eq!(kronwebs(&["selftest", "--only", "11"], None).status.code(), Some(2));
}
