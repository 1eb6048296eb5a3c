use std::path::PathBuf;

use incidence_operad::cli::run;
use serde_json::Value;

fn data(rel: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(rel);
    p.display().to_string()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("incidence").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn schema() -> jsonschema::Validator {
    let schema: Value =
        serde_json::from_str(include_str!("../schema/reports.schema.json")).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// Runs in JSON mode, checks the document against the schema and returns it.
fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = invoke(&full);
    assert!(code != 2, "usage error: {err}");
    let doc: Value = serde_json::from_str(&out).expect("exactly one JSON document");
    let v = schema();
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc}");
    (code, doc)
}

#[test]
fn validate_crown() {
    let (code, doc) = json(&["validate", &data("posets/cr4.json")]);
    assert_eq!(code, 0);
    assert_eq!(doc["elements"], 4);
    assert_eq!(doc["intervals"], 8);
    assert!(doc["meta"]["timestamp"].is_u64());
}

#[test]
fn sphere_cohomology_in_both_modes() {
    for extra in [None, Some("--unnormalized")] {
        let mut args = vec!["cohomology", "--max-degree", "2"];
        let path = data("posets/sphere14.json");
        args.push(&path);
        args.extend(extra);
        let (code, doc) = json(&args);
        assert_eq!(code, 0);
        assert_eq!(doc["betti"], serde_json::json!([1, 0, 1]));
    }
}

#[test]
fn hochschild_dims_agree_on_chain3() {
    let (code, doc) = json(&[
        "hochschild",
        &data("posets/chain3.json"),
        "--max-degree",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["agree"], true);
    assert_eq!(doc["full"], serde_json::json!([1, 0, 0]));
}

#[test]
fn verify_all_on_crown() {
    let (code, doc) = json(&[
        "verify",
        &data("posets/cr4.json"),
        "--suite",
        "all",
        "--samples",
        "100",
        "--seed",
        "7",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["failures"].as_array().unwrap().len(), 0);
    assert!(doc["checks"].as_array().unwrap().len() > 20);
}

#[test]
fn verify_mutation_fails_with_witness() {
    let (code, doc) = json(&[
        "verify",
        &data("posets/diamond.json"),
        "--suite",
        "iso",
        "--samples",
        "3",
        "--mutate",
    ]);
    assert_eq!(code, 1);
    let f = &doc["failures"][0];
    assert!(!f["witness-chain"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_deterministic_without_meta() {
    let args = [
        "verify",
        &data("posets/diamond.json"),
        "--suite",
        "brace",
        "--samples",
        "20",
        "--seed",
        "3",
        "--format",
        "json",
        "--no-meta",
    ];
    let (_, a, _) = invoke(&args);
    let (_, b, _) = invoke(&args);
    assert_eq!(a, b);
    assert!(!a.contains("timestamp"));
}

#[test]
fn mc_check_negative_answer() {
    let (code, doc) = json(&[
        "mc-check",
        &data("posets/cr4.json"),
        &data("cochains/bad-mc.json"),
    ]);
    assert_eq!(code, 1);
    assert_eq!(doc["mc"], false);
    assert_eq!(doc["failure"]["witness-chain"].as_array().unwrap().len(), 4);
}

#[test]
fn moduli_and_gauge_on_sphere() {
    let sphere = data("posets/sphere14.json");
    let (code, doc) = json(&["deform", &sphere, "--order", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["dimension"], 3);

    let class = data("cochains/sphere-class.json");
    let (code, doc) = json(&[
        "gauge-equiv",
        &sphere,
        &class,
        &data("cochains/sphere-class-double.json"),
    ]);
    assert_eq!((code, &doc["equivalent"]), (1, &Value::Bool(false)));
    let (code, doc) = json(&[
        "gauge-equiv",
        &sphere,
        &class,
        &data("cochains/sphere-class-twisted.json"),
    ]);
    assert_eq!((code, &doc["equivalent"]), (0, &Value::Bool(true)));
}

#[test]
fn gauge_rejects_non_mc_input() {
    let crown = data("posets/cr4.json");
    let bad = data("cochains/bad-mc.json");
    let (code, _, err) = invoke(&["gauge-equiv", &crown, &bad, &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("not a Maurer-Cartan element"), "{err}");
}

#[test]
fn usage_errors_name_the_flag() {
    let (code, _, err) = invoke(&["verify", &data("posets/cr4.json"), "--samplez", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("--samplez"));
    let (code, _, err) = invoke(&["verify", &data("posets/cr4.json"), "--max-degree", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("--max-degree"));
}

#[test]
fn file_errors_report_path_and_position() {
    let (code, _, err) = invoke(&["validate", "/nonexistent/p.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent/p.json"));

    let dir = std::env::temp_dir().join(format!("incidence-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("broken.json");
    std::fs::write(&bad, "{\n  \"name\": \"x\",\n  \"elements\": [\"a\",]\n}\n").unwrap();
    let (code, _, err) = invoke(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(
        err.contains("broken.json") && err.contains("line 3"),
        "{err}"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_is_not_an_error() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("gauge-equiv"));
}
