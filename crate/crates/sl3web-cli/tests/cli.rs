use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sl3web"));
    c.env_remove("SL3WEB_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn sl3web")
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn workspace() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn schema(name: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(workspace().join("docs/schemas").join(format!("{name}.schema.json"))).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let errors: Vec<String> = s.iter_errors(v).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:#?}");
}

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/census_n3.json")
}

#[test]
fn exact_strings() {
    assert_eq!(ok(&["exact", "Ginf", "1", "1"]).trim(), "-9/4 * sqrt(3)/pi ≈ -1.240490014699032");
    assert_eq!(ok(&["exact", "h", "(0,2)", "(1,1)"]).trim(), "243/40 * sqrt(3)/pi - 3 ≈ 0.349323039687387");
    assert_eq!(ok(&["exact", "I", "-1"]).trim(), "2/3 * pi ≈ 2.094395102393195");
}

#[test]
fn exact_json() {
    let v = json(&["exact", "h", "(0,2)", "(1,1)", "--format", "json"]);
    assert_valid("exact", &v);
    assert_eq!(v["value"]["b"], "243/40");
    let v = json(&["exact", "--format", "json", "Ginf", "-1", "2"]);
    assert_valid("exact", &v);
}

#[test]
fn exact_rejects_garbage() {
    let o = run(&["exact", "Ginf", "x", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not an integer"));
}

#[test]
fn sample_n1() {
    let v = json(&["sample", "--n", "1", "--emit", "tableau"]);
    assert_valid("sample-tableau", &v);
    assert_eq!(v["result"]["rows"], serde_json::json!([[1], [2], [3]]));
}

#[test]
fn sample_is_deterministic() {
    for emit in ["tableau", "path", "web", "mdiagram"] {
        let a = ok(&["sample", "--n", "3", "--seed", "11", "--emit", emit]);
        let b = ok(&["sample", "--n", "3", "--seed", "11", "--emit", emit]);
        assert_eq!(a, b, "{emit}");
    }
    let v: Value = serde_json::from_str(&ok(&["sample", "--n", "3", "--seed", "11", "--emit", "path"])).unwrap();
    assert_valid("sample-path", &v);
    let v: Value = serde_json::from_str(&ok(&["sample", "--n", "3", "--seed", "11", "--emit", "web"])).unwrap();
    assert_valid("sample-web", &v);
}

#[test]
fn sample_seeds_differ() {
    let a = ok(&["sample", "--n", "50", "--seed", "1", "--emit", "path"]);
    let b = ok(&["sample", "--n", "50", "--seed", "2", "--emit", "path"]);
    assert_ne!(a, b);
}

#[test]
fn svg_parses() {
    let s = ok(&["sample", "--n", "800", "--seed", "3", "--emit", "svg"]);
    let doc = roxmltree::Document::parse(&s).unwrap();
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    let arcs = root.descendants().filter(|n| n.tag_name().name() == "path").count();
    assert_eq!(arcs, 2 * 800);
    assert!(root.descendants().any(|n| n.tag_name().name() == "circle"));
}

#[test]
fn census_matches_golden() {
    let v = json(&["census", "--n", "3"]);
    assert_valid("census", &v);
    let expected: Value = serde_json::from_str(&std::fs::read_to_string(golden()).unwrap()).unwrap();
    assert_valid("census-result", &expected);
    assert_eq!(v["result"], expected);
    assert_eq!(v["manifest"]["command"], "census");
}

#[test]
fn census_sampled_schema_and_threads() {
    let args = ["census", "--n", "40", "--samples", "30", "--seed", "5"];
    let one = bin().args(args).env("SL3WEB_THREADS", "1").output().unwrap();
    let many = bin().args(args).arg("--threads").arg("3").output().unwrap();
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_valid("census", &v);
    assert_eq!(v["result"]["exhaustive"], false);
}

#[test]
fn census_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    ok(&["census", "--n", "3", "--format", "csv", "--out", out.to_str().unwrap()]);
    let mut r = csv::Reader::from_path(&out).unwrap();
    assert_eq!(r.headers().unwrap(), vec!["table", "size", "depth", "face_type", "count", "sum_sq"]);
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.iter().filter(|r| &r[0] == "type").count(), 3);
    assert!(rows.iter().any(|r| &r[0] == "size_depth" && &r[1] == "6" && &r[4] == "3"));
    let side: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("c.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(side["command"], "census");
    assert_eq!(side["config"]["n"], 3);
}

#[test]
fn ratio_fields() {
    let v = json(&["ratio", "--d", "4", "--fa", "4", "--fb", "4", "--color", "B", "--trunc", "60"]);
    assert_valid("ratio", &v);
    let r = &v["result"];
    for k in ["ratio", "tail_bound", "residual", "numerator", "denominator"] {
        assert!(r[k].as_f64().unwrap() >= 0.0, "{k}");
    }
    assert_eq!(r["cap"], 160);
}

#[test]
fn ratio_rejects_boundary_crossing() {
    let o = run(&["ratio", "--d", "4", "--fa", "1", "--fb", "1", "--color", "R"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not an interior point"));
}

#[test]
fn decay_schema() {
    let v = json(&["decay", "--ds", "3,4,5,6", "--trunc-extra", "40"]);
    assert_valid("decay", &v);
    assert!(v["result"]["slope"].as_f64().unwrap() < 0.0);
}

fn predictions_from_golden(scale: f64) -> Value {
    let census: Value = serde_json::from_str(&std::fs::read_to_string(golden()).unwrap()).unwrap();
    let arcs = &census["arcs"];
    let preds: Vec<Value> = census["types"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let color = t["face_type"]["color"].as_str().unwrap();
            let n = if color == "R" { &arcs["red"] } else { &arcs["blue"] };
            let density = t["count"].as_f64().unwrap() / n.as_f64().unwrap() * scale;
            serde_json::json!({ "face_type": t["face_type"], "density": density })
        })
        .collect();
    Value::Array(preds)
}

#[test]
fn compare_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let census = golden();
    for (scale, extra, code) in [(1.0, vec![], 0), (40.0, vec!["--min-expected", "0"], 1)] {
        let p = dir.path().join(format!("p{scale}.json"));
        let preds = predictions_from_golden(scale);
        assert_valid("predictions", &preds);
        std::fs::write(&p, preds.to_string()).unwrap();
        let mut args = vec!["compare", "--census", census.to_str().unwrap(), "--predictions", p.to_str().unwrap()];
        args.extend(extra);
        let o = run(&args);
        assert_eq!(o.status.code(), Some(code), "scale {scale}: {}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_valid("compare", &v);
    }
}

#[test]
fn compare_theorem_on_golden() {
    let v = json(&["compare", "--census", golden().to_str().unwrap()]);
    assert_valid("compare", &v);
    assert_eq!(v["result"]["cells"].as_array().unwrap().len(), 3);
}

#[test]
fn version_has_git() {
    let s = ok(&["--version"]);
    assert!(s.starts_with("sl3web 0.1.0 ("), "{s}");
}
