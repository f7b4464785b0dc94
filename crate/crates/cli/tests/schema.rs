use arborslope_cli::run;
use serde_json::Value;

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/report.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn report_json(args: &[&str]) -> Value {
    let mut out = Vec::new();
    let argv = std::iter::once("arborslope").chain(args.iter().copied());
    run(argv, &mut out, &mut Vec::new());
    serde_json::from_slice(&out).unwrap()
}

#[test]
fn reports_match_schema() {
    let v = schema();
    for args in [
        &["kn", "--n", "2"][..],
        &["kn", "--n", "4"],
        &["slopes", "-1/2 + 1/3 + 1/7"],
        &["slopes", "-1/2 + 1/3 + 1/4"],
        &["slopes", "(1/2 + 1/3) o (-1/2 + 1/5)"],
    ] {
        let doc = report_json(args);
        let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn schema_rejects_tampering() {
    let v = schema();
    let mut doc = report_json(&["kn", "--n", "2"]);
    doc["slopes"][0] = Value::from(-14.5);
    assert!(!v.is_valid(&doc));
    let mut doc = report_json(&["kn", "--n", "2"]);
    doc["extra"] = Value::Bool(true);
    assert!(!v.is_valid(&doc));
}
