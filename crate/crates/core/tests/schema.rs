//! Reports against the shipped JSON schema, checked by a small validator
//! covering the keywords the schema uses.

use serde_json::Value;

use salab::explorer::{run_command, Command, CommandArgs, GridArgs, Input};

const SCHEMA: &str = include_str!("../docs/report.schema.json");

fn resolve<'a>(root: &'a Value, reference: &str) -> &'a Value {
    let path = reference.strip_prefix("#/").expect("local reference");
    path.split('/').fold(root, |v, key| &v[key])
}

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        other => panic!("schema uses unsupported type {other}"),
    }
}

fn validate(root: &Value, schema: &Value, v: &Value, path: &str, errors: &mut Vec<String>) {
    let obj = schema.as_object().expect("schema objects");
    for key in obj.keys() {
        assert!(
            [
                "$schema", "title", "type", "required", "additionalProperties", "properties", "items", "enum",
                "minimum", "$ref", "$defs"
            ]
            .contains(&key.as_str()),
            "validator does not support keyword {key}"
        );
    }
    if let Some(r) = obj.get("$ref") {
        validate(root, resolve(root, r.as_str().unwrap()), v, path, errors);
    }
    if let Some(t) = obj.get("type") {
        if !type_matches(t.as_str().unwrap(), v) {
            errors.push(format!("{path}: expected {t}, got {v}"));
            return;
        }
    }
    if let Some(values) = obj.get("enum") {
        if !values.as_array().unwrap().contains(v) {
            errors.push(format!("{path}: {v} not in enum"));
        }
    }
    if let Some(min) = obj.get("minimum") {
        if v.as_f64().is_some_and(|x| x < min.as_f64().unwrap()) {
            errors.push(format!("{path}: {v} below minimum {min}"));
        }
    }
    if let Some(map) = v.as_object() {
        for req in obj.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !map.contains_key(req.as_str().unwrap()) {
                errors.push(format!("{path}: missing {req}"));
            }
        }
        let props = obj.get("properties").and_then(Value::as_object);
        for (k, child) in map {
            match props.and_then(|p| p.get(k)) {
                Some(s) => validate(root, s, child, &format!("{path}/{k}"), errors),
                None if obj.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    errors.push(format!("{path}: unexpected property {k}"))
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (obj.get("items"), v.as_array()) {
        for (i, child) in arr.iter().enumerate() {
            validate(root, items, child, &format!("{path}/{i}"), errors);
        }
    }
}

fn check(v: &Value) -> Vec<String> {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let mut errors = Vec::new();
    validate(&schema, &schema, v, "", &mut errors);
    errors
}

fn args(text: &str) -> CommandArgs {
    CommandArgs {
        inputs: vec![Input {
            name: "t.ideal".into(),
            text: text.into(),
        }],
        ..CommandArgs::default()
    }
}

#[test]
fn every_command_emits_a_valid_report() {
    let quadrics = "ring F101[x,y,z]\nx^2 + y*z\ny^2 - 3*x*z";
    let cases: Vec<(Command, CommandArgs)> = vec![
        (Command::Gb, args(quadrics)),
        (Command::Hilbert, args(quadrics)),
        (Command::Dim, args(quadrics)),
        (Command::Resolve, args(quadrics)),
        (Command::Betti, args(quadrics)),
        (Command::Pd, args(quadrics)),
        (Command::Nu, args(quadrics)),
        (Command::Nu, CommandArgs { tuple: true, ..args(quadrics) }),
        (Command::Strength, args(quadrics)),
        (Command::Regseq, args(quadrics)),
        (Command::Independent, args("ring QQ[x,y]\nx^2\nx*y")),
        (Command::Decompose, args(quadrics)),
        (Command::Gin, args(quadrics)),
        (Command::PdTransfer, args("ring QQ[x,y]\nx^2 + y^2\nx*y")),
        (
            Command::EnumerateHf,
            CommandArgs {
                grid: GridArgs { degrees: vec![2], ..GridArgs::default() },
                ..CommandArgs::default()
            },
        ),
        (Command::ExploreThreshold, CommandArgs::default()),
    ];
    for (cmd, a) in cases {
        let report = run_command(cmd, &a).unwrap_or_else(|e| panic!("{cmd}: {e}"));
        let v: Value = serde_json::from_str(&report.to_json()).unwrap();
        let errors = check(&v);
        assert!(errors.is_empty(), "{cmd}: {errors:?}");
    }
}

#[test]
fn validator_rejects_malformed_reports() {
    let report = run_command(Command::Pd, &args("ring QQ[x]\nx^2")).unwrap();
    let good: Value = serde_json::from_str(&report.to_json()).unwrap();
    assert!(check(&good).is_empty());

    let mut missing = good.clone();
    missing.as_object_mut().unwrap().remove("seed");
    assert!(!check(&missing).is_empty());

    let mut bad_command = good.clone();
    bad_command["command"] = "frobnicate".into();
    assert!(!check(&bad_command).is_empty());

    let mut bad_term = good;
    bad_term["inputs"]["files"][0]["polynomials"][0][0]["coeff"] = 1.into();
    assert!(!check(&bad_term).is_empty());
}
