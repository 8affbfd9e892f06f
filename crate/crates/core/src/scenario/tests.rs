use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::context::SolveContext;
use crate::curve::random_invertible;

fn run(s: &Scenario) -> Analysis {
    analyze(s, &SolveContext::default(), &mut Timings::default()).unwrap()
}

fn classes(a: &Analysis) -> Vec<(String, ExtensionClass)> {
    a.extensions.iter().map(|e| (a.name_of(e.element), e.class)).collect()
}

#[test]
fn builtins_load() {
    for name in BUILTIN_NAMES {
        let s = Scenario::load(name).unwrap();
        assert_eq!(s.name, *name);
        assert!(s.point.is_some());
        assert!(s.expected.is_some());
    }
    assert!(builtin("nonexistent").is_none());
    let err = Scenario::load("nonexistent").unwrap_err().to_string();
    assert!(err.contains("cubic-omega"), "{err}");
}

#[test]
fn validation_errors_name_the_location() {
    let zero = r#"{"field": {"kind": "rational"}, "curve": {"implicit": "X*Z - Y^2"}, "point": [0, 0, 0]}"#;
    let err = Scenario::from_json(zero).unwrap_err().to_string();
    assert!(err.contains("point") && err.contains("not a projective point"), "{err}");
    let bad = r#"{"field": {"kind": "rational"}, "curve": {"implicit": "X*Z - Y^2"}, "point": [1, "q", 0]}"#;
    let err = Scenario::from_json(bad).unwrap_err().to_string();
    assert!(err.contains("point[1]"), "{err}");
    let shape = r#"{"field": {"kind": "rational"}, "curve": {"param": ["u^2", "u*v", "v^2"]}, "generators": [[[1, 0]]]}"#;
    let err = Scenario::from_json(shape).unwrap_err().to_string();
    assert!(err.contains("generators[0]"), "{err}");
    let unknown = r#"{"field": {"kind": "rational"}, "curve": {"implicit": "X"}, "colour": 1}"#;
    assert!(Scenario::from_json(unknown).unwrap_err().to_string().contains("colour"));
    let empty = r#"{"field": {"kind": "rational"}, "curve": {}}"#;
    assert!(Scenario::from_json(empty).is_err());
}

#[test]
fn builtins_meet_their_expectations() {
    for name in BUILTIN_NAMES {
        let a = run(&Scenario::load(name).unwrap());
        let failed: Vec<_> = a.checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{name}: {failed:?}");
        assert_eq!(a.exit_code(), 0, "{name}");
    }
}

#[test]
fn verdicts_survive_coordinate_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["cubic-omega", "quartic-i"] {
        let s = Scenario::load(name).unwrap();
        let base = classes(&run(&s));
        let t = s.conjugated(&random_invertible(&s.field, &mut rng)).unwrap();
        let a = run(&t);
        assert_eq!(classes(&a), base, "{name}");
        assert_eq!(a.exit_code(), 0, "{name}: {:?}", a.checks);
    }
}

#[test]
fn json_reports_are_deterministic() {
    let s = Scenario::load("cubic-char3").unwrap();
    let render = || render_report(&Report::from_analysis(&run(&s), 1, None), OutputFormat::Json);
    let first = render();
    assert_eq!(first, render());
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["galois"], serde_json::json!(true));
    assert!(v.get("timings").is_none());
    assert_eq!(render_report(&Report::default(), OutputFormat::Json), "{}");
}

#[test]
fn element_names_follow_powers() {
    let s = Scenario::load("quartic-i").unwrap();
    let a = run(&s);
    let mut names = a.names.clone();
    names.sort();
    assert_eq!(names, ["g", "g^2", "g^3", "identity"]);
}
