use elliptic_genus::cusp::{verify_modularity, Cusp};
use elliptic_genus::genus::{genus_value_rational, GenusSpec};
use elliptic_genus::localize::{action_to_json, builtin_action, load_action, rigidity_check, SamplePoint};
use elliptic_genus::manifold::{builtin, load_model, model_to_json};
use elliptic_genus::series::rational::int;
use elliptic_genus::verify::{ACTIONS, CATALOG};

#[test]
fn models_round_trip_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    for name in CATALOG {
        let m = builtin(name).unwrap();
        let path = dir.path().join("m.json");
        std::fs::write(&path, model_to_json(&m)).unwrap();
        assert_eq!(load_model(&path).unwrap(), m, "{name}");
    }
}

#[test]
fn actions_round_trip_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    for name in ACTIONS {
        let a = builtin_action(name).unwrap();
        let path = dir.path().join("a.json");
        std::fs::write(&path, action_to_json(&a)).unwrap();
        let back = load_action(&path).unwrap();
        assert_eq!(back.ambient, a.ambient);
        assert_eq!(back.components, a.components);
    }
}

#[test]
fn hand_written_model_file() {
    let text = r#"{
        "name": "myCP2",
        "dim_real": 4,
        "spin": false,
        "generators": [{"symbol": "h", "degree": 2, "cap": 2}],
        "pairing": "1",
        "tangent": {"style": "chern", "delta": 1, "entries": [{"form": {"h": "1"}, "mult": 3}]}
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp2.json");
    std::fs::write(&path, text).unwrap();
    let m = load_model(&path).unwrap();
    assert_eq!(genus_value_rational(&GenusSpec::signature(), &m).unwrap(), int(1));
    assert!(verify_modularity(&m, Cusp::Signature, 3).unwrap());
}

#[test]
fn action_file_with_builtin_refs() {
    let text = r#"{
        "ambient": "builtin:HP1",
        "components": [
            {"model": "point", "normal": [{"chern": {}, "weight": 1}, {"chern": {}, "weight": 3}]},
            {"model": "point", "normal": [{"chern": {}, "weight": -1}, {"chern": {}, "weight": 3}]}
        ]
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s4.json");
    std::fs::write(&path, text).unwrap();
    let a = load_action(&path).unwrap();
    let r = rigidity_check(&a, &[SamplePoint::int(2), SamplePoint::int(3)], 3).unwrap();
    assert!(r.pass());
}

#[test]
fn bad_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"name": "x", "extra": 1}"#).unwrap();
    assert_eq!(load_model(&path).unwrap_err().code(), "schema");
    assert!(load_model(&dir.path().join("missing.json")).is_err());
    std::fs::write(&path, r#"{"ambient": "builtin:HP1", "components": []}"#).unwrap();
    assert!(load_action(&path).is_err());
}
