use std::path::PathBuf;
use std::process::Command;

use cyalg::cli::{run, RunOutput};
use cyalg::problem::{catalog_cases, catalog_file, catalog_names, CatalogCase, ProblemFile, Query};
use cyalg::scalar::Scalar;
use serde_json::Value;

fn cyalg(args: &[&str]) -> RunOutput {
    run(std::iter::once("cyalg").chain(args.iter().copied()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cyalg-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &std::path::Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn problems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems")
}

#[test]
fn binary_reports_class_and_exit_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_cyalg"))
        .args(["classify", "catalog:heisenberg"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("HEISENBERG"));
    let out = Command::new(env!("CARGO_BIN_EXE_cyalg"))
        .args(["check", "nowhere.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn documented_examples() {
    let out = cyalg(&["classify", "catalog:heisenberg"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.reports[0].data["class"], "HEISENBERG");

    let reflection = problems_dir().join("reflection.json");
    let out = cyalg(&["skew", reflection.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert_eq!(out.reports[0].verdict, Some(false));

    let out = cyalg(&["potential", "catalog:case1"]);
    assert_eq!(out.code, 0);
}

#[test]
fn shipped_problem_files_answer_their_queries() {
    let expected = [
        ("rotation_order4.json", 0),
        ("reflection.json", 1),
        ("heisenberg_involution.json", 0),
        ("cyclic_order3.json", 0),
        ("case6_normal_forms.json", 0),
        ("jacobi_failure.json", 2),
    ];
    for (file, code) in expected {
        let path = problems_dir().join(file);
        let out = cyalg(&["check", path.to_str().unwrap()]);
        assert_eq!(out.code, code, "{file}: {}", out.stdout);
    }
}

#[test]
fn bad_inputs_exit_2_with_location() {
    let dir = scratch("bad");
    let cases = [
        ("garbage.json", "{ not json", "line 1"),
        (
            "bad_scalar.json",
            r#"{"lie": {"dim": 1, "basis": ["x"]}, "cocycle1": {"x": "1/0"}}"#,
            "cocycle1.x",
        ),
        (
            "bad_name.json",
            r#"{"lie": {"dim": 2, "basis": ["x", "y"], "brackets": [{"left": "x", "right": "w", "value": {"y": "1"}}]}}"#,
            "lie.brackets[0]",
        ),
        (
            "bad_cocycle.json",
            r#"{"lie": {"dim": 3, "basis": ["x", "y", "z"], "brackets": [{"left": "x", "right": "y", "value": {"y": "1"}}]},
                "cocycle2": [{"left": "y", "right": "z", "value": "1"}], "query": "sridharan-cy"}"#,
            "cocycle2",
        ),
        (
            "shear.json",
            r#"{"lie": {"dim": 2, "basis": ["x", "y"]}, "group": {"generators": [[["1", "1"], ["0", "1"]]], "cap": 50}, "query": "skew-cy"}"#,
            "group",
        ),
        (
            "not_action.json",
            r#"{"lie": {"dim": 2, "basis": ["x", "y"], "brackets": [{"left": "x", "right": "y", "value": {"y": "1"}}]},
                "group": {"generators": [[["0", "1"], ["1", "0"]]]}, "query": "skew-cy"}"#,
            "group",
        ),
        (
            "no_group.json",
            r#"{"lie": {"dim": 1, "basis": ["x"]}, "query": "skew-cy"}"#,
            "group",
        ),
    ];
    for (name, text, location) in cases {
        let path = write(&dir, name, text);
        let out = cyalg(&["check", &path]);
        assert_eq!(out.code, 2, "{name}: {}", out.stdout);
        let err = out.reports[0].error.as_deref().unwrap();
        assert!(err.contains(location), "{name}: {err}");
    }
    assert_eq!(cyalg(&["check", dir.join("missing.json").to_str().unwrap()]).code, 2);
    assert_eq!(cyalg(&["classify", "catalog:abelian2"]).code, 2);
    assert_eq!(cyalg(&["bogus"]).code, 2);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn cap_flag_overrides_file() {
    let cyclic = problems_dir().join("cyclic_order3.json");
    assert_eq!(cyalg(&["skew", cyclic.to_str().unwrap(), "--cap", "2"]).code, 2);
    assert_eq!(cyalg(&["skew", cyclic.to_str().unwrap(), "--cap", "3"]).code, 1);
}

#[test]
fn catalog_roundtrips() {
    let dir = scratch("export");
    let out = cyalg(&["catalog", "--export", dir.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    for name in catalog_names() {
        let file = ProblemFile::from_path(&dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(file, catalog_file(name).unwrap());
        let again = ProblemFile::from_json(&file.to_json()).unwrap();
        assert_eq!(again, file);
    }
    for case in catalog_cases() {
        let file = ProblemFile::from_sridharan(
            &case.name,
            &case.algebra,
            case.potential_text.as_deref(),
            Some(Query::SridharanCy),
        );
        let back = CatalogCase::from_file(&file).unwrap();
        assert_eq!(back.algebra.lie(), case.algebra.lie());
        assert_eq!(back.algebra.cocycle(), case.algebra.cocycle());
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn json_reports_keep_input_order_and_scalar_grammar() {
    let dir = scratch("json");
    let cyclic = problems_dir().join("cyclic_order3.json");
    let inputs = [
        "catalog:case1",
        cyclic.to_str().unwrap(),
        "catalog:solvable3b",
        "catalog:heisenberg",
        "catalog:sl2",
        "catalog:case7",
    ];
    let json_path = dir.join("out.json");
    let mut args = vec!["check", "--jobs", "4", "--json", json_path.to_str().unwrap()];
    args.extend(inputs);
    let out = cyalg(&args);
    assert_eq!(out.code, 1);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let reports = doc.as_array().unwrap();
    let order: Vec<&str> = reports.iter().map(|r| r["input"].as_str().unwrap()).collect();
    assert_eq!(order, inputs);
    let invariant = reports[1]["data"]["invariant"].as_array().unwrap();
    let parsed: Vec<Scalar> = invariant.iter().map(|v| v.as_str().unwrap().parse().unwrap()).collect();
    let omega = Scalar::zeta(3).pow(2).unwrap();
    assert_eq!(parsed, vec![Scalar::one(), omega.clone(), &omega * &omega]);
    let serial = cyalg(&["check", "--jobs", "1"].into_iter().chain(inputs).collect::<Vec<_>>());
    assert_eq!(serial.stdout, out.stdout);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn selftest_flags_a_mutated_catalog() {
    let dir = scratch("mutant");
    assert_eq!(cyalg(&["catalog", "--export", dir.to_str().unwrap()]).code, 0);
    let path = dir.join("case5.json");
    let mut file = ProblemFile::from_path(&path).unwrap();
    file.cocycle2 = None;
    std::fs::write(&path, file.to_json()).unwrap();
    let out = cyalg(&["selftest", "--catalog-dir", dir.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    let items = out.reports[0].data["items"].as_array().unwrap();
    let passed = |id: u64| {
        items.iter().find(|i| i["id"] == id).unwrap()["passed"]
            .as_bool()
            .unwrap()
    };
    assert!(!passed(5));
    assert!(passed(4) && passed(7) && passed(8));
    std::fs::remove_dir_all(dir).ok();
}
