use std::process::Command;

const SAMPLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/c3_and_torus.json");

fn equiab(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_equiab"))
        .args(args)
        .env_remove("EQUIAB_SEED")
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn compute_prints_totals() {
    let (code, out, _) = equiab(&[SAMPLE]);
    assert_eq!(code, 0);
    assert!(out.contains("total: C^2"), "{out}");
    assert!(out.contains("orbit-space total: R^1 ⊕ C^1"), "{out}");
}

#[test]
fn verify_exits_zero_when_all_pass() {
    let (code, out, _) = equiab(&["--verify", "--seed", "3", SAMPLE]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("7/7 checks passed"), "{out}");
}

#[test]
fn emit_json_writes_report() {
    let dir = std::env::temp_dir().join(format!("equiab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (code, _, _) = equiab(&[SAMPLE, "--emit-json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let doc = equiab::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc.orbits.len(), 2);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn degree_bound_flag_changes_certification() {
    let (code, out, _) = equiab(&[SAMPLE, "--degree-bound", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("degree-bounded at degree 2"), "{out}");
    assert!(out.contains("note: s is only known"), "{out}");
}

#[test]
fn group_cap_is_enforced() {
    let (code, _, err) = equiab(&[SAMPLE, "--max-group-order", "2"]);
    assert_ne!(code, 0);
    assert!(err.contains("c3"), "{err}");
}

#[test]
fn bad_input_is_rejected() {
    let (code, _, err) = equiab(&["/nonexistent/input.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));
}
