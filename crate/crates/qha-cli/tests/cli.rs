//! End-to-end checks of the command-line surface: exit codes, JSON output,
//! file input and the dual round trip.

use std::process::Command;

fn qha() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qha"))
}

#[test]
fn corpus_list_and_show() {
    let out = qha().args(["corpus", "list"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ex24(3)"));
    assert!(text.contains("ex25_ringel_target"));

    let out = qha().args(["corpus", "show", "ex25_ringel_target"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("arrow alpha : 1 -> 3"));
    assert!(text.contains("beta*gamma*delta*alpha"));
}

#[test]
fn check_balanced_exit_codes() {
    // balanced input: exit 0
    let out = qha().args(["check", "balanced", "ex24(1)"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // unbalanced input: exit 1 with a witness naming the nonlinear position
    let out = qha().args(["check", "balanced", "ex25"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("witness"), "{text}");

    // bad input: exit 2
    let out = qha().args(["check", "balanced", "no_such_entry"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_error_is_positioned() {
    let dir = std::env::temp_dir().join("qha_cli_test_bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.qa");
    std::fs::write(&path, "algebra bad\nfield Q\nvertices 1 2\narrow a : 1 -> 2\nrelations\nzz*a\n")
        .unwrap();
    let out = qha().args(["check", "qh", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stderr).unwrap();
    assert!(text.contains("line 6"), "{text}");
    assert!(text.contains("zz"), "{text}");
}

#[test]
fn analyze_json_roundtrips() {
    let out = qha()
        .args(["analyze", "directed_chain(2)", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["koszul"]["status"], "pass");
    assert_eq!(v["balanced"]["status"], "pass");
}

#[test]
fn dual_output_file_reparses() {
    let dir = std::env::temp_dir().join("qha_cli_test_dual");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("chain2_ringel.qa");
    let out = qha()
        .args(["dual", "ringel", "directed_chain(2)", "-o", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    // the written presentation must itself analyze cleanly
    let out = qha().args(["check", "qh", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_closure_runs_on_two_files() {
    let out = qha()
        .args(["verify", "closure", "directed_chain(2)", "semisimple(2)", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tensor_balanced"]["status"], "pass");
}

#[test]
fn verify_theorem_exits_zero_on_balanced_input() {
    let out = qha()
        .args(["verify", "theorem1", "ex24(1)", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["theorem"]["duals_commute"]["status"], "pass");

    // unbalanced input exits 1 and reports the failed hypothesis
    let out = qha().args(["verify", "theorem1", "ex25"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn repeated_runs_are_identical() {
    let run = || {
        qha()
            .args(["analyze", "ex24(1)", "--format", "json"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.status.code(), b.status.code());
    // elapsed_ms differs between runs; everything else must be identical
    let strip = |bytes: &[u8]| {
        let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
}

#[test]
fn field_override_is_accepted() {
    let out = qha()
        .args(["check", "qh", "ex24(1)", "--field", "Fp:101"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}
