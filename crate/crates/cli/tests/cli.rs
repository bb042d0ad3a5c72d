use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn opsusp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opsusp")).args(args).env_remove("OPSUSP_BASIS_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn tmap_worked_example() {
    let o = opsusp(&["tmap", "--alpha", "2,1,3", "--sigma", "3,1,2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "4,5,6,1,2,3\n");
    assert_eq!(code(&opsusp(&["tmap", "--alpha", "2,1", "--sigma", "3,1,2"])), 2);
}

#[test]
fn axiom_suites() {
    assert_eq!(code(&opsusp(&["check-axioms", "--name", "s0", "--max-rank", "4"])), 0);
    assert_eq!(code(&opsusp(&["check-axioms", "--name", "bar", "--max-rank", "2", "--max-degree", "2"])), 0);
    assert_eq!(code(&opsusp(&["check-axioms"])), 2);
}

#[test]
fn homology_of_the_interval() {
    let dir = tempfile::tempdir().unwrap();
    let i = path(dir.path(), "interval.json");
    assert_eq!(code(&opsusp(&["coalgebra", "build", "--kind", "interval", "--out", &i])), 0);
    let o = opsusp(&["homology", "--in", &i, "--range", "0..1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "H_0 = Z\nH_1 = 0\n");
    assert_eq!(code(&opsusp(&["coalgebra", "check", "--in", &i])), 0);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.json");
    fs::write(&bad, "{").unwrap();
    assert_eq!(code(&opsusp(&["homology", "--in", &bad, "--range", "0..1"])), 2);
    assert_eq!(code(&opsusp(&["homology", "--in", "/nonexistent.json", "--range", "0..1"])), 2);
    assert_eq!(code(&opsusp(&["homology", "--in", &bad, "--range", "1..0"])), 2);

    // a truncated carrier does not know degree 2, so H_1 is out of reach
    let i = path(dir.path(), "interval.json");
    opsusp(&["coalgebra", "build", "--kind", "interval", "--out", &i]);
    let mut j: serde_json::Value = serde_json::from_str(&fs::read_to_string(&i).unwrap()).unwrap();
    j["carrier"]["complete"] = false.into();
    fs::write(&i, j.to_string()).unwrap();
    assert_eq!(code(&opsusp(&["homology", "--in", &i, "--range", "0..1"])), 2);
    assert_eq!(code(&opsusp(&["homology", "--in", &i, "--range", "0..0"])), 0);
}

#[test]
fn basis_cap_from_the_environment() {
    let args = ["group-homology", "--n", "3", "--max-degree", "3"];
    assert_eq!(code(&opsusp(&args)), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_opsusp")).args(args).env("OPSUSP_BASIS_CAP", "100").output().unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("basis cap"));
}

#[test]
fn group_homology_of_s2() {
    let o = opsusp(&["group-homology", "--n", "2", "--min-degree", "1", "--max-degree", "3"]);
    assert_eq!(stdout(&o), "H_1 = Z/2\nH_2 = 0\nH_3 = Z/2\n");
    let o = opsusp(&["group-homology", "--n", "2", "--max-degree", "1", "--coefficients", "sign", "--cohomology"]);
    assert_eq!(stdout(&o), "H^0 = 0\nH^1 = Z/2\n");
}

#[test]
fn suspension_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = opsusp(&["susp", "vmap", "--max-rank", "2", "--max-degree", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("𝔙(12*[21]) = +1·s2⊗21*[]"));
    assert_eq!(stdout(&opsusp(&["susp", "alpha", "--n", "2"])), "α_2 has order 2 in H^1(S_2)\n");
    assert_eq!(code(&opsusp(&["susp", "alpha", "--n", "2", "--coefficients", "trivial"])), 1);
    let s1 = path(dir.path(), "s1.json");
    opsusp(&["coalgebra", "build", "--kind", "circle", "--max-rank", "2", "--out", &s1]);
    let o = opsusp(&["susp", "check-theorem", "--in", &s1]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn zigzag_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let cone = path(dir.path(), "cone.json");
    opsusp(&["stable", "certificate", "--kind", "cone", "--max-rank", "2", "--out", &cone]);
    assert_eq!(code(&opsusp(&["stable", "verify", "--in", &cone, "--range", "0..1"])), 0);

    let mut j: serde_json::Value = serde_json::from_str(&fs::read_to_string(&cone).unwrap()).unwrap();
    j["arrows"][1]["map"] = serde_json::json!([]);
    let zero = path(dir.path(), "zero.json");
    fs::write(&zero, j.to_string()).unwrap();
    let o = opsusp(&["stable", "verify", "--in", &zero]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("arrow 1 ←: not a quasi-iso: cone has H_0"), "{}", stdout(&o));
}

#[test]
fn alignment_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let z = path(dir.path(), "levels.json");
    let (a, b) = (path(dir.path(), "a.json"), path(dir.path(), "b.json"));
    opsusp(&["stable", "certificate", "--kind", "levels", "--max-rank", "2", "--out", &z]);
    assert_eq!(code(&opsusp(&["stable", "align", "--in", &z, "--out", &a])), 0);
    assert_eq!(code(&opsusp(&["stable", "align", "--in", &a, "--out", &b])), 0);
    assert!(fs::read(&a).unwrap() == fs::read(&b).unwrap(), "alignment is not idempotent");
    let o = opsusp(&["stable", "verify", "--in", &b]);
    assert_eq!(stdout(&o).lines().last(), Some("accepted at level 1"));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(dir.path(), "a.json"), path(dir.path(), "b.json"));
    for p in [&a, &b] {
        opsusp(&["coalgebra", "build", "--kind", "interval", "--suspend", "1", "--max-rank", "2", "--out", p]);
    }
    assert!(fs::read(&a).unwrap() == fs::read(&b).unwrap(), "coalgebra builds differ");
    for p in [&a, &b] {
        assert_eq!(code(&opsusp(&["acceptance", "--profile", "fast", "--out", p])), 0);
    }
    assert!(fs::read(&a).unwrap() == fs::read(&b).unwrap(), "acceptance reports differ");
    let o = opsusp(&["acceptance", "--profile", "fast"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("[PASS]")).count(), 11);
}
