use std::path::PathBuf;
use std::process::{Command, Output};

fn simres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simres")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("simres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const OCTAHEDRON: &str = "# octahedron\n1.1 2.1 3.1\n1.1 2.1 3.2\n1.1 2.2 3.1\n1.1 2.2 3.2\n1.2 2.1 3.1\n1.2 2.1 3.2\n1.2 2.2 3.1\n1.2 2.2 3.2\n";

#[test]
fn tree_count_brute_force() {
    let f = fixture("octa.txt", OCTAHEDRON);
    let o = simres(&["tree-count", f.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "8\n");
}

#[test]
fn tree_count_closed_forms() {
    let f = fixture("245.txt", "generators\n2 4 5\n");
    let o = simres(&["tree-count", f.to_str().unwrap(), "--formula", "shifted"]);
    assert_eq!(stdout(&o), "50\n");
    let f = fixture("222.txt", "generators\n1.2 2.2 3.2\n");
    let o = simres(&["tree-count", f.to_str().unwrap(), "--formula", "color-shifted", "--both"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "brute 8 closed 8 EQUAL\n");
}

#[test]
fn formula_on_non_family_input_is_an_error() {
    let f = fixture("path.txt", "1 2\n2 3\n");
    let o = simres(&["tree-count", f.to_str().unwrap(), "--formula", "shifted"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a shifted complex"));
}

#[test]
fn bound_is_enforced() {
    let f = fixture("octa-bound.txt", OCTAHEDRON);
    let o = simres(&["tree-count", f.to_str().unwrap(), "--bound", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the bound"));
}

#[test]
fn resistance_reports() {
    let f = fixture("octa-r.txt", OCTAHEDRON);
    let o = simres(&["resistance", f.to_str().unwrap(), "--sigma", "1.2 2.2 3.2", "--verify"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("R_sigma 7/8\n"), "{out}");
    assert!(out.contains("tree-ratio 7/8 EQUAL"), "{out}");
    let f = fixture("path-r.txt", "1 2\n2 3\n");
    let o = simres(&["resistance", f.to_str().unwrap(), "--sigma", "1 3"]);
    assert!(stdout(&o).starts_with("R_sigma 2\n"));
}

#[test]
fn disconnected_resistance_names_the_condition() {
    let f = fixture("two-edges.txt", "1 2\n3 4\n");
    let o = simres(&["resistance", f.to_str().unwrap(), "--sigma", "1 3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("boundary not spanned"));
}

#[test]
fn ratio_routes_agree() {
    let f = fixture("octa-ratio.txt", OCTAHEDRON);
    let o = simres(&["ratio", f.to_str().unwrap(), "--sigma", "1.2 2.2 3.2", "--formula", "color-shifted", "--both"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "8 brute 8 EQUAL\n");
}

#[test]
fn homology_of_projective_plane() {
    let f = fixture("rp2.txt", "1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 2 6\n2 3 5\n3 4 6\n2 4 5\n3 5 6\n2 4 6\n");
    let o = simres(&["homology", f.to_str().unwrap()]);
    assert_eq!(stdout(&o), "H_0 rank 0 torsion 1\nH_1 rank 0 torsion 2\nH_2 rank 0 torsion 1\n");
}

#[test]
fn random_points_are_labelled_and_seeded() {
    let f = fixture("octa-random.txt", OCTAHEDRON);
    let a = simres(&["tree-count", f.to_str().unwrap(), "--weights", "random:2", "--seed", "5"]);
    let b = simres(&["tree-count", f.to_str().unwrap(), "--weights", "random:2", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.starts_with("random1 ") && out.contains("\nrandom2 "), "{out}");
}

#[test]
fn weight_file() {
    let f = fixture("path-w.txt", "1 2\n2 3\n");
    let w = fixture("path-weights.txt", "1 2\n2 1/3\n3 5\n");
    let o = simres(&["tree-count", f.to_str().unwrap(), "--weights", w.to_str().unwrap()]);
    assert_eq!(stdout(&o), "10/9\n");
}

#[test]
fn verify_only_filters_and_user_files_join() {
    let f = fixture("extra.txt", "generators\n2 3 5\n");
    let o = simres(&["verify", f.to_str().unwrap(), "--only", "thm6.9"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.contains("\"check\":\"thm6.9\"")));
    assert!(out.contains("\"complex\":\"file:extra\""));
}

#[test]
fn corrupted_currents_fail_kcl() {
    let o = simres(&["verify", "--only", "thm6.3.kcl", "--corrupt-currents", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}
