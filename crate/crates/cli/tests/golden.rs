use std::path::Path;
use std::process::{Command, Output};

fn rcn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcn")).args(args).env_remove("RCN_STORE").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = rcn(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn table1_csv() {
    assert_eq!(stdout(&["table1", "--from", "10", "--to", "20", "--csv"]), golden("table1_10_20.csv"));
}

#[test]
fn kedges_csv() {
    assert_eq!(stdout(&["kedges", "--drawing", "k8_4"]), golden("kedges_k8_4.csv"));
}

#[test]
fn library_json() {
    assert_eq!(stdout(&["generate", "library", "k222_planar"]), golden("k222_planar.json"));
}

#[test]
fn bounds_csv() {
    assert_eq!(stdout(&["formulas", "bounds", "--n", "24", "--r", "4"]), golden("bounds_24_4.csv"));
}

#[test]
fn prop1_report() {
    assert_eq!(stdout(&["verify-prop1"]), golden("verify_prop1.txt"));
}

#[test]
fn embed_report() {
    assert_eq!(stdout(&["embed", "--guest", "balanced:6,3", "--host", "hill:6", "--exhaustive"]), golden("embed_k222_hill6.txt"));
}

#[test]
fn plant_report() {
    assert_eq!(stdout(&["plant", "--seed", "k4_planar", "--s", "2", "--verify"]), golden("plant_k4_s2.txt"));
}

#[test]
fn one_line_answers() {
    assert_eq!(stdout(&["count", "--drawing", "k24_4"]), "2033\n");
    assert_eq!(stdout(&["verify-dataset"]), "2033 verified\n");
    assert_eq!(stdout(&["hill", "--n", "12"]), "H=150 verified\n");
    assert_eq!(stdout(&["lowerbound", "--n", "10"]), "62\n");
    assert_eq!(stdout(&["formulas", "hill", "--n", "12"]), "150\n");
}

#[test]
fn written_drawing_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("z.json");
    let f = file.to_str().unwrap();
    assert_eq!(stdout(&["generate", "zarankiewicz", "--m", "4", "--n", "5", "--out", f]), "8\n");
    assert_eq!(stdout(&["count", "--drawing", f]), "8\n");
    let complete: u64 = stdout(&["count", "--drawing", f, "--graph", "complete:9"]).trim().parse().unwrap();
    assert!(complete >= 36);
}

#[test]
fn optimize_writes_the_store() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store");
    let s = store.to_str().unwrap();
    let args = ["optimize", "--graph", "balanced:8,4", "--restarts", "2", "--max-moves", "3000", "--serial", "--seed", "1", "--store", s];
    let first = stdout(&args);
    assert!(first.contains("best=8\n"), "{first}");
    assert_eq!(first.lines().filter(|l| l.starts_with("restart ")).count(), 2);
    assert!(first.ends_with("stored: created\n"), "{first}");
    assert!(store.join("balanced_8_4.json").exists() && store.join("balanced_8_4.meta.json").exists());
    let again = stdout(&args);
    assert_eq!(first.lines().take(3).collect::<Vec<_>>(), again.lines().take(3).collect::<Vec<_>>());
    assert!(!again.ends_with("stored: created\n"));
    assert_eq!(stdout(&["count", "--drawing", store.join("balanced_8_4.json").to_str().unwrap()]), "8\n");
}

#[test]
fn failures_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"format":"rcn-drawing/1","coordinate_kind":"integer","graph":{"classes":[0,1,2],"family":"complete","params":{"n":3}},"points":[[0,0],[1,1],[2,2]]}"#,
    )
    .unwrap();
    for args in [
        vec!["count", "--drawing", bad.to_str().unwrap()],
        vec!["count", "--drawing", "no_such_seed"],
        vec!["generate", "layered", "--r", "1"],
        vec!["bogus"],
        vec!["formulas", "planted"],
    ] {
        let out = rcn(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error"), "{args:?}");
    }
}
