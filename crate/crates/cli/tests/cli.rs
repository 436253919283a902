use std::path::Path;
use std::process::{Command, Output};

fn tpgrass(args: &[&str], fixtures: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tpgrass"));
    c.args(args);
    match fixtures {
        Some(dir) => c.env("TPGRASS_FIXTURES", dir),
        None => c.env_remove("TPGRASS_FIXTURES"),
    };
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn shipped(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)).unwrap()
}

#[test]
fn tables_pass_with_shipped_fixtures() {
    let o = tpgrass(&["check-tables", "--k", "3", "--n", "6"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS rays (16)"));
}

#[test]
fn corrupted_fixture_fails_with_diff() {
    let dir = tempfile::tempdir().unwrap();
    let bad = shipped("gr36.json").replace("\"e1-e2-e3\"", "\"e1-e2+e3\"");
    std::fs::write(dir.path().join("gr36.json"), bad).unwrap();
    let o = tpgrass(&["check-tables", "--k", "3", "--n", "6"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL rays"), "{text}");
    assert!(text.contains("missing    e1-e2+e3"), "{text}");
    assert!(text.contains("unexpected e1-e2-e3"), "{text}");
}

#[test]
fn missing_fixture_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = tpgrass(&["check-tables", "--k", "3", "--n", "6"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing fixture"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tpgrass(&["fan", "--k", "3"], None).status.code(), Some(2));
    assert_eq!(tpgrass(&["no-such-command"], None).status.code(), Some(2));
    assert_eq!(tpgrass(&["check-tables", "--k", "2", "--n", "5"], None).status.code(), Some(2));
    assert_eq!(tpgrass(&["param", "--k", "2", "--n", "5", "--x", "1,2,3"], None).status.code(), Some(2));
}

#[test]
fn fan_files_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (p, threads) in [(&a, "1"), (&b, "4")] {
        let o = tpgrass(&["--threads", threads, "fan", "--k", "3", "--n", "6", "--out", p.to_str().unwrap()], None);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r1 = stdout(&tpgrass(&["report", a.to_str().unwrap()], None));
    let r2 = stdout(&tpgrass(&["report", b.to_str().unwrap()], None));
    assert_eq!(r1, r2);
    assert!(r1.contains("f_vector\t16 66 98 48\n"));
    assert_eq!(stdout(&tpgrass(&["rays", a.to_str().unwrap()], None)).lines().count(), 16);
    assert_eq!(stdout(&tpgrass(&["fvector", a.to_str().unwrap()], None)), "16 66 98 48\n");
}

#[test]
fn refine_and_split_report() {
    let dir = tempfile::tempdir().unwrap();
    let before = dir.path().join("f36.json");
    let after = dir.path().join("d4.json");
    assert_eq!(tpgrass(&["fan", "--k", "3", "--n", "6", "--out", before.to_str().unwrap()], None).status.code(), Some(0));
    let o = tpgrass(&["refine", "--k", "3", "--n", "6", "--out", after.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = tpgrass(&["split-report", before.to_str().unwrap(), after.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# 5 rays -> {2} children"), "{text}");
    assert!(text.contains("# rays unchanged: true"));
    let swapped = tpgrass(&["split-report", after.to_str().unwrap(), before.to_str().unwrap()], None);
    assert_eq!(swapped.status.code(), Some(2));
}

#[test]
fn malformed_fan_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"ambient_dim\": 2}").unwrap();
    let o = tpgrass(&["report", p.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parameterization_round_trip() {
    let o = tpgrass(&["param", "--k", "2", "--n", "4", "--x", "3"], None);
    let coords: Vec<String> = stdout(&o).lines().map(|l| l.split('\t').nth(1).unwrap().to_string()).collect();
    assert_eq!(coords, ["1", "1", "1", "1", "4", "3"]);
    let o = tpgrass(&["invert", "--k", "2", "--n", "4", "--pluecker", &coords.join(",")], None);
    assert!(stdout(&o).contains("(1,4)\tinner\t3"), "{}", stdout(&o));
}

#[test]
fn oracle_and_trop_list() {
    let o = tpgrass(&["oracle"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("PASS accept x_1").count(), 11);
    assert_eq!(tpgrass(&["check-trop"], None).status.code(), Some(0));
    assert_eq!(tpgrass(&["sp-check", "--max", "6"], None).status.code(), Some(0));
}
