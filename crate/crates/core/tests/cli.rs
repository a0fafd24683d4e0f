use std::path::Path;
use std::process::{Command, Output};

fn sigvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigvar")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn sig_writes_canonical_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "y.csv", "x,y\n1,2\n2,3\n# comment\n3,2\n");
    let o = sigvar(&["sig", "--height", "2", &csv]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let json = stdout(&o);
    let t = sigvar::Tensor::from_json(&json).unwrap();
    assert_eq!(
        t.coefficient(&sigvar::Word::parse("2.1").unwrap()),
        sigvar::rational::int(19)
    );

    // feeding the output back through a map and its inverse reproduces the bytes
    let first = write(dir.path(), "s.json", &json);
    let out = dir.path().join("phi.json");
    let o = sigvar(&["hoffman", "--map", "phi-star", "--out", out.to_str().unwrap(), &first]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let o = sigvar(&["hoffman", "--map", "psi-star", out.to_str().unwrap()]);
    assert_eq!(stdout(&o), json);

    let path = write(dir.path(), "x.csv", "0,0\n1,2\n3,5\n6,7\n");
    let o = sigvar(&["sig", "--height", "2", "--path", &path]);
    assert_eq!(stdout(&o), json);
}

#[test]
fn checks_report_pass_and_fail() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "y.csv", "1,2\n2,3\n3,2\n");
    for kind in ["qshuffle", "grouplike", "lie"] {
        let o = sigvar(&["check", kind, "--height", "3", &csv]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stderr(&o));
        assert!(stdout(&o).starts_with("PASS ("), "{kind}: {}", stdout(&o));
    }
    let json = stdout(&sigvar(&["sig", "--height", "2", &csv]));
    let tensor = write(dir.path(), "s.json", &json);
    let o = sigvar(&["check", "grouplike", &tensor]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL after"));
    let o = sigvar(&["check", "lie", &csv]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--height"));
}

#[test]
fn malformed_input_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "bad.csv", "1,2\n2,oops\n");
    let o = sigvar(&["sig", "--height", "2", &csv]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("line 2") && err.contains("column"), "{err}");

    let json = write(dir.path(), "bad.json", "{\n  \"dim\": 2,\n  \"height\": \n}");
    let o = sigvar(&["hoffman", "--map", "phi", &json]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));

    assert_eq!(sigvar(&["sig", "--height", "0", &csv]).status.code(), Some(1));
    assert_eq!(sigvar(&["sig", "--height", "x", &csv]).status.code(), Some(2));
    assert_eq!(sigvar(&["sig", "--unknown"]).status.code(), Some(2));
    assert_eq!(
        sigvar(&["sig", "--height", "2", "/nonexistent/y.csv"]).status.code(),
        Some(1)
    );
}

#[test]
fn logsig_and_reach() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "y.csv", "1,0\n0,1\n0,1\n1,0\n");
    let o = sigvar(&["logsig", "--height", "2", &csv]);
    assert_eq!(o.status.code(), Some(0));
    let log = sigvar::Tensor::from_json(&stdout(&o)).unwrap();
    assert!(log.is_lie_shuffle());
    // a doubled series: the log-signature is its letter part
    let target = write(dir.path(), "target.json", &stdout(&o));
    let o = sigvar(&["reach", "--target", &target, "--series", &csv]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(
        stdout(&o)
            .trim_end()
            .ends_with("REACHED (9 constraints, 0 nonzero residuals)"),
        "{}",
        stdout(&o)
    );
    let o = sigvar(&[
        "reach",
        "--target",
        &target,
        "--series",
        &csv,
        "--convention",
        "phi-star",
    ]);
    assert!(stdout(&o).contains(" 0 nonzero"));
    let other = write(dir.path(), "z.csv", "1,0\n0,1\n");
    let o = sigvar(&["reach", "--target", &target, "--series", &other]);
    assert!(stdout(&o).contains("NOT REACHED"));
}

#[test]
fn varieties_commands() {
    let o = sigvar(&[
        "dim-estimate",
        "--dim",
        "2",
        "--height",
        "2",
        "--series-len",
        "3..4",
        "--seed",
        "7",
    ]);
    assert_eq!(stdout(&o), "N rank\n3 6\n4 6\nconjectured dimension 6\n");
    let o = sigvar(&["export-m2", "--dim", "1", "--height", "3", "--series-len", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("R = QQ[s00, s01, s10, s11];"));
    assert_eq!(
        stdout(&o),
        stdout(&sigvar(&[
            "export-m2",
            "--dim",
            "1",
            "--height",
            "3",
            "--series-len",
            "3"
        ]))
    );
    let o = sigvar(&[
        "verify-vanishing",
        "--dim",
        "1",
        "--height",
        "2",
        "--series-len",
        "1",
        "s0",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = sigvar(&[
        "verify-vanishing",
        "--dim",
        "1",
        "--height",
        "2",
        "--series-len",
        "2",
        "s0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("numeric: FAIL"));
}

#[test]
fn lyndon_listing_is_deterministic() {
    let o = sigvar(&["lyndon", "--dim", "3", "--height", "4"]);
    let words: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(words.len(), 3 + 9 + 36 + 132);
    assert_eq!(stdout(&o), stdout(&sigvar(&["lyndon", "--dim", "3", "--height", "4"])));
    let o = sigvar(&["lambda-table", "--format", "csv"]);
    assert!(stdout(&o).lines().last().unwrap().ends_with(",188856934"));
}
