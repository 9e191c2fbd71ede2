use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chordcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_examples() {
    let o = run(&[
        "eval",
        "--formula",
        "I2_1",
        "--code",
        "chords; n=3; 1-4:+ 2-5:+ 3-6:+",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-3\n");

    let o = run(&["eval", "--formula", "I3_1", "--code", "chords; n=1; 1-2:+"]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn eval_alias_and_formula_text() {
    let code = "chords; n=3; 1-4:+ 2-5:+ 3-6:+";
    let o = run(&[
        "eval",
        "--formula",
        "I23_1",
        "--formula",
        "+[1-3,2-4]",
        "--code",
        code,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o1 = run(&["eval", "--formula", "I3_1", "--code", code]);
    let first = stdout(&o).split(' ').next().unwrap().to_string();
    assert_eq!(format!("{first}\n"), stdout(&o1));
    assert!(stdout(&o).ends_with(" 3\n"));
}

#[test]
fn eval_one_line_per_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.txt");
    fs::write(
        &path,
        "# two diagrams\nchords; n=1; 1-2:+\n\narrows; n=2; 1>3:+ 2>4:+\n",
    )
    .unwrap();
    let o = run(&[
        "eval",
        "--formula",
        "I2_1",
        "--file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let o = run(&["eval", "--formula", "NOPE", "--code", "chords; n=1; 1-2:+"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown formula"));

    let o = run(&["eval", "--formula", "I2_1", "--code", "chords; n=1; 1-3:+"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["eval", "--code", "chords; n=0;"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&[
        "eval",
        "--formula",
        "I2_1",
        "--calibration",
        "/nonexistent",
        "--code",
        "chords; n=0;",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generate_examples() {
    let o = run(&["generate", "torus", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("arrows; n=3; 1>4:+ 5>2:+ 3>6:+\n"));

    let o = run(&["generate", "cabc", "--a", "2", "--b", "1", "--c", "1"]);
    let text = stdout(&o);
    assert!(text.contains("# rot=2\n"));
    assert!(text.contains("# jplus=2\n"));

    let o = run(&["generate", "torus", "--n", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("odd"));
}

#[test]
fn generated_equivalent_replays() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("moves.log");
    let seed = stdout(&run(&[
        "generate", "cabc", "--a", "1", "--b", "1", "--c", "0",
    ]));
    let o = run(&[
        "generate",
        "equivalent",
        "--code",
        &seed,
        "--moves",
        "15",
        "--rng-seed",
        "8",
        "--log",
        log.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let end = out.lines().next().unwrap();
    assert!(out.contains("# source=moves-from(input;rng=8;moves=15)"));

    let o = run(&["replay", "--log", log.to_str().unwrap(), "--code", &seed]);
    assert_eq!(stdout(&o), format!("{end}\n"));

    // Equivalent curves agree on every formula.
    let all = ["I2_1", "I3_1", "I3_2", "I3_3", "I3_4", "I3_5"];
    let mut args = vec!["eval"];
    for f in &all {
        args.extend(["--formula", f]);
    }
    let before = stdout(&run(&[&args[..], &["--code", &seed]].concat()));
    let after = stdout(&run(&[&args[..], &["--code", end]].concat()));
    assert_eq!(before, after);
}

#[test]
fn table_detects_family_members() {
    let o = run(&[
        "table", "--family", "cabc", "--r", "2", "--b0", "1", "--c0", "1", "--kmax", "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().nth(1).unwrap().ends_with(" 1 4 0 0 -1 1"));
    assert!(text.ends_with("distinct: yes (5 rows pairwise distinct)\n"));
}

#[test]
fn fuzz_default_is_ok_and_deterministic() {
    let o = run(&[
        "fuzz", "--seeds", "default", "--trials", "100", "--depth", "20",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "OK trials=100 seeds=14 depth=20\n");
}

#[test]
fn fuzz_reports_violations_with_exit_1() {
    let args = ["fuzz", "--trials", "4", "--dr2", "--formula", "I2_1"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(1));
    assert!(stdout(&a).contains("VIOLATION formula=I2_1"));
    assert_eq!(stdout(&a), stdout(&run(&args)));
}

#[test]
fn calibrate_finds_frozen_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cal.txt");
    let o = run(&[
        "calibrate",
        "--trials",
        "10",
        "--write",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("survivors=8"));
    let written = fs::read_to_string(&out).unwrap();
    assert_eq!(
        written,
        "orientation=ccw; arrow_rule=forward_plus; eval_mode=weighted; triangle=[1>4,5>2,3>6]\n"
    );
    let o = run(&[
        "eval",
        "--calibration",
        out.to_str().unwrap(),
        "--formula",
        "I2_1",
        "--code",
        "chords; n=3; 1-4:+ 2-5:+ 3-6:+",
    ]);
    assert_eq!(stdout(&o), "-3\n");
}

#[test]
fn calibrate_rejects_corrupted_registry() {
    let dir = tempfile::tempdir().unwrap();
    let reg = dir.path().join("bad.txt");
    fs::write(
        &reg,
        "I2_1 := +[1-2,3-4] +[1-3,2-4]\nI3_1 := +[1-2,3-4,5-6] +[1-6,2-3,4-5]\n",
    )
    .unwrap();
    let o = run(&[
        "calibrate",
        "--registry",
        reg.to_str().unwrap(),
        "--trials",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no surviving configuration"));
}
