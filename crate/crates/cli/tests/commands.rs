use std::process::{Command, Output};

fn ohno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ohno"))
        .args(args)
        .env_remove("OHNO_CACHE")
        .output()
        .expect("run ohno")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(args: &[&str]) -> i32 {
    ohno(args).status.code().expect("exit code")
}

#[test]
fn eval_zeta_one_two() {
    let o = ohno(&["eval", "--index", "1,2", "--tol", "1e-12"]);
    assert!(o.status.success());
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 1.2020569031595942).abs() < 1e-12, "{v}");
}

#[test]
fn expand_dual_and_ohno() {
    assert_eq!(
        stdout(&ohno(&["expand", "--expr", "(2)#(3)"])).trim(),
        "1*(2,3) + 1*(3,2)"
    );
    assert_eq!(stdout(&ohno(&["dual", "--expr", "(2,3)"])).trim(), "1*(1,2,2)");
    assert_eq!(stdout(&ohno(&["dual", "--index", "2,3"])).trim(), "1*(1,2,2)");
    let o = ohno(&["ohno", "--m", "1", "--expr", "(1,2)", "--symbolic"]);
    assert_eq!(stdout(&o).trim(), "1*(1,3) + 1*(2,2)");
    let o = ohno(&["ohno", "--M", "2", "--index", "2"]);
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("m=0\t1.6449340668"));
}

#[test]
fn verify_examples_write_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = ohno(&[
        "verify",
        "--name",
        "main",
        "--s",
        "2..3",
        "--t",
        "2..3",
        "--l",
        "0..1",
        "--m",
        "0..1",
        "--tol",
        "1e-10",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"identity\": \"main\""));
    assert!(stdout(&o).starts_with("main: PASS (16 points"));

    let o = ohno(&["verify", "--name", "add1", "--s", "2..3", "--l", "1..2", "--m", "0..2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exact"));

    let csv = dir.path().join("report.csv");
    let o = ohno(&[
        "verify",
        "--name",
        "duality",
        "--weight",
        "2..4",
        "--format",
        "csv",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&csv)
        .unwrap()
        .starts_with("identity,params,residual,tol,pass,evals,elapsed_ms\n"));
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["list"], 0),
        (&["expand", "--expr", "ohno(2, (1,2)) - 2*(3)"], 0),
        (&["verify", "--name", "hast_symmetry", "--l", "0..2"], 0),
        // A point outside the hypotheses is refused, which fails the sweep.
        (&["verify", "--name", "hmos", "--s", "1..2", "--t", "2", "--m", "0"], 1),
        (&["verify", "--name", "duality", "--weight", "3", "--terms-cap", "2"], 1),
        (&[], 2),
        (&["frobnicate"], 2),
        (&["expand", "--expr", "(1,)"], 2),
        (&["expand", "--expr", "dual((2,1))"], 2),
        (&["eval", "--index", "2,1"], 2),
        (&["eval", "--index", "2", "--tol", "1e-20"], 2),
        (&["eval", "--index", "2", "--expr", "(2)"], 2),
        (&["verify", "--name", "nope"], 2),
        (&["verify", "--name", "duality", "--s", "2"], 2),
        (&["verify", "--name", "main", "--s", "4..2"], 2),
        (&["verify", "--name", "main", "--format", "xml"], 2),
    ];
    for (args, expected) in cases {
        assert_eq!(code(args), *expected, "{args:?}");
    }
}

#[test]
fn usage_errors_print_the_grammar() {
    let o = ohno(&["expand", "--expr", "(1,)"]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("column 4"), "{err}");
    assert!(err.contains("literal  :="), "{err}");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = |jobs: &'static str| {
        [
            "--jobs", jobs, "verify", "--name", "hmos", "--s", "2..3", "--t", "2..3", "--m", "0..1", "--tol", "1e-10",
        ]
    };
    let one = stdout(&ohno(&args("1")));
    let four = stdout(&ohno(&args("4")));
    assert_eq!(one, four);
    assert_eq!(one, stdout(&ohno(&args("4"))));
}

#[test]
fn cache_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeta.cache");
    let first = ohno(&["eval", "--index", "2,3", "--cache", path.to_str().unwrap()]);
    assert!(first.status.success());
    assert!(std::fs::read_to_string(&path).unwrap().contains("2,3"));
    let second = ohno(&["eval", "--index", "2,3", "--cache", path.to_str().unwrap()]);
    assert_eq!(stdout(&first), stdout(&second));

    let env_path = dir.path().join("env.cache");
    let o = Command::new(env!("CARGO_BIN_EXE_ohno"))
        .args(["eval", "--index", "3", "--cache", path.to_str().unwrap()])
        .env("OHNO_CACHE", &env_path)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(env_path.exists());

    let off = dir.path().join("off.cache");
    let o = Command::new(env!("CARGO_BIN_EXE_ohno"))
        .args(["eval", "--index", "3", "--cache", "off"])
        .env("OHNO_CACHE", &off)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(!off.exists());
}
