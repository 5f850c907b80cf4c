use std::process::{Command, Output};

fn son2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_son2"))
        .args(args)
        .env_remove("SON2_FORMAT")
        .env_remove("SON2_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn full_verify_passes() {
    let o = son2(&["verify", "--all", "--n", "2", "--degree", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 failed\n"));
}

#[test]
fn lie_suite_for_n3_checks_printed_matrices() {
    let o = son2(&["verify", "--lie", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("X3 matches the reference matrix"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(son2(&["verify", "--n", "0"]).status.code(), Some(2));
    assert_eq!(son2(&["gram", "--tau", "0.5"]).status.code(), Some(2));
    assert_eq!(son2(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn singular_input_exits_one() {
    let o = son2(&["z-to-v", "--z", "0,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("singular coordinates"));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &[
            "verify",
            "--coherent",
            "--observables",
            "--n",
            "2",
            "--seed",
            "11",
            "--format",
            "json",
        ][..],
        &["gram", "--n", "2", "--degree", "2", "--format", "csv"][..],
    ] {
        assert_eq!(son2(args).stdout, son2(args).stdout);
    }
}

#[test]
fn table_examples() {
    let o = son2(&[
        "moments", "--n", "1", "--tau", "2", "--degree", "2", "--format", "csv",
    ]);
    assert_eq!(stdout(&o), "k,moment\n(0),1\n(1),2\n(2),6\n");
    let o = son2(&["basis-poly", "--n", "1", "--kmax", "1"]);
    assert!(stdout(&o).contains("(0): 1\n(1): x1 - t\n"));
    let o = son2(&["gram", "--n", "1", "--degree", "3"]);
    let text = stdout(&o);
    assert!(text.contains("(2): 0 | 0 | 2*t^2 + 2*t | 0"), "{text}");
    assert!(
        text.contains("(3): 0 | 0 | 0 | 6*t^3 + 18*t^2 + 12*t"),
        "{text}"
    );
}

#[test]
fn environment_overrides_flags_defaults() {
    let o = Command::new(env!("CARGO_BIN_EXE_son2"))
        .args(["moments", "--tau", "2", "--degree", "1"])
        .env("SON2_N", "1")
        .env("SON2_FORMAT", "csv")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "k,moment\n(0),1\n(1),2\n");
}

#[test]
fn coordinates_and_leibniz_points() {
    let o = son2(&["z-to-v", "--z", "1/2", "--format", "csv"]);
    assert_eq!(stdout(&o), "v1,h2\n1,1/4\n");
    let o = son2(&["v-to-z", "--v", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "z1,h2\n1/2,1/4\n");
    let o = son2(&[
        "leibniz", "--n", "2", "--w", "1,0", "--v", "0,1", "--format", "csv",
    ]);
    assert_eq!(stdout(&o), "P\n2\n");
}

#[test]
fn berezin_latex_is_optional() {
    let plain = stdout(&son2(&["verify", "--berezin", "--n", "1", "--degree", "2"]));
    let latex = stdout(&son2(&[
        "verify",
        "--berezin",
        "--n",
        "1",
        "--degree",
        "2",
        "--emit-latex",
    ]));
    assert!(!plain.contains("\\["));
    assert!(latex.contains("\\langle \\hat R_{1}"));
}
