use std::path::PathBuf;
use std::process::{Command, Output};

fn indiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indiff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const F1: &str = r#"{
  "version": 1,
  "outcomes": ["x0", "x1", "x2"],
  "elicitation": {
    "indifferent": [["1/3", "1/3", "1/3"], ["5/12", "1/6", "5/12"]],
    "strict": {"better": ["0", "0", "1"], "worse": ["1", "0", "0"]}
  }
}"#;

fn f1() -> String {
    write("f1.json", F1).display().to_string()
}

#[test]
fn elicit_recovers_the_utility() {
    let out = indiff(&["elicit", "--scenario", &f1()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("utility = (0, 1, 2)\n"));

    let flipped = indiff(&[
        "elicit",
        "--indifferent",
        "1/3,1/3,1/3;5/12,1/6,5/12",
        "--better",
        "1,0,0",
        "--worse",
        "0,0,1",
    ]);
    assert_eq!(flipped.status.code(), Some(0));
    assert!(stdout(&flipped).starts_with("utility = (0, -1, -2)\n"));
}

#[test]
fn classify_against_uniform() {
    let out = indiff(&[
        "classify",
        "--scenario",
        &f1(),
        "--reference",
        "uniform",
        "--query",
        "0,0,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("result = strictly-better"));

    let out = indiff(&[
        "classify",
        "--scenario",
        &f1(),
        "--reference",
        "uniform",
        "--query",
        "1/2,0,1/2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["result"], "indifferent");
}

#[test]
fn hybrid_independence_violation_replays() {
    let out = indiff(&[
        "check",
        "--axiom",
        "independence",
        "--oracle",
        "hybrid",
        "--grid",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "violated");
    assert_eq!(v["witness"]["alpha"], "1/2");

    let found = write("independence.json", &stdout(&out));
    let found = found.to_str().unwrap();
    assert_eq!(
        indiff(&["replay", "--input", found, "--oracle", "hybrid"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        indiff(&[
            "replay",
            "--input",
            found,
            "--oracle",
            "eu",
            "--utility",
            "0,1,2"
        ])
        .status
        .code(),
        Some(1)
    );

    let stated = write(
        "stated.json",
        r#"{"axiom": "independence", "p": ["1/2", "1/2", "0"], "q": ["1/2", "0", "1/2"],
            "r": ["0", "0", "1"], "alpha": "1/2", "before": "indifferent", "after": "strictly-better"}"#,
    );
    let out = indiff(&[
        "replay",
        "--input",
        stated.to_str().unwrap(),
        "--oracle",
        "hybrid",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn betweenness_and_ip_hold_for_the_hybrid() {
    let args = [
        "check",
        "--axiom",
        "independence",
        "--variant",
        "betweenness",
        "--oracle",
        "hybrid",
        "--grid",
        "6",
    ];
    assert_eq!(indiff(&args).status.code(), Some(0));
    let out = indiff(&[
        "check", "--axiom", "ip", "--oracle", "hybrid", "--grid", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("- (1/2, 1/2, 0)\n    - (1/2, 0, 1/2)\n"));
}

#[test]
fn continuity_scans_are_deterministic() {
    let args = [
        "check",
        "--axiom",
        "continuity",
        "--oracle",
        "hybrid",
        "--grid",
        "8",
        "--format",
        "json",
    ];
    let first = indiff(&args);
    let second = indiff(&args);
    assert_eq!(first.status.code(), Some(1));
    assert_eq!(first.stdout, second.stdout);

    let out_path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("continuity.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out_path.to_str().unwrap()]);
    let third = indiff(&with_out);
    assert_eq!(third.stdout, first.stdout);
    assert_eq!(std::fs::read(&out_path).unwrap(), first.stdout);

    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 4);
    for (check, kind) in
        checks
            .iter()
            .zip(["grid-openness", "mixture", "archimedean", "solvability"])
    {
        assert_eq!(check["kind"], kind);
        assert_eq!(check["verdict"], "violated");
        let path = write(&format!("{kind}.json"), &check.to_string());
        let replay = indiff(&[
            "replay",
            "--input",
            path.to_str().unwrap(),
            "--oracle",
            "hybrid",
        ]);
        assert_eq!(replay.status.code(), Some(0), "{kind}");
    }
}

#[test]
fn certify_and_replay() {
    let out = indiff(&[
        "certify",
        "--scenario",
        &f1(),
        "--target",
        "1/2,0,1/2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["certificate"]["branch"], "reduction");
    assert_eq!(v["certificate"]["alpha_star"], "2/3");
    assert_eq!(v["replay"], "ok");

    let path = write("certificate.json", &stdout(&out));
    let path = path.to_str().unwrap();
    assert_eq!(
        indiff(&["replay", "--input", path, "--scenario", &f1()])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        indiff(&["replay", "--input", path, "--oracle", "lex"])
            .status
            .code(),
        Some(1)
    );

    let off_hull = indiff(&["certify", "--scenario", &f1(), "--target", "0,0,1"]);
    assert_eq!(off_hull.status.code(), Some(2));
}

#[test]
fn construct_and_generate() {
    let out = indiff(&[
        "construct-ip",
        "--utility",
        "0,1,2",
        "--p",
        "0,0,1",
        "--q",
        "1/2,0,1/2",
        "--r",
        "1,0,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "points:\n  - (1/2, 0, 1/2)\n  - (0, 1, 0)\n");

    let out = indiff(&[
        "construct-ip",
        "--oracle",
        "hybrid",
        "--p",
        "1,0,0",
        "--q",
        "3/4,1/4,0",
        "--r",
        "0,0,1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = indiff(&["generate", "--utility", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("points:\n  - (1/2, 1/2)\n"));
}

#[test]
fn scenario_checks_run_in_order() {
    let path = write(
        "checks.json",
        r#"{"version": 1, "outcomes": ["a", "b", "c"], "utility": ["0", "1", "2"],
            "checks": [{"axiom": "weak-order", "grid": 3},
                       {"axiom": "independence", "variant": "betweenness", "grid": 3},
                       {"axiom": "line-order", "grid": 4}]}"#,
    );
    let out = indiff(&[
        "check",
        "--scenario",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let axioms: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["axiom"].as_str().unwrap())
        .collect();
    assert_eq!(axioms, ["weak-order", "independence", "line-order"]);
}

#[test]
fn invalid_input_exits_with_two() {
    let non_canonical = indiff(&[
        "classify",
        "--scenario",
        &f1(),
        "--reference",
        "uniform",
        "--query",
        "2/4,1/4,1/4",
    ]);
    assert_eq!(non_canonical.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&non_canonical.stderr).contains("lowest terms"));

    let version = write(
        "version.json",
        &F1.replace("\"version\": 1", "\"version\": 7"),
    );
    assert_eq!(
        indiff(&["elicit", "--scenario", version.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    let short = write(
        "short.json",
        &F1.replace(r#"["1/3", "1/3", "1/3"]"#, r#"["1/2", "1/2"]"#),
    );
    let out = indiff(&["elicit", "--scenario", short.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("elicitation.indifferent"));

    let repeated = indiff(&["elicit", "--indifferent", "1/3,1/3,1/3;1/3,1/3,1/3"]);
    assert_eq!(repeated.status.code(), Some(2));

    let unoriented = indiff(&[
        "classify",
        "--reference",
        "uniform",
        "--query",
        "0,0,1",
        "--scenario",
        &{
            let text = F1.replace(
                r#",
    "strict": {"better": ["0", "0", "1"], "worse": ["1", "0", "0"]}"#,
                "",
            );
            write("unoriented.json", &text).display().to_string()
        },
    ]);
    assert_eq!(unoriented.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unoriented.stderr).contains("orient"));
}
