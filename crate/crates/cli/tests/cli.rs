use std::process::{Command, Output};

use genusgauge_cli::output::Envelope;
use genusgauge_core::obstruct::decide;
use genusgauge_core::EmbedQuery;

fn genusgauge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genusgauge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn eval_prints_exact_values() {
    for (args, want) in [
        (vec!["eval", "G", "--k", "6", "--q", "5"], "1"),
        (vec!["eval", "N", "--k", "1", "--q", "1"], "1"),
        (vec!["eval", "G", "--k", "1", "--q", "1"], "1/2"),
        (
            vec![
                "eval", "qd", "--h", "1", "--e", "0", "--label", "t1", "--which", "bot",
            ],
            "1/2",
        ),
        (vec!["eval", "g", "--k", "2", "--q", "-1", "--i", "-3"], "1"),
        (
            vec!["eval", "P", "--k", "2", "--q", "1", "--i", "1"],
            "1*u^0 + 1*u^1",
        ),
        (vec!["eval", "h1q", "--h", "2", "--e", "0"], "Z + Z_2 + Z_2"),
        (vec!["eval", "rhoq", "--h", "1", "--e", "-6"], "3"),
    ] {
        let o = genusgauge(&args);
        assert_eq!(
            code(&o),
            0,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert_eq!(stdout(&o).trim(), want, "{args:?}");
    }
}

#[test]
fn eval_errors() {
    let o = genusgauge(&["eval", "G", "--k", "2", "--q", "2"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("genusgauge:"));
    assert_eq!(code(&genusgauge(&["eval", "G", "--k", "2"])), 2);
    assert_eq!(code(&genusgauge(&["eval", "nonsense", "--k", "2"])), 2);
    assert_eq!(
        code(&genusgauge(&["eval", "rhoq", "--h", "1", "--e", "1"])),
        1
    );
}

#[test]
fn roots_cap_comes_from_the_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_genusgauge"))
            .args(["eval", "g_roots", "--k", "20", "--q", "1", "--i", "0"])
            .env("GENUSGAUGE_MAX_K", cap)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("10")), 1);
    assert_eq!(code(&run("20")), 0);
    assert_eq!(code(&run("many")), 2);
}

#[test]
fn feasible_exit_codes() {
    let o = genusgauge(&["feasible", "--lens", "4,1", "--h", "1", "--e", "0"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("infeasible"));
    assert!(stdout(&o).contains("h ≥ N"));

    assert_eq!(
        code(&genusgauge(&[
            "feasible", "--sphere", "--h", "1", "--e", "2"
        ])),
        0
    );
    assert_eq!(
        code(&genusgauge(&[
            "feasible", "--sphere", "--h", "1", "--e", "-2"
        ])),
        0
    );
    assert_eq!(
        code(&genusgauge(&[
            "feasible", "--delta", "1/2", "--h", "1", "--e", "0"
        ])),
        0
    );
    assert_eq!(
        code(&genusgauge(&[
            "feasible", "--rho", "4", "--kc", "1", "--h", "2", "--e", "0"
        ])),
        3
    );
    assert_eq!(
        code(&genusgauge(&[
            "feasible", "--spin", "0,1,1", "--h", "2", "--e", "0"
        ])),
        0
    );
}

#[test]
fn conflicting_or_missing_contexts_are_usage_errors() {
    assert_eq!(
        code(&genusgauge(&[
            "feasible", "--sphere", "--lens", "4,1", "--h", "1", "--e", "0"
        ])),
        2
    );
    assert_eq!(code(&genusgauge(&["feasible", "--h", "1", "--e", "0"])), 2);
    assert_eq!(
        code(&genusgauge(&[
            "feasible", "--lens", "5,1", "--h", "1", "--e", "0"
        ])),
        2
    );
    assert_eq!(code(&genusgauge(&["feasible", "--sphere", "--h", "1"])), 2);
    assert_eq!(
        code(&genusgauge(&[
            "feasible", "--sphere", "--h", "0", "--e", "0"
        ])),
        1
    );
}

#[test]
fn feasible_json_has_certificate_and_round_trips() {
    let o = genusgauge(&[
        "feasible", "--lens", "4,1", "--h", "3", "--e", "2", "--json",
    ]);
    assert_eq!(code(&o), 0);
    let env: Envelope = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(env.command, "feasible");
    assert_eq!(
        env.certificate.as_ref().unwrap()["counts"],
        serde_json::json!([1, 0])
    );
    assert!(env.exact);

    for args in [
        vec!["feasible", "--lens", "4,1", "--h", "3", "--e", "2"],
        vec!["feasible", "--lens", "4,1", "--h", "1", "--e", "0"],
        vec![
            "feasible",
            "--delta",
            "3/2",
            "--phi",
            "nontrivial",
            "--h",
            "3",
            "--e",
            "-2",
        ],
        vec!["feasible", "--rho", "7/2", "--h", "2", "--e", "0"],
        vec!["feasible", "--definite", "3,3", "--h", "2", "--e", "30"],
        vec!["feasible", "--spin", "2,3,1", "--h", "3", "--e", "0"],
        vec!["feasible", "--sphere", "--h", "4", "--e", "0"],
    ] {
        let mut a = args.clone();
        a.push("--json");
        let o = genusgauge(&a);
        let env: Envelope = serde_json::from_str(&stdout(&o)).unwrap();
        let query: EmbedQuery = serde_json::from_value(env.inputs.clone()).unwrap();
        let again = decide(&query).unwrap();
        let env2 = genusgauge_cli::output::verdict_envelope(&query, &again);
        assert_eq!(env, env2, "{args:?}");
        assert_eq!(code(&o), if again.feasible { 0 } else { 3 });
        assert!(
            !stdout(&o).contains(".5"),
            "rationals must be strings, not floats"
        );
    }
}

#[test]
fn region_tables() {
    let o = genusgauge(&["region", "--lens", "2,1", "--h-max", "2"]);
    assert_eq!(stdout(&o), "h,e,exact\n1,0,true\n2,-2,true\n2,2,true\n");
    let o = genusgauge(&["region", "--lens", "4,1", "--h-max", "2"]);
    assert_eq!(stdout(&o), "h,e,exact\n2,0,true\n");
    let o = genusgauge(&["region", "--sphere", "--h-max", "1"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit_once(',').unwrap().0)
        .collect();
    assert_eq!(rows, ["1,-2", "1,2"]);
    assert_eq!(
        code(&genusgauge(&[
            "region", "--sphere", "--lens", "2,1", "--h-max", "1"
        ])),
        2
    );
    let o = genusgauge(&["region", "--lens", "2,1", "--h-max", "1", "--json"]);
    let env: Envelope = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(env.result["rows"][0]["e"], 0);
}

#[test]
fn scans_report_and_are_deterministic() {
    let o = genusgauge(&["scan", "carlitz", "--max", "12"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("failures 0"));

    let run = |w: &str| {
        genusgauge(&[
            "scan",
            "two_g_equals_n",
            "--max-p",
            "120",
            "--workers",
            w,
            "--json",
        ])
    };
    let (a, b) = (run("1"), run("4"));
    let (ea, eb): (Envelope, Envelope) = (
        serde_json::from_str(&stdout(&a)).unwrap(),
        serde_json::from_str(&stdout(&b)).unwrap(),
    );
    assert_eq!(ea.result, eb.result);
    assert_eq!(code(&a), 0);

    assert_eq!(
        code(&genusgauge(&[
            "scan",
            "congruence_coherence",
            "--max-p",
            "80"
        ])),
        0
    );
    assert_eq!(code(&genusgauge(&["scan", "no_such_family"])), 2);
    assert_eq!(code(&genusgauge(&["scan", "carlitz", "--max", "0"])), 2);
}

#[test]
fn time_limit_gives_partial_report() {
    let o = genusgauge(&["scan", "two_g_equals_n", "--time-limit", "0"]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("partial report"));
}

#[test]
fn fixtures_replay() {
    let o = genusgauge(&["fixtures"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    for name in [
        "rhod_h_bound",
        "l41_no_rp2",
        "g_2_1",
        "top_emb_no_smooth_rp2",
        "nonsimple_delta",
    ] {
        assert!(stdout(&o).contains(&format!("pass  {name}\n")), "{name}");
    }
}

#[test]
fn fixture_file_errors() {
    let dir = std::env::temp_dir().join(format!("genusgauge-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let missing = dir.join("missing.fixtures");
    assert_eq!(
        code(&genusgauge(&[
            "fixtures",
            "--file",
            missing.to_str().unwrap()
        ])),
        5
    );

    let corrupt = dir.join("corrupt.fixtures");
    std::fs::write(&corrupt, "g_2_1 | eval | fn=G k=1 q=1\n").unwrap();
    assert_eq!(
        code(&genusgauge(&[
            "fixtures",
            "--file",
            corrupt.to_str().unwrap()
        ])),
        5
    );

    let wrong = dir.join("wrong.fixtures");
    std::fs::write(&wrong, "g_2_1 | eval | fn=G k=1 q=1 | 1 | DERIVED\n").unwrap();
    let o = genusgauge(&["fixtures", "--file", wrong.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL  g_2_1: expected 1, got 1/2"));

    std::fs::remove_dir_all(&dir).unwrap();
}
