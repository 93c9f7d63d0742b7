use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use edgegame::game::{replay_transcript, Transcript};
use edgegame::graph::{generate, parse_graph, Family};
use edgegame::{Ruleset, Status};
use serde_json::Value;
use tempfile::TempDir;

fn edgegame(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgegame"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn edgegame_with_input(dir: &Path, args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_edgegame"))
        .current_dir(dir)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_writes_graph_files() {
    let dir = TempDir::new().unwrap();
    let o = edgegame(dir.path(), &["gen", "wheel", "5", "--out", "w5.g"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("s1=e0"));
    let w5 = parse_graph(&std::fs::read_to_string(dir.path().join("w5.g")).unwrap()).unwrap();
    assert_eq!((w5.vertex_count(), w5.edge_count()), (6, 10));

    let o = edgegame(dir.path(), &["gen", "path", "2"]);
    assert_eq!(parse_graph(&stdout(&o)).unwrap().edge_count(), 1);

    let o = edgegame(
        dir.path(),
        &["gen", "caterpillar", "3", "3,0,3", "-o", "cat.g"],
    );
    assert!(o.status.success());
    let cat = parse_graph(&std::fs::read_to_string(dir.path().join("cat.g")).unwrap()).unwrap();
    assert_eq!(cat.edge_count(), 8);

    let o = edgegame(dir.path(), &["gen", "wheel", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn index_reports_values_and_profiles() {
    let dir = TempDir::new().unwrap();
    let o = edgegame(dir.path(), &["index", "--graph", "wheel:3", "--m", "2"]);
    assert!(stdout(&o).contains("index = 3"), "{}", stdout(&o));

    edgegame(dir.path(), &["gen", "star", "4", "-o", "k14.g"]);
    let o = edgegame(dir.path(), &["index", "--graph", "k14.g", "--m", "2"]);
    assert!(stdout(&o).contains("index = 4"));

    let o = edgegame(
        dir.path(),
        &[
            "index",
            "--graph",
            "wheel:4",
            "--m",
            "3",
            "--profile",
            "--json",
            "w4.json",
        ],
    );
    assert!(o.status.success());
    let report = read_json(&dir.path().join("w4.json"));
    assert_eq!(report["index"], 5);
    let profile: Vec<bool> = serde_json::from_value(report["profile"].clone()).unwrap();
    assert_eq!(profile, [false, false, false, false, false, true, true]);
    assert_eq!(report["monotone"], true);
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    for name in ["a.json", "b.json"] {
        let o = edgegame(
            dir.path(),
            &[
                "index",
                "--graph",
                "wheel:4",
                "--m",
                "2",
                "--profile",
                "--json",
                name,
            ],
        );
        assert!(o.status.success());
    }
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.json")).unwrap());

    let mut reports = Vec::new();
    for name in ["c.json", "d.json"] {
        edgegame(dir.path(), &["verify", "wheels_small", "--json", name]);
        let mut v = read_json(&dir.path().join(name));
        assert!(v.as_object_mut().unwrap().remove("timing").is_some());
        reports.push(v);
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn exit_codes_separate_usage_from_caps() {
    let dir = TempDir::new().unwrap();
    let cap = edgegame(dir.path(), &["index", "--graph", "wheel:7", "--m", "2"]);
    assert_eq!(cap.status.code(), Some(3), "{}", stderr(&cap));
    assert!(stderr(&cap).contains("cap"));

    let missing = edgegame(
        dir.path(),
        &["index", "--graph", "no-such-file", "--m", "2"],
    );
    assert_eq!(missing.status.code(), Some(2));
    let bad_flag = edgegame(dir.path(), &["solve", "--graph", "wheel:3"]);
    assert_eq!(bad_flag.status.code(), Some(2));
    let bad_suite = edgegame(dir.path(), &["verify", "everything"]);
    assert_eq!(bad_suite.status.code(), Some(2));
}

#[test]
fn solve_names_the_winner() {
    let dir = TempDir::new().unwrap();
    let o = edgegame(
        dir.path(),
        &[
            "solve", "--graph", "wheel:4", "--m", "3", "--k", "4", "--json", "s.json",
        ],
    );
    assert!(stdout(&o).contains("breaker wins"));
    assert_eq!(read_json(&dir.path().join("s.json"))["winner"], "breaker");
    let o = edgegame(
        dir.path(),
        &["solve", "--graph", "wheel:4", "--m", "3", "--k", "5"],
    );
    assert!(stdout(&o).contains("maker wins"));
    assert!(stdout(&o).contains("winning first move"));
}

/// Every `(edge, color)` pair, a few times over: the session rejects the
/// illegal ones and the legal ones drive Breaker's side of the game.
fn brute_force_breaker(edges: usize, colors: usize) -> String {
    let mut input = String::new();
    for _ in 0..4 {
        for e in 0..edges {
            for c in 0..colors {
                input.push_str(&format!("e {e} {c}\n"));
            }
        }
    }
    input
}

#[test]
fn solver_maker_always_wins_on_w3() {
    let dir = TempDir::new().unwrap();
    let o = edgegame_with_input(
        dir.path(),
        &[
            "play", "--graph", "wheel:3", "--m", "2", "--k", "3", "--role", "breaker", "--engine",
            "solver",
        ],
        &brute_force_breaker(6, 3),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("MakerWin"), "{out}");
    assert!(out.contains("illegal move"));

    let text = std::fs::read_to_string(dir.path().join("game.transcript")).unwrap();
    let w3 = generate(Family::Wheel, &[3]).unwrap();
    let end = replay_transcript(
        &w3,
        Ruleset::new(2, 3).unwrap(),
        &Transcript::parse(&text).unwrap(),
    )
    .unwrap();
    assert_eq!(end.status(), Status::MakerWin);

    let o = edgegame(
        dir.path(),
        &[
            "replay",
            "--graph",
            "wheel:3",
            "--m",
            "2",
            "--k",
            "3",
            "game.transcript",
        ],
    );
    assert!(stdout(&o).contains("MakerWin"));
}

#[test]
fn strategy_maker_beats_a_human_breaker_on_w5() {
    let dir = TempDir::new().unwrap();
    let o = edgegame_with_input(
        dir.path(),
        &[
            "play",
            "--graph",
            "wheel:5",
            "--m",
            "2",
            "--k",
            "5",
            "--engine",
            "strategy",
            "--transcript",
            "w5.txt",
        ],
        &brute_force_breaker(10, 5),
    );
    let out = stdout(&o);
    assert!(out.contains("MakerWin"), "{out}");
    assert!(out.contains("# spoke-first"));
    let text = std::fs::read_to_string(dir.path().join("w5.txt")).unwrap();
    assert!(text.lines().any(|l| l.starts_with("breaker")));
}

#[test]
fn colored_edge_is_reprompted_with_feasible_colors() {
    let dir = TempDir::new().unwrap();
    let o = edgegame_with_input(
        dir.path(),
        &[
            "play", "--graph", "wheel:3", "--m", "2", "--k", "3", "--engine", "strategy",
        ],
        "e 0 0\nquit\n",
    );
    let out = stdout(&o);
    assert!(
        out.contains("illegal move: edge 0 is already colored"),
        "{out}"
    );
    assert!(out.contains("feasible colors per uncolored edge"));
    let text = std::fs::read_to_string(dir.path().join("game.transcript")).unwrap();
    assert!(!text.lines().any(|l| l.starts_with("breaker")), "{text}");
}

#[test]
fn heuristic_breaker_against_a_human_maker() {
    let dir = TempDir::new().unwrap();
    let o = edgegame_with_input(
        dir.path(),
        &[
            "play",
            "--graph",
            "path:5",
            "--m",
            "1",
            "--k",
            "3",
            "--role",
            "maker",
            "--engine",
            "heuristic",
            "--heuristic",
            "random",
            "--seed",
            "7",
        ],
        &brute_force_breaker(4, 3),
    );
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(
        out.contains("MakerWin") || out.contains("BreakerWin"),
        "{out}"
    );
    assert!(out.contains("# random"));
}

#[test]
fn strategy_engine_lists_supported_classes() {
    let dir = TempDir::new().unwrap();
    let o = edgegame(
        dir.path(),
        &[
            "play", "--graph", "cycle:5", "--m", "2", "--k", "3", "--engine", "strategy",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("supported classes"), "{err}");
    assert!(err.contains("wheels") && err.contains("trees") && err.contains("caterpillars"));

    let o = edgegame(
        dir.path(),
        &[
            "play", "--graph", "wheel:3", "--m", "2", "--k", "3", "--role", "maker", "--engine",
            "strategy",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites_pass_and_persist_reports() {
    let dir = TempDir::new().unwrap();
    let o = edgegame(dir.path(), &["verify", "wheels_small"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let report = read_json(&dir.path().join("edgegame-wheels_small.json"));
    assert_eq!(report["summary"]["failed"], 0);
    assert_eq!(
        report["summary"]["total"],
        report["records"].as_array().unwrap().len()
    );

    let o = edgegame(
        dir.path(),
        &[
            "verify",
            "prop7",
            "--max-edges",
            "7",
            "--m1",
            "3",
            "--m2",
            "1",
            "--json",
            "p7.json",
        ],
    );
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(
        read_json(&dir.path().join("p7.json"))["summary"]["failed"],
        0
    );

    let o = edgegame(dir.path(), &["verify", "nonmono", "-v"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("observed W4 (5 > 4)"));
}

#[test]
fn capped_instances_are_skipped_not_passed() {
    let dir = TempDir::new().unwrap();
    let o = edgegame(
        dir.path(),
        &[
            "verify",
            "wheels_general",
            "--node-limit",
            "10",
            "--json",
            "wg.json",
        ],
    );
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    let report = read_json(&dir.path().join("wg.json"));
    assert_eq!(report["summary"]["passed"], 0);
    for r in report["records"].as_array().unwrap() {
        assert_eq!(r["verdict"], "skipped");
    }
}

#[test]
fn scan_finds_the_wheel_witness_only() {
    let dir = TempDir::new().unwrap();
    let o = edgegame(
        dir.path(),
        &[
            "scan",
            "--m1",
            "3",
            "--m2",
            "2",
            "--family",
            "wheel",
            "--max-n",
            "4",
            "--json",
            "scan.json",
        ],
    );
    assert!(o.status.success());
    let report = read_json(&dir.path().join("scan.json"));
    let witnesses = report["witnesses"].as_array().unwrap();
    assert_eq!(witnesses.len(), 1);
    assert_eq!(witnesses[0]["graph"], "W4");
    assert_eq!(
        (
            witnesses[0]["index_m1"].clone(),
            witnesses[0]["index_m2"].clone()
        ),
        (5.into(), 4.into())
    );

    let o = edgegame(
        dir.path(),
        &["scan", "--m1", "3", "--m2", "1", "--max-edges", "6"],
    );
    assert!(stdout(&o).contains("0 witness"), "{}", stdout(&o));

    let o = edgegame(
        dir.path(),
        &[
            "scan",
            "--m1",
            "3",
            "--m2",
            "2",
            "--family",
            "wheel",
            "--max-n",
            "4",
            "--max-edges",
            "5",
            "--json",
            "e.json",
        ],
    );
    assert!(o.status.success());
    let report = read_json(&dir.path().join("e.json"));
    assert_eq!(report["scanned"], 0);
    assert_eq!(report["witnesses"].as_array().unwrap().len(), 0);
}
