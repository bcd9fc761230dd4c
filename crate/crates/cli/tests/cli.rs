//! End-to-end checks of the `cubepair` binary: golden output, exit-code
//! contract, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cubepair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubepair"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("cubepair-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn construct_base_ps42_matches_the_listing() {
    let out = cubepair(&["construct", "base", "--name", "ps42"]);
    assert_eq!(code(&out), 0);
    let expected = "\
#bps n=4 k=2 name=PS(4,2)
v000
v111
0v10
1v01
11v0
00v1
010v
101v
";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn construct_unknown_base_is_an_input_error() {
    let out = cubepair(&["construct", "base", "--name", "nope"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn construct_q3_family_has_16_sections_of_144_lines() {
    let out = cubepair(&["construct", "q3", "--d", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let headers: Vec<&str> = text.lines().filter(|l| l.starts_with("#bps")).collect();
    assert_eq!(headers.len(), 16);
    assert!(headers.iter().all(|h| h.starts_with("#bps n=9 k=4")));
    let edge_lines = text.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(edge_lines, 16 * 144);
}

#[test]
fn construct_best_n7_reports_k4() {
    let out = cubepair(&["construct", "best", "--n", "7"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(
        text.starts_with("#bps n=7 k=4"),
        "got header {:?}",
        text.lines().next()
    );
}

#[test]
fn construct_best_beyond_the_size_cap_is_an_input_error() {
    let out = cubepair(&["construct", "best", "--n", "50"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(
        err.contains("k=17"),
        "stderr should carry the schedule k: {err}"
    );
}

#[test]
fn verify_good_file_exits_zero() {
    let path = temp_path("ps42.bps");
    let out = cubepair(&[
        "construct",
        "base",
        "--name",
        "ps42",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = cubepair(&[
        "verify",
        path.to_str().unwrap(),
        "--checks",
        "matching,coverage",
        "--k",
        "2",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("pass=true"));
    // the single-job conformance reference gives the same verdict
    let single = cubepair(&["verify", path.to_str().unwrap(), "--jobs", "1"]);
    assert_eq!(code(&single), 0);
    let _ = std::fs::remove_file(path);
}

#[test]
fn verify_damaged_file_exits_one_with_a_witness() {
    let path = temp_path("broken.bps");
    // bv(3,2) with one edge dropped cannot block every 2-subcube
    std::fs::write(&path, "#bps n=3 k=2 name=damaged\nv01\n1v0\n").unwrap();
    let out = cubepair(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("counterexample="));
    let _ = std::fs::remove_file(path);
}

#[test]
fn verify_unparseable_file_exits_two() {
    let path = temp_path("garbage.bps");
    std::fs::write(&path, "not a strategy\n").unwrap();
    let out = cubepair(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let _ = std::fs::remove_file(path);
}

#[test]
fn verify_family_partition_and_polychromatic() {
    let path = temp_path("q3d1.bps");
    let out = cubepair(&[
        "construct",
        "q3",
        "--d",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let json_path = temp_path("q3d1.json");
    let out = cubepair(&[
        "verify",
        path.to_str().unwrap(),
        "--checks",
        "partition,polychromatic",
        "--k",
        "4",
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let json = std::fs::read_to_string(&json_path).unwrap();
    assert!(json.contains("\"passed\": true"));
    let _ = std::fs::remove_file(path);
    let _ = std::fs::remove_file(json_path);
}

#[test]
fn table_rows_match_the_published_anchors() {
    let out = cubepair(&["table", "--max-n", "20"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let row = |n: u32| -> Vec<String> {
        text.lines()
            .find(|l| l.starts_with(&format!("{n}\t")))
            .unwrap_or_else(|| panic!("row {n} missing"))
            .split('\t')
            .map(str::to_string)
            .collect()
    };
    assert_eq!(row(16)[1], "5");
    assert_eq!(row(6)[1], "3");
    assert_eq!(row(3)[1], "2");
    assert_eq!(row(7)[1], "4");
}

#[test]
fn play_is_deterministic_and_breaker_sweeps() {
    let path = temp_path("q63.bps");
    let out = cubepair(&[
        "construct",
        "base",
        "--name",
        "q63",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let run = || {
        cubepair(&[
            "play",
            "--n",
            "6",
            "--k",
            "3",
            "--strategy",
            path.to_str().unwrap(),
            "--maker",
            "random",
            "--games",
            "50",
            "--seed",
            "7",
        ])
    };
    let a = run();
    let b = run();
    assert_eq!(code(&a), 0);
    assert_eq!(
        stdout(&a),
        stdout(&b),
        "identical seeds, identical summaries"
    );
    assert!(stdout(&a).contains("games=50 breaker_wins=50 maker_wins=0"));
    let _ = std::fs::remove_file(path);
}

#[test]
fn play_scripted_illegal_move_exits_two() {
    let strategy = temp_path("ps42-play.bps");
    let script = temp_path("bad-script.txt");
    let out = cubepair(&[
        "construct",
        "base",
        "--name",
        "ps42",
        "--out",
        strategy.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    // Breaker answers 0000 with 1000, so replaying 0000 is illegal
    std::fs::write(&script, "0000\n0000\n").unwrap();
    let out = cubepair(&[
        "play",
        "--n",
        "4",
        "--k",
        "2",
        "--strategy",
        strategy.to_str().unwrap(),
        "--maker",
        "scripted",
        "--script",
        script.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    let _ = std::fs::remove_file(strategy);
    let _ = std::fs::remove_file(script);
}

#[test]
fn play_writes_a_transcript() {
    let strategy = temp_path("bv3.bps");
    let transcript = temp_path("game.log");
    let out = cubepair(&[
        "construct",
        "base",
        "--name",
        "bv3",
        "--out",
        strategy.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = cubepair(&[
        "play",
        "--n",
        "3",
        "--k",
        "2",
        "--strategy",
        strategy.to_str().unwrap(),
        "--maker",
        "random",
        "--games",
        "1",
        "--seed",
        "3",
        "--transcript",
        transcript.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let log = std::fs::read_to_string(&transcript).unwrap();
    assert_eq!(log.lines().count(), 9, "8 moves plus trailer:\n{log}");
    assert!(log.ends_with("winner=Breaker moves=8\n"));
    let _ = std::fs::remove_file(strategy);
    let _ = std::fs::remove_file(transcript);
}

#[test]
fn rotate_demo_roundtrips_through_lift_and_truncate() {
    let demo = temp_path("q94.bps");
    let lifted = temp_path("q105.bps");
    let out = cubepair(&["construct", "rotate", "--out", demo.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let demo_text = std::fs::read_to_string(&demo).unwrap();
    assert!(demo_text.starts_with("#bps n=9 k=4"));
    assert_eq!(demo_text.lines().count(), 145, "header plus 144 edges");
    let out = cubepair(&[
        "construct",
        "lift",
        "--input",
        demo.to_str().unwrap(),
        "--out",
        lifted.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&lifted).unwrap();
    assert!(text.starts_with("#bps n=10 k=5"));
    let out = cubepair(&[
        "construct",
        "truncate",
        "--input",
        demo.to_str().unwrap(),
        "--n",
        "8",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("#bps n=8 k=4"));
    let _ = std::fs::remove_file(demo);
    let _ = std::fs::remove_file(lifted);
}

#[test]
fn json_format_emits_edge_arrays() {
    let out = cubepair(&["construct", "base", "--name", "bv3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("\"edges\""));
    assert!(text.contains("\"v01\""));
}
