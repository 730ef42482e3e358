use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const K4STAR: &str = "33D32945 STP File, STP Format Version 1.0
SECTION Graph
Nodes 4
Edges 6
E 1 4 1
E 2 4 1
E 3 4 1
E 1 2 3
E 2 3 3
E 1 3 3
END
SECTION Terminals
Terminals 3
T 1
T 2
T 3
END
EOF
";

const PATH3: &str = "33D32945 STP File, STP Format Version 1.0
SECTION Graph
Nodes 3
Edges 2
E 1 2 1
E 2 3 1
END
SECTION Terminals
Terminals 2
T 1
T 3
END
EOF
";

fn corpus() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k4star.stp"), K4STAR).unwrap();
    std::fs::write(dir.path().join("path3.stp"), PATH3).unwrap();
    std::fs::write(dir.path().join("notes.txt"), "not an instance").unwrap();
    dir
}

fn stpvnd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stpvnd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn deterministic_json_is_byte_identical() {
    let dir = corpus();
    let inst = dir.path().join("k4star.stp");
    let args = ["--instance", path_arg(&inst), "--deterministic", "--seed", "7", "--emit", "json", "--runs", "3"];
    let a = stpvnd(&args);
    let b = stpvnd(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let row = &json["instances"][0];
    assert_eq!(row["best"], 3);
    assert_eq!(row["best_run"]["cost"], 3);
    assert!(row["best_run"]["time_to_best_ms"].is_null());
}

#[test]
fn deterministic_csv_over_a_directory() {
    let dir = corpus();
    let optima = dir.path().join("optima.csv");
    std::fs::write(&optima, "name,cost,is_optimal\nk4star,3,true\n").unwrap();
    let args = [
        "--dir",
        path_arg(dir.path()),
        "--deterministic",
        "--runs",
        "2",
        "--optima",
        path_arg(&optima),
    ];
    let a = stpvnd(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, stpvnd(&args).stdout);
    let csv = String::from_utf8(a.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "name,V,E,T,best,avg,worst,time_s,gap_pct,stdev,best_known");
    assert_eq!(lines[1], "k4star,4,6,3,3,3.00,3,,0.00,0.00,3");
    assert_eq!(lines[2], "path3,3,2,2,2,2.00,2,,,0.00,");
    assert_eq!(lines[3], "");
    assert_eq!(lines[4], "set,instances,optima,time_s,gap_pct");
}

#[test]
fn oracle_and_disabled_reductions() {
    let dir = corpus();
    let inst = dir.path().join("k4star.stp");
    let out = stpvnd(&[
        "--instance",
        path_arg(&inst),
        "--oracle",
        "--runs",
        "1",
        "--no-reduce",
        "voronoi",
        "--no-reduce",
        "special-distance",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("\nk4star,4,6,3,3,3.00,3,"));
}

#[test]
fn bad_arguments_exit_2() {
    let dir = corpus();
    let inst = dir.path().join("k4star.stp");
    for args in [
        vec!["--instance", path_arg(&inst), "--time-limit", "0"],
        vec!["--instance", path_arg(&inst), "--bmin", "8", "--bmax", "4"],
        vec!["--instance", path_arg(&inst), "--no-reduce", "magic"],
        vec!["--instance", path_arg(&inst), "--emit", "xml"],
        vec![],
    ] {
        let out = stpvnd(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn broken_file_does_not_stop_the_batch() {
    let dir = corpus();
    let bad = dir.path().join("broken.stp");
    std::fs::write(&bad, "33D32945\nSECTION Graph\nNodes 2\nEdges 1\nE 1 9 1\nEND\n").unwrap();
    let good = dir.path().join("path3.stp");
    let out = stpvnd(&["--instance", path_arg(&bad), "--instance", path_arg(&good), "--runs", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\npath3,"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.stp"));
}
