use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use streamcut_cli::read_csv;
use streamcut_core::{Algorithm, MetricsReport, OrderKind};

fn streamcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_streamcut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TRIANGLE_PLUS: &str = "# toy graph\n10 20\n20 30\n30 10\n30 40\n40 10\n";

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(streamcut(&["--help"]).status.code(), Some(0));
    assert_eq!(streamcut(&["--version"]).status.code(), Some(0));
    assert_eq!(streamcut(&["partition", "--help"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &[],
        &["partition"],
        &["partition", "--synthetic", "100,2.0"],
        &[
            "partition",
            "--synthetic",
            "100,2.0,2.0",
            "--algorithm",
            "fennel",
        ],
        &[
            "partition",
            "--synthetic",
            "100,2.0,2.0",
            "--order",
            "zigzag",
        ],
        &[
            "partition",
            "--synthetic",
            "100,2.0,2.0",
            "--partitions",
            "-3",
        ],
        &["partition", "--synthetic", "100,2.0,2.0", "--format", "xml"],
        &[
            "partition",
            "--input",
            "a.txt",
            "--synthetic",
            "100,2.0,2.0",
        ],
    ];
    for args in cases {
        let out = streamcut(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn runtime_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.txt");
    let out = streamcut(&["partition", "--input", path_str(&missing)]);
    assert_eq!(out.status.code(), Some(2));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1 2\n3 x\n").unwrap();
    let out = streamcut(&["partition", "--input", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = streamcut(&["partition", "--synthetic", "100,0.5,2.0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = streamcut(&[
        "partition",
        "--synthetic",
        "100,2.0,2.0",
        "--partitions",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn partition_csv_report_and_assignments() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("g.txt");
    fs::write(&input, TRIANGLE_PLUS).unwrap();
    let report = dir.path().join("r.csv");
    let assignments = dir.path().join("a.txt");
    let out = streamcut(&[
        "partition",
        "--input",
        path_str(&input),
        "--algorithm",
        "degree",
        "--order",
        "bfs",
        "--partitions",
        "3",
        "--seed",
        "4",
        "--format",
        "csv",
        "--report",
        path_str(&report),
        "--emit-assignments",
        path_str(&assignments),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let text = fs::read_to_string(&report).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "algorithm,order,p,seed,lambda,rho,improvement_pct,runtime_ms"
    );
    let rows = read_csv(text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    assert_eq!(
        (row.algorithm, row.order, row.p, row.seed),
        (Algorithm::Degree, OrderKind::Bfs, 3, 4)
    );
    assert!((1.0..=3.0).contains(&row.replication_factor));
    assert!(row.imbalance_factor >= 1.0);
    assert_eq!(row.runtime_ms, None);

    // Assignment lines carry the original labels.
    let lines: Vec<Vec<u64>> = fs::read_to_string(&assignments)
        .unwrap()
        .lines()
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(lines.len(), 5);
    let mut edges: Vec<(u64, u64)> = lines.iter().map(|l| (l[0], l[1])).collect();
    edges.sort();
    assert_eq!(
        edges,
        vec![(10, 20), (20, 30), (30, 10), (30, 40), (40, 10)]
    );
    assert!(lines.iter().all(|l| l[2] < 3));
}

#[test]
fn partition_json_to_stdout() {
    let out = streamcut(&[
        "partition",
        "--synthetic",
        "2000,2.0,2.0",
        "--algorithm",
        "balance",
        "--partitions",
        "8",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report: MetricsReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.algorithm, Algorithm::Balance);
    assert_eq!(report.order, OrderKind::Rnd);
    assert_eq!(report.improvement_pct, 0.0);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(value.get("lambda").is_some() && value.get("rho").is_some());
}

#[test]
fn timing_fills_runtime() {
    let out = streamcut(&[
        "partition",
        "--synthetic",
        "500,2.0,2.0",
        "--format",
        "csv",
        "--timing",
    ]);
    assert!(out.status.success());
    let rows = read_csv(out.stdout.as_slice()).unwrap();
    assert!(rows[0].runtime_ms.is_some());
}

#[test]
fn same_invocation_same_bytes() {
    let args = [
        "partition",
        "--synthetic",
        "3000,1.9,2.1",
        "--algorithm",
        "degree-io",
        "--order",
        "dfs",
        "--seed",
        "12",
        "--format",
        "csv",
    ];
    let a = streamcut(&args);
    let b = streamcut(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn generate_then_partition_matches_synthetic_flag() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let out = streamcut(&[
        "generate",
        "--synthetic",
        "1500,2.1,2.0",
        "--seed",
        "3",
        "--output",
        path_str(&graph),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("vertices 1500"));

    let common = [
        "--algorithm",
        "grid",
        "--partitions",
        "12",
        "--seed",
        "2",
        "--format",
        "csv",
    ];
    let mut from_file = vec!["partition", "--input", path_str(&graph)];
    from_file.extend(common);
    let mut from_flag = vec![
        "partition",
        "--synthetic",
        "1500,2.1,2.0",
        "--graph-seed",
        "3",
    ];
    from_flag.extend(common);
    let (a, b) = (streamcut(&from_file), streamcut(&from_flag));
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bench_rows_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("bench.csv");
    let out = streamcut(&[
        "bench",
        "--synthetic",
        "2000,2.0,2.0",
        "--algorithm",
        "balance,degree,degree-io",
        "--order",
        "rnd,bfs",
        "--partitions",
        "4,16",
        "--seed",
        "1,2",
        "--report",
        path_str(&report),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = read_csv(fs::File::open(&report).unwrap()).unwrap();
    assert_eq!(rows.len(), 3 * 2 * 2 * 2);
    assert_eq!(
        (rows[0].algorithm, rows[0].order, rows[0].p, rows[0].seed),
        (Algorithm::Balance, OrderKind::Rnd, 4, 1)
    );
    assert_eq!(rows[1].algorithm, Algorithm::Degree);
    assert!(rows
        .iter()
        .filter(|r| r.algorithm == Algorithm::Balance)
        .all(|r| r.improvement_pct == 0.0));
    let summary = String::from_utf8_lossy(&out.stdout);
    assert!(summary.contains("order=bfs p=16"), "{summary}");
}

#[test]
fn predict_prints_both_estimates() {
    let out = streamcut(&[
        "predict",
        "--synthetic",
        "3000,2.0,2.0",
        "--partitions",
        "16",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let value = |key: &str| -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(key))
            .unwrap()
            .trim()
            .parse()
            .unwrap()
    };
    let (r, rd) = (value("predict_random "), value("predict_random_degree "));
    assert!(1.0 <= rd && rd <= r && r <= 16.0);
}

#[test]
fn single_cell_bench_equals_partition() {
    let cell = [
        "--synthetic",
        "1000,2.0,1.9",
        "--algorithm",
        "degree",
        "--order",
        "dfs",
        "--partitions",
        "6",
        "--seed",
        "8",
    ];
    let mut partition = vec!["partition", "--format", "csv"];
    partition.extend(cell);
    let mut bench = vec!["bench"];
    bench.extend(cell);
    let (a, b) = (streamcut(&partition), streamcut(&bench));
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn single_partition_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("t.txt");
    fs::write(&input, "0 1\n1 2\n2 0\n").unwrap();
    for algorithm in [
        "random",
        "grid",
        "balance",
        "random-degree",
        "degree",
        "degree-io",
    ] {
        let out = streamcut(&[
            "partition",
            "--input",
            path_str(&input),
            "--algorithm",
            algorithm,
            "--partitions",
            "1",
            "--format",
            "csv",
        ]);
        let row = &read_csv(out.stdout.as_slice()).unwrap()[0];
        assert_eq!(
            (row.replication_factor, row.imbalance_factor),
            (1.0, 1.0),
            "{algorithm}"
        );
    }
}
