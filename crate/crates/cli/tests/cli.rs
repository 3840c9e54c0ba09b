use std::path::Path;
use std::process::{Command, Output};

fn orn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orn"))
        .args(args)
        .env("ORN_THREADS", "1")
        .output()
        .expect("run orn")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn ebs_schedule(dir: &Path, nodes: &str, l: &str) -> std::path::PathBuf {
    let out = dir.join(format!("ebs_{nodes}_{l}.json"));
    let res = orn(&["schedule", "--family", "ebs", "--nodes", nodes, "--l", l, "--out", path_str(&out)]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    out
}

#[test]
fn verify_exit_status_tracks_certified_rate() {
    let dir = tempfile::tempdir().unwrap();
    let s = ebs_schedule(dir.path(), "4", "1");
    let s = path_str(&s);
    assert_eq!(orn(&["verify", "--schedule", s, "--rate", "1/2"]).status.code(), Some(0));
    let ok = orn(&["verify", "--schedule", s, "--rate", "2/3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("r* = 2/3"));
    assert_eq!(orn(&["verify", "--schedule", s, "--rate", "7/10"]).status.code(), Some(2));
}

#[test]
fn verify_writes_edge_loads() {
    let dir = tempfile::tempdir().unwrap();
    let s = ebs_schedule(dir.path(), "4", "1");
    let csv = dir.path().join("loads.csv");
    let res = orn(&[
        "verify", "--schedule", path_str(&s), "--rate", "2/3", "--loads-csv", path_str(&csv),
    ]);
    assert!(res.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("sender,timeslot,load_num,load_den"));
    // witness permutation at r* saturates some edge exactly
    let loads: Vec<(i64, i64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect();
    assert_eq!(loads.len(), 4 * 3);
    assert!(loads.iter().all(|&(p, q)| p <= q));
    assert!(loads.iter().any(|&(p, q)| p == q));
}

#[test]
fn schedule_output_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let res = orn(&[
            "schedule", "--family", "vbs", "--n", "5", "--h", "1", "--delta", "1/18", "--out", path_str(out),
        ]);
        assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["family"], "vbs");
    assert_eq!(doc["N"], 25);
    assert_eq!(doc["T"], 20);

    let res = orn(&["verify", "--schedule", path_str(&a), "--rate", "25/72"]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    assert_eq!(orn(&["verify", "--schedule", path_str(&a), "--rate", "26/72"]).status.code(), Some(2));
}

#[test]
fn incompatible_node_count_names_required_form() {
    let res = orn(&["schedule", "--family", "ebs", "--nodes", "10", "--l", "2"]);
    assert!(!res.status.success());
    assert!(String::from_utf8_lossy(&res.stderr).contains("n^2"));
}

#[test]
fn route_lists_weighted_paths() {
    let dir = tempfile::tempdir().unwrap();
    let s = ebs_schedule(dir.path(), "9", "2");
    let res = orn(&["route", "--schedule", path_str(&s), "--src", "0", "--dst", "8", "--slot", "0", "--list-paths"]);
    assert!(res.status.success());
    let text = String::from_utf8_lossy(&res.stdout);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.starts_with("1/9\t")));
    assert!(rows.iter().all(|r| r.split('\t').nth(3) == Some(&*format!("(8, {})", r.split('\t').nth(1).unwrap()))));
}

#[test]
fn curve_minima_sit_at_even_inverse_rates() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("curve.csv");
    let res = orn(&["curve", "--nodes", "1e6", "--max-inv-rate", "10", "--steps", "32", "--out", path_str(&csv)]);
    assert!(res.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 33);
    for w in rows.windows(3) {
        let (x, y) = w[1];
        if y < w[0].1 && y < w[2].1 {
            assert_eq!(x % 2.0, 0.0, "local minimum at 1/r = {x}");
        }
    }
}

#[test]
fn inflate_reaches_exact_margins() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("d.txt");
    std::fs::write(&input, "0 1/4 0\n0 0 0\n1/8 0 0\n").unwrap();
    let out = dir.path().join("out.txt");
    let res = orn(&["inflate", "--input", path_str(&input), "--rate", "1/2", "--out", path_str(&out)]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<(i64, i64)>> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|v| match v.split_once('/') {
                    Some((p, q)) => (p.parse().unwrap(), q.parse().unwrap()),
                    None => (v.parse().unwrap(), 1),
                })
                .collect()
        })
        .collect();
    assert_eq!(rows.len(), 3);
    let as_f = |(p, q): (i64, i64)| p as f64 / q as f64;
    assert!(as_f(rows[0][1]) >= 0.25);
    for i in 0..3 {
        let row: f64 = rows[i].iter().map(|&v| as_f(v)).sum();
        let col: f64 = rows.iter().map(|r| as_f(r[i])).sum();
        assert!((row - 0.5).abs() < 1e-12 && (col - 0.5).abs() < 1e-12);
    }
}

#[test]
fn malformed_inputs_fail() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert!(!orn(&["verify", "--schedule", path_str(&bad), "--rate", "1/2"]).status.success());
    let s = ebs_schedule(dir.path(), "4", "1");
    assert!(!orn(&["verify", "--schedule", path_str(&s), "--rate", "one half"]).status.success());
    let demand = dir.path().join("d.txt");
    std::fs::write(&demand, "1 0\n0\n").unwrap();
    assert!(!orn(&["inflate", "--input", path_str(&demand), "--rate", "1"]).status.success());
    assert!(!orn(&["schedule", "--family", "proot", "--nodes", "12"]).status.success());
}
