use std::fs;
use std::process::Command;

use lrc::bounds::BoundParams;
use lrc::code::SearchOptions;
use lrc::construct::CheckMode;
use lrc::format::read_matrix;
use lrc_cli::{
    cmd_bounds, cmd_construct, cmd_repair, cmd_sweep, cmd_verify, parse_word, ConstructArgs, Method, Status, SweepArgs,
    SWEEP_HEADER,
};

fn construct(method: Method, q: u64, n: usize, d: usize, r: usize) -> ConstructArgs {
    ConstructArgs { method, q, n, d, r, seed: None, check_mode: CheckMode::Structured, output: None, trace: false }
}

#[test]
fn construct_headers() {
    let out = cmd_construct(&construct(Method::Vandermonde, 3, 6, 3, 2)).unwrap();
    assert!(out.stdout.starts_with("3 3 6\n"));
    assert_eq!(read_matrix(&out.stdout).unwrap().rows(), 3);
    let out = cmd_construct(&construct(Method::Greedy, 5, 8, 5, 3)).unwrap();
    assert!(out.stdout.starts_with("5 5 8\n"));
    let err = cmd_construct(&construct(Method::Vandermonde, 2, 6, 3, 2)).unwrap_err();
    assert!(err.to_string().contains("q >= r+1 required"));
    assert_eq!(err.status(), Status::InputError);
}

#[test]
fn construct_reports_stuck_greedy() {
    let out = cmd_construct(&construct(Method::Greedy, 5, 40, 5, 3)).unwrap();
    assert_eq!(out.status, Status::Suboptimal);
    assert!(out.stderr.contains("stuck"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn constructed_artifacts_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (method, q, n, d, r) in [
        (Method::Vandermonde, 3, 6, 3, 2),
        (Method::Vandermonde, 5, 15, 4, 4),
        (Method::Greedy, 7, 16, 5, 3),
        (Method::Greedy, 4, 16, 4, 3),
        (Method::Vandermonde, 8, 18, 4, 5),
    ] {
        let path = dir.path().join(format!("{q}-{n}-{d}-{r}.txt"));
        let args = ConstructArgs { output: Some(path.clone()), ..construct(method, q, n, d, r) };
        cmd_construct(&args).unwrap();
        let out = cmd_verify(&path, None, &SearchOptions::default()).unwrap();
        assert_eq!(out.status, Status::Optimal, "{}", out.stdout);
    }
}

#[test]
fn verify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.txt");
    fs::write(&path, cmd_construct(&construct(Method::Vandermonde, 3, 6, 3, 2)).unwrap().stdout).unwrap();
    let out = cmd_verify(&path, Some(2), &SearchOptions::default()).unwrap();
    assert!(out.stdout.contains("OPTIMAL_EQ1, defect 0"), "{}", out.stdout);
    assert!(cmd_verify(&path, Some(3), &SearchOptions::default()).is_err());

    let full = dir.path().join("full.txt");
    fs::write(&full, "3 0 4\n").unwrap();
    let err = cmd_verify(&full, None, &SearchOptions::default()).unwrap_err();
    assert!(err.to_string().contains("locality undefined"));
    assert_eq!(err.status(), Status::InputError);

    // squares row only: d = 2, defect 1, not certified
    let weak = dir.path().join("weak.txt");
    fs::write(&weak, "5 3 10\n1 1 1 1 1 0 0 0 0 0\n0 0 0 0 0 1 1 1 1 1\n0 1 4 4 1 0 1 4 4 1\n").unwrap();
    let out = cmd_verify(&weak, None, &SearchOptions::default()).unwrap();
    assert_eq!(out.status, Status::Suboptimal);
    assert!(out.stdout.contains("SUBOPTIMAL"));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "3 2 3\n1 1 1\n1 7 1\n").unwrap();
    let err = cmd_verify(&bad, None, &SearchOptions::default()).unwrap_err();
    assert!(err.to_string().starts_with("line 3:"), "{err}");

    let tight = SearchOptions { subset_budget: 10, ..SearchOptions::default() };
    let err = cmd_verify(&path, None, &tight).unwrap_err();
    assert_eq!(err.status(), Status::BudgetExceeded);
}

#[test]
fn bounds_text() {
    let text = |q, d, r| cmd_bounds(BoundParams { q, d, r, n: None, k: None }).unwrap().stdout;
    assert!(text(16, 5, 3).contains("length_upper_bound ≈ 364.09"));
    assert!(text(5, 3, 2).contains("not applicable (unbounded per d≤4)"));
    assert!(text(4, 3, 2).contains("distance_upper_bound = 22"));
}

#[test]
fn sweep_csv() {
    let args =
        |budget| SweepArgs { qs: vec![5], d: 5, r: 3, n_step: 4, budget, verify: true, opts: SearchOptions::default() };
    let empty = cmd_sweep(&args(0)).unwrap().stdout;
    assert_eq!(empty, format!("{SWEEP_HEADER}\n"));
    let csv = cmd_sweep(&args(10)).unwrap().stdout;
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], SWEEP_HEADER);
    assert!(rows.last().unwrap().starts_with("5,5,3,20,stuck"));
    for row in &rows[1..] {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 10);
        if fields[4] == "ok" {
            assert!(fields[6].parse::<usize>().unwrap() >= 5);
            assert!(fields[7].parse::<usize>().unwrap() <= 3);
        }
    }
    assert!(cmd_sweep(&SweepArgs { d: 6, ..args(1) }).is_err());
}

#[test]
fn repair_examples() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("rep.txt");
    fs::write(&rep, "2 2 3\n1 1 0\n1 0 1\n").unwrap();
    let out = cmd_repair(&rep, "1 ? 1", &SearchOptions::default()).unwrap();
    assert!(out.stdout.contains("symbol = 1\nsymbols_read = 1\n"), "{}", out.stdout);

    let sp = dir.path().join("sp.txt");
    fs::write(&sp, "5 1 4\n1 1 1 1\n").unwrap();
    let out = cmd_repair(&sp, "1 2 ? 4", &SearchOptions::default()).unwrap();
    assert!(out.stdout.contains("symbol = 3\nsymbols_read = 3\n"));
    let err = cmd_repair(&sp, "1 ? ? 4", &SearchOptions::default()).unwrap_err();
    assert!(err.to_string().contains("exactly one erasure supported"));

    let v = dir.path().join("v.txt");
    fs::write(&v, "3 3 6\n1 1 1 0 0 0\n0 0 0 1 1 1\n0 1 2 0 1 2\n").unwrap();
    // 1 1 1 | 1 1 1 is a codeword; corrupt position 5 then erase position 0
    let err = cmd_repair(&v, "? 1 1 1 1 2", &SearchOptions::default()).unwrap_err();
    assert!(err.to_string().contains("inconsistent"), "{err}");
    let out = cmd_repair(&v, "? 1 1 1 1 1", &SearchOptions::default()).unwrap();
    assert!(out.stdout.contains("symbol = 1\nsymbols_read = 2\n"));
}

#[test]
fn word_parsing() {
    assert_eq!(parse_word("1 ? 1", 2).unwrap(), vec![Some(1), None, Some(1)]);
    assert_eq!(parse_word("0,3", 4).unwrap(), vec![Some(0), Some(3)]);
    assert!(parse_word("1 4", 4).is_err());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lrc");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.txt");
    let status = Command::new(bin)
        .args(["construct", "--method", "vandermonde", "--q", "3", "--n", "6", "--d", "3", "--r", "2", "-o"])
        .arg(&path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let out = Command::new(bin).arg("verify").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("OPTIMAL_EQ1, defect 0"));
    let out = Command::new(bin)
        .args(["construct", "--method", "vandermonde", "--q", "2", "--n", "6", "--d", "3", "--r", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["bounds", "--q", "16", "--d", "5", "--r", "3"]).output().unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("length_upper_bound ≈ 364.09"));
    let out =
        Command::new(bin).args(["sweep", "--q", "5,7", "--d", "5", "--r", "3", "--budget", "0"]).output().unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout), format!("{SWEEP_HEADER}\n"));
    let out = Command::new(bin).arg("verify").arg(&path).args(["--search-budget", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}
