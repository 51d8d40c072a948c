//! End-to-end checks of the command-line surface: exit codes, file outputs,
//! and the verify path, run against the built binary.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gsurf"))
}

fn write_tmp(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, content).unwrap();
    p
}

#[test]
fn atlas_prints_family_sizes() {
    let out = bin().args(["atlas", "--max", "5"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("21"));
    assert!(text.contains("58"));
}

#[test]
fn atlas_rejects_oversized_family() {
    let out = bin().args(["atlas", "--max", "9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_error_is_exit_one() {
    let out = bin().args(["count"]).output().unwrap(); // missing --input
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_input_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env("GSURF_CACHE_DIR", dir.path().join("cache"))
        .args(["count", "--input", "/nonexistent/g.txt", "--t", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn count_empty_graph_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_tmp(&dir, "empty.txt", "# no edges\n");
    let out_csv = dir.path().join("map.csv");
    let out = bin()
        .env("GSURF_CACHE_DIR", dir.path().join("cache"))
        .args([
            "count",
            "--input",
            input.to_str().unwrap(),
            "--t",
            "3",
            "--out",
            out_csv.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(out_csv).unwrap();
    // Header lines plus the column row, no data rows.
    assert!(text.lines().any(|l| l.starts_with("vertex_label,")));
    assert!(!text.lines().any(|l| l.ends_with(",0") && !l.starts_with('#')));
}

#[test]
fn count_triangle_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_tmp(&dir, "tri.txt", "0 1\n1 2\n2 0\n");
    let out_csv = dir.path().join("map.csv");
    let stats = dir.path().join("stats.json");
    let out = bin()
        .env("GSURF_CACHE_DIR", dir.path().join("cache"))
        .args([
            "count",
            "--input",
            input.to_str().unwrap(),
            "--t",
            "3",
            "--out",
            out_csv.to_str().unwrap(),
            "--stats",
            stats.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(out_csv).unwrap();
    // Triangle row for every vertex: s=3 p=2 sigma=1 count=1.
    for v in 0..3 {
        assert!(text.contains(&format!("{v},3,2,1,1")), "missing triangle row for {v}");
    }
    // Wedge rows all zero.
    for v in 0..3 {
        assert!(text.contains(&format!("{v},3,1,1,0")));
    }
    let stats_text = std::fs::read_to_string(stats).unwrap();
    assert!(stats_text.contains("\"family\": 3"));
}

#[test]
fn verify_passes_on_c5() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_tmp(&dir, "c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    let out = bin()
        .env("GSURF_CACHE_DIR", dir.path().join("cache"))
        .args(["verify", "--input", input.to_str().unwrap(), "--t", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pass:"));
    // Interior-path frequency 2 at each vertex shows up in the report.
    assert!(text.contains("f(H_{4,2,2})(0) = 2"), "report:\n{text}");
}

#[test]
fn verify_fails_on_corrupted_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let input = write_tmp(&dir, "c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    // Seed the cache, then corrupt one matrix value.
    let ok = bin()
        .env("GSURF_CACHE_DIR", &cache)
        .args(["verify", "--input", input.to_str().unwrap(), "--t", "3"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    let mut corrupted = None;
    for entry in std::fs::read_dir(&cache).unwrap() {
        let setdir = entry.unwrap().path();
        let w = setdir.join("U_3_inv.txt");
        if w.is_file() {
            let text = std::fs::read_to_string(&w).unwrap();
            // Flip the last triplet's value.
            let mut lines: Vec<String> = text.lines().map(String::from).collect();
            for l in lines.iter_mut().rev() {
                if !l.starts_with('#') {
                    let mut toks: Vec<&str> = l.split_whitespace().collect();
                    toks[2] = "999";
                    *l = toks.join(" ");
                    break;
                }
            }
            std::fs::write(&w, lines.join("\n")).unwrap();
            corrupted = Some(w);
            break;
        }
    }
    assert!(corrupted.is_some());
    let bad = bin()
        .env("GSURF_CACHE_DIR", &cache)
        .args(["verify", "--input", input.to_str().unwrap(), "--t", "3"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2), "{}", String::from_utf8_lossy(&bad.stderr));
}

#[test]
fn hasse_node_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (t, mode, nodes) in [(5u8, "orbit", 75usize), (2, "orbit", 3), (4, "hatted", 11)] {
        let out_path = dir.path().join(format!("l{t}{mode}.dot"));
        let out = bin()
            .args([
                "hasse",
                "--t",
                &t.to_string(),
                "--mode",
                mode,
                "--out",
                out_path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        let text = std::fs::read_to_string(&out_path).unwrap();
        let n = text.lines().filter(|l| l.trim_start().starts_with('n') && l.contains("label=")).count();
        assert_eq!(n, nodes, "t={t} mode={mode}");
    }
}

#[test]
fn matrices_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "matrices",
            "--t",
            "5",
            "--mode",
            "orbit",
            "--out",
            dir.path().to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("U_5: 58x58 nnz 744"));
    let out = bin()
        .args(["matrices", "--t", "2", "--mode", "orbit", "--out", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("U_2: 1x1 nnz 1"));
}

#[test]
fn count_hatted_aggregation() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_tmp(&dir, "k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out_csv = dir.path().join("hat.csv");
    let out = bin()
        .env("GSURF_CACHE_DIR", dir.path().join("cache"))
        .args([
            "count",
            "--input",
            input.to_str().unwrap(),
            "--t",
            "4",
            "--hatted",
            "--out",
            out_csv.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(out_csv).unwrap();
    // Pattern rows carry sigma=0; the clique pattern count is 1 per vertex.
    assert!(text.contains("0,4,6,0,1"));
}
