use std::path::Path;
use std::process::{Command, Output};

use pitchopt_core::milp::parse_lp;

fn pitchopt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pitchopt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn field(text: &str, name: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(name))
        .unwrap_or_else(|| panic!("no `{name}` in\n{text}"))
        .trim()
        .to_string()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn noise_of_published_sequence() {
    let out = pitchopt(&["noise", "--sequence", "1311323331"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(field(&text, "exact noise").starts_with("9.019"), "{text}");
    let ratio: f64 = field(&text, "exact/approx").parse().unwrap();
    assert!((1.0..=std::f64::consts::SQRT_2).contains(&ratio));
}

#[test]
fn noise_of_mono_sequence_peaks_at_n() {
    let out = pitchopt(&["noise", "--sequence", "2222222", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exact_harmonic"], 7);
    let r = v["ratio"].as_f64().unwrap();
    assert!((1.0..=std::f64::consts::SQRT_2 + 1e-12).contains(&r));
}

#[test]
fn noise_writes_spectrum_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = pitchopt(&["noise", "--sequence", "123123", "--plot", "--out", d]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("k,a_k,b_k,modulus"));
    assert!(dir.path().join("spectrum.gp").exists());
    let m = json(&dir.path().join("manifest.json"));
    assert_eq!(m["command"], "noise");
    for key in ["options", "output_dir", "timestamp", "tool_version"] {
        assert!(!m[key].is_null(), "{key}");
    }
}

#[test]
fn malformed_sequence_is_a_usage_error() {
    assert_eq!(
        pitchopt(&["noise", "--sequence", "1241"]).status.code(),
        Some(2)
    );
    assert_eq!(
        pitchopt(&["noise", "--sequence", "1x2"]).status.code(),
        Some(2)
    );
}

#[test]
fn solve_exact_reports_optimum() {
    let out = pitchopt(&["solve-exact", "--triple", "10,2,4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(field(&text, "exact noise").starts_with("9.268"), "{text}");
    assert_eq!(field(&text, "status"), "optimal");
}

#[test]
fn solve_from_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("inst.txt");
    std::fs::write(
        &file,
        "ratios = 1, 1.25, 1.5\nN = 8\nminOcc = 1\nmaxOcc = 6\nmaxSeq = 2\nincompatible = 1:3\n",
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = pitchopt(&[
        "solve-approx",
        "--instance",
        file.to_str().unwrap(),
        "--symmetry",
        "rotation-cuts",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let res = json(&out_dir.join("result.json"));
    assert_eq!(res["objective"], "approx");
    assert!(res["approx_noise"].as_f64().unwrap() <= res["exact_noise"].as_f64().unwrap());
    let incumbents = std::fs::read_to_string(out_dir.join("incumbents.csv")).unwrap();
    assert!(incumbents.starts_with("elapsed_secs,value,exact_noise,sequence"));
    assert_eq!(
        json(&out_dir.join("manifest.json"))["command"],
        "solve-approx"
    );
}

#[test]
fn exit_codes() {
    // infeasible window
    assert_eq!(
        pitchopt(&["solve-exact", "--triple", "10,0,2"])
            .status
            .code(),
        Some(1)
    );
    // stopped by the time limit
    let out = pitchopt(&["solve-exact", "--triple", "24,2,20", "--time-limit", "0.2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(field(&stdout(&out), "status"), "time limit");
    // usage errors
    for args in [
        &["solve-exact"][..],
        &["solve-exact", "--triple", "10,1"],
        &["solve-exact", "--triple", "10,1,8", "--symmetry", "mirror"],
        &["solve-exact", "--triple", "10,1,8", "--time-limit", "-1"],
        &["export-lp", "--triple", "10,1,8", "--j", "21"],
        &["frobnicate"],
    ] {
        assert_eq!(pitchopt(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn export_counts_match_formula() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = pitchopt(&["export-lp", "--triple", "10,1,8", "--j", "0", "--out", d]);
    assert_eq!(out.status.code(), Some(0));
    let lp = parse_lp(&std::fs::read_to_string(dir.path().join("model_j0.lp")).unwrap()).unwrap();
    // T_0 = 10 * 6; one start variable per type and feasible start
    let expected: u64 = [4, 5, 6].iter().map(|l| 60 - l + 1).sum();
    assert_eq!(lp.binaries.len() as u64, expected);

    let piped = pitchopt(&["export-lp", "--triple", "4,1,2", "--j", "1"]);
    assert_eq!(piped.status.code(), Some(0));
    assert!(parse_lp(&stdout(&piped)).is_ok());
}

#[test]
fn graph_dump_of_small_example() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    std::fs::write(&file, "ratios = 2, 3, 4\nN = 3\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = pitchopt(&[
        "graph",
        "--instance",
        file.to_str().unwrap(),
        "--period",
        "6",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "source arcs"), "3");
    assert_eq!(field(&text, "paths (N=3)"), "1");
    let dump = std::fs::read_to_string(out_dir.join("graph_T6.txt")).unwrap();
    assert_eq!(dump.lines().filter(|l| l.starts_with("s ")).count(), 3);
}

#[test]
fn table_rows() {
    let out = pitchopt(&["table"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1);

    let out = pitchopt(&[
        "table", "--triple", "10,1,8", "--triple", "10,2,6", "--triple", "10,2,4", "--triple",
        "10,3,4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    for (row, want) in rows.iter().zip([9.019, 9.247, 9.268, 9.368]) {
        let got: f64 = row[1].parse().unwrap();
        assert!((got - want).abs() <= 0.005 * want, "{row:?}");
        assert_eq!(&row[9], "ok");
    }
    let gap: f64 = rows[0][7].parse().unwrap();
    assert!((gap - 5.5).abs() <= 0.3, "{gap}");
}

#[test]
fn table_marks_failed_rows_and_continues() {
    let out = pitchopt(&["table", "--triple", "10,0,2", "--triple", "6,1,4"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].ends_with("infeasible"));
    assert!(lines[2].ends_with(",ok"));
}

#[test]
fn ga_reruns_reproduce() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let out = pitchopt(&[
            "ga",
            "--triple",
            "10,1,8",
            "--seed",
            "5",
            "--plot",
            "--out",
            d.path().to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let read = |i: usize, name: &str| std::fs::read_to_string(dirs[i].path().join(name)).unwrap();
    assert_eq!(read(0, "trace.csv"), read(1, "trace.csv"));
    let (a, b) = (
        json(&dirs[0].path().join("result.json")),
        json(&dirs[1].path().join("result.json")),
    );
    assert_eq!(a["best_sequence"], b["best_sequence"]);
    assert_eq!(a["exact_noise"], b["exact_noise"]);
    assert!(dirs[0].path().join("trace.gp").exists());
    assert_eq!(
        json(&dirs[0].path().join("manifest.json"))["options"][1]["seed"],
        5
    );
}

#[test]
fn min_sec_times() {
    let out = pitchopt(&["solve-exact", "--triple", "6,1,4", "--min-sec"]);
    assert_eq!(field(&stdout(&out), "time"), "0:00");
}
