//! Command-line behavior: exit codes, file outputs, and determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rhythmseg"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

#[test]
fn usage_errors_exit_with_code_1() {
    let out = run(&["measure"]); // missing --input
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["synth", "--kind", "bogus", "--out", "x.csv"]);
    assert_eq!(out.status.code(), Some(1));
    // Parameter values the generators reject are usage errors too.
    let out = run(&[
        "synth",
        "--kind",
        "uniform",
        "--lo",
        "0",
        "--out",
        "/tmp/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&[
        "cluster",
        "--input",
        "irrelevant.csv",
        "--min-cluster-size",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn data_errors_exit_with_code_2_and_report_to_stderr() {
    let out = run(&["measure", "--input", "/nonexistent/data.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "sequence_id,interval_s\ns,0.5\ns,0\n").unwrap();
    let out = run(&["measure", "--input", &path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("row 3"), "stderr was: {stderr}");
}

#[test]
fn help_exits_cleanly() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("synth"));
}

#[test]
fn measure_reports_zero_npvi_for_constant_intervals() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("constant.csv");
    let mut csv = String::from("sequence_id,interval_s\n");
    for _ in 0..20 {
        csv.push_str("c,0.5\n");
    }
    fs::write(&data, csv).unwrap();
    let out = run(&["measure", "--input", &path_str(&data)]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("measure emits JSON");
    assert_eq!(report["npvi"].as_f64(), Some(0.0));
}

#[test]
fn synth_is_deterministic_at_the_file_level() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let status = run(&[
            "synth",
            "--kind",
            "quantal-geometric",
            "--count",
            "500",
            "--seed",
            "13",
            "--out",
            &path_str(out),
        ]);
        assert!(status.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(a.with_extension("csv.manifest.json").exists());
}

#[test]
fn cluster_writes_labels_network_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    let labels = dir.path().join("labels.csv");
    let network = dir.path().join("network.json");
    assert!(run(&[
        "synth",
        "--kind",
        "repeated",
        "--repeats",
        "120",
        "--seed",
        "3",
        "--out",
        &path_str(&data),
    ])
    .status
    .success());
    let out = run(&[
        "cluster",
        "--input",
        &path_str(&data),
        "--quantum",
        "0.5",
        "--labels-out",
        &path_str(&labels),
        "--network-out",
        &path_str(&network),
    ]);
    assert!(out.status.success());
    let labels_text = fs::read_to_string(&labels).unwrap();
    assert!(labels_text.starts_with("sequence_id,start_index,label\n"));
    let net: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&network).unwrap()).unwrap();
    assert!(net["nodes"].as_array().unwrap().len() >= 5);
    assert_eq!(net["prune_threshold"].as_u64(), Some(15));
    assert!(labels.with_extension("csv.manifest.json").exists());
}

#[test]
fn plots_are_byte_identical_across_processes() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    assert!(run(&[
        "synth",
        "--kind",
        "repeated",
        "--repeats",
        "100",
        "--seed",
        "11",
        "--out",
        &path_str(&data),
    ])
    .status
    .success());
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for out in [&a, &b] {
        let status = run(&[
            "plot",
            "--input",
            &path_str(&data),
            "--kind",
            "pattern-duration",
            "--quantum",
            "0.5",
            "--network",
            "--bounds",
            "auto",
            "--out",
            &path_str(out),
        ]);
        assert!(status.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn cluster_at_length_3_yields_triangle_ready_labels() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    let labels = dir.path().join("labels3.csv");
    let network = dir.path().join("network3.json");
    assert!(run(&[
        "synth",
        "--kind",
        "repeated",
        "--repeats",
        "120",
        "--seed",
        "5",
        "--out",
        &path_str(&data),
    ])
    .status
    .success());
    let out = run(&[
        "cluster",
        "--input",
        &path_str(&data),
        "--n",
        "3",
        "--quantum",
        "0.5",
        "--labels-out",
        &path_str(&labels),
        "--network-out",
        &path_str(&network),
    ]);
    assert!(out.status.success());
    // One label row per length-3 segment: 600 intervals -> 598 segments.
    let rows = fs::read_to_string(&labels).unwrap().lines().count() - 1;
    assert_eq!(rows, 598);
    let net: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&network).unwrap()).unwrap();
    assert_eq!(net["nodes"].as_array().unwrap().len(), 5); // one per trigram
}

#[test]
fn plot_emits_each_kind() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    assert!(run(&[
        "synth",
        "--kind",
        "repeated",
        "--repeats",
        "80",
        "--seed",
        "4",
        "--out",
        &path_str(&data),
    ])
    .status
    .success());
    for kind in ["raster", "phase", "pattern-duration", "ratio", "triangle"] {
        let out_path = dir.path().join(format!("{kind}.svg"));
        let out = run(&[
            "plot",
            "--input",
            &path_str(&data),
            "--kind",
            kind,
            "--quantum",
            "0.5",
            "--out",
            &path_str(&out_path),
        ]);
        assert!(
            out.status.success(),
            "plot {kind} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let svg = fs::read_to_string(&out_path).unwrap();
        assert!(svg.starts_with("<?xml"), "{kind} is not SVG");
        assert!(svg.contains("</svg>"));
    }
    // Overlay flags on the pattern-duration plot.
    let overlay = dir.path().join("pd_overlay.svg");
    let out = run(&[
        "plot",
        "--input",
        &path_str(&data),
        "--kind",
        "pattern-duration",
        "--quantum",
        "0.5",
        "--network",
        "--bounds",
        "auto",
        "--out",
        &path_str(&overlay),
    ]);
    assert!(out.status.success());
    assert!(fs::read_to_string(&overlay)
        .unwrap()
        .contains("stroke-dasharray"));
}

#[test]
fn onset_input_flows_through_the_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let onsets = dir.path().join("onsets.csv");
    let mut csv = String::from("onset_s,instrument,song\n");
    let mut t_guitar = 0.0;
    let mut t_clave = 0.1;
    for k in 0..40 {
        t_guitar += 0.25 + 0.05 * ((k % 3) as f64);
        csv.push_str(&format!("{t_guitar},guitar,s1\n"));
        t_clave += 0.5;
        csv.push_str(&format!("{t_clave},clave,s1\n"));
    }
    fs::write(&onsets, csv).unwrap();
    let cycles = dir.path().join("cycles.csv");
    fs::write(&cycles, "song,cycle_onset_s\ns1,0.0\ns1,4.0\ns1,8.0\n").unwrap();
    let out = run(&[
        "measure",
        "--input",
        &path_str(&onsets),
        "--onsets",
        "--cycles",
        &path_str(&cycles),
    ]);
    assert!(
        out.status.success(),
        "measure failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["quantality"]["quantum"].as_f64(), Some(0.25));
}
