//! End-to-end tests of the command surface: file formats, exit codes,
//! and manifest reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn fraclab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fraclab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn cantor_csv_matches_known_second_generation() {
    let dir = tempfile::tempdir().unwrap();
    let out = fraclab(
        &["gen", "cantor", "--variant", "triadic", "--n", "2", "--out", "c2.csv"],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let csv = std::fs::read_to_string(dir.path().join("c2.csv")).unwrap();
    assert_eq!(
        csv,
        "lo_num,lo_den,hi_num,hi_den\n0,1,1,9\n2,9,1,3\n2,3,7,9\n8,9,1,1\n"
    );
    // Manifest sits next to the output and carries a matching sha256.
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("c2.csv.manifest.json")).unwrap(),
    )
    .unwrap();
    let recorded = manifest["outputs"][0]["sha256"].as_str().unwrap();
    let digest = {
        use sha2::Digest;
        hex::encode(sha2::Sha256::digest(csv.as_bytes()))
    };
    assert_eq!(recorded, digest);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // Unknown subcommand: usage error, exit 2 (clap).
    let usage = fraclab(&["frobnicate"], dir.path());
    assert_eq!(usage.status.code(), Some(2));
    // Capacity overflow: computation error, exit 1.
    let too_deep = fraclab(
        &["gen", "cantor", "--variant", "fat", "--n", "40", "--out", "x.csv"],
        dir.path(),
    );
    assert_eq!(too_deep.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&too_deep.stderr).contains("capacity"));
    // Malformed input file: exit 1.
    std::fs::write(dir.path().join("bad.pgm"), b"not a pgm").unwrap();
    let bad = fraclab(&["dim", "box", "--in", "bad.pgm"], dir.path());
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn lacunarity_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    assert!(fraclab(
        &["gen", "cantor", "--variant", "triadic", "--n", "3", "--out", "c3.csv"],
        dir.path(),
    )
    .status
    .success());
    let out = fraclab(&["measure", "lacuna1d", "--in", "c3.csv"], dir.path());
    assert!(stdout(&out).contains("= 1/3"));

    assert!(fraclab(
        &["gen", "carpet", "--gen", "3", "--out", "carpet.pgm"],
        dir.path(),
    )
    .status
    .success());
    let out = fraclab(&["measure", "lacuna2d", "--in", "carpet.pgm"], dir.path());
    assert!(stdout(&out).contains("0.25"));
}

#[test]
fn box_dimension_of_generated_carpet() {
    let dir = tempfile::tempdir().unwrap();
    assert!(fraclab(
        &["gen", "carpet", "--gen", "4", "--out", "carpet.pgm"],
        dir.path(),
    )
    .status
    .success());
    let out = fraclab(
        &["dim", "box", "--in", "carpet.pgm", "--scales", "1..4"],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("slope 1.89278926071"), "{}", stdout(&out));
}

#[test]
fn chaos_game_reproducible_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.csv", "b.csv"] {
        assert!(fraclab(
            &[
                "gen", "triangle", "--method", "chaos", "--points", "5000", "--seed", "9",
                "--format", "csv", "--out", name,
            ],
            dir.path(),
        )
        .status
        .success());
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
    let c = fraclab(
        &[
            "gen", "triangle", "--method", "chaos", "--points", "5000", "--seed", "10",
            "--format", "csv", "--out", "c.csv",
        ],
        dir.path(),
    );
    assert!(c.status.success());
    assert_ne!(a, std::fs::read(dir.path().join("c.csv")).unwrap());
}

#[test]
fn spectrum_csv_header_and_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = fraclab(
        &[
            "mfa", "spectrum", "--l1", "1/4", "--l2", "2/5", "--p1", "0.6", "--p2", "0.4",
            "--q-min", "0", "--q-max", "1", "--q-step", "1", "--out", "spec.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let csv = std::fs::read_to_string(dir.path().join("spec.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("q,tau,Dq,alpha,f"));
    let q0: Vec<&str> = lines.next().unwrap().split(',').collect();
    let d0: f64 = q0[2].parse().unwrap();
    assert!((d0 - 0.6110).abs() < 1e-4);
}

#[test]
fn perc_rg_json_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = fraclab(&["perc", "rg", "--rule", "hybrid"], dir.path());
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let counts: Vec<u64> = json["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![0, 0, 0, 8, 38, 44, 27, 8, 1]);
    assert!((json["p_c"].as_f64().unwrap() - 0.5093).abs() < 5e-4);
    assert!(!json["notes"].as_array().unwrap().is_empty());
    let edge = fraclab(&["perc", "rg", "--rule", "edge"], dir.path());
    let ejson: serde_json::Value = serde_json::from_str(&stdout(&edge)).unwrap();
    assert_eq!(ejson["counts"], ejson["enumerated_counts"]);
}

#[test]
fn kl_between_histogram_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut full = String::from("bin,count\n");
    let mut half = String::from("bin,count\n");
    for i in 0..256 {
        full.push_str(&format!("{i},1\n"));
        half.push_str(&format!("{i},{}\n", if i < 128 { 1 } else { 0 }));
    }
    std::fs::write(dir.path().join("full.csv"), full).unwrap();
    std::fs::write(dir.path().join("half.csv"), half).unwrap();
    let out = fraclab(
        &["measure", "kl", "--a", "half.csv", "--b", "full.csv"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let kl_ab: f64 = text
        .lines()
        .next()
        .unwrap()
        .rsplit(' ')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((kl_ab - 2f64.ln()).abs() < 1e-3, "{text}");
}

#[test]
fn sponge_slice_equals_carpet_file() {
    let dir = tempfile::tempdir().unwrap();
    assert!(fraclab(
        &["gen", "sponge", "--gen", "2", "--slice", "x:0", "--out", "slice.pgm"],
        dir.path(),
    )
    .status
    .success());
    assert!(fraclab(
        &["gen", "carpet", "--gen", "2", "--out", "carpet.pgm"],
        dir.path(),
    )
    .status
    .success());
    let slice = std::fs::read(dir.path().join("slice.pgm")).unwrap();
    let carpet = std::fs::read(dir.path().join("carpet.pgm")).unwrap();
    assert_eq!(slice, carpet);
}

#[test]
fn staircase_csv_starts_and_ends_at_corners() {
    let dir = tempfile::tempdir().unwrap();
    let out = fraclab(
        &["cantor-fn", "staircase", "--n", "3", "--out", "st.csv"],
        dir.path(),
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("st.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "x_num,x_den,y_num,y_den");
    assert_eq!(lines[1], "0,1,0,1");
    assert_eq!(lines[lines.len() - 1], "1,1,1,1");
    // 2^(n+1) vertices at generation 3.
    assert_eq!(lines.len() - 1, 16);
}

#[test]
fn reproduce_filter_runs_subset() {
    let dir = tempfile::tempdir().unwrap();
    let out = fraclab(&["reproduce", "--filter", "10"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("criterion 10 [PASS]"));
    assert!(text.contains("1/1 criteria passed"));
    let none = fraclab(&["reproduce", "--filter", "nonexistent"], dir.path());
    assert_eq!(none.status.code(), Some(2));
}
