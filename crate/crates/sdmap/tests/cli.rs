use std::process::{Command, Output};

use sdmap_core::basin::{basin_slice, build_catalog, default_seeds, CatalogOptions, SliceSpec};
use sdmap_core::bifurcation::{bifurcation_diagram, DEFAULT_X0};
use sdmap_core::{Axis, Params, Point3};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdmap"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["census", "--b"]).status.code(), Some(1));
    assert_eq!(
        run(&["lift", "--b", "-1", "--mode", "pair", "--cycle", "1:0"])
            .status
            .code(),
        Some(1)
    );
    // Period 3 cycles of H do not exist at b = -1; no event in the bracket.
    assert_eq!(
        run(&[
            "bifurcations",
            "--kind",
            "fold",
            "--period",
            "3",
            "--bracket",
            "-1.2,-1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&["lyapunov", "--b", "1", "--iters", "100"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn version_line() {
    let v = stdout(&["--version"]);
    assert!(v.starts_with("sdmap "), "{v}");
}

#[test]
fn outputs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let (a, b) = (path("a.csv"), path("b.csv"));
    let common = [
        "diagram",
        "--b-min",
        "-1.9",
        "--b-max",
        "-0.5",
        "--steps",
        "40",
        "--samples",
        "20",
    ];
    let mut one = common.to_vec();
    one.extend(["--out", &a, "--threads", "1"]);
    let mut four = common.to_vec();
    four.extend(["--out", &b, "--threads", "4"]);
    assert!(run(&one).status.success());
    assert!(run(&four).status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let meta_a = std::fs::read_to_string(format!("{a}.meta.json")).unwrap();
    let meta_b = std::fs::read_to_string(format!("{b}.meta.json")).unwrap();
    assert!(meta_a.contains("\"steps\": 40"));
    assert_eq!(meta_a, meta_b);
}

#[test]
fn diagram_csv_matches_core() {
    let text = stdout(&[
        "diagram",
        "--b-min",
        "-1.9",
        "--b-max",
        "-0.5",
        "--steps",
        "30",
        "--samples",
        "10",
    ]);
    let d = bifurcation_diagram((-1.9, -0.5), 30, DEFAULT_X0, 1000, 10).unwrap();
    let mut want = Vec::new();
    for row in &d.rows {
        for x in &row.samples {
            want.push((row.b, *x));
        }
    }
    let got: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (b, x) = l.split_once(',').unwrap();
            (b.parse().unwrap(), x.parse().unwrap())
        })
        .collect();
    assert_eq!(got, want);
}

#[test]
fn basin_ppm_and_parallel_agree_with_core() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("basin.csv");
    let ppm = dir.path().join("basin.ppm");
    let out = run(&[
        "basin",
        "--b",
        "-2",
        "--res",
        "30",
        "--out",
        csv.to_str().unwrap(),
        "--ppm",
        ppm.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let img = std::fs::read(&ppm).unwrap();
    let header = b"P6\n30 30\n255\n";
    assert_eq!(&img[..header.len()], header);
    assert_eq!(img.len(), header.len() + 30 * 30 * 3);

    let par = Params::new(-2.0).unwrap();
    let spec = SliceSpec::square(Axis::Z, 0.5, -2.5, 2.5, 30).unwrap();
    let opts = CatalogOptions::default();
    let seeds = default_seeds(&spec, &[Point3::new(0.0, -0.5, 0.5), DEFAULT_X0], 8);
    let cat = build_catalog(par, &seeds, &opts).unwrap();
    let grid = basin_slice(par, &spec, &cat, &opts).unwrap();
    let codes: Vec<i64> = std::fs::read_to_string(&csv)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    let want: Vec<i64> = grid.labels.iter().map(|l| l.code()).collect();
    assert_eq!(codes, want);

    let rendered = dir.path().join("again.ppm");
    let out = run(&[
        "render",
        "--input",
        csv.to_str().unwrap(),
        "--out",
        rendered.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read(&rendered).unwrap(), img);
}

#[test]
fn census_json_counts() {
    let text = stdout(&["census", "--b", "-1.9", "--period", "12"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let total = doc["counts"]["total"].as_u64().unwrap();
    assert_eq!(doc["cycles"].as_array().unwrap().len() as u64, total);
    assert!(total > 0);
}
