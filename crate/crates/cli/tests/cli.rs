use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mindyn::channels::ChannelSpec;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mindyn"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn measure_bell_vertex() {
    let o = run(&["measure", "1", "1", "-1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for line in [
        "concurrence=1",
        "min=0.5",
        "fmin=0.5",
        "physical=yes",
        "gamma_norm_sqr=1",
    ] {
        assert!(s.lines().any(|l| l == line), "missing {line} in\n{s}");
    }
}

#[test]
fn measure_origin_is_all_zero() {
    let s = stdout(&run(&["measure", "0", "0", "0"]));
    for line in ["concurrence=0", "min=0", "fmin=0"] {
        assert!(s.lines().any(|l| l == line));
    }
}

#[test]
fn measure_outside_tetrahedron_exits_2() {
    let o = run(&["measure", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in tetrahedron"));
    assert!(o.stdout.is_empty());
}

#[test]
fn measure_json_with_variational_check() {
    let o = run(&["--format", "json", "--variational-check", "measure", "1", "0.5", "-0.5"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let closed = v["min"].as_f64().unwrap();
    let var = v["min_variational"].as_f64().unwrap();
    assert!((closed - var).abs() < 1e-8);
    assert_eq!(v["mu"].as_array().unwrap().len(), 4);
}

#[test]
fn sweep_csv_layout() {
    let o = run(&["--config", config("hybrid_bell.json").to_str().unwrap(), "sweep"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "param,c1,c2,c3,concurrence,min,fmin");
    assert_eq!(lines.len(), 1002);
    let last: Vec<f64> = lines[1001].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(last[0], 1.0);
    assert!(last[4].abs() < 1e-9);
}

#[test]
fn sweep_minimal_grid() {
    let o = run(&[
        "sweep",
        "--initial",
        "1",
        "1",
        "-1",
        "--family",
        "depolarizing",
        "--points",
        "2",
    ]);
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("0,"));
    assert!(lines[2].starts_with("1,"));
}

#[test]
fn depolarizing_min_column_has_one_interior_zero() {
    let s = stdout(&run(&[
        "--config",
        config("depolarizing_bell.json").to_str().unwrap(),
        "sweep",
    ]));
    let zeros: Vec<f64> = s
        .lines()
        .skip(1)
        .filter_map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[5] == 0.0).then_some(f[0])
        })
        .collect();
    assert_eq!(zeros, vec![0.75]);
}

#[test]
fn critical_reports_events() {
    let cases = [
        ("gad_bell.json", "concurrence", "concurrence: esd gamma=0.585786"),
        ("depolarizing_bell.json", "min", "min: dark_point gamma=0.75 "),
        ("hybrid_partial.json", "concurrence", "concurrence: esd p=0.5196"),
    ];
    for (cfg, measure, expect) in cases {
        let o = run(&[
            "--config",
            config(cfg).to_str().unwrap(),
            "critical",
            "--measure",
            measure,
        ]);
        assert!(o.status.success());
        let s = stdout(&o);
        assert!(s.contains(expect), "{cfg}: {s}");
    }
    let s = stdout(&run(&[
        "--config",
        config("depolarizing_bell.json").to_str().unwrap(),
        "critical",
        "--measure",
        "min",
    ]));
    assert!(s.contains("revival=yes"));
}

#[test]
fn critical_without_events_says_so() {
    let o = run(&[
        "--config",
        config("hybrid_bell.json").to_str().unwrap(),
        "critical",
        "--measure",
        "min",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "min: no events\nhybrid_pc+=1 (in range)\nhybrid_pc-=nan (out of range)\n"
    );
}

#[test]
fn json_document_shape() {
    let o = run(&[
        "--config",
        config("depolarizing_bell.json").to_str().unwrap(),
        "--format",
        "json",
        "sweep",
        "--points",
        "11",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);
    assert_eq!(v["config"]["channel"]["family"], "depolarizing");
    assert_eq!(v["config"]["grid"]["points"], 11);
    let kinds: Vec<&str> = v["critical_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"esd"));
    assert!(kinds.contains(&"dark_point"));
}

#[test]
fn output_file_is_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = run(&[
        "--config",
        config("gad_partial.json").to_str().unwrap(),
        "--output",
        path.to_str().unwrap(),
        "sweep",
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(fs::read_to_string(&path).unwrap().starts_with("param,"));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("sweep.csv");
    let o = run(&[
        "sweep",
        "--initial",
        "1",
        "1",
        "-1",
        "--family",
        "gad",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!path.exists());
}

#[test]
fn invalid_config_leaves_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"initial_c": [1, 1, 1], "channel": {"family": "gad"}}"#).unwrap();
    let out = dir.path().join("out.csv");
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
        "sweep",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());

    fs::write(&cfg, "{not json").unwrap();
    assert_eq!(
        run(&["--config", cfg.to_str().unwrap(), "validate"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["--config", "/nonexistent/cfg.json", "validate"]).status.code(),
        Some(3)
    );
}

#[test]
fn validate_accepts_shipped_configs() {
    for name in [
        "hybrid_bell.json",
        "hybrid_partial.json",
        "gad_bell.json",
        "gad_partial.json",
        "depolarizing_bell.json",
        "depolarizing_partial.json",
    ] {
        let o = run(&["--config", config(name).to_str().unwrap(), "validate"]);
        assert!(o.status.success(), "{name}");
        assert!(stdout(&o).starts_with("ok: "));
    }
}

#[test]
fn channel_spec_field_names() {
    let mut spec = ChannelSpec::hybrid(0.4, 0.4, 0.2);
    spec.p = Some(0.1);
    let v = serde_json::to_value(&spec).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["alpha", "beta", "family", "gamma", "p"]);
    assert_eq!(v["family"], "hybrid");

    let gad: ChannelSpec =
        serde_json::from_str(r#"{"family": "gad", "gamma_rate": 0.5, "equilibrium_p": 0.5}"#).unwrap();
    let mut expected = ChannelSpec::gad().with_gamma_rate(0.5);
    expected.equilibrium_p = Some(0.5);
    assert_eq!(gad, expected);
}
