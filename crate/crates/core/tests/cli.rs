use std::fs;
use std::process::Command;

use entbroadcast::cli::{run_to_string, CliError};

fn run(args: &[&str]) -> Result<String, CliError> {
    run_to_string(std::iter::once("entbroadcast").chain(args.iter().copied()))
}

fn exit_code(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_entbroadcast"))
        .args(args)
        .output()
        .expect("binary runs")
        .status
        .code()
        .expect("exit code")
}

#[test]
fn state_prints_measures() {
    let out = run(&["state", "--family", "belldiag", "--c=-1,-1,-1"]).unwrap();
    assert!(out.contains("purity      1"), "{out}");
    assert!(out.contains("min eigenvalue -0.5 -> inseparable"), "{out}");
    assert!(out.contains("TF          1 "), "{out}");
    assert!(out.contains("unclamped 2 bits, clamped 2 bits"), "{out}");
}

#[test]
fn state_json_row() {
    let out = run(&["state", "--family", "werner", "--p", "1", "--alpha2", "0.5", "--format", "json"]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["family"], "werner");
    assert_eq!(v[0]["tf"], 1.0);
    assert_eq!(v[0]["inseparable"], true);
}

#[test]
fn random_state_is_seeded() {
    let a = run(&["state", "--family", "random", "--seed", "7"]).unwrap();
    let b = run(&["state", "--family", "random", "--seed", "7"]).unwrap();
    let c = run(&["state", "--family", "random", "--seed", "8"]).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn range_reports_both_forms() {
    let out = run(&["range", "--family", "werner", "--alpha2", "0.2"]).unwrap();
    assert!(out.contains("closed form  (0.87, 1]"), "{out}");
    assert!(out.contains("numeric      (0.87, 1]"), "{out}");

    let out = run(&["range", "--family", "werner", "--p", "0.8", "--format", "csv"]).unwrap();
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let header = reader.headers().unwrap().clone();
    let row = reader.records().next().unwrap().unwrap();
    let col = |name: &str| row[header.iter().position(|h| h == name).unwrap()].to_string();
    assert_eq!(col("swept"), "alpha2");
    assert!((col("range_lo").parse::<f64>().unwrap() - 0.29).abs() < 0.01);
    assert!((col("range_hi").parse::<f64>().unwrap() - 0.71).abs() < 0.01);

    let out = run(&["range", "--family", "belldiag", "--c=-0.875,-0.875,0", "--sweep", "c3"]).unwrap();
    assert!(out.contains("closed form  [-1, -0.75]"), "{out}");
}

#[test]
fn range_flag_errors_are_usage_errors() {
    for args in [
        &["range", "--family", "werner"][..],
        &["range", "--family", "belldiag", "--c=0,0,0"],
        &["range", "--family", "random"],
        &["range", "--family", "werner", "--p", "0.8", "--alpha2", "0.5"],
        &["range", "--family", "werner", "--alpha2", "0.5", "--cloner", "local", "--copies", "3"],
        &["range", "--family", "werner", "--alpha2", "0.5", "--grid", "10"],
    ] {
        assert!(matches!(run(args), Err(CliError::Usage(_))), "{args:?}");
    }
}

#[test]
fn report_verdicts() {
    let out = run(&["report", "--family", "werner", "--p", "1", "--alpha2", "0.5", "--cloner", "nonlocal"]).unwrap();
    assert!(out.contains("broadcast           yes"), "{out}");
    let out = run(&["report", "--family", "werner", "--p", "0.5", "--alpha2", "0.5"]).unwrap();
    assert!(out.contains("input inseparable   yes"), "{out}");
    assert!(out.contains("broadcast           no"), "{out}");
    let out = run(&["report", "--family", "werner", "--p", "0.3", "--alpha2", "0.5"]).unwrap();
    assert!(out.contains("input inseparable   no"), "{out}");
}

#[test]
fn tables_write_schema() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = run(&["tables", "--which", "1", "--out", d, "--emit-plot"]).unwrap();
    assert!(out.contains("Table I "), "{out}");
    let csv = fs::read_to_string(dir.path().join("table_1.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert!(header.starts_with(
        "family,fixed_param_name,fixed_param_value,n_copies,cloner,range_lo,range_hi,\
         paper_range_lo,paper_range_hi,sum_tf_max,sum_dc_max,paper_sum_tf,paper_sum_dc,dc_variant"
    ));
    // five rows, each under both DC variants
    assert_eq!(csv.lines().count(), 1 + 10);
    assert!(dir.path().join("table_1.gp").exists());

    let out = run(&["tables", "--which", "VII", "--dc-formula", "clamped", "--out", d, "--format", "json"]).unwrap();
    assert!(out.contains("table_A1.json"));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("table_A1.json")).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r["dc_variant"] == "clamped"));
    let conflicts = rows.iter().filter(|r| !r["paper_conflict"].is_null()).count();
    assert_eq!(conflicts, 2);
}

#[test]
fn unknown_table_is_rejected() {
    assert!(matches!(run(&["tables", "--which", "7"]), Err(CliError::Usage(_))));
}

#[test]
fn scatter_and_surface_rows() {
    let out = run(&["scatter", "--samples", "20", "--seed", "3", "--cloner", "nonlocal", "--copies", "3"]).unwrap();
    assert_eq!(out.lines().count(), 21);
    assert!(out.starts_with("index,purity,sum_tf,sum_dc,broadcast_ok,input_inseparable\n"));

    let out = run(&["surface", "--grid", "5"]).unwrap();
    assert_eq!(out.lines().count(), 26);
    assert!(out.starts_with("alpha2,p,broadcast_ok,sum_tf,sum_dc\n"));
}

#[test]
fn plot_script_references_data() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("sub").join("scatter.csv");
    run(&["scatter", "--samples", "10", "--out", data.to_str().unwrap(), "--emit-plot"]).unwrap();
    let script = fs::read_to_string(data.with_extension("gp")).unwrap();
    assert!(script.contains("'scatter.csv' using 2:4"), "{script}");
    assert!(script.contains("'scatter.csv' using 2:3"), "{script}");
}

#[test]
fn emit_plot_needs_csv_file() {
    assert!(matches!(run(&["scatter", "--samples", "5", "--emit-plot"]), Err(CliError::Usage(_))));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let res = run(&["scatter", "--samples", "5", "--emit-plot", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(matches!(res, Err(CliError::Usage(_))));
    // nothing is written when validation fails
    assert!(!path.exists());
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "family = \"werner\"\nalpha2 = 0.5\np = 0.9\ncloner = \"nonlocal\"\ncopies = 3\n").unwrap();
    let c = cfg.to_str().unwrap();
    let out = run(&["--config", c, "report"]).unwrap();
    assert!(out.contains("nonlocal (N = 3)"), "{out}");
    // command-line flags win
    let out = run(&["--config", c, "report", "--copies", "2"]).unwrap();
    assert!(out.contains("nonlocal (N = 2)"), "{out}");

    fs::write(&cfg, "colour = \"blue\"\n").unwrap();
    assert!(matches!(run(&["--config", c, "report"]), Err(CliError::Usage(_))));
}

#[test]
fn calibrate_summarises_conventions() {
    let out = run(&["calibrate", "--which", "1", "--grid", "200"]).unwrap();
    assert!(out.contains("best: dc=unclamped, fb=squared, max"), "{out}");
}

#[test]
fn binary_exit_codes() {
    assert_eq!(exit_code(&["state", "--family", "werner", "--p", "0.5", "--alpha2", "0.5"]), 0);
    assert_eq!(exit_code(&["state", "--family", "werner", "--p", "1.5", "--alpha2", "0.5"]), 2);
    assert_eq!(exit_code(&["state", "--family", "belldiag", "--c=1,1,1"]), 2);
    assert_eq!(
        exit_code(&[
            "report", "--family", "werner", "--p", "1", "--alpha2", "0.5", "--copies", "9", "--cloner", "nonlocal"
        ]),
        2
    );
    assert_eq!(exit_code(&["frobnicate"]), 2);
}
