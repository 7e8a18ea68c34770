use std::path::PathBuf;

use nosell_cli::{parse_portfolio, run, serialize_portfolio, EXIT_INPUT, EXIT_OK};
use nosell_core::{Asset, Portfolio, PortfolioOptions};
use proptest::prelude::*;
use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.display().to_string()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/tests/golden/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["nosell"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn sample(norm: &str, format: &str) -> (i32, String, String) {
    invoke(&[
        "rebalance",
        "--input",
        &data("sample.csv"),
        "--contribution",
        "1000",
        "--norm",
        norm,
        "--format",
        format,
    ])
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(format!(
        "{}/schema/plan.schema.json",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn golden_reports() {
    for (norm, format, file) in [
        ("l2", "json", "sample_l2.json"),
        ("l1", "json", "sample_l1.json"),
        ("l2", "table", "sample_l2.txt"),
        ("l1", "table", "sample_l1.txt"),
    ] {
        let (code, out, err) = sample(norm, format);
        assert_eq!(code, EXIT_OK, "{err}");
        assert_eq!(out, golden(file), "{file}");
    }
}

#[test]
fn l1_json_reports_deficit_alpha() {
    let (_, out, _) = sample("l1", "json");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["case"], "deficit");
    assert!((v["alpha"].as_f64().unwrap() - 5.0 / 9.0).abs() < 1e-10);
    assert!(v.get("certificate").is_none());
}

#[test]
fn json_matches_schema() {
    let schema = validator();
    for norm in ["l1", "l2"] {
        let (_, out, _) = sample(norm, "json");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(
            schema.is_valid(&v),
            "{norm}: {:?}",
            schema
                .iter_errors(&v)
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
        );
    }
    // Surplus case reports slack.
    let dir = tempdir();
    let path = dir.join("surplus.csv");
    std::fs::write(&path, "id,value,target\nA,-10,0.5\nB,10,0.5\n").unwrap();
    let (code, out, err) = invoke(&[
        "rebalance",
        "--input",
        path.to_str().unwrap(),
        "--contribution",
        "5",
        "--norm",
        "l1",
        "--format",
        "json",
        "--allow-short",
        "--sample",
        "3",
        "--seed",
        "9",
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(schema.is_valid(&v));
    assert_eq!(v["samples"].as_array().unwrap().len(), 3);

    let mut broken = v.clone();
    broken["assets"][0]["adjustment"] = Value::from(-1.0);
    assert!(!schema.is_valid(&broken));
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nosell-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn table_and_json_agree() {
    for norm in ["l1", "l2"] {
        let (_, json, _) = sample(norm, "json");
        let (_, table, _) = sample(norm, "table");
        let v: Value = serde_json::from_str(&json).unwrap();
        let rows: Vec<Vec<&str>> = table
            .lines()
            .skip(1)
            .take(5)
            .map(|l| l.split_whitespace().collect())
            .collect();
        for (row, asset) in rows.iter().zip(v["assets"].as_array().unwrap()) {
            assert_eq!(row[0], asset["id"].as_str().unwrap());
            let dollars = |cell: &str| cell.replace('$', "").parse::<f64>().unwrap();
            let pct = |cell: &str| cell.trim_end_matches('%').parse::<f64>().unwrap();
            assert_eq!(
                pct(row[2]),
                (asset["target"].as_f64().unwrap() * 100.0).round()
            );
            assert_eq!(dollars(row[3]), asset["value"].as_f64().unwrap().round());
            assert_eq!(dollars(row[4]), asset["naive"].as_f64().unwrap().round());
            assert_eq!(
                dollars(row[5]),
                asset["adjustment"].as_f64().unwrap().round()
            );
            assert_eq!(
                pct(row[6]),
                (asset["final_allocation"].as_f64().unwrap() * 100.0).round()
            );
        }
    }
}

#[test]
fn at_target_adjustments_follow_targets() {
    let (code, out, _) = invoke(&[
        "rebalance",
        "--input",
        &data("at_target.csv"),
        "--contribution",
        "1000",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let adj: Vec<f64> = v["assets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["adjustment"].as_f64().unwrap())
        .collect();
    assert_eq!(adj, vec![500.0, 300.0, 200.0]);
}

#[test]
fn input_errors_exit_2() {
    let (code, _, err) = invoke(&[
        "rebalance",
        "--input",
        &data("sample.csv"),
        "--contribution",
        "-5",
    ]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("positive"), "{err}");

    let (code, _, err) = invoke(&[
        "rebalance",
        "--input",
        "/nonexistent.csv",
        "--contribution",
        "5",
    ]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("/nonexistent.csv"));

    let (code, _, _) = invoke(&["rebalance", "--input", &data("sample.csv")]);
    assert_eq!(code, EXIT_INPUT);

    let (code, _, err) = invoke(&[
        "rebalance",
        "--input",
        &data("sample.csv"),
        "--contribution",
        "5",
        "--sample",
        "2",
    ]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("--norm l1"));

    let dir = tempdir();
    let path = dir.join("off.csv");
    std::fs::write(&path, "id,value,target\nA,1,0.5\nB,1,0.47\n").unwrap();
    let (code, _, err) = invoke(&[
        "rebalance",
        "--input",
        path.to_str().unwrap(),
        "--contribution",
        "5",
    ]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("0.97") && err.contains("--normalize"), "{err}");
    let (code, _, _) = invoke(&[
        "rebalance",
        "--input",
        path.to_str().unwrap(),
        "--contribution",
        "5",
        "--normalize",
    ]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn project_simplex_outputs() {
    let (code, out, _) = invoke(&["project-simplex", "--values", "0.5,0.5,0.5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "0.3333333333,0.3333333333,0.3333333333\n");

    let (_, out, _) = invoke(&["project-simplex", "--values", "1.2,-0.1"]);
    assert_eq!(out, "1.0000000000,0.0000000000\n");

    let (code, out, _) = invoke(&["project-simplex", "--input", &data("lava.txt")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "0.4631000000,0.1418000000,0.1232000000,0.1274000000,0.0962000000,0.0251000000,\
         0.0034000000,0.0153000000,0.0016000000,0.0018000000,0.0011000000\n"
    );

    for bad in [
        vec!["project-simplex", "--values", ""],
        vec!["project-simplex", "--values", "1,x"],
        vec!["project-simplex"],
    ] {
        let (code, _, _) = invoke(&bad);
        assert_eq!(code, EXIT_INPUT, "{bad:?}");
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("rebalance"));
}

proptest! {
    #[test]
    fn csv_round_trip(rows in prop::collection::vec((0u64..10_000_000_000, 0u32..7, 1u32..1000), 1..8)) {
        let weight_total: u32 = rows.iter().map(|r| r.2).sum();
        let assets: Vec<Asset<f64>> = rows
            .iter()
            .enumerate()
            .map(|(i, (v, scale, w))| {
                let value = *v as f64 / 10f64.powi(*scale as i32);
                Asset::new(format!("asset{i}"), nosell_cli::format::sig10(value), *w as f64 / weight_total as f64)
            })
            .collect();
        let opts = PortfolioOptions::default();
        let original = Portfolio::new(assets, opts).unwrap();
        let text = serialize_portfolio(&original);
        let parsed = parse_portfolio(&text, opts).unwrap();
        for (a, b) in original.assets().iter().zip(parsed.assets()) {
            prop_assert_eq!(&a.id, &b.id);
            prop_assert_eq!(a.value, b.value);
            prop_assert_eq!(nosell_cli::format::sig10(a.target), b.target);
        }
        prop_assert_eq!(serialize_portfolio(&parsed), text);
    }
}
