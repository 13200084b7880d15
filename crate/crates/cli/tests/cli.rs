use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn gb2kit(args: &[&str]) -> Output {
    gb2kit_with_env(args, &[])
}

fn gb2kit_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gb2kit"));
    cmd.args(args).env_remove("GB2KIT_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn number(v: &Value, key: &str) -> f64 {
    v[key]
        .as_f64()
        .unwrap_or_else(|| panic!("{key} missing in {v}"))
}

fn write(dir: &TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_owned()
}

fn path_str(p: &Path) -> String {
    p.to_str().unwrap().to_owned()
}

#[test]
fn indices_of_the_extremal_beta_prime() {
    let v = json_of(&gb2kit(&[
        "indices",
        "--spec",
        r#"{"family":"BP","p":1,"q":2,"beta":1}"#,
        "--json",
    ]));
    assert!((number(&v, "gini") - 2.0 / 3.0).abs() < 1e-12);
    assert!((number(&v, "hoover") - 0.5).abs() < 1e-12);
    assert!((number(&v, "theil_t") - 1.0).abs() < 1e-12);
    assert!((number(&v, "theil_l") - 1.0).abs() < 1e-12);
    assert!((number(&v, "dmms") - (3.0 - 2f64.powf(4.0 / 3.0))).abs() < 1e-8);
    assert_eq!(v["method"], "closed_form");

    let text = gb2kit(&[
        "indices",
        "--spec",
        r#"{"family":"BP","p":1,"q":2,"beta":1}"#,
    ]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(
        text.contains("0.666667") && text.contains("0.480158"),
        "{text}"
    );
}

#[test]
fn dmms_reports_its_ingredients() {
    let v = json_of(&gb2kit(&[
        "dmms",
        "--spec",
        r#"{"family":"BP","p":1,"q":2,"beta":1}"#,
        "--json",
    ]));
    let d = &v["dmms"];
    assert!((number(d, "value") - (3.0 - 2f64.powf(4.0 / 3.0))).abs() < 1e-8);
    assert!((number(d, "mpdf") - 2.0).abs() < 1e-12);
    assert!((number(d, "half_width") - (2f64.powf(1.0 / 3.0) - 1.0)).abs() < 1e-9);

    let unbounded = json_of(&gb2kit(&[
        "dmms",
        "--spec",
        r#"{"family":"Ga","alpha":0.5,"beta":1}"#,
        "--json",
    ]));
    assert!(unbounded["dmms"].is_null());
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let flat = write(
        &dir,
        "flat.csv",
        &"price\n"
            .chars()
            .chain("7\n".repeat(100).chars())
            .collect::<String>(),
    );
    let out = gb2kit(&["fit", &flat]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));

    assert_eq!(
        gb2kit(&["simulate", "--config", "{}", "-n", "5", "-o", "x.csv"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(gb2kit(&["fit"]).status.code(), Some(1));
    assert_eq!(gb2kit(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gb2kit(&["--help"]).status.code(), Some(0));

    let negative = gb2kit(&[
        "indices",
        "--spec",
        r#"{"family":"BP","p":-1,"q":2,"beta":1}"#,
    ]);
    assert_eq!(negative.status.code(), Some(2));
    assert_eq!(
        gb2kit(&["dmms", "--spec", "{not json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        gb2kit(&["indices", "/no/such/file.csv"]).status.code(),
        Some(2)
    );

    let bad = write(&dir, "bad.csv", "price\n100\nabc\n300\n");
    let out = gb2kit(&["indices", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 3"));
    assert!(gb2kit(&["indices", &bad, "--skip-invalid"])
        .status
        .success());

    let few = write(&dir, "few.csv", "1\n2\n3\n");
    assert_eq!(gb2kit(&["tailfit", &few]).status.code(), Some(2));
}

#[test]
fn column_by_name_or_position() {
    let dir = TempDir::new().unwrap();
    let data = write(
        &dir,
        "d.csv",
        "id,price\n1,100\n2,250\n3,90\n4,1200\n5,-3\n",
    );
    let by_name = gb2kit(&["indices", &data, "--column", "price", "--json"]);
    let by_index = gb2kit(&["indices", &data, "--column", "1", "--json"]);
    assert_eq!(json_of(&by_name), json_of(&by_index));
    assert!(String::from_utf8_lossy(&by_name.stderr).contains("skipped 1 non-positive"));
}

fn simulate_bp(dir: &TempDir, seed: &str, threads: &str) -> (Value, String) {
    let out_path = path_str(&dir.path().join(format!("sim-{seed}-{threads}.csv")));
    // Steady state BP(3, 4, 1) at unit reversion rate.
    let config = r#"{"gamma_rate":1,"theta":1,"kappa1":0.816496580927726,"kappa2":0.816496580927726,"n_paths":25}"#;
    let out = gb2kit_with_env(
        &[
            "simulate", "--config", config, "--seed", seed, "-n", "50000", "-o", &out_path,
            "--json",
        ],
        &[("GB2KIT_THREADS", threads)],
    );
    (json_of(&out), std::fs::read_to_string(&out_path).unwrap())
}

#[test]
fn simulate_then_fit_round_trip() {
    let dir = TempDir::new().unwrap();
    let (summary, csv) = simulate_bp(&dir, "11", "1");
    let steady = &summary["steady_state"];
    assert_eq!(steady["family"], "BP");
    assert!((number(steady, "p") - 3.0).abs() < 1e-9);
    assert_eq!(csv.lines().count(), 50_001);
    let path = path_str(&dir.path().join("sim-11-1.csv"));

    let report = json_of(&gb2kit(&["fit", &path, "--families", "BP,LN", "--json"]));
    let best = &report["rows"][0];
    assert_eq!(best["status"], "fitted");
    assert_eq!(best["spec"]["family"], "BP");
    // Steady-state BP(3, 4, 1): mean 1, Gini from the closed form.
    let truth = json_of(&gb2kit(&[
        "indices",
        "--spec",
        &steady.to_string(),
        "--json",
    ]));
    assert!((number(best, "mean_analytic") - 1.0).abs() < 0.03);
    assert!((number(&best["indices"], "gini") - number(&truth, "gini")).abs() < 0.01);
    assert!(number(best, "ks") < 0.01);
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let dir = TempDir::new().unwrap();
    let (one, csv_one) = simulate_bp(&dir, "3", "1");
    let (two, csv_two) = simulate_bp(&dir, "3", "2");
    assert_eq!(csv_one, csv_two);
    assert_eq!(one["guard_hits"], two["guard_hits"]);

    let path = path_str(&dir.path().join("sim-3-1.csv"));
    let fit = |threads| {
        gb2kit_with_env(
            &["fit", &path, "--families", "GB2,BP,Ga", "--csv"],
            &[("GB2KIT_THREADS", threads)],
        )
        .stdout
    };
    assert_eq!(fit("1"), fit("3"));
}

#[test]
fn csv_report_layout() {
    let dir = TempDir::new().unwrap();
    simulate_bp(&dir, "4", "1");
    let path = path_str(&dir.path().join("sim-4-1.csv"));
    let out = gb2kit(&[
        "fit",
        &path,
        "--families",
        "BP,IGa",
        "--csv",
        "--tail-cut",
        "0.001",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "type,parameters,KS,Mean,RMS,Gini,Hoover,Theil T,Theil L,DMMS,SD"
    );
    assert!(lines[1].starts_with("Data,"));
    assert!(lines[2].starts_with("BP,") && lines[3].starts_with("IGa,"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("removed the 50 largest of 50000"));
}

#[test]
fn deflation_base_changes_only_the_scale() {
    let dir = TempDir::new().unwrap();
    let (_, csv) = simulate_bp(&dir, "8", "1");
    let mut rows = String::from("price,year\n");
    for (i, v) in csv.lines().skip(1).take(4000).enumerate() {
        let year = [1990, 2000, 2010][i % 3];
        rows.push_str(&format!("{v},{year}\n"));
    }
    let data = write(&dir, "prices.csv", &rows);
    let cpi = write(
        &dir,
        "cpi.csv",
        "year,cpi\n1990,130.7\n2000,172.2\n2010,218.056\n",
    );
    let fit = |base: &str| {
        json_of(&gb2kit(&[
            "fit",
            &data,
            "--column",
            "price",
            "--year-column",
            "year",
            "--deflator",
            &cpi,
            "--base-year",
            base,
            "--families",
            "BP",
            "--json",
        ]))
    };
    let (a, b) = (fit("1990"), fit("2010"));
    assert_eq!(a["deflator_base"], 1990);
    let (sa, sb) = (&a["rows"][0]["spec"], &b["rows"][0]["spec"]);
    for key in ["p", "q"] {
        assert!(
            (number(sa, key) / number(sb, key) - 1.0).abs() < 1e-5,
            "{key}: {sa} vs {sb}"
        );
    }
    let ratio = number(sb, "beta") / number(sa, "beta");
    assert!((ratio / (218.056 / 130.7) - 1.0).abs() < 1e-5);
    assert!((number(&a["rows"][0], "ks") - number(&b["rows"][0], "ks")).abs() < 1e-6);
    let (ga, gb) = (
        &a["empirical"]["indices"]["gini"],
        &b["empirical"]["indices"]["gini"],
    );
    assert!((ga.as_f64().unwrap() - gb.as_f64().unwrap()).abs() < 1e-12);

    let missing = write(&dir, "short-cpi.csv", "1990,130.7\n2010,218.056\n");
    let out = gb2kit(&[
        "indices",
        &data,
        "--column",
        "price",
        "--year-column",
        "year",
        "--deflator",
        &missing,
        "--base-year",
        "2010",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2000"));
}

#[test]
fn tail_fit_outputs() {
    let dir = TempDir::new().unwrap();
    simulate_bp(&dir, "6", "1");
    let path = path_str(&dir.path().join("sim-6-1.csv"));
    let series = path_str(&dir.path().join("series.csv"));
    let v = json_of(&gb2kit(&[
        "tailfit", &path, "--preset", "wider", "--series", &series, "--json",
    ]));
    assert_eq!(number(&v, "top_fraction"), 0.3);
    assert_eq!(v["points"], 15_000 - 3);
    assert!(number(&v, "slope") < 0.0);
    let written = std::fs::read_to_string(&series).unwrap();
    assert_eq!(written.lines().count(), 15_001);
    assert_eq!(
        gb2kit(&["tailfit", &path, "--fraction", "0.2", "--preset", "wide"])
            .status
            .code(),
        Some(1)
    );
}
