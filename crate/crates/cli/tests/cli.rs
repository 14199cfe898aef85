use std::io::Write;
use std::process::{Command, Output, Stdio};

use genfit::report::format_sig;
use serde_json::Value;

fn genfit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genfit"))
        .args(args)
        .env_remove("GENFIT_SEED")
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_genfit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

const BEARING_FIT: [&str; 10] = [
    "fit", "--family", "weibullg", "--base", "weibull", "--data", "bearing", "--method", "nelder-mead",
    "--sig-level",
];

fn bearing_fit(extra: &[&str]) -> Output {
    let mut args: Vec<&str> = BEARING_FIT.to_vec();
    args.push("0.05");
    args.extend_from_slice(extra);
    genfit(&args)
}

#[test]
fn bearing_report_blocks() {
    let text = stdout(&bearing_fit(&[]));
    for block in ["$MPS", "$Measures", "$KS", "$`chi-square`", "$`Convergence Status`"] {
        assert!(text.contains(block), "{block} missing in\n{text}");
    }
    assert!(text.contains("18.30704"));
}

#[test]
fn json_reproduces_text_numbers() {
    let text = stdout(&bearing_fit(&[]));
    let report: Value = serde_json::from_str(&stdout(&bearing_fit(&["--output", "json"]))).unwrap();
    assert_eq!(report["schema_version"], 1);
    let m = &report["measures"];
    let mut numbers: Vec<f64> = report["mps"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    for key in ["aic", "caic", "bic", "hqic", "cm", "ad", "log", "moran"] {
        numbers.push(m[key].as_f64().unwrap());
    }
    numbers.push(report["ks"]["statistic"].as_f64().unwrap());
    numbers.push(report["ks"]["p_value"].as_f64().unwrap());
    for key in ["statistic", "critical", "p_value"] {
        numbers.push(report["chi_square"][key].as_f64().unwrap());
    }
    let printed: Vec<&str> = text.split_whitespace().collect();
    for v in numbers {
        let s = format_sig(v);
        assert!(printed.contains(&s.as_str()), "{s} not printed");
    }
    assert!(text.contains(report["convergence"]["status"].as_str().unwrap()));
}

#[test]
fn bundled_name_and_file_agree() {
    let dir = std::env::temp_dir().join(format!("genfit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bearing.txt");
    std::fs::write(&path, genfit::data::dataset_text("bearing").unwrap()).unwrap();
    let by_name = stdout(&bearing_fit(&["--output", "json"]));
    let mut args: Vec<&str> = BEARING_FIT.to_vec();
    let p = path.to_str().unwrap();
    args[6] = p;
    args.extend(["0.05", "--output", "json"]);
    let by_path = stdout(&genfit(&args));
    assert_eq!(by_name, by_path);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn sample_is_reproducible() {
    let args = ["sample", "--family", "kumg", "--base", "weibull", "--params", "1,1,1,1,0", "--n", "5", "--seed", "7"];
    let a = stdout(&genfit(&args));
    let values: Vec<f64> = a.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 5);
    assert!(values.iter().all(|&v| v > 0.0));
    assert_eq!(a, stdout(&genfit(&args)));
    let env = Command::new(env!("CARGO_BIN_EXE_genfit"))
        .args(&args[..9])
        .env("GENFIT_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(a, stdout(&env));
}

#[test]
fn gamma_curve_from_range() {
    let out = stdout(&genfit(&[
        "cdf", "--family", "betaexpg", "--base", "gamma", "--params", "1,1,1,2,1,0", "--x", "0:20:0.1",
        "--output", "csv",
    ]));
    let rows: Vec<(f64, f64)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let (x, y) = l.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 201);
    for (x, y) in rows {
        let want = 1.0 - (-x).exp() * (1.0 + x);
        assert!((y - want).abs() < 1e-12, "x = {x}");
    }
}

#[test]
fn points_from_stdin() {
    let o = with_stdin(
        &["pdf", "--family", "expg", "--base", "exp", "--params", "1,2,0"],
        "x\n0.5\n1, 2\n",
    );
    let out = stdout(&o);
    let vals: Vec<f64> = out.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect();
    for (v, x) in vals.iter().zip([0.5f64, 1.0, 2.0]) {
        assert!((v - 2.0 * (-2.0 * x).exp()).abs() < 1e-15);
    }
}

#[test]
fn quantile_upper_tail() {
    let args = ["quantile", "--family", "expg", "--base", "exp", "--params", "1,1,0", "--p", "0.25"];
    let lower = stdout(&genfit(&args));
    let mut upper_args = args.to_vec();
    upper_args[8] = "0.75";
    upper_args.push("--no-lower-tail");
    let value = |s: String| s.lines().nth(1).unwrap().split('\t').nth(1).unwrap().to_string();
    assert_eq!(value(lower), value(stdout(&genfit(&upper_args))));
}

#[test]
fn exit_codes() {
    let o = genfit(&["pdf", "--family", "nope", "--base", "exp", "--params", "1,1", "--x", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("kumg"));
    let o = genfit(&["pdf", "--family", "kumg", "--base", "exp", "--params", "1,1", "--x", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = with_stdin(&["fit", "--family", "expg", "--base", "exp", "--data", "-"], "1\n2\nthree\n");
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    let o = with_stdin(&["fit", "--family", "expg", "--base", "exp", "--data", "-", "--no-location"], "-1\n-2\n");
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn list_and_selftest() {
    let l: Value = serde_json::from_str(&stdout(&genfit(&["list", "--output", "json"]))).unwrap();
    assert_eq!(l["families"].as_array().unwrap().len(), 24);
    assert_eq!(l["bases"].as_array().unwrap().len(), 15);
    let args = [
        "selftest", "--family", "loggammag1", "--base", "weibull", "--reps", "1", "--n-grid", "20", "--seed", "3",
        "--output", "json",
    ];
    let a = stdout(&genfit(&args));
    assert_eq!(a, stdout(&genfit(&args)));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["rows"][0]["p_values"].as_array().unwrap().len(), 1);
}
