use std::process::{Command, Output};

use serde_json::Value;

fn pdmosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdmosc")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_column(text: &str, name: &str) -> Vec<String> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().to_string()).collect()
}

#[test]
fn harmonic_limit_spectrum() {
    let out = pdmosc(&["spectrum", "--system", "higgs", "--dim", "1", "--k", "0", "--levels", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("n,l,energy,kind,method\n"));
    let energies: Vec<f64> = csv_column(&text, "energy").iter().map(|e| e.parse().unwrap()).collect();
    assert_eq!(energies, vec![0.5, 1.5, 2.5]);
    assert!(csv_column(&text, "method").iter().all(|m| m == "exact"));
}

#[test]
fn higgs_compare_passes() {
    let out = pdmosc(&["compare", "--system", "higgs", "--dim", "1", "--k", "0.3", "--levels", "6", "--tol", "1e-4"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pass"], Value::Bool(true));
    assert_eq!(report["levels"].as_array().unwrap().len(), 6);
    for key in ["params", "ordering"] {
        assert!(report.get(key).is_some());
    }
    for level in report["levels"].as_array().unwrap() {
        assert!(level["rel_err"].as_f64().unwrap() < 1e-4);
    }
}

#[test]
fn bethe_roots_at_mu_ten() {
    let out = pdmosc(&["bethe", "--dim", "1", "--n", "1", "--l", "0", "--mu", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let sols: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let roots: Vec<f64> = sols.as_array().unwrap().iter().map(|s| s["roots"][0].as_f64().unwrap()).collect();
    assert_eq!(roots.len(), 2);
    assert!((roots[0] - 0.731662).abs() < 1e-6 && (roots[1] - 0.068338).abs() < 1e-6);
    let c = &sols[0]["constraints"];
    assert!(c["residuals"].as_array().unwrap().iter().all(|r| r.as_f64().unwrap().abs() < 1e-10));
    for key in ["c0", "c1", "c2"] {
        assert!(c[key].as_f64().unwrap().abs() < 1e-10);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(pdmosc(&["bogus"]).status.code(), Some(1));
    assert_eq!(pdmosc(&["spectrum", "--dim", "2"]).status.code(), Some(1));
    assert_eq!(pdmosc(&["bethe", "--mu", "10", "--format", "csv"]).status.code(), Some(1));
    assert_eq!(pdmosc(&["--help"]).status.code(), Some(0));
    // n = 4, 5 lie above the k < 0 cutoff.
    assert_eq!(pdmosc(&["compare", "--k", "-0.3", "--levels", "6"]).status.code(), Some(2));
    assert_eq!(pdmosc(&["trajectory", "--system", "nonpolynomial", "--method", "analytic", "--k", "1", "--amplitude", "2"]).status.code(), Some(2));
    assert_eq!(pdmosc(&["semiclassical", "--system", "nonpolynomial", "--k", "0.1", "--levels", "4"]).status.code(), Some(3));
    assert_eq!(pdmosc(&["spectrum", "--system", "nonpolynomial", "--k", "0.05", "--levels", "3"]).status.code(), Some(3));
    // A tolerance no extrapolation meets turns into a failed report.
    let out = pdmosc(&["compare", "--k", "0.3", "--levels", "2", "--tol", "1e-15", "--points", "200"]);
    assert_eq!(out.status.code(), Some(3));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pass"], Value::Bool(false));
}

#[test]
fn output_files_are_byte_identical() {
    // Same relative path in two directories, so the echoed arguments match too.
    let root = std::env::temp_dir().join(format!("pdmosc-det-{}", std::process::id()));
    let mut files = Vec::new();
    for i in 0..2 {
        let dir = root.join(i.to_string());
        std::fs::create_dir_all(&dir).unwrap();
        let out = Command::new(env!("CARGO_BIN_EXE_pdmosc"))
            .current_dir(&dir)
            .args(["oracle", "--k", "-0.2", "--levels", "3", "--points", "300", "--json", "--output", "out.json"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        files.push(std::fs::read(dir.join("out.json")).unwrap());
    }
    let _ = std::fs::remove_dir_all(&root);
    assert_eq!(files[0], files[1]);
    let doc: Value = serde_json::from_slice(&files[0]).unwrap();
    assert_eq!(doc["config"]["command"], "oracle");
    assert_eq!(doc["config"]["params"]["k"].as_f64(), Some(-0.2));
    assert_eq!(doc["result"].as_array().unwrap().len(), 3);
}

#[test]
fn trajectory_csv_conserves_first_integral() {
    let out = pdmosc(&["trajectory", "--k", "0.5", "--amplitude", "1", "--t-end", "5", "--step", "1e-3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("t,x,xdot,eps\n"));
    let eps: Vec<f64> = csv_column(&text, "eps").iter().map(|e| e.parse().unwrap()).collect();
    assert_eq!(eps.len(), 5001);
    assert!(eps.iter().all(|e| (e - eps[0]).abs() < 1e-10 * eps[0]));
    let landen = pdmosc(&["trajectory", "--system", "nonpolynomial", "--method", "landen", "--k", "0.4", "--amplitude", "1", "--t-end", "1", "--step", "0.1"]);
    let sn = pdmosc(&["trajectory", "--system", "nonpolynomial", "--method", "analytic", "--k", "0.4", "--amplitude", "1", "--t-end", "1", "--step", "0.1"]);
    let (xl, xs) = (csv_column(&stdout(&landen), "x"), csv_column(&stdout(&sn), "x"));
    for (a, b) in xl.iter().zip(&xs) {
        assert!((a.parse::<f64>().unwrap() - b.parse::<f64>().unwrap()).abs() < 1e-10);
    }
}

#[test]
fn wavefunction_and_semiclassical_tables() {
    let out = pdmosc(&["spectrum", "--dim", "3", "--l", "1", "--k", "0.3", "--wavefunction", "1", "--points", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("r,chi\n"));
    let out = pdmosc(&["spectrum", "--system", "nonpolynomial", "--k", "-0.1", "--levels", "2", "--l", "0.5", "--gamma-bar", "0.2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(csv_column(&stdout(&out), "method").iter().all(|m| m == "bethe"));
    let out = pdmosc(&["semiclassical", "--k", "0.2", "--levels", "4", "--format", "json"]);
    let rows: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(rows.as_array().unwrap().iter().all(|r| r["method"] == "semiclassical"));
}
