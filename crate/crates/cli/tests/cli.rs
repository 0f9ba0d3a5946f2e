use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn supraconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supraconv"))
        .args(args)
        .env_remove("SUPRACONV_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn rows(path: &Path) -> (String, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    (
        header,
        lines
            .map(|l| l.split(',').map(str::to_string).collect())
            .collect(),
    )
}

fn col(rows: &[Vec<String>], k: usize) -> Vec<f64> {
    rows.iter().map(|r| r[k].parse().unwrap()).collect()
}

fn max(v: &[f64]) -> f64 {
    v.iter().copied().fold(0.0, f64::max)
}

#[test]
fn solve_quarter_power_grid() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("sol.csv");
    let o = supraconv(&[
        "solve",
        "--grid",
        "analytic",
        "--beta",
        "0.25",
        "--n",
        "80",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, r) = rows(&out);
    assert_eq!(header, "x,u,u_exact,abs_error");
    assert_eq!(r.len(), 81);
    let e = max(&col(&r, 3));
    assert!((e / 0.342e-8 - 1.0).abs() < 0.05, "{e}");
}

#[test]
fn solve_uniform_grid() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("sol.csv");
    let o = supraconv(&["solve", "--n", "80", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let (_, r) = rows(&out);
    let x = col(&r, 0);
    assert_eq!((x[0], x[80]), (0.0, 1.0));
    assert!((x[40] - 0.5).abs() < 1e-15);
    let e = max(&col(&r, 3));
    assert!((e / 0.239e-3 - 1.0).abs() < 0.02, "{e}");
}

#[test]
fn invalid_lambda_is_rejected() {
    let o = supraconv(&["solve", "--lambda", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lambda"));
}

#[test]
fn unknown_grid_mode_is_rejected() {
    let o = supraconv(&["solve", "--grid", "random"]);
    assert!(!o.status.success());
}

#[test]
fn table1_csv() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("t1.csv");
    let o = supraconv(&["table1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let (header, r) = rows(&out);
    assert_eq!(header, "monitor,N,error,p");
    assert_eq!(r.len(), 28);
    let quarter: Vec<_> = r.iter().filter(|row| row[0].contains("0.25")).collect();
    assert_eq!(quarter.len(), 7);
    assert!(quarter[0][3].is_empty());
    for row in &quarter[1..5] {
        let p: f64 = row[3].parse().unwrap();
        assert!((p - 4.0).abs() < 0.2, "{p}");
    }
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("640"));
}

#[test]
fn table2_csv_and_exit_status() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("t2.csv");
    let o = supraconv(&["table2", "--out", out.to_str().unwrap()]);
    // one (α, β) = (2, 2) cell does not settle within the iteration cap
    assert_eq!(o.status.code(), Some(1));
    let (header, r) = rows(&out);
    assert_eq!(header, "alpha,beta,error,n,converged");
    assert_eq!(r.len(), 45);
    let cell = |a: f64, b: f64| {
        r.iter()
            .find(|row| row[0].parse::<f64>().unwrap() == a && row[1].parse::<f64>().unwrap() == b)
            .unwrap()
    };
    let c = cell(10000.0, 0.25);
    assert_eq!(c[3], "23");
    assert!((c[2].parse::<f64>().unwrap() / 0.644e-6 - 1.0).abs() < 0.05);
    assert_eq!(cell(2.0, 2.0)[4], "false");
    assert_eq!(r.iter().filter(|row| row[4] == "false").count(), 1);
}

#[test]
fn table2_subset_converges() {
    let o = supraconv(&["table2", "--alphas", "0,1", "--betas", "0.25,0.5"]);
    assert!(o.status.success());
    let csv = String::from_utf8_lossy(&o.stdout);
    assert_eq!(csv.lines().count(), 5);
    let text = String::from_utf8_lossy(&o.stderr);
    assert!(
        text.contains("8.16e-4") && text.contains("3.21e-4"),
        "{text}"
    );
}

#[test]
fn adapt_writes_trace() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("trace.csv");
    let o = supraconv(&[
        "adapt",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let (header, r) = rows(&trace);
    assert_eq!(header, "n,error_norm,solution_change,grid_change");
    assert_eq!(r.len(), 30);
    assert!(col(&r, 2)[29] < 1e-10);
}

#[test]
fn error_profile_shapes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("profile.csv");
    let o = supraconv(&["error-profile", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let (header, r) = rows(&out);
    assert_eq!(header, "x,abs_error,monitor_label");
    let family = |label: &str| -> Vec<(f64, f64)> {
        r.iter()
            .filter(|row| row[2] == label)
            .map(|row| (row[0].parse().unwrap(), row[1].parse().unwrap()))
            .collect()
    };
    let argmax = |p: &[(f64, f64)]| {
        p.iter()
            .copied()
            .fold((0.0, 0.0), |a, b| if b.1 > a.1 { b } else { a })
    };
    let labels: Vec<String> = r.iter().map(|row| row[2].clone()).fold(vec![], |mut v, l| {
        if !v.contains(&l) {
            v.push(l);
        }
        v
    });
    assert_eq!(labels.len(), 4);
    let uniform = family(&labels[0]);
    let quarter = family(&labels[1]);
    let square = family(&labels[3]);
    assert!(argmax(&uniform).0 > 0.8);
    assert_eq!(argmax(&square).0, square[1].0);
    let peak = argmax(&quarter).1;
    for l in [&labels[0], &labels[2], &labels[3]] {
        assert!(peak < argmax(&family(l)).1);
    }
}

#[test]
fn config_file_and_ladder() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# study\nlambda = 10\ngrid = analytic\nbeta = 0.25\n").unwrap();
    let out = dir.path().join("conv.csv");
    let o = supraconv(&[
        "--config",
        cfg.to_str().unwrap(),
        "convergence",
        "--ladder",
        "20,40,80",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, r) = rows(&out);
    assert_eq!(header, "N,error,p");
    assert_eq!(r.len(), 3);
    let p: f64 = r[2][2].parse().unwrap();
    assert!((p - 4.0).abs() < 0.1);
}

#[test]
fn config_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "lambda = 10\n\nbogus = 3\n").unwrap();
    let o = supraconv(&["--config", cfg.to_str().unwrap(), "solve"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":3"));
}

#[test]
fn relative_out_uses_env_dir() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_supraconv"))
        .args(["solve", "--out", "u.csv"])
        .env("SUPRACONV_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("u.csv").exists());
}
