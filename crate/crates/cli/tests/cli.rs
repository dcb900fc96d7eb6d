use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_taildep"))
}

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/synthetic")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn taildep")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect()
}

/// Every number in the CSV/JSON files under `dir`.
fn numbers_in(dir: &Path) -> Vec<f64> {
    let mut out = Vec::new();
    for (_, bytes) in snapshot(dir) {
        let text = String::from_utf8_lossy(&bytes);
        out.extend(text.split([',', '\n', ' ', ':', '"']).filter_map(|t| t.parse::<f64>().ok()));
    }
    out
}

fn assert_printed_numbers_are_in_files(text: &str, dir: &Path) {
    let known = numbers_in(dir);
    for tok in text.split(|c: char| c.is_whitespace() || c == '=' || c == '(' || c == ')') {
        if let Ok(x) = tok.parse::<f64>() {
            assert!(
                known.iter().any(|k| k == &x || (k.is_nan() && x.is_nan())),
                "printed {tok} not found in output files"
            );
        }
    }
}

#[test]
fn report_on_fixture_writes_all_tables() {
    let before = snapshot(&fixture());
    let out = tempfile::tempdir().unwrap();
    let config = fixture().join("config.toml");
    let o = run(&["report", "-c", config.to_str().unwrap(), "-o", out.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    for t in [
        "table1_long_memory",
        "table2_model_params",
        "table3_rank_correlations",
        "table4_copula_fits",
        "table5_tail_coefficients",
    ] {
        let text = std::fs::read_to_string(out.path().join(format!("{t}.csv"))).unwrap();
        assert!(text.lines().count() >= 2, "{t} has no rows");
    }
    for f in [
        "summary.json",
        "diagnostics.csv",
        "model_selection.csv",
        "copula_selection.csv",
        "qq_asset1.csv",
        "acf_asset3.csv",
    ] {
        assert!(out.path().join(f).exists(), "{f}");
    }
    assert_eq!(snapshot(&fixture()), before, "inputs were modified");
}

#[test]
fn report_is_deterministic_for_a_seed() {
    let config = fixture().join("config.toml");
    let runs: Vec<BTreeMap<String, Vec<u8>>> = (0..2)
        .map(|_| {
            let out = tempfile::tempdir().unwrap();
            let o = run(&[
                "--seed",
                "3",
                "report",
                "-c",
                config.to_str().unwrap(),
                "-o",
                out.path().to_str().unwrap(),
                "--n-boot",
                "19",
            ]);
            assert!(o.status.success(), "{}", stderr(&o));
            snapshot(out.path())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn tail_with_k_above_sample_size_fails() {
    let out = tempfile::tempdir().unwrap();
    let config = fixture().join("config.toml");
    let o = run(&[
        "tail",
        "-c",
        config.to_str().unwrap(),
        "-o",
        out.path().to_str().unwrap(),
        "--pair",
        "asset1,asset2",
        "-k",
        "5000",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("scaling factor out of range"), "{err}");
    assert!(err.contains("[tail]"), "{err}");
}

#[test]
fn tail_and_copula_print_only_recorded_numbers() {
    let out = tempfile::tempdir().unwrap();
    let config = fixture().join("config.toml");
    let base = ["-c", config.to_str().unwrap(), "-o", out.path().to_str().unwrap(), "--pair", "asset1,asset3"];
    let o = bin().arg("tail").args(base).args(["-k", "10,22"]).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("empirical k=22"), "{text}");
    assert_printed_numbers_are_in_files(&text, out.path());

    let o = bin().arg("copula").args(base).args(["--family", "gaussian,clayton", "--n-boot", "9"]).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("kendall="), "{text}");
    assert_printed_numbers_are_in_files(&text, out.path());
    let fits = std::fs::read_to_string(out.path().join("copula_fits.csv")).unwrap();
    assert_eq!(fits.lines().count(), 3);
}

#[test]
fn fit_and_residuals_write_artifacts() {
    let out = tempfile::tempdir().unwrap();
    let config = fixture().join("config.toml");
    let o = run(&[
        "residuals",
        "-c",
        config.to_str().unwrap(),
        "-o",
        out.path().to_str().unwrap(),
        "--name",
        "asset2",
        "--dist",
        "normal",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    for f in [
        "fit_asset2.json",
        "params_asset2.csv",
        "model_selection_asset2.csv",
        "residuals_asset2.csv",
        "gates_asset2.csv",
        "qq_asset2.csv",
        "acf_asset2.csv",
    ] {
        assert!(out.path().join(f).exists(), "{f}");
    }
    assert!(!out.path().join("fit_asset1.json").exists());
    let text = stdout(&o);
    assert_printed_numbers_are_in_files(&text, out.path());
    let residuals = std::fs::read_to_string(out.path().join("residuals_asset2.csv")).unwrap();
    assert!(residuals.starts_with("date,r,sigma,eps,pit\n"));
    assert_eq!(residuals.lines().count(), 501);
}

#[test]
fn ingest_reports_alignment() {
    let out = tempfile::tempdir().unwrap();
    let a = fixture().join("asset1.csv");
    let b = fixture().join("asset2.csv");
    let o = run(&[
        "ingest",
        "--asset",
        &format!("x={}", a.display()),
        "--asset",
        &format!("y={}", b.display()),
        "-o",
        out.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("aligned: 501 common dates, 500 returns"));
    let aligned = std::fs::read_to_string(out.path().join("aligned_returns.csv")).unwrap();
    assert!(aligned.starts_with("date,x,y\n"));
    assert_eq!(aligned.lines().count(), 501);
}

#[test]
fn bad_data_exits_one_with_stage() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "date,price\n2020-01-02,1\n2020-01-03,0\n").unwrap();
    let good = fixture().join("asset1.csv");
    let o = run(&[
        "ingest",
        "--asset",
        &format!("b={}", bad.display()),
        "--asset",
        &format!("g={}", good.display()),
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("[ingest]") && err.contains(":3: price must be positive"), "{err}");

    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "[[assets]]\nname = \"a\"\npath = \"a.csv\"\n[[assets]]\nname = \"b\"\npath = \"b.csv\"\n[copula]\nfamilies = [\"vine\"]\n").unwrap();
    let o = run(&["report", "-c", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("[config]"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["fit", "--bogus"],
        vec!["fit"],
        vec!["report", "--asset", "no-equals-sign"],
        vec!["--threads", "0", "ingest", "--asset", "a=b"],
        vec!["simulate", "-o", "/tmp/x", "--copula", "clayton"],
        vec!["fit", "--arma", "1"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    let config = fixture().join("config.toml");
    let o = run(&["tail", "-c", config.to_str().unwrap(), "--pair", "asset1,nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_is_seeded() {
    let dirs: Vec<_> = (0..3).map(|_| tempfile::tempdir().unwrap()).collect();
    for (d, seed) in dirs.iter().zip(["5", "5", "6"]) {
        let o = run(&[
            "--seed",
            seed,
            "simulate",
            "-o",
            d.path().to_str().unwrap(),
            "-T",
            "50",
            "--names",
            "p,q",
            "--copula",
            "clayton",
            "--theta",
            "3",
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let s: Vec<_> = dirs.iter().map(|d| snapshot(d.path())).collect();
    assert_eq!(s[0], s[1]);
    assert_ne!(s[0]["p.csv"], s[2]["p.csv"]);
    let config = String::from_utf8(s[0]["config.toml"].clone()).unwrap();
    assert!(config.contains("seed = 5") && config.contains("path = \"q.csv\""), "{config}");
}
