use std::path::Path;

use chrono::{Duration, NaiveDate};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use taildep::copula::TailSource;
use taildep::dists::{sample, InnovationDist};
use taildep::error::Error;
use taildep::exec::Execution;
use taildep::pipeline::jalali::{gregorian_to_jalali, is_leap, jalali_to_gregorian, month_len};
use taildep::pipeline::*;

fn ymd(y: i32, m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, d).unwrap()
}

fn parse(text: &str) -> taildep::error::Result<PriceSeries> {
    parse_price_reader(text.as_bytes(), "mem.csv", "x", &CsvSchema::default())
}

#[test]
fn two_row_file_parses() {
    let s = parse("date,price\n2020-01-02,10.5\n2020-01-03,11\n").unwrap();
    assert_eq!(s.len(), 2);
    assert_eq!(s.dates, vec![ymd(2020, 1, 2), ymd(2020, 1, 3)]);
    assert_eq!(s.prices, vec![10.5, 11.0]);
}

#[test]
fn zero_price_is_rejected_with_its_line() {
    match parse("date,price\n2020-01-02,10\n2020-01-03,0\n") {
        Err(Error::NonPositivePrice { line, value, .. }) => {
            assert_eq!(line, 3);
            assert_eq!(value, 0.0);
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(parse("date,price\n2020-01-02,-1\n"), Err(Error::NonPositivePrice { line: 2, .. })));
}

#[test]
fn unsorted_input_is_sorted() {
    let s = parse("date,price\n2020-01-06,3\n2020-01-02,1\n2020-01-03,2\n").unwrap();
    assert_eq!(s.dates, vec![ymd(2020, 1, 2), ymd(2020, 1, 3), ymd(2020, 1, 6)]);
    assert_eq!(s.prices, vec![1.0, 2.0, 3.0]);
}

#[test]
fn duplicate_date_is_rejected() {
    let e = parse("date,price\n2020-01-02,1\n2020-01-03,2\n2020-01-02,3\n").unwrap_err();
    assert!(matches!(e, Error::DuplicateDate { .. }), "{e:?}");
    assert!(e.to_string().contains("lines 2 and 4"), "{e}");
}

#[test]
fn malformed_rows_report_line_numbers() {
    let e = parse("date,price\n2020-01-02,1\n2020-01-03,abc\n").unwrap_err();
    assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
    let e = parse("date,price\n2020-01-02,1\n2020-13-03,2\n").unwrap_err();
    assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
    let e = parse("day,price\n2020-01-02,1\n").unwrap_err();
    assert!(e.to_string().contains("missing column 'date'"), "{e}");
    assert!(matches!(parse("date,price\n"), Err(Error::Empty(_))));
}

#[test]
fn custom_schema_and_jalali_dates() {
    let schema = CsvSchema {
        date_column: "Tarikh".into(),
        price_column: "Close".into(),
        calendar: Calendar::Jalali,
        date_format: String::new(),
        delimiter: ';',
    };
    let text = "Close;Tarikh\n100;1384/01/02\n101;1384/01/01\n";
    let s = parse_price_reader(text.as_bytes(), "tse.csv", "tse", &schema).unwrap();
    assert_eq!(s.dates, vec![ymd(2005, 3, 21), ymd(2005, 3, 22)]);
    assert_eq!(s.prices, vec![101.0, 100.0]);
}

#[test]
fn price_file_round_trip_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    let s = PriceSeries::new("a", vec![(ymd(2020, 1, 2), 1.25), (ymd(2020, 1, 3), 1.5)]).unwrap();
    let path = dir.path().join("a.csv");
    write_price_csv(&s, &path).unwrap();
    assert_eq!(parse_price_csv(&path, "a", &CsvSchema::default()).unwrap(), s);
    assert!(matches!(parse_price_csv(&dir.path().join("missing.csv"), "a", &CsvSchema::default()), Err(Error::Io(_))));
}

#[test]
fn jalali_reference_dates() {
    assert_eq!(jalali_to_gregorian(1384, 1, 1).unwrap(), ymd(2005, 3, 21));
    assert_eq!(jalali_to_gregorian(1357, 11, 22).unwrap(), ymd(1979, 2, 11));
    assert_eq!(jalali_to_gregorian(1399, 1, 1).unwrap(), ymd(2020, 3, 20));
    assert_eq!(jalali_to_gregorian(1403, 1, 1).unwrap(), ymd(2024, 3, 20));
    assert_eq!(jalali_to_gregorian(1383, 12, 30).unwrap(), ymd(2005, 3, 20));
    assert_eq!(gregorian_to_jalali(ymd(2018, 12, 31)).unwrap(), (1397, 10, 10));
}

#[test]
fn jalali_invalid_dates() {
    assert!(!is_leap(1384));
    assert!(matches!(jalali_to_gregorian(1384, 12, 30), Err(Error::InvalidDate(_))));
    assert!(matches!(jalali_to_gregorian(1384, 12, 31), Err(Error::InvalidDate(_))));
    assert!(jalali_to_gregorian(1384, 13, 1).is_err());
    assert!(jalali_to_gregorian(1384, 7, 31).is_err());
    assert!(jalali_to_gregorian(1384, 1, 0).is_err());
    assert!(jalali_to_gregorian(1299, 1, 1).is_err());
    assert!(jalali_to_gregorian(1501, 1, 1).is_err());
}

#[test]
fn jalali_round_trip_1383_to_1398() {
    let mut expected = jalali_to_gregorian(1383, 1, 1).unwrap();
    for y in 1383..=1398 {
        for m in 1..=12 {
            for d in 1..=month_len(y, m) {
                let g = jalali_to_gregorian(y, m, d).unwrap();
                assert_eq!(g, expected, "{y}/{m}/{d}");
                assert_eq!(gregorian_to_jalali(g).unwrap(), (y, m, d));
                expected += Duration::days(1);
            }
        }
    }
    assert_eq!(expected, jalali_to_gregorian(1399, 1, 1).unwrap());
}

#[test]
fn log_return_cases() {
    assert_eq!(log_returns(&[100.0, 100.0]), vec![0.0]);
    let r = log_returns(&[100.0, 100.0 * 0.01f64.exp()]);
    assert!((r[0] - 0.01).abs() < 1e-15);
    assert!(log_returns(&[5.0]).is_empty());
}

fn series(label: &str, days: &[u32], prices: &[f64]) -> PriceSeries {
    PriceSeries::new(label, days.iter().zip(prices).map(|(d, p)| (ymd(2021, 3, *d), *p)).collect()).unwrap()
}

#[test]
fn alignment_cases() {
    let a = series("a", &[1, 2, 3, 4], &[1.0, 2.0, 4.0, 8.0]);
    let b = series("b", &[1, 2, 3, 4], &[3.0, 3.0, 3.0, 6.0]);
    let p = align_by_date(&[a.clone(), b.clone()]).unwrap();
    assert_eq!(p.n_obs(), 3);
    assert_eq!(p.join.common_dates, 4);

    let c = series("c", &[1, 2, 4], &[1.0, 1.0, 1.0]);
    let p = align_by_date(&[a.clone(), b.clone(), c]).unwrap();
    assert_eq!(p.dates, vec![ymd(2021, 3, 1), ymd(2021, 3, 2), ymd(2021, 3, 4)]);
    assert_eq!(p.join.input_lengths, vec![4, 4, 3]);
    // the return across the gap comes from the two surrounding observed prices
    assert!((p.returns[0][1] - 4f64.ln()).abs() < 1e-15);

    let d = series("d", &[10, 11], &[1.0, 1.0]);
    assert!(matches!(align_by_date(&[a, d]), Err(Error::Empty(_))));
}

proptest! {
    #[test]
    fn returns_are_scale_invariant(p in prop::collection::vec(0.01f64..1e4, 2..40), c in 1e-3f64..1e3) {
        let scaled: Vec<f64> = p.iter().map(|x| x * c).collect();
        for (a, b) in log_returns(&p).iter().zip(log_returns(&scaled)) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn aligned_cells_trace_back_to_raw_prices(
        mask_a in prop::collection::vec(any::<bool>(), 30),
        mask_b in prop::collection::vec(any::<bool>(), 30),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = ymd(2020, 1, 1);
        let make = |label: &str, mask: &[bool], rng: &mut ChaCha8Rng| {
            let rows: Vec<(NaiveDate, f64)> = mask
                .iter()
                .enumerate()
                .filter(|(_, keep)| **keep)
                .map(|(i, _)| (start + Duration::days(i as i64), Distribution::<f64>::sample(&StandardNormal, rng).exp()))
                .collect();
            PriceSeries::new(label, rows).unwrap()
        };
        let a = make("a", &mask_a, &mut rng);
        let b = make("b", &mask_b, &mut rng);
        let common = mask_a.iter().zip(&mask_b).filter(|(x, y)| **x && **y).count();
        match align_by_date(&[a.clone(), b.clone()]) {
            Err(_) => prop_assert!(common < 2),
            Ok(p) => {
                prop_assert_eq!(p.dates.len(), common);
                for (col, raw) in [&a, &b].into_iter().enumerate() {
                    for (t, w) in p.dates.windows(2).enumerate() {
                        let i0 = raw.dates.binary_search(&w[0]).unwrap();
                        let i1 = raw.dates.binary_search(&w[1]).unwrap();
                        prop_assert_eq!(p.returns[col][t], (raw.prices[i1] / raw.prices[i0]).ln());
                    }
                }
            }
        }
    }
}

const BASE_CONFIG: &str = r#"
seed = 11
[[assets]]
name = "a"
path = "a.csv"
[[assets]]
name = "b"
path = "b.csv"
"#;

#[test]
fn config_defaults_and_paths() {
    let cfg = Config::from_toml_str(BASE_CONFIG, Path::new("/data")).unwrap();
    assert_eq!(cfg.assets[0].path, Path::new("/data/a.csv"));
    assert_eq!(cfg.output_dir, Path::new("/data/report"));
    assert_eq!(cfg.diagnostics.lags, vec![5, 10]);
    assert_eq!(cfg.copula.n_boot, 200);
    assert_eq!(cfg.copula_families().unwrap().len(), 7);
    assert_eq!(cfg.model_specs().unwrap().len(), 16);
}

#[test]
fn config_errors() {
    let bad = |extra: &str| Config::from_toml_str(&format!("{BASE_CONFIG}{extra}"), Path::new(".")).unwrap_err();
    assert!(bad("[copula]\nfamilies = [\"gaussian\", \"bb7\"]\n").to_string().contains("unknown copula family 'bb7'"));
    assert!(matches!(bad("[copula]\nestimator = \"moments\"\n"), Error::Config(_)));
    assert!(matches!(bad("[model]\ndistributions = [\"cauchy\"]\n"), Error::Config(_) | Error::InvalidParameter(_)));
    assert!(matches!(bad("[diagnostics]\nlags = [0]\n"), Error::Config(_)));
    assert!(matches!(bad("[copula]\nk_grid = [0]\n"), Error::Config(_)));
    assert!(matches!(bad("typo = 1\n"), Error::Config(_)));
    let one = "[[assets]]\nname = \"a\"\npath = \"a.csv\"\n";
    assert!(matches!(Config::from_toml_str(one, Path::new(".")), Err(Error::Config(_))));
    let dup = "[[assets]]\nname = \"a\"\npath = \"a.csv\"\n[[assets]]\nname = \"a\"\npath = \"b.csv\"\n";
    assert!(matches!(Config::from_toml_str(dup, Path::new(".")), Err(Error::Config(_))));
}

#[test]
fn unknown_family_fails_before_reading_data() {
    // the asset files do not exist; validation must fail first
    let mut cfg = Config::from_toml_str(BASE_CONFIG, Path::new("/nonexistent")).unwrap();
    cfg.copula.families = vec!["gaussian".into(), "nonsense".into()];
    let e = run_pipeline(&cfg).unwrap_err();
    assert!(matches!(&e, Error::Stage { stage, .. } if stage == "config"), "{e}");
    assert!(matches!(e.root(), Error::Config(_)));
}

#[test]
fn missing_file_is_an_ingest_error() {
    let cfg = Config::from_toml_str(BASE_CONFIG, Path::new("/nonexistent")).unwrap();
    let e = run_pipeline(&cfg).unwrap_err();
    assert!(e.to_string().starts_with("[ingest]"), "{e}");
}

fn small_config(extra: &str) -> Config {
    let text = format!(
        "{BASE_CONFIG}[model]\narma = [[0, 0]]\ndistributions = [\"normal\", \"student_t\"]\nlong_memory = false\n\
         [copula]\nfamilies = [\"independent\", \"gaussian\", \"clayton\", \"frank\"]\nn_boot = 19\nn_perm = 99\n{extra}"
    );
    Config::from_toml_str(&text, Path::new(".")).unwrap()
}

fn gaussian_pair(t: usize, rho: f64, seed: u64) -> Vec<PriceSeries> {
    let mut spec = SyntheticSpec::garch_t(2, t, Dependence::Equicorrelated { rho });
    spec.names = vec!["a".into(), "b".into()];
    simulate_panel(&spec, seed).unwrap()
}

#[test]
fn disjoint_calendars_fail_at_alignment() {
    let a = series("a", &[1, 2, 3], &[1.0, 2.0, 3.0]);
    let b = series("b", &[10, 11, 12], &[1.0, 2.0, 3.0]);
    let e = run_on_series(&small_config(""), &[a, b], Execution::Sequential).unwrap_err();
    assert!(matches!(&e, Error::Stage { stage, .. } if stage == "align"), "{e}");
}

#[test]
fn oversized_scaling_factor_is_a_tail_error() {
    let e = run_on_series(&small_config("k_grid = [5000]\n"), &gaussian_pair(400, 0.3, 1), Execution::Sequential)
        .unwrap_err();
    assert!(matches!(&e, Error::Stage { stage, .. } if stage == "tail"), "{e}");
    assert!(e.to_string().contains("scaling factor out of range"), "{e}");
}

#[test]
fn report_tables_are_complete() {
    let out = run_on_series(&small_config(""), &gaussian_pair(600, 0.4, 3), Execution::default()).unwrap();
    let t = &out.tables;
    assert_eq!(t.n_obs, 600);
    assert_eq!(t.assets, vec!["a", "b"]);
    assert_eq!(t.model_selection.len(), 4);
    assert_eq!(t.model_selection.iter().filter(|r| r.selected).count(), 2);
    assert!(t.model_params.iter().all(|r| r.estimate.is_finite()));
    assert!(t.long_memory.is_empty());
    assert_eq!(t.rank_correlations.len(), 1);
    let tau = t.rank_correlations[0].kendall;
    assert!((tau - 2.0 / std::f64::consts::PI * 0.4f64.asin()).abs() < 0.08, "tau {tau}");
    assert!(t.rank_correlations[0].independence_p <= 0.01);
    assert_eq!(t.copula_fits.len(), 4);
    for f in &t.copula_fits {
        assert!(f.error.is_none());
        assert_eq!(f.n_bootstrap.unwrap() + f.n_failed.unwrap(), 19);
        let p = f.p_value.unwrap();
        assert!(p > 0.0 && p <= 1.0);
    }
    assert_eq!(t.copula_selection.len(), 1);
    let empirical = t.tail_coefficients.iter().filter(|r| r.source == TailSource::Empirical).count();
    assert_eq!(empirical, taildep::copula::k_grid(600).len());
    // LB at two lags on returns and squares, two ADFs per asset, one EG,
    // then residual LB at two lags on levels and squares plus PIT-KS
    assert_eq!(t.diagnostics.len(), 2 * 6 + 1 + 2 * 5);
}

#[test]
fn independent_noise_has_negligible_empirical_tails() {
    let t = 20_000;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let start = ymd(2000, 1, 1);
    let panel: Vec<PriceSeries> = ["x", "y", "z"]
        .iter()
        .map(|name| {
            let mut p = 50.0;
            let mut rows = vec![(start, p)];
            for i in 1..=t {
                let z: f64 = StandardNormal.sample(&mut rng);
                p *= (0.01 * z).exp();
                rows.push((start + Duration::days(i as i64), p));
            }
            PriceSeries::new(*name, rows).unwrap()
        })
        .collect();
    let text = "[[assets]]\nname = \"x\"\npath = \"x\"\n[[assets]]\nname = \"y\"\npath = \"y\"\n[[assets]]\nname = \"z\"\npath = \"z\"\n\
                [model]\narma = [[0, 0]]\ndistributions = [\"normal\"]\nlong_memory = false\n\
                [copula]\nfamilies = [\"independent\", \"gaussian\"]\nn_boot = 5\nn_perm = 9\n";
    let cfg = Config::from_toml_str(text, Path::new(".")).unwrap();
    let out = run_on_series(&cfg, &panel, Execution::default()).unwrap();
    let rows: Vec<_> = out.tables.tail_coefficients.iter().filter(|r| r.source == TailSource::Empirical).collect();
    assert_eq!(rows.len(), 3 * 3);
    for r in rows {
        assert!(r.lower <= 0.05 && r.upper <= 0.05, "{r:?}");
    }
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn report_files_are_byte_identical_across_runs_and_executors() {
    let cfg = small_config("");
    let data = gaussian_pair(300, 0.3, 9);
    let mut outputs = Vec::new();
    for exec in [Execution::Sequential, Execution::default(), Execution::Sequential] {
        let dir = tempfile::tempdir().unwrap();
        let out = run_on_series(&cfg, &data, exec).unwrap();
        let written = emit_report(&out.tables, dir.path()).unwrap();
        assert_eq!(written.len(), TABLE_FILES.len() + 4);
        emit_plot_data(&out.models, dir.path(), cfg.diagnostics.acf_max_lag).unwrap();
        outputs.push(read_dir_sorted(dir.path()));
    }
    assert_eq!(outputs[0].len(), 5 + 4 + 4);
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    let summary: ReportTables =
        serde_json::from_slice(&outputs[0].iter().find(|f| f.0 == "summary.json").unwrap().1).unwrap();
    assert_eq!(summary.seed, 11);
}

#[test]
fn emitting_an_empty_report_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_on_series(&small_config(""), &gaussian_pair(200, 0.3, 4), Execution::Sequential).unwrap();
    let mut empty = out.tables.clone();
    empty.n_obs = 0;
    assert!(matches!(emit_report(&empty, dir.path()), Err(Error::Empty(_))));
    assert!(matches!(emit_plot_data(&[], dir.path(), 20), Err(Error::Empty(_))));
}

#[test]
fn acf_plot_data_has_band() {
    let eps = sample(InnovationDist::Normal, 400, 5).unwrap();
    let bars = acf_bars(&eps, 20).unwrap();
    assert_eq!(bars.len(), 20);
    assert_eq!(bars[0].lag, 1);
    assert!(bars.iter().all(|b| (b.band - 0.1).abs() < 1e-15));
    // iid noise stays inside ±2/√T at most lags
    assert!(bars.iter().filter(|b| b.acf_eps.abs() > b.band).count() <= 3);
}

#[test]
fn qq_points_of_exact_sample_lie_in_monte_carlo_band() {
    let dist = InnovationDist::StudentT { nu: 6.0 };
    let n = 300;
    let reps = 400;
    let mut sims: Vec<Vec<f64>> = (0..reps)
        .map(|r| {
            let mut x = sample(dist, n, 1000 + r).unwrap();
            x.sort_by(f64::total_cmp);
            x
        })
        .collect();
    // pointwise 0.5% and 99.5% quantiles of each order statistic
    let mut lo = vec![0.0; n];
    let mut hi = vec![0.0; n];
    for i in 0..n {
        let mut col: Vec<f64> = sims.iter_mut().map(|s| s[i]).collect();
        col.sort_by(f64::total_cmp);
        lo[i] = col[reps as usize / 200];
        hi[i] = col[reps as usize - 1 - reps as usize / 200];
    }
    let eps = sample(dist, n, 7).unwrap();
    let qq = qq_points(dist, &eps).unwrap();
    assert_eq!(qq.len(), n);
    let inside = qq.iter().enumerate().filter(|(i, q)| q.empirical >= lo[*i] && q.empirical <= hi[*i]).count();
    assert!(inside as f64 >= 0.95 * n as f64, "{inside}/{n} inside");
    // theoretical quantiles sit inside their own band
    assert!(qq.iter().enumerate().all(|(i, q)| q.theoretical >= lo[i] && q.theoretical <= hi[i]));
    assert!(qq.windows(2).all(|w| w[0].theoretical < w[1].theoretical && w[0].empirical <= w[1].empirical));
}

#[test]
fn synthetic_panel_shapes() {
    let spec = SyntheticSpec::garch_t(3, 250, Dependence::Equicorrelated { rho: 0.5 });
    let s = simulate_panel(&spec, 1).unwrap();
    assert_eq!(s.len(), 3);
    assert!(s.iter().all(|x| x.len() == 251 && x.prices.iter().all(|p| *p > 0.0)));
    assert_eq!(s[0].dates, s[2].dates);
    assert_eq!(simulate_panel(&spec, 1).unwrap(), s);
    assert_ne!(simulate_panel(&spec, 2).unwrap(), s);
    let bad = SyntheticSpec::garch_t(3, 10, Dependence::Equicorrelated { rho: -0.9 });
    assert!(simulate_panel(&bad, 1).is_err());
    let biv =
        SyntheticSpec::garch_t(3, 10, Dependence::Bivariate(taildep::copula::CopulaModel::Clayton { theta: 2.0 }));
    assert!(simulate_panel(&biv, 1).is_err());
}
