//! Regenerates `src/stattests/df_tables.rs` by Monte Carlo simulation of the
//! Dickey–Fuller and Engle–Granger statistics under the unit-root null.
//!
//! cargo run --release -p taildep --example df_tables -- crates/core/src/stattests/df_tables.rs

use std::fmt::Write as _;

use rand_distr::{Distribution, StandardNormal};
use taildep::rng::stream;
use taildep::stattests::{df_tau, Deterministic};
use taildep::Execution;

const SIZES: [usize; 7] = [25, 50, 100, 250, 500, 1000, 2500];
const REPS: usize = 100_000;
const PROBS: [f64; 33] = [
    0.0001, 0.0005, 0.001, 0.005, 0.01, 0.025, 0.05, 0.075, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6,
    0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.925, 0.95, 0.975, 0.99, 0.995, 0.999, 0.9995, 0.9999,
];

#[derive(Clone, Copy)]
enum Case {
    Df(Deterministic),
    EngleGranger,
}

fn random_walk(rng: &mut impl rand::Rng, len: usize) -> Vec<f64> {
    let mut x = Vec::with_capacity(len);
    let mut acc = 0.0;
    for _ in 0..len {
        let e: f64 = StandardNormal.sample(rng);
        acc += e;
        x.push(acc);
    }
    x
}

fn one(case: Case, n: usize, seed: u64) -> f64 {
    let mut rng = stream(seed, 0);
    match case {
        Case::Df(det) => {
            let x = random_walk(&mut rng, n + 1);
            df_tau(&x, 0, det).expect("df statistic").0
        }
        Case::EngleGranger => {
            let x = random_walk(&mut rng, n + 1);
            let y = random_walk(&mut rng, n + 1);
            let m = (n + 1) as f64;
            let (mx, my) = (x.iter().sum::<f64>() / m, y.iter().sum::<f64>() / m);
            let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
            let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
            let b = sxy / sxx;
            let u: Vec<f64> = x.iter().zip(&y).map(|(a, c)| c - my - b * (a - mx)).collect();
            df_tau(&u, 0, Deterministic::None).expect("df statistic").0
        }
    }
}

fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn table(name: &str, case: Case, case_id: u64, out: &mut String) {
    writeln!(out, "pub(crate) static {name}: DfTable = DfTable {{").unwrap();
    writeln!(out, "    sizes: &{SIZES:?},").unwrap();
    writeln!(out, "    probs: &PROBS,").unwrap();
    writeln!(out, "    quantiles: &[").unwrap();
    for (si, &n) in SIZES.iter().enumerate() {
        let base = (case_id << 40) | ((si as u64) << 32);
        let mut taus = Execution::Parallel.map_range(REPS, |r| one(case, n, base | r as u64));
        taus.sort_by(f64::total_cmp);
        let row: Vec<String> = PROBS.iter().map(|p| format!("{:.4}", quantile(&taus, *p))).collect();
        writeln!(out, "        &[{}],", row.join(", ")).unwrap();
        eprintln!("{name} n={n} done");
    }
    writeln!(out, "    ],\n}};\n").unwrap();
}

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| "df_tables.rs".into());
    let mut out = String::new();
    writeln!(out, "// Generated by `examples/df_tables.rs`: {REPS} Monte Carlo replications per").unwrap();
    writeln!(out, "// sample size of the Dickey-Fuller statistic (lag 0) under a Gaussian random").unwrap();
    writeln!(out, "// walk; the Engle-Granger table uses residuals of y on (1, x) for two").unwrap();
    writeln!(out, "// independent random walks. Rows are indexed by regression sample size.\n").unwrap();
    writeln!(out, "#![allow(clippy::approx_constant)]\n").unwrap();
    writeln!(out, "pub(crate) struct DfTable {{").unwrap();
    writeln!(out, "    pub sizes: &'static [usize],").unwrap();
    writeln!(out, "    pub probs: &'static [f64],").unwrap();
    writeln!(out, "    pub quantiles: &'static [&'static [f64]],").unwrap();
    writeln!(out, "}}\n").unwrap();
    let probs: Vec<String> = PROBS.iter().map(|p| format!("{p}")).collect();
    writeln!(out, "static PROBS: [f64; {}] = [{}];\n", PROBS.len(), probs.join(", ")).unwrap();
    table("ADF_NONE", Case::Df(Deterministic::None), 1, &mut out);
    table("ADF_CONSTANT", Case::Df(Deterministic::Constant), 2, &mut out);
    table("ADF_TREND", Case::Df(Deterministic::ConstantTrend), 3, &mut out);
    table("ENGLE_GRANGER_2", Case::EngleGranger, 4, &mut out);
    std::fs::write(&path, out.trim_end().to_string() + "\n").expect("write table file");
}
