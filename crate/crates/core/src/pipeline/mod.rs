//! End-to-end analysis: ingest and align prices, select margin models,
//! fit copulas to the standardized residuals and tabulate tail dependence.

pub mod config;
pub mod data;
pub mod jalali;
pub mod report;
pub mod run;
pub mod select;
pub mod synthetic;

pub use config::{AssetConfig, Config, CopulaConfig, DiagnosticsConfig, ModelConfig};
pub use data::{
    align_by_date, log_returns, parse_price_csv, parse_price_reader, AlignedPanel, Calendar, CsvSchema, JoinStats,
    PriceSeries,
};
pub use report::{acf_bars, emit_plot_data, emit_report, qq_points, ReportTables, TABLE_FILES};
pub use run::{
    analytic_tails, empirical_tails, fit_copulas, load_series, long_memory_row, pairs, param_rows, rank_correlation,
    residual_rows, residual_sample, run_on_series, run_pipeline, run_pipeline_with, run_report, scaling_factors,
    select_margins, AssetModel, ResidualRow, RunOutput,
};
pub use select::{choose_copula, select_model, CandidateRow, CopulaChoice, FamilyScore};
pub use synthetic::{simulate_panel, write_price_csv, Dependence, SyntheticSpec};
