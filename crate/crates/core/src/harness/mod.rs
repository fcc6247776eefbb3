//! Bundled benchmarks, classification, sweeps and report files.

mod bench;
mod classify;
mod config;
mod report;
mod study;
mod sweep;

pub use bench::{bundled_bench, bundled_benches, bundled_names, BenchSpec, Target};
pub use classify::{classify_all, classify_bench, ClassLabel, Classification};
pub use config::{Config, DEFAULT_THRESHOLD, KEYS as CONFIG_KEYS};
pub use report::{
    distribution_csv, emit_reports, fig2_csv, fig3_csv, fig4_csv, fig4_summary_csv, fig7_csv, fig8_csv, mode_name,
    reuse_summary_csv, Labelled,
};
pub use study::{bench_trace, oversubscription_study, window_study, WindowStudy};
pub use sweep::{
    build_pairs, check_fidelity, geomean, mean, multi_grid, single_series, sweep_multi, sweep_single, PairClass, PairPlan, PairRow,
    Series, SweepBench, SweepCell, MULTI_SLOTS, MULTI_TIMERS, SINGLE_GRID, SINGLE_SLOTS,
};
