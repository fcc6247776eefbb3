//! Python bindings: single runs, classification, sweeps as CSV text,
//! trace analysis, fabric sizing and a standalone slot table.

use std::path::PathBuf;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use slotsim::disamb::{LatencyConfig, Outcome, Policy};
use slotsim::fabric::{FabricSpec, LutType};
use slotsim::groups::GroupTable;
use slotsim::harness::{
    build_pairs, bundled_bench, bundled_benches, classify_all, fig3_csv, fig4_csv, multi_grid, single_series,
    sweep_multi, sweep_single, BenchSpec, Config, Target, MULTI_SLOTS, MULTI_TIMERS, SINGLE_GRID, SINGLE_SLOTS,
};
use slotsim::isa::Program;
use slotsim::reuse::{analyze, summarize, Trace, WindowConfig};
use slotsim::sim::{run_program, CoreConfig};

fn runtime<E: std::fmt::Display>(e: E) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn value<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn target(name: &str) -> PyResult<Target> {
    Target::ALL
        .into_iter()
        .find(|t| t.name().eq_ignore_ascii_case(name))
        .ok_or_else(|| value(format!("unknown target `{name}`")))
}

fn config(text: Option<&str>) -> PyResult<Config> {
    text.map_or(Ok(Config::default()), |t| Config::parse(t).map_err(value))
}

fn benches(names: Option<Vec<String>>) -> PyResult<Vec<BenchSpec>> {
    match names {
        None => Ok(bundled_benches()),
        Some(ns) => ns
            .iter()
            .map(|n| bundled_bench(n).ok_or_else(|| value(format!("unknown bundled kernel `{n}`"))))
            .collect(),
    }
}

#[pyclass(frozen, get_all, module = "pyslotsim")]
struct RunResult {
    cycles: u64,
    instret: u64,
    exec_cycles: u64,
    slot_cycles: u64,
    trap_cycles: u64,
    hits: u64,
    misses: u64,
    console: String,
    digest: String,
}

#[pymethods]
impl RunResult {
    fn __repr__(&self) -> String {
        format!("RunResult(cycles={}, instret={}, misses={})", self.cycles, self.instret, self.misses)
    }
}

/// Runs a bundled kernel (`bench`) or an ELF file (`path`). With `slots`
/// the disambiguator is enabled with the given latencies.
#[pyfunction]
#[pyo3(signature = (bench=None, path=None, target="rv32imf", slots=None, miss_latency=50, hit_latency=0))]
fn run(
    bench: Option<&str>,
    path: Option<PathBuf>,
    target: &str,
    slots: Option<usize>,
    miss_latency: u64,
    hit_latency: u64,
) -> PyResult<RunResult> {
    let prog = match (bench, path) {
        (Some(n), None) => {
            let b = bundled_bench(n).ok_or_else(|| value(format!("unknown bundled kernel `{n}`")))?;
            b.image(self::target(target)?).clone()
        }
        (None, Some(p)) => Program::from_elf(&std::fs::read(&p).map_err(runtime)?).map_err(value)?,
        _ => return Err(value("give exactly one of bench or path")),
    };
    let mut cfg = CoreConfig::default();
    if let Some(n) = slots {
        if n == 0 {
            return Err(value("slots must be at least 1"));
        }
        cfg = cfg.with_disamb(LatencyConfig { num_slots: n, miss_latency, hit_latency });
    }
    let r = run_program(&prog, &cfg, &GroupTable::default()).map_err(runtime)?;
    Ok(RunResult {
        cycles: r.cycles,
        instret: r.instret,
        exec_cycles: r.exec_cycles,
        slot_cycles: r.slot_cycles,
        trap_cycles: r.trap_cycles,
        hits: r.hits(),
        misses: r.misses(),
        console: String::from_utf8_lossy(&r.console).into_owned(),
        digest: r.digest(),
    })
}

#[pyclass(frozen, get_all, module = "pyslotsim")]
struct Classification {
    bench: String,
    label: String,
    speedup_im: f64,
    speedup_if: f64,
    cycles: Vec<u64>,
    groups_used: Vec<u8>,
}

#[pymethods]
impl Classification {
    fn __repr__(&self) -> String {
        format!("Classification({}, {}, im={:.3}, if={:.3})", self.bench, self.label, self.speedup_im, self.speedup_if)
    }
}

#[pyfunction]
#[pyo3(signature = (names=None, config=None))]
fn classify(py: Python<'_>, names: Option<Vec<String>>, config: Option<&str>) -> PyResult<Vec<Classification>> {
    let cfg = self::config(config)?;
    let bs = benches(names)?;
    let out = py.detach(|| classify_all(&bs, cfg.threshold, &cfg.core, &GroupTable::default()));
    out.into_iter()
        .map(|r| {
            let c = r.map_err(runtime)?;
            Ok(Classification {
                bench: c.bench,
                label: c.label.name().to_string(),
                speedup_im: c.speedup_im,
                speedup_if: c.speedup_if,
                cycles: c.cycles.to_vec(),
                groups_used: c.groups_used,
            })
        })
        .collect()
}

fn classified(bs: Vec<BenchSpec>, cfg: &Config) -> PyResult<Vec<(BenchSpec, slotsim::harness::Classification)>> {
    let cls = classify_all(&bs, cfg.threshold, &cfg.core, &GroupTable::default());
    bs.into_iter().zip(cls).map(|(b, c)| Ok((b, c.map_err(runtime)?))).collect()
}

/// Single-program sweep; returns the CSV text.
#[pyfunction]
#[pyo3(signature = (names=None, config=None))]
fn sweep_single_csv(py: Python<'_>, names: Option<Vec<String>>, config: Option<&str>) -> PyResult<String> {
    let cfg = self::config(config)?;
    let bs = benches(names)?;
    py.detach(|| {
        let cls = classified(bs, &cfg)?;
        let rows = sweep_single(&cls, &SINGLE_GRID, SINGLE_SLOTS, &cfg.core, &GroupTable::default());
        Ok(fig3_csv(&rows, &single_series(&SINGLE_GRID)))
    })
}

/// Paired-task sweep; returns the CSV text.
#[pyfunction]
#[pyo3(signature = (names=None, config=None))]
fn sweep_multi_csv(py: Python<'_>, names: Option<Vec<String>>, config: Option<&str>) -> PyResult<String> {
    let cfg = self::config(config)?;
    let bs = benches(names)?;
    py.detach(|| {
        let cls = classified(bs, &cfg)?;
        let plans = build_pairs(&cls);
        let grid = multi_grid(&MULTI_SLOTS, &MULTI_TIMERS, cfg.latency.miss_latency, cfg.latency.hit_latency);
        let rows = sweep_multi(&plans, &grid, &cfg.core, &GroupTable::default(), &cfg.sched).map_err(runtime)?;
        Ok(fig4_csv(&rows, cfg.baseline))
    })
}

type ReuseRow = (String, usize, usize, usize, usize, usize);

/// Working-set quantiles of a trace file: a list of
/// `(stream_kind, window_size, median, q1, q3, max)` tuples.
#[pyfunction]
#[pyo3(signature = (path, lo=6, hi=15))]
fn analyze_trace(path: PathBuf, lo: u32, hi: u32) -> PyResult<Vec<ReuseRow>> {
    if lo > hi || hi > 40 {
        return Err(value("window exponents must satisfy lo <= hi <= 40"));
    }
    let trace = Trace::parse(&std::fs::read(&path).map_err(runtime)?).map_err(value)?;
    let stats = analyze(&trace.events, &WindowConfig::powers_of_two(lo, hi));
    let rows = summarize(&stats).map_err(value)?;
    Ok(rows.into_iter().map(|r| (r.kind.name().to_string(), r.n, r.q.median, r.q.q1, r.q.q3, r.q.max)).collect())
}

#[pyfunction]
fn bundled_names() -> Vec<&'static str> {
    slotsim::harness::bundled_names()
}

#[pyfunction]
#[pyo3(signature = (luts, lut_type="4"))]
fn bitstream_bits(luts: u64, lut_type: &str) -> PyResult<u64> {
    let lut_type: LutType = lut_type.parse().map_err(value)?;
    Ok(slotsim::fabric::bitstream_bits(&FabricSpec { lut_count: luts, lut_type }))
}

#[pyfunction]
fn port_width(bits: u64, latency: u64) -> PyResult<u64> {
    if latency == 0 {
        return Err(value("latency must be at least 1 cycle"));
    }
    Ok(slotsim::fabric::port_width(bits, latency))
}

#[pyfunction]
fn sizing_report(blocks: usize, bitstream_bytes: u64) -> u64 {
    slotsim::bitcache::sizing_report(blocks, bitstream_bytes).total_bytes
}

/// A standalone disambiguator for experimenting with tag traces.
#[pyclass(module = "pyslotsim")]
struct SlotTable {
    inner: slotsim::disamb::SlotTable,
    now: u64,
}

#[pymethods]
impl SlotTable {
    #[new]
    #[pyo3(signature = (slots, miss_latency=50, hit_latency=0, policy="lru", seed=0))]
    fn new(slots: usize, miss_latency: u64, hit_latency: u64, policy: &str, seed: u64) -> PyResult<SlotTable> {
        if slots == 0 {
            return Err(value("slots must be at least 1"));
        }
        let policy = match policy {
            "lru" => Policy::Lru,
            "fifo" => Policy::Fifo,
            "random" => Policy::Random { seed },
            other => return Err(value(format!("unknown policy `{other}`"))),
        };
        let lc = LatencyConfig { num_slots: slots, miss_latency, hit_latency };
        Ok(SlotTable { inner: slotsim::disamb::SlotTable::with_policy(lc, policy), now: 0 })
    }

    /// Returns `(hit, latency)`.
    fn access(&mut self, tag: u32) -> (bool, u64) {
        let o = self.inner.access(tag, self.now);
        self.now += 1;
        (matches!(o, Outcome::Hit { .. }), o.latency())
    }

    #[getter]
    fn misses(&self) -> u64 {
        self.inner.total_misses()
    }

    #[getter]
    fn hits(&self) -> u64 {
        self.inner.total_hits()
    }

    fn occupied(&self) -> Vec<u32> {
        self.inner.snapshot().occupied()
    }
}

#[pymodule]
fn pyslotsim(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RunResult>()?;
    m.add_class::<Classification>()?;
    m.add_class::<SlotTable>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_single_csv, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_multi_csv, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_trace, m)?)?;
    m.add_function(wrap_pyfunction!(bundled_names, m)?)?;
    m.add_function(wrap_pyfunction!(bitstream_bits, m)?)?;
    m.add_function(wrap_pyfunction!(port_width, m)?)?;
    m.add_function(wrap_pyfunction!(sizing_report, m)?)?;
    Ok(())
}
