use std::fmt;

use rayon::prelude::*;

use super::bench::{BenchSpec, Target};
use super::classify::{run_checked, ClassLabel, Classification};
use crate::disamb::LatencyConfig;
use crate::error::HarnessError;
use crate::groups::GroupTable;
use crate::os::{run_matrix, Baseline, GridPoint, PairSpec, PairSummary, SchedConfig, Task};
use crate::sim::{output_digest, CoreConfig};

/// (miss, hit) latency pairs of the single-program sweep.
pub const SINGLE_GRID: [(u64, u64); 6] = [(10, 0), (10, 1), (50, 0), (50, 4), (250, 0), (250, 16)];
pub const SINGLE_SLOTS: usize = 4;
pub const MULTI_SLOTS: [usize; 3] = [2, 4, 8];
pub const MULTI_TIMERS: [u64; 2] = [1_000, 20_000];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    Fixed(Target),
    /// Best of RV32IM and RV32IF.
    MaxImIf,
    Slotted { miss: u64, hit: u64 },
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Series::Fixed(t) => write!(f, "{t}"),
            Series::MaxImIf => f.write_str("max(IM,IF)"),
            Series::Slotted { miss, hit } => write!(f, "({miss},{hit})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub series: Series,
    /// Measured cycles; `None` for derived series.
    pub cycles: Option<u64>,
    /// Cycles relative to RV32IMF (≥ 1 means slower).
    pub slowdown: f64,
    pub misses: Option<u64>,
}

impl SweepCell {
    /// Performance relative to RV32IMF, the reciprocal of the slowdown.
    pub fn relative_perf(&self) -> f64 {
        1.0 / self.slowdown
    }
}

#[derive(Debug)]
pub struct SweepBench {
    pub bench: String,
    pub label: ClassLabel,
    pub imf_cycles: u64,
    /// One entry per series; failed cells keep their error.
    pub cells: Vec<(Series, Result<SweepCell, HarnessError>)>,
}

impl SweepBench {
    pub fn cell(&self, s: Series) -> Option<&SweepCell> {
        self.cells.iter().find(|(x, _)| *x == s).and_then(|(_, r)| r.as_ref().ok())
    }

    pub fn slowdown(&self, s: Series) -> Option<f64> {
        self.cell(s).map(|c| c.slowdown)
    }
}

pub fn single_series(grid: &[(u64, u64)]) -> Vec<Series> {
    let mut v: Vec<Series> = Target::ALL.iter().map(|&t| Series::Fixed(t)).collect();
    v.push(Series::MaxImIf);
    v.extend(grid.iter().map(|&(miss, hit)| Series::Slotted { miss, hit }));
    v
}

/// Slowdown of every series against the RV32IMF image, per benchmark.
/// Slotted cells run the RV32IMF image behind a `slots`-entry disambiguator.
pub fn sweep_single(
    benches: &[(BenchSpec, Classification)],
    grid: &[(u64, u64)],
    slots: usize,
    cfg: &CoreConfig,
    groups: &GroupTable,
) -> Vec<SweepBench> {
    let cells: Vec<(usize, (u64, u64))> = (0..benches.len()).flat_map(|i| grid.iter().map(move |g| (i, *g))).collect();
    let mut slotted: Vec<Result<SweepCell, HarnessError>> = cells
        .par_iter()
        .map(|&(i, (miss, hit))| {
            let (b, c) = &benches[i];
            let lc = LatencyConfig { num_slots: slots, miss_latency: miss, hit_latency: hit };
            let r = run_checked(b, Target::Rv32imf, &cfg.clone().with_disamb(lc), groups, Some(&c.digest))?;
            Ok(SweepCell {
                series: Series::Slotted { miss, hit },
                cycles: Some(r.cycles),
                slowdown: r.cycles as f64 / c.cycles_of(Target::Rv32imf) as f64,
                misses: Some(r.misses()),
            })
        })
        .collect();
    let mut slotted = slotted.drain(..);

    benches
        .iter()
        .map(|(b, c)| {
            let imf = c.cycles_of(Target::Rv32imf);
            let mut out = Vec::new();
            for t in Target::ALL {
                let cycles = c.cycles_of(t);
                let cell = SweepCell { series: Series::Fixed(t), cycles: Some(cycles), slowdown: cycles as f64 / imf as f64, misses: None };
                out.push((cell.series, Ok(cell)));
            }
            let best = c.cycles_of(Target::Rv32im).min(c.cycles_of(Target::Rv32if));
            out.push((
                Series::MaxImIf,
                Ok(SweepCell { series: Series::MaxImIf, cycles: None, slowdown: best as f64 / imf as f64, misses: None }),
            ));
            for &(miss, hit) in grid {
                out.push((Series::Slotted { miss, hit }, slotted.next().unwrap()));
            }
            SweepBench { bench: b.name.clone(), label: c.label, imf_cycles: imf, cells: out }
        })
        .collect()
}

pub fn geomean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    (xs.iter().map(|x| x.ln()).sum::<f64>() / xs.len() as f64).exp()
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairClass {
    BothBoth,
    BothM,
}

impl PairClass {
    pub fn name(self) -> &'static str {
        match self {
            PairClass::BothBoth => "both-both",
            PairClass::BothM => "both-M",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PairPlan {
    pub spec: PairSpec,
    pub class: PairClass,
    /// The two tasks execute no common group.
    pub disjoint: bool,
    /// Console digest of one solo iteration of each task.
    pub solo_digest: [String; 2],
}

/// All unordered pairs of ImprovedByBoth kernels plus every
/// (ImprovedByBoth, ImprovedByM) cross pair.
pub fn build_pairs(benches: &[(BenchSpec, Classification)]) -> Vec<PairPlan> {
    let of = |l: ClassLabel| benches.iter().filter(move |(_, c)| c.label == l).collect::<Vec<_>>();
    let (both, m) = (of(ClassLabel::ImprovedByBoth), of(ClassLabel::ImprovedByM));
    let mut plans = Vec::new();
    let mut add = |a: &(BenchSpec, Classification), b: &(BenchSpec, Classification), class| {
        let disjoint = a.1.groups_used.iter().all(|g| !b.1.groups_used.contains(g));
        let task = |x: &(BenchSpec, Classification)| Task::new(x.0.name.clone(), x.0.image(Target::Rv32imf).clone());
        plans.push(PairPlan {
            spec: PairSpec { id: format!("{}+{}", a.0.name, b.0.name), a: task(a), b: task(b) },
            class,
            disjoint,
            solo_digest: [a.1.digest.clone(), b.1.digest.clone()],
        });
    };
    for i in 0..both.len() {
        for j in i + 1..both.len() {
            add(both[i], both[j], PairClass::BothBoth);
        }
    }
    for a in &both {
        for b in &m {
            add(a, b, PairClass::BothM);
        }
    }
    plans
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairRow {
    pub pair_id: String,
    pub class: PairClass,
    pub disjoint: bool,
    pub summary: PairSummary,
}

impl PairRow {
    pub fn avg_speedup(&self, b: Baseline) -> f64 {
        self.summary.avg_speedup(b)
    }
}

pub fn multi_grid(slots: &[usize], timers: &[u64], miss: u64, hit: u64) -> Vec<GridPoint> {
    let mut g = Vec::new();
    for &timer_period in timers {
        for &num_slots in slots {
            g.push(GridPoint { latency: LatencyConfig { num_slots, miss_latency: miss, hit_latency: hit }, timer_period });
        }
    }
    g
}

/// Every completed iteration of a paired task must print exactly what a
/// solo iteration prints.
pub fn check_fidelity(console: &[u8], marks: &[usize], solo_digest: &str) -> bool {
    let mut start = 0;
    marks.iter().all(|&end| {
        let ok = console.get(start..end).is_some_and(|c| output_digest(c) == solo_digest);
        start = end;
        ok
    })
}

pub fn sweep_multi(
    plans: &[PairPlan],
    grid: &[GridPoint],
    cfg: &CoreConfig,
    groups: &GroupTable,
    sched: &SchedConfig,
) -> Result<Vec<PairRow>, HarnessError> {
    let specs: Vec<PairSpec> = plans.iter().map(|p| p.spec.clone()).collect();
    let rows = run_matrix(&specs, grid, cfg, groups, sched)?;
    let by_id = |id: &str| plans.iter().find(|p| p.spec.id == id).unwrap();
    rows.into_iter()
        .map(|r| {
            let p = by_id(&r.pair_id);
            for i in 0..2 {
                if !check_fidelity(&r.summary.console[i], &r.summary.marks[i], &p.solo_digest[i]) {
                    let name = [&p.spec.a.name, &p.spec.b.name][i];
                    return Err(HarnessError::OutputMismatch { bench: name.clone(), target: format!("pair {}", r.pair_id) });
                }
            }
            Ok(PairRow { pair_id: r.pair_id, class: p.class, disjoint: p.disjoint, summary: r.summary })
        })
        .collect()
}
