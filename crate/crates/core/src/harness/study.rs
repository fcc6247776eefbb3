//! Working-set studies over bundled kernels.

use rayon::prelude::*;

use super::bench::{BenchSpec, Target};
use crate::error::{HarnessError, SimError};
use crate::groups::GroupTable;
use crate::os::{SchedConfig, Task};
use crate::reuse::{analyze, oversubscribe_analyze, OpcodeMode, OversubscriptionPoint, ReuseStats, Trace, WindowConfig};
use crate::sim::{Core, CoreConfig};

/// Retired-instruction trace of one run of the RV32IMF image.
pub fn bench_trace(bench: &BenchSpec, cfg: &CoreConfig, groups: &GroupTable) -> Result<Trace, HarnessError> {
    let wrap = |source: SimError| HarnessError::Run { bench: bench.name.clone(), target: Target::Rv32imf.to_string(), source };
    let mut core = Core::with_program(cfg.clone(), groups.clone(), bench.image(Target::Rv32imf)).map_err(wrap)?;
    core.enable_trace();
    core.run().map_err(wrap)?;
    Ok(Trace::from_records(&core.take_trace()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowStudy {
    pub bench: String,
    pub mode: OpcodeMode,
    pub stats: ReuseStats,
}

/// Window sweep over each kernel's trace in both opcode modes.
pub fn window_study(
    benches: &[BenchSpec],
    windows: &WindowConfig,
    cfg: &CoreConfig,
    groups: &GroupTable,
) -> Result<Vec<WindowStudy>, HarnessError> {
    let per: Vec<Vec<WindowStudy>> = benches
        .par_iter()
        .map(|b| {
            let trace = bench_trace(b, cfg, groups)?;
            Ok([OpcodeMode::PerKind, OpcodeMode::PerGroup]
                .into_iter()
                .map(|mode| WindowStudy {
                    bench: b.name.clone(),
                    mode,
                    stats: analyze(&trace.with_mode(mode, groups).events, windows),
                })
                .collect())
        })
        .collect::<Result<_, HarnessError>>()?;
    Ok(per.into_iter().flatten().collect())
}

/// Oversubscription of one core with 1..=k_max kernels drawn in order from
/// `benches`, stopping each run after `windows` full windows.
#[allow(clippy::too_many_arguments)]
pub fn oversubscription_study(
    benches: &[BenchSpec],
    k_max: usize,
    window: usize,
    windows: u64,
    cfg: &CoreConfig,
    groups: &GroupTable,
    sched: &SchedConfig,
    mode: OpcodeMode,
) -> Result<Vec<OversubscriptionPoint>, HarnessError> {
    let tasks: Vec<Task> = benches.iter().map(|b| Task::new(b.name.clone(), b.image(Target::Rv32imf).clone())).collect();
    let sched = SchedConfig { target_iterations: u32::MAX, instr_limit: window as u64 * windows, ..*sched };
    let ks: Vec<usize> = (1..=k_max).collect();
    let points: Vec<Vec<OversubscriptionPoint>> = ks
        .par_iter()
        .map(|&k| oversubscribe_analyze(&tasks, &[k], cfg, groups, &sched, window, mode))
        .collect::<Result<_, SimError>>()
        .map_err(|source| HarnessError::Pair { pair: format!("{k_max} tasks"), source })?;
    Ok(points.into_iter().flatten().collect())
}
