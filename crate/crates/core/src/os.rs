//! Multi-program model: tasks time-sliced on one core by a periodic timer
//! interrupt, round-robin, sharing the disambiguator.

use rayon::prelude::*;

use crate::disamb::{LatencyConfig, SlotSnapshot};
use crate::error::{HarnessError, SimError};
use crate::groups::GroupTable;
use crate::isa::{Context, DeviceEvent, Devices, Memory, Program};
use crate::sim::{Core, CoreConfig, StepError, TraceRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchedConfig {
    pub timer_period: u64,
    /// Base instructions executed by the switch handler.
    pub switch_overhead_instrs: u64,
    /// The run ends when any task completes this many iterations.
    pub target_iterations: u32,
    pub cycle_cap: u64,
    /// Also stop after this many retired task instructions (0 = no limit).
    pub instr_limit: u64,
}

impl Default for SchedConfig {
    fn default() -> Self {
        SchedConfig { timer_period: 20_000, switch_overhead_instrs: 200, target_iterations: 3, cycle_cap: 1_000_000_000, instr_limit: 0 }
    }
}

/// A program scheduled by the model, with its saved context.
#[derive(Debug, Clone)]
pub struct Task {
    pub name: String,
    pub image: Program,
    pub ctx: Context,
    pub iterations_done: u32,
    pub target_iterations: u32,
    mem: Option<Memory>,
    devices: Devices,
    cycles: u64,
    instret: u64,
    halted: bool,
}

impl Task {
    pub fn new(name: impl Into<String>, image: Program) -> Task {
        let ctx = Context::at(image.entry);
        Task {
            name: name.into(),
            image,
            ctx,
            iterations_done: 0,
            target_iterations: 0,
            mem: None,
            devices: Devices::default(),
            cycles: 0,
            instret: 0,
            halted: false,
        }
    }

    fn boot(&self, mem_size: usize) -> Result<Task, SimError> {
        let mut t = Task::new(self.name.clone(), self.image.clone());
        let mut mem = Memory::new(mem_size);
        t.image.load_into(&mut mem)?;
        t.mem = Some(mem);
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskResult {
    pub name: String,
    /// Cycles attributed to the task, including handler time when it was
    /// the outgoing task.
    pub cycles: u64,
    pub instret: u64,
    pub iterations: u32,
    pub console: Vec<u8>,
    /// Console length at each completed iteration.
    pub marks: Vec<usize>,
    pub halted: bool,
}

#[derive(Debug, Clone)]
pub struct MultiRun {
    pub tasks: Vec<TaskResult>,
    pub total_cycles: u64,
    pub switches: u64,
    pub slots: Option<SlotSnapshot>,
    /// Merged retired-instruction trace (handler bodies excluded).
    pub trace: Vec<TraceRecord>,
}

impl MultiRun {
    pub fn misses(&self) -> u64 {
        self.slots.as_ref().map_or(0, |s| s.totals().misses)
    }
}

fn swap_in(core: &mut Core, t: &mut Task) {
    std::mem::swap(&mut core.state.mem, t.mem.as_mut().unwrap());
    std::mem::swap(&mut core.state.devices, &mut t.devices);
    core.state.restore_context(&t.ctx);
}

fn swap_out(core: &mut Core, t: &mut Task) {
    t.ctx = core.state.save_context();
    std::mem::swap(&mut core.state.mem, t.mem.as_mut().unwrap());
    std::mem::swap(&mut core.state.devices, &mut t.devices);
}

/// Runs `tasks` round-robin on one core until any task completes
/// `sched.target_iterations` iterations (or every task halts).
pub fn run_tasks(
    tasks: &[Task],
    cfg: &CoreConfig,
    groups: &GroupTable,
    sched: &SchedConfig,
    trace: bool,
) -> Result<MultiRun, SimError> {
    assert!(!tasks.is_empty(), "no tasks to schedule");
    let mut core = Core::new(CoreConfig { iterations: 0, ..cfg.clone() }, groups.clone());
    if trace {
        core.enable_trace();
    }
    core.state.mem = Memory::new(0);
    let mut live: Vec<Task> = tasks.iter().map(|t| t.boot(cfg.mem_size)).collect::<Result<_, _>>()?;
    for t in &mut live {
        t.devices.iter_request = 0;
        t.target_iterations = sched.target_iterations;
    }
    let cap = sched.cycle_cap.min(cfg.cycle_budget);
    let period = sched.timer_period.max(1);
    let mut deadline = period;
    let mut cur = 0;
    let mut switches = 0;
    let mut retired = 0;
    swap_in(&mut core, &mut live[cur]);

    loop {
        if core.state.cycle >= cap {
            return Err(SimError::BudgetExceeded { budget: cap });
        }
        let before = core.state.cycle;
        let mut done = false;
        match core.step() {
            Ok(r) => {
                let t = &mut live[cur];
                t.cycles += core.state.cycle - before;
                if r.trap.is_none() {
                    t.instret += 1;
                    retired += 1;
                    done = retired == sched.instr_limit;
                }
                if let Some(DeviceEvent::IterationDone(_)) = r.event {
                    t.iterations_done += 1;
                    done |= t.iterations_done >= t.target_iterations;
                }
            }
            Err(StepError::Halt) => {
                live[cur].halted = true;
                if live.iter().all(|t| t.halted) {
                    break;
                }
                // the halted task idles until the timer moves on
                deadline = core.state.cycle;
            }
            Err(StepError::Unhandled { trap, pc }) => return Err(SimError::UnhandledTrap { trap, pc }),
        }
        if done {
            break;
        }
        if core.state.cycle >= deadline {
            let before = core.state.cycle;
            core.service_timer_interrupt(sched.switch_overhead_instrs);
            live[cur].cycles += core.state.cycle - before;
            switches += 1;
            let next = (1..=live.len()).map(|d| (cur + d) % live.len()).find(|&i| !live[i].halted).unwrap();
            if next != cur {
                swap_out(&mut core, &mut live[cur]);
                cur = next;
                swap_in(&mut core, &mut live[cur]);
            }
            deadline += period;
            if deadline <= core.state.cycle {
                deadline = core.state.cycle + period;
            }
        }
    }
    swap_out(&mut core, &mut live[cur]);

    Ok(MultiRun {
        tasks: live
            .into_iter()
            .map(|t| TaskResult {
                name: t.name,
                cycles: t.cycles,
                instret: t.instret,
                iterations: t.iterations_done,
                console: t.devices.console,
                marks: t.devices.marks,
                halted: t.halted,
            })
            .collect(),
        total_cycles: core.state.cycle,
        switches,
        slots: core.slots.as_ref().map(|s| s.snapshot()),
        trace: core.take_trace(),
    })
}

/// Cycles a task needs to retire its first `n` instructions running alone
/// on `cfg`, with no timer.
pub fn solo_cycles(image: &Program, n: u64, cfg: &CoreConfig, groups: &GroupTable) -> Result<u64, SimError> {
    let mut core = Core::with_program(CoreConfig { iterations: 0, ..cfg.clone() }, groups.clone(), image)?;
    while core.state.instret < n {
        if core.state.cycle >= cfg.cycle_budget {
            return Err(SimError::BudgetExceeded { budget: cfg.cycle_budget });
        }
        match core.step() {
            Ok(_) => {}
            Err(StepError::Halt) => break,
            Err(StepError::Unhandled { trap, pc }) => return Err(SimError::UnhandledTrap { trap, pc }),
        }
    }
    Ok(core.state.cycle)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Baseline {
    /// The same pair, same schedule, on a core without the disambiguator.
    #[default]
    Paired,
    /// Each task alone on a core without the disambiguator.
    Solo,
}

impl Baseline {
    pub fn name(self) -> &'static str {
        match self {
            Baseline::Paired => "paired",
            Baseline::Solo => "solo",
        }
    }
}

/// Reference runs on the hard RV32IMF core for one pair and schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairBaseline {
    /// Cycles per retired instruction of each task in the paired run.
    pub paired_cpi: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairSummary {
    pub task_a: String,
    pub task_b: String,
    pub latency: Option<LatencyConfig>,
    pub timer_period: u64,
    pub cycles: [u64; 2],
    pub instret: [u64; 2],
    pub iterations: [u32; 2],
    /// Per-task speedup over the paired baseline, normalised per retired
    /// instruction.
    pub speedup: [f64; 2],
    /// Per-task speedup over a solo run of the same instruction count.
    pub speedup_solo: [f64; 2],
    pub misses_total: u64,
    pub switches: u64,
    pub slot_stats: Option<SlotSnapshot>,
    pub console: [Vec<u8>; 2],
    pub marks: [Vec<usize>; 2],
}

impl PairSummary {
    pub fn speedups(&self, b: Baseline) -> [f64; 2] {
        match b {
            Baseline::Paired => self.speedup,
            Baseline::Solo => self.speedup_solo,
        }
    }

    pub fn avg_speedup(&self, b: Baseline) -> f64 {
        let s = self.speedups(b);
        (s[0] + s[1]) / 2.0
    }
}

fn hard(cfg: &CoreConfig) -> CoreConfig {
    CoreConfig { disamb: None, bitcache: None, ..cfg.clone() }
}

pub fn pair_baseline(
    a: &Task,
    b: &Task,
    cfg: &CoreConfig,
    groups: &GroupTable,
    sched: &SchedConfig,
) -> Result<PairBaseline, SimError> {
    let r = run_tasks(&[a.clone(), b.clone()], &hard(cfg), groups, sched, false)?;
    let cpi = |t: &TaskResult| t.cycles as f64 / t.instret.max(1) as f64;
    Ok(PairBaseline { paired_cpi: [cpi(&r.tasks[0]), cpi(&r.tasks[1])] })
}

pub fn run_pair_with(
    a: &Task,
    b: &Task,
    cfg: &CoreConfig,
    groups: &GroupTable,
    sched: &SchedConfig,
    base: &PairBaseline,
) -> Result<PairSummary, SimError> {
    let r = run_tasks(&[a.clone(), b.clone()], cfg, groups, sched, false)?;
    let (ta, tb) = (&r.tasks[0], &r.tasks[1]);
    let mut speedup = [0.0; 2];
    let mut speedup_solo = [0.0; 2];
    for (i, (t, task)) in [(ta, a), (tb, b)].into_iter().enumerate() {
        let cpi = t.cycles as f64 / t.instret.max(1) as f64;
        speedup[i] = base.paired_cpi[i] / cpi;
        let solo = solo_cycles(&task.image, t.instret, &hard(cfg), groups)?;
        speedup_solo[i] = solo as f64 / t.cycles as f64;
    }
    Ok(PairSummary {
        task_a: ta.name.clone(),
        task_b: tb.name.clone(),
        latency: cfg.disamb,
        timer_period: sched.timer_period,
        cycles: [ta.cycles, tb.cycles],
        instret: [ta.instret, tb.instret],
        iterations: [ta.iterations, tb.iterations],
        speedup,
        speedup_solo,
        misses_total: r.misses(),
        switches: r.switches,
        slot_stats: r.slots,
        console: [ta.console.clone(), tb.console.clone()],
        marks: [ta.marks.clone(), tb.marks.clone()],
    })
}

pub fn run_pair(
    a: &Task,
    b: &Task,
    cfg: &CoreConfig,
    groups: &GroupTable,
    sched: &SchedConfig,
) -> Result<PairSummary, SimError> {
    let base = pair_baseline(a, b, cfg, groups, sched)?;
    run_pair_with(a, b, cfg, groups, sched, &base)
}

/// One pair of the matrix.
#[derive(Debug, Clone)]
pub struct PairSpec {
    pub id: String,
    pub a: Task,
    pub b: Task,
}

/// One cell's configuration: disambiguator latencies and timer period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridPoint {
    pub latency: LatencyConfig,
    pub timer_period: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRow {
    pub pair_id: String,
    pub summary: PairSummary,
}

/// Runs every (pair, grid point) cell. Rows come back in pair-major,
/// grid-minor order regardless of scheduling.
pub fn run_matrix(
    pairs: &[PairSpec],
    grid: &[GridPoint],
    cfg: &CoreConfig,
    groups: &GroupTable,
    sched: &SchedConfig,
) -> Result<Vec<MatrixRow>, HarnessError> {
    let mut timers: Vec<u64> = grid.iter().map(|g| g.timer_period).collect();
    timers.sort_unstable();
    timers.dedup();
    fn err(p: &PairSpec) -> impl Fn(SimError) -> HarnessError + '_ {
        move |source| HarnessError::Pair { pair: p.id.clone(), source }
    }

    let baselines: Vec<Vec<PairBaseline>> = pairs
        .par_iter()
        .map(|p| {
            timers
                .iter()
                .map(|&t| pair_baseline(&p.a, &p.b, cfg, groups, &SchedConfig { timer_period: t, ..*sched }))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err(p))
        })
        .collect::<Result<_, _>>()?;

    let cells: Vec<(usize, GridPoint)> = (0..pairs.len()).flat_map(|i| grid.iter().map(move |g| (i, *g))).collect();
    cells
        .par_iter()
        .map(|&(i, g)| {
            let p = &pairs[i];
            let s = SchedConfig { timer_period: g.timer_period, ..*sched };
            let base = &baselines[i][timers.binary_search(&g.timer_period).unwrap()];
            let c = cfg.clone().with_disamb(g.latency);
            let summary = run_pair_with(&p.a, &p.b, &c, groups, &s, base).map_err(err(p))?;
            Ok(MatrixRow { pair_id: p.id.clone(), summary })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isa::Kind;
    use crate::synth::{group_representative, loop_program};

    fn synth(name: &str, groups: &[u8]) -> Task {
        let body: Vec<Kind> = groups.iter().map(|&g| group_representative(g)).collect();
        Task::new(name, loop_program(&body, 50))
    }

    fn lat(slots: usize) -> LatencyConfig {
        LatencyConfig { num_slots: slots, miss_latency: 50, hit_latency: 0 }
    }

    #[test]
    fn disjoint_pair_with_enough_slots_only_compulsory_misses() {
        let (a, b) = (synth("a", &[0, 1, 2, 3]), synth("b", &[4, 5, 6, 7]));
        let cfg = CoreConfig::default().with_disamb(lat(8));
        let sched = SchedConfig { timer_period: 1_000, target_iterations: 20, ..SchedConfig::default() };
        let r = run_pair(&a, &b, &cfg, &GroupTable::default(), &sched).unwrap();
        assert!(r.switches > 10);
        assert_eq!(r.misses_total, 8);
    }

    #[test]
    fn fewer_slots_miss_more_and_longer_timer_helps() {
        let (a, b) = (synth("a", &[0, 1, 2, 3]), synth("b", &[4, 5, 6, 7]));
        let g = GroupTable::default();
        let miss = |slots, timer| {
            let sched = SchedConfig { timer_period: timer, target_iterations: 40, ..SchedConfig::default() };
            run_pair(&a, &b, &CoreConfig::default().with_disamb(lat(slots)), &g, &sched).unwrap().misses_total
        };
        assert!(miss(4, 1_000) > miss(8, 1_000));
        assert!(miss(4, 20_000) < miss(4, 1_000));
    }

    #[test]
    fn handler_overhead_fraction_for_pure_base_loops() {
        let t = Task::new("i", loop_program(&[Kind::Add; 8], 100));
        let sched = SchedConfig { timer_period: 1_000, switch_overhead_instrs: 200, target_iterations: 30, ..SchedConfig::default() };
        let cfg = CoreConfig::default();
        let r = run_pair(&t, &t, &cfg, &GroupTable::default(), &sched).unwrap();
        for s in r.speedup_solo {
            // every 1000-cycle period loses trap entry plus a 200-cycle body
            let expected = (1000.0 - 203.0) / 1000.0;
            assert!((s - expected).abs() < 0.01, "{s} vs {expected}");
        }
    }

    #[test]
    fn zero_overhead_matches_solo_cycles() {
        let (a, b) = (synth("a", &[0, 3]), synth("b", &[4, 9]));
        let cfg = CoreConfig { trap_entry_cycles: 0, ..CoreConfig::default() }.with_disamb(LatencyConfig {
            num_slots: 2,
            miss_latency: 0,
            hit_latency: 0,
        });
        let sched = SchedConfig { timer_period: 777, switch_overhead_instrs: 0, target_iterations: 10, ..SchedConfig::default() };
        let r = run_pair(&a, &b, &cfg, &GroupTable::default(), &sched).unwrap();
        assert_eq!(r.speedup_solo, [1.0, 1.0]);
        assert_eq!(r.speedup, [1.0, 1.0]);
    }
}
