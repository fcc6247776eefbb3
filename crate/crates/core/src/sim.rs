//! Pipeline driver: fetch, decode, disambiguator access, execute.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::bitcache::{BitcacheStats, BitstreamCache};
use crate::disamb::{LatencyConfig, Outcome, Policy, SlotTable, TagStats};
use crate::error::SimError;
use crate::groups::{GroupTable, Tag, TagMode};
use crate::isa::{decode, execute, DeviceEvent, Instr, Kind, LatencyTable, MachineState, MmioMap, Program, Trap};

pub const DEFAULT_MEM_SIZE: usize = 1 << 20;
pub const DEFAULT_CYCLE_BUDGET: u64 = 2_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitcacheConfig {
    pub blocks: usize,
    pub penalty: u64,
    pub bitstream_bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreConfig {
    pub lat: LatencyTable,
    /// `None` removes the disambiguator: slotted kinds run at their fixed
    /// latency, as on a hard RV32IMF core.
    pub disamb: Option<LatencyConfig>,
    pub policy: Policy,
    pub tag_mode: TagMode,
    pub bitcache: Option<BitcacheConfig>,
    pub trap_entry_cycles: u64,
    pub cycle_budget: u64,
    pub mem_size: usize,
    pub mmio: MmioMap,
    /// Value returned by the iteration-request register.
    pub iterations: u32,
}

impl Default for CoreConfig {
    fn default() -> Self {
        CoreConfig {
            lat: LatencyTable::default(),
            disamb: None,
            policy: Policy::Lru,
            tag_mode: TagMode::Group,
            bitcache: None,
            trap_entry_cycles: 3,
            cycle_budget: DEFAULT_CYCLE_BUDGET,
            mem_size: DEFAULT_MEM_SIZE,
            mmio: MmioMap::default(),
            iterations: 1,
        }
    }
}

impl CoreConfig {
    pub fn with_disamb(mut self, lc: LatencyConfig) -> CoreConfig {
        self.disamb = Some(lc);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotOutcome {
    NotSlotted,
    Hit,
    Miss { evicted: Option<Tag> },
}

/// One retired instruction in trace order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRecord {
    pub pc: u32,
    pub kind: Kind,
    pub mem_addr: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepReport {
    pub pc: u32,
    /// `None` when fetch or decode trapped.
    pub instr: Option<Instr>,
    pub slot_outcome: SlotOutcome,
    pub exec_cycles: u64,
    pub slot_cycles: u64,
    pub trap_cycles: u64,
    pub total_cycles: u64,
    pub mem_addr: Option<u32>,
    /// Trap taken instead of retiring the instruction.
    pub trap: Option<Trap>,
    pub event: Option<DeviceEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepError {
    Halt,
    /// A trap with no handler installed (`mtvec` = 0).
    Unhandled { trap: Trap, pc: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunSummary {
    pub cycles: u64,
    pub instret: u64,
    pub exec_cycles: u64,
    pub slot_cycles: u64,
    pub trap_cycles: u64,
    pub per_tag: BTreeMap<Tag, TagStats>,
    pub bitcache: Option<BitcacheStats>,
    pub console: Vec<u8>,
    pub iterations: u32,
}

impl RunSummary {
    pub fn misses(&self) -> u64 {
        self.per_tag.values().map(|s| s.misses).sum()
    }

    pub fn hits(&self) -> u64 {
        self.per_tag.values().map(|s| s.hits).sum()
    }

    pub fn digest(&self) -> String {
        output_digest(&self.console)
    }
}

pub fn output_digest(console: &[u8]) -> String {
    hex::encode(Sha256::digest(console))
}

/// A core with its disambiguator and loaded program.
#[derive(Debug, Clone)]
pub struct Core {
    pub state: MachineState,
    pub slots: Option<SlotTable>,
    groups: GroupTable,
    cfg: CoreConfig,
    exec_cycles: u64,
    slot_cycles: u64,
    trap_cycles: u64,
    trace: Option<Vec<TraceRecord>>,
}

impl Core {
    pub fn new(cfg: CoreConfig, groups: GroupTable) -> Core {
        let mut state = MachineState::new(cfg.mem_size);
        state.mmio = cfg.mmio;
        state.devices.iter_request = cfg.iterations;
        let slots = cfg.disamb.map(|lc| {
            let t = SlotTable::with_policy(lc, cfg.policy);
            match cfg.bitcache {
                Some(b) => t.with_bitcache(BitstreamCache::with_bitstream_bytes(b.blocks, b.penalty, b.bitstream_bytes)),
                None => t,
            }
        });
        Core { state, slots, groups, cfg, exec_cycles: 0, slot_cycles: 0, trap_cycles: 0, trace: None }
    }

    pub fn with_program(cfg: CoreConfig, groups: GroupTable, prog: &Program) -> Result<Core, SimError> {
        let mut core = Core::new(cfg, groups);
        core.load(prog)?;
        Ok(core)
    }

    pub fn load(&mut self, prog: &Program) -> Result<(), SimError> {
        prog.load_into(&mut self.state.mem)?;
        self.state.pc = prog.entry;
        Ok(())
    }

    pub fn config(&self) -> &CoreConfig {
        &self.cfg
    }

    pub fn groups(&self) -> &GroupTable {
        &self.groups
    }

    pub fn enable_trace(&mut self) {
        self.trace.get_or_insert_with(Vec::new);
    }

    pub fn take_trace(&mut self) -> Vec<TraceRecord> {
        self.trace.as_mut().map(std::mem::take).unwrap_or_default()
    }

    /// Adds cycles not tied to a retired instruction (e.g. a synthetic
    /// handler body).
    pub fn charge(&mut self, cycles: u64) {
        self.state.cycle += cycles;
        self.exec_cycles += cycles;
    }

    /// Enters a trap at the current pc, charging the trap-entry overhead.
    pub fn take_trap(&mut self, trap: Trap) -> u64 {
        self.state.enter_trap(trap);
        self.state.cycle += self.cfg.trap_entry_cycles;
        self.trap_cycles += self.cfg.trap_entry_cycles;
        self.cfg.trap_entry_cycles
    }

    /// Takes a timer interrupt at the current pc and runs a synthetic
    /// handler of `handler_instrs` base instructions that returns to the
    /// interrupted pc. `mepc`/`mcause` keep the recorded values. Returns the
    /// cycles charged.
    pub fn service_timer_interrupt(&mut self, handler_instrs: u64) -> u64 {
        let entry = self.take_trap(Trap::new(Trap::MACHINE_TIMER_INTERRUPT, 0));
        let body = handler_instrs * self.cfg.lat.base_i;
        self.charge(body);
        self.state.mret();
        entry + body
    }

    pub fn step(&mut self) -> Result<StepReport, StepError> {
        let pc = self.state.pc;
        let mut report = StepReport {
            pc,
            instr: None,
            slot_outcome: SlotOutcome::NotSlotted,
            exec_cycles: 0,
            slot_cycles: 0,
            trap_cycles: 0,
            total_cycles: 0,
            mem_addr: None,
            trap: None,
            event: None,
        };
        let fetched = self.state.fetch().and_then(|w| decode(w).map_err(|e| Trap::new(Trap::ILLEGAL_INSTRUCTION, e.word)));
        let instr = match fetched {
            Ok(i) => i,
            Err(trap) => return self.trap_report(report, trap),
        };
        report.instr = Some(instr);

        let slot = match (&mut self.slots, self.groups.tag(instr.kind, self.cfg.tag_mode)) {
            (Some(table), Some(tag)) => Some(table.access(tag, self.state.cycle)),
            _ => None,
        };

        match execute(&mut self.state, &instr, &self.cfg.lat) {
            Ok(r) if r.event == Some(DeviceEvent::Halt) => Err(StepError::Halt),
            Ok(r) => {
                if let Some(o) = slot {
                    report.slot_cycles = o.latency();
                    report.slot_outcome = match o {
                        Outcome::Hit { .. } => SlotOutcome::Hit,
                        Outcome::Miss { evicted, .. } => SlotOutcome::Miss { evicted },
                    };
                }
                report.exec_cycles = r.cycles;
                report.total_cycles = r.cycles + report.slot_cycles;
                report.mem_addr = r.mem_addr;
                report.event = r.event;
                self.exec_cycles += r.cycles;
                self.slot_cycles += report.slot_cycles;
                self.state.cycle += report.total_cycles;
                self.state.instret += 1;
                if let Some(t) = &mut self.trace {
                    t.push(TraceRecord { pc, kind: instr.kind, mem_addr: r.mem_addr });
                }
                Ok(report)
            }
            Err(trap) => {
                debug_assert!(slot.is_none(), "slotted kinds never trap");
                self.trap_report(report, trap)
            }
        }
    }

    fn trap_report(&mut self, mut report: StepReport, trap: Trap) -> Result<StepReport, StepError> {
        if self.state.csr.mtvec == 0 {
            return Err(StepError::Unhandled { trap, pc: report.pc });
        }
        report.trap_cycles = self.take_trap(trap);
        report.total_cycles = report.trap_cycles;
        report.trap = Some(trap);
        Ok(report)
    }

    /// Steps until the program halts.
    pub fn run(&mut self) -> Result<RunSummary, SimError> {
        loop {
            if self.state.cycle >= self.cfg.cycle_budget {
                return Err(SimError::BudgetExceeded { budget: self.cfg.cycle_budget });
            }
            match self.step() {
                Ok(_) => {}
                Err(StepError::Halt) => return Ok(self.summary()),
                Err(StepError::Unhandled { trap, pc }) => return Err(SimError::UnhandledTrap { trap, pc }),
            }
        }
    }

    pub fn summary(&self) -> RunSummary {
        let snap = self.slots.as_ref().map(SlotTable::snapshot);
        RunSummary {
            cycles: self.state.cycle,
            instret: self.state.instret,
            exec_cycles: self.exec_cycles,
            slot_cycles: self.slot_cycles,
            trap_cycles: self.trap_cycles,
            per_tag: snap.as_ref().map(|s| s.stats.clone()).unwrap_or_default(),
            bitcache: snap.and_then(|s| s.bitcache),
            console: self.state.devices.console.clone(),
            iterations: self.state.devices.iterations,
        }
    }
}

/// Loads and runs `prog` to completion.
pub fn run_program(prog: &Program, cfg: &CoreConfig, groups: &GroupTable) -> Result<RunSummary, SimError> {
    Core::with_program(cfg.clone(), groups.clone(), prog)?.run()
}
