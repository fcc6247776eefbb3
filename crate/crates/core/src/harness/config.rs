//! `key = value` experiment configuration files.

use std::path::PathBuf;

use crate::disamb::{LatencyConfig, Policy};
use crate::error::ConfigError;
use crate::groups::TagMode;
use crate::os::{Baseline, SchedConfig};
use crate::sim::{BitcacheConfig, CoreConfig};
use crate::bitcache::{DEFAULT_BITSTREAM_BYTES, DEFAULT_BLOCKS};

pub const DEFAULT_THRESHOLD: f64 = 1.05;

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Core settings; `core.disamb` is unset, sweeps install `latency`.
    pub core: CoreConfig,
    pub latency: LatencyConfig,
    pub sched: SchedConfig,
    pub group_table: Option<PathBuf>,
    pub threshold: f64,
    pub baseline: Baseline,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            core: CoreConfig::default(),
            latency: LatencyConfig::default(),
            sched: SchedConfig::default(),
            group_table: None,
            threshold: DEFAULT_THRESHOLD,
            baseline: Baseline::Paired,
        }
    }
}

pub const KEYS: &[&str] = &[
    "slots",
    "miss_latency",
    "hit_latency",
    "policy",
    "seed",
    "tag",
    "bitcache",
    "bitcache_blocks",
    "bitcache_penalty",
    "bitstream_bytes",
    "base_i",
    "m_ext",
    "f_pipe",
    "f_fma",
    "mem_access",
    "trap_entry_cycles",
    "cycle_budget",
    "mem_size",
    "halt_addr",
    "console_addr",
    "iter_mark_addr",
    "iter_req_addr",
    "timer_period",
    "switch_overhead_instrs",
    "target_iterations",
    "cycle_cap",
    "instr_limit",
    "group_table",
    "threshold",
    "baseline",
];

fn parse_u64(s: &str) -> Option<u64> {
    let s = s.replace('_', "");
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16).ok(),
        None => s.parse().ok(),
    }
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" | "on" | "yes" | "1" => Some(true),
        "false" | "off" | "no" | "0" => Some(false),
        _ => None,
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let mut c = Config::default();
        let mut seed = 0u64;
        let mut policy = "lru".to_string();
        let mut bitcache = false;
        let mut bc = BitcacheConfig { blocks: DEFAULT_BLOCKS, penalty: 0, bitstream_bytes: DEFAULT_BITSTREAM_BYTES };
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: line_no })?;
            let (key, value) = (key.trim(), value.trim());
            let invalid = || ConfigError::InvalidValue { line: line_no, key: key.to_string(), value: value.to_string() };
            let num = || parse_u64(value).ok_or_else(invalid);
            let addr = || num().and_then(|v| u32::try_from(v).map_err(|_| invalid()));
            match key {
                "slots" => c.latency.num_slots = num()? as usize,
                "miss_latency" => c.latency.miss_latency = num()?,
                "hit_latency" => c.latency.hit_latency = num()?,
                "policy" => policy = value.to_ascii_lowercase(),
                "seed" => seed = num()?,
                "tag" => {
                    c.core.tag_mode = match value {
                        "group" => TagMode::Group,
                        "opcode" => TagMode::Opcode,
                        _ => return Err(invalid()),
                    }
                }
                "bitcache" => bitcache = parse_bool(value).ok_or_else(invalid)?,
                "bitcache_blocks" => bc.blocks = num()? as usize,
                "bitcache_penalty" => bc.penalty = num()?,
                "bitstream_bytes" => bc.bitstream_bytes = num()?,
                "base_i" => c.core.lat.base_i = num()?,
                "m_ext" => c.core.lat.m_ext = num()?,
                "f_pipe" => c.core.lat.f_pipe = num()?,
                "f_fma" => c.core.lat.f_fma = num()?,
                "mem_access" => c.core.lat.mem_access = num()?,
                "trap_entry_cycles" => c.core.trap_entry_cycles = num()?,
                "cycle_budget" => c.core.cycle_budget = num()?,
                "mem_size" => c.core.mem_size = num()? as usize,
                "halt_addr" => c.core.mmio.halt = addr()?,
                "console_addr" => c.core.mmio.console = addr()?,
                "iter_mark_addr" => c.core.mmio.iter_mark = addr()?,
                "iter_req_addr" => c.core.mmio.iter_req = addr()?,
                "timer_period" => c.sched.timer_period = num()?,
                "switch_overhead_instrs" => c.sched.switch_overhead_instrs = num()?,
                "target_iterations" => c.sched.target_iterations = num()? as u32,
                "cycle_cap" => c.sched.cycle_cap = num()?,
                "instr_limit" => c.sched.instr_limit = num()?,
                "group_table" => c.group_table = Some(PathBuf::from(value)),
                "threshold" => c.threshold = value.parse().map_err(|_| invalid())?,
                "baseline" => {
                    c.baseline = match value {
                        "paired" => Baseline::Paired,
                        "solo" => Baseline::Solo,
                        _ => return Err(invalid()),
                    }
                }
                _ => return Err(ConfigError::UnknownKey { line: line_no, key: key.to_string() }),
            }
        }
        c.core.policy = match policy.as_str() {
            "lru" => Policy::Lru,
            "fifo" => Policy::Fifo,
            "random" => Policy::Random { seed },
            other => return Err(ConfigError::Invalid(format!("unknown replacement policy `{other}`"))),
        };
        if bitcache {
            c.core.bitcache = Some(bc);
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.latency.num_slots == 0 {
            return Err(ConfigError::Invalid("slots must be at least 1".into()));
        }
        if !self.core.lat.is_valid() {
            return Err(ConfigError::Invalid("every instruction latency must be at least 1 cycle".into()));
        }
        if self.sched.timer_period < self.sched.switch_overhead_instrs {
            return Err(ConfigError::Invalid("timer_period must be at least switch_overhead_instrs".into()));
        }
        if self.core.bitcache.is_some_and(|b| b.blocks == 0) {
            return Err(ConfigError::Invalid("bitcache_blocks must be at least 1".into()));
        }
        if !(self.threshold.is_finite() && self.threshold > 0.0) {
            return Err(ConfigError::Invalid("threshold must be a positive number".into()));
        }
        Ok(())
    }

    /// Core configuration with the configured disambiguator installed.
    pub fn slotted_core(&self) -> CoreConfig {
        self.core.clone().with_disamb(self.latency)
    }
}
