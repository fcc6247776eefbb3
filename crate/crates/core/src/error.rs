use std::path::PathBuf;

use thiserror::Error;

use crate::isa::Trap;

/// An instruction word outside the implemented RV32IMF subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("illegal instruction word {word:#010x}")]
pub struct DecodeError {
    pub word: u32,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("malformed ELF image: {0}")]
    Elf(#[from] goblin::error::Error),
    #[error("ELF image is not a 32-bit little-endian RISC-V executable")]
    NotRiscv32,
    #[error("segment at {addr:#010x} (+{len} bytes) does not fit in {mem_size} bytes of memory")]
    OutOfMemory { addr: u32, len: usize, mem_size: usize },
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error("cycle budget of {budget} exhausted before halt")]
    BudgetExceeded { budget: u64 },
    #[error("unhandled trap {trap} at pc {pc:#010x} (mtvec not set)")]
    UnhandledTrap { trap: Trap, pc: u32 },
    #[error(transparent)]
    Load(#[from] LoadError),
}

/// Rejected group-table override.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("line {line}: expected `G<id>: mnemonic[,mnemonic...]`")]
    Syntax { line: usize },
    #[error("line {line}: unknown mnemonic `{name}`")]
    UnknownMnemonic { line: usize, name: String },
    #[error("line {line}: `{name}` is not a slottable M/F instruction")]
    NotSlottable { line: usize, name: String },
    #[error("`{name}` is assigned to more than one group")]
    Duplicate { name: String },
    #[error("group G{id} is defined twice")]
    DuplicateGroup { id: u32 },
    #[error("slottable instruction `{name}` is not assigned to any group")]
    Unassigned { name: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: invalid value `{value}` for `{key}`")]
    InvalidValue { line: usize, key: String, value: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("line {line}: malformed trace record `{record}`")]
    Parse { line: usize, record: String },
    #[error("binary trace: {0}")]
    Binary(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("no window completed")]
    EmptyStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FabricError {
    #[error("unknown LUT type `{0}` (expected 4, 5 or 6)")]
    UnknownLutType(String),
    #[error("bitstream shape {rows}x{cols} does not match chain {depth}x{width}")]
    Shape { rows: usize, cols: usize, depth: usize, width: usize },
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("benchmark `{bench}`: output digest of {target} differs from RV32I")]
    OutputMismatch { bench: String, target: String },
    #[error("benchmark `{bench}` ({target}): {source}")]
    Run { bench: String, target: String, source: SimError },
    #[error("pair {pair}: {source}")]
    Pair { pair: String, source: SimError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("unknown benchmark `{0}`")]
    UnknownBench(String),
}
