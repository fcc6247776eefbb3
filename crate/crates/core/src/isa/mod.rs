//! The RV32IMF core: instruction encoding, architectural state, execution.

mod exec;
mod image;
mod instr;
mod state;

pub use exec::{execute, is_fp_plumbing, muldiv, ExecResult, LatencyTable, CANONICAL_NAN};
pub use image::{Program, Segment};
pub use instr::{decode, encode, Ext, Instr, Kind};
pub use state::{
    Context, Csrs, DeviceEvent, Devices, MachineState, Memory, MmioMap, Trap, CSR_MCAUSE, CSR_MEPC, CSR_MIE,
    CSR_MSTATUS, CSR_MTVEC,
};
