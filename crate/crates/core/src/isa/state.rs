//! Architectural state: registers, the CSR subset, memory and MMIO.

use std::fmt;

/// Synchronous exception or interrupt, as recorded in `mcause`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trap {
    pub cause: u32,
    pub tval: u32,
}

impl Trap {
    pub const MISALIGNED_FETCH: u32 = 0;
    pub const FETCH_FAULT: u32 = 1;
    pub const ILLEGAL_INSTRUCTION: u32 = 2;
    pub const BREAKPOINT: u32 = 3;
    pub const MISALIGNED_LOAD: u32 = 4;
    pub const LOAD_FAULT: u32 = 5;
    pub const MISALIGNED_STORE: u32 = 6;
    pub const STORE_FAULT: u32 = 7;
    pub const ECALL_M: u32 = 11;
    pub const MACHINE_TIMER_INTERRUPT: u32 = 0x8000_0007;

    pub fn new(cause: u32, tval: u32) -> Trap {
        Trap { cause, tval }
    }

    pub fn is_interrupt(&self) -> bool {
        self.cause & 0x8000_0000 != 0
    }
}

impl fmt::Display for Trap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.cause {
            Trap::MISALIGNED_FETCH => "misaligned fetch",
            Trap::FETCH_FAULT => "fetch access fault",
            Trap::ILLEGAL_INSTRUCTION => "illegal instruction",
            Trap::BREAKPOINT => "breakpoint",
            Trap::MISALIGNED_LOAD => "misaligned load",
            Trap::LOAD_FAULT => "load access fault",
            Trap::MISALIGNED_STORE => "misaligned store",
            Trap::STORE_FAULT => "store access fault",
            Trap::ECALL_M => "environment call",
            Trap::MACHINE_TIMER_INTERRUPT => "machine timer interrupt",
            _ => "unknown cause",
        };
        write!(f, "{name} (mcause={:#x}, tval={:#010x})", self.cause, self.tval)
    }
}

pub const CSR_MSTATUS: u32 = 0x300;
pub const CSR_MIE: u32 = 0x304;
pub const CSR_MTVEC: u32 = 0x305;
pub const CSR_MEPC: u32 = 0x341;
pub const CSR_MCAUSE: u32 = 0x342;

const MSTATUS_MIE: u32 = 1 << 3;
const MSTATUS_MPIE: u32 = 1 << 7;

/// The machine-mode CSR subset.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Csrs {
    pub mstatus: u32,
    pub mie: u32,
    pub mcause: u32,
    pub mepc: u32,
    pub mtvec: u32,
}

impl Csrs {
    pub fn read(&self, addr: u32) -> Option<u32> {
        Some(match addr {
            CSR_MSTATUS => self.mstatus,
            CSR_MIE => self.mie,
            CSR_MTVEC => self.mtvec,
            CSR_MEPC => self.mepc,
            CSR_MCAUSE => self.mcause,
            _ => return None,
        })
    }

    pub fn write(&mut self, addr: u32, value: u32) -> Option<()> {
        match addr {
            CSR_MSTATUS => self.mstatus = value & (MSTATUS_MIE | MSTATUS_MPIE),
            CSR_MIE => self.mie = value,
            CSR_MTVEC => self.mtvec = value & !3,
            CSR_MEPC => self.mepc = value & !3,
            CSR_MCAUSE => self.mcause = value,
            _ => return None,
        }
        Some(())
    }
}

/// Addresses of the memory-mapped device registers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MmioMap {
    /// Word register; storing [`MmioMap::HALT_MAGIC`] ends the run.
    pub halt: u32,
    /// Byte register appending to the console output.
    pub console: u32,
    /// Word register a task writes after each completed iteration.
    pub iter_mark: u32,
    /// Read-only word: iterations requested from the program (0 = forever).
    pub iter_req: u32,
}

impl MmioMap {
    pub const HALT_MAGIC: u32 = 0x5555;
}

impl Default for MmioMap {
    fn default() -> Self {
        MmioMap { halt: 0x4000_0000, console: 0x4000_0004, iter_mark: 0x4000_0008, iter_req: 0x4000_000c }
    }
}

/// Device-side state of the MMIO registers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Devices {
    pub console: Vec<u8>,
    pub iterations: u32,
    pub iter_request: u32,
    /// Console length at each iteration mark.
    pub marks: Vec<usize>,
}

/// Flat little-endian memory starting at address 0.
#[derive(Clone, PartialEq, Eq)]
pub struct Memory {
    bytes: Vec<u8>,
}

impl fmt::Debug for Memory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Memory").field("size", &self.bytes.len()).finish()
    }
}

impl Memory {
    pub fn new(size: usize) -> Memory {
        Memory { bytes: vec![0; size] }
    }

    pub fn size(&self) -> usize {
        self.bytes.len()
    }

    pub fn slice(&self, addr: u32, len: usize) -> Option<&[u8]> {
        let start = addr as usize;
        self.bytes.get(start..start.checked_add(len)?)
    }

    pub fn slice_mut(&mut self, addr: u32, len: usize) -> Option<&mut [u8]> {
        let start = addr as usize;
        self.bytes.get_mut(start..start.checked_add(len)?)
    }

    pub fn write_bytes(&mut self, addr: u32, data: &[u8]) -> Option<()> {
        self.slice_mut(addr, data.len())?.copy_from_slice(data);
        Some(())
    }

    pub fn read_u32(&self, addr: u32) -> Option<u32> {
        self.slice(addr, 4).map(|b| u32::from_le_bytes(b.try_into().unwrap()))
    }

    pub fn write_u32(&mut self, addr: u32, value: u32) -> Option<()> {
        self.write_bytes(addr, &value.to_le_bytes())
    }
}

/// Registers a context switch must preserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Context {
    pub pc: u32,
    pub x: [u32; 32],
    pub f: [u32; 32],
    pub csr: Csrs,
}

impl Context {
    pub fn at(pc: u32) -> Context {
        Context { pc, x: [0; 32], f: [0; 32], csr: Csrs::default() }
    }
}

/// Full architectural state of the simulated core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineState {
    pub pc: u32,
    pub x: [u32; 32],
    /// Raw single-precision bit patterns.
    pub f: [u32; 32],
    pub csr: Csrs,
    pub mem: Memory,
    pub mmio: MmioMap,
    pub devices: Devices,
    pub cycle: u64,
    pub instret: u64,
}

/// Outcome of a memory-mapped store.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeviceEvent {
    Halt,
    IterationDone(u32),
}

impl MachineState {
    pub fn new(mem_size: usize) -> MachineState {
        MachineState {
            pc: 0,
            x: [0; 32],
            f: [0; 32],
            csr: Csrs::default(),
            mem: Memory::new(mem_size),
            mmio: MmioMap::default(),
            devices: Devices { iter_request: 1, ..Devices::default() },
            cycle: 0,
            instret: 0,
        }
    }

    pub fn set_x(&mut self, reg: u8, value: u32) {
        if reg != 0 {
            self.x[reg as usize] = value;
        }
    }

    pub fn save_context(&self) -> Context {
        Context { pc: self.pc, x: self.x, f: self.f, csr: self.csr }
    }

    pub fn restore_context(&mut self, ctx: &Context) {
        self.pc = ctx.pc;
        self.x = ctx.x;
        self.x[0] = 0;
        self.f = ctx.f;
        self.csr = ctx.csr;
    }

    /// Takes a trap: records `mepc`/`mcause`, stacks the interrupt-enable
    /// bit and jumps to `mtvec`.
    pub fn enter_trap(&mut self, trap: Trap) {
        self.csr.mepc = self.pc;
        self.csr.mcause = trap.cause;
        let mie = self.csr.mstatus & MSTATUS_MIE;
        self.csr.mstatus = (self.csr.mstatus & !(MSTATUS_MIE | MSTATUS_MPIE)) | if mie != 0 { MSTATUS_MPIE } else { 0 };
        self.pc = self.csr.mtvec;
    }

    /// Return from a machine-mode trap.
    pub fn mret(&mut self) {
        let mpie = self.csr.mstatus & MSTATUS_MPIE;
        self.csr.mstatus = (self.csr.mstatus & !MSTATUS_MIE) | if mpie != 0 { MSTATUS_MIE } else { 0 } | MSTATUS_MPIE;
        self.pc = self.csr.mepc;
    }

    fn is_mmio(&self, addr: u32) -> bool {
        let m = &self.mmio;
        addr == m.halt || addr == m.console || addr == m.iter_mark || addr == m.iter_req
    }

    /// Loads `size` bytes (1, 2 or 4), zero-extended.
    pub fn load(&self, addr: u32, size: u32) -> Result<u32, Trap> {
        if !addr.is_multiple_of(size) {
            return Err(Trap::new(Trap::MISALIGNED_LOAD, addr));
        }
        if self.is_mmio(addr) {
            return Ok(if addr == self.mmio.iter_req { self.devices.iter_request } else { 0 });
        }
        let bytes = self.mem.slice(addr, size as usize).ok_or(Trap::new(Trap::LOAD_FAULT, addr))?;
        Ok(bytes.iter().rev().fold(0u32, |acc, &b| (acc << 8) | b as u32))
    }

    pub fn store(&mut self, addr: u32, size: u32, value: u32) -> Result<Option<DeviceEvent>, Trap> {
        if !addr.is_multiple_of(size) {
            return Err(Trap::new(Trap::MISALIGNED_STORE, addr));
        }
        if self.is_mmio(addr) {
            let m = self.mmio;
            if addr == m.halt && value == MmioMap::HALT_MAGIC {
                return Ok(Some(DeviceEvent::Halt));
            }
            if addr == m.console {
                self.devices.console.push(value as u8);
            }
            if addr == m.iter_mark {
                self.devices.iterations += 1;
                self.devices.marks.push(self.devices.console.len());
                return Ok(Some(DeviceEvent::IterationDone(value)));
            }
            return Ok(None);
        }
        let bytes = self.mem.slice_mut(addr, size as usize).ok_or(Trap::new(Trap::STORE_FAULT, addr))?;
        for (i, b) in bytes.iter_mut().enumerate() {
            *b = (value >> (8 * i)) as u8;
        }
        Ok(None)
    }

    pub fn fetch(&self) -> Result<u32, Trap> {
        if !self.pc.is_multiple_of(4) {
            return Err(Trap::new(Trap::MISALIGNED_FETCH, self.pc));
        }
        self.mem.read_u32(self.pc).ok_or(Trap::new(Trap::FETCH_FAULT, self.pc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x0_writes_ignored() {
        let mut s = MachineState::new(64);
        s.set_x(0, 7);
        s.set_x(1, 7);
        assert_eq!(s.x[0], 0);
        assert_eq!(s.x[1], 7);
    }

    #[test]
    fn little_endian_access() {
        let mut s = MachineState::new(64);
        s.store(8, 4, 0x1122_3344).unwrap();
        assert_eq!(s.load(8, 1).unwrap(), 0x44);
        assert_eq!(s.load(10, 2).unwrap(), 0x1122);
        assert_eq!(s.load(9, 4), Err(Trap::new(Trap::MISALIGNED_LOAD, 9)));
        assert_eq!(s.load(64, 4), Err(Trap::new(Trap::LOAD_FAULT, 64)));
    }

    #[test]
    fn mmio_registers() {
        let mut s = MachineState::new(64);
        let m = s.mmio;
        assert_eq!(s.store(m.console, 1, b'A' as u32).unwrap(), None);
        assert_eq!(s.store(m.halt, 4, 1).unwrap(), None);
        assert_eq!(s.store(m.halt, 4, MmioMap::HALT_MAGIC).unwrap(), Some(DeviceEvent::Halt));
        assert_eq!(s.store(m.iter_mark, 4, 1).unwrap(), Some(DeviceEvent::IterationDone(1)));
        assert_eq!(s.load(m.iter_req, 4).unwrap(), 1);
        assert_eq!(s.devices.console, b"A");
    }

    #[test]
    fn context_roundtrip_includes_fp_registers() {
        let mut s = MachineState::new(64);
        for r in 0..32 {
            s.set_x(r, 0x1000 + r as u32);
            s.f[r as usize] = 0x7fc0_0000 | r as u32;
        }
        s.pc = 0x40;
        s.csr.mepc = 0x20;
        let ctx = s.save_context();
        let mut other = MachineState::new(64);
        other.restore_context(&ctx);
        assert_eq!(other.save_context(), ctx);
    }

    #[test]
    fn trap_entry_and_return() {
        let mut s = MachineState::new(64);
        s.csr.mtvec = 0x100;
        s.csr.mstatus = MSTATUS_MIE;
        s.pc = 0x24;
        s.enter_trap(Trap::new(Trap::ECALL_M, 0));
        assert_eq!((s.pc, s.csr.mepc, s.csr.mcause), (0x100, 0x24, 11));
        assert_eq!(s.csr.mstatus & MSTATUS_MIE, 0);
        s.mret();
        assert_eq!(s.pc, 0x24);
        assert_ne!(s.csr.mstatus & MSTATUS_MIE, 0);
    }
}
