//! Functional execution and fixed-latency timing of one instruction.

use super::instr::{Ext, Instr, Kind};
use super::state::{DeviceEvent, MachineState, Trap};

pub const CANONICAL_NAN: u32 = 0x7fc0_0000;

/// Per-class execution latencies, in cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatencyTable {
    pub base_i: u64,
    pub m_ext: u64,
    pub f_pipe: u64,
    pub f_fma: u64,
    /// Added on top of the class latency for every load and store.
    pub mem_access: u64,
}

impl Default for LatencyTable {
    fn default() -> Self {
        LatencyTable { base_i: 1, m_ext: 4, f_pipe: 6, f_fma: 12, mem_access: 1 }
    }
}

impl LatencyTable {
    pub fn is_valid(&self) -> bool {
        [self.base_i, self.m_ext, self.f_pipe, self.f_fma, self.mem_access].iter().all(|&c| c >= 1)
    }

    /// Cycles charged for `kind`, excluding any disambiguator cost.
    pub fn cycles(&self, kind: Kind) -> u64 {
        let class = match kind.ext() {
            Ext::M => self.m_ext,
            Ext::F if kind.is_fma() => self.f_fma,
            Ext::F if is_fp_plumbing(kind) => self.base_i,
            Ext::F => self.f_pipe,
            _ => self.base_i,
        };
        if kind.is_load() || kind.is_store() {
            class + self.mem_access
        } else {
            class
        }
    }
}

/// F-extension kinds that only move bits and run at base latency.
pub fn is_fp_plumbing(kind: Kind) -> bool {
    matches!(kind, Kind::Flw | Kind::Fsw | Kind::FmvXW | Kind::FmvWX | Kind::FclassS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExecResult {
    pub cycles: u64,
    /// Effective address of a load or store.
    pub mem_addr: Option<u32>,
    pub event: Option<DeviceEvent>,
}

/// Executes `instr` at `state.pc`, advancing the pc. Counters are left to
/// the caller. A halting store leaves the state untouched.
pub fn execute(s: &mut MachineState, i: &Instr, lat: &LatencyTable) -> Result<ExecResult, Trap> {
    use Kind::*;
    let x1 = s.x[i.rs1 as usize];
    let x2 = s.x[i.rs2 as usize];
    let imm = i.imm as u32;
    let pc = s.pc;
    let mut next = pc.wrapping_add(4);
    let mut mem_addr = None;
    let mut event = None;
    let ea = x1.wrapping_add(imm);

    match i.kind {
        Lui => s.set_x(i.rd, imm),
        Auipc => s.set_x(i.rd, pc.wrapping_add(imm)),
        Jal => {
            s.set_x(i.rd, next);
            next = pc.wrapping_add(imm);
        }
        Jalr => {
            s.set_x(i.rd, next);
            next = ea & !1;
        }
        Beq | Bne | Blt | Bge | Bltu | Bgeu => {
            let taken = match i.kind {
                Beq => x1 == x2,
                Bne => x1 != x2,
                Blt => (x1 as i32) < (x2 as i32),
                Bge => (x1 as i32) >= (x2 as i32),
                Bltu => x1 < x2,
                _ => x1 >= x2,
            };
            if taken {
                next = pc.wrapping_add(imm);
            }
        }
        Lb | Lh | Lw | Lbu | Lhu | Flw => {
            let size = match i.kind {
                Lb | Lbu => 1,
                Lh | Lhu => 2,
                _ => 4,
            };
            let raw = s.load(ea, size)?;
            mem_addr = Some(ea);
            match i.kind {
                Lb => s.set_x(i.rd, raw as u8 as i8 as i32 as u32),
                Lh => s.set_x(i.rd, raw as u16 as i16 as i32 as u32),
                Flw => s.f[i.rd as usize] = raw,
                _ => s.set_x(i.rd, raw),
            }
        }
        Sb | Sh | Sw | Fsw => {
            let (size, value) = match i.kind {
                Sb => (1, x2 & 0xff),
                Sh => (2, x2 & 0xffff),
                Sw => (4, x2),
                _ => (4, s.f[i.rs2 as usize]),
            };
            event = s.store(ea, size, value)?;
            mem_addr = Some(ea);
            if event == Some(DeviceEvent::Halt) {
                return Ok(ExecResult { cycles: 0, mem_addr, event });
            }
        }
        Addi => s.set_x(i.rd, ea),
        Slti => s.set_x(i.rd, ((x1 as i32) < i.imm) as u32),
        Sltiu => s.set_x(i.rd, (x1 < imm) as u32),
        Xori => s.set_x(i.rd, x1 ^ imm),
        Ori => s.set_x(i.rd, x1 | imm),
        Andi => s.set_x(i.rd, x1 & imm),
        Slli => s.set_x(i.rd, x1 << (imm & 31)),
        Srli => s.set_x(i.rd, x1 >> (imm & 31)),
        Srai => s.set_x(i.rd, ((x1 as i32) >> (imm & 31)) as u32),
        Add => s.set_x(i.rd, x1.wrapping_add(x2)),
        Sub => s.set_x(i.rd, x1.wrapping_sub(x2)),
        Sll => s.set_x(i.rd, x1 << (x2 & 31)),
        Slt => s.set_x(i.rd, ((x1 as i32) < (x2 as i32)) as u32),
        Sltu => s.set_x(i.rd, (x1 < x2) as u32),
        Xor => s.set_x(i.rd, x1 ^ x2),
        Srl => s.set_x(i.rd, x1 >> (x2 & 31)),
        Sra => s.set_x(i.rd, ((x1 as i32) >> (x2 & 31)) as u32),
        Or => s.set_x(i.rd, x1 | x2),
        And => s.set_x(i.rd, x1 & x2),
        Fence | Wfi => {}
        Ecall => return Err(Trap::new(Trap::ECALL_M, 0)),
        Ebreak => return Err(Trap::new(Trap::BREAKPOINT, pc)),
        Mret => {
            s.mret();
            next = s.pc;
        }
        Csrrw | Csrrs | Csrrc | Csrrwi | Csrrsi | Csrrci => {
            let addr = imm & 0xfff;
            let illegal = Trap::new(Trap::ILLEGAL_INSTRUCTION, i.raw);
            let old = s.csr.read(addr).ok_or(illegal)?;
            let src = if matches!(i.kind, Csrrwi | Csrrsi | Csrrci) { i.rs1 as u32 } else { x1 };
            let new = match i.kind {
                Csrrw | Csrrwi => Some(src),
                Csrrs | Csrrsi if i.rs1 != 0 => Some(old | src),
                Csrrc | Csrrci if i.rs1 != 0 => Some(old & !src),
                _ => None,
            };
            if let Some(v) = new {
                s.csr.write(addr, v).ok_or(illegal)?;
            }
            s.set_x(i.rd, old);
        }
        Mul | Mulh | Mulhsu | Mulhu | Div | Divu | Rem | Remu => s.set_x(i.rd, muldiv(i.kind, x1, x2)),
        _ => exec_fp(s, i),
    }
    s.pc = next;
    Ok(ExecResult { cycles: lat.cycles(i.kind), mem_addr, event })
}

/// RISC-V M-extension result, including the defined division corner cases.
pub fn muldiv(kind: Kind, a: u32, b: u32) -> u32 {
    let (sa, sb) = (a as i32, b as i32);
    match kind {
        Kind::Mul => a.wrapping_mul(b),
        Kind::Mulh => ((sa as i64 * sb as i64) >> 32) as u32,
        Kind::Mulhsu => ((sa as i64 * b as i64) >> 32) as u32,
        Kind::Mulhu => ((a as u64 * b as u64) >> 32) as u32,
        Kind::Div if b == 0 => u32::MAX,
        Kind::Div => sa.wrapping_div(sb) as u32,
        Kind::Divu if b == 0 => u32::MAX,
        Kind::Divu => a / b,
        Kind::Rem if b == 0 => a,
        Kind::Rem => sa.wrapping_rem(sb) as u32,
        Kind::Remu if b == 0 => a,
        Kind::Remu => a % b,
        _ => unreachable!("{kind} is not an M-extension kind"),
    }
}

fn canon(v: f32) -> u32 {
    if v.is_nan() {
        CANONICAL_NAN
    } else {
        v.to_bits()
    }
}

fn is_nan_bits(b: u32) -> bool {
    b & 0x7f80_0000 == 0x7f80_0000 && b & 0x007f_ffff != 0
}

fn fmin_max(a: u32, b: u32, max: bool) -> u32 {
    match (is_nan_bits(a), is_nan_bits(b)) {
        (true, true) => return CANONICAL_NAN,
        (true, false) => return b,
        (false, true) => return a,
        _ => {}
    }
    let (fa, fb) = (f32::from_bits(a), f32::from_bits(b));
    // -0.0 orders below +0.0
    let a_less = fa < fb || (fa == fb && a & 0x8000_0000 != 0);
    if a_less != max {
        a
    } else {
        b
    }
}

fn fclass(b: u32) -> u32 {
    let sign = b >> 31 != 0;
    let exp = (b >> 23) & 0xff;
    let frac = b & 0x007f_ffff;
    let bit = match (exp, frac) {
        (0xff, 0) => {
            if sign {
                0
            } else {
                7
            }
        }
        (0xff, f) => {
            if f & 0x0040_0000 != 0 {
                9
            } else {
                8
            }
        }
        (0, 0) => {
            if sign {
                3
            } else {
                4
            }
        }
        (0, _) => {
            if sign {
                2
            } else {
                5
            }
        }
        _ => {
            if sign {
                1
            } else {
                6
            }
        }
    };
    1 << bit
}

/// Rounds to an integral value using a static rounding-mode field
/// (dyn reads as round-to-nearest-even, the reset value of frm).
fn round_rm(v: f32, rm: u8) -> f32 {
    match rm {
        1 => v.trunc(),
        2 => v.floor(),
        3 => v.ceil(),
        4 => v.round(),
        _ => v.round_ties_even(),
    }
}

fn fcvt_w(v: f32, rm: u8) -> u32 {
    if v.is_nan() {
        return i32::MAX as u32;
    }
    round_rm(v, rm) as i32 as u32
}

fn fcvt_wu(v: f32, rm: u8) -> u32 {
    if v.is_nan() {
        return u32::MAX;
    }
    round_rm(v, rm) as u32
}

fn exec_fp(s: &mut MachineState, i: &Instr) {
    use Kind::*;
    let (b1, b2, b3) = (s.f[i.rs1 as usize], s.f[i.rs2 as usize], s.f[i.rs3 as usize]);
    let (a, b, c) = (f32::from_bits(b1), f32::from_bits(b2), f32::from_bits(b3));
    let x1 = s.x[i.rs1 as usize];
    let fd = match i.kind {
        FaddS => canon(a + b),
        FsubS => canon(a - b),
        FmulS => canon(a * b),
        FdivS => canon(a / b),
        FsqrtS => canon(a.sqrt()),
        FmaddS => canon(a.mul_add(b, c)),
        FmsubS => canon(a.mul_add(b, -c)),
        FnmsubS => canon((-a).mul_add(b, c)),
        FnmaddS => canon((-a).mul_add(b, -c)),
        FsgnjS => (b1 & 0x7fff_ffff) | (b2 & 0x8000_0000),
        FsgnjnS => (b1 & 0x7fff_ffff) | (!b2 & 0x8000_0000),
        FsgnjxS => b1 ^ (b2 & 0x8000_0000),
        FminS => fmin_max(b1, b2, false),
        FmaxS => fmin_max(b1, b2, true),
        FcvtSW => (x1 as i32 as f32).to_bits(),
        FcvtSWu => (x1 as f32).to_bits(),
        FmvWX => x1,
        _ => {
            let xd = match i.kind {
                FeqS => (a == b) as u32,
                FltS => (a < b) as u32,
                FleS => (a <= b) as u32,
                FcvtWS => fcvt_w(a, i.rm),
                FcvtWuS => fcvt_wu(a, i.rm),
                FmvXW => b1,
                FclassS => fclass(b1),
                k => unreachable!("{k} is not an F-extension kind"),
            };
            s.set_x(i.rd, xd);
            return;
        }
    };
    s.f[i.rd as usize] = fd;
}
