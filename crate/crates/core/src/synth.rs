//! Small generated programs with a controlled instruction mix.

use crate::isa::{Instr, Kind, MmioMap, Program};

const T0: u8 = 5;
const T1: u8 = 6;
const S0: u8 = 8;
const S1: u8 = 9;
const A0: u8 = 10;
const A1: u8 = 11;
const A2: u8 = 12;
const A3: u8 = 13;
const A4: u8 = 14;

/// One instance of `kind` reading initialised registers.
fn body_instr(kind: Kind) -> Instr {
    use Kind::*;
    match kind {
        FmaddS | FmsubS | FnmsubS | FnmaddS => Instr::r4(kind, 1, 2, 3, 4),
        FeqS | FltS | FleS | FcvtWS | FcvtWuS | FmvXW | FclassS => Instr::r(kind, A0, 2, 3),
        FcvtSW | FcvtSWu | FmvWX => Instr::r(kind, 1, A1, 0),
        k if k.ext() == crate::isa::Ext::F => Instr::r(k, 1, 2, 3),
        Lw => Instr::i(Lw, A0, T0, 12),
        _ => Instr::r(kind, A0, A1, A2),
    }
}

/// A loop executing `body` `reps` times per iteration, signalling each
/// completed iteration on the iteration-mark register and halting once the
/// iteration-request register's count is reached (0 = run forever).
///
/// Only `add`, `addi`, `lui`, `lw`, `sw`, branches, `jal` and `fmv.w.x`
/// appear around the body, so the slotted kinds executed are exactly those
/// in `body`. Body kinds must be register-to-register operations or `lw`.
pub fn loop_program(body: &[Kind], reps: u32) -> Program {
    let mmio = MmioMap::default();
    assert_eq!(mmio.halt & 0xfff, 0);
    let base = mmio.halt as i32;
    let off = |addr: u32| (addr - mmio.halt) as i32;
    let mut w: Vec<Instr> = vec![
        Instr::u(Kind::Lui, T0, base),
        Instr::i(Kind::Lw, S1, T0, off(mmio.iter_req)),
        Instr::i(Kind::Addi, S0, 0, 0),
        Instr::i(Kind::Addi, A1, 0, 3),
        Instr::i(Kind::Addi, A2, 0, 5),
        Instr::u(Kind::Lui, A3, 0x3fc0_0000),
        Instr::r(Kind::FmvWX, 2, A3, 0),
        Instr::r(Kind::FmvWX, 3, A3, 0),
        Instr::r(Kind::FmvWX, 4, A3, 0),
    ];
    let outer = w.len();
    w.push(Instr::i(Kind::Addi, T1, 0, reps as i32));
    let inner = w.len();
    w.extend(body.iter().map(|&k| body_instr(k)));
    w.push(Instr::i(Kind::Addi, T1, T1, -1));
    let at = |w: &Vec<Instr>, target: usize| (target as i32 - w.len() as i32) * 4;
    w.push(Instr::b(Kind::Bne, T1, 0, at(&w, inner)));
    w.push(Instr::i(Kind::Addi, S0, S0, 1));
    w.push(Instr::s(Kind::Sw, T0, S0, off(mmio.iter_mark)));
    // forever when s1 == 0; otherwise stop at s0 == s1
    let back = w.len() + 5;
    w.push(Instr::b(Kind::Beq, S1, 0, at(&w, back)));
    w.push(Instr::b(Kind::Bne, S0, S1, at(&w, back)));
    w.push(Instr::u(Kind::Lui, A4, MmioMap::HALT_MAGIC as i32 & !0xfff));
    w.push(Instr::i(Kind::Addi, A4, A4, MmioMap::HALT_MAGIC as i32 & 0xfff));
    w.push(Instr::s(Kind::Sw, T0, A4, off(mmio.halt)));
    debug_assert_eq!(w.len(), back);
    w.push(Instr::j(0, at(&w, outer)));
    Program::from_words(&w.iter().map(|i| i.raw).collect::<Vec<_>>())
}

/// A representative kind from each listed default group.
pub fn group_representative(group: u8) -> Kind {
    use Kind::*;
    [Mul, Div, Rem, FaddS, FmulS, FdivS, FminS, FsqrtS, FcvtWS, FmaddS][group as usize]
}
