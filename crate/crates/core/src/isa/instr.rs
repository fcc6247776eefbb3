//! RV32IMF instruction kinds, decoding and encoding.

use std::fmt;

use crate::error::DecodeError;

/// Extension class of an instruction kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ext {
    I,
    M,
    F,
    Zicsr,
    System,
}

/// Encoding format, used by the encoder and for operand printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    R,
    R4,
    I,
    Shift,
    Load,
    S,
    B,
    U,
    J,
    Fence,
    Csr,
    CsrImm,
    Fixed,
    /// OP-FP with rs2 selecting the variant: rd, rs1 only.
    FpUnary,
}

macro_rules! kinds {
    ($( $variant:ident => $name:literal, $ext:ident, $fmt:ident; )*) => {
        /// One operation per RV32IMF mnemonic implemented by the core.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Kind {
            $( $variant, )*
        }

        impl Kind {
            pub const ALL: &'static [Kind] = &[ $( Kind::$variant, )* ];

            pub fn mnemonic(self) -> &'static str {
                match self { $( Kind::$variant => $name, )* }
            }

            pub fn ext(self) -> Ext {
                match self { $( Kind::$variant => Ext::$ext, )* }
            }

            fn format(self) -> Format {
                match self { $( Kind::$variant => Format::$fmt, )* }
            }
        }
    };
}

kinds! {
    Lui => "lui", I, U;
    Auipc => "auipc", I, U;
    Jal => "jal", I, J;
    Jalr => "jalr", I, I;
    Beq => "beq", I, B;
    Bne => "bne", I, B;
    Blt => "blt", I, B;
    Bge => "bge", I, B;
    Bltu => "bltu", I, B;
    Bgeu => "bgeu", I, B;
    Lb => "lb", I, Load;
    Lh => "lh", I, Load;
    Lw => "lw", I, Load;
    Lbu => "lbu", I, Load;
    Lhu => "lhu", I, Load;
    Sb => "sb", I, S;
    Sh => "sh", I, S;
    Sw => "sw", I, S;
    Addi => "addi", I, I;
    Slti => "slti", I, I;
    Sltiu => "sltiu", I, I;
    Xori => "xori", I, I;
    Ori => "ori", I, I;
    Andi => "andi", I, I;
    Slli => "slli", I, Shift;
    Srli => "srli", I, Shift;
    Srai => "srai", I, Shift;
    Add => "add", I, R;
    Sub => "sub", I, R;
    Sll => "sll", I, R;
    Slt => "slt", I, R;
    Sltu => "sltu", I, R;
    Xor => "xor", I, R;
    Srl => "srl", I, R;
    Sra => "sra", I, R;
    Or => "or", I, R;
    And => "and", I, R;
    Fence => "fence", I, Fence;
    Ecall => "ecall", System, Fixed;
    Ebreak => "ebreak", System, Fixed;
    Mret => "mret", System, Fixed;
    Wfi => "wfi", System, Fixed;
    Csrrw => "csrrw", Zicsr, Csr;
    Csrrs => "csrrs", Zicsr, Csr;
    Csrrc => "csrrc", Zicsr, Csr;
    Csrrwi => "csrrwi", Zicsr, CsrImm;
    Csrrsi => "csrrsi", Zicsr, CsrImm;
    Csrrci => "csrrci", Zicsr, CsrImm;
    Mul => "mul", M, R;
    Mulh => "mulh", M, R;
    Mulhsu => "mulhsu", M, R;
    Mulhu => "mulhu", M, R;
    Div => "div", M, R;
    Divu => "divu", M, R;
    Rem => "rem", M, R;
    Remu => "remu", M, R;
    Flw => "flw", F, Load;
    Fsw => "fsw", F, S;
    FmaddS => "fmadd.s", F, R4;
    FmsubS => "fmsub.s", F, R4;
    FnmsubS => "fnmsub.s", F, R4;
    FnmaddS => "fnmadd.s", F, R4;
    FaddS => "fadd.s", F, R;
    FsubS => "fsub.s", F, R;
    FmulS => "fmul.s", F, R;
    FdivS => "fdiv.s", F, R;
    FsqrtS => "fsqrt.s", F, FpUnary;
    FsgnjS => "fsgnj.s", F, R;
    FsgnjnS => "fsgnjn.s", F, R;
    FsgnjxS => "fsgnjx.s", F, R;
    FminS => "fmin.s", F, R;
    FmaxS => "fmax.s", F, R;
    FcvtWS => "fcvt.w.s", F, FpUnary;
    FcvtWuS => "fcvt.wu.s", F, FpUnary;
    FmvXW => "fmv.x.w", F, FpUnary;
    FeqS => "feq.s", F, R;
    FltS => "flt.s", F, R;
    FleS => "fle.s", F, R;
    FclassS => "fclass.s", F, FpUnary;
    FcvtSW => "fcvt.s.w", F, FpUnary;
    FcvtSWu => "fcvt.s.wu", F, FpUnary;
    FmvWX => "fmv.w.x", F, FpUnary;
}

impl Kind {
    pub fn from_mnemonic(name: &str) -> Option<Kind> {
        Kind::ALL.iter().copied().find(|k| k.mnemonic() == name)
    }

    /// Stable small integer identifying the kind.
    pub fn index(self) -> usize {
        self as usize
    }

    /// Fused multiply-add family (charged `f_fma` cycles).
    pub fn is_fma(self) -> bool {
        matches!(self, Kind::FmaddS | Kind::FmsubS | Kind::FnmsubS | Kind::FnmaddS)
    }

    /// OP-FP kinds whose funct3 field is a rounding mode.
    fn has_rm(self) -> bool {
        self.format() == Format::R4
            || matches!(
                self,
                Kind::FaddS
                    | Kind::FsubS
                    | Kind::FmulS
                    | Kind::FdivS
                    | Kind::FsqrtS
                    | Kind::FcvtWS
                    | Kind::FcvtWuS
                    | Kind::FcvtSW
                    | Kind::FcvtSWu
            )
    }

    pub fn is_load(self) -> bool {
        matches!(self, Kind::Lb | Kind::Lh | Kind::Lw | Kind::Lbu | Kind::Lhu | Kind::Flw)
    }

    pub fn is_store(self) -> bool {
        matches!(self, Kind::Sb | Kind::Sh | Kind::Sw | Kind::Fsw)
    }

    /// Major opcode, funct3 and funct7 identifying this kind, with register
    /// and rounding-mode fields cleared.
    pub fn opcode_tag(self) -> u32 {
        encode(&Instr { rm: 0, ..Instr::new(self) })
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

/// A decoded instruction. Fields not used by the kind are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Instr {
    pub raw: u32,
    pub kind: Kind,
    pub rd: u8,
    pub rs1: u8,
    pub rs2: u8,
    pub rs3: u8,
    /// Sign-extended immediate; CSR address for Zicsr kinds, shift amount
    /// for immediate shifts, `imm << 12` for lui/auipc, fm/pred/succ for fence.
    pub imm: i32,
    /// Static rounding-mode field for OP-FP kinds that carry one.
    pub rm: u8,
}

impl Instr {
    /// An instruction of `kind` with all operand fields zero (rm = dyn
    /// where applicable), with `raw` filled in.
    pub fn new(kind: Kind) -> Instr {
        let rm = if kind.has_rm() { 7 } else { 0 };
        Instr { raw: 0, kind, rd: 0, rs1: 0, rs2: 0, rs3: 0, imm: 0, rm }.finish()
    }

    pub fn r(kind: Kind, rd: u8, rs1: u8, rs2: u8) -> Instr {
        Instr { rd, rs1, rs2, ..Instr::new(kind) }.finish()
    }

    pub fn r4(kind: Kind, rd: u8, rs1: u8, rs2: u8, rs3: u8) -> Instr {
        Instr { rd, rs1, rs2, rs3, ..Instr::new(kind) }.finish()
    }

    pub fn i(kind: Kind, rd: u8, rs1: u8, imm: i32) -> Instr {
        Instr { rd, rs1, imm, ..Instr::new(kind) }.finish()
    }

    pub fn s(kind: Kind, rs1: u8, rs2: u8, imm: i32) -> Instr {
        Instr { rs1, rs2, imm, ..Instr::new(kind) }.finish()
    }

    pub fn b(kind: Kind, rs1: u8, rs2: u8, imm: i32) -> Instr {
        Instr::s(kind, rs1, rs2, imm)
    }

    pub fn u(kind: Kind, rd: u8, imm: i32) -> Instr {
        Instr { rd, imm: imm & !0xfff, ..Instr::new(kind) }.finish()
    }

    pub fn j(rd: u8, imm: i32) -> Instr {
        Instr { rd, imm, ..Instr::new(Kind::Jal) }.finish()
    }

    fn finish(mut self) -> Instr {
        self.raw = encode(&self);
        self
    }

    pub fn ext(&self) -> Ext {
        self.kind.ext()
    }
}

const X_ABI: [&str; 32] = [
    "zero", "ra", "sp", "gp", "tp", "t0", "t1", "t2", "s0", "s1", "a0", "a1", "a2", "a3", "a4",
    "a5", "a6", "a7", "s2", "s3", "s4", "s5", "s6", "s7", "s8", "s9", "s10", "s11", "t3", "t4",
    "t5", "t6",
];

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = |r: u8| X_ABI[r as usize];
        let fr = |r: u8| format!("f{r}");
        let k = self.kind;
        let float_rd = matches!(k, Kind::Flw | Kind::FcvtSW | Kind::FcvtSWu | Kind::FmvWX)
            || (k.ext() == Ext::F
                && !matches!(
                    k,
                    Kind::FcvtWS | Kind::FcvtWuS | Kind::FmvXW | Kind::FclassS | Kind::FeqS | Kind::FltS | Kind::FleS | Kind::Fsw
                ));
        let float_rs1 = k.ext() == Ext::F && !matches!(k, Kind::Flw | Kind::Fsw | Kind::FcvtSW | Kind::FcvtSWu | Kind::FmvWX);
        let rd = if float_rd { fr(self.rd) } else { x(self.rd).to_string() };
        let rs1 = if float_rs1 { fr(self.rs1) } else { x(self.rs1).to_string() };
        let rs2 = if k.ext() == Ext::F && k != Kind::Flw { fr(self.rs2) } else { x(self.rs2).to_string() };
        write!(f, "{}", k.mnemonic())?;
        match k.format() {
            Format::R => write!(f, " {rd}, {rs1}, {rs2}"),
            Format::R4 => write!(f, " {rd}, {rs1}, {rs2}, {}", fr(self.rs3)),
            Format::FpUnary => write!(f, " {rd}, {rs1}"),
            Format::I | Format::Shift => write!(f, " {rd}, {rs1}, {}", self.imm),
            Format::Load => write!(f, " {rd}, {}({})", self.imm, x(self.rs1)),
            Format::S => write!(f, " {rs2}, {}({})", self.imm, x(self.rs1)),
            Format::B => write!(f, " {}, {}, {}", x(self.rs1), x(self.rs2), self.imm),
            Format::U => write!(f, " {rd}, {:#x}", (self.imm as u32) >> 12),
            Format::J => write!(f, " {rd}, {}", self.imm),
            Format::Csr => write!(f, " {rd}, {:#x}, {rs1}", self.imm),
            Format::CsrImm => write!(f, " {rd}, {:#x}, {}", self.imm, self.rs1),
            Format::Fence | Format::Fixed => Ok(()),
        }
    }
}

fn bits(word: u32, hi: u32, lo: u32) -> u32 {
    (word >> lo) & ((1u32 << (hi - lo + 1)) - 1)
}

fn sext(value: u32, width: u32) -> i32 {
    let shift = 32 - width;
    ((value << shift) as i32) >> shift
}

/// Decodes a 32-bit instruction word.
pub fn decode(word: u32) -> Result<Instr, DecodeError> {
    let illegal = DecodeError { word };
    let opcode = word & 0x7f;
    let rd = bits(word, 11, 7) as u8;
    let funct3 = bits(word, 14, 12);
    let rs1 = bits(word, 19, 15) as u8;
    let rs2 = bits(word, 24, 20) as u8;
    let funct7 = bits(word, 31, 25);
    let imm_i = sext(bits(word, 31, 20), 12);
    let imm_s = sext((bits(word, 31, 25) << 5) | bits(word, 11, 7), 12);
    let imm_b = sext(
        (bits(word, 31, 31) << 12) | (bits(word, 7, 7) << 11) | (bits(word, 30, 25) << 5) | (bits(word, 11, 8) << 1),
        13,
    );
    let imm_u = (word & 0xffff_f000) as i32;
    let imm_j = sext(
        (bits(word, 31, 31) << 20) | (bits(word, 19, 12) << 12) | (bits(word, 20, 20) << 11) | (bits(word, 30, 21) << 1),
        21,
    );

    let base = |kind| Instr { raw: word, kind, rd: 0, rs1: 0, rs2: 0, rs3: 0, imm: 0, rm: 0 };
    let r_type = |kind| Instr { rd, rs1, rs2, ..base(kind) };
    let i_type = |kind| Instr { rd, rs1, imm: imm_i, ..base(kind) };

    let instr = match opcode {
        0x37 => Instr { rd, imm: imm_u, ..base(Kind::Lui) },
        0x17 => Instr { rd, imm: imm_u, ..base(Kind::Auipc) },
        0x6f => Instr { rd, imm: imm_j, ..base(Kind::Jal) },
        0x67 if funct3 == 0 => i_type(Kind::Jalr),
        0x63 => {
            let kind = match funct3 {
                0 => Kind::Beq,
                1 => Kind::Bne,
                4 => Kind::Blt,
                5 => Kind::Bge,
                6 => Kind::Bltu,
                7 => Kind::Bgeu,
                _ => return Err(illegal),
            };
            Instr { rs1, rs2, imm: imm_b, ..base(kind) }
        }
        0x03 => {
            let kind = match funct3 {
                0 => Kind::Lb,
                1 => Kind::Lh,
                2 => Kind::Lw,
                4 => Kind::Lbu,
                5 => Kind::Lhu,
                _ => return Err(illegal),
            };
            i_type(kind)
        }
        0x23 => {
            let kind = match funct3 {
                0 => Kind::Sb,
                1 => Kind::Sh,
                2 => Kind::Sw,
                _ => return Err(illegal),
            };
            Instr { rs1, rs2, imm: imm_s, ..base(kind) }
        }
        0x13 => match funct3 {
            0 => i_type(Kind::Addi),
            2 => i_type(Kind::Slti),
            3 => i_type(Kind::Sltiu),
            4 => i_type(Kind::Xori),
            6 => i_type(Kind::Ori),
            7 => i_type(Kind::Andi),
            1 | 5 => {
                let kind = match (funct3, funct7) {
                    (1, 0x00) => Kind::Slli,
                    (5, 0x00) => Kind::Srli,
                    (5, 0x20) => Kind::Srai,
                    _ => return Err(illegal),
                };
                Instr { rd, rs1, imm: rs2 as i32, ..base(kind) }
            }
            _ => unreachable!(),
        },
        0x33 => {
            let kind = match (funct7, funct3) {
                (0x00, 0) => Kind::Add,
                (0x20, 0) => Kind::Sub,
                (0x00, 1) => Kind::Sll,
                (0x00, 2) => Kind::Slt,
                (0x00, 3) => Kind::Sltu,
                (0x00, 4) => Kind::Xor,
                (0x00, 5) => Kind::Srl,
                (0x20, 5) => Kind::Sra,
                (0x00, 6) => Kind::Or,
                (0x00, 7) => Kind::And,
                (0x01, 0) => Kind::Mul,
                (0x01, 1) => Kind::Mulh,
                (0x01, 2) => Kind::Mulhsu,
                (0x01, 3) => Kind::Mulhu,
                (0x01, 4) => Kind::Div,
                (0x01, 5) => Kind::Divu,
                (0x01, 6) => Kind::Rem,
                (0x01, 7) => Kind::Remu,
                _ => return Err(illegal),
            };
            r_type(kind)
        }
        0x0f if funct3 == 0 => Instr { rd, rs1, imm: bits(word, 31, 20) as i32, ..base(Kind::Fence) },
        0x73 => match funct3 {
            0 => match word {
                0x0000_0073 => base(Kind::Ecall),
                0x0010_0073 => base(Kind::Ebreak),
                0x3020_0073 => base(Kind::Mret),
                0x1050_0073 => base(Kind::Wfi),
                _ => return Err(illegal),
            },
            1..=3 | 5..=7 => {
                let kind = match funct3 {
                    1 => Kind::Csrrw,
                    2 => Kind::Csrrs,
                    3 => Kind::Csrrc,
                    5 => Kind::Csrrwi,
                    6 => Kind::Csrrsi,
                    _ => Kind::Csrrci,
                };
                Instr { rd, rs1, imm: bits(word, 31, 20) as i32, ..base(kind) }
            }
            _ => return Err(illegal),
        },
        0x07 if funct3 == 2 => i_type(Kind::Flw),
        0x27 if funct3 == 2 => Instr { rs1, rs2, imm: imm_s, ..base(Kind::Fsw) },
        0x43 | 0x47 | 0x4b | 0x4f => {
            if bits(word, 26, 25) != 0 || !valid_rm(funct3) {
                return Err(illegal);
            }
            let kind = match opcode {
                0x43 => Kind::FmaddS,
                0x47 => Kind::FmsubS,
                0x4b => Kind::FnmsubS,
                _ => Kind::FnmaddS,
            };
            Instr { rd, rs1, rs2, rs3: bits(word, 31, 27) as u8, rm: funct3 as u8, ..base(kind) }
        }
        0x53 => decode_op_fp(word, rd, rs1, rs2, funct3, funct7).ok_or(illegal)?,
        _ => return Err(illegal),
    };
    Ok(instr)
}

fn valid_rm(rm: u32) -> bool {
    rm <= 4 || rm == 7
}

fn decode_op_fp(word: u32, rd: u8, rs1: u8, rs2: u8, funct3: u32, funct7: u32) -> Option<Instr> {
    let base = |kind| Instr { raw: word, kind, rd, rs1, rs2: 0, rs3: 0, imm: 0, rm: 0 };
    let with_rm = |kind| valid_rm(funct3).then(|| Instr { rm: funct3 as u8, ..base(kind) });
    let binary = |kind| Instr { rs2, ..base(kind) };
    match funct7 {
        0x00 => with_rm(Kind::FaddS).map(|i| Instr { rs2, ..i }),
        0x04 => with_rm(Kind::FsubS).map(|i| Instr { rs2, ..i }),
        0x08 => with_rm(Kind::FmulS).map(|i| Instr { rs2, ..i }),
        0x0c => with_rm(Kind::FdivS).map(|i| Instr { rs2, ..i }),
        0x2c if rs2 == 0 => with_rm(Kind::FsqrtS),
        0x10 => match funct3 {
            0 => Some(binary(Kind::FsgnjS)),
            1 => Some(binary(Kind::FsgnjnS)),
            2 => Some(binary(Kind::FsgnjxS)),
            _ => None,
        },
        0x14 => match funct3 {
            0 => Some(binary(Kind::FminS)),
            1 => Some(binary(Kind::FmaxS)),
            _ => None,
        },
        0x60 => match rs2 {
            0 => with_rm(Kind::FcvtWS),
            1 => with_rm(Kind::FcvtWuS),
            _ => None,
        },
        0x70 if rs2 == 0 => match funct3 {
            0 => Some(base(Kind::FmvXW)),
            1 => Some(base(Kind::FclassS)),
            _ => None,
        },
        0x50 => match funct3 {
            2 => Some(binary(Kind::FeqS)),
            1 => Some(binary(Kind::FltS)),
            0 => Some(binary(Kind::FleS)),
            _ => None,
        },
        0x68 => match rs2 {
            0 => with_rm(Kind::FcvtSW),
            1 => with_rm(Kind::FcvtSWu),
            _ => None,
        },
        0x78 if rs2 == 0 && funct3 == 0 => Some(base(Kind::FmvWX)),
        _ => None,
    }
}

/// Encodes an instruction from its fields (`raw` is ignored).
pub fn encode(i: &Instr) -> u32 {
    let rd = (i.rd as u32 & 31) << 7;
    let rs1 = (i.rs1 as u32 & 31) << 15;
    let rs2 = (i.rs2 as u32 & 31) << 20;
    let imm = i.imm as u32;
    let rm = (i.rm as u32 & 7) << 12;
    let r = |funct7: u32, funct3: u32, opcode: u32| (funct7 << 25) | rs2 | rs1 | (funct3 << 12) | rd | opcode;
    let itype = |funct3: u32, opcode: u32| ((imm & 0xfff) << 20) | rs1 | (funct3 << 12) | rd | opcode;
    let stype = |funct3: u32, opcode: u32| {
        (((imm >> 5) & 0x7f) << 25) | rs2 | rs1 | (funct3 << 12) | ((imm & 0x1f) << 7) | opcode
    };
    let btype = |funct3: u32| {
        (((imm >> 12) & 1) << 31)
            | (((imm >> 5) & 0x3f) << 25)
            | rs2
            | rs1
            | (funct3 << 12)
            | (((imm >> 1) & 0xf) << 8)
            | (((imm >> 11) & 1) << 7)
            | 0x63
    };
    let fp = |funct7: u32, rs2_field: u32, funct3: u32| (funct7 << 25) | (rs2_field << 20) | rs1 | (funct3 << 12) | rd | 0x53;
    let r4 = |opcode: u32| ((i.rs3 as u32 & 31) << 27) | rs2 | rs1 | rm | rd | opcode;
    use Kind::*;
    match i.kind {
        Lui => (imm & 0xffff_f000) | rd | 0x37,
        Auipc => (imm & 0xffff_f000) | rd | 0x17,
        Jal => {
            (((imm >> 20) & 1) << 31)
                | (((imm >> 1) & 0x3ff) << 21)
                | (((imm >> 11) & 1) << 20)
                | (((imm >> 12) & 0xff) << 12)
                | rd
                | 0x6f
        }
        Jalr => itype(0, 0x67),
        Beq => btype(0),
        Bne => btype(1),
        Blt => btype(4),
        Bge => btype(5),
        Bltu => btype(6),
        Bgeu => btype(7),
        Lb => itype(0, 0x03),
        Lh => itype(1, 0x03),
        Lw => itype(2, 0x03),
        Lbu => itype(4, 0x03),
        Lhu => itype(5, 0x03),
        Sb => stype(0, 0x23),
        Sh => stype(1, 0x23),
        Sw => stype(2, 0x23),
        Addi => itype(0, 0x13),
        Slti => itype(2, 0x13),
        Sltiu => itype(3, 0x13),
        Xori => itype(4, 0x13),
        Ori => itype(6, 0x13),
        Andi => itype(7, 0x13),
        Slli => ((imm & 31) << 20) | rs1 | (1 << 12) | rd | 0x13,
        Srli => ((imm & 31) << 20) | rs1 | (5 << 12) | rd | 0x13,
        Srai => (0x20 << 25) | ((imm & 31) << 20) | rs1 | (5 << 12) | rd | 0x13,
        Add => r(0x00, 0, 0x33),
        Sub => r(0x20, 0, 0x33),
        Sll => r(0x00, 1, 0x33),
        Slt => r(0x00, 2, 0x33),
        Sltu => r(0x00, 3, 0x33),
        Xor => r(0x00, 4, 0x33),
        Srl => r(0x00, 5, 0x33),
        Sra => r(0x20, 5, 0x33),
        Or => r(0x00, 6, 0x33),
        And => r(0x00, 7, 0x33),
        Fence => itype(0, 0x0f),
        Ecall => 0x0000_0073,
        Ebreak => 0x0010_0073,
        Mret => 0x3020_0073,
        Wfi => 0x1050_0073,
        Csrrw => itype(1, 0x73),
        Csrrs => itype(2, 0x73),
        Csrrc => itype(3, 0x73),
        Csrrwi => itype(5, 0x73),
        Csrrsi => itype(6, 0x73),
        Csrrci => itype(7, 0x73),
        Mul => r(0x01, 0, 0x33),
        Mulh => r(0x01, 1, 0x33),
        Mulhsu => r(0x01, 2, 0x33),
        Mulhu => r(0x01, 3, 0x33),
        Div => r(0x01, 4, 0x33),
        Divu => r(0x01, 5, 0x33),
        Rem => r(0x01, 6, 0x33),
        Remu => r(0x01, 7, 0x33),
        Flw => itype(2, 0x07),
        Fsw => stype(2, 0x27),
        FmaddS => r4(0x43),
        FmsubS => r4(0x47),
        FnmsubS => r4(0x4b),
        FnmaddS => r4(0x4f),
        FaddS => r(0x00, i.rm as u32, 0x53),
        FsubS => r(0x04, i.rm as u32, 0x53),
        FmulS => r(0x08, i.rm as u32, 0x53),
        FdivS => r(0x0c, i.rm as u32, 0x53),
        FsqrtS => fp(0x2c, 0, i.rm as u32),
        FsgnjS => r(0x10, 0, 0x53),
        FsgnjnS => r(0x10, 1, 0x53),
        FsgnjxS => r(0x10, 2, 0x53),
        FminS => r(0x14, 0, 0x53),
        FmaxS => r(0x14, 1, 0x53),
        FcvtWS => fp(0x60, 0, i.rm as u32),
        FcvtWuS => fp(0x60, 1, i.rm as u32),
        FmvXW => fp(0x70, 0, 0),
        FclassS => fp(0x70, 0, 1),
        FeqS => r(0x50, 2, 0x53),
        FltS => r(0x50, 1, 0x53),
        FleS => r(0x50, 0, 0x53),
        FcvtSW => fp(0x68, 0, i.rm as u32),
        FcvtSWu => fp(0x68, 1, i.rm as u32),
        FmvWX => fp(0x78, 0, 0),
    }
}
