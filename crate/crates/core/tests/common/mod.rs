#![allow(dead_code)]

use slotsim::isa::{decode, encode, execute, Instr, Kind, LatencyTable, MachineState};

pub const DECODE: &str = include_str!("../data/decode.txt");
pub const ISA: &str = include_str!("../data/isa.txt");

fn rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty())
        .map(|(n, l)| (n + 1, l.split_whitespace().collect()))
}

/// Checks every decode vector; returns (cases, failure messages).
pub fn check_decode() -> (usize, Vec<String>) {
    let mut fails = Vec::new();
    let mut n = 0;
    for (line, f) in rows(DECODE) {
        n += 1;
        let word = u32::from_str_radix(f[0], 16).unwrap();
        let num = |i: usize| f[i].parse::<i64>().unwrap();
        let got = match decode(word) {
            Ok(i) => i,
            Err(e) => {
                fails.push(format!("line {line}: {word:08x} failed to decode: {e}"));
                continue;
            }
        };
        let want = (f[1], num(2), num(3), num(4), num(5), num(6), num(7));
        let have = (
            got.kind.mnemonic(),
            got.rd as i64,
            got.rs1 as i64,
            got.rs2 as i64,
            got.rs3 as i64,
            got.imm as i64,
            got.rm as i64,
        );
        if want != have {
            fails.push(format!("line {line}: {word:08x} want {want:?} got {have:?}"));
        } else if encode(&got) != word {
            fails.push(format!("line {line}: {word:08x} re-encodes to {:08x}", encode(&got)));
        }
    }
    (n, fails)
}

fn x_source(k: Kind) -> bool {
    use Kind::*;
    matches!(k, Mul | Mulh | Mulhsu | Mulhu | Div | Divu | Rem | Remu | FcvtSW | FcvtSWu | FmvWX)
}

fn x_dest(k: Kind) -> bool {
    use Kind::*;
    matches!(
        k,
        Mul | Mulh | Mulhsu | Mulhu | Div | Divu | Rem | Remu | FcvtWS | FcvtWuS | FmvXW | FeqS | FltS | FleS | FclassS
    )
}

/// Executes every ISA vector on a fresh state; returns (cases, failures).
pub fn check_isa() -> (usize, Vec<String>) {
    let lat = LatencyTable::default();
    let mut fails = Vec::new();
    let mut n = 0;
    for (line, f) in rows(ISA) {
        n += 1;
        let kind = Kind::from_mnemonic(f[0]).unwrap_or_else(|| panic!("line {line}: unknown mnemonic {}", f[0]));
        let hex = |i: usize| u32::from_str_radix(f[i], 16).unwrap();
        let (a, b, c, want) = (hex(1), hex(2), hex(3), hex(5));
        let rm: u8 = f[4].parse().unwrap();
        let mut ins = Instr::r4(kind, 10, 1, 2, 3);
        ins.rm = rm;
        let ins = decode(encode(&ins)).unwrap();
        let mut st = MachineState::new(4096);
        if x_source(kind) {
            st.x[1] = a;
            st.x[2] = b;
        } else {
            st.f[1] = a;
            st.f[2] = b;
            st.f[3] = c;
        }
        if let Err(t) = execute(&mut st, &ins, &lat) {
            fails.push(format!("line {line}: {} trapped: {t}", f[0]));
            continue;
        }
        let got = if x_dest(kind) { st.x[10] } else { st.f[10] };
        if got != want {
            fails.push(format!("line {line}: {} {a:08x} {b:08x} {c:08x} rm={rm}: want {want:08x} got {got:08x}", f[0]));
        }
    }
    (n, fails)
}

use std::collections::{BTreeMap, HashSet};

use slotsim::reuse::{mask_block_bits, ReuseStats, StreamEvent, WindowConfig, WindowStats};

/// Two-pass recomputation: slice the trace into full windows, then count
/// distinct items in each one directly.
pub fn brute_force_reuse(events: &[StreamEvent], cfg: &WindowConfig) -> ReuseStats {
    let bits = cfg.block_mask_bits;
    let mut sets: [HashSet<u32>; 3] = Default::default();
    let windows = cfg
        .sizes
        .iter()
        .map(|&n| {
            let mut occurrences: [BTreeMap<usize, u64>; 3] = Default::default();
            for w in events.chunks_exact(n) {
                for s in sets.iter_mut() {
                    s.clear();
                }
                for e in w {
                    sets[0].insert(e.opcode_id);
                    sets[1].insert(mask_block_bits(e.ip, bits));
                    if let Some(a) = e.data_addr {
                        sets[2].insert(mask_block_bits(a, bits));
                    }
                }
                for (occ, s) in occurrences.iter_mut().zip(&sets) {
                    *occ.entry(s.len()).or_default() += 1;
                }
            }
            WindowStats { n, occurrences }
        })
        .collect();
    ReuseStats { windows }
}

/// Random events over small alphabets so windows see repeats.
pub fn random_events(rng: &mut impl rand::Rng, len: usize) -> Vec<StreamEvent> {
    let ops = rng.random_range(1..=90);
    let ip_span = 64u32 << rng.random_range(0..12);
    let data_span = 64u32 << rng.random_range(0..14);
    let mem_frac = rng.random_range(0.0..0.6);
    (0..len)
        .map(|_| StreamEvent {
            opcode_id: rng.random_range(0..ops),
            ip: rng.random_range(0..ip_span) & !3,
            data_addr: rng.random_bool(mem_frac).then(|| rng.random_range(0..data_span)),
        })
        .collect()
}
