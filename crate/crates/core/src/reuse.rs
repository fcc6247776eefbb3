//! Working-set analysis: per-window counts of unique opcodes, instruction
//! blocks and data blocks over a retired-instruction trace.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};

use rustc_hash::FxHashMap;

use crate::error::{SimError, StatsError, TraceError};
use crate::groups::GroupTable;
use crate::isa::Kind;
use crate::os::{run_tasks, SchedConfig, Task};
use crate::sim::{CoreConfig, TraceRecord};

pub const BLOCK_MASK_BITS: u32 = 6;
pub const OVERSUBSCRIBE_WINDOW: usize = 32768;

pub fn mask_block(addr: u32) -> u32 {
    mask_block_bits(addr, BLOCK_MASK_BITS)
}

pub fn mask_block_bits(addr: u32, bits: u32) -> u32 {
    if bits >= 32 {
        0
    } else {
        addr & !((1u32 << bits) - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamEvent {
    pub opcode_id: u32,
    pub ip: u32,
    pub data_addr: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StreamKind {
    Opcode,
    IpBlock,
    DataBlock,
}

impl StreamKind {
    pub const ALL: [StreamKind; 3] = [StreamKind::Opcode, StreamKind::IpBlock, StreamKind::DataBlock];

    pub fn name(self) -> &'static str {
        match self {
            StreamKind::Opcode => "opcode",
            StreamKind::IpBlock => "ip_block",
            StreamKind::DataBlock => "data_block",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowConfig {
    /// Window lengths in instructions.
    pub sizes: Vec<usize>,
    pub block_mask_bits: u32,
}

impl WindowConfig {
    pub fn new(sizes: Vec<usize>) -> WindowConfig {
        assert!(sizes.iter().all(|&n| n >= 1), "window length must be at least 1");
        WindowConfig { sizes, block_mask_bits: BLOCK_MASK_BITS }
    }

    /// Windows of 2^lo ..= 2^hi instructions.
    pub fn powers_of_two(lo: u32, hi: u32) -> WindowConfig {
        WindowConfig::new((lo..=hi).map(|k| 1usize << k).collect())
    }
}

/// `cardinality -> number of windows` for each stream kind.
pub type Occurrences = BTreeMap<usize, u64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowStats {
    pub n: usize,
    /// Indexed by `StreamKind as usize`.
    pub occurrences: [Occurrences; 3],
}

impl WindowStats {
    pub fn get(&self, kind: StreamKind) -> &Occurrences {
        &self.occurrences[kind as usize]
    }

    pub fn windows(&self) -> u64 {
        self.occurrences[0].values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReuseStats {
    pub windows: Vec<WindowStats>,
}

impl ReuseStats {
    pub fn window(&self, n: usize) -> Option<&WindowStats> {
        self.windows.iter().find(|w| w.n == n)
    }
}

/// Streaming analyzer. Each stream keeps the index of every item's latest
/// occurrence; an event adds one to its window's cardinality exactly when
/// that previous occurrence lies before the window's first index.
#[derive(Debug, Clone)]
pub struct ReuseAnalyzer {
    cfg: WindowConfig,
    t: u64,
    last: [FxHashMap<u32, u64>; 3],
    counts: Vec<[usize; 3]>,
    stats: ReuseStats,
}

impl ReuseAnalyzer {
    pub fn new(cfg: WindowConfig) -> ReuseAnalyzer {
        let stats = ReuseStats {
            windows: cfg.sizes.iter().map(|&n| WindowStats { n, occurrences: Default::default() }).collect(),
        };
        ReuseAnalyzer { counts: vec![[0; 3]; cfg.sizes.len()], cfg, t: 0, last: Default::default(), stats }
    }

    pub fn ingest(&mut self, ev: &StreamEvent) {
        let t = self.t;
        let bits = self.cfg.block_mask_bits;
        let keys = [Some(ev.opcode_id), Some(mask_block_bits(ev.ip, bits)), ev.data_addr.map(|a| mask_block_bits(a, bits))];
        let mut prev = [None; 3];
        for s in 0..3 {
            if let Some(k) = keys[s] {
                prev[s] = Some(self.last[s].insert(k, t));
            }
        }
        for (i, &n) in self.cfg.sizes.iter().enumerate() {
            let start = t - t % n as u64;
            let c = &mut self.counts[i];
            for s in 0..3 {
                match prev[s] {
                    Some(Some(p)) if p >= start => {}
                    Some(_) => c[s] += 1,
                    None => {}
                }
            }
            if (t + 1).is_multiple_of(n as u64) {
                let w = &mut self.stats.windows[i];
                for (occ, count) in w.occurrences.iter_mut().zip(c.iter_mut()) {
                    *occ.entry(*count).or_insert(0) += 1;
                    *count = 0;
                }
            }
        }
        self.t += 1;
    }

    pub fn ingest_all<'a>(&mut self, events: impl IntoIterator<Item = &'a StreamEvent>) {
        for ev in events {
            self.ingest(ev);
        }
    }

    /// Completed windows only; a trailing partial window is dropped.
    pub fn finish(self) -> ReuseStats {
        self.stats
    }
}

pub fn analyze(events: &[StreamEvent], cfg: &WindowConfig) -> ReuseStats {
    let mut a = ReuseAnalyzer::new(cfg.clone());
    a.ingest_all(events);
    a.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quantiles {
    pub median: usize,
    pub q1: usize,
    pub q3: usize,
    pub max: usize,
}

/// Nearest-rank quantile: the value at 1-based rank ceil(p·N).
fn nearest_rank(occ: &Occurrences, total: u64, num: u64, den: u64) -> usize {
    let rank = (num * total).div_ceil(den).max(1);
    let mut seen = 0;
    for (&card, &count) in occ {
        seen += count;
        if seen >= rank {
            return card;
        }
    }
    unreachable!("rank within total")
}

pub fn quantiles(occ: &Occurrences) -> Result<Quantiles, StatsError> {
    let total: u64 = occ.values().sum();
    if total == 0 {
        return Err(StatsError::EmptyStats);
    }
    Ok(Quantiles {
        median: nearest_rank(occ, total, 1, 2),
        q1: nearest_rank(occ, total, 1, 4),
        q3: nearest_rank(occ, total, 3, 4),
        max: *occ.keys().next_back().unwrap(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SummaryRow {
    pub kind: StreamKind,
    pub n: usize,
    pub q: Quantiles,
}

/// One row per (stream kind, window size). Window sizes longer than the
/// trace are skipped; if none completed the result is an error.
pub fn summarize(stats: &ReuseStats) -> Result<Vec<SummaryRow>, StatsError> {
    let mut rows = Vec::new();
    for kind in StreamKind::ALL {
        for w in &stats.windows {
            if w.windows() == 0 {
                continue;
            }
            let occ = w.get(kind);
            // data windows with no memory access record cardinality 0
            rows.push(SummaryRow { kind, n: w.n, q: quantiles(occ)? });
        }
    }
    if rows.is_empty() {
        return Err(StatsError::EmptyStats);
    }
    Ok(rows)
}

/// Interned opcode names plus the event stream.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    pub names: Vec<String>,
    pub events: Vec<StreamEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OpcodeMode {
    #[default]
    PerKind,
    /// Slotted kinds collapse to their group; other kinds stay distinct.
    PerGroup,
}

impl Trace {
    pub fn from_records(records: &[TraceRecord]) -> Trace {
        Trace {
            names: Kind::ALL.iter().map(|k| k.mnemonic().to_string()).collect(),
            events: records
                .iter()
                .map(|r| StreamEvent { opcode_id: r.kind.index() as u32, ip: r.pc, data_addr: r.mem_addr })
                .collect(),
        }
    }

    pub fn name(&self, ev: &StreamEvent) -> &str {
        &self.names[ev.opcode_id as usize]
    }

    /// Re-keys opcodes according to `mode`.
    pub fn with_mode(&self, mode: OpcodeMode, groups: &GroupTable) -> Trace {
        if mode == OpcodeMode::PerKind {
            return self.clone();
        }
        let mut out = Trace { names: Vec::new(), events: Vec::with_capacity(self.events.len()) };
        let mut ids: FxHashMap<String, u32> = FxHashMap::default();
        let remap: Vec<u32> = self
            .names
            .iter()
            .map(|name| {
                let key = match Kind::from_mnemonic(name).and_then(|k| groups.classify(k)) {
                    Some(g) => g.to_string(),
                    None => name.clone(),
                };
                *ids.entry(key.clone()).or_insert_with(|| {
                    out.names.push(key);
                    out.names.len() as u32 - 1
                })
            })
            .collect();
        out.events.extend(self.events.iter().map(|e| StreamEvent { opcode_id: remap[e.opcode_id as usize], ..*e }));
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.events.len() * 24);
        for e in &self.events {
            let _ = write!(s, "{:#010x},{},", e.ip, self.name(e));
            match e.data_addr {
                Some(a) => {
                    let _ = writeln!(s, "{a:#010x}");
                }
                None => s.push_str("-\n"),
            }
        }
        s
    }

    pub fn write_text(&self, w: &mut impl Write) -> io::Result<()> {
        w.write_all(self.to_text().as_bytes())
    }

    pub fn parse_text(text: &str) -> Result<Trace, TraceError> {
        let mut t = Trace::default();
        let mut ids: FxHashMap<&str, u32> = FxHashMap::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || TraceError::Parse { line: i + 1, record: raw.to_string() };
            let mut f = line.split(',');
            let (pc, op, mem) = match (f.next(), f.next(), f.next(), f.next()) {
                (Some(a), Some(b), Some(c), None) => (a.trim(), b.trim(), c.trim()),
                _ => return Err(bad()),
            };
            let ip = parse_hex(pc).ok_or_else(bad)?;
            let data_addr = if mem == "-" { None } else { Some(parse_hex(mem).ok_or_else(bad)?) };
            if op.is_empty() || op.contains(char::is_whitespace) {
                return Err(bad());
            }
            let id = *ids.entry(op).or_insert_with(|| {
                t.names.push(op.to_string());
                t.names.len() as u32 - 1
            });
            t.events.push(StreamEvent { opcode_id: id, ip, data_addr });
        }
        Ok(t)
    }

    /// Compact encoding: magic `SLTRACE1`, u32 name count, names as
    /// (u8 length, bytes), u32 record count, then 11-byte records
    /// (u32 pc, u16 opcode id, u8 flags with bit 0 = has address, u32
    /// address). All integers little-endian.
    pub fn to_binary(&self) -> Result<Vec<u8>, TraceError> {
        if self.names.len() > u16::MAX as usize + 1 {
            return Err(TraceError::Binary("more than 65536 opcode names".into()));
        }
        if let Some(n) = self.names.iter().find(|n| n.len() > u8::MAX as usize) {
            return Err(TraceError::Binary(format!("opcode name `{n}` longer than 255 bytes")));
        }
        let mut out = Vec::with_capacity(16 + self.events.len() * 11);
        out.extend_from_slice(BINARY_MAGIC);
        out.extend_from_slice(&(self.names.len() as u32).to_le_bytes());
        for n in &self.names {
            out.push(n.len() as u8);
            out.extend_from_slice(n.as_bytes());
        }
        out.extend_from_slice(&(self.events.len() as u32).to_le_bytes());
        for e in &self.events {
            out.extend_from_slice(&e.ip.to_le_bytes());
            out.extend_from_slice(&(e.opcode_id as u16).to_le_bytes());
            out.push(e.data_addr.is_some() as u8);
            out.extend_from_slice(&e.data_addr.unwrap_or(0).to_le_bytes());
        }
        Ok(out)
    }

    pub fn parse_binary(bytes: &[u8]) -> Result<Trace, TraceError> {
        let err = |m: &str| TraceError::Binary(m.to_string());
        let mut r = Reader { b: bytes, at: 0 };
        if r.take(8).ok_or_else(|| err("truncated header"))? != BINARY_MAGIC {
            return Err(err("bad magic"));
        }
        let nnames = r.u32().ok_or_else(|| err("truncated name table"))?;
        let mut names = Vec::new();
        for _ in 0..nnames {
            let len = r.take(1).ok_or_else(|| err("truncated name table"))?[0] as usize;
            let raw = r.take(len).ok_or_else(|| err("truncated name table"))?;
            names.push(String::from_utf8(raw.to_vec()).map_err(|_| err("name is not UTF-8"))?);
        }
        let count = r.u32().ok_or_else(|| err("truncated record count"))?;
        let mut events = Vec::with_capacity(count as usize);
        for _ in 0..count {
            let rec = r.take(11).ok_or_else(|| err("truncated record"))?;
            let ip = u32::from_le_bytes(rec[0..4].try_into().unwrap());
            let op = u16::from_le_bytes(rec[4..6].try_into().unwrap()) as u32;
            if op as usize >= names.len() {
                return Err(err("opcode id outside name table"));
            }
            let addr = u32::from_le_bytes(rec[7..11].try_into().unwrap());
            events.push(StreamEvent { opcode_id: op, ip, data_addr: (rec[6] & 1 != 0).then_some(addr) });
        }
        if r.at != bytes.len() {
            return Err(err("trailing bytes"));
        }
        Ok(Trace { names, events })
    }

    /// Parses either encoding, detected by the magic.
    pub fn parse(bytes: &[u8]) -> Result<Trace, TraceError> {
        if bytes.starts_with(BINARY_MAGIC) {
            Trace::parse_binary(bytes)
        } else {
            let text = std::str::from_utf8(bytes).map_err(|_| TraceError::Binary("neither text nor binary trace".into()))?;
            Trace::parse_text(text)
        }
    }
}

const BINARY_MAGIC: &[u8; 8] = b"SLTRACE1";

struct Reader<'a> {
    b: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let s = self.b.get(self.at..self.at + n)?;
        self.at += n;
        Some(s)
    }

    fn u32(&mut self) -> Option<u32> {
        self.take(4).map(|s| u32::from_le_bytes(s.try_into().unwrap()))
    }
}

fn parse_hex(s: &str) -> Option<u32> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u32::from_str_radix(digits, 16).ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OversubscriptionPoint {
    pub k: usize,
    pub stats: ReuseStats,
    pub instructions: usize,
}

/// Runs the first `k` tasks (cycling through `tasks` when `k` exceeds its
/// length) round-robin for every k in `ks` and analyses each merged trace
/// with a single window length.
pub fn oversubscribe_analyze(
    tasks: &[Task],
    ks: &[usize],
    cfg: &CoreConfig,
    groups: &GroupTable,
    sched: &SchedConfig,
    window: usize,
    mode: OpcodeMode,
) -> Result<Vec<OversubscriptionPoint>, SimError> {
    let mut out = Vec::new();
    for &k in ks {
        let set: Vec<Task> = (0..k).map(|i| tasks[i % tasks.len()].clone()).collect();
        let run = run_tasks(&set, cfg, groups, sched, true)?;
        let trace = Trace::from_records(&run.trace).with_mode(mode, groups);
        let stats = analyze(&trace.events, &WindowConfig::new(vec![window]));
        out.push(OversubscriptionPoint { k, stats, instructions: trace.events.len() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ops(ids: &[u32]) -> Vec<StreamEvent> {
        ids.iter().enumerate().map(|(i, &o)| StreamEvent { opcode_id: o, ip: 4 * i as u32, data_addr: None }).collect()
    }

    #[test]
    fn masks_low_six_bits() {
        assert_eq!(mask_block(0), 0);
        assert_eq!(mask_block(0x103f), 0x1000);
        assert_eq!(mask_block(0xffc0), 0xffc0);
    }

    #[test]
    fn window_examples() {
        let s = analyze(&ops(&[0, 0, 0, 0]), &WindowConfig::new(vec![4]));
        assert_eq!(s.windows[0].get(StreamKind::Opcode), &BTreeMap::from([(1, 1)]));
        let s = analyze(&ops(&[0, 1, 2, 0]), &WindowConfig::new(vec![4]));
        assert_eq!(s.windows[0].get(StreamKind::Opcode), &BTreeMap::from([(3, 1)]));
        let s = analyze(&ops(&[0, 0, 1, 1]), &WindowConfig::new(vec![2]));
        assert_eq!(s.windows[0].get(StreamKind::Opcode), &BTreeMap::from([(1, 2)]));
    }

    #[test]
    fn trailing_partial_window_dropped() {
        let s = analyze(&ops(&[0, 1, 2, 3, 4]), &WindowConfig::new(vec![2]));
        assert_eq!(s.windows[0].windows(), 2);
    }

    #[test]
    fn nearest_rank_quantiles() {
        let q = quantiles(&BTreeMap::from([(7, 1)])).unwrap();
        assert_eq!(q, Quantiles { median: 7, q1: 7, q3: 7, max: 7 });
        let q = quantiles(&BTreeMap::from([(3, 1), (5, 1), (9, 1)])).unwrap();
        assert_eq!((q.median, q.q1, q.q3, q.max), (5, 3, 9, 9));
        assert_eq!(quantiles(&BTreeMap::new()), Err(StatsError::EmptyStats));
    }

    #[test]
    fn alternating_pair_has_median_two() {
        let ids: Vec<u32> = (0..4096).map(|i| i % 2).collect();
        let s = analyze(&ops(&ids), &WindowConfig::powers_of_two(1, 10));
        for row in summarize(&s).unwrap().iter().filter(|r| r.kind == StreamKind::Opcode) {
            assert_eq!(row.q.median, 2, "n={}", row.n);
        }
    }

    #[test]
    fn text_and_binary_roundtrip() {
        let text = "0x00000100,add,-\n0x00000104,lw,0x00002040\n0x00000108,add,-\n";
        let t = Trace::parse_text(text).unwrap();
        assert_eq!(t.names, vec!["add", "lw"]);
        assert_eq!(t.events[1].data_addr, Some(0x2040));
        assert_eq!(t.to_text(), text);
        assert_eq!(Trace::parse(&t.to_binary().unwrap()).unwrap(), t);
        assert!(matches!(Trace::parse_text("0x0,add"), Err(TraceError::Parse { line: 1, .. })));
        assert!(matches!(Trace::parse_text("zz,add,-"), Err(TraceError::Parse { .. })));
    }

    #[test]
    fn per_group_mode_merges_group_members() {
        let text = "0x0,mul,-\n0x4,mulh,-\n0x8,add,-\n0xc,div,-\n";
        let t = Trace::parse_text(text).unwrap().with_mode(OpcodeMode::PerGroup, &GroupTable::default());
        assert_eq!(t.names, vec!["G0", "add", "G1"]);
        let s = analyze(&t.events, &WindowConfig::new(vec![4]));
        assert_eq!(s.windows[0].get(StreamKind::Opcode), &BTreeMap::from([(3, 1)]));
    }
}
