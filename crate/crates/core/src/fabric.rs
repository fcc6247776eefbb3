//! Fabric sizing: bitstream size per LUT type, configuration port width,
//! and a shift-register model of the configuration chain.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::FabricError;

/// LUT count of the calibrated reference fabric.
pub const REFERENCE_LUTS: u64 = 1680;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LutType {
    Lut4,
    Lut5,
    Lut6,
}

impl LutType {
    pub const ALL: [LutType; 3] = [LutType::Lut4, LutType::Lut5, LutType::Lut6];

    pub fn inputs(self) -> u32 {
        match self {
            LutType::Lut4 => 4,
            LutType::Lut5 => 5,
            LutType::Lut6 => 6,
        }
    }

    /// Configuration bits of the reference fabric built from this LUT type.
    pub fn reference_bits(self) -> u64 {
        match self {
            LutType::Lut4 => 91_200,
            LutType::Lut5 => 114_000,
            LutType::Lut6 => 149_000,
        }
    }
}

impl fmt::Display for LutType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-LUT", self.inputs())
    }
}

impl FromStr for LutType {
    type Err = FabricError;

    /// Accepts `4`, `4-LUT`, `lut4` and similar spellings.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        let digits = t.trim_start_matches("lut").trim_end_matches("-lut").trim_end_matches("lut").trim_matches('-');
        match digits {
            "4" => Ok(LutType::Lut4),
            "5" => Ok(LutType::Lut5),
            "6" => Ok(LutType::Lut6),
            _ => Err(FabricError::UnknownLutType(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FabricSpec {
    pub lut_count: u64,
    pub lut_type: LutType,
}

impl FabricSpec {
    pub fn bits_per_fabric(&self) -> u64 {
        bitstream_bits(self)
    }
}

/// Linear in LUT count, rounded up to whole bits.
pub fn bitstream_bits(spec: &FabricSpec) -> u64 {
    (spec.lut_count * spec.lut_type.reference_bits()).div_ceil(REFERENCE_LUTS)
}

pub fn port_width(bits: u64, latency_cycles: u64) -> u64 {
    assert!(latency_cycles >= 1, "reconfiguration latency must be at least one cycle");
    bits.div_ceil(latency_cycles)
}

/// Row-major bit matrix; each row is packed into 64-bit words, LSB first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        BitMatrix { rows, cols, words: vec![0; rows * cols.div_ceil(64)] }
    }

    /// Fills from `next_word`, masking the unused tail of each row.
    pub fn from_fn(rows: usize, cols: usize, mut next_word: impl FnMut() -> u64) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        let wpr = m.words_per_row();
        let tail = cols % 64;
        for r in 0..rows {
            for w in 0..wpr {
                let mut v = next_word();
                if w == wpr - 1 && tail != 0 {
                    v &= (1u64 << tail) - 1;
                }
                m.words[r * wpr + w] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn words_per_row(&self) -> usize {
        self.cols.div_ceil(64)
    }

    pub fn row(&self, r: usize) -> &[u64] {
        let w = self.words_per_row();
        &self.words[r * w..(r + 1) * w]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.row(r)[c / 64] >> (c % 64) & 1 != 0
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = self.words_per_row();
        let word = &mut self.words[r * w + c / 64];
        if v {
            *word |= 1 << (c % 64);
        } else {
            *word &= !(1 << (c % 64));
        }
    }
}

/// A `depth`-stage shift register of `width`-bit configuration words.
/// Each cycle a word enters at stage 0 and every stage moves down one;
/// the word in the last stage leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigChain {
    depth: usize,
    width: usize,
    stages: VecDeque<Vec<u64>>,
    cycles: u64,
}

impl ConfigChain {
    pub fn new(depth: usize, width: usize) -> ConfigChain {
        assert!(depth >= 1 && width >= 1, "chain needs at least one stage and one bit");
        let stages = (0..depth).map(|_| vec![0; width.div_ceil(64)]).collect();
        ConfigChain { depth, width, stages, cycles: 0 }
    }

    /// Chain sized to load `bits` in `latency_cycles` cycles.
    pub fn for_latency(bits: u64, latency_cycles: u64) -> ConfigChain {
        ConfigChain::new(latency_cycles as usize, port_width(bits, latency_cycles) as usize)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn capacity_bits(&self) -> u64 {
        (self.depth * self.width) as u64
    }

    pub fn cycles(&self) -> u64 {
        self.cycles
    }

    /// One configuration cycle; returns the word shifted out.
    pub fn shift(&mut self, word: &[u64]) -> Vec<u64> {
        assert_eq!(word.len(), self.width.div_ceil(64));
        self.cycles += 1;
        self.stages.push_front(word.to_vec());
        self.stages.pop_back().unwrap()
    }

    /// Shifts a full bitstream in, last row first, so that after exactly
    /// `depth` cycles stage i holds row i. Returns the cycles taken.
    pub fn load(&mut self, bitstream: &BitMatrix) -> Result<u64, FabricError> {
        if bitstream.rows != self.depth || bitstream.cols != self.width {
            return Err(FabricError::Shape {
                rows: bitstream.rows,
                cols: bitstream.cols,
                depth: self.depth,
                width: self.width,
            });
        }
        for r in (0..self.depth).rev() {
            self.shift(bitstream.row(r));
        }
        Ok(self.depth as u64)
    }

    /// The configuration currently held, stage 0 as row 0.
    pub fn read_back(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.depth, self.width);
        let w = m.words_per_row();
        for (r, stage) in self.stages.iter().enumerate() {
            m.words[r * w..(r + 1) * w].copy_from_slice(stage);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(n: u64, t: LutType) -> u64 {
        bitstream_bits(&FabricSpec { lut_count: n, lut_type: t })
    }

    #[test]
    fn calibrated_sizes() {
        assert_eq!(bits(1680, LutType::Lut4), 91_200);
        assert_eq!(bits(1680, LutType::Lut6), 149_000);
        assert_eq!(bits(840, LutType::Lut4), 45_600);
    }

    #[test]
    fn port_widths() {
        assert_eq!(port_width(91_200, 50), 1824);
        assert_eq!(port_width(91_200, 250), 365);
        assert_eq!(port_width(91_200, 1), 91_200);
    }

    #[test]
    fn lut_type_spellings() {
        assert_eq!("4".parse::<LutType>().unwrap(), LutType::Lut4);
        assert_eq!("6-LUT".parse::<LutType>().unwrap(), LutType::Lut6);
        assert_eq!("lut5".parse::<LutType>().unwrap(), LutType::Lut5);
        assert_eq!("7".parse::<LutType>(), Err(FabricError::UnknownLutType("7".into())));
    }

    #[test]
    fn single_stage_loads_in_one_shift() {
        let mut c = ConfigChain::new(1, 100);
        let mut m = BitMatrix::zeros(1, 100);
        m.set(0, 99, true);
        assert_eq!(c.load(&m).unwrap(), 1);
        assert_eq!(c.read_back(), m);
    }

    #[test]
    fn second_load_overwrites() {
        let mut c = ConfigChain::new(3, 70);
        let mut x = 1u64;
        let mut next = || {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1);
            x
        };
        let a = BitMatrix::from_fn(3, 70, &mut next);
        let b = BitMatrix::from_fn(3, 70, &mut next);
        c.load(&a).unwrap();
        c.load(&b).unwrap();
        assert_eq!(c.read_back(), b);
    }

    #[test]
    fn shape_mismatch() {
        let mut c = ConfigChain::new(50, 1824);
        assert_eq!(
            c.load(&BitMatrix::zeros(49, 1824)),
            Err(FabricError::Shape { rows: 49, cols: 1824, depth: 50, width: 1824 })
        );
    }
}
