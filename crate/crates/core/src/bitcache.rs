//! L1 bitstream cache consulted on disambiguator misses.

use crate::groups::Tag;

pub const DEFAULT_BLOCKS: usize = 64;
pub const DEFAULT_BITSTREAM_BYTES: u64 = 12 * 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FetchOutcome {
    CacheHit,
    CacheMiss { extra_cycles: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BitcacheStats {
    pub hits: u64,
    pub misses: u64,
    pub extra_cycles: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizingReport {
    pub blocks: usize,
    pub bitstream_bytes: u64,
    pub total_bytes: u64,
}

/// Fully-associative LRU store of bitstreams keyed by tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitstreamCache {
    blocks: usize,
    penalty: u64,
    bitstream_bytes: u64,
    /// (tag, last use) pairs; never longer than `blocks`.
    resident: Vec<(Tag, u64)>,
    seq: u64,
    stats: BitcacheStats,
}

impl BitstreamCache {
    pub fn new(blocks: usize, penalty: u64) -> BitstreamCache {
        BitstreamCache::with_bitstream_bytes(blocks, penalty, DEFAULT_BITSTREAM_BYTES)
    }

    pub fn with_bitstream_bytes(blocks: usize, penalty: u64, bitstream_bytes: u64) -> BitstreamCache {
        assert!(blocks >= 1, "bitstream cache needs at least one block");
        BitstreamCache { blocks, penalty, bitstream_bytes, resident: Vec::with_capacity(blocks), seq: 0, stats: BitcacheStats::default() }
    }

    pub fn fetch(&mut self, tag: Tag) -> FetchOutcome {
        self.seq += 1;
        if let Some(entry) = self.resident.iter_mut().find(|(t, _)| *t == tag) {
            entry.1 = self.seq;
            self.stats.hits += 1;
            return FetchOutcome::CacheHit;
        }
        if self.resident.len() == self.blocks {
            let lru = (0..self.resident.len()).min_by_key(|&i| self.resident[i].1).unwrap();
            self.resident.swap_remove(lru);
        }
        self.resident.push((tag, self.seq));
        self.stats.misses += 1;
        self.stats.extra_cycles += self.penalty;
        FetchOutcome::CacheMiss { extra_cycles: self.penalty }
    }

    pub fn is_resident(&self, tag: Tag) -> bool {
        self.resident.iter().any(|(t, _)| *t == tag)
    }

    pub fn len(&self) -> usize {
        self.resident.len()
    }

    pub fn is_empty(&self) -> bool {
        self.resident.is_empty()
    }

    pub fn stats(&self) -> BitcacheStats {
        self.stats
    }

    pub fn sizing_report(&self) -> SizingReport {
        sizing_report(self.blocks, self.bitstream_bytes)
    }
}

pub fn sizing_report(blocks: usize, bitstream_bytes: u64) -> SizingReport {
    SizingReport { blocks, bitstream_bytes, total_bytes: blocks as u64 * bitstream_bytes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compulsory_then_hit() {
        let mut c = BitstreamCache::new(DEFAULT_BLOCKS, 30);
        assert_eq!(c.fetch(5), FetchOutcome::CacheMiss { extra_cycles: 30 });
        assert_eq!(c.fetch(5), FetchOutcome::CacheHit);
    }

    #[test]
    fn cyclic_thrash_one_over_capacity() {
        let mut c = BitstreamCache::new(64, 1);
        for round in 0..5 {
            for t in 0..65 {
                assert!(matches!(c.fetch(t), FetchOutcome::CacheMiss { .. }), "round {round} tag {t}");
            }
        }
        assert_eq!(c.stats().hits, 0);
        assert_eq!(c.len(), 64);
    }

    #[test]
    fn sizing() {
        assert_eq!(sizing_report(64, 12 * 1024).total_bytes, 768 * 1024);
        assert_eq!(sizing_report(1, 12 * 1024).total_bytes, 12 * 1024);
        assert_eq!(sizing_report(64, 91_200 / 8).total_bytes, 729_600);
    }
}
