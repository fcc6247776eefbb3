//! The instruction disambiguator: a fully-associative, tag-indexed array of
//! reconfigurable slots.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitcache::{BitcacheStats, BitstreamCache, FetchOutcome};
use crate::groups::Tag;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatencyConfig {
    pub num_slots: usize,
    pub miss_latency: u64,
    pub hit_latency: u64,
}

impl Default for LatencyConfig {
    fn default() -> Self {
        LatencyConfig { num_slots: 4, miss_latency: 50, hit_latency: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Policy {
    #[default]
    Lru,
    Fifo,
    Random {
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Hit { latency: u64 },
    Miss { latency: u64, evicted: Option<Tag> },
}

impl Outcome {
    pub fn latency(&self) -> u64 {
        match *self {
            Outcome::Hit { latency } | Outcome::Miss { latency, .. } => latency,
        }
    }

    pub fn is_miss(&self) -> bool {
        matches!(self, Outcome::Miss { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TagStats {
    pub hits: u64,
    pub misses: u64,
    /// Times this tag was evicted from a slot.
    pub evictions: u64,
    pub stall_cycles: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub tag: Tag,
    /// Cycle stamp of the latest access.
    pub last_use: u64,
    seq_used: u64,
    seq_installed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotSnapshot {
    pub slots: Vec<Option<Slot>>,
    pub stats: BTreeMap<Tag, TagStats>,
    pub bitcache: Option<BitcacheStats>,
}

impl SlotSnapshot {
    pub fn occupied(&self) -> Vec<Tag> {
        self.slots.iter().flatten().map(|s| s.tag).collect()
    }

    pub fn totals(&self) -> TagStats {
        self.stats.values().fold(TagStats::default(), |a, s| TagStats {
            hits: a.hits + s.hits,
            misses: a.misses + s.misses,
            evictions: a.evictions + s.evictions,
            stall_cycles: a.stall_cycles + s.stall_cycles,
        })
    }
}

#[derive(Debug, Clone)]
pub struct SlotTable {
    config: LatencyConfig,
    policy: Policy,
    slots: Vec<Option<Slot>>,
    stats: BTreeMap<Tag, TagStats>,
    seq: u64,
    rng: ChaCha8Rng,
    bitcache: Option<BitstreamCache>,
}

impl SlotTable {
    pub fn new(config: LatencyConfig) -> SlotTable {
        SlotTable::with_policy(config, Policy::Lru)
    }

    pub fn with_policy(config: LatencyConfig, policy: Policy) -> SlotTable {
        assert!(config.num_slots >= 1, "disambiguator needs at least one slot");
        let seed = match policy {
            Policy::Random { seed } => seed,
            _ => 0,
        };
        SlotTable {
            config,
            policy,
            slots: vec![None; config.num_slots],
            stats: BTreeMap::new(),
            seq: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            bitcache: None,
        }
    }

    /// Places a bitstream cache behind the slots; its misses add to the
    /// miss latency.
    pub fn with_bitcache(mut self, cache: BitstreamCache) -> SlotTable {
        self.bitcache = Some(cache);
        self
    }

    pub fn config(&self) -> LatencyConfig {
        self.config
    }

    pub fn access(&mut self, tag: Tag, now: u64) -> Outcome {
        self.seq += 1;
        let seq = self.seq;
        if let Some(slot) = self.slots.iter_mut().flatten().find(|s| s.tag == tag) {
            slot.last_use = now;
            slot.seq_used = seq;
            let latency = self.config.hit_latency;
            let st = self.stats.entry(tag).or_default();
            st.hits += 1;
            st.stall_cycles += latency;
            return Outcome::Hit { latency };
        }

        let victim = match self.slots.iter().position(Option::is_none) {
            Some(empty) => empty,
            None => self.pick_victim(),
        };
        let evicted = self.slots[victim].map(|s| s.tag);
        if let Some(e) = evicted {
            self.stats.entry(e).or_default().evictions += 1;
        }
        self.slots[victim] = Some(Slot { tag, last_use: now, seq_used: seq, seq_installed: seq });

        let mut latency = self.config.miss_latency;
        if let Some(cache) = &mut self.bitcache {
            if let FetchOutcome::CacheMiss { extra_cycles } = cache.fetch(tag) {
                latency += extra_cycles;
            }
        }
        let st = self.stats.entry(tag).or_default();
        st.misses += 1;
        st.stall_cycles += latency;
        debug_assert!(self.slots_unique());
        Outcome::Miss { latency, evicted }
    }

    fn pick_victim(&mut self) -> usize {
        let occupied = self.slots.iter().map(|s| s.unwrap());
        match self.policy {
            Policy::Lru => occupied.enumerate().min_by_key(|(_, s)| s.seq_used).unwrap().0,
            Policy::Fifo => occupied.enumerate().min_by_key(|(_, s)| s.seq_installed).unwrap().0,
            Policy::Random { .. } => self.rng.random_range(0..self.slots.len()),
        }
    }

    fn slots_unique(&self) -> bool {
        let mut tags: Vec<Tag> = self.slots.iter().flatten().map(|s| s.tag).collect();
        let n = tags.len();
        tags.sort_unstable();
        tags.dedup();
        tags.len() == n
    }

    pub fn reset(&mut self, keep_stats: bool) {
        self.slots.iter_mut().for_each(|s| *s = None);
        if !keep_stats {
            self.stats.clear();
        }
    }

    pub fn snapshot(&self) -> SlotSnapshot {
        SlotSnapshot {
            slots: self.slots.clone(),
            stats: self.stats.clone(),
            bitcache: self.bitcache.as_ref().map(BitstreamCache::stats),
        }
    }

    pub fn stats(&self) -> &BTreeMap<Tag, TagStats> {
        &self.stats
    }

    pub fn total_misses(&self) -> u64 {
        self.stats.values().map(|s| s.misses).sum()
    }

    pub fn total_hits(&self) -> u64 {
        self.stats.values().map(|s| s.hits).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(slots: usize, miss: u64, hit: u64) -> SlotTable {
        SlotTable::new(LatencyConfig { num_slots: slots, miss_latency: miss, hit_latency: hit })
    }

    #[test]
    fn compulsory_miss_on_fresh_table() {
        let mut t = table(4, 50, 0);
        assert_eq!(t.access(0, 0), Outcome::Miss { latency: 50, evicted: None });
    }

    #[test]
    fn fifth_group_evicts_lru() {
        let mut t = table(4, 50, 0);
        for g in 0..4 {
            t.access(g, g as u64);
        }
        assert_eq!(t.access(4, 10), Outcome::Miss { latency: 50, evicted: Some(0) });
    }

    #[test]
    fn second_access_hits() {
        let mut t = table(4, 50, 4);
        t.access(0, 0);
        assert_eq!(t.access(0, 1), Outcome::Hit { latency: 4 });
        let s = t.snapshot();
        assert_eq!(s.stats[&0], TagStats { hits: 1, misses: 1, evictions: 0, stall_cycles: 54 });
    }

    #[test]
    fn reset_modes() {
        let mut t = table(2, 10, 0);
        t.access(3, 0);
        t.reset(true);
        assert_eq!(t.snapshot().occupied(), Vec::<Tag>::new());
        assert_eq!(t.total_misses(), 1);
        assert!(t.access(3, 1).is_miss());
        t.reset(false);
        assert_eq!(t.total_misses(), 0);
        assert_eq!(t.snapshot(), table(2, 10, 0).snapshot());
    }

    #[test]
    fn fifo_ignores_recency() {
        let mut t = SlotTable::with_policy(LatencyConfig { num_slots: 2, miss_latency: 1, hit_latency: 0 }, Policy::Fifo);
        t.access(1, 0);
        t.access(2, 1);
        t.access(1, 2);
        assert_eq!(t.access(3, 3), Outcome::Miss { latency: 1, evicted: Some(1) });
    }

    #[test]
    fn random_policy_is_seeded() {
        let run = |seed| {
            let mut t = SlotTable::with_policy(LatencyConfig { num_slots: 3, miss_latency: 1, hit_latency: 0 }, Policy::Random { seed });
            (0..200u64).map(|i| t.access((i * 7 % 11) as Tag, i)).collect::<Vec<_>>()
        };
        assert_eq!(run(9), run(9));
    }

    #[test]
    fn bitcache_penalty_adds_to_miss() {
        let mut t = table(1, 50, 0).with_bitcache(BitstreamCache::new(64, 20));
        assert_eq!(t.access(0, 0).latency(), 70);
        assert_eq!(t.access(1, 1).latency(), 70);
        assert_eq!(t.access(0, 2).latency(), 50);
    }
}
