use std::fmt;

use rayon::prelude::*;

use super::bench::{BenchSpec, Target};
use crate::disamb::LatencyConfig;
use crate::error::HarnessError;
use crate::groups::{GroupTable, TagMode};
use crate::sim::{run_program, CoreConfig, RunSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    ImprovedByBoth,
    ImprovedByM,
    ImprovedByF,
    Insensitive,
}

impl ClassLabel {
    pub fn name(self) -> &'static str {
        match self {
            ClassLabel::ImprovedByBoth => "both",
            ClassLabel::ImprovedByM => "M",
            ClassLabel::ImprovedByF => "F",
            ClassLabel::Insensitive => "insensitive",
        }
    }

    pub fn from_speedups(speedup_im: f64, speedup_if: f64, threshold: f64) -> ClassLabel {
        match (speedup_im > threshold, speedup_if > threshold) {
            (true, true) => ClassLabel::ImprovedByBoth,
            (true, false) => ClassLabel::ImprovedByM,
            (false, true) => ClassLabel::ImprovedByF,
            (false, false) => ClassLabel::Insensitive,
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub bench: String,
    pub label: ClassLabel,
    pub speedup_im: f64,
    pub speedup_if: f64,
    /// Cycles per image, in [`Target::ALL`] order.
    pub cycles: [u64; 4],
    pub digest: String,
    /// Default-table groups executed by the RV32IMF image.
    pub groups_used: Vec<u8>,
}

impl Classification {
    pub fn cycles_of(&self, t: Target) -> u64 {
        self.cycles[t as usize]
    }
}

/// Zero-latency disambiguator large enough to never evict: cycle-identical
/// to a core without one, but records which groups run.
fn observing(cfg: &CoreConfig, groups: &GroupTable) -> CoreConfig {
    CoreConfig {
        tag_mode: TagMode::Group,
        bitcache: None,
        ..cfg.clone().with_disamb(LatencyConfig { num_slots: groups.groups().len().max(1), miss_latency: 0, hit_latency: 0 })
    }
}

pub(crate) fn run_checked(
    bench: &BenchSpec,
    t: Target,
    cfg: &CoreConfig,
    groups: &GroupTable,
    digest: Option<&str>,
) -> Result<RunSummary, HarnessError> {
    let r = run_program(bench.image(t), cfg, groups).map_err(|source| HarnessError::Run {
        bench: bench.name.clone(),
        target: t.name().to_string(),
        source,
    })?;
    if let Some(d) = digest.or(bench.expected_output.as_deref()) {
        if r.digest() != d {
            return Err(HarnessError::OutputMismatch { bench: bench.name.clone(), target: t.name().to_string() });
        }
    }
    Ok(r)
}

pub fn classify_bench(
    bench: &BenchSpec,
    threshold: f64,
    cfg: &CoreConfig,
    groups: &GroupTable,
) -> Result<Classification, HarnessError> {
    let obs = observing(cfg, groups);
    let base = run_checked(bench, Target::Rv32i, &obs, groups, None)?;
    let digest = base.digest();
    let mut cycles = [base.cycles, 0, 0, 0];
    let mut groups_used = Vec::new();
    for t in &Target::ALL[1..] {
        let r = run_checked(bench, *t, &obs, groups, Some(&digest))?;
        cycles[*t as usize] = r.cycles;
        if *t == Target::Rv32imf {
            groups_used = r.per_tag.keys().map(|&g| g as u8).collect();
        }
    }
    let speedup = |t: Target| cycles[0] as f64 / cycles[t as usize] as f64;
    let (speedup_im, speedup_if) = (speedup(Target::Rv32im), speedup(Target::Rv32if));
    Ok(Classification {
        bench: bench.name.clone(),
        label: ClassLabel::from_speedups(speedup_im, speedup_if, threshold),
        speedup_im,
        speedup_if,
        cycles,
        digest,
        groups_used,
    })
}

/// Classifies in parallel; results keep the input order.
pub fn classify_all(
    benches: &[BenchSpec],
    threshold: f64,
    cfg: &CoreConfig,
    groups: &GroupTable,
) -> Vec<Result<Classification, HarnessError>> {
    benches.par_iter().map(|b| classify_bench(b, threshold, cfg, groups)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_from_threshold() {
        assert_eq!(ClassLabel::from_speedups(1.2, 1.3, 1.05), ClassLabel::ImprovedByBoth);
        assert_eq!(ClassLabel::from_speedups(1.2, 1.0, 1.05), ClassLabel::ImprovedByM);
        assert_eq!(ClassLabel::from_speedups(1.05, 2.0, 1.05), ClassLabel::ImprovedByF);
        assert_eq!(ClassLabel::from_speedups(1.0, 1.0, 1.05), ClassLabel::Insensitive);
    }
}
