//! CSV report builders. Column order is fixed and floats use six decimals,
//! so identical inputs give byte-identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::classify::Classification;
use super::sweep::{geomean, mean, PairRow, Series, SweepBench};
use crate::os::Baseline;
use crate::reuse::{quantiles, OpcodeMode, ReuseStats, StreamKind, SummaryRow};
use crate::error::HarnessError;

fn f6(x: f64) -> String {
    format!("{x:.6}")
}

pub fn fig2_csv(rows: &[Classification]) -> String {
    let mut s = String::from("bench,class,cycles_rv32i,cycles_rv32im,cycles_rv32if,cycles_rv32imf,speedup_im,speedup_if,groups_used\n");
    for c in rows {
        let groups: Vec<String> = c.groups_used.iter().map(|g| format!("G{g}")).collect();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            c.bench,
            c.label,
            c.cycles[0],
            c.cycles[1],
            c.cycles[2],
            c.cycles[3],
            f6(c.speedup_im),
            f6(c.speedup_if),
            groups.join(" ")
        );
    }
    s
}

/// Per-benchmark cells, then `geomean` and `mean` rows per series over the
/// benchmarks whose cell succeeded.
pub fn fig3_csv(rows: &[SweepBench], series: &[Series]) -> String {
    let mut s = String::from("bench,class,series,cycles,slowdown,relative_perf,misses,status\n");
    for b in rows {
        for (ser, cell) in &b.cells {
            match cell {
                Ok(c) => {
                    let cycles = c.cycles.map_or(String::new(), |v| v.to_string());
                    let misses = c.misses.map_or(String::new(), |v| v.to_string());
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{},{},ok",
                        b.bench,
                        b.label,
                        ser,
                        cycles,
                        f6(c.slowdown),
                        f6(c.relative_perf()),
                        misses
                    );
                }
                Err(e) => {
                    let msg = e.to_string().replace(',', ";");
                    let _ = writeln!(s, "{},{},{},,,,,error: {}", b.bench, b.label, ser, msg);
                }
            }
        }
    }
    for ser in series {
        let v: Vec<f64> = rows.iter().filter_map(|b| b.slowdown(*ser)).collect();
        let _ = writeln!(s, "geomean,all,{},,{},{},,n={}", ser, f6(geomean(&v)), f6(1.0 / geomean(&v)), v.len());
        let _ = writeln!(s, "mean,all,{},,{},{},,n={}", ser, f6(mean(&v)), f6(1.0 / mean(&v)), v.len());
    }
    s
}

fn series_key(r: &PairRow) -> (u8, usize, u64) {
    let l = r.summary.latency.map_or(0, |l| l.num_slots);
    (r.class as u8, l, r.summary.timer_period)
}

/// One row per matrix cell. Rows are grouped by series (pair class, slots,
/// timer) and sorted by average speedup within each series.
pub fn fig4_csv(rows: &[PairRow], baseline: Baseline) -> String {
    let mut s = String::from(
        "pair_id,taskA,taskB,slots,miss_lat,hit_lat,timer_period,cycles_A,cycles_B,speedup_A,speedup_B,avg_speedup,misses_total,baseline,speedup_A_solo,speedup_B_solo,pair_class,disjoint,switches\n",
    );
    let mut sorted: Vec<&PairRow> = rows.iter().collect();
    sorted.sort_by(|a, b| {
        series_key(a)
            .cmp(&series_key(b))
            .then(a.avg_speedup(baseline).total_cmp(&b.avg_speedup(baseline)))
            .then(a.pair_id.cmp(&b.pair_id))
    });
    for r in sorted {
        let p = &r.summary;
        let l = p.latency.unwrap_or(crate::disamb::LatencyConfig { num_slots: 0, miss_latency: 0, hit_latency: 0 });
        let sp = p.speedups(baseline);
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.pair_id,
            p.task_a,
            p.task_b,
            l.num_slots,
            l.miss_latency,
            l.hit_latency,
            p.timer_period,
            p.cycles[0],
            p.cycles[1],
            f6(sp[0]),
            f6(sp[1]),
            f6(p.avg_speedup(baseline)),
            p.misses_total,
            baseline.name(),
            f6(p.speedup_solo[0]),
            f6(p.speedup_solo[1]),
            r.class.name(),
            r.disjoint,
            p.switches
        );
    }
    s
}

/// Mean of the per-pair average speedups for each (class, subset, slots,
/// timer), both arithmetic and geometric.
pub fn fig4_summary_csv(rows: &[PairRow], baseline: Baseline) -> String {
    let mut s = String::from("pair_class,subset,slots,timer_period,pairs,mean_avg_speedup,geomean_avg_speedup\n");
    let mut keys: Vec<(u8, usize, u64, &str)> = rows.iter().map(|r| {
        let (c, sl, t) = series_key(r);
        (c, sl, t, r.class.name())
    }).collect();
    keys.sort();
    keys.dedup();
    for (c, slots, timer, name) in keys {
        for subset in ["all", "disjoint"] {
            let v: Vec<f64> = rows
                .iter()
                .filter(|r| series_key(r) == (c, slots, timer) && (subset == "all" || r.disjoint))
                .map(|r| r.avg_speedup(baseline))
                .collect();
            if v.is_empty() {
                continue;
            }
            let _ = writeln!(s, "{name},{subset},{slots},{timer},{},{},{}", v.len(), f6(mean(&v)), f6(geomean(&v)));
        }
    }
    s
}

pub fn mode_name(m: OpcodeMode) -> &'static str {
    match m {
        OpcodeMode::PerKind => "kind",
        OpcodeMode::PerGroup => "group",
    }
}

/// The plain summary schema: one row per (stream kind, window size).
pub fn reuse_summary_csv(rows: &[SummaryRow]) -> String {
    let mut s = String::from("stream_kind,window_size,median,q1,q3,max\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{},{},{}", r.kind.name(), r.n, r.q.median, r.q.q1, r.q.q3, r.q.max);
    }
    s
}

/// Labelled reuse statistics: `(label, opcode mode, stats)`.
pub type Labelled<'a> = (&'a str, OpcodeMode, &'a ReuseStats);

pub fn fig7_csv(items: &[Labelled<'_>]) -> String {
    let mut s = String::from("source,opcode_mode,stream_kind,window_size,windows,median,q1,q3,max\n");
    for (label, mode, stats) in items {
        for kind in StreamKind::ALL {
            for w in &stats.windows {
                let Ok(q) = quantiles(w.get(kind)) else { continue };
                let _ = writeln!(
                    s,
                    "{label},{},{},{},{},{},{},{},{}",
                    mode_name(*mode),
                    kind.name(),
                    w.n,
                    w.windows(),
                    q.median,
                    q.q1,
                    q.q3,
                    q.max
                );
            }
        }
    }
    s
}

pub fn distribution_csv(items: &[Labelled<'_>]) -> String {
    let mut s = String::from("source,opcode_mode,stream_kind,window_size,cardinality,occurrences\n");
    for (label, mode, stats) in items {
        for kind in StreamKind::ALL {
            for w in &stats.windows {
                for (card, count) in w.get(kind) {
                    let _ = writeln!(s, "{label},{},{},{},{card},{count}", mode_name(*mode), kind.name(), w.n);
                }
            }
        }
    }
    s
}

/// `(k, instructions, stats)` per task count.
pub fn fig8_csv(points: &[(usize, usize, &ReuseStats)], mode: OpcodeMode) -> String {
    let mut s = String::from("tasks,opcode_mode,stream_kind,window_size,instructions,windows,median,q1,q3,max\n");
    for (k, instrs, stats) in points {
        for kind in StreamKind::ALL {
            for w in &stats.windows {
                let Ok(q) = quantiles(w.get(kind)) else { continue };
                let _ = writeln!(
                    s,
                    "{k},{},{},{},{instrs},{},{},{},{},{}",
                    mode_name(mode),
                    kind.name(),
                    w.n,
                    w.windows(),
                    q.median,
                    q.q1,
                    q.q3,
                    q.max
                );
            }
        }
    }
    s
}

/// Writes each `(file name, contents)` under `dir`, creating it first.
pub fn emit_reports(files: &[(String, String)], dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    std::fs::create_dir_all(dir).map_err(|source| HarnessError::Io { path: dir.to_path_buf(), source })?;
    let mut written = Vec::new();
    for (name, body) in files {
        let path = dir.join(name);
        std::fs::write(&path, body).map_err(|source| HarnessError::Io { path: path.clone(), source })?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_results_are_header_only() {
        assert_eq!(fig2_csv(&[]).lines().count(), 1);
        assert_eq!(fig4_csv(&[], Baseline::Paired).lines().count(), 1);
        assert_eq!(fig7_csv(&[]).lines().count(), 1);
        assert_eq!(fig3_csv(&[], &[]).lines().count(), 1);
    }

    #[test]
    fn io_errors_name_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("blocked");
        std::fs::write(&blocker, "").unwrap();
        let err = emit_reports(&[("x.csv".into(), String::new())], &blocker).unwrap_err();
        assert!(err.to_string().contains("blocked"), "{err}");
    }
}
