//! End-to-end acceptance checks, one test per criterion. Each prints a
//! single `criterion N: PASS|FAIL ...` line.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slotsim::bitcache::sizing_report;
use slotsim::disamb::{LatencyConfig, SlotTable};
use slotsim::fabric::{port_width, BitMatrix, ConfigChain};
use slotsim::groups::GroupTable;
use slotsim::harness::{
    build_pairs, bundled_benches, classify_all, mean, multi_grid, sweep_multi, sweep_single, BenchSpec, ClassLabel,
    Classification, PairRow, Series, Target, DEFAULT_THRESHOLD, MULTI_SLOTS, MULTI_TIMERS, SINGLE_GRID, SINGLE_SLOTS,
};
use slotsim::os::{Baseline, SchedConfig};
use slotsim::reuse::{analyze, WindowConfig};
use slotsim::sim::{run_program, Core, CoreConfig};

fn verdict(n: u32, ok: bool, detail: String) {
    println!("criterion {n}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn slotted(slots: usize, miss: u64, hit: u64) -> CoreConfig {
    CoreConfig::default().with_disamb(LatencyConfig { num_slots: slots, miss_latency: miss, hit_latency: hit })
}

fn classified() -> Vec<(BenchSpec, Classification)> {
    let benches = bundled_benches();
    let cls = classify_all(&benches, DEFAULT_THRESHOLD, &CoreConfig::default(), &GroupTable::default());
    benches.into_iter().zip(cls.into_iter().map(Result::unwrap)).collect()
}

#[test]
fn criterion_01_zero_latency_equivalence() {
    let t0 = Instant::now();
    let g = GroupTable::default();
    let mut bad = Vec::new();
    let benches = bundled_benches();
    for b in &benches {
        let img = b.image(Target::Rv32imf);
        let base = run_program(img, &CoreConfig::default(), &g).unwrap().cycles;
        for slots in [1, 4, 10] {
            let got = run_program(img, &slotted(slots, 0, 0), &g).unwrap().cycles;
            if got != base {
                bad.push(format!("{} slots={slots}: {got} vs {base}", b.name));
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    verdict(1, bad.is_empty() && secs < 60.0, format!("{} kernels, {secs:.2}s, mismatches {bad:?}", benches.len()));
}

#[test]
fn criterion_02_compulsory_miss_accounting() {
    let g = GroupTable::default();
    let mut checked = 0;
    let mut bad = Vec::new();
    for b in bundled_benches() {
        let img = b.image(Target::Rv32imf);
        let mut core = Core::with_program(CoreConfig::default(), g.clone(), img).unwrap();
        core.enable_trace();
        let base = core.run().unwrap().cycles;
        let distinct: BTreeSet<_> = core.take_trace().iter().filter_map(|t| g.classify(t.kind)).collect();
        if distinct.is_empty() {
            continue;
        }
        checked += 1;
        for l in [10, 50, 250] {
            let got = run_program(img, &slotted(10, l, 0), &g).unwrap().cycles;
            let want = base + distinct.len() as u64 * l;
            if got != want {
                bad.push(format!("{} L={l}: {got} vs {want}", b.name));
            }
        }
    }
    verdict(2, checked >= 3 && bad.is_empty(), format!("{checked} kernels x 3 latencies, mismatches {bad:?}"));
}

#[test]
fn criterion_03_lru_stack_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut violations = 0;
    for _ in 0..100 {
        let alphabet = rng.random_range(2..=16);
        let trace: Vec<u32> = (0..10_000).map(|_| rng.random_range(0..alphabet)).collect();
        let misses: Vec<u64> = (1..=10)
            .map(|n| {
                let mut t = SlotTable::new(LatencyConfig { num_slots: n, miss_latency: 1, hit_latency: 0 });
                for (i, &tag) in trace.iter().enumerate() {
                    t.access(tag, i as u64);
                }
                t.total_misses()
            })
            .collect();
        violations += misses.windows(2).filter(|w| w[1] > w[0]).count();
    }
    verdict(3, violations == 0, format!("100 traces x N=1..9, {violations} violations"));
}

#[test]
fn criterion_04_fabric_arithmetic() {
    let w50 = port_width(91_200, 50);
    let w250 = port_width(91_200, 250);
    let cache = sizing_report(64, 12 * 1024).total_bytes;
    let ok = w50 == 1824 && w250 == 365 && cache == 768 * 1024;
    verdict(4, ok, format!("port_width(91200,50)={w50}, port_width(91200,250)={w250}, 64 x 12 KB = {} KB", cache / 1024));
}

#[test]
fn criterion_05_shift_chain_bijection() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad = 0;
    for _ in 0..1000 {
        let m = BitMatrix::from_fn(50, 1824, || rng.random());
        let mut chain = ConfigChain::new(50, 1824);
        if chain.load(&m) != Ok(50) || chain.read_back() != m {
            bad += 1;
        }
    }
    verdict(5, bad == 0, format!("1000 bitstreams of 50x1824, {bad} mismatches"));
}

#[test]
fn criterion_06_reuse_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cfg = WindowConfig::powers_of_two(6, 15);
    let mut bad = 0;
    let mut longest = 0;
    for i in 0..50 {
        let len = if i == 0 { 1_000_000 } else { 10f64.powf(rng.random_range(2.0..6.0)) as usize };
        longest = longest.max(len);
        let events = common::random_events(&mut rng, len);
        if analyze(&events, &cfg) != common::brute_force_reuse(&events, &cfg) {
            bad += 1;
        }
    }
    verdict(6, bad == 0, format!("50 traces up to {longest} events, windows 2^6..2^15, {bad} mismatches"));
}

fn class_mean(rows: &[PairRow], keep: impl Fn(&PairRow) -> bool) -> (f64, usize) {
    let v: Vec<f64> = rows.iter().filter(|r| keep(r)).map(|r| r.avg_speedup(Baseline::Paired)).collect();
    (mean(&v), v.len())
}

#[test]
fn criterion_07_timer_and_slot_ordering() {
    let benches = classified();
    let plans = build_pairs(&benches);
    let grid = multi_grid(&MULTI_SLOTS, &MULTI_TIMERS, 50, 0);
    let rows = sweep_multi(&plans, &grid, &CoreConfig::default(), &GroupTable::default(), &SchedConfig::default()).unwrap();
    let slots_of = |r: &PairRow| r.summary.latency.unwrap().num_slots;
    let mut ok = true;
    let mut detail = Vec::new();
    let mut classes: Vec<_> = plans.iter().map(|p| p.class).collect();
    classes.dedup();
    for class in classes {
        let at = |timer| class_mean(&rows, |r| r.class == class && slots_of(r) == 4 && r.summary.timer_period == timer);
        let (fast, n) = at(1_000);
        let (slow, _) = at(20_000);
        ok &= n > 0 && slow >= fast;
        detail.push(format!("{} n={n} 20K {slow:.4} vs 1K {fast:.4}", class.name()));
    }
    for timer in MULTI_TIMERS {
        let m: Vec<(f64, usize)> = MULTI_SLOTS
            .iter()
            .map(|&s| class_mean(&rows, |r| r.disjoint && slots_of(r) == s && r.summary.timer_period == timer))
            .collect();
        ok &= m[0].1 > 0 && m[2].0 >= m[1].0 && m[1].0 >= m[0].0;
        detail.push(format!("disjoint n={} timer {timer}: 8 {:.4} >= 4 {:.4} >= 2 {:.4}", m[0].1, m[2].0, m[1].0, m[0].0));
    }
    verdict(7, ok, format!("{} pairs; {}", plans.len(), detail.join("; ")));
}

#[test]
fn criterion_08_single_program_ordering() {
    let benches = classified();
    let rows = sweep_single(&benches, &SINGLE_GRID, SINGLE_SLOTS, &CoreConfig::default(), &GroupTable::default());
    let mut ok = true;
    let mut checked = Vec::new();
    for b in rows.iter().filter(|b| b.label == ClassLabel::ImprovedByBoth) {
        let s = |miss, hit| b.slowdown(Series::Slotted { miss, hit }).unwrap();
        let chain = [s(250, 16), s(50, 4), s(50, 0), s(10, 0), 1.0];
        let monotone = chain.windows(2).all(|w| w[0] >= w[1]);
        let rv32i = b.slowdown(Series::Fixed(Target::Rv32i)).unwrap();
        let slowest = Target::ALL.iter().all(|&t| b.slowdown(Series::Fixed(t)).unwrap() <= rv32i);
        ok &= monotone && slowest;
        checked.push(format!("{}{}", b.bench, if monotone && slowest { "" } else { "(x)" }));
    }
    ok &= !checked.is_empty();
    verdict(8, ok, format!("ImprovedByBoth kernels: {}", checked.join(" ")));
}

#[test]
fn criterion_09_isa_conformance() {
    let (n, fails) = common::check_isa();
    let (d, dfails) = common::check_decode();
    for f in fails.iter().chain(&dfails).take(20) {
        eprintln!("{f}");
    }
    let ok = n >= 200 && fails.is_empty() && dfails.is_empty();
    verdict(9, ok, format!("{n} execution vectors, {d} decode vectors, {} failures", fails.len() + dfails.len()));
}

fn cli(args: &[&str], cwd: &Path) {
    let out = Command::new(env!("CARGO_BIN_EXE_slotsim")).args(args).current_dir(cwd).output().unwrap();
    assert!(out.status.success(), "slotsim {args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn criterion_10_cli_determinism() {
    let work = tempfile::tempdir().unwrap();
    let w = work.path();
    std::fs::write(w.join("random.cfg"), "policy = random\nseed = 11\nslots = 2\nmiss_latency = 250\nhit_latency = 16\n").unwrap();
    cli(&["run", "--bench", "st", "--trace", "st.trace", "-o", "seed"], w);
    let commands: Vec<Vec<&str>> = vec![
        vec!["run", "--bench", "nbody"],
        vec!["--config", "random.cfg", "run", "--bench", "minver"],
        vec!["classify"],
        vec!["sweep-single"],
        vec!["sweep-multi"],
        vec!["analyze-trace", "st.trace"],
        vec!["analyze-trace", "--bench", "crc32,poly,fir"],
        vec!["analyze-trace", "--oversubscribe", "4", "--windows", "2"],
        vec!["fabric-calc", "--luts", "1680", "--lut-type", "4", "--latency", "50"],
    ];
    let mut differing = Vec::new();
    let mut files = 0;
    for (i, args) in commands.iter().enumerate() {
        let runs: Vec<_> = ["a", "b"]
            .iter()
            .map(|tag| {
                let out = format!("out{i}{tag}");
                let mut full = args.clone();
                full.extend(["--out-dir", &out]);
                cli(&full, w);
                snapshot(&w.join(&out))
            })
            .collect();
        files += runs[0].len();
        if runs[0].is_empty() || runs[0] != runs[1] {
            differing.push(args.join(" "));
        }
    }
    verdict(10, differing.is_empty(), format!("{} commands, {files} CSV files, differing: {differing:?}", commands.len()));
}
