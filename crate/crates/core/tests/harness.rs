use std::sync::OnceLock;

use slotsim::groups::GroupTable;
use slotsim::harness::{
    bundled_bench, bundled_benches, classify_all, classify_bench, emit_reports, fig2_csv, fig3_csv, single_series,
    sweep_single, BenchSpec, ClassLabel, Classification, Config, Series, SweepBench, Target, DEFAULT_THRESHOLD,
    SINGLE_GRID, SINGLE_SLOTS,
};
use slotsim::sim::{run_program, CoreConfig};

fn classified() -> &'static [(BenchSpec, Classification)] {
    static CELL: OnceLock<Vec<(BenchSpec, Classification)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let benches = bundled_benches();
        let cls = classify_all(&benches, DEFAULT_THRESHOLD, &CoreConfig::default(), &GroupTable::default());
        benches.into_iter().zip(cls.into_iter().map(Result::unwrap)).collect()
    })
}

fn swept() -> &'static [SweepBench] {
    static CELL: OnceLock<Vec<SweepBench>> = OnceLock::new();
    CELL.get_or_init(|| sweep_single(classified(), &SINGLE_GRID, SINGLE_SLOTS, &CoreConfig::default(), &GroupTable::default()))
}

fn label(name: &str) -> ClassLabel {
    classified().iter().find(|(b, _)| b.name == name).unwrap().1.label
}

#[test]
fn every_image_prints_the_same_thing() {
    let g = GroupTable::default();
    for b in bundled_benches() {
        let digests: Vec<String> =
            Target::ALL.iter().map(|&t| run_program(b.image(t), &CoreConfig::default(), &g).unwrap().digest()).collect();
        assert!(digests.windows(2).all(|w| w[0] == w[1]), "{}: {digests:?}", b.name);
        if let Some(want) = &b.expected_output {
            assert_eq!(&digests[0], want, "{}", b.name);
        }
    }
}

#[test]
fn console_output_matches_golden_digests() {
    let golden = include_str!("data/digests.txt");
    let names: Vec<&str> = golden.lines().map(|l| l.split_once(' ').unwrap().0).collect();
    assert_eq!(names, slotsim::harness::bundled_names());
    for line in golden.lines() {
        let (name, want) = line.split_once(' ').unwrap();
        let mut b = bundled_bench(name).unwrap();
        b.expected_output = Some(want.to_string());
        classify_bench(&b, DEFAULT_THRESHOLD, &CoreConfig::default(), &GroupTable::default()).unwrap();
    }
}

#[test]
fn kernel_classes() {
    assert_eq!(label("crc32"), ClassLabel::Insensitive);
    assert_eq!(label("sort"), ClassLabel::Insensitive);
    assert_eq!(label("matmul_int"), ClassLabel::ImprovedByM);
    assert_eq!(label("modexp"), ClassLabel::ImprovedByM);
    assert_eq!(label("nbody"), ClassLabel::ImprovedByBoth);
    assert_eq!(label("st"), ClassLabel::ImprovedByBoth);
    for (_, c) in classified() {
        assert!((c.speedup_im - c.cycles[0] as f64 / c.cycles[1] as f64).abs() < 1e-12);
        assert_eq!(c.label, ClassLabel::from_speedups(c.speedup_im, c.speedup_if, DEFAULT_THRESHOLD));
    }
}

#[test]
fn tampered_digest_is_rejected() {
    let mut b = bundled_bench("crc32").unwrap();
    b.expected_output = Some("00".repeat(32));
    let err = classify_bench(&b, DEFAULT_THRESHOLD, &CoreConfig::default(), &GroupTable::default()).unwrap_err();
    assert!(err.to_string().contains("crc32"), "{err}");
}

#[test]
fn zero_latency_sweep_is_flat() {
    let rows = sweep_single(classified(), &[(0, 0)], SINGLE_SLOTS, &CoreConfig::default(), &GroupTable::default());
    for b in &rows {
        assert_eq!(b.slowdown(Series::Slotted { miss: 0, hit: 0 }), Some(1.0), "{}", b.bench);
    }
}

#[test]
fn sweep_invariants() {
    for b in swept() {
        let fixed = |t| b.slowdown(Series::Fixed(t)).unwrap();
        let best = fixed(Target::Rv32im).min(fixed(Target::Rv32if));
        assert_eq!(b.slowdown(Series::MaxImIf), Some(best), "{}", b.bench);
        let zero_hit: Vec<f64> = [10, 50, 250].iter().map(|&m| b.slowdown(Series::Slotted { miss: m, hit: 0 }).unwrap()).collect();
        assert!(zero_hit.windows(2).all(|w| w[0] <= w[1]), "{}: {zero_hit:?}", b.bench);
        if b.label == ClassLabel::ImprovedByBoth {
            let i = fixed(Target::Rv32i);
            assert!(b.cells.iter().filter_map(|(_, c)| c.as_ref().ok()).all(|c| c.slowdown <= i), "{}", b.bench);
        }
    }
}

#[test]
fn slots_beat_fixed_subset_on_sporadic_float() {
    let st = swept().iter().find(|b| b.bench == "st").unwrap();
    let slotted = st.slowdown(Series::Slotted { miss: 50, hit: 0 }).unwrap();
    assert!(slotted < st.slowdown(Series::MaxImIf).unwrap());
}

#[test]
fn reports_have_one_row_per_cell() {
    let (_, c) = &classified()[0];
    assert_eq!(fig2_csv(std::slice::from_ref(c)).lines().count(), 2);
    let series = single_series(&SINGLE_GRID);
    let csv = fig3_csv(swept(), &series);
    assert_eq!(csv.lines().count(), 1 + swept().len() * series.len() + 2 * series.len());
    assert_eq!(csv, fig3_csv(swept(), &series));

    let dir = tempfile::tempdir().unwrap();
    let files = vec![("fig3.csv".to_string(), csv.clone())];
    let written = emit_reports(&files, dir.path()).unwrap();
    assert_eq!(std::fs::read_to_string(&written[0]).unwrap(), csv);
}

#[test]
fn config_feeds_the_core() {
    let cfg = Config::parse("slots = 2\nmiss_latency = 10\nm_ext = 8\n").unwrap();
    let b = bundled_bench("matmul_int").unwrap();
    let g = GroupTable::default();
    let slow = run_program(b.image(Target::Rv32imf), &cfg.slotted_core(), &g).unwrap();
    let base = run_program(b.image(Target::Rv32imf), &CoreConfig::default(), &g).unwrap();
    assert!(slow.cycles > base.cycles);
    assert_eq!(slow.digest(), base.digest());
}
