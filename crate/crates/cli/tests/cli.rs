use std::path::Path;
use std::process::{Command, Output};

use slotsim::isa::Kind;
use slotsim::synth::loop_program;

fn slotsim(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slotsim")).args(args).current_dir(cwd).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn runs_a_flat_binary() {
    let dir = tempfile::tempdir().unwrap();
    let prog = loop_program(&[Kind::Mul, Kind::FaddS], 5);
    assert_eq!(prog.segments.len(), 1);
    std::fs::write(dir.path().join("loop.bin"), &prog.segments[0].data).unwrap();
    let o = slotsim(&["run", "loop.bin", "--load-addr", "0x0"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("out/run.csv")).unwrap();
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "loop.bin");
    assert_eq!(row[7], "2", "two groups, two compulsory misses: {csv}");
}

#[test]
fn fabric_calc_prints_geometry() {
    let dir = tempfile::tempdir().unwrap();
    let o = slotsim(&["fabric-calc", "--luts", "1680", "--lut-type", "4", "--latency", "250"], dir.path());
    let out = stdout(&o);
    assert!(out.contains("bitstream_bits 91200"), "{out}");
    assert!(out.contains("port_width 365"), "{out}");
    assert!(out.contains("chain 250 stages x 365 bits"), "{out}");
}

#[test]
fn config_errors_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.cfg"), "slots = 4\nslotz = 5\n").unwrap();
    let o = slotsim(&["--config", "bad.cfg", "classify"], dir.path());
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.cfg") && err.contains("line 2") && err.contains("slotz"), "{err}");
}

#[test]
fn group_table_path_is_relative_to_config() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir(dir.path().join("conf")).unwrap();
    std::fs::write(dir.path().join("conf/run.cfg"), "group_table = groups.txt\n").unwrap();
    std::fs::write(dir.path().join("conf/groups.txt"), "G0: mul\n").unwrap();
    let o = slotsim(&["--config", "conf/run.cfg", "run", "--bench", "crc32"], dir.path());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(!o.status.success() && err.contains("groups.txt"), "{err}");
}

#[test]
fn unknown_kernel_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = slotsim(&["classify", "--bench", "crc32,nope"], dir.path());
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
}
