mod common;

fn report(what: &str, (n, fails): (usize, Vec<String>)) {
    for f in fails.iter().take(20) {
        eprintln!("{f}");
    }
    assert!(fails.is_empty(), "{what}: {} of {n} vectors failed", fails.len());
}

#[test]
fn decode_matches_assembler() {
    let r = common::check_decode();
    assert!(r.0 >= 400);
    report("decode", r);
}

#[test]
fn execution_matches_reference() {
    let r = common::check_isa();
    assert!(r.0 >= 200);
    report("isa", r);
}
