"""Smoke test for the pyslotsim extension module.

Build and install first, e.g. `pip install --no-build-isolation ./crates/py`,
then run `python python/smoke_test.py` or `pytest python/`.
"""

import os
import tempfile

import pyslotsim


def test_bundled_run():
    names = pyslotsim.bundled_names()
    assert "crc32" in names and "nbody" in names
    hard = pyslotsim.run(bench="nbody")
    slotted = pyslotsim.run(bench="nbody", slots=4, miss_latency=50, hit_latency=0)
    assert slotted.digest == hard.digest
    assert slotted.cycles == hard.exec_cycles + slotted.slot_cycles + slotted.trap_cycles
    assert slotted.cycles > hard.cycles
    zero = pyslotsim.run(bench="nbody", slots=4, miss_latency=0, hit_latency=0)
    assert zero.cycles == hard.cycles


def test_classify():
    got = {c.bench: c.label for c in pyslotsim.classify(["crc32", "matmul_int", "nbody"])}
    assert got == {"crc32": "insensitive", "matmul_int": "M", "nbody": "both"}


def test_sweeps_are_csv():
    csv = pyslotsim.sweep_single_csv(["st"])
    lines = csv.splitlines()
    assert lines[0].startswith("bench,class,series")
    assert any(l.startswith("st,both,(50,0),") for l in lines)
    assert pyslotsim.sweep_single_csv(["st"]) == csv


def test_fabric():
    assert pyslotsim.bitstream_bits(1680, "4") == 91200
    assert pyslotsim.port_width(91200, 50) == 1824
    assert pyslotsim.port_width(91200, 250) == 365
    assert pyslotsim.sizing_report(64, 12 * 1024) == 768 * 1024


def test_slot_table():
    t = pyslotsim.SlotTable(2, miss_latency=10)
    assert [t.access(x) for x in [1, 2, 1, 3, 2]] == [
        (False, 10), (False, 10), (True, 0), (False, 10), (False, 10)]
    assert t.misses == 4 and t.hits == 1
    assert sorted(t.occupied()) == [2, 3]


def test_trace_analysis():
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "t.trace")
        with open(path, "w") as f:
            for i in range(256):
                f.write(f"0x{4 * (i % 32):08x},{'add' if i % 2 else 'lw'},{'0x100' if i % 2 == 0 else '-'}\n")
        rows = pyslotsim.analyze_trace(path, 6, 7)
    assert ("opcode", 64, 2, 2, 2, 2) in rows
    assert ("ip_block", 128, 2, 2, 2, 2) in rows
    assert ("data_block", 64, 1, 1, 1, 1) in rows


def test_errors():
    for bad in [lambda: pyslotsim.run(bench="nope"), lambda: pyslotsim.port_width(1, 0),
                lambda: pyslotsim.SlotTable(0)]:
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print("ok", name)
