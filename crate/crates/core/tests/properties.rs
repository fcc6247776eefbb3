mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use slotsim::disamb::{LatencyConfig, Policy, SlotTable};
use slotsim::fabric::{bitstream_bits, port_width, BitMatrix, ConfigChain, FabricSpec, LutType};
use slotsim::groups::{slottable_kinds, GroupId, GroupTable, TagMode};
use slotsim::harness::{bundled_bench, check_fidelity, Target};
use slotsim::isa::{decode, execute, Kind, LatencyTable, MachineState};
use slotsim::os::{run_tasks, SchedConfig, Task};
use slotsim::reuse::{analyze, StreamEvent, WindowConfig};
use slotsim::sim::{output_digest, run_program, Core, CoreConfig};
use slotsim::synth::{group_representative, loop_program};

fn misses(trace: &[u32], slots: usize, policy: Policy) -> u64 {
    let mut t = SlotTable::with_policy(LatencyConfig { num_slots: slots, miss_latency: 1, hit_latency: 0 }, policy);
    for (i, &tag) in trace.iter().enumerate() {
        t.access(tag, i as u64);
    }
    t.total_misses()
}

fn tag_trace() -> impl Strategy<Value = Vec<u32>> {
    (1u32..12).prop_flat_map(|alphabet| prop::collection::vec(0..alphabet, 0..400))
}

proptest! {
    #[test]
    fn x0_stays_zero(word in any::<u32>(), regs in prop::array::uniform32(any::<u32>())) {
        let Ok(ins) = decode(word) else { return Ok(()) };
        let mut st = MachineState::new(1 << 16);
        st.x = regs;
        st.x[0] = 0;
        let _ = execute(&mut st, &ins, &LatencyTable::default());
        prop_assert_eq!(st.x[0], 0);
    }

    #[test]
    fn lru_stack_inclusion(trace in tag_trace(), n in 1usize..10) {
        let mk = |slots| SlotTable::new(LatencyConfig { num_slots: slots, miss_latency: 1, hit_latency: 0 });
        let (mut small, mut big) = (mk(n), mk(n + 1));
        for (i, &tag) in trace.iter().enumerate() {
            small.access(tag, i as u64);
            big.access(tag, i as u64);
            let a: BTreeSet<_> = small.snapshot().occupied().into_iter().collect();
            let b: BTreeSet<_> = big.snapshot().occupied().into_iter().collect();
            prop_assert!(a.is_subset(&b));
        }
        prop_assert!(big.total_misses() <= small.total_misses());
    }

    #[test]
    fn compulsory_floor(trace in tag_trace(), slots in 1usize..12, seed in any::<u64>()) {
        let distinct = trace.iter().collect::<BTreeSet<_>>().len() as u64;
        for policy in [Policy::Lru, Policy::Fifo, Policy::Random { seed }] {
            let m = misses(&trace, slots, policy);
            prop_assert!(m >= distinct);
            if slots as u64 >= distinct {
                prop_assert_eq!(m, distinct);
            }
        }
    }

    #[test]
    fn group_override_partitions(assign in prop::collection::vec(0u8..6, 29)) {
        let kinds: Vec<Kind> = slottable_kinds().collect();
        prop_assume!(kinds.len() == assign.len());
        let mut text = String::new();
        for g in 0..6u8 {
            let members: Vec<&str> =
                kinds.iter().zip(&assign).filter(|(_, &a)| a == g).map(|(k, _)| k.mnemonic()).collect();
            if !members.is_empty() {
                text.push_str(&format!("G{g}: {}\n", members.join(", ")));
            }
        }
        let table = GroupTable::parse(&text).unwrap();
        for (k, &a) in kinds.iter().zip(&assign) {
            prop_assert_eq!(table.classify(*k), Some(GroupId(a)));
        }
        for k in Kind::ALL.iter().filter(|k| !kinds.contains(k)) {
            prop_assert_eq!(table.classify(*k), None);
        }
        let total: usize = table.groups().iter().map(|(g, _)| table.members(*g).len()).sum();
        prop_assert_eq!(total, kinds.len());
    }

    #[test]
    fn port_width_is_a_ceiling(bits in 1u64..10_000_000, latency in 1u64..5000) {
        let w = port_width(bits, latency);
        prop_assert!(w * latency >= bits);
        prop_assert!((w - 1) * latency < bits);
    }

    #[test]
    fn bits_monotone(a in 1u64..100_000, b in 1u64..100_000) {
        let (lo, hi) = (a.min(b), a.max(b));
        let bits = |lut_count, lut_type| bitstream_bits(&FabricSpec { lut_count, lut_type });
        for t in LutType::ALL {
            prop_assert!(bits(lo, t) <= bits(hi, t));
        }
        let at = |t| bits(hi, t);
        prop_assert!(at(LutType::Lut4) <= at(LutType::Lut5) && at(LutType::Lut5) <= at(LutType::Lut6));
    }

    #[test]
    fn chain_round_trips(depth in 1usize..40, width in 1usize..300, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = BitMatrix::from_fn(depth, width, || rand::Rng::random(&mut rng));
        let mut chain = ConfigChain::new(depth, width);
        prop_assert_eq!(chain.load(&m).unwrap(), depth as u64);
        prop_assert_eq!(chain.read_back(), m);
    }

    #[test]
    fn reuse_matches_brute_force(seed in any::<u64>(), len in 0usize..5000, lo in 0u32..6, span in 0u32..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let events: Vec<StreamEvent> = common::random_events(&mut rng, len);
        let cfg = WindowConfig::powers_of_two(lo, lo + span);
        prop_assert_eq!(analyze(&events, &cfg), common::brute_force_reuse(&events, &cfg));
    }
}

fn slotted_body() -> impl Strategy<Value = Vec<Kind>> {
    prop::collection::vec((0u8..10).prop_map(group_representative), 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn timing_decomposes(
        body in slotted_body(),
        reps in 1u32..20,
        slots in 1usize..6,
        miss in 0u64..300,
        hit in 0u64..20,
        opcode_tags in any::<bool>(),
    ) {
        let prog = loop_program(&body, reps);
        let cfg = CoreConfig {
            tag_mode: if opcode_tags { TagMode::Opcode } else { TagMode::Group },
            ..CoreConfig::default().with_disamb(LatencyConfig { num_slots: slots, miss_latency: miss, hit_latency: hit })
        };
        let mut core = Core::with_program(cfg.clone(), GroupTable::default(), &prog).unwrap();
        core.enable_trace();
        let r = core.run().unwrap();
        let trace = core.take_trace();
        prop_assert_eq!(r.cycles, r.exec_cycles + r.slot_cycles + r.trap_cycles);
        prop_assert_eq!(r.instret, trace.len() as u64);
        prop_assert_eq!(r.exec_cycles, trace.iter().map(|t| cfg.lat.cycles(t.kind)).sum::<u64>());
        prop_assert_eq!(r.slot_cycles, r.per_tag.values().map(|s| s.stall_cycles).sum::<u64>());
        prop_assert_eq!(r.slot_cycles, r.misses() * miss + r.hits() * hit);
    }

    #[test]
    fn runs_are_deterministic(body in slotted_body(), reps in 1u32..10, slots in 1usize..5, seed in any::<u64>()) {
        let prog = loop_program(&body, reps);
        let cfg = CoreConfig { policy: Policy::Random { seed }, ..CoreConfig::default().with_disamb(LatencyConfig { num_slots: slots, miss_latency: 50, hit_latency: 1 }) };
        let a = run_program(&prog, &cfg, &GroupTable::default()).unwrap();
        let b = run_program(&prog, &cfg, &GroupTable::default()).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn context_switches_preserve_output(
        timer in 400u64..6000,
        overhead in 0u64..200,
        pick in 0usize..4,
        slots in 1usize..5,
    ) {
        let names = [("crc32", "fsum"), ("poly", "fir"), ("st", "sort"), ("axpy", "axpy")][pick];
        let cfg = CoreConfig::default().with_disamb(LatencyConfig { num_slots: slots, miss_latency: 50, hit_latency: 0 });
        let groups = GroupTable::default();
        let mut tasks = Vec::new();
        let mut digests = Vec::new();
        for n in [names.0, names.1] {
            let b = bundled_bench(n).unwrap();
            let img = b.image(Target::Rv32imf).clone();
            digests.push(output_digest(&run_program(&img, &CoreConfig::default(), &groups).unwrap().console));
            tasks.push(Task::new(n, img));
        }
        let sched = SchedConfig { timer_period: timer, switch_overhead_instrs: overhead.min(timer), target_iterations: 2, ..SchedConfig::default() };
        let run = run_tasks(&tasks, &cfg, &groups, &sched, false).unwrap();
        prop_assert!(run.tasks.iter().any(|t| t.iterations >= 2));
        for (t, d) in run.tasks.iter().zip(&digests) {
            prop_assert_eq!(t.marks.len() as u32, t.iterations);
            prop_assert!(check_fidelity(&t.console, &t.marks, d), "{} diverged", t.name);
        }
    }
}
