use std::error::Error;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use slotsim::fabric::{bitstream_bits, port_width, ConfigChain, FabricSpec, LutType};
use slotsim::bitcache::sizing_report;
use slotsim::groups::{load_group_table, GroupTable};
use slotsim::harness::{
    build_pairs, bundled_bench, bundled_benches, classify_all, distribution_csv, emit_reports, fig2_csv, fig3_csv,
    fig4_csv, fig4_summary_csv, fig7_csv, fig8_csv, geomean, mean, multi_grid, oversubscription_study,
    reuse_summary_csv, single_series, sweep_multi, sweep_single, window_study, BenchSpec, Classification, Config,
    Labelled, Target, MULTI_SLOTS, MULTI_TIMERS, SINGLE_GRID, SINGLE_SLOTS,
};
use slotsim::isa::Program;
use slotsim::reuse::{analyze, summarize, OpcodeMode, Trace, WindowConfig, OVERSUBSCRIBE_WINDOW};
use slotsim::sim::Core;

type Res<T> = Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "slotsim", version, about = "Reconfigurable-slot RV32IMF core simulator")]
struct Cli {
    /// Key-value configuration file.
    #[arg(long, short, global = true)]
    config: Option<PathBuf>,
    /// Directory for CSV outputs.
    #[arg(long, short, global = true, default_value = "out")]
    out_dir: PathBuf,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one program and report its timing.
    Run(RunArgs),
    /// Classify bundled kernels by their M and F speedups.
    Classify(BenchArgs),
    /// Single-program latency sweep over classified kernels.
    SweepSingle(BenchArgs),
    /// Paired-task sweep over slot counts and timer periods.
    SweepMulti(MultiArgs),
    /// Working-set statistics of a trace file or bundled kernels.
    AnalyzeTrace(TraceArgs),
    /// Bitstream size and configuration port geometry.
    FabricCalc(FabricArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Rv32i,
    Rv32im,
    Rv32if,
    Rv32imf,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Target {
        match t {
            TargetArg::Rv32i => Target::Rv32i,
            TargetArg::Rv32im => Target::Rv32im,
            TargetArg::Rv32if => Target::Rv32if,
            TargetArg::Rv32imf => Target::Rv32imf,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// ELF or flat binary; omit when using --bench.
    program: Option<PathBuf>,
    /// Bundled kernel instead of a file.
    #[arg(long, conflicts_with = "program")]
    bench: Option<String>,
    #[arg(long, value_enum, default_value = "rv32imf")]
    target: TargetArg,
    /// Treat the file as a flat binary loaded at this address.
    #[arg(long, value_parser = parse_addr)]
    load_addr: Option<u32>,
    /// Entry point override.
    #[arg(long, value_parser = parse_addr)]
    entry: Option<u32>,
    /// Run on hard M/F units, without the disambiguator.
    #[arg(long)]
    hard: bool,
    /// Write a per-instruction trace to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Use the binary trace format.
    #[arg(long, requires = "trace")]
    binary_trace: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Restrict to these bundled kernels.
    #[arg(long, value_delimiter = ',')]
    bench: Vec<String>,
}

#[derive(Args)]
struct MultiArgs {
    #[command(flatten)]
    benches: BenchArgs,
    #[arg(long, value_delimiter = ',', default_values_t = MULTI_SLOTS)]
    slots: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = MULTI_TIMERS)]
    timers: Vec<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Kind,
    Group,
}

impl From<ModeArg> for OpcodeMode {
    fn from(m: ModeArg) -> OpcodeMode {
        match m {
            ModeArg::Kind => OpcodeMode::PerKind,
            ModeArg::Group => OpcodeMode::PerGroup,
        }
    }
}

#[derive(Args)]
struct TraceArgs {
    /// Text or binary trace file; omit to trace the bundled kernels.
    file: Option<PathBuf>,
    #[command(flatten)]
    benches: BenchArgs,
    /// Smallest window, as a power of two.
    #[arg(long, default_value_t = 6)]
    window_lo: u32,
    /// Largest window, as a power of two.
    #[arg(long, default_value_t = 15)]
    window_hi: u32,
    /// Oversubscribe one core with 1..=K bundled kernels instead.
    #[arg(long)]
    oversubscribe: Option<usize>,
    /// Window size for the oversubscription study.
    #[arg(long, default_value_t = OVERSUBSCRIBE_WINDOW)]
    window: usize,
    /// Full windows per oversubscription point.
    #[arg(long, default_value_t = 8)]
    windows: u64,
    #[arg(long, value_enum, default_value = "kind")]
    mode: ModeArg,
}

#[derive(Args)]
struct FabricArgs {
    #[arg(long, default_value_t = slotsim::fabric::REFERENCE_LUTS)]
    luts: u64,
    #[arg(long, default_value = "4")]
    lut_type: LutType,
    /// Reconfiguration latency in cycles.
    #[arg(long, default_value_t = 50)]
    latency: u64,
    /// Bitstream cache blocks for the sizing line.
    #[arg(long, default_value_t = slotsim::bitcache::DEFAULT_BLOCKS)]
    blocks: usize,
}

fn parse_addr(s: &str) -> Result<u32, String> {
    let s = s.replace('_', "");
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u32::from_str_radix(h, 16),
        None => s.parse(),
    };
    r.map_err(|e| e.to_string())
}

struct Env {
    cfg: Config,
    groups: GroupTable,
    out: PathBuf,
}

fn load_env(cli: &Cli) -> Res<Env> {
    let cfg = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            Config::parse(&text).map_err(|e| format!("{}: {e}", p.display()))?
        }
        None => Config::default(),
    };
    let groups = match &cfg.group_table {
        Some(p) => {
            let base = cli.config.as_deref().and_then(Path::parent).unwrap_or(Path::new("."));
            let path = base.join(p);
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            load_group_table(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => GroupTable::default(),
    };
    Ok(Env { cfg, groups, out: cli.out_dir.clone() })
}

fn select(args: &BenchArgs) -> Res<Vec<BenchSpec>> {
    if args.bench.is_empty() {
        return Ok(bundled_benches());
    }
    args.bench
        .iter()
        .map(|n| bundled_bench(n).ok_or_else(|| format!("unknown bundled kernel `{n}`").into()))
        .collect()
}

fn write(env: &Env, files: Vec<(String, String)>) -> Res<()> {
    for p in emit_reports(&files, &env.out)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn classified(env: &Env, benches: Vec<BenchSpec>) -> Res<Vec<(BenchSpec, Classification)>> {
    let cls = classify_all(&benches, env.cfg.threshold, &env.cfg.core, &env.groups);
    benches.into_iter().zip(cls).map(|(b, c)| Ok((b, c?))).collect()
}

fn cmd_run(env: &Env, a: &RunArgs) -> Res<()> {
    let (name, prog) = match (&a.program, &a.bench) {
        (_, Some(n)) => {
            let b = bundled_bench(n).ok_or_else(|| format!("unknown bundled kernel `{n}`"))?;
            let target: Target = a.target.into();
            (format!("{n}.{target}"), b.image(target).clone())
        }
        (Some(p), None) => {
            let bytes = std::fs::read(p).map_err(|e| format!("{}: {e}", p.display()))?;
            let mut prog = match a.load_addr {
                Some(addr) => Program::flat(&bytes, addr, a.entry.unwrap_or(addr)),
                None => Program::from_elf(&bytes).map_err(|e| format!("{}: {e}", p.display()))?,
            };
            if let Some(e) = a.entry {
                prog.entry = e;
            }
            (p.file_name().map_or("program".into(), |s| s.to_string_lossy().into_owned()), prog)
        }
        (None, None) => return Err("give a program file or --bench".into()),
    };
    let core_cfg = if a.hard { env.cfg.core.clone() } else { env.cfg.slotted_core() };
    let mut core = Core::with_program(core_cfg, env.groups.clone(), &prog)?;
    if a.trace.is_some() {
        core.enable_trace();
    }
    let r = core.run()?;
    if let Some(path) = &a.trace {
        let trace = Trace::from_records(&core.take_trace());
        let bytes = if a.binary_trace { trace.to_binary()? } else { trace.to_text().into_bytes() };
        std::fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display()))?;
        println!("wrote {}", path.display());
    }
    let mut csv = String::from("program,cycles,instret,exec_cycles,slot_cycles,trap_cycles,hits,misses,iterations,digest\n");
    let _ = writeln!(
        csv,
        "{name},{},{},{},{},{},{},{},{},{}",
        r.cycles,
        r.instret,
        r.exec_cycles,
        r.slot_cycles,
        r.trap_cycles,
        r.hits(),
        r.misses(),
        r.iterations,
        r.digest()
    );
    let mut tags = String::from("tag,hits,misses,evictions,stall_cycles\n");
    for (t, s) in &r.per_tag {
        let _ = writeln!(tags, "{t},{},{},{},{}", s.hits, s.misses, s.evictions, s.stall_cycles);
    }
    print!("{}", String::from_utf8_lossy(&r.console));
    println!("cycles {} instret {} misses {}", r.cycles, r.instret, r.misses());
    write(env, vec![("run.csv".into(), csv), ("run_tags.csv".into(), tags)])
}

fn cmd_classify(env: &Env, a: &BenchArgs) -> Res<()> {
    let rows: Vec<Classification> = classified(env, select(a)?)?.into_iter().map(|(_, c)| c).collect();
    for c in &rows {
        println!("{:<14} {:<12} IM {:.3} IF {:.3}", c.bench, c.label.name(), c.speedup_im, c.speedup_if);
    }
    write(env, vec![("fig2.csv".into(), fig2_csv(&rows))])
}

fn cmd_sweep_single(env: &Env, a: &BenchArgs) -> Res<()> {
    let benches = classified(env, select(a)?)?;
    let rows = sweep_single(&benches, &SINGLE_GRID, SINGLE_SLOTS, &env.cfg.core, &env.groups);
    let series = single_series(&SINGLE_GRID);
    for s in &series {
        let v: Vec<f64> = rows.iter().filter_map(|b| b.slowdown(*s)).collect();
        println!("{:<12} geomean slowdown {:.4}  mean {:.4}", s.to_string(), geomean(&v), mean(&v));
    }
    write(env, vec![("fig3.csv".into(), fig3_csv(&rows, &series))])
}

fn cmd_sweep_multi(env: &Env, a: &MultiArgs) -> Res<()> {
    let benches = classified(env, select(&a.benches)?)?;
    let plans = build_pairs(&benches);
    let lc = env.cfg.latency;
    let grid = multi_grid(&a.slots, &a.timers, lc.miss_latency, lc.hit_latency);
    let rows = sweep_multi(&plans, &grid, &env.cfg.core, &env.groups, &env.cfg.sched)?;
    let summary = fig4_summary_csv(&rows, env.cfg.baseline);
    print!("{summary}");
    write(env, vec![("fig4.csv".into(), fig4_csv(&rows, env.cfg.baseline)), ("fig4_summary.csv".into(), summary)])
}

fn cmd_analyze(env: &Env, a: &TraceArgs) -> Res<()> {
    let windows = WindowConfig::powers_of_two(a.window_lo, a.window_hi);
    let mode: OpcodeMode = a.mode.into();
    if let Some(path) = &a.file {
        let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let trace = Trace::parse(&bytes).map_err(|e| format!("{}: {e}", path.display()))?;
        let trace = if matches!(mode, OpcodeMode::PerGroup) { trace.with_mode(mode, &env.groups) } else { trace };
        let stats = analyze(&trace.events, &windows);
        let rows = summarize(&stats)?;
        let csv = reuse_summary_csv(&rows);
        print!("{csv}");
        let label = path.file_name().map_or("trace".into(), |s| s.to_string_lossy().into_owned());
        let items: Vec<Labelled<'_>> = vec![(&label, mode, &stats)];
        return write(env, vec![("reuse.csv".into(), csv), ("reuse_dist.csv".into(), distribution_csv(&items))]);
    }
    let benches = select(&a.benches)?;
    if let Some(k) = a.oversubscribe {
        let points =
            oversubscription_study(&benches, k, a.window, a.windows, &env.cfg.core, &env.groups, &env.cfg.sched, mode)?;
        let view: Vec<(usize, usize, &_)> = points.iter().map(|p| (p.k, p.instructions, &p.stats)).collect();
        let csv = fig8_csv(&view, mode);
        print!("{csv}");
        return write(env, vec![("fig8.csv".into(), csv)]);
    }
    let study = window_study(&benches, &windows, &env.cfg.core, &env.groups)?;
    let items: Vec<Labelled<'_>> = study.iter().map(|s| (s.bench.as_str(), s.mode, &s.stats)).collect();
    write(env, vec![("fig7.csv".into(), fig7_csv(&items)), ("fig7_dist.csv".into(), distribution_csv(&items))])
}

fn cmd_fabric(env: &Env, a: &FabricArgs) -> Res<()> {
    if a.latency == 0 {
        return Err("latency must be at least 1 cycle".into());
    }
    let spec = FabricSpec { lut_count: a.luts, lut_type: a.lut_type };
    let bits = bitstream_bits(&spec);
    let width = port_width(bits, a.latency);
    let chain = ConfigChain::for_latency(bits, a.latency);
    let bytes = bits.div_ceil(8);
    let sizing = sizing_report(a.blocks, bytes);
    println!("lut_type {}", a.lut_type);
    println!("luts {}", a.luts);
    println!("bitstream_bits {bits}");
    println!("port_width {width}");
    println!("chain {} stages x {} bits ({} bits, loads in {} cycles)", chain.depth(), chain.width(), chain.capacity_bits(), chain.depth());
    println!("bitcache {} blocks x {} bytes = {} bytes", sizing.blocks, sizing.bitstream_bytes, sizing.total_bytes);
    let csv = format!(
        "luts,lut_type,latency,bitstream_bits,port_width,chain_depth,chain_width,chain_capacity_bits,bitstream_bytes,cache_blocks,cache_bytes\n\
         {},{},{},{bits},{width},{},{},{},{bytes},{},{}\n",
        a.luts,
        a.lut_type.inputs(),
        a.latency,
        chain.depth(),
        chain.width(),
        chain.capacity_bits(),
        sizing.blocks,
        sizing.total_bytes
    );
    write(env, vec![("fabric.csv".into(), csv)])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load_env(&cli).and_then(|env| match &cli.cmd {
        Cmd::Run(a) => cmd_run(&env, a),
        Cmd::Classify(a) => cmd_classify(&env, a),
        Cmd::SweepSingle(a) => cmd_sweep_single(&env, a),
        Cmd::SweepMulti(a) => cmd_sweep_multi(&env, a),
        Cmd::AnalyzeTrace(a) => cmd_analyze(&env, a),
        Cmd::FabricCalc(a) => cmd_fabric(&env, a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
