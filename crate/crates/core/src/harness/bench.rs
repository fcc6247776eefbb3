//! Benchmark kernels bundled as prebuilt images for each target.

use std::fmt;

use crate::error::LoadError;
use crate::isa::Program;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Rv32i,
    Rv32im,
    Rv32if,
    Rv32imf,
}

impl Target {
    pub const ALL: [Target; 4] = [Target::Rv32i, Target::Rv32im, Target::Rv32if, Target::Rv32imf];

    pub fn name(self) -> &'static str {
        match self {
            Target::Rv32i => "RV32I",
            Target::Rv32im => "RV32IM",
            Target::Rv32if => "RV32IF",
            Target::Rv32imf => "RV32IMF",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A kernel with one image per target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchSpec {
    pub name: String,
    /// Images in [`Target::ALL`] order.
    pub images: [Program; 4],
    /// Expected console digest; `None` means "whatever RV32I prints".
    pub expected_output: Option<String>,
}

impl BenchSpec {
    pub fn image(&self, t: Target) -> &Program {
        &self.images[t as usize]
    }
}

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        const BUNDLED: &[(&str, [&[u8]; 4])] = &[
            $(($name, [
                include_bytes!(concat!("../../kernels/bin/", $name, ".rv32i.elf")),
                include_bytes!(concat!("../../kernels/bin/", $name, ".rv32im.elf")),
                include_bytes!(concat!("../../kernels/bin/", $name, ".rv32if.elf")),
                include_bytes!(concat!("../../kernels/bin/", $name, ".rv32imf.elf")),
            ]),)*
        ];
    };
}

bundled!(
    "crc32",
    "statemachine",
    "sort",
    "matmul_int",
    "modexp",
    "primecount",
    "fir",
    "gcd",
    "fnv_hash",
    "itoa",
    "lcg_hist",
    "nbody",
    "axpy",
    "poly",
    "minver",
    "st",
    "fsum",
);

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

pub fn bundled_bench(name: &str) -> Option<BenchSpec> {
    let (n, elfs) = BUNDLED.iter().find(|(n, _)| *n == name)?;
    Some(load_bench(n, elfs).expect("bundled image is a valid RV32 ELF"))
}

pub fn bundled_benches() -> Vec<BenchSpec> {
    BUNDLED.iter().map(|(n, elfs)| load_bench(n, elfs).expect("bundled image is a valid RV32 ELF")).collect()
}

fn load_bench(name: &str, elfs: &[&[u8]; 4]) -> Result<BenchSpec, LoadError> {
    let images = [
        Program::from_elf(elfs[0])?,
        Program::from_elf(elfs[1])?,
        Program::from_elf(elfs[2])?,
        Program::from_elf(elfs[3])?,
    ];
    Ok(BenchSpec { name: name.to_string(), images, expected_output: None })
}
