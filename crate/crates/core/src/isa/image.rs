//! Program images: ELF32 RISC-V executables or flat binaries.

use goblin::elf::{header, program_header::PT_LOAD, Elf};

use super::state::Memory;
use crate::error::LoadError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub addr: u32,
    /// Initialised bytes; the remainder up to `mem_len` is zero-filled.
    pub data: Vec<u8>,
    pub mem_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub entry: u32,
    pub segments: Vec<Segment>,
}

impl Program {
    pub fn from_elf(bytes: &[u8]) -> Result<Program, LoadError> {
        let elf = Elf::parse(bytes)?;
        if elf.is_64 || !elf.little_endian || elf.header.e_machine != header::EM_RISCV {
            return Err(LoadError::NotRiscv32);
        }
        let segments = elf
            .program_headers
            .iter()
            .filter(|ph| ph.p_type == PT_LOAD && ph.p_memsz > 0)
            .map(|ph| {
                let range = ph.file_range();
                let data = bytes.get(range).ok_or(LoadError::OutOfMemory {
                    addr: ph.p_paddr as u32,
                    len: ph.p_filesz as usize,
                    mem_size: bytes.len(),
                })?;
                Ok(Segment { addr: ph.p_paddr as u32, data: data.to_vec(), mem_len: ph.p_memsz as usize })
            })
            .collect::<Result<Vec<_>, LoadError>>()?;
        Ok(Program { entry: elf.entry as u32, segments })
    }

    /// A raw binary placed at `load_addr`.
    pub fn flat(bytes: &[u8], load_addr: u32, entry: u32) -> Program {
        Program { entry, segments: vec![Segment { addr: load_addr, data: bytes.to_vec(), mem_len: bytes.len() }] }
    }

    /// Assembles a program from instruction words placed from address 0.
    pub fn from_words(words: &[u32]) -> Program {
        let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
        Program::flat(&bytes, 0, 0)
    }

    pub fn load_into(&self, mem: &mut Memory) -> Result<(), LoadError> {
        for seg in &self.segments {
            let oom = LoadError::OutOfMemory { addr: seg.addr, len: seg.mem_len, mem_size: mem.size() };
            let dst = mem.slice_mut(seg.addr, seg.mem_len.max(seg.data.len())).ok_or(oom)?;
            dst.fill(0);
            dst[..seg.data.len()].copy_from_slice(&seg.data);
        }
        Ok(())
    }
}
