//! Cycle-level model of an RV32IMF core whose M and F instructions execute
//! in reconfigurable slots selected by a tag-indexed disambiguator.

pub mod bitcache;
pub mod disamb;
pub mod error;
pub mod groups;
pub mod isa;
pub mod sim;
pub mod harness;
pub mod os;
pub mod synth;
pub mod reuse;
pub mod fabric;
