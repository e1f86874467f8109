//! Chaotic-iterations pseudo-random number generation.
//!
//! [`CiPrng`] iterates an N-cell boolean state under vectorial negation:
//! ISAAC picks how many cells are flipped per round and XORshift picks which
//! ones. Around the generator the crate provides a small statistical battery,
//! key-sensitivity and point-cloud analysis, stream exporters for external
//! test suites, throughput measurement, and a watermarking scheme that
//! encrypts a binary mark with chaotic iterations and hides it in the three
//! low bit planes of a grayscale image.

pub mod analysis;
pub mod ci;
pub mod error;
pub mod gen;
pub mod par;
pub mod prng;
pub mod watermark;

pub use ci::{ci_run, ci_step, pack_bits, BitState, Strategy};
pub use error::{Error, Result};
pub use gen::{Isaac, Scripted, WordSource, Xorshift};
pub use par::Execution;
pub use prng::{table2_fixture, CiPrng, CiPrngParams, IndexReduction, KeySchedule, SeedKey};
