use sha2::{Digest, Sha256};

use crate::ci::BitState;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::prng::{CiPrng, CiPrngParams, SeedKey};

/// Hamming distance h between two equal-length sequences and P = h / n.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SensitivityResult {
    pub n: usize,
    pub h: usize,
    pub p: f64,
}

pub fn variance_ratio(a: &[bool], b: &[bool]) -> Result<SensitivityResult> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::InsufficientData {
            test: "variance ratio",
            needed: 1,
            got: 0,
        });
    }
    let h = a.iter().zip(b).filter(|(x, y)| x != y).count();
    Ok(SensitivityResult {
        n: a.len(),
        h,
        p: h as f64 / a.len() as f64,
    })
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub pairs: usize,
    pub n_bits: usize,
    pub params: CiPrngParams,
    /// Seeds the choice of base keys and flipped bits.
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            pairs: 100,
            n_bits: 100_000,
            params: CiPrngParams::default(),
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairResult {
    pub pair: usize,
    /// 0-based x0 cell that differs between the two keys.
    pub flipped_cell: usize,
    pub result: SensitivityResult,
}

/// Base key and flipped cell for one pair, a pure function of (seed, pair).
fn pair_key(seed: u64, pair: usize, n_cells: usize) -> (SeedKey, usize) {
    let mut h = Sha256::new();
    h.update(b"cirng/sensitivity");
    h.update(seed.to_le_bytes());
    h.update((pair as u64).to_le_bytes());
    let d = h.finalize();
    let word = u64::from_le_bytes(d[..8].try_into().unwrap());
    let x0 = if n_cells >= 64 {
        word
    } else {
        word & ((1u64 << n_cells) - 1)
    };
    let xorshift = u32::from_le_bytes(d[8..12].try_into().unwrap()).max(1);
    let cell = u32::from_le_bytes(d[12..16].try_into().unwrap()) as usize % n_cells;
    let key = SeedKey::new(
        BitState::from_word(x0, n_cells).expect("masked to width"),
        d[16..].to_vec(),
        xorshift,
    )
    .expect("nonzero seed");
    (key, cell)
}

/// For each pair, two keys identical except for one bit of x0; reports P
/// between their first `n_bits` output bits.
pub fn sensitivity_sweep(config: &SweepConfig, exec: Execution) -> Result<Vec<PairResult>> {
    config.params.validate()?;
    let n_cells = config.params.n_cells;
    par::map_range(exec, config.pairs, |pair| {
        let (key, cell) = pair_key(config.seed, pair, n_cells);
        let mut twin = key.clone();
        let mut x0 = twin.x0.clone();
        x0.flip(cell);
        twin.x0 = x0;
        let a = CiPrng::new(&key, config.params.clone())?.next_bits(config.n_bits);
        let b = CiPrng::new(&twin, config.params.clone())?.next_bits(config.n_bits);
        Ok(PairResult {
            pair,
            flipped_cell: cell,
            result: variance_ratio(&a, &b)?,
        })
    })
    .into_iter()
    .collect()
}

pub fn sweep_mean(results: &[PairResult]) -> f64 {
    if results.is_empty() {
        return f64::NAN;
    }
    results.iter().map(|r| r.result.p).sum::<f64>() / results.len() as f64
}
