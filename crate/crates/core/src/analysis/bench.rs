use std::hint::black_box;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::gen::{Isaac, Xorshift};
use crate::prng::{CiPrng, CiPrngParams, SeedKey};

pub const MIN_BENCH_BYTES: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
pub struct Throughput {
    pub generator: String,
    pub bytes: usize,
    pub seconds: f64,
}

impl Throughput {
    pub fn bytes_per_second(&self) -> f64 {
        self.bytes as f64 / self.seconds.max(f64::MIN_POSITIVE)
    }
}

fn time_it(generator: &str, bytes: usize, f: impl FnOnce()) -> Throughput {
    let start = Instant::now();
    f();
    Throughput {
        generator: generator.into(),
        bytes,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Wall-clock throughput of the composite generator next to its two inputs,
/// each producing `n_bytes` bytes.
pub fn throughput_bench(
    key: &SeedKey,
    params: CiPrngParams,
    n_bytes: usize,
) -> Result<Vec<Throughput>> {
    if n_bytes < MIN_BENCH_BYTES {
        return Err(Error::InvalidParams(format!(
            "benchmark needs at least {MIN_BENCH_BYTES} bytes, got {n_bytes}"
        )));
    }
    let mut ci = CiPrng::new(key, params)?;
    let mut isaac = Isaac::from_key_bytes(&key.isaac_key)?;
    let mut xorshift = Xorshift::new(key.xorshift_seed)?;
    let words = n_bytes.div_ceil(4);

    let mut buf = vec![0u8; n_bytes];
    let ci_row = time_it("CI(ISAAC,XORshift)", n_bytes, || {
        ci.fill_bytes(&mut buf);
        black_box(&buf);
    });
    let isaac_row = time_it("ISAAC", n_bytes, || {
        let mut acc = 0u32;
        for _ in 0..words {
            acc ^= isaac.next();
        }
        black_box(acc);
    });
    let xorshift_row = time_it("XORshift", n_bytes, || {
        let mut acc = 0u32;
        for _ in 0..words {
            acc ^= xorshift.next();
        }
        black_box(acc);
    });
    Ok(vec![ci_row, isaac_row, xorshift_row])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci::BitState;

    #[test]
    fn three_rows_and_xorshift_is_faster() {
        let key = SeedKey::new(BitState::zeros(32).unwrap(), b"bench".to_vec(), 1).unwrap();
        let rows = throughput_bench(&key, CiPrngParams::default(), MIN_BENCH_BYTES).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows[2].bytes_per_second() >= rows[0].bytes_per_second());
        assert!(throughput_bench(&key, CiPrngParams::default(), 1000).is_err());
    }
}
