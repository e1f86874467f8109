use crate::ci::{ci_run, BitState, Strategy};
use crate::error::{Error, Result};
use crate::prng::{CiPrng, CiPrngParams, SeedKey};

use super::image::{BitImage, GrayImage};
use super::lsb::{lsb_plane, write_plane};

pub const DEFAULT_ITERATIONS: usize = 5000;
/// Default watermark is 64 x 64.
pub const WATERMARK_SIDE: usize = 64;

const ENCRYPT_TAG: &str = "watermark/encrypt";
const EMBED_TAG: &str = "watermark/embed";

/// Keyed generator whose words can address `range` values.
fn keyed_prng(key: &SeedKey, tag: &str, range: usize) -> Result<CiPrng> {
    let n = key.x0.n_cells();
    if n < 64 && (1u128 << n) < range as u128 {
        return Err(Error::InvalidKey(format!(
            "{n}-bit generator words cannot address {range} positions"
        )));
    }
    CiPrng::new(&key.derive(tag), CiPrngParams::with_cells(n))
}

/// Chaotic iterations with the watermark as initial state and a strategy of
/// `iterations` generator words reduced mod the cell count. Applying it twice
/// with the same key and count restores the watermark.
pub fn encrypt_watermark(w: &BitImage, key: &SeedKey, iterations: usize) -> Result<BitImage> {
    let cells = w.len();
    let mut prng = keyed_prng(key, ENCRYPT_TAG, cells)?;
    let strategy: Strategy = (0..iterations)
        .map(|_| (prng.next_word() % cells as u64) as usize)
        .collect();
    let x0 = BitState::new(w.bits().to_vec())?;
    let out = ci_run(&x0, &strategy)?;
    BitImage::new(w.width(), w.height(), out.into_bits())
}

/// Incremental U recurrence: `U(0) = S(0)`, `U(n+1) = S(n+1) + 2 U(n) + n`,
/// everything mod `modulus`.
#[derive(Clone, Debug)]
pub struct URecurrence {
    modulus: u64,
    prev: Option<u64>,
    n: u64,
}

impl URecurrence {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParams(
                "U recurrence modulus must be positive".into(),
            ));
        }
        Ok(URecurrence {
            modulus,
            prev: None,
            n: 0,
        })
    }

    pub fn push(&mut self, s: u64) -> u64 {
        let m = self.modulus as u128;
        let u = match self.prev {
            None => s as u128 % m,
            Some(prev) => {
                let u = (s as u128 + 2 * prev as u128 + self.n as u128) % m;
                self.n += 1;
                u
            }
        } as u64;
        self.prev = Some(u);
        u
    }
}

/// The first `count` terms of the U recurrence driven by `s`.
pub fn u_sequence(s: &[u64], modulus: u64, count: usize) -> Result<Vec<u64>> {
    if s.len() < count {
        return Err(Error::InsufficientData {
            test: "U recurrence",
            needed: count,
            got: s.len(),
        });
    }
    let mut rec = URecurrence::new(modulus)?;
    Ok(s[..count].iter().map(|&x| rec.push(x)).collect())
}

/// `count` distinct plane positions. On a repeated value the recurrence keeps
/// consuming generator words until an unused position comes up.
pub fn embedding_positions(key: &SeedKey, modulus: usize, count: usize) -> Result<Vec<usize>> {
    if count > modulus {
        return Err(Error::Capacity {
            capacity: modulus,
            needed: count,
        });
    }
    let mut prng = keyed_prng(key, EMBED_TAG, modulus)?;
    let mut rec = URecurrence::new(modulus as u64)?;
    let mut used = vec![false; modulus];
    let mut out = Vec::with_capacity(count);
    let budget = 64 * modulus.max(1024);
    let mut draws = 0usize;
    while out.len() < count {
        if draws == budget {
            return Err(Error::InvalidKey(format!(
                "key produced only {} distinct positions in {budget} draws",
                out.len()
            )));
        }
        draws += 1;
        let u = rec.push(prng.next_word() % modulus as u64) as usize;
        if !used[u] {
            used[u] = true;
            out.push(u);
        }
    }
    Ok(out)
}

fn check_capacity(carrier: &GrayImage, bits: usize) -> Result<usize> {
    let capacity = 3 * carrier.pixels().len();
    if capacity < bits {
        return Err(Error::Capacity {
            capacity,
            needed: bits,
        });
    }
    Ok(capacity)
}

pub fn embed(carrier: &GrayImage, w: &BitImage, key: &SeedKey) -> Result<GrayImage> {
    embed_with(carrier, w, key, DEFAULT_ITERATIONS)
}

/// Encrypts `w`, then writes encrypted bit k at plane position U(k).
/// Only the three low bit planes of the carrier change.
pub fn embed_with(
    carrier: &GrayImage,
    w: &BitImage,
    key: &SeedKey,
    iterations: usize,
) -> Result<GrayImage> {
    let modulus = check_capacity(carrier, w.len())?;
    let encrypted = encrypt_watermark(w, key, iterations)?;
    let positions = embedding_positions(key, modulus, w.len())?;
    let mut plane = lsb_plane(carrier);
    for (&pos, &bit) in positions.iter().zip(encrypted.bits()) {
        plane.bits[pos] = bit;
    }
    write_plane(carrier, &plane)
}

/// Blind extraction of a 64 x 64 watermark.
pub fn extract(marked: &GrayImage, key: &SeedKey) -> Result<BitImage> {
    extract_with(
        marked,
        key,
        WATERMARK_SIDE,
        WATERMARK_SIDE,
        DEFAULT_ITERATIONS,
    )
}

pub fn extract_with(
    marked: &GrayImage,
    key: &SeedKey,
    width: usize,
    height: usize,
    iterations: usize,
) -> Result<BitImage> {
    let cells = width
        .checked_mul(height)
        .ok_or_else(|| Error::Dimensions(format!("{width}x{height} watermark overflows")))?;
    let modulus = check_capacity(marked, cells)?;
    let positions = embedding_positions(key, modulus, cells)?;
    let plane = lsb_plane(marked);
    let encrypted = BitImage::new(
        width,
        height,
        positions.iter().map(|&p| plane.bits[p]).collect(),
    )?;
    encrypt_watermark(&encrypted, key, iterations)
}

/// 10 log10(255^2 / MSE); infinite for identical images.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if (a.width(), a.height()) != (b.width(), b.height()) {
        return Err(Error::Dimensions(format!(
            "{}x{} vs {}x{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )));
    }
    let sse: f64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = x as f64 - y as f64;
            d * d
        })
        .sum();
    if sse == 0.0 {
        return Ok(f64::INFINITY);
    }
    let mse = sse / a.pixels().len() as f64;
    Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
}

/// Fraction of differing pixels between two equal-size binary images.
pub fn bit_error_rate(a: &BitImage, b: &BitImage) -> Result<f64> {
    if (a.width(), a.height()) != (b.width(), b.height()) {
        return Err(Error::Dimensions("watermark sizes differ".into()));
    }
    let diff = a
        .bits()
        .iter()
        .zip(b.bits())
        .filter(|(x, y)| x != y)
        .count();
    Ok(diff as f64 / a.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{any, prop_assert_eq, proptest, ProptestConfig};

    fn key(seed: u32) -> SeedKey {
        SeedKey::new(
            BitState::from_word((seed as u64 * 7919) & 0xFFFF_FFFF, 32).unwrap(),
            seed.to_le_bytes().to_vec(),
            seed.max(1),
        )
        .unwrap()
    }

    fn pseudo_bits(n: usize, salt: u64) -> Vec<bool> {
        let mut x = salt.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
        (0..n)
            .map(|_| {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                x >> 63 == 1
            })
            .collect()
    }

    fn pseudo_pixels(n: usize, salt: u64) -> Vec<u8> {
        pseudo_bits(8 * n, salt)
            .chunks(8)
            .map(|c| c.iter().fold(0u8, |a, &b| (a << 1) | b as u8))
            .collect()
    }

    #[test]
    fn zero_iterations_is_identity() {
        let w = BitImage::new(8, 8, pseudo_bits(64, 1)).unwrap();
        assert_eq!(encrypt_watermark(&w, &key(3), 0).unwrap(), w);
    }

    #[test]
    fn hand_fixed_strategy_on_four_cells() {
        // [0, 3, 0]: cell 0 flipped twice, cell 3 once
        let x = BitState::new(vec![true, false, false, true]).unwrap();
        let out = ci_run(&x, &Strategy::new(vec![0, 3, 0])).unwrap();
        let mut counts = [0usize; 4];
        for i in [0, 3, 0] {
            counts[i] += 1;
        }
        let expect: Vec<bool> = x
            .bits()
            .iter()
            .zip(counts)
            .map(|(&b, c)| b ^ (c % 2 == 1))
            .collect();
        assert_eq!(out.bits(), &expect[..]);
        assert_eq!(out.bits(), [true, false, false, false]);
    }

    #[test]
    fn u_sequence_examples() {
        assert_eq!(u_sequence(&[0, 0, 0], 17, 3).unwrap(), [0, 0, 1]);
        assert_eq!(u_sequence(&[5, 3, 7], 100, 3).unwrap(), [5, 13, 34]);
        assert!(u_sequence(&[1], 0, 1).is_err());
        assert!(u_sequence(&[1], 10, 2).is_err());
    }

    #[test]
    fn u_sequence_matches_closed_form() {
        // U(n) = 2^n U(0) + sum_k 2^(n-1-k) (S(k+1) + k), evaluated in u128
        let s: Vec<u64> = (0..21).map(|i| (i * i * 37 + 11) % 1000).collect();
        for &modulus in &[1u64, 97, 12_288, 1 << 24, u64::MAX] {
            let u = u_sequence(&s, modulus, s.len()).unwrap();
            #[allow(clippy::needless_range_loop)]
            for n in 0..s.len() {
                let mut v: u128 = (1u128 << n) * (s[0] % modulus) as u128;
                for k in 0..n {
                    v += (1u128 << (n - 1 - k)) * (s[k + 1] as u128 + k as u128);
                }
                assert_eq!(
                    u[n] as u128,
                    v % modulus as u128,
                    "n = {n}, modulus = {modulus}"
                );
            }
        }
    }

    #[test]
    fn positions_are_distinct() {
        let pos = embedding_positions(&key(9), 4100, 4096).unwrap();
        let mut sorted = pos.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 4096);
        assert!(embedding_positions(&key(9), 10, 11).is_err());
    }

    #[test]
    fn capacity_errors() {
        let small = GrayImage::new(10, 10, vec![0; 100]).unwrap();
        let w = BitImage::new(64, 64, vec![false; 4096]).unwrap();
        assert!(matches!(
            embed(&small, &w, &key(1)),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            extract(&small, &key(1)),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn narrow_key_rejected() {
        let k = SeedKey::new(BitState::zeros(8).unwrap(), vec![], 1).unwrap();
        let w = BitImage::new(64, 64, vec![false; 4096]).unwrap();
        assert!(matches!(
            encrypt_watermark(&w, &k, 10),
            Err(Error::InvalidKey(_))
        ));
    }

    #[test]
    fn psnr_examples() {
        let a = GrayImage::new(1, 1, vec![0]).unwrap();
        let b = GrayImage::new(1, 1, vec![255]).unwrap();
        assert_eq!(psnr(&a, &a).unwrap(), f64::INFINITY);
        assert_eq!(psnr(&a, &b).unwrap(), 0.0);
        let c = GrayImage::new(1, 2, vec![0, 0]).unwrap();
        assert!(psnr(&a, &c).is_err());
    }

    #[test]
    fn embed_extract_roundtrip_small() {
        let carrier = GrayImage::new(48, 40, pseudo_pixels(48 * 40, 5)).unwrap();
        let w = BitImage::new(16, 16, pseudo_bits(256, 6)).unwrap();
        let k = key(77);
        let marked = embed_with(&carrier, &w, &k, 300).unwrap();
        for (m, c) in marked.pixels().iter().zip(carrier.pixels()) {
            assert_eq!(m >> 3, c >> 3);
        }
        let changed = lsb_plane(&marked)
            .bits
            .iter()
            .zip(&lsb_plane(&carrier).bits)
            .filter(|(a, b)| a != b)
            .count();
        assert!(changed <= 256);
        assert_eq!(extract_with(&marked, &k, 16, 16, 300).unwrap(), w);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn double_encryption_is_identity(
            bits in proptest::collection::vec(any::<bool>(), 2..600),
            seed in 1u32..,
            iterations in 0usize..800,
        ) {
            let w = BitImage::new(bits.len(), 1, bits).unwrap();
            let k = key(seed);
            let once = encrypt_watermark(&w, &k, iterations).unwrap();
            prop_assert_eq!(encrypt_watermark(&once, &k, iterations).unwrap(), w);
        }
    }
}
