//! Jenkins' ISAAC, 32-bit words.

use std::fmt;

use crate::error::{Error, Result};

use super::WordSource;

pub const ISAAC_WORDS: usize = 256;
const GOLDEN_RATIO: u32 = 0x9e37_79b9;

/// ISAAC generator state.
///
/// Key setup follows the reference `randinit(TRUE)`: golden-ratio
/// scrambling, two mixing passes over the seed words, then one shuffle.
/// Like the reference driver, the block produced inside `randinit` is not
/// served; the first served block is the one after it, read in index order.
/// This makes the zero-seed stream equal the published test vector.
#[derive(Clone)]
pub struct Isaac {
    mm: [u32; ISAAC_WORDS],
    aa: u32,
    bb: u32,
    cc: u32,
    out: [u32; ISAAC_WORDS],
    idx: usize,
}

impl fmt::Debug for Isaac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Isaac")
            .field("aa", &self.aa)
            .field("bb", &self.bb)
            .field("cc", &self.cc)
            .field("idx", &self.idx)
            .finish_non_exhaustive()
    }
}

impl PartialEq for Isaac {
    fn eq(&self, other: &Self) -> bool {
        self.mm == other.mm
            && self.out == other.out
            && (self.aa, self.bb, self.cc, self.idx) == (other.aa, other.bb, other.cc, other.idx)
    }
}

impl Eq for Isaac {}

#[rustfmt::skip]
#[inline(always)]
fn mix(s: &mut [u32; 8]) {
    let [mut a, mut b, mut c, mut d, mut e, mut f, mut g, mut h] = *s;
    a ^= b << 11; d = d.wrapping_add(a); b = b.wrapping_add(c);
    b ^= c >> 2;  e = e.wrapping_add(b); c = c.wrapping_add(d);
    c ^= d << 8;  f = f.wrapping_add(c); d = d.wrapping_add(e);
    d ^= e >> 16; g = g.wrapping_add(d); e = e.wrapping_add(f);
    e ^= f << 10; h = h.wrapping_add(e); f = f.wrapping_add(g);
    f ^= g >> 4;  a = a.wrapping_add(f); g = g.wrapping_add(h);
    g ^= h << 8;  b = b.wrapping_add(g); h = h.wrapping_add(a);
    h ^= a >> 9;  c = c.wrapping_add(h); a = a.wrapping_add(b);
    *s = [a, b, c, d, e, f, g, h];
}

impl Isaac {
    pub const VARIANT: &'static str = "isaac32(randinit-flag)";

    pub fn new(seed: &[u32; ISAAC_WORDS]) -> Self {
        let mut rng = Isaac {
            mm: [0; ISAAC_WORDS],
            aa: 0,
            bb: 0,
            cc: 0,
            out: [0; ISAAC_WORDS],
            idx: ISAAC_WORDS,
        };
        let mut s = [GOLDEN_RATIO; 8];
        for _ in 0..4 {
            mix(&mut s);
        }
        for pass in 0..2 {
            for i in (0..ISAAC_WORDS).step_by(8) {
                let src = if pass == 0 {
                    &seed[i..i + 8]
                } else {
                    &rng.mm[i..i + 8]
                };
                for (acc, w) in s.iter_mut().zip(src) {
                    *acc = acc.wrapping_add(*w);
                }
                mix(&mut s);
                rng.mm[i..i + 8].copy_from_slice(&s);
            }
        }
        // the block computed by randinit itself
        rng.shuffle();
        // first served block
        rng.shuffle();
        rng.idx = 0;
        rng
    }

    /// Seeds from arbitrary key bytes: little-endian packing into the 256-word
    /// seed array, zero padded. Keys longer than 1024 bytes are rejected.
    pub fn from_key_bytes(key: &[u8]) -> Result<Self> {
        if key.len() > ISAAC_WORDS * 4 {
            return Err(Error::InvalidKey(format!(
                "ISAAC key is {} bytes, at most {} allowed",
                key.len(),
                ISAAC_WORDS * 4
            )));
        }
        let mut seed = [0u32; ISAAC_WORDS];
        for (i, chunk) in key.chunks(4).enumerate() {
            let mut w = [0u8; 4];
            w[..chunk.len()].copy_from_slice(chunk);
            seed[i] = u32::from_le_bytes(w);
        }
        Ok(Self::new(&seed))
    }

    fn shuffle(&mut self) {
        self.cc = self.cc.wrapping_add(1);
        self.bb = self.bb.wrapping_add(self.cc);
        let (mut aa, mut bb) = (self.aa, self.bb);
        for i in 0..ISAAC_WORDS {
            let x = self.mm[i];
            aa ^= match i % 4 {
                0 => aa << 13,
                1 => aa >> 6,
                2 => aa << 2,
                _ => aa >> 16,
            };
            aa = self.mm[(i + 128) % ISAAC_WORDS].wrapping_add(aa);
            let y = self.mm[((x >> 2) as usize) % ISAAC_WORDS]
                .wrapping_add(aa)
                .wrapping_add(bb);
            self.mm[i] = y;
            bb = self.mm[((y >> 10) as usize) % ISAAC_WORDS].wrapping_add(x);
            self.out[i] = bb;
        }
        self.aa = aa;
        self.bb = bb;
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> u32 {
        if self.idx == ISAAC_WORDS {
            self.shuffle();
            self.idx = 0;
        }
        let w = self.out[self.idx];
        self.idx += 1;
        w
    }

    /// Number of words left in the current block before the next shuffle.
    pub fn buffered(&self) -> usize {
        ISAAC_WORDS - self.idx
    }
}

impl WordSource for Isaac {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        self.next()
    }
}
