//! The composite CI(ISAAC, XORshift) generator.
//!
//! One round draws a word `a` from ISAAC, sets `m = a mod 2 + c`, then flips
//! `m` cells, each chosen as `b mod N` for a fresh XORshift word `b`. The
//! state after the round is the output.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use sha2::{Digest, Sha256};

use crate::ci::BitState;
use crate::error::{Error, Result};
use crate::gen::{Isaac, Scripted, WordSource, Xorshift};

/// How an XORshift word is reduced to a cell index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IndexReduction {
    /// `b mod N`, biased when N does not divide 2^32.
    #[default]
    Modulo,
    /// Redraw words above the largest multiple of N, then reduce. Unbiased,
    /// but consumes a variable number of XORshift words per flip.
    Rejection,
}

impl IndexReduction {
    pub fn name(self) -> &'static str {
        match self {
            IndexReduction::Modulo => "modulo",
            IndexReduction::Rejection => "rejection",
        }
    }
}

/// How a [`SeedKey`] seeds the two input generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KeySchedule {
    /// ISAAC is seeded from the key bytes, XORshift from a hash of the
    /// XORshift seed together with x0, so every key bit reaches the strategy.
    #[default]
    Mixed,
    /// ISAAC from the key bytes and XORshift from the seed verbatim. x0 then
    /// only fixes the starting point: two keys differing in x0 alone produce
    /// streams that differ in exactly those cells forever.
    Direct,
}

impl KeySchedule {
    pub fn name(self) -> &'static str {
        match self {
            KeySchedule::Mixed => "mixed",
            KeySchedule::Direct => "direct",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiPrngParams {
    pub n_cells: usize,
    /// Base iteration count; a round performs `c` or `c + 1` flips.
    pub c: u32,
    /// Emit x0 before the first round.
    pub emit_initial: bool,
    /// Accept `c < 3N`.
    pub allow_unsafe: bool,
    pub reduction: IndexReduction,
    pub schedule: KeySchedule,
}

impl Default for CiPrngParams {
    fn default() -> Self {
        Self::with_cells(32)
    }
}

impl CiPrngParams {
    pub const MAX_CELLS: usize = 64;

    /// `n_cells` cells with the recommended minimum `c = 3N`.
    pub fn with_cells(n_cells: usize) -> Self {
        CiPrngParams {
            n_cells,
            c: 3 * n_cells as u32,
            emit_initial: true,
            allow_unsafe: false,
            reduction: IndexReduction::Modulo,
            schedule: KeySchedule::Mixed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(BitState::MIN_CELLS..=Self::MAX_CELLS).contains(&self.n_cells) {
            return Err(Error::InvalidParams(format!(
                "N must be in [{}, {}], got {}",
                BitState::MIN_CELLS,
                Self::MAX_CELLS,
                self.n_cells
            )));
        }
        let min_c = 3 * self.n_cells as u64;
        if (self.c as u64) < min_c && !self.allow_unsafe {
            return Err(Error::InvalidParams(format!(
                "c = {} is below 3N = {min_c}; pass the unsafe-parameters override to allow it",
                self.c
            )));
        }
        if self.c == u32::MAX {
            return Err(Error::InvalidParams("c + 1 overflows".into()));
        }
        Ok(())
    }
}

/// Key material: initial state, ISAAC key bytes and XORshift seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedKey {
    pub x0: BitState,
    pub isaac_key: Vec<u8>,
    pub xorshift_seed: u32,
}

impl SeedKey {
    pub fn new(x0: BitState, isaac_key: impl Into<Vec<u8>>, xorshift_seed: u32) -> Result<Self> {
        if xorshift_seed == 0 {
            return Err(Error::InvalidKey("xorshift seed must be nonzero".into()));
        }
        Ok(SeedKey {
            x0,
            isaac_key: isaac_key.into(),
            xorshift_seed,
        })
    }

    /// Key derived from the wall clock: x0 is the microsecond fraction of the
    /// current time reduced mod 2^N. Not reproducible; use for demos only.
    pub fn from_time(n_cells: usize) -> Result<Self> {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_err(|e| Error::InvalidKey(e.to_string()))?;
        let micros = now.subsec_micros() as u64;
        let mask = if n_cells >= 64 {
            u64::MAX
        } else {
            (1u64 << n_cells) - 1
        };
        let x0 = BitState::from_word(micros & mask, n_cells)?;
        let nanos = now.as_nanos().to_le_bytes();
        let h = Sha256::digest(nanos);
        let seed = u32::from_le_bytes([h[0], h[1], h[2], h[3]]).max(1);
        SeedKey::new(x0, h[4..].to_vec(), seed)
    }

    /// Short stable hash of the key, safe to print next to outputs.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(b"cirng/fingerprint");
        h.update((self.x0.n_cells() as u32).to_le_bytes());
        h.update(self.x0.to_string().as_bytes());
        h.update((self.isaac_key.len() as u32).to_le_bytes());
        h.update(&self.isaac_key);
        h.update(self.xorshift_seed.to_le_bytes());
        to_hex(&h.finalize()[..8])
    }

    /// An independent key for a named purpose. Every field is rehashed with
    /// the tag, so streams from different tags do not reveal each other.
    pub fn derive(&self, tag: &str) -> SeedKey {
        let digest = |part: u8| {
            let mut h = Sha256::new();
            h.update(b"cirng/derive");
            h.update((tag.len() as u32).to_le_bytes());
            h.update(tag.as_bytes());
            h.update([part]);
            h.update(self.x0.to_string().as_bytes());
            h.update((self.isaac_key.len() as u32).to_le_bytes());
            h.update(&self.isaac_key);
            h.update(self.xorshift_seed.to_le_bytes());
            h.finalize()
        };
        let n = self.x0.n_cells();
        let x0_hash = digest(0);
        let mask = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
        let x0_word = u64::from_le_bytes(x0_hash[..8].try_into().unwrap()) & mask;
        let x0 = if n <= 64 {
            BitState::from_word(x0_word, n).expect("masked to width")
        } else {
            self.x0.clone()
        };
        let seed_hash = digest(2);
        SeedKey {
            x0,
            isaac_key: digest(1).to_vec(),
            xorshift_seed: u32::from_le_bytes(seed_hash[..4].try_into().unwrap()).max(1),
        }
    }

    fn xorshift_seed_for(&self, schedule: KeySchedule) -> u32 {
        match schedule {
            KeySchedule::Direct => self.xorshift_seed,
            KeySchedule::Mixed => {
                let mut h = Sha256::new();
                h.update(b"cirng/xorshift");
                h.update(self.xorshift_seed.to_le_bytes());
                h.update((self.x0.n_cells() as u32).to_le_bytes());
                h.update(self.x0.to_string().as_bytes());
                let d = h.finalize();
                match u32::from_le_bytes([d[0], d[1], d[2], d[3]]) {
                    0 => self.xorshift_seed,
                    s => s,
                }
            }
        }
    }
}

fn to_hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Names the input stream in the self-description record.
pub trait Named {
    fn variant(&self) -> &'static str;
}

impl Named for Isaac {
    fn variant(&self) -> &'static str {
        Isaac::VARIANT
    }
}

impl Named for Xorshift {
    fn variant(&self) -> &'static str {
        Xorshift::VARIANT
    }
}

impl Named for Scripted {
    fn variant(&self) -> &'static str {
        "injected"
    }
}

/// The generator. `A` supplies iteration counts, `B` supplies cell indices.
#[derive(Clone, Debug)]
pub struct CiPrng<A = Isaac, B = Xorshift> {
    params: CiPrngParams,
    // cell k lives at bit N-1-k, so the word is the packed state
    state: u64,
    counts: A,
    cells: B,
    initial_emitted: bool,
    pending: u64,
    pending_len: u32,
    rejection_limit: u64,
    fingerprint: Option<String>,
}

impl CiPrng<Isaac, Xorshift> {
    pub fn new(key: &SeedKey, params: CiPrngParams) -> Result<Self> {
        params.validate()?;
        let isaac = Isaac::from_key_bytes(&key.isaac_key)?;
        // reject a zero seed even when the schedule would hash it away
        Xorshift::new(key.xorshift_seed)?;
        let xorshift = Xorshift::new(key.xorshift_seed_for(params.schedule))?;
        let mut g = CiPrng::with_sources(&key.x0, params, isaac, xorshift)?;
        g.fingerprint = Some(key.fingerprint());
        Ok(g)
    }
}

/// 1-based strategy and iteration counts of the worked example with N = 5.
pub const TABLE2_X0: [bool; 5] = [true, false, true, false, false];
pub const TABLE2_M: [u32; 13] = [4, 5, 4, 4, 4, 4, 5, 5, 5, 5, 4, 5, 4];
pub const TABLE2_S: [u32; 13] = [2, 4, 2, 2, 5, 1, 1, 5, 5, 3, 2, 3, 3];
/// The worked example's strategy covers x0 plus three rounds.
pub const TABLE2_BITS: usize = 20;

/// Generator replaying the worked example: N = 5, c = 4, injected streams.
pub fn table2_fixture() -> CiPrng<Scripted, Scripted> {
    let params = CiPrngParams {
        c: 4,
        allow_unsafe: true,
        ..CiPrngParams::with_cells(5)
    };
    let counts: Vec<u32> = TABLE2_M.iter().map(|m| m - params.c).collect();
    let cells: Vec<u32> = TABLE2_S.iter().map(|s| s - 1).collect();
    let x0 = BitState::new(TABLE2_X0.to_vec()).unwrap();
    CiPrng::with_sources(&x0, params, Scripted::new(counts), Scripted::new(cells))
        .expect("fixture parameters are valid")
}

impl<A: WordSource, B: WordSource> CiPrng<A, B> {
    /// Drives the iterations from explicit word sources instead of keyed
    /// ISAAC / XORshift instances.
    pub fn with_sources(x0: &BitState, params: CiPrngParams, counts: A, cells: B) -> Result<Self> {
        params.validate()?;
        if x0.n_cells() != params.n_cells {
            return Err(Error::InvalidKey(format!(
                "x0 has {} cells but N = {}",
                x0.n_cells(),
                params.n_cells
            )));
        }
        let n = params.n_cells as u64;
        Ok(CiPrng {
            state: x0.pack(),
            rejection_limit: ((1u64 << 32) / n) * n,
            params,
            counts,
            cells,
            initial_emitted: false,
            pending: 0,
            pending_len: 0,
            fingerprint: None,
        })
    }

    pub fn params(&self) -> &CiPrngParams {
        &self.params
    }

    pub fn n_cells(&self) -> usize {
        self.params.n_cells
    }

    pub fn state(&self) -> BitState {
        BitState::from_word(self.state, self.params.n_cells).expect("state fits N")
    }

    #[inline]
    fn cell_index(&mut self) -> u32 {
        let n = self.params.n_cells as u32;
        match self.params.reduction {
            IndexReduction::Modulo => self.cells.next_u32() % n,
            IndexReduction::Rejection => loop {
                let b = self.cells.next_u32();
                if (b as u64) < self.rejection_limit {
                    break b % n;
                }
            },
        }
    }

    /// Number of flips in the next round, drawn from the count source.
    #[inline]
    fn draw_m(&mut self) -> u32 {
        (self.counts.next_u32() & 1) + self.params.c
    }

    /// Next emitted state, packed; cell 0 is the most significant bit.
    #[inline]
    pub fn next_word(&mut self) -> u64 {
        if self.params.emit_initial && !self.initial_emitted {
            self.initial_emitted = true;
            return self.state;
        }
        self.initial_emitted = true;
        let m = self.draw_m();
        let top = self.params.n_cells as u32 - 1;
        let mut x = self.state;
        for _ in 0..m {
            x ^= 1u64 << (top - self.cell_index());
        }
        self.state = x;
        x
    }

    pub fn next_round(&mut self) -> BitState {
        let w = self.next_word();
        BitState::from_word(w, self.params.n_cells).expect("state fits N")
    }

    fn next_bit(&mut self) -> bool {
        if self.pending_len == 0 {
            self.pending = self.next_word();
            self.pending_len = self.params.n_cells as u32;
        }
        self.pending_len -= 1;
        (self.pending >> self.pending_len) & 1 == 1
    }

    /// The next `count` bits of the concatenated emitted states. Bits of a
    /// partially consumed state carry over to the next call.
    pub fn next_bits(&mut self, count: usize) -> Vec<bool> {
        let mut out = Vec::with_capacity(count);
        self.extend_bits(&mut out, count);
        out
    }

    pub fn extend_bits(&mut self, out: &mut Vec<bool>, count: usize) {
        out.reserve(count);
        for _ in 0..count {
            out.push(self.next_bit());
        }
    }

    /// Fills `buf` with bits packed MSB-first, continuing the bit stream.
    pub fn fill_bytes(&mut self, buf: &mut [u8]) {
        for byte in buf {
            *byte = (0..8).fold(0u8, |acc, _| (acc << 1) | self.next_bit() as u8);
        }
    }
}

impl<A: WordSource + Named, B: WordSource + Named> CiPrng<A, B> {
    /// Flat key/value record identifying the algorithm, parameters and key.
    pub fn describe(&self) -> Vec<(String, String)> {
        let p = &self.params;
        let mut rows = vec![
            ("algorithm", "CI(ISAAC,XORshift)".to_string()),
            ("iteration_function", "vectorial-negation".to_string()),
            ("count_source", self.counts.variant().to_string()),
            ("cell_source", self.cells.variant().to_string()),
            ("n_cells", p.n_cells.to_string()),
            ("c", p.c.to_string()),
            ("emit_initial", p.emit_initial.to_string()),
            ("unsafe_params", p.allow_unsafe.to_string()),
            ("index_reduction", p.reduction.name().to_string()),
            ("key_schedule", p.schedule.name().to_string()),
        ];
        if let Some(fp) = &self.fingerprint {
            rows.push(("key_fingerprint", fp.clone()));
        }
        rows.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }
}
