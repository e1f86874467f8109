use crate::gen::{Isaac, WordSource, Xorshift};
use crate::prng::CiPrng;

/// Anything that can produce a bit stream for analysis or export.
pub trait BitSource {
    fn extend_bits(&mut self, out: &mut Vec<bool>, count: usize);

    fn label(&self) -> String;

    fn take_bits(&mut self, count: usize) -> Vec<bool> {
        let mut v = Vec::with_capacity(count);
        self.extend_bits(&mut v, count);
        v
    }
}

impl<A: WordSource, B: WordSource> BitSource for CiPrng<A, B> {
    fn extend_bits(&mut self, out: &mut Vec<bool>, count: usize) {
        CiPrng::extend_bits(self, out, count)
    }

    fn label(&self) -> String {
        "CI(ISAAC,XORshift)".into()
    }
}

impl<S: BitSource + ?Sized> BitSource for &mut S {
    fn extend_bits(&mut self, out: &mut Vec<bool>, count: usize) {
        (**self).extend_bits(out, count)
    }

    fn label(&self) -> String {
        (**self).label()
    }
}

impl<S: BitSource + ?Sized> BitSource for Box<S> {
    fn extend_bits(&mut self, out: &mut Vec<bool>, count: usize) {
        (**self).extend_bits(out, count)
    }

    fn label(&self) -> String {
        (**self).label()
    }
}

/// Serializes a 32-bit word source MSB-first.
#[derive(Clone, Debug)]
pub struct WordBits<S> {
    src: S,
    name: String,
    word: u32,
    left: u32,
}

impl<S: WordSource> WordBits<S> {
    pub fn new(src: S, name: impl Into<String>) -> Self {
        WordBits {
            src,
            name: name.into(),
            word: 0,
            left: 0,
        }
    }
}

impl WordBits<Isaac> {
    pub fn isaac(g: Isaac) -> Self {
        Self::new(g, "ISAAC")
    }
}

impl WordBits<Xorshift> {
    pub fn xorshift(g: Xorshift) -> Self {
        Self::new(g, "XORshift")
    }
}

impl<S: WordSource> BitSource for WordBits<S> {
    fn extend_bits(&mut self, out: &mut Vec<bool>, count: usize) {
        out.reserve(count);
        for _ in 0..count {
            if self.left == 0 {
                self.word = self.src.next_u32();
                self.left = 32;
            }
            self.left -= 1;
            out.push((self.word >> self.left) & 1 == 1);
        }
    }

    fn label(&self) -> String {
        self.name.clone()
    }
}

/// Constant zero stream.
#[derive(Clone, Copy, Debug, Default)]
pub struct Zeros;

impl BitSource for Zeros {
    fn extend_bits(&mut self, out: &mut Vec<bool>, count: usize) {
        out.resize(out.len() + count, false);
    }

    fn label(&self) -> String {
        "zeros".into()
    }
}

/// 0101... starting with 0.
#[derive(Clone, Copy, Debug, Default)]
pub struct Alternating {
    next: bool,
}

impl BitSource for Alternating {
    fn extend_bits(&mut self, out: &mut Vec<bool>, count: usize) {
        out.reserve(count);
        for _ in 0..count {
            out.push(self.next);
            self.next = !self.next;
        }
    }

    fn label(&self) -> String {
        "alternating".into()
    }
}
