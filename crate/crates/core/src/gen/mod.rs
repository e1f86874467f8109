//! The two input generators driving the chaotic iterations.
//!
//! [`Isaac`] chooses how many cells are iterated per round and [`Xorshift`]
//! chooses which cell. Both implement [`WordSource`] so the composite
//! generator can also be driven by scripted streams.

mod isaac;
mod xorshift;

pub use isaac::{Isaac, ISAAC_WORDS};
pub use xorshift::Xorshift;

/// A stream of 32-bit words.
pub trait WordSource {
    fn next_u32(&mut self) -> u32;
}

impl<T: WordSource + ?Sized> WordSource for &mut T {
    fn next_u32(&mut self) -> u32 {
        (**self).next_u32()
    }
}

impl<T: WordSource + ?Sized> WordSource for Box<T> {
    fn next_u32(&mut self) -> u32 {
        (**self).next_u32()
    }
}

/// Replays a fixed list of words. Panics once the list is exhausted.
///
/// This is the injection seam used to reproduce worked examples bit-exactly.
#[derive(Clone, Debug)]
pub struct Scripted {
    words: Vec<u32>,
    pos: usize,
}

impl Scripted {
    pub fn new(words: impl Into<Vec<u32>>) -> Self {
        Self {
            words: words.into(),
            pos: 0,
        }
    }

    pub fn consumed(&self) -> usize {
        self.pos
    }
}

impl WordSource for Scripted {
    fn next_u32(&mut self) -> u32 {
        let w = *self
            .words
            .get(self.pos)
            .unwrap_or_else(|| panic!("scripted source exhausted after {} words", self.pos));
        self.pos += 1;
        w
    }
}
