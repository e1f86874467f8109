use crate::error::{Error, Result};

use super::WordSource;

/// Marsaglia's 32-bit xorshift with the shift triple (13, 17, 5).
///
/// The triple is full period: every nonzero state is visited once in
/// 2^32 - 1 steps. Zero is a fixed point and is rejected at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Xorshift {
    y: u32,
}

impl Xorshift {
    pub const SHIFTS: (u32, u32, u32) = (13, 17, 5);
    pub const VARIANT: &'static str = "xorshift32(13,17,5)";

    pub fn new(seed: u32) -> Result<Self> {
        if seed == 0 {
            return Err(Error::InvalidKey(
                "xorshift seed must be nonzero (0 is a fixed point)".into(),
            ));
        }
        Ok(Self { y: seed })
    }

    pub fn state(&self) -> u32 {
        self.y
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> u32 {
        let (a, b, c) = Self::SHIFTS;
        let mut y = self.y;
        y ^= y << a;
        y ^= y >> b;
        y ^= y << c;
        self.y = y;
        y
    }
}

impl WordSource for Xorshift {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        self.next()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn stores_seed_verbatim() {
        assert_eq!(Xorshift::new(1).unwrap().state(), 1);
        assert_eq!(Xorshift::new(0xDEAD_BEEF).unwrap().state(), 0xDEAD_BEEF);
    }

    #[test]
    fn zero_seed_rejected() {
        assert!(matches!(Xorshift::new(0), Err(Error::InvalidKey(_))));
    }

    #[test]
    fn first_steps_from_one() {
        // y = 1: 1 ^ (1 << 13) = 8193; 8193 >> 17 = 0; 8193 ^ (8193 << 5) = 270369
        let mut g = Xorshift::new(1).unwrap();
        assert_eq!(g.next(), 270_369);
        // second step evaluated independently with u64 arithmetic truncated to 32 bits
        let mut y: u64 = 270_369;
        y = (y ^ (y << 13)) & 0xFFFF_FFFF;
        y ^= y >> 17;
        y = (y ^ (y << 5)) & 0xFFFF_FFFF;
        assert_eq!(g.next() as u64, y);
        assert_eq!(y, 67_634_689);
    }

    #[test]
    fn no_repeats_over_ten_thousand_steps() {
        let mut g = Xorshift::new(2_463_534_242).unwrap();
        let mut seen = HashSet::new();
        for _ in 0..10_000 {
            let v = g.next();
            assert_ne!(v, 0);
            assert!(seen.insert(v));
        }
    }

    proptest::proptest! {
        #[test]
        fn never_outputs_zero(seed in 1u32..) {
            let mut g = Xorshift::new(seed).unwrap();
            for _ in 0..64 {
                proptest::prop_assert_ne!(g.next(), 0);
            }
        }
    }
}
