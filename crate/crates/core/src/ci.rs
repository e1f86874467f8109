//! Chaotic iterations over an N-cell boolean state.
//!
//! At step n only the cell named by the strategy element S^n is updated by
//! the iteration function; every other cell keeps its value. The shipped
//! iteration function is the vectorial negation, so one step flips one cell.
//!
//! Cells are indexed from 0 here. Cell 0 is the most significant bit when a
//! state is packed into an integer.

use std::fmt;

use crate::error::{Error, Result};

/// The state x of the iterated system.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitState {
    bits: Vec<bool>,
}

impl BitState {
    pub const MIN_CELLS: usize = 2;

    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.len() < Self::MIN_CELLS {
            return Err(Error::InvalidParams(format!(
                "a state needs at least {} cells, got {}",
                Self::MIN_CELLS,
                bits.len()
            )));
        }
        Ok(Self { bits })
    }

    pub fn zeros(n_cells: usize) -> Result<Self> {
        Self::new(vec![false; n_cells])
    }

    /// Unpacks the low `n_cells` bits of `value`, most significant first.
    pub fn from_word(value: u64, n_cells: usize) -> Result<Self> {
        if n_cells > 64 {
            return Err(Error::InvalidParams(format!(
                "cannot unpack {n_cells} cells from a 64-bit word"
            )));
        }
        if n_cells < 64 && value >> n_cells != 0 {
            return Err(Error::OutOfRange {
                value,
                bits: n_cells as u32,
            });
        }
        Self::new(
            (0..n_cells)
                .map(|k| (value >> (n_cells - 1 - k)) & 1 == 1)
                .collect(),
        )
    }

    pub fn n_cells(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    /// In-place negation of cell `i`. Panics if `i` is out of range.
    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.bits[i] = !self.bits[i];
    }

    pub fn hamming(&self, other: &BitState) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Sum of bits[k] * 2^(N-1-k). Panics for states wider than 64 cells.
    pub fn pack(&self) -> u64 {
        pack_bits(self)
    }
}

impl fmt::Debug for BitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitState({self})")
    }
}

impl fmt::Display for BitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A sequence of cell indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Strategy(Vec<usize>);

impl Strategy {
    pub fn new(indices: Vec<usize>) -> Self {
        Strategy(indices)
    }

    /// Builds a strategy from 1-based cell numbers.
    pub fn from_one_based(cells: &[usize]) -> Result<Self> {
        cells
            .iter()
            .map(|&c| {
                c.checked_sub(1)
                    .ok_or_else(|| Error::InvalidParams("cell numbers start at 1".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Strategy)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check(&self, n_cells: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i >= n_cells) {
            Some(&i) => Err(Error::OutOfRange {
                value: i as u64,
                bits: n_cells as u32,
            }),
            None => Ok(()),
        }
    }
}

impl FromIterator<usize> for Strategy {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Strategy(iter.into_iter().collect())
    }
}

/// Component `i` of f(x): the new value of the iterated cell.
pub trait IterationFunction {
    fn component(&self, x: &BitState, i: usize) -> bool;
}

/// f0, the vectorial boolean negation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Negation;

impl IterationFunction for Negation {
    #[inline]
    fn component(&self, x: &BitState, i: usize) -> bool {
        !x.get(i)
    }
}

/// One chaotic iteration under f0: `x` with cell `i` negated.
///
/// Panics if `i >= x.n_cells()`.
pub fn ci_step(x: &BitState, i: usize) -> BitState {
    ci_step_with(&Negation, x, i)
}

pub fn ci_step_with<F: IterationFunction>(f: &F, x: &BitState, i: usize) -> BitState {
    assert!(
        i < x.n_cells(),
        "cell index {i} out of range for {} cells",
        x.n_cells()
    );
    let mut next = x.clone();
    next.bits[i] = f.component(x, i);
    next
}

/// Left fold of [`ci_step`] over the strategy.
pub fn ci_run(x: &BitState, s: &Strategy) -> Result<BitState> {
    ci_run_with(&Negation, x, s)
}

pub fn ci_run_with<F: IterationFunction>(f: &F, x: &BitState, s: &Strategy) -> Result<BitState> {
    s.check(x.n_cells())?;
    let mut state = x.clone();
    for &i in s.indices() {
        let v = f.component(&state, i);
        state.bits[i] = v;
    }
    Ok(state)
}

/// Packs the state into an integer, cell 0 most significant.
///
/// Panics if the state has more than 64 cells.
pub fn pack_bits(x: &BitState) -> u64 {
    assert!(
        x.n_cells() <= 64,
        "cannot pack {} cells into 64 bits",
        x.n_cells()
    );
    x.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
}
