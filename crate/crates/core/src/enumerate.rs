//! Streaming enumeration of `ASM(n)`.
//!
//! After `i` rows, the column partial sums of an ASM form a 0/1 vector with
//! `i` ones. A row is admissible between two such vectors when its
//! left-to-right partial sums stay in `{0, 1}` and end at 1. Choices are
//! tried in increasing lexicographic order, so the stream is sorted
//! lexicographically by corner-sum matrix.

use crate::asm::Asm;
use crate::error::{Error, Result};

/// Largest size the stream accepts.
pub const MAX_ENUMERATION_N: usize = 8;

/// Column partial-sum vectors are bitmasks with column 1 as the most
/// significant bit, so numeric order is lexicographic order.
pub struct AsmStream {
    n: usize,
    transitions: Vec<Vec<u16>>,
    /// Partial-sum vector after each placed row, with the cursor into its
    /// list of successors.
    levels: Vec<(u16, usize)>,
}

fn digit(mask: u16, n: usize, j: usize) -> i8 {
    (mask >> (n - 1 - j) & 1) as i8
}

fn admissible(from: u16, to: u16, n: usize) -> bool {
    let mut partial = 0i8;
    for j in 0..n {
        partial += digit(to, n, j) - digit(from, n, j);
        if !(0..=1).contains(&partial) {
            return false;
        }
    }
    partial == 1
}

impl AsmStream {
    fn new(n: usize) -> AsmStream {
        let size = 1usize << n;
        let transitions = (0..size as u16)
            .map(|from| {
                (0..size as u16)
                    .filter(|&to| admissible(from, to, n))
                    .collect()
            })
            .collect();
        AsmStream {
            n,
            transitions,
            levels: vec![(0, 0)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn build(&self) -> Asm {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for w in self.levels.windows(2) {
            let (prev, cur) = (w[0].0, w[1].0);
            entries.extend((0..n).map(|j| digit(cur, n, j) - digit(prev, n, j)));
        }
        Asm::from_raw(n, entries)
    }
}

impl Iterator for AsmStream {
    type Item = Asm;

    fn next(&mut self) -> Option<Asm> {
        loop {
            let depth = self.levels.len().checked_sub(1)?;
            if depth == self.n {
                let a = self.build();
                self.levels.pop();
                return Some(a);
            }
            let (mask, cursor) = self.levels[depth];
            match self.transitions[mask as usize].get(cursor) {
                Some(&next) => {
                    self.levels[depth].1 += 1;
                    self.levels.push((next, 0));
                }
                None => {
                    self.levels.pop();
                }
            }
        }
    }
}

/// Every `n × n` ASM, each exactly once, for `1 ≤ n ≤ 8`.
pub fn enumerate_asms(n: usize) -> Result<AsmStream> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::SizeBoundExceeded {
            got: n,
            max: MAX_ENUMERATION_N,
        });
    }
    Ok(AsmStream::new(n))
}

/// `ASM(n)` collected in stream order.
pub fn all_asms(n: usize) -> Result<Vec<Asm>> {
    Ok(enumerate_asms(n)?.collect())
}
