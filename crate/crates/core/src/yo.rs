//! Two minimal primes of different heights for ASMs with a badblock.
//!
//! Generators of the initial ideal that avoid the dominant variables are
//! grouped by their southwest cell (their row-major largest variable). The
//! ideal `I_{i,j}` is generated by those whose southwest cell is at most
//! `(i, j)` in row-major order. Starting from row `r`, the set `Y` holds
//! the southwest cell of every minimal generator of `I_{r,n}` and `O` the
//! northeast cell. Walking the remaining cells in row-major order, a cell
//! joins a set whenever `I` at that cell escapes the prime the set spans.

use serde::Serialize;

use crate::asm::{dominant_part, Asm};
use crate::cells::{Cell, CellSet};
use crate::error::{Error, Result};
use crate::ideal::{fulton_minor_specs, minimalize};
use crate::pattern::is_badblock_at;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YoPrimes {
    /// Southwest vertices of the generators of `I_{r,n}`.
    pub base_y: CellSet,
    /// Northeast vertices of the generators of `I_{r,n}`.
    pub base_o: CellSet,
    /// Final southwest-grown prime, including the dominant variables.
    pub y: CellSet,
    /// Final northeast-grown prime, including the dominant variables.
    pub o: CellSet,
}

struct Grower {
    n: usize,
    /// Lead terms avoiding the dominant part, with their southwest index.
    gens: Vec<(u128, usize)>,
}

impl Grower {
    fn new(a: &Asm) -> Grower {
        let n = a.n();
        let dom = dominant_part(a).bits();
        let gens = fulton_minor_specs(a)
            .iter()
            .map(|m| m.lead_term(n))
            .filter(|t| t.bits() & dom == 0)
            .map(|t| (t.bits(), 127 - t.bits().leading_zeros() as usize))
            .collect();
        Grower { n, gens }
    }

    fn escapes(&self, upto: usize, prime: u128) -> bool {
        self.gens
            .iter()
            .any(|&(g, sw)| sw <= upto && g & prime == 0)
    }

    /// `(Y, O)` at `stop`, without the dominant variables.
    fn sets_at(&self, r: usize, stop: Cell) -> (CellSet, CellSet, CellSet, CellSet) {
        let n = self.n;
        let base_idx = r * n - 1;
        let base_gens = minimalize(
            self.gens
                .iter()
                .filter(|&&(_, sw)| sw <= base_idx)
                .map(|&(g, _)| g)
                .collect(),
        );
        let mut y = 0u128;
        let mut o = 0u128;
        for g in base_gens {
            y |= 1u128 << (127 - g.leading_zeros());
            o |= 1u128 << g.trailing_zeros();
        }
        let (base_y, base_o) = (y, o);
        let stop_idx = (stop.row - 1) * n + (stop.col - 1);
        for idx in base_idx + 1..=stop_idx.min(n * n - 1) {
            let bit = 1u128 << idx;
            if self.escapes(idx, y) {
                y |= bit;
            }
            if self.escapes(idx, o) {
                o |= bit;
            }
        }
        (
            CellSet::from_bits(n, base_y),
            CellSet::from_bits(n, base_o),
            CellSet::from_bits(n, y),
            CellSet::from_bits(n, o),
        )
    }
}

/// The two primes for a badblock at `(r, c)`, using the lenient reading of
/// the badblock conditions.
pub fn construct_yo_primes(a: &Asm, r: usize, c: usize) -> Result<YoPrimes> {
    if !is_badblock_at(a, r, c, false) {
        return Err(Error::NotBadblock(r, c));
    }
    let n = a.n();
    let dom = dominant_part(a);
    let (base_y, base_o, y, o) = Grower::new(a).sets_at(r, Cell::new(n, n));
    Ok(YoPrimes {
        base_y,
        base_o,
        y: y.union(&dom),
        o: o.union(&dom),
    })
}

/// Intermediate sets `(Y_{stop}, O_{stop})` of the walk, without the
/// dominant variables. `stop` must not precede `(r, n)`.
pub fn yo_sets_at(a: &Asm, r: usize, c: usize, stop: Cell) -> Result<(CellSet, CellSet)> {
    if !is_badblock_at(a, r, c, false) {
        return Err(Error::NotBadblock(r, c));
    }
    if stop < Cell::new(r, a.n()) || stop.row > a.n() || stop.col == 0 || stop.col > a.n() {
        return Err(Error::IndexOutOfRange(stop.row, stop.col));
    }
    let (_, _, y, o) = Grower::new(a).sets_at(r, stop);
    Ok((y, o))
}
