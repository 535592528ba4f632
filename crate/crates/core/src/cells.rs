//! Cells of the `n × n` variable grid and sets of them.
//!
//! Cells are 1-indexed, row 1 at the top. A cell `(i, j)` has the linear
//! index `(i - 1) * n + (j - 1)`, and every ordering in this crate that is
//! not stated otherwise is the order of linear indices, i.e. row-major.
//! A [`CellSet`] is a bitset over linear indices, so grids are limited to
//! [`MAX_GRID`] rows.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest grid side supported by [`CellSet`].
pub const MAX_GRID: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Variable label in the text form `z_i_j`.
    pub fn label(&self) -> String {
        format!("z_{}_{}", self.row, self.col)
    }

    /// Parses `z_i_j`.
    pub fn parse_label(s: &str) -> Result<Cell> {
        let bad = || Error::Parse(format!("bad variable label `{s}`"));
        let rest = s.strip_prefix("z_").ok_or_else(bad)?;
        let (i, j) = rest.split_once('_').ok_or_else(bad)?;
        let row = i.parse().map_err(|_| bad())?;
        let col = j.parse().map_err(|_| bad())?;
        Ok(Cell { row, col })
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Cell { row, col }
    }
}

/// A set of cells of the `n × n` grid.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellSet {
    n: usize,
    bits: u128,
}

impl CellSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_GRID, "grid side {n} exceeds {MAX_GRID}");
        CellSet { n, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        let mut s = CellSet::empty(n);
        let count = n * n;
        s.bits = if count == 128 {
            u128::MAX
        } else {
            (1u128 << count) - 1
        };
        s
    }

    pub fn from_bits(n: usize, bits: u128) -> Self {
        let s = CellSet { n, bits };
        debug_assert_eq!(s.bits & !CellSet::full(n).bits, 0);
        s
    }

    /// Builds a set from `(row, col)` pairs. Panics on cells outside the grid.
    pub fn from_cells<I, C>(n: usize, cells: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<Cell>,
    {
        let mut s = CellSet::empty(n);
        for c in cells {
            s.insert(c.into());
        }
        s
    }

    pub fn try_from_cells<I, C>(n: usize, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: Into<Cell>,
    {
        if n > MAX_GRID {
            return Err(Error::SizeBoundExceeded {
                got: n,
                max: MAX_GRID,
            });
        }
        let mut s = CellSet::empty(n);
        for c in cells {
            let c = c.into();
            if c.row == 0 || c.col == 0 || c.row > n || c.col > n {
                return Err(Error::IndexOutOfRange(c.row, c.col));
            }
            s.insert(c);
        }
        Ok(s)
    }

    pub fn singleton(n: usize, cell: Cell) -> Self {
        let mut s = CellSet::empty(n);
        s.insert(cell);
        s
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn index_of(&self, cell: Cell) -> usize {
        assert!(
            (1..=self.n).contains(&cell.row) && (1..=self.n).contains(&cell.col),
            "cell {cell} outside the {n}x{n} grid",
            n = self.n
        );
        (cell.row - 1) * self.n + (cell.col - 1)
    }

    #[inline]
    pub fn cell_at(&self, index: usize) -> Cell {
        Cell::new(index / self.n + 1, index % self.n + 1)
    }

    pub fn insert(&mut self, cell: Cell) {
        let i = self.index_of(cell);
        self.bits |= 1u128 << i;
    }

    pub fn remove(&mut self, cell: Cell) {
        let i = self.index_of(cell);
        self.bits &= !(1u128 << i);
    }

    #[inline]
    pub fn contains(&self, cell: Cell) -> bool {
        if cell.row == 0 || cell.col == 0 || cell.row > self.n || cell.col > self.n {
            return false;
        }
        self.bits >> self.index_of(cell) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn union(&self, other: &CellSet) -> CellSet {
        debug_assert_eq!(self.n, other.n);
        CellSet {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    #[inline]
    pub fn intersection(&self, other: &CellSet) -> CellSet {
        debug_assert_eq!(self.n, other.n);
        CellSet {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    #[inline]
    pub fn difference(&self, other: &CellSet) -> CellSet {
        debug_assert_eq!(self.n, other.n);
        CellSet {
            n: self.n,
            bits: self.bits & !other.bits,
        }
    }

    #[inline]
    pub fn complement(&self) -> CellSet {
        CellSet::full(self.n).difference(self)
    }

    #[inline]
    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_disjoint(&self, other: &CellSet) -> bool {
        self.bits & other.bits == 0
    }

    /// Cells in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = Cell> + '_ {
        let n = self.n;
        BitIter(self.bits).map(move |i| Cell::new(i / n + 1, i % n + 1))
    }

    pub fn to_vec(&self) -> Vec<Cell> {
        self.iter().collect()
    }

    /// Row-major smallest cell.
    pub fn first(&self) -> Option<Cell> {
        (self.bits != 0).then(|| self.cell_at(self.bits.trailing_zeros() as usize))
    }

    /// Row-major largest cell.
    pub fn last(&self) -> Option<Cell> {
        (self.bits != 0).then(|| self.cell_at(127 - self.bits.leading_zeros() as usize))
    }

    pub fn labels(&self) -> Vec<String> {
        self.iter().map(|c| c.label()).collect()
    }

    /// Same cells viewed in a larger grid.
    pub fn embed(&self, n: usize) -> CellSet {
        assert!(n >= self.n);
        CellSet::from_cells(n, self.iter())
    }
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Iterates the positions of set bits, lowest first.
pub(crate) struct BitIter(pub u128);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl Serialize for CellSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CellSet", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("cells", &self.labels())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CellSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            cells: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        let cells = raw
            .cells
            .iter()
            .map(|l| Cell::parse_label(l))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        CellSet::try_from_cells(raw.n, cells).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_index_is_row_major() {
        let s = CellSet::from_cells(4, [(2, 3), (1, 4), (1, 1)]);
        assert_eq!(
            s.to_vec(),
            vec![Cell::new(1, 1), Cell::new(1, 4), Cell::new(2, 3)]
        );
        assert_eq!(s.first(), Some(Cell::new(1, 1)));
        assert_eq!(s.last(), Some(Cell::new(2, 3)));
        assert_eq!(s.index_of(Cell::new(2, 3)), 6);
    }

    #[test]
    fn label_round_trip() {
        let c = Cell::new(10, 3);
        assert_eq!(Cell::parse_label(&c.label()).unwrap(), c);
        assert!(Cell::parse_label("x_1_2").is_err());
    }

    #[test]
    fn full_grid_of_max_side() {
        assert_eq!(CellSet::full(MAX_GRID).len(), 121);
        assert_eq!(CellSet::full(3).complement(), CellSet::empty(3));
    }

    #[test]
    fn out_of_grid_cells_are_rejected() {
        assert_eq!(
            CellSet::try_from_cells(3, [(4, 1)]),
            Err(Error::IndexOutOfRange(4, 1))
        );
        assert!(!CellSet::empty(3).contains(Cell::new(0, 1)));
    }
}
