//! Alternating sign matrices and their classical invariants.
//!
//! All indices are 1-based: `a.get(i, j)` is the entry in row `i` (counted
//! from the top) and column `j`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cells::{Cell, CellSet};
use crate::error::{Error, Line, Result};

/// Default bound on `n` for [`perm_set_naive`].
pub const PERM_SET_NAIVE_BOUND: usize = 7;

/// A validated alternating sign matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
}

impl Asm {
    /// Validates a matrix given as rows.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Asm> {
        validate_asm(&rows)
    }

    pub fn identity(n: usize) -> Asm {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Asm { n, entries }
    }

    /// Builds without validation. Callers guarantee the ASM axioms.
    pub(crate) fn from_raw(n: usize, entries: Vec<i8>) -> Asm {
        debug_assert_eq!(entries.len(), n * n);
        Asm { n, entries }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect()
    }

    pub fn is_permutation(&self) -> bool {
        self.entries.iter().all(|&x| x >= 0)
    }

    /// The permutation this matrix represents, if it has no `-1` entries.
    pub fn to_permutation(&self) -> Option<Permutation> {
        if !self.is_permutation() {
            return None;
        }
        let one_line = (1..=self.n)
            .map(|i| (1..=self.n).find(|&j| self.get(i, j) == 1).unwrap())
            .collect();
        Some(Permutation { one_line })
    }

    /// Matrix with row `i` and column `j` removed. Not necessarily an ASM.
    pub fn delete_row_col(&self, i: usize, j: usize) -> Vec<Vec<i64>> {
        (1..=self.n)
            .filter(|&a| a != i)
            .map(|a| {
                (1..=self.n)
                    .filter(|&b| b != j)
                    .map(|b| self.get(a, b) as i64)
                    .collect()
            })
            .collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<i64>> {
        rows.iter()
            .map(|&a| cols.iter().map(|&b| self.get(a, b) as i64).collect())
            .collect()
    }
}

impl fmt::Debug for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Asm{:?}", self.rows())
    }
}

impl fmt::Display for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            for j in 1..=self.n {
                if j > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{:>2}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct AsmJson {
    n: usize,
    matrix: Vec<Vec<i64>>,
}

impl Serialize for Asm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AsmJson {
            n: self.n,
            matrix: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Asm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = AsmJson::deserialize(d)?;
        if raw.matrix.len() != raw.n {
            return Err(serde::de::Error::custom(Error::SizeMismatch(
                raw.n,
                raw.matrix.len(),
            )));
        }
        validate_asm(&raw.matrix).map_err(serde::de::Error::custom)
    }
}

/// Checks the ASM axioms. Column sums are examined before row sums, then
/// column alternation before row alternation; the first failure is reported.
pub fn validate_asm(rows: &[Vec<i64>]) -> Result<Asm> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::NonSquare);
    }
    for (i, r) in rows.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            if !(-1..=1).contains(&x) {
                return Err(Error::EntryOutOfRange(i + 1, j + 1));
            }
        }
    }
    for j in 0..n {
        if rows.iter().map(|r| r[j]).sum::<i64>() != 1 {
            return Err(Error::ColSumViolation(j + 1));
        }
    }
    for (i, r) in rows.iter().enumerate() {
        if r.iter().sum::<i64>() != 1 {
            return Err(Error::RowSumViolation(i + 1));
        }
    }
    // With the sums fixed at 1, alternation is equivalent to every partial
    // sum lying in {0, 1}.
    for j in 0..n {
        let mut s = 0;
        for r in rows {
            s += r[j];
            if !(0..=1).contains(&s) {
                return Err(Error::AlternationViolation(Line::Col(j + 1)));
            }
        }
    }
    for (i, r) in rows.iter().enumerate() {
        let mut s = 0;
        for &x in r {
            s += x;
            if !(0..=1).contains(&s) {
                return Err(Error::AlternationViolation(Line::Row(i + 1)));
            }
        }
    }
    Ok(Asm {
        n,
        entries: rows.iter().flatten().map(|&x| x as i8).collect(),
    })
}

/// A permutation in one-line notation, values in `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Permutation> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Parse(format!("{one_line:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            one_line: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    /// `w(i)`, 1-indexed.
    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    pub fn to_asm(&self) -> Asm {
        let n = self.n();
        let mut entries = vec![0; n * n];
        for (i, &v) in self.one_line.iter().enumerate() {
            entries[i * n + v - 1] = 1;
        }
        Asm { n, entries }
    }

    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let m = self.n();
        let one_line = self
            .one_line
            .iter()
            .copied()
            .chain(other.one_line.iter().map(|&v| v + m))
            .collect();
        Permutation { one_line }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.one_line {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.one_line.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `45213` (single digits) or whitespace/comma separated values.
    fn from_str(s: &str) -> Result<Permutation> {
        let s = s.trim();
        let values: Option<Vec<usize>> = if s.contains([' ', ',']) {
            s.split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().ok())
                .collect()
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect()
        };
        let values = values.ok_or_else(|| Error::Parse(format!("bad permutation `{s}`")))?;
        Permutation::new(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Corner sums `rk(i, j) = Σ_{a ≤ i, b ≤ j} A[a][b]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RankMatrix {
    n: usize,
    ranks: Vec<u32>,
}

impl RankMatrix {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `rk(i, j)`; zero when `i` or `j` is zero.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i == 0 || j == 0 {
            0
        } else {
            self.ranks[(i - 1) * self.n + (j - 1)]
        }
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.ranks
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    /// Entrywise `self ≤ other`.
    pub fn dominated_by(&self, other: &RankMatrix) -> bool {
        self.ranks.iter().zip(&other.ranks).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for RankMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RankMatrix{:?}", self.rows())
    }
}

impl Serialize for RankMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

pub fn rank_matrix(a: &Asm) -> RankMatrix {
    let n = a.n;
    let mut ranks = vec![0u32; n * n];
    for i in 0..n {
        let mut row_prefix = 0i32;
        for j in 0..n {
            row_prefix += a.entries[i * n + j] as i32;
            let above = if i == 0 {
                0
            } else {
                ranks[(i - 1) * n + j] as i32
            };
            ranks[i * n + j] = (above + row_prefix) as u32;
        }
    }
    RankMatrix { n, ranks }
}

/// Row-`i` prefix sums through column `j` and column-`j` prefix sums through
/// row `i`, each in `{0, 1}`.
fn line_prefix_sums(a: &Asm) -> (Vec<i8>, Vec<i8>) {
    let n = a.n;
    let mut row = vec![0i8; n * n];
    let mut col = vec![0i8; n * n];
    for i in 0..n {
        for j in 0..n {
            let x = a.entries[i * n + j];
            row[i * n + j] = x + if j == 0 { 0 } else { row[i * n + j - 1] };
            col[i * n + j] = x + if i == 0 { 0 } else { col[(i - 1) * n + j] };
        }
    }
    (row, col)
}

/// Whether the horizontal (row) and vertical (column) lines of the diagram
/// drawing pass through each cell, in row-major order.
pub fn diagram_lines(a: &Asm) -> Vec<(bool, bool)> {
    let (row, col) = line_prefix_sums(a);
    row.iter()
        .zip(&col)
        .map(|(&r, &c)| (r == 1, c == 1))
        .collect()
}

/// The Rothe diagram: cells where both the row prefix sum and the column
/// prefix sum vanish.
pub fn rothe_diagram(a: &Asm) -> CellSet {
    let n = a.n;
    let (row, col) = line_prefix_sums(a);
    let mut d = CellSet::empty(n);
    for i in 0..n {
        for j in 0..n {
            if row[i * n + j] == 0 && col[i * n + j] == 0 {
                d.insert(Cell::new(i + 1, j + 1));
            }
        }
    }
    d
}

/// Diagram cells whose east and south neighbours are outside the diagram.
pub fn essential_set(a: &Asm) -> CellSet {
    let d = rothe_diagram(a);
    let mut ess = CellSet::empty(a.n);
    for c in d.iter() {
        let east = Cell::new(c.row, c.col + 1);
        let south = Cell::new(c.row + 1, c.col);
        if !d.contains(east) && !d.contains(south) {
            ess.insert(c);
        }
    }
    ess
}

/// Cells of rank zero.
pub fn dominant_part(a: &Asm) -> CellSet {
    let rk = rank_matrix(a);
    let mut dom = CellSet::empty(a.n);
    for i in 1..=a.n {
        for j in 1..=a.n {
            if rk.get(i, j) == 0 {
                dom.insert(Cell::new(i, j));
            }
        }
    }
    dom
}

/// Number of inversions.
pub fn coxeter_length(w: &Permutation) -> usize {
    let v = &w.one_line;
    (0..v.len())
        .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
        .sum()
}

/// `A ≥ B` iff `rk_A ≤ rk_B` entrywise.
pub fn asm_geq(a: &Asm, b: &Asm) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(a.n, b.n));
    }
    Ok(rank_matrix(a).dominated_by(&rank_matrix(b)))
}

/// The minimal permutations above `a`, by enumeration of `S_n` with pruning.
pub fn perm_set_naive(a: &Asm) -> Result<Vec<Permutation>> {
    perm_set_naive_bounded(a, PERM_SET_NAIVE_BOUND)
}

pub fn perm_set_naive_bounded(a: &Asm, max_n: usize) -> Result<Vec<Permutation>> {
    let n = a.n;
    if n > max_n {
        return Err(Error::SizeBoundExceeded { got: n, max: max_n });
    }
    let rk = rank_matrix(a);
    let above = permutations_above(&rk);

    let mut by_length: Vec<(usize, Permutation, RankMatrix)> = above
        .into_iter()
        .map(|w| {
            let r = rank_matrix(&w.to_asm());
            (coxeter_length(&w), w, r)
        })
        .collect();
    by_length.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));

    // w is non-minimal iff it lies strictly above some minimal element, and
    // strictly smaller elements have strictly smaller length.
    let mut minimal: Vec<(usize, Permutation, RankMatrix)> = Vec::new();
    for (len, w, r) in by_length {
        let dominated = minimal
            .iter()
            .any(|(l, _, rv)| *l < len && r.dominated_by(rv));
        if !dominated {
            minimal.push((len, w, r));
        }
    }
    let mut out: Vec<Permutation> = minimal.into_iter().map(|(_, w, _)| w).collect();
    out.sort();
    Ok(out)
}

/// All permutations `w` with `rk_w ≤ rk` entrywise, built row by row.
fn permutations_above(rk: &RankMatrix) -> Vec<Permutation> {
    let n = rk.n;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    // counts[j] = #{a ≤ current row : w(a) ≤ j}
    let mut counts = vec![0u32; n + 1];
    fn rec(
        rk: &RankMatrix,
        prefix: &mut Vec<usize>,
        used: &mut [bool],
        counts: &mut [u32],
        out: &mut Vec<Permutation>,
    ) {
        let n = rk.n;
        let i = prefix.len();
        if i == n {
            out.push(Permutation {
                one_line: prefix.clone(),
            });
            return;
        }
        for v in 1..=n {
            if used[v] {
                continue;
            }
            let ok = (1..=n).all(|j| counts[j] + u32::from(v <= j) <= rk.get(i + 1, j));
            if !ok {
                continue;
            }
            for c in counts.iter_mut().skip(v) {
                *c += 1;
            }
            used[v] = true;
            prefix.push(v);
            rec(rk, prefix, used, counts, out);
            prefix.pop();
            used[v] = false;
            for c in counts.iter_mut().skip(v) {
                *c -= 1;
            }
        }
    }
    rec(rk, &mut prefix, &mut used, &mut counts, &mut out);
    out
}

/// Block-diagonal sum `a ⊕ b`.
pub fn direct_sum(a: &Asm, b: &Asm) -> Asm {
    let n = a.n + b.n;
    let mut entries = vec![0i8; n * n];
    for i in 1..=a.n {
        for j in 1..=a.n {
            entries[(i - 1) * n + (j - 1)] = a.get(i, j);
        }
    }
    for i in 1..=b.n {
        for j in 1..=b.n {
            entries[(a.n + i - 1) * n + (a.n + j - 1)] = b.get(i, j);
        }
    }
    Asm { n, entries }
}

/// `1 ⊕ a`.
pub fn one_plus(a: &Asm) -> Asm {
    direct_sum(&Asm::identity(1), a)
}

/// Inserts a new row `i` and column `j` that are zero except for a `1` at
/// their crossing. Removing row `i` and column `j` recovers `a`.
pub fn insert_unit(a: &Asm, i: usize, j: usize) -> Result<Asm> {
    let n = a.n + 1;
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::IndexOutOfRange(i, j));
    }
    let mut entries = vec![0i8; n * n];
    for r in 1..=n {
        for c in 1..=n {
            let v = match (r.cmp(&i), c.cmp(&j)) {
                (std::cmp::Ordering::Equal, std::cmp::Ordering::Equal) => 1,
                (std::cmp::Ordering::Equal, _) | (_, std::cmp::Ordering::Equal) => 0,
                (ro, co) => {
                    let sr = if ro == std::cmp::Ordering::Less {
                        r
                    } else {
                        r - 1
                    };
                    let sc = if co == std::cmp::Ordering::Less {
                        c
                    } else {
                        c - 1
                    };
                    a.get(sr, sc)
                }
            };
            entries[(r - 1) * n + (c - 1)] = v;
        }
    }
    Ok(Asm { n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_2_1() -> Asm {
        Asm::new(vec![
            vec![0, 0, 1, 0],
            vec![1, 0, -1, 1],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
        ])
        .unwrap()
    }

    fn a3() -> Asm {
        Asm::new(vec![vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap()
    }

    fn b4() -> Asm {
        Asm::new(vec![
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![1, -1, 0, 1],
            vec![0, 1, 0, 0],
        ])
        .unwrap()
    }

    fn cells(n: usize, c: &[(usize, usize)]) -> CellSet {
        CellSet::from_cells(n, c.iter().copied())
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            Asm::new(vec![vec![0, 1], vec![1, -1]]),
            Err(Error::ColSumViolation(2))
        );
        assert_eq!(Asm::new(vec![vec![0, 1]]), Err(Error::NonSquare));
        assert_eq!(
            Asm::new(vec![vec![2, 0], vec![0, 1]]),
            Err(Error::EntryOutOfRange(1, 1))
        );
        assert_eq!(
            Asm::new(vec![vec![1, 0], vec![1, 0]]),
            Err(Error::ColSumViolation(1))
        );
        assert_eq!(
            Asm::new(vec![vec![1, 1, -1], vec![0, 0, 1], vec![0, 0, 1]]),
            Err(Error::AlternationViolation(Line::Col(3)))
        );
        assert_eq!(
            Asm::new(vec![vec![-1, 1, 1], vec![1, 0, 0], vec![1, 0, 0]]),
            Err(Error::AlternationViolation(Line::Col(1)))
        );
        assert!(Asm::new(vec![]).is_ok());
    }

    #[test]
    fn worked_example_invariants() {
        let a = example_2_1();
        assert_eq!(
            rank_matrix(&a).rows(),
            vec![
                vec![0, 0, 1, 1],
                vec![1, 1, 1, 2],
                vec![1, 2, 2, 3],
                vec![1, 2, 3, 4]
            ]
        );
        assert_eq!(rothe_diagram(&a), cells(4, &[(1, 1), (1, 2), (2, 3)]));
        assert_eq!(essential_set(&a), cells(4, &[(1, 2), (2, 3)]));
        assert_eq!(dominant_part(&a), cells(4, &[(1, 1), (1, 2)]));
    }

    #[test]
    fn small_derived_invariants() {
        assert_eq!(
            rank_matrix(&Asm::identity(3)).rows(),
            vec![vec![1, 1, 1], vec![1, 2, 2], vec![1, 2, 3]]
        );
        assert_eq!(
            rank_matrix(&a3()).rows(),
            vec![vec![0, 1, 1], vec![1, 1, 2], vec![1, 2, 3]]
        );
        assert_eq!(rothe_diagram(&a3()), cells(3, &[(1, 1), (2, 2)]));
        assert!(rothe_diagram(&Asm::identity(5)).is_empty());
        assert!(essential_set(&Asm::identity(5)).is_empty());
        assert!(dominant_part(&Asm::identity(5)).is_empty());
        assert_eq!(rothe_diagram(&b4()), cells(4, &[(1, 1), (2, 1), (3, 2)]));
        assert_eq!(essential_set(&b4()), cells(4, &[(2, 1), (3, 2)]));
        assert_eq!(dominant_part(&b4()), cells(4, &[(1, 1), (2, 1)]));
    }

    #[test]
    fn lengths() {
        assert_eq!(coxeter_length(&"45213".parse().unwrap()), 7);
        assert_eq!(coxeter_length(&"34512".parse().unwrap()), 6);
        assert_eq!(coxeter_length(&Permutation::identity(6)), 0);
    }

    #[test]
    fn order_examples() {
        let w: Permutation = "312".parse().unwrap();
        assert!(asm_geq(&w.to_asm(), &a3()).unwrap());
        assert!(asm_geq(&a3(), &Asm::identity(3)).unwrap());
        assert!(asm_geq(&a3(), &a3()).unwrap());
        assert_eq!(asm_geq(&a3(), &b4()), Err(Error::SizeMismatch(3, 4)));
    }

    fn perms(v: &[&str]) -> Vec<Permutation> {
        let mut p: Vec<Permutation> = v.iter().map(|s| s.parse().unwrap()).collect();
        p.sort();
        p
    }

    #[test]
    fn naive_perm_sets() {
        assert_eq!(perm_set_naive(&a3()).unwrap(), perms(&["312", "231"]));
        assert_eq!(perm_set_naive(&b4()).unwrap(), perms(&["3412", "2341"]));
        let b5 = Asm::new(vec![
            vec![0, 0, 1, 0, 0],
            vec![0, 0, 0, 1, 0],
            vec![0, 1, 0, -1, 1],
            vec![1, 0, -1, 1, 0],
            vec![0, 0, 1, 0, 0],
        ])
        .unwrap();
        assert_eq!(
            perm_set_naive(&b5).unwrap(),
            perms(&["45213", "34512", "35241"])
        );
        let w: Permutation = "2413".parse().unwrap();
        assert_eq!(perm_set_naive(&w.to_asm()).unwrap(), vec![w]);
        assert_eq!(
            perm_set_naive(&Asm::identity(8)),
            Err(Error::SizeBoundExceeded { got: 8, max: 7 })
        );
    }

    #[test]
    fn sums_and_insertions() {
        assert_eq!(one_plus(&Asm::identity(4)), Asm::identity(5));
        assert_eq!(
            insert_unit(&Asm::identity(3), 1, 1).unwrap(),
            Asm::identity(4)
        );
        assert_eq!(insert_unit(&a3(), 2, 3).unwrap(), b4());
        assert_eq!(insert_unit(&a3(), 5, 1), Err(Error::IndexOutOfRange(5, 1)));
        let s = one_plus(&a3());
        assert_eq!(s.get(1, 1), 1);
        assert_eq!(s.get(3, 3), -1);
        assert_eq!(b4().delete_row_col(2, 3), a3().rows());
    }

    #[test]
    fn permutation_parsing() {
        let w: Permutation = "10 9 8 7 6 5 4 3 2 1".parse().unwrap();
        assert_eq!(w.n(), 10);
        assert_eq!(w.to_string(), "10 9 8 7 6 5 4 3 2 1");
        assert!("112".parse::<Permutation>().is_err());
        assert_eq!(w.to_asm().to_permutation(), Some(w));
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&a3()).unwrap();
        assert_eq!(s, r#"{"n":3,"matrix":[[0,1,0],[1,-1,1],[0,1,0]]}"#);
        let back: Asm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a3());
        assert!(serde_json::from_str::<Asm>(r#"{"n":2,"matrix":[[0,1],[1,-1]]}"#).is_err());
    }
}
