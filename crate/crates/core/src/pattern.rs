//! Pattern containment between ASMs and the badblock configuration that
//! forces non-equidimensionality.

use itertools::Itertools;
use serde::Serialize;

use crate::asm::{essential_set, rank_matrix, validate_asm, Asm};
use crate::cells::Cell;
use crate::error::{Error, Result};

/// Rows and columns of the target that realize the pattern as a submatrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentWitness {
    pub kept_rows: Vec<usize>,
    pub kept_cols: Vec<usize>,
}

impl ContainmentWitness {
    /// Rows of the target not used by the pattern.
    pub fn deleted_rows(&self, n: usize) -> Vec<usize> {
        (1..=n).filter(|r| !self.kept_rows.contains(r)).collect()
    }

    pub fn deleted_cols(&self, n: usize) -> Vec<usize> {
        (1..=n).filter(|c| !self.kept_cols.contains(c)).collect()
    }
}

fn realizes(target: &Asm, pattern: &Asm, rows: &[usize], cols: &[usize]) -> bool {
    rows.iter().enumerate().all(|(a, &r)| {
        cols.iter()
            .enumerate()
            .all(|(b, &c)| target.get(r, c) == pattern.get(a + 1, b + 1))
    })
}

/// Every witness, in lexicographic order of `(kept_rows, kept_cols)`.
pub fn all_witnesses<'a>(
    target: &'a Asm,
    pattern: &'a Asm,
) -> impl Iterator<Item = ContainmentWitness> + 'a {
    let (n, k) = (target.n(), pattern.n());
    let row_sets: Vec<Vec<usize>> = if k <= n {
        (1..=n).combinations(k).collect()
    } else {
        Vec::new()
    };
    let col_sets = row_sets.clone();
    row_sets.into_iter().flat_map(move |rows| {
        col_sets
            .clone()
            .into_iter()
            .filter(|cols| realizes(target, pattern, &rows, cols))
            .map(|cols| ContainmentWitness {
                kept_rows: rows.clone(),
                kept_cols: cols,
            })
            .collect::<Vec<_>>()
    })
}

/// Lexicographically first witness, or `None` when `target` avoids `pattern`.
pub fn find_pattern(target: &Asm, pattern: &Asm) -> Option<ContainmentWitness> {
    all_witnesses(target, pattern).next()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    /// Deleted rows and columns vanish outside the span of the deleted
    /// columns and rows respectively.
    pub outside_zero: bool,
    /// Sum of the entries at (deleted row, deleted column) crossings.
    pub crossing_sum: i64,
    /// Number of deleted rows, which the crossing sum must equal.
    pub k: usize,
}

impl ContainmentReport {
    pub fn holds(&self) -> bool {
        self.outside_zero && self.crossing_sum == self.k as i64
    }
}

pub fn check_containment_constraints(
    target: &Asm,
    pattern: &Asm,
    w: &ContainmentWitness,
) -> Result<ContainmentReport> {
    let n = target.n();
    let valid = w.kept_rows.len() == pattern.n()
        && w.kept_cols.len() == pattern.n()
        && w.kept_rows.iter().tuple_windows().all(|(a, b)| a < b)
        && w.kept_cols.iter().tuple_windows().all(|(a, b)| a < b)
        && w.kept_rows
            .iter()
            .chain(&w.kept_cols)
            .all(|&x| (1..=n).contains(&x))
        && realizes(target, pattern, &w.kept_rows, &w.kept_cols);
    if !valid {
        return Err(Error::InvalidWitness);
    }
    let del_rows = w.deleted_rows(n);
    let del_cols = w.deleted_cols(n);
    let k = del_rows.len();
    if k == 0 {
        return Ok(ContainmentReport {
            outside_zero: true,
            crossing_sum: 0,
            k: 0,
        });
    }
    let (c1, ck) = (del_cols[0], del_cols[k - 1]);
    let (r1, rk) = (del_rows[0], del_rows[k - 1]);
    let rows_ok = del_rows.iter().all(|&r| {
        (1..=n)
            .filter(|&c| c < c1 || c > ck)
            .all(|c| target.get(r, c) == 0)
    });
    let cols_ok = del_cols.iter().all(|&c| {
        (1..=n)
            .filter(|&r| r < r1 || r > rk)
            .all(|r| target.get(r, c) == 0)
    });
    let crossing_sum = del_rows
        .iter()
        .cartesian_product(&del_cols)
        .map(|(&r, &c)| target.get(r, c) as i64)
        .sum();
    Ok(ContainmentReport {
        outside_zero: rows_ok && cols_ok,
        crossing_sum,
        k,
    })
}

/// If `a` has the `m × m` northwest block `nw` and is block diagonal there,
/// returns the southeast complement as an ASM.
pub fn northwest_complement(a: &Asm, m: usize) -> Option<(Asm, Asm)> {
    let n = a.n();
    if m == 0 || m >= n {
        return None;
    }
    let nw: Vec<usize> = (1..=m).collect();
    let se: Vec<usize> = (m + 1..=n).collect();
    let off_diagonal_zero = nw
        .iter()
        .cartesian_product(&se)
        .all(|(&i, &j)| a.get(i, j) == 0 && a.get(j, i) == 0);
    if !off_diagonal_zero {
        return None;
    }
    let top = validate_asm(&a.submatrix(&nw, &nw)).ok()?;
    let bottom = validate_asm(&a.submatrix(&se, &se)).ok()?;
    Some((top, bottom))
}

/// Checks the four badblock conditions at `(r, c)`.
///
/// With `strict = false`, essential cells of rank 0 in column `c` do not
/// violate condition (4).
pub fn is_badblock_at(a: &Asm, r: usize, c: usize, strict: bool) -> bool {
    let n = a.n();
    if n < 3 || r < 2 || r > n - 1 || c < 1 || c > n - 2 {
        return false;
    }
    // (1) rows {r-1, r} × columns {c, c+1} read [[0, 0], [1, -1]]
    if a.get(r - 1, c) != 0 || a.get(r - 1, c + 1) != 0 || a.get(r, c) != 1 || a.get(r, c + 1) != -1
    {
        return false;
    }
    // (2) zero northwest of (r, c)
    for i in 1..=r {
        for j in 1..=c {
            if (i, j) != (r, c) && a.get(i, j) != 0 {
                return false;
            }
        }
    }
    let rk = rank_matrix(a);
    let ess = essential_set(a);
    let bound = r as u32 - 1;
    // (3) essential ranks avoid the open interval (0, r - 1)
    for cell in ess.iter() {
        if cell == Cell::new(r, c + 1) {
            continue;
        }
        let k = rk.get(cell.row, cell.col);
        if k != 0 && k < bound {
            return false;
        }
    }
    // (4) no essential cell in column c
    let column_clear = ess
        .iter()
        .filter(|cell| cell.col == c)
        .all(|cell| !strict && rk.get(cell.row, cell.col) == 0);
    column_clear
}

/// Lexicographically smallest `(r, c)` at which the badblock conditions hold.
pub fn badblock_match(a: &Asm, strict: bool) -> Option<(usize, usize)> {
    let n = a.n();
    (1..n)
        .cartesian_product(1..n.saturating_sub(1))
        .find(|&(r, c)| is_badblock_at(a, r, c, strict))
}
