//! Reduced simplicial homology with exact ranks.
//!
//! Complexes are handed over as facet lists on local vertices `0..64`. Ranks
//! of boundary maps are computed by column reduction: modulo `p` for prime
//! fields, and fraction-free over the integers for the rationals (with a
//! big-integer Bareiss fallback if machine integers overflow).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cells::BitIter;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Default cap on the number of faces of a chain complex.
pub const DEFAULT_FACE_BUDGET: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u32),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "p={p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("rational") || s == "Q" || s == "QQ" {
            return Ok(Field::Rational);
        }
        let digits = s.strip_prefix("p=").unwrap_or(s);
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field `{s}`")))?;
        if p < 2
            || !(2..p)
                .take_while(|d| d * d <= p)
                .all(|d| !p.is_multiple_of(d))
        {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Sparse integer matrix stored by columns; each column is sorted by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(u32, i64)>>,
}

impl BoundaryMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    fn dense(&self) -> Vec<Vec<BigInt>> {
        let mut m = vec![vec![BigInt::zero(); self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[i as usize][j] = BigInt::from(v);
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    /// Face counts, starting at dimension `-1`.
    pub dims: Vec<usize>,
    /// `boundaries[k]` maps `k`-faces to `(k-1)`-faces, for `k = 0..=dim`.
    pub boundaries: Vec<BoundaryMatrix>,
}

fn all_faces(facets: &[u64], budget: usize) -> Result<Vec<Vec<u64>>> {
    let top = facets
        .iter()
        .map(|f| f.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let mut seen: std::collections::HashSet<u64> = std::collections::HashSet::new();
    for &f in facets {
        let mut sub = f;
        loop {
            if seen.insert(sub) && seen.len() > budget {
                return Err(Error::FaceBudgetExceeded(budget));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & f;
        }
    }
    let mut by_dim = vec![Vec::new(); if facets.is_empty() { 0 } else { top + 1 }];
    for s in seen {
        by_dim[s.count_ones() as usize].push(s);
    }
    for v in &mut by_dim {
        v.sort_unstable();
    }
    Ok(by_dim)
}

impl ChainComplex {
    /// Augmented chain complex of the complex generated by `facets`.
    pub fn from_facets(facets: &[u64], budget: usize) -> Result<ChainComplex> {
        let by_dim = all_faces(facets, budget)?;
        let dims: Vec<usize> = by_dim.iter().map(Vec::len).collect();
        let mut boundaries = Vec::new();
        for k in 1..by_dim.len() {
            let index: HashMap<u64, u32> = by_dim[k - 1]
                .iter()
                .enumerate()
                .map(|(i, &f)| (f, i as u32))
                .collect();
            let columns = by_dim[k]
                .iter()
                .map(|&face| {
                    let mut col: Vec<(u32, i64)> = BitIter(face as u128)
                        .enumerate()
                        .map(|(t, v)| {
                            let sign = if t % 2 == 0 { 1 } else { -1 };
                            (index[&(face & !(1u64 << v))], sign)
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            boundaries.push(BoundaryMatrix {
                rows: dims[k - 1],
                columns,
            });
        }
        Ok(ChainComplex { dims, boundaries })
    }

    /// Whether every composite `∂_{k-1} ∂_k` vanishes.
    pub fn boundary_squares_to_zero(&self) -> bool {
        self.boundaries.windows(2).all(|w| {
            let (lower, upper) = (&w[0], &w[1]);
            upper.columns.iter().all(|col| {
                let mut acc: HashMap<u32, i64> = HashMap::new();
                for &(mid, a) in col {
                    for &(row, b) in &lower.columns[mid as usize] {
                        *acc.entry(row).or_default() += a * b;
                    }
                }
                acc.values().all(|&v| v == 0)
            })
        })
    }

    /// `Σ (-1)^k f_k` over `k ≥ -1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 1 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Reduced Betti numbers from dimension `-1` up to the top dimension.
    pub fn reduced_betti(&self, field: Field) -> Vec<usize> {
        let ranks: Vec<usize> = self
            .boundaries
            .iter()
            .map(|b| matrix_rank(b, field))
            .collect();
        (0..self.dims.len())
            .map(|i| {
                let out = if i == 0 { 0 } else { ranks[i - 1] };
                let inc = ranks.get(i).copied().unwrap_or(0);
                self.dims[i] - out - inc
            })
            .collect()
    }
}

/// Rank of a boundary matrix over `field`.
pub fn matrix_rank(m: &BoundaryMatrix, field: Field) -> usize {
    match field {
        Field::Prime(p) => rank_mod_p(m, p as u64),
        Field::Rational => rank_integer(m).unwrap_or_else(|| bareiss_rank(m.dense())),
    }
}

fn low(col: &[(u32, i64)]) -> Option<u32> {
    col.last().map(|&(r, _)| r)
}

/// Standard column reduction keyed by the lowest row index.
fn rank_mod_p(m: &BoundaryMatrix, p: u64) -> usize {
    let norm = |v: i64| v.rem_euclid(p as i64);
    let mut pivots: HashMap<u32, Vec<(u32, i64)>> = HashMap::new();
    for col in &m.columns {
        let mut col: Vec<(u32, i64)> = col.iter().map(|&(r, v)| (r, norm(v))).collect();
        col.retain(|&(_, v)| v != 0);
        while let Some(l) = low(&col) {
            let Some(piv) = pivots.get(&l) else { break };
            let c = col.last().unwrap().1;
            let factor = mul_mod(c as u64, inv_mod(piv.last().unwrap().1 as u64, p), p);
            col = axpy_mod(&col, piv, (p - factor) as i64, p as i64);
        }
        if let Some(l) = low(&col) {
            pivots.insert(l, col);
        }
    }
    pivots.len()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// `x + f·y` modulo `p`, both sorted sparse vectors.
fn axpy_mod(x: &[(u32, i64)], y: &[(u32, i64)], f: i64, p: i64) -> Vec<(u32, i64)> {
    merge(x, y, |a, b| {
        (a as i128 + f as i128 * b as i128).rem_euclid(p as i128) as i64
    })
}

fn merge(
    x: &[(u32, i64)],
    y: &[(u32, i64)],
    mut combine: impl FnMut(i64, i64) -> i64,
) -> Vec<(u32, i64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (r, v) = match (x.get(i), y.get(j)) {
            (Some(&(rx, vx)), Some(&(ry, vy))) if rx == ry => {
                i += 1;
                j += 1;
                (rx, combine(vx, vy))
            }
            (Some(&(rx, vx)), Some(&(ry, _))) if rx < ry => {
                i += 1;
                (rx, combine(vx, 0))
            }
            (Some(&(rx, vx)), None) => {
                i += 1;
                (rx, combine(vx, 0))
            }
            (_, Some(&(ry, vy))) => {
                j += 1;
                (ry, combine(0, vy))
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((r, v));
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Fraction-free column reduction over the integers: a column is replaced by
/// `p·col − c·pivot`, then divided by its content. Returns `None` on
/// overflow.
fn rank_integer(m: &BoundaryMatrix) -> Option<usize> {
    let mut pivots: HashMap<u32, Vec<(u32, i64)>> = HashMap::new();
    for col in &m.columns {
        let mut col = col.clone();
        while let Some(l) = low(&col) {
            let Some(piv) = pivots.get(&l) else { break };
            let c = col.last().unwrap().1;
            let pv = piv.last().unwrap().1;
            let g = gcd(c, pv);
            let (a, b) = (pv / g, c / g);
            let mut overflow = false;
            col = merge(&col, piv, |x, y| {
                match x
                    .checked_mul(a)
                    .and_then(|s| y.checked_mul(b).and_then(|t| s.checked_sub(t)))
                {
                    Some(v) => v,
                    None => {
                        overflow = true;
                        0
                    }
                }
            });
            if overflow {
                return None;
            }
            let content = col.iter().fold(0, |acc, &(_, v)| gcd(acc, v));
            if content > 1 {
                col.iter_mut().for_each(|e| e.1 /= content);
            }
        }
        if let Some(l) = low(&col) {
            pivots.insert(l, col);
        }
    }
    Some(pivots.len())
}

/// Fraction-free Gaussian elimination with big integers.
fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    /// `reduced_betti[0]` is the Betti number in dimension `-1`.
    pub reduced_betti: Vec<usize>,
    pub field: Field,
}

impl HomologyProfile {
    /// Reduced Betti number in dimension `i ≥ -1`.
    pub fn betti(&self, i: isize) -> usize {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.reduced_betti.get(k).copied())
            .unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.reduced_betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Keeps the inclusion-maximal sets.
pub(crate) fn maximal_sets64(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| s & !k == 0) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Removes dominated vertices (a vertex `v` such that some other vertex lies
/// in every facet through `v`) until none is left. Each removal preserves the
/// homotopy type.
pub fn strong_collapse(facets: &[u64]) -> Vec<u64> {
    let mut facets = maximal_sets64(facets.to_vec());
    'outer: loop {
        let vertices = facets.iter().fold(0u64, |acc, f| acc | f);
        for v in BitIter(vertices as u128) {
            let bit = 1u64 << v;
            let star = facets
                .iter()
                .filter(|&&f| f & bit != 0)
                .fold(u64::MAX, |acc, f| acc & f);
            if star & !bit != 0 {
                facets = maximal_sets64(facets.iter().map(|f| f & !bit).collect());
                continue 'outer;
            }
        }
        return facets;
    }
}

/// Reduced Betti numbers of the complex generated by `facets` on local
/// vertices, padded to the dimension of the complex.
pub fn local_reduced_betti(facets: &[u64], field: Field, budget: usize) -> Result<Vec<usize>> {
    let Some(top) = facets.iter().map(|f| f.count_ones() as usize).max() else {
        return Ok(Vec::new());
    };
    let core = strong_collapse(facets);
    let mut betti = ChainComplex::from_facets(&core, budget)?.reduced_betti(field);
    betti.resize(top + 1, 0);
    Ok(betti)
}

/// Renumbers the active vertices of a complex as `0..k`.
pub(crate) fn localize(facets: &[u128], universe: u128) -> Vec<u64> {
    let positions: Vec<u32> = BitIter(universe).map(|i| i as u32).collect();
    assert!(positions.len() <= 64, "more than 64 active vertices");
    facets
        .iter()
        .map(|&f| {
            positions
                .iter()
                .enumerate()
                .filter(|&(_, &p)| f >> p & 1 == 1)
                .fold(0u64, |acc, (k, _)| acc | 1 << k)
        })
        .collect()
}

/// Reduced homology of the deconed complex (cone points stripped, since a
/// cone is acyclic).
pub fn reduced_homology_ranks(
    complex: &SimplicialComplex,
    field: Field,
) -> Result<HomologyProfile> {
    reduced_homology_with_budget(complex, field, DEFAULT_FACE_BUDGET)
}

pub fn reduced_homology_with_budget(
    complex: &SimplicialComplex,
    field: Field,
    budget: usize,
) -> Result<HomologyProfile> {
    let local = localize(complex.core_facets(), complex.vertex_universe().bits());
    let reduced_betti = local_reduced_betti(&local, field, budget)?;
    Ok(HomologyProfile {
        reduced_betti,
        field,
    })
}
