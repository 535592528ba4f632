//! Squarefree monomial ideals over the `n × n` variable grid.
//!
//! A squarefree monomial is identified with its support, so a monomial is a
//! [`CellSet`] and divisibility is inclusion. Ideals keep a minimal generating
//! set sorted lexicographically on linear cell indices, which makes equality
//! structural and serialization byte-stable.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::asm::{essential_set, rank_matrix, Asm};
use crate::cells::{BitIter, Cell, CellSet};
use crate::error::{Error, Result};

pub type Monomial = CellSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquarefreeIdeal {
    n: usize,
    gens: Vec<u128>,
}

fn lex_cmp(a: u128, b: u128) -> Ordering {
    BitIter(a).cmp(BitIter(b))
}

/// Drops duplicates and non-minimal generators, then sorts.
pub(crate) fn minimalize(mut gens: Vec<u128>) -> Vec<u128> {
    gens.sort_unstable_by_key(|g| (g.count_ones(), *g));
    gens.dedup();
    let mut kept: Vec<u128> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|&k| k & !g == 0) {
            kept.push(g);
        }
    }
    kept.sort_unstable_by(|&a, &b| lex_cmp(a, b));
    kept
}

impl SquarefreeIdeal {
    pub fn new<I: IntoIterator<Item = Monomial>>(n: usize, gens: I) -> SquarefreeIdeal {
        let gens = gens
            .into_iter()
            .map(|m| {
                assert_eq!(m.n(), n, "monomial over a different grid");
                m.bits()
            })
            .collect();
        SquarefreeIdeal::from_bits(n, gens)
    }

    pub(crate) fn from_bits(n: usize, gens: Vec<u128>) -> SquarefreeIdeal {
        SquarefreeIdeal {
            n,
            gens: minimalize(gens),
        }
    }

    pub fn zero(n: usize) -> SquarefreeIdeal {
        SquarefreeIdeal {
            n,
            gens: Vec::new(),
        }
    }

    pub fn unit(n: usize) -> SquarefreeIdeal {
        SquarefreeIdeal { n, gens: vec![0] }
    }

    /// The ideal generated by the variables of `cells`.
    pub fn variables(cells: &CellSet) -> SquarefreeIdeal {
        let n = cells.n();
        SquarefreeIdeal::from_bits(n, BitIter(cells.bits()).map(|i| 1u128 << i).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first() == Some(&0)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.gens
            .iter()
            .map(move |&b| CellSet::from_bits(self.n, b))
    }

    /// Variables dividing some minimal generator.
    pub fn support(&self) -> CellSet {
        CellSet::from_bits(self.n, self.gens.iter().fold(0, |acc, g| acc | g))
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|&g| g & !m.bits() == 0)
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subideal_of(&self, other: &SquarefreeIdeal) -> bool {
        self.gens
            .iter()
            .all(|&g| other.gens.iter().any(|&h| h & !g == 0))
    }

    fn check_same_grid(&self, other_n: usize) -> Result<()> {
        if self.n != other_n {
            return Err(Error::SizeMismatch(self.n, other_n));
        }
        Ok(())
    }

    pub fn sum(&self, other: &SquarefreeIdeal) -> Result<SquarefreeIdeal> {
        self.check_same_grid(other.n)?;
        let gens = self.gens.iter().chain(&other.gens).copied().collect();
        Ok(SquarefreeIdeal::from_bits(self.n, gens))
    }

    /// Generated by pairwise least common multiples.
    pub fn intersection(&self, other: &SquarefreeIdeal) -> Result<SquarefreeIdeal> {
        self.check_same_grid(other.n)?;
        let gens = self
            .gens
            .iter()
            .cartesian_product(&other.gens)
            .map(|(a, b)| a | b)
            .collect();
        Ok(SquarefreeIdeal::from_bits(self.n, gens))
    }

    /// `(I : m)` for a squarefree monomial `m`.
    pub fn colon(&self, m: &Monomial) -> Result<SquarefreeIdeal> {
        self.check_same_grid(m.n())?;
        let gens = self.gens.iter().map(|g| g & !m.bits()).collect();
        Ok(SquarefreeIdeal::from_bits(self.n, gens))
    }

    /// Same generators, viewed in the grid of side `n`, after moving each
    /// cell with `f`.
    pub fn map_cells(&self, n: usize, f: impl Fn(Cell) -> Cell) -> SquarefreeIdeal {
        let gens = self
            .generators()
            .map(|g| CellSet::from_cells(n, g.iter().map(&f)).bits())
            .collect();
        SquarefreeIdeal::from_bits(n, gens)
    }

    /// Generators as sorted label lists, e.g. `[["z_1_1"], ["z_1_3", "z_2_1"]]`.
    pub fn to_labels(&self) -> Vec<Vec<String>> {
        self.generators().map(|g| g.labels()).collect()
    }

    pub fn from_labels(n: usize, gens: &[Vec<String>]) -> Result<SquarefreeIdeal> {
        let gens = gens
            .iter()
            .map(|g| {
                let cells = g
                    .iter()
                    .map(|l| Cell::parse_label(l))
                    .collect::<Result<Vec<_>>>()?;
                Ok(CellSet::try_from_cells(n, cells)?.bits())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SquarefreeIdeal::from_bits(n, gens))
    }
}

impl fmt::Debug for SquarefreeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SquarefreeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "(1)");
        }
        let parts: Vec<String> = self
            .generators()
            .map(|g| g.iter().map(|c| format!("z{}{}", c.row, c.col)).join("*"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for SquarefreeIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SquarefreeIdeal", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("generators", &self.to_labels())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SquarefreeIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            generators: Vec<Vec<String>>,
        }
        let raw = Raw::deserialize(d)?;
        SquarefreeIdeal::from_labels(raw.n, &raw.generators).map_err(serde::de::Error::custom)
    }
}

/// Rows and columns of a square minor of the generic matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorSpec {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorSpec {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Product of the antidiagonal entries: the top row meets the rightmost
    /// column.
    pub fn lead_term(&self, n: usize) -> Monomial {
        let k = self.size();
        CellSet::from_cells(
            n,
            (0..k).map(|a| Cell::new(self.rows[a], self.cols[k - 1 - a])),
        )
    }
}

fn minors_at(i: usize, j: usize, size: usize) -> impl Iterator<Item = MinorSpec> {
    (1..=i).combinations(size).flat_map(move |rows| {
        (1..=j).combinations(size).map(move |cols| MinorSpec {
            rows: rows.clone(),
            cols,
        })
    })
}

/// Minors of size `rk + 1` in the northwest `i × j` block, for every
/// essential cell `(i, j)` in row-major order.
pub fn fulton_minor_specs(a: &Asm) -> Vec<MinorSpec> {
    let rk = rank_matrix(a);
    essential_set(a)
        .iter()
        .flat_map(|c| minors_at(c.row, c.col, rk.get(c.row, c.col) as usize + 1))
        .collect()
}

/// The same construction at every cell of the grid.
pub fn natural_minor_specs(a: &Asm) -> Vec<MinorSpec> {
    let rk = rank_matrix(a);
    let n = a.n();
    (1..=n)
        .cartesian_product(1..=n)
        .flat_map(|(i, j)| minors_at(i, j, rk.get(i, j) as usize + 1))
        .collect()
}

/// Antidiagonal initial ideal, from the lead terms of the Fulton generators.
pub fn init_ideal(a: &Asm) -> SquarefreeIdeal {
    let n = a.n();
    let gens = fulton_minor_specs(a)
        .iter()
        .map(|m| m.lead_term(n).bits())
        .collect();
    SquarefreeIdeal::from_bits(n, gens)
}

pub fn init_ideal_natural(a: &Asm) -> SquarefreeIdeal {
    let n = a.n();
    let gens = natural_minor_specs(a)
        .iter()
        .map(|m| m.lead_term(n).bits())
        .collect();
    SquarefreeIdeal::from_bits(n, gens)
}

/// Minimal transversals of a hypergraph given by edge bitmasks.
///
/// Branches on the uncovered edge with the fewest admissible vertices; the
/// vertices tried earlier in a branch are forbidden in later branches, so
/// every cover is produced at most once. Non-minimal covers are filtered at
/// the end.
pub(crate) fn minimal_covers(edges: &[u128]) -> Vec<u128> {
    let edges = minimalize(edges.to_vec());
    let mut found = Vec::new();
    fn rec(edges: &[u128], chosen: u128, forbidden: u128, found: &mut Vec<u128>) {
        let mut best: Option<u128> = None;
        for &e in edges {
            if e & chosen != 0 {
                continue;
            }
            let avail = e & !forbidden;
            if avail == 0 {
                return;
            }
            if best.is_none_or(|b| avail.count_ones() < b.count_ones()) {
                best = Some(avail);
            }
        }
        let Some(avail) = best else {
            found.push(chosen);
            return;
        };
        let mut forbid = forbidden;
        for v in BitIter(avail) {
            let bit = 1u128 << v;
            rec(edges, chosen | bit, forbid, found);
            forbid |= bit;
        }
    }
    rec(&edges, 0, 0, &mut found);
    found.retain(|&s| is_minimal_cover(&edges, s));
    found.sort_unstable_by(|&a, &b| lex_cmp(a, b));
    found.dedup();
    found
}

fn is_minimal_cover(edges: &[u128], s: u128) -> bool {
    edges.iter().all(|&e| e & s != 0)
        && BitIter(s).all(|v| {
            let bit = 1u128 << v;
            edges.iter().any(|&e| e & s == bit)
        })
}

/// Minimal primes, each given by its generating variables.
pub fn minimal_primes(ideal: &SquarefreeIdeal) -> Result<Vec<CellSet>> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(minimal_covers(&ideal.gens)
        .into_iter()
        .map(|b| CellSet::from_bits(ideal.n, b))
        .collect())
}

/// `(S)` is a minimal prime iff every generator meets `S` and every element
/// of `S` is the only `S`-variable of some generator.
pub fn is_minimal_prime(ideal: &SquarefreeIdeal, s: &CellSet) -> Result<bool> {
    ideal.check_same_grid(s.n())?;
    if !s.is_subset(&ideal.support()) {
        return Err(Error::SupportViolation);
    }
    Ok(is_minimal_cover(&ideal.gens, s.bits()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, c: &[(usize, usize)]) -> Monomial {
        CellSet::from_cells(n, c.iter().copied())
    }

    fn ideal(n: usize, gens: &[&[(usize, usize)]]) -> SquarefreeIdeal {
        SquarefreeIdeal::new(n, gens.iter().map(|g| m(n, g)))
    }

    pub(crate) fn non_km_example() -> Asm {
        Asm::new(vec![
            vec![0, 1, 0, 0],
            vec![0, 0, 0, 1],
            vec![1, -1, 1, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap()
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

    #[test]
    fn fulton_specs_of_worked_example() {
        let a = Asm::new(vec![
            vec![0, 0, 1, 0],
            vec![1, 0, -1, 1],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
        ])
        .unwrap();
        let specs = fulton_minor_specs(&a);
        assert_eq!(specs.len(), 5);
        assert_eq!(specs.iter().filter(|s| s.size() == 1).count(), 2);
        let degree_two: Vec<_> = specs.iter().filter(|s| s.size() == 2).collect();
        assert_eq!(
            degree_two
                .iter()
                .map(|s| s.cols.clone())
                .collect::<Vec<_>>(),
            vec![vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert!(degree_two.iter().all(|s| s.rows == vec![1, 2]));
        assert_eq!(
            init_ideal(&a),
            ideal(
                4,
                &[&[(1, 1)], &[(1, 2)], &[(1, 3), (2, 1)], &[(1, 3), (2, 2)]]
            )
        );
    }

    #[test]
    fn small_specs() {
        assert!(fulton_minor_specs(&Asm::identity(4)).is_empty());
        assert!(init_ideal(&Asm::identity(4)).is_zero());
        let a3 = Asm::new(vec![vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap();
        assert_eq!(
            fulton_minor_specs(&a3),
            vec![
                MinorSpec {
                    rows: vec![1],
                    cols: vec![1]
                },
                MinorSpec {
                    rows: vec![1, 2],
                    cols: vec![1, 2]
                },
            ]
        );
    }

    #[test]
    fn non_km_initial_ideal() {
        assert_eq!(
            init_ideal(&non_km_example()),
            ideal(
                4,
                &[
                    &[(1, 1)],
                    &[(2, 1)],
                    &[(1, 2), (3, 1)],
                    &[(3, 1), (2, 2)],
                    &[(2, 2), (1, 3)]
                ]
            )
        );
    }

    #[test]
    fn arithmetic() {
        let i312 = ideal(3, &[&[(1, 1)], &[(1, 2)]]);
        let i231 = ideal(3, &[&[(1, 1)], &[(2, 1)]]);
        assert_eq!(
            i312.intersection(&i231).unwrap(),
            ideal(3, &[&[(1, 1)], &[(1, 2), (2, 1)]])
        );
        assert_eq!(i312.intersection(&i312).unwrap(), i312);
        assert_eq!(
            i312.sum(&i231).unwrap(),
            ideal(3, &[&[(1, 1)], &[(1, 2)], &[(2, 1)]])
        );
        assert_eq!(i312.colon(&CellSet::empty(3)).unwrap(), i312);
        assert!(i312.colon(&m(3, &[(1, 2), (3, 3)])).unwrap().is_unit());
        assert_eq!(
            i312.intersection(&SquarefreeIdeal::zero(4)),
            Err(Error::SizeMismatch(3, 4))
        );

        let colon = init_ideal(&non_km_example())
            .colon(&m(4, &[(1, 3)]))
            .unwrap();
        assert_eq!(
            colon,
            ideal(4, &[&[(1, 1)], &[(2, 1)], &[(2, 2)], &[(1, 2), (3, 1)]])
        );
    }

    #[test]
    fn primes_of_b() {
        let i = init_ideal(&b4());
        assert_eq!(
            i,
            ideal(
                4,
                &[&[(1, 1)], &[(2, 1)], &[(1, 2), (3, 1)], &[(2, 2), (3, 1)]]
            )
        );
        let primes = minimal_primes(&i).unwrap();
        assert_eq!(
            primes,
            vec![
                m(4, &[(1, 1), (1, 2), (2, 1), (2, 2)]),
                m(4, &[(1, 1), (2, 1), (3, 1)])
            ]
        );
        assert!(is_minimal_prime(&i, &m(4, &[(1, 1), (2, 1), (3, 1)])).unwrap());
        assert!(!is_minimal_prime(&i, &i.support()).unwrap());
        assert_eq!(
            is_minimal_prime(&i, &m(4, &[(4, 4)])),
            Err(Error::SupportViolation)
        );
    }

    #[test]
    fn primes_edge_cases() {
        let p = ideal(3, &[&[(1, 1)]]);
        assert_eq!(minimal_primes(&p).unwrap(), vec![m(3, &[(1, 1)])]);
        assert!(is_minimal_prime(&p, &m(3, &[(1, 1)])).unwrap());
        assert_eq!(
            minimal_primes(&SquarefreeIdeal::zero(3)),
            Err(Error::ZeroIdeal)
        );
        assert_eq!(
            minimal_primes(&SquarefreeIdeal::unit(3)),
            Err(Error::UnitIdeal)
        );

        let primes = minimal_primes(&init_ideal(&non_km_example())).unwrap();
        assert_eq!(primes.len(), 3);
        assert!(primes.iter().all(|p| p.len() == 4));
    }

    #[test]
    fn labels_round_trip() {
        let i = init_ideal(&non_km_example());
        let json = serde_json::to_string(&i).unwrap();
        assert_eq!(
            json,
            r#"{"n":4,"generators":[["z_1_1"],["z_1_2","z_3_1"],["z_1_3","z_2_2"],["z_2_1"],["z_2_2","z_3_1"]]}"#
        );
        let back: SquarefreeIdeal = serde_json::from_str(&json).unwrap();
        assert_eq!(back, i);
    }
}
