//! Cohen–Macaulayness of ASM varieties, decided on the Stanley–Reisner
//! complex of the antidiagonal initial ideal.
//!
//! Both backends work on the deconed complex with vertices renumbered
//! `0..k`. The Reisner backend checks that the complex and every iterated
//! vertex link have no reduced homology below their top dimension. Cone
//! points of a link are split off before recursing, which does not change
//! the verdict and lets many faces share one memoized link. The Hochster
//! backend reads the projective dimension off the homology of induced
//! subcomplexes and compares depth with dimension.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asm::{one_plus, Asm};
use crate::cells::{BitIter, CellSet};
use crate::complex::{sr_complex_from_ideal, SimplicialComplex};
use crate::enumerate::all_asms;
use crate::error::{Error, Result};
use crate::homology::{local_reduced_betti, localize, maximal_sets64, Field, DEFAULT_FACE_BUDGET};
use crate::ideal::init_ideal;

/// Largest ASM size accepted by default.
pub const DEFAULT_CM_MAX_N: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Backend {
    #[default]
    Reisner,
    Hochster,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Reisner => "reisner",
            Backend::Hochster => "hochster",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Backend> {
        match s.to_ascii_lowercase().as_str() {
            "reisner" => Ok(Backend::Reisner),
            "hochster" => Ok(Backend::Hochster),
            _ => Err(Error::Parse(format!("unknown backend `{s}`"))),
        }
    }
}

impl Serialize for Backend {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Backend {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CmOptions {
    pub field: Field,
    pub backend: Backend,
    pub max_n: usize,
    pub face_budget: usize,
}

impl Default for CmOptions {
    fn default() -> Self {
        CmOptions {
            field: Field::Rational,
            backend: Backend::Reisner,
            max_n: DEFAULT_CM_MAX_N,
            face_budget: DEFAULT_FACE_BUDGET,
        }
    }
}

/// Why a complex fails to be Cohen–Macaulay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BettiWitness {
    /// Facets of different dimensions.
    NotPure,
    /// `H̃_degree(lk_face) ≠ 0` below the top dimension of the link.
    Link { face: CellSet, degree: isize },
    /// `H̃_degree(Δ_W) ≠ 0` for the vertex set `W`, forcing depth below
    /// dimension.
    Induced { vertices: CellSet, degree: isize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmVerdict {
    pub cm: bool,
    pub witness: Option<BettiWitness>,
}

/// Local-coordinate witness: `(face, degree)`.
type LocalWitness = Option<(u64, isize)>;

struct Reisner {
    field: Field,
    budget: usize,
    memo: HashMap<Vec<u64>, LocalWitness>,
}

fn is_pure64(facets: &[u64]) -> bool {
    facets
        .windows(2)
        .all(|w| w[0].count_ones() == w[1].count_ones())
}

fn decone64(facets: Vec<u64>) -> (u64, Vec<u64>) {
    let cone = facets.iter().fold(u64::MAX, |acc, f| acc & f);
    let mut rest: Vec<u64> = facets.into_iter().map(|f| f & !cone).collect();
    rest.sort_unstable();
    (cone, rest)
}

impl Reisner {
    /// First failing face of a pure, deconed complex.
    fn check(&mut self, facets: &[u64]) -> Result<LocalWitness> {
        if facets.len() <= 1 {
            return Ok(None);
        }
        if let Some(known) = self.memo.get(facets) {
            return Ok(*known);
        }
        let top = facets[0].count_ones() as isize - 1;
        let mut found = None;
        if top >= 1 {
            let betti = local_reduced_betti(facets, self.field, self.budget)?;
            found = (-1..top)
                .find(|&i| betti[(i + 1) as usize] != 0)
                .map(|i| (0, i));
        }
        if found.is_none() {
            let vertices = facets.iter().fold(0u64, |acc, f| acc | f);
            for v in BitIter(vertices as u128) {
                let bit = 1u64 << v;
                let star = facets
                    .iter()
                    .filter(|&&f| f & bit != 0)
                    .map(|f| f & !bit)
                    .collect();
                let (cone, link) = decone64(star);
                if let Some((face, degree)) = self.check(&link)? {
                    found = Some((face | cone | bit, degree));
                    break;
                }
            }
        }
        self.memo.insert(facets.to_vec(), found);
        Ok(found)
    }
}

fn hochster(facets: &[u64], field: Field, budget: usize) -> Result<Option<(u64, isize)>> {
    let vertices = facets.iter().fold(0u64, |acc, f| acc | f);
    let nv = vertices.count_ones() as usize;
    if nv >= usize::BITS as usize - 1 || (1usize << nv) > budget {
        return Err(Error::FaceBudgetExceeded(budget));
    }
    let dim = facets
        .iter()
        .map(|f| f.count_ones() as isize)
        .max()
        .unwrap_or(0)
        - 1;
    let height = nv as isize - dim - 1;
    // Depth equals dimension iff no W has H̃_j(Δ_W) ≠ 0 with |W| - j - 1 > height.
    let verts: Vec<u32> = BitIter(vertices as u128).map(|v| v as u32).collect();
    for code in 0u64..(1u64 << nv) {
        let size = code.count_ones() as isize;
        if size < height + 2 {
            continue;
        }
        let w = verts
            .iter()
            .enumerate()
            .filter(|&(k, _)| code >> k & 1 == 1)
            .fold(0u64, |acc, (_, &v)| acc | 1 << v);
        let induced = maximal_sets64(facets.iter().map(|f| f & w).collect());
        let betti = local_reduced_betti(&induced, field, budget)?;
        let bound = size - height - 1;
        if let Some(j) = (-1..bound).find(|&j| betti.get((j + 1) as usize).is_some_and(|&b| b != 0))
        {
            return Ok(Some((w, j)));
        }
    }
    Ok(None)
}

/// Cohen–Macaulay test for a complex, over `field`.
pub fn complex_is_cm(
    complex: &SimplicialComplex,
    field: Field,
    backend: Backend,
    face_budget: usize,
) -> Result<CmVerdict> {
    let universe = complex.vertex_universe().bits();
    let positions: Vec<usize> = BitIter(universe).collect();
    let n = complex.n();
    let to_cells = |local: u64| {
        CellSet::from_bits(
            n,
            BitIter(local as u128).fold(0u128, |acc, k| acc | 1u128 << positions[k]),
        )
    };
    let facets = localize(complex.core_facets(), universe);
    if backend == Backend::Reisner && !is_pure64(&facets) {
        return Ok(CmVerdict {
            cm: false,
            witness: Some(BettiWitness::NotPure),
        });
    }
    let witness = match backend {
        Backend::Reisner => {
            let mut r = Reisner {
                field,
                budget: face_budget,
                memo: HashMap::new(),
            };
            r.check(&facets)?.map(|(face, degree)| BettiWitness::Link {
                face: to_cells(face),
                degree,
            })
        }
        Backend::Hochster => {
            hochster(&facets, field, face_budget)?.map(|(w, degree)| BettiWitness::Induced {
                vertices: to_cells(w),
                degree,
            })
        }
    };
    Ok(CmVerdict {
        cm: witness.is_none(),
        witness,
    })
}

/// Complex of the antidiagonal initial ideal of `a`.
pub fn init_complex(a: &Asm) -> SimplicialComplex {
    sr_complex_from_ideal(&init_ideal(a)).expect("initial ideals are proper")
}

pub fn cm_verdict(a: &Asm, opts: &CmOptions) -> Result<CmVerdict> {
    if a.n() > opts.max_n {
        return Err(Error::SizeBoundExceeded {
            got: a.n(),
            max: opts.max_n,
        });
    }
    complex_is_cm(&init_complex(a), opts.field, opts.backend, opts.face_budget)
}

pub fn is_cohen_macaulay(a: &Asm, field: Field, backend: Backend) -> Result<bool> {
    let opts = CmOptions {
        field,
        backend,
        ..CmOptions::default()
    };
    Ok(cm_verdict(a, &opts)?.cm)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmConjectureReport {
    pub n: usize,
    pub total: usize,
    pub cm: usize,
    pub one_plus_cm: usize,
    /// `1 ⊕ A` is CM but `A` is not; must be empty.
    pub violations_proved: Vec<Asm>,
    /// `A` is CM but `1 ⊕ A` is not.
    pub counterexamples_converse: Vec<Asm>,
}

impl CmConjectureReport {
    pub fn passed(&self) -> bool {
        self.violations_proved.is_empty() && self.counterexamples_converse.is_empty()
    }
}

/// Compares `CM(A)` with `CM(1 ⊕ A)` over all of `ASM(n)`, `n ≤ 5`.
pub fn cm_conjecture_scan(n: usize, field: Field) -> Result<CmConjectureReport> {
    if n > 5 {
        return Err(Error::SizeBoundExceeded { got: n, max: 5 });
    }
    let asms = all_asms(n)?;
    let verdicts = asms
        .par_iter()
        .map(|a| {
            let small = is_cohen_macaulay(a, field, Backend::Reisner)?;
            let big = is_cohen_macaulay(&one_plus(a), field, Backend::Reisner)?;
            Ok((small, big))
        })
        .collect::<Result<Vec<_>>>()?;
    let pick = |f: fn(bool, bool) -> bool| {
        asms.iter()
            .zip(&verdicts)
            .filter(|(_, &(s, b))| f(s, b))
            .map(|(a, _)| a.clone())
            .collect::<Vec<_>>()
    };
    Ok(CmConjectureReport {
        n,
        total: asms.len(),
        cm: verdicts.iter().filter(|v| v.0).count(),
        one_plus_cm: verdicts.iter().filter(|v| v.1).count(),
        violations_proved: pick(|s, b| b && !s),
        counterexamples_converse: pick(|s, b| s && !b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::Permutation;

    fn b4() -> Asm {
        Asm::new(vec![
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![1, -1, 0, 1],
            vec![0, 1, 0, 0],
        ])
        .unwrap()
    }

    fn non_km() -> Asm {
        Asm::new(vec![
            vec![0, 1, 0, 0],
            vec![0, 0, 0, 1],
            vec![1, -1, 1, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap()
    }

    #[test]
    fn examples() {
        for backend in [Backend::Reisner, Backend::Hochster] {
            assert!(is_cohen_macaulay(&non_km(), Field::Rational, backend).unwrap());
            assert!(!is_cohen_macaulay(&b4(), Field::Rational, backend).unwrap());
            let w: Permutation = "3412".parse().unwrap();
            assert!(is_cohen_macaulay(&w.to_asm(), Field::Rational, backend).unwrap());
        }
        let v = cm_verdict(&b4(), &CmOptions::default()).unwrap();
        assert_eq!(v.witness, Some(BettiWitness::NotPure));
        assert_eq!(
            is_cohen_macaulay(&Asm::identity(7), Field::Rational, Backend::Reisner),
            Err(Error::SizeBoundExceeded { got: 7, max: 6 })
        );
    }

    #[test]
    fn scan_small() {
        let r = cm_conjecture_scan(3, Field::Rational).unwrap();
        assert_eq!(r.total, 7);
        assert!(r.passed());
        assert!(cm_conjecture_scan(6, Field::Rational).is_err());
    }
}
