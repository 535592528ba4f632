//! Sweeps that check structural statements about ASM varieties on every
//! ASM of a given size (or a seeded sample, where noted).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::asm::{
    coxeter_length, direct_sum, insert_unit, one_plus, perm_set_naive, Asm, Permutation,
};
use crate::cells::{Cell, CellSet};
use crate::cm::{cm_conjecture_scan, init_complex, is_cohen_macaulay, Backend};
use crate::enumerate::all_asms;
use crate::error::{Error, Result};
use crate::homology::Field;
use crate::ideal::{init_ideal, is_minimal_prime, SquarefreeIdeal};
use crate::pattern::{all_witnesses, badblock_match, check_containment_constraints};
use crate::pipe_dream::perm_set_via_primes;
use crate::yo::construct_yo_primes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    PermBijection,
    DirectSum,
    InitSplit,
    LinkColon,
    TildeIdentity,
    BlockAntidiagonal,
    Badblock,
    CmConjecture,
    ContainmentRestrictions,
}

pub const ALL_STATEMENTS: [Statement; 9] = [
    Statement::PermBijection,
    Statement::DirectSum,
    Statement::InitSplit,
    Statement::LinkColon,
    Statement::TildeIdentity,
    Statement::BlockAntidiagonal,
    Statement::Badblock,
    Statement::CmConjecture,
    Statement::ContainmentRestrictions,
];

impl Statement {
    pub fn name(&self) -> &'static str {
        match self {
            Statement::PermBijection => "perm-bijection",
            Statement::DirectSum => "direct-sum",
            Statement::InitSplit => "init-split",
            Statement::LinkColon => "link-colon",
            Statement::TildeIdentity => "tilde-identity",
            Statement::BlockAntidiagonal => "block-antidiagonal",
            Statement::Badblock => "badblock",
            Statement::CmConjecture => "cm-conjecture",
            Statement::ContainmentRestrictions => "containment-restrictions",
        }
    }

    /// Largest supported `n`.
    pub fn max_n(&self) -> usize {
        match self {
            Statement::PermBijection | Statement::InitSplit => 6,
            Statement::DirectSum => 7,
            Statement::LinkColon | Statement::BlockAntidiagonal => 6,
            Statement::TildeIdentity | Statement::Badblock => 7,
            Statement::CmConjecture => 5,
            Statement::ContainmentRestrictions => 6,
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Statement> {
        ALL_STATEMENTS
            .iter()
            .copied()
            .find(|st| st.name() == s.trim())
            .ok_or_else(|| Error::UnknownStatement(s.to_string()))
    }
}

impl Serialize for Statement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub statement: Statement,
    pub n: usize,
    pub cases: usize,
    pub passed: usize,
    /// False when the cases are a seeded sample.
    pub exhaustive: bool,
    pub first_counterexample: Option<String>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.passed == self.cases
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}/{}", self.passed, self.cases)?;
        if let Some(c) = &self.first_counterexample {
            write!(f, " first counterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    passed: usize,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else if self.first.is_none() {
            self.first = Some(what());
        }
    }

    fn absorb(&mut self, results: Vec<(bool, String)>) {
        for (ok, what) in results {
            self.record(ok, || what);
        }
    }
}

/// Seed of the sampled sweeps.
pub const SAMPLE_SEED: u64 = 0x5eed_a5a1;
/// Number of sampled cases where a sweep is not exhaustive.
pub const SAMPLE_SIZE: usize = 1000;
/// Largest `n` at which link-colon runs over every face.
const LINK_COLON_EXHAUSTIVE_N: usize = 4;

pub fn verify_statement(statement: Statement, n: usize) -> Result<VerificationReport> {
    if n == 0 || n > statement.max_n() {
        return Err(Error::SizeBoundExceeded {
            got: n,
            max: statement.max_n(),
        });
    }
    let mut tally = Tally::default();
    let mut exhaustive = true;
    match statement {
        Statement::PermBijection => perm_bijection(n, &mut tally)?,
        Statement::DirectSum => direct_sum_sweep(n, &mut tally)?,
        Statement::InitSplit => init_split(n, &mut tally)?,
        Statement::LinkColon => {
            exhaustive = n <= LINK_COLON_EXHAUSTIVE_N;
            link_colon(n, exhaustive, &mut tally)?
        }
        Statement::TildeIdentity => tilde_identity(n, &mut tally)?,
        Statement::BlockAntidiagonal => block_antidiagonal(n, &mut tally)?,
        Statement::Badblock => badblock(n, &mut tally)?,
        Statement::CmConjecture => {
            let r = cm_conjecture_scan(n, Field::Rational)?;
            let bad: BTreeSet<String> = r
                .violations_proved
                .iter()
                .chain(&r.counterexamples_converse)
                .map(|a| format!("{a:?}"))
                .collect();
            tally.cases = r.total;
            tally.passed = r.total - bad.len();
            tally.first = bad.into_iter().next();
        }
        Statement::ContainmentRestrictions => containment(n, &mut tally)?,
    }
    Ok(VerificationReport {
        statement,
        n,
        cases: tally.cases,
        passed: tally.passed,
        exhaustive,
        first_counterexample: tally.first,
    })
}

fn perm_bijection(n: usize, tally: &mut Tally) -> Result<()> {
    let one = Permutation::identity(1);
    let results = all_asms(n)?
        .par_iter()
        .map(|a| {
            let lifted: Vec<Permutation> = perm_set_naive(a)?
                .iter()
                .map(|w| one.direct_sum(w))
                .sorted()
                .collect();
            Ok((perm_set_naive(&one_plus(a))? == lifted, format!("{a:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    tally.absorb(results);
    Ok(())
}

fn min_length(perms: &[Permutation]) -> usize {
    perms.iter().map(coxeter_length).min().unwrap_or(0)
}

fn direct_sum_sweep(n: usize, tally: &mut Tally) -> Result<()> {
    for m in 1..n {
        let left = all_asms(m)?;
        let right = all_asms(n - m)?;
        let left_perms = left
            .iter()
            .map(perm_set_naive)
            .collect::<Result<Vec<_>>>()?;
        let right_perms = right
            .iter()
            .map(perm_set_naive)
            .collect::<Result<Vec<_>>>()?;
        for (a1, p1) in left.iter().zip(&left_perms) {
            for (a2, p2) in right.iter().zip(&right_perms) {
                let got = perm_set_naive(&direct_sum(a1, a2))?;
                let expected: Vec<Permutation> = p1
                    .iter()
                    .cartesian_product(p2)
                    .map(|(u, v)| u.direct_sum(v))
                    .sorted()
                    .collect();
                let additive = min_length(&got) == min_length(p1) + min_length(p2);
                tally.record(got == expected && additive, || format!("{a1:?} + {a2:?}"));
            }
        }
    }
    Ok(())
}

fn init_split(n: usize, tally: &mut Tally) -> Result<()> {
    let results = all_asms(n)?
        .par_iter()
        .map(|a| {
            let mut components = perm_set_naive(a)?
                .into_iter()
                .map(|w| init_ideal(&w.to_asm()));
            let first = components.next().expect("Perm(A) is never empty");
            let meet = components.try_fold(first, |acc, i| acc.intersection(&i))?;
            Ok((meet == init_ideal(a), format!("{a:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    tally.absorb(results);
    Ok(())
}

fn link_colon_holds(a: &Asm, sigma: &CellSet) -> Result<bool> {
    let complex = init_complex(a);
    let link = complex.link(sigma)?.stanley_reisner_ideal();
    let expected = init_ideal(a)
        .colon(sigma)?
        .sum(&SquarefreeIdeal::variables(sigma))?;
    Ok(link == expected)
}

/// Faces of the deconed complex, each also with the first cone point added.
fn sweep_faces(a: &Asm) -> Vec<CellSet> {
    let complex = init_complex(a);
    let n = a.n();
    let mut faces = BTreeSet::new();
    for f in complex.facets() {
        let bits = f.bits();
        let mut sub = bits;
        loop {
            faces.insert(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & bits;
        }
    }
    let cone = complex.cone_points().bits();
    let extra = cone & cone.wrapping_neg();
    faces
        .into_iter()
        .flat_map(|s| [s, s | extra])
        .unique()
        .map(|s| CellSet::from_bits(n, s))
        .collect()
}

fn link_colon(n: usize, exhaustive: bool, tally: &mut Tally) -> Result<()> {
    let asms = all_asms(n)?;
    if exhaustive {
        for a in &asms {
            for sigma in sweep_faces(a) {
                tally.record(link_colon_holds(a, &sigma)?, || format!("{a:?} at {sigma}"));
            }
        }
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for _ in 0..SAMPLE_SIZE {
        let a = &asms[rng.gen_range(0..asms.len())];
        let facets = init_complex(a).full_facets();
        let facet = facets[rng.gen_range(0..facets.len())];
        let sigma = CellSet::from_cells(n, facet.iter().filter(|_| rng.gen_bool(0.5)));
        tally.record(link_colon_holds(a, &sigma)?, || format!("{a:?} at {sigma}"));
    }
    Ok(())
}

/// Variables `z_{1,k}` of the new top row of `Ã(1, j)` for the given `k`.
fn top_row(n: usize, ks: impl Iterator<Item = usize>) -> CellSet {
    CellSet::from_cells(n, ks.map(|k| Cell::new(1, k)))
}

fn tilde_identity(n: usize, tally: &mut Tally) -> Result<()> {
    let m = n + 1;
    for a in all_asms(n)? {
        let embedded = init_ideal(&a).map_cells(m, |c| Cell::new(c.row + 1, c.col));
        for j in 1..=m {
            let tilde = insert_unit(&a, 1, j)?;
            let others = top_row(m, (1..=m).filter(|&k| k != j));
            let right = top_row(m, j + 1..=m);
            let lhs = embedded.sum(&SquarefreeIdeal::variables(&others))?;
            let init_tilde = init_ideal(&tilde);
            let rhs = init_tilde
                .colon(&right)?
                .sum(&SquarefreeIdeal::variables(&right))?;
            let complex = init_complex(&tilde);
            let via_link =
                complex.is_face(&right) && complex.link(&right)?.stanley_reisner_ideal() == rhs;
            tally.record(lhs == rhs && via_link, || format!("{a:?} with j = {j}"));
        }
    }
    Ok(())
}

fn antidiagonal_blocks(a1: &Asm, a2: &Asm) -> Result<Asm> {
    let (m, k) = (a1.n(), a2.n());
    let n = m + k;
    let rows = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| match (i <= m, j > k) {
                    (true, true) => a1.get(i, j - k) as i64,
                    (false, false) => a2.get(i - m, j) as i64,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    Asm::new(rows)
}

fn block_antidiagonal(n: usize, tally: &mut Tally) -> Result<()> {
    let analyze = |a: &Asm| -> Result<(bool, bool)> {
        Ok((
            perm_set_via_primes(a)?.equidimensional,
            is_cohen_macaulay(a, Field::Rational, Backend::Reisner)?,
        ))
    };
    for m in 1..n {
        let left = all_asms(m)?;
        let right = all_asms(n - m)?;
        let lv = left.iter().map(analyze).collect::<Result<Vec<_>>>()?;
        let rv = right.iter().map(analyze).collect::<Result<Vec<_>>>()?;
        let pairs: Vec<(usize, usize)> =
            (0..left.len()).cartesian_product(0..right.len()).collect();
        let results = pairs
            .par_iter()
            .map(|&(x, y)| {
                let big = antidiagonal_blocks(&left[x], &right[y])?;
                let (eq, cm) = analyze(&big)?;
                let ok = eq == (lv[x].0 && rv[y].0) && cm == (lv[x].1 && rv[y].1);
                Ok((ok, format!("{big:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        tally.absorb(results);
    }
    Ok(())
}

fn badblock(n: usize, tally: &mut Tally) -> Result<()> {
    for a in all_asms(n)? {
        let Some((r, c)) = badblock_match(&a, false) else {
            continue;
        };
        let summary = perm_set_via_primes(&a)?;
        let yo = construct_yo_primes(&a, r, c)?;
        let init = init_ideal(&a);
        let ok = !summary.equidimensional
            && is_minimal_prime(&init, &yo.y)?
            && is_minimal_prime(&init, &yo.o)?
            && yo.y.len() != yo.o.len();
        tally.record(ok, || format!("{a:?} at ({r},{c})"));
    }
    Ok(())
}

fn containment(n: usize, tally: &mut Tally) -> Result<()> {
    let patterns: Vec<Asm> = (1..n).map(all_asms).flatten_ok().collect::<Result<_>>()?;
    for target in all_asms(n)? {
        for pattern in &patterns {
            for w in all_witnesses(&target, pattern) {
                let holds = check_containment_constraints(&target, pattern, &w)?.holds();
                tally.record(holds, || format!("{pattern:?} in {target:?} via {w:?}"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for st in ALL_STATEMENTS {
            assert_eq!(st.name().parse::<Statement>().unwrap(), st);
        }
        assert_eq!(
            "no-such".parse::<Statement>(),
            Err(Error::UnknownStatement("no-such".into()))
        );
    }

    #[test]
    fn small_sweeps() {
        let r = verify_statement(Statement::InitSplit, 3).unwrap();
        assert_eq!((r.cases, r.passed), (7, 7));
        assert_eq!(
            verify_statement(Statement::PermBijection, 4)
                .unwrap()
                .to_string(),
            "PASS 42/42"
        );
        for st in ALL_STATEMENTS {
            let r = verify_statement(st, 3).unwrap();
            assert!(r.ok(), "{st}: {r}");
        }
    }
}
