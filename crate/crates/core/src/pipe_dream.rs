//! Reading minimal primes of antidiagonal initial ideals as reduced pipe
//! dreams, and the prime-based route to `Perm(A)`.

use serde::Serialize;

use crate::asm::{coxeter_length, Asm, Permutation};
use crate::cells::CellSet;
use crate::error::{Error, Result};
use crate::ideal::{init_ideal, minimal_primes};

/// The permutation whose pipe dream has crosses exactly at `prime`.
///
/// Cell `(i, j)` is the simple transposition `s_{i+j-1}`. Rows are read top
/// to bottom and each row right to left; the word acts on positions from
/// left to right, starting at the identity. Fails when the word is not
/// reduced.
pub fn perm_from_prime(prime: &CellSet, n: usize) -> Result<Permutation> {
    let mut w: Vec<usize> = (1..=n).collect();
    for row in 1..=n {
        for col in (1..=n).rev() {
            if !prime.contains((row, col).into()) {
                continue;
            }
            let k = row + col - 1;
            if k >= n || w[k - 1] > w[k] {
                return Err(Error::NonReducedWord(prime.to_string()));
            }
            w.swap(k - 1, k);
        }
    }
    Permutation::new(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermSetSummary {
    pub perms: Vec<Permutation>,
    pub codim: usize,
    pub equidimensional: bool,
}

/// `Perm(A)`, codimension and equidimensionality read from the minimal
/// primes of the antidiagonal initial ideal.
pub fn perm_set_via_primes(a: &Asm) -> Result<PermSetSummary> {
    let n = a.n();
    let ideal = init_ideal(a);
    let primes = match minimal_primes(&ideal) {
        Ok(p) => p,
        Err(Error::ZeroIdeal) => vec![CellSet::empty(n)],
        Err(e) => return Err(e),
    };
    let heights: Vec<usize> = primes.iter().map(|p| p.len()).collect();
    let mut perms = primes
        .iter()
        .map(|p| perm_from_prime(p, n))
        .collect::<Result<Vec<_>>>()?;
    perms.sort();
    perms.dedup();
    debug_assert!(perms.iter().all(|w| heights.contains(&coxeter_length(w))));
    let codim = heights.iter().copied().min().unwrap_or(0);
    let equidimensional = heights.iter().all(|&h| h == codim);
    Ok(PermSetSummary {
        perms,
        codim,
        equidimensional,
    })
}
