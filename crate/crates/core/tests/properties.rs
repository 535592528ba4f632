use std::collections::BTreeSet;
use std::sync::OnceLock;

use asmlab::asm::{asm_geq, direct_sum};
use asmlab::cm::{complex_is_cm, init_complex, Backend};
use asmlab::enumerate::all_asms;
use asmlab::homology::{Field, DEFAULT_FACE_BUDGET};
use asmlab::ideal::{minimal_primes, SquarefreeIdeal};
use asmlab::pipe_dream::perm_set_via_primes;
use asmlab::{Asm, Cell, CellSet};
use proptest::prelude::*;

fn asm5() -> &'static [Asm] {
    static CELL: OnceLock<Vec<Asm>> = OnceLock::new();
    CELL.get_or_init(|| all_asms(5).unwrap())
}

fn asm4() -> &'static [Asm] {
    static CELL: OnceLock<Vec<Asm>> = OnceLock::new();
    CELL.get_or_init(|| all_asms(4).unwrap())
}

/// Minimal vertex covers by checking every subset of the support.
fn brute_force_primes(ideal: &SquarefreeIdeal) -> BTreeSet<u128> {
    let support: Vec<u128> = ideal
        .support()
        .iter()
        .map(|c| 1u128 << ideal.support().index_of(c))
        .collect();
    let gens: Vec<u128> = ideal.generators().map(|g| g.bits()).collect();
    let covers: Vec<u128> = (0u32..1 << support.len())
        .map(|mask| {
            support
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .fold(0, |acc, (_, b)| acc | b)
        })
        .filter(|s| gens.iter().all(|g| g & s != 0))
        .collect();
    covers
        .iter()
        .copied()
        .filter(|&s| !covers.iter().any(|&t| t != s && t & s == t))
        .collect()
}

fn ideal_strategy() -> impl Strategy<Value = SquarefreeIdeal> {
    // generators drawn from the first 12 cells of a 4x4 grid
    prop::collection::vec(1u128..(1 << 12), 1..8).prop_map(|gens| {
        SquarefreeIdeal::new(4, gens.into_iter().map(|g| CellSet::from_bits(4, g)))
    })
}

proptest! {
    #[test]
    fn minimal_primes_match_brute_force(ideal in ideal_strategy()) {
        let fast: BTreeSet<u128> = minimal_primes(&ideal).unwrap().iter().map(|p| p.bits()).collect();
        prop_assert_eq!(fast, brute_force_primes(&ideal));
    }

    #[test]
    fn cell_set_algebra(a in any::<u16>(), b in any::<u16>()) {
        let (x, y) = (CellSet::from_bits(4, a as u128), CellSet::from_bits(4, b as u128));
        let set = |s: &CellSet| s.iter().collect::<BTreeSet<Cell>>();
        let (sx, sy) = (set(&x), set(&y));
        prop_assert_eq!(set(&x.union(&y)), sx.union(&sy).copied().collect());
        prop_assert_eq!(set(&x.intersection(&y)), sx.intersection(&sy).copied().collect());
        prop_assert_eq!(set(&x.difference(&y)), sx.difference(&sy).copied().collect());
        prop_assert_eq!(x.is_subset(&y), sx.is_subset(&sy));
        prop_assert_eq!(x.len(), sx.len());
    }

    #[test]
    fn asm_json_round_trip(k in 0usize..429) {
        let a = &asm5()[k];
        let text = serde_json::to_string(a).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Asm>(&text).unwrap(), a);
    }

    #[test]
    fn asm_order_is_a_partial_order(i in 0usize..42, j in 0usize..42, k in 0usize..42) {
        let (a, b, c) = (&asm4()[i], &asm4()[j], &asm4()[k]);
        prop_assert!(asm_geq(a, a).unwrap());
        if asm_geq(a, b).unwrap() && asm_geq(b, a).unwrap() {
            prop_assert_eq!(a, b);
        }
        if asm_geq(a, b).unwrap() && asm_geq(b, c).unwrap() {
            prop_assert!(asm_geq(a, c).unwrap());
        }
    }

    #[test]
    fn direct_sum_codim_is_additive(i in 0usize..42, j in 0usize..7) {
        let a = &asm4()[i];
        let b = &all_asms(3).unwrap()[j];
        let (pa, pb) = (perm_set_via_primes(a).unwrap(), perm_set_via_primes(b).unwrap());
        let sum = perm_set_via_primes(&direct_sum(a, b)).unwrap();
        prop_assert_eq!(sum.codim, pa.codim + pb.codim);
        prop_assert_eq!(sum.perms.len(), pa.perms.len() * pb.perms.len());
    }

    #[test]
    fn vertex_links_of_cm_complexes_are_cm(k in 0usize..429, v in 0usize..25) {
        let complex = init_complex(&asm5()[k]);
        let cm = |c| complex_is_cm(c, Field::Rational, Backend::Reisner, DEFAULT_FACE_BUDGET).unwrap().cm;
        let cell = Cell::new(v / 5 + 1, v % 5 + 1);
        prop_assume!(complex.vertices().contains(cell) && cm(&complex));
        let link = complex.link(&CellSet::singleton(5, cell)).unwrap();
        prop_assert!(cm(&link));
    }
}
