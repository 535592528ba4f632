//! Exhaustive checks of structural invariants over small ASM(n).

use asmlab::asm::{perm_set_naive, rank_matrix};
use asmlab::cm::{init_complex, is_cohen_macaulay, Backend};
use asmlab::complex::{km_vertex_decomposable, sr_complex_from_ideal};
use asmlab::enumerate::{all_asms, enumerate_asms};
use asmlab::homology::{ChainComplex, Field, DEFAULT_FACE_BUDGET};
use asmlab::ideal::{init_ideal, is_minimal_prime};
use asmlab::pattern::badblock_match;
use asmlab::pipe_dream::perm_set_via_primes;
use asmlab::yo::construct_yo_primes;
use asmlab::{Asm, CellSet};

/// Facets of the initial complex relabelled onto `0..k` for the chain
/// complex builder.
fn local_facets(a: &Asm) -> Vec<u64> {
    let complex = init_complex(a);
    let verts: Vec<u128> = complex
        .vertices()
        .iter()
        .map(|c| 1u128 << complex.vertices().index_of(c))
        .collect();
    complex
        .full_facets()
        .iter()
        .map(|f| {
            verts
                .iter()
                .enumerate()
                .filter(|(_, &bit)| f.bits() & bit != 0)
                .fold(0u64, |acc, (k, _)| acc | 1 << k)
        })
        .collect()
}

#[test]
fn stream_counts() {
    let counts: Vec<usize> = (1..=6)
        .map(|n| enumerate_asms(n).unwrap().count())
        .collect();
    assert_eq!(counts, vec![1, 2, 7, 42, 429, 7436]);
}

#[test]
fn stream_is_strictly_increasing_and_valid() {
    let asms = all_asms(5).unwrap();
    for w in asms.windows(2) {
        assert!(rank_matrix(&w[0]).rows() < rank_matrix(&w[1]).rows());
    }
    for a in &asms {
        assert_eq!(&Asm::new(a.rows()).unwrap(), a);
    }
}

#[test]
fn init_ideal_support_lies_above_the_antidiagonal() {
    for n in 1..=5 {
        for a in all_asms(n).unwrap() {
            let ideal = init_ideal(&a);
            let gens: Vec<CellSet> = ideal.generators().collect();
            for g in &gens {
                assert!(!g.is_empty());
                // minimal generating set: no generator divides another
                assert!(gens.iter().filter(|h| h.is_subset(g)).count() == 1, "{a:?}");
            }
            for cell in ideal.support().iter() {
                assert!(cell.row + cell.col <= n, "{a:?} uses {cell}");
            }
        }
    }
}

#[test]
fn pipe_dreams_match_bruhat_minimal_perms() {
    for n in 1..=5 {
        for a in all_asms(n).unwrap() {
            let mut fast = perm_set_via_primes(&a).unwrap().perms;
            let mut naive = perm_set_naive(&a).unwrap();
            fast.sort();
            naive.sort();
            assert_eq!(fast, naive, "{a:?}");
        }
    }
}

#[test]
fn reisner_and_hochster_agree_on_four() {
    for a in all_asms(4).unwrap() {
        let r = is_cohen_macaulay(&a, Field::Rational, Backend::Reisner).unwrap();
        let h = is_cohen_macaulay(&a, Field::Rational, Backend::Hochster).unwrap();
        assert_eq!(r, h, "{a:?}");
    }
}

#[test]
fn reisner_and_hochster_agree_on_five() {
    for a in all_asms(5).unwrap() {
        let r = is_cohen_macaulay(&a, Field::Rational, Backend::Reisner).unwrap();
        let h = is_cohen_macaulay(&a, Field::Rational, Backend::Hochster).unwrap();
        assert_eq!(r, h, "{a:?}");
    }
}

#[test]
fn rational_and_modular_agree_on_five() {
    let p = Field::Prime(32003);
    for a in all_asms(5).unwrap() {
        let q = is_cohen_macaulay(&a, Field::Rational, Backend::Reisner).unwrap();
        assert_eq!(
            q,
            is_cohen_macaulay(&a, p, Backend::Reisner).unwrap(),
            "{a:?}"
        );
    }
}

#[test]
fn chain_complexes_are_complexes() {
    for n in 1..=4 {
        for a in all_asms(n).unwrap() {
            let cc = ChainComplex::from_facets(&local_facets(&a), DEFAULT_FACE_BUDGET).unwrap();
            assert!(cc.boundary_squares_to_zero());
            for field in [Field::Rational, Field::Prime(2), Field::Prime(32003)] {
                let alternating: i64 = cc
                    .reduced_betti(field)
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
                    .sum();
                // betti vector starts at dimension -1
                assert_eq!(-alternating, cc.reduced_euler_characteristic(), "{a:?}");
            }
        }
    }
}

#[test]
fn stanley_reisner_round_trip() {
    for a in all_asms(4).unwrap() {
        let ideal = init_ideal(&a);
        let complex = sr_complex_from_ideal(&ideal).unwrap();
        assert_eq!(complex.stanley_reisner_ideal(), ideal, "{a:?}");
    }
}

#[test]
fn purity_matches_equidimensionality() {
    for n in 1..=5 {
        for a in all_asms(n).unwrap() {
            let equidim = perm_set_via_primes(&a).unwrap().equidimensional;
            assert_eq!(init_complex(&a).is_pure(), equidim, "{a:?}");
        }
    }
}

#[test]
fn links_sit_inside_deletions() {
    for a in all_asms(4).unwrap() {
        let complex = init_complex(&a);
        for v in complex.vertex_universe().iter() {
            let sigma = CellSet::singleton(4, v);
            let link = complex.link(&sigma).unwrap();
            let deletion = complex.deletion(&sigma).unwrap();
            for f in link.full_facets() {
                assert!(deletion.is_face(&f), "{a:?} at {v}");
            }
        }
    }
}

#[test]
fn decomposable_implies_cm_implies_equidimensional() {
    for n in 1..=4 {
        for a in all_asms(n).unwrap() {
            let cm = is_cohen_macaulay(&a, Field::Rational, Backend::Reisner).unwrap();
            if km_vertex_decomposable(&init_complex(&a)).result {
                assert!(cm, "{a:?}");
            }
            if cm {
                assert!(perm_set_via_primes(&a).unwrap().equidimensional, "{a:?}");
            }
        }
    }
}

#[test]
fn badblocks_give_primes_of_distinct_heights() {
    let mut matches = 0;
    for n in 1..=5 {
        for a in all_asms(n).unwrap() {
            let Some((r, c)) = badblock_match(&a, false) else {
                continue;
            };
            matches += 1;
            assert!(!perm_set_via_primes(&a).unwrap().equidimensional, "{a:?}");
            let yo = construct_yo_primes(&a, r, c).unwrap();
            let ideal = init_ideal(&a);
            assert!(is_minimal_prime(&ideal, &yo.y).unwrap(), "{a:?}");
            assert!(is_minimal_prime(&ideal, &yo.o).unwrap(), "{a:?}");
            assert_ne!(yo.y.len(), yo.o.len(), "{a:?}");
        }
    }
    assert_eq!(matches, 12);
}
