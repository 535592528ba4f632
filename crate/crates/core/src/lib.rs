//! Exact computations for alternating sign matrix varieties.
//!
//! Starting from an [`asm::Asm`], the crate computes rank matrices,
//! diagrams and essential sets, the antidiagonal initial ideal of the ASM
//! ideal ([`ideal::init_ideal`]), its minimal primes and their pipe-dream
//! permutations, the Stanley–Reisner complex with links, deletions and
//! vertex decomposition, and decides Cohen–Macaulayness through exact
//! simplicial homology. [`census`] and [`verify`] sweep whole `ASM(n)`.

pub mod asm;
pub mod cells;
pub mod census;
pub mod cm;
pub mod complex;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod homology;
pub mod ideal;
pub mod pattern;
pub mod pipe_dream;
pub mod verify;
pub mod yo;

pub use asm::{Asm, Permutation};
pub use cells::{Cell, CellSet};
pub use error::{Error, Result};
