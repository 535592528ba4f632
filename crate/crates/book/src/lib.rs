//! The guide's chapters, compiled as doc comments so that `cargo test --doc`
//! runs every listing against the current library. One module per chapter
//! keeps failures traceable to their file.

#[doc = include_str!("../../../README.md")]
pub mod readme {}
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/matrices.md")]
pub mod matrices {}
#[doc = include_str!("../../../book/src/ideals.md")]
pub mod ideals {}
#[doc = include_str!("../../../book/src/complexes.md")]
pub mod complexes {}
#[doc = include_str!("../../../book/src/cohen_macaulay.md")]
pub mod cohen_macaulay {}
#[doc = include_str!("../../../book/src/patterns.md")]
pub mod patterns {}
#[doc = include_str!("../../../book/src/census.md")]
pub mod census {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
