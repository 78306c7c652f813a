//! Runs every code block in the mdbook guide as a doctest, so
//! `cargo test --doc` keeps the book in sync with the library.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/point-clouds.md")]
mod point_clouds {}

#[doc = include_str!("../../../book/src/rips-filtrations.md")]
mod rips_filtrations {}

#[doc = include_str!("../../../book/src/homology.md")]
mod homology {}

#[doc = include_str!("../../../book/src/barcodes-and-diagrams.md")]
mod barcodes_and_diagrams {}

#[doc = include_str!("../../../book/src/command-line.md")]
mod command_line {}

#[doc = include_str!("../../../README.md")]
mod readme {}
