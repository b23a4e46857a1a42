//! Runs every code snippet in the book as a doctest, keeping the guide and
//! the library in sync. Each chapter gets its own module so a failure names
//! its source file.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/graphs.md")]
mod graphs {}

#[doc = include_str!("../../../book/src/reseeding.md")]
mod reseeding {}

#[doc = include_str!("../../../book/src/multigrid.md")]
mod multigrid {}

#[doc = include_str!("../../../book/src/evaluation.md")]
mod evaluation {}

#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
