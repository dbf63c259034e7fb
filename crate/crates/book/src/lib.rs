//! The guide in `book/` is plain mdbook. Its Rust listings, and those of the
//! README, are compiled and run here as doc-tests, one module per chapter, so
//! `cargo test` keeps them in sync with the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/categories.md")]
pub mod categories {}
#[doc = include_str!("../../../book/src/set-functors.md")]
pub mod set_functors {}
#[doc = include_str!("../../../book/src/weighted-limits.md")]
pub mod weighted_limits {}
#[doc = include_str!("../../../book/src/ends.md")]
pub mod ends {}
#[doc = include_str!("../../../book/src/kan.md")]
pub mod kan {}
#[doc = include_str!("../../../book/src/cauchy.md")]
pub mod cauchy {}
#[doc = include_str!("../../../book/src/profunctors-day.md")]
pub mod profunctors_day {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
