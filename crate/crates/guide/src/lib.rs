//! The `pph` guide. Each module holds one chapter of the book so that its
//! examples run as doctests and stay in sync with the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/p_strings.md")]
pub mod p_strings {}

#[doc = include_str!("../../../book/src/tries.md")]
pub mod tries {}

#[doc = include_str!("../../../book/src/heap.md")]
pub mod heap {}

#[doc = include_str!("../../../book/src/matching.md")]
pub mod matching {}

#[doc = include_str!("../../../book/src/checking.md")]
pub mod checking {}

#[doc = include_str!("../../../book/src/formats.md")]
pub mod formats {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
