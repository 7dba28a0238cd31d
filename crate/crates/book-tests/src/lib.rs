//! Runs the Rust listings of the book as doc tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/network.md")]
pub mod network {}

#[doc = include_str!("../../../book/src/exact-rates.md")]
pub mod exact_rates {}

#[doc = include_str!("../../../book/src/cutset.md")]
pub mod cutset {}

#[doc = include_str!("../../../book/src/low-snr.md")]
pub mod low_snr {}

#[doc = include_str!("../../../book/src/energy.md")]
pub mod energy {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
