//! Compiles every Rust listing of the guide in `book/src` as a doctest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/coefficients.md")]
pub mod coefficients {}

#[doc = include_str!("../../../book/src/angles.md")]
pub mod angles {}

#[doc = include_str!("../../../book/src/chebyshev-sums.md")]
pub mod chebyshev_sums {}

#[doc = include_str!("../../../book/src/smoothing.md")]
pub mod smoothing {}

#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}

#[doc = include_str!("../../../book/src/explicit-formula.md")]
pub mod explicit_formula {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
