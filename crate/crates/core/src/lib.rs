//! Equidistribution of Hecke angles for holomorphic newforms.
//!
//! The pipeline runs from Fourier coefficients to angles, to Chebyshev
//! sums over primes and prime powers, and on to smoothed interval counts
//! and the explicit formula.
//!
//! ```
//! use satotate::coefficients::{CoefficientTable, GenerateOptions, NewformSpec};
//! use satotate::sato_tate::AngleTable;
//!
//! let table = CoefficientTable::generate(&NewformSpec::delta(), 100, GenerateOptions::default())?;
//! let angles = AngleTable::from_coefficients(&table)?;
//! assert_eq!(angles.records().len(), 25);
//! # Ok::<(), satotate::Error>(())
//! ```

pub mod bounds;
pub mod coefficients;
pub mod error;
pub mod explicit_formula;
pub mod primes;
pub mod smoothing;
pub mod sato_tate;
pub mod sum;
pub mod sympower;

pub use error::{Error, Result};
