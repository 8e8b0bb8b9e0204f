//! Hecke eigenvalues `a(p)` for the supported newforms.
//!
//! Three independent sources feed the same [`CoefficientTable`]: point
//! counting on an elliptic curve (weight 2), the q-expansion of the
//! discriminant form Δ (weight 12, level 1), and plain-text q-expansion
//! files. Primes dividing the level are stored but flagged as ramified.

mod cache;
mod delta;
mod elliptic;
mod qexp;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::primes::{prime_divisors, primes_up_to};

pub use cache::{cache_file_name, source_hash, CacheStatus, CoefficientCache};
pub use delta::{tau_table, DEFAULT_MAX_SERIES_LEN};
pub use elliptic::{ap_elliptic, ap_elliptic_fast, Curve, FAST_MIN_PRIME};
pub use qexp::{ingest_qexp, read_qexp, write_qexp};

/// Where the coefficients of a newform come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoefficientSource {
    EllipticCurve(Curve),
    /// Δ = q ∏ (1 - q^n)^24.
    EtaDelta,
    QExpansionFile(PathBuf),
}

/// Identifies a newform: weight, level, label and coefficient source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewformSpec {
    weight: u32,
    level: u64,
    label: String,
    source: CoefficientSource,
}

impl NewformSpec {
    pub fn new(
        label: impl Into<String>,
        weight: u32,
        level: u64,
        source: CoefficientSource,
    ) -> Result<Self> {
        let label = label.into();
        if weight < 2 || weight % 2 != 0 {
            return Err(Error::Input(format!("weight must be even and >= 2, got {weight}")));
        }
        if level == 0 {
            return Err(Error::Input("level must be positive".into()));
        }
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(Error::Input(format!("label {label:?} must be non-empty without whitespace")));
        }
        match source {
            CoefficientSource::EllipticCurve(_) if weight != 2 => {
                return Err(Error::Input("elliptic curve newforms have weight 2".into()))
            }
            CoefficientSource::EtaDelta if (weight, level) != (12, 1) => {
                return Err(Error::Input("Δ has weight 12 and level 1".into()))
            }
            _ => {}
        }
        Ok(Self {
            weight,
            level,
            label,
            source,
        })
    }

    /// The weight-2 newform attached to `curve`; `conductor` is declared by
    /// the caller, not computed.
    pub fn elliptic_curve(label: impl Into<String>, curve: Curve, conductor: u64) -> Result<Self> {
        Self::new(label, 2, conductor, CoefficientSource::EllipticCurve(curve))
    }

    /// The discriminant modular form Δ.
    pub fn delta() -> Self {
        Self {
            weight: 12,
            level: 1,
            label: "delta".into(),
            source: CoefficientSource::EtaDelta,
        }
    }

    pub fn qexp_file(
        label: impl Into<String>,
        weight: u32,
        level: u64,
        path: impl Into<PathBuf>,
    ) -> Result<Self> {
        Self::new(label, weight, level, CoefficientSource::QExpansionFile(path.into()))
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn source(&self) -> &CoefficientSource {
        &self.source
    }

    /// `p | N`.
    pub fn is_ramified(&self, p: u64) -> bool {
        self.level % p == 0
    }

    /// Distinct primes dividing the level.
    pub fn ramified_primes(&self) -> Vec<u64> {
        prime_divisors(self.level)
    }
}

impl fmt::Display for NewformSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (k={}, N={})", self.label, self.weight, self.level)
    }
}

/// Exact check of `a^2 <= 4 p^(k-1)`.
pub fn hasse_holds(ap: i128, p: u64, weight: u32) -> bool {
    let a = BigUint::from(ap.unsigned_abs());
    let rhs = BigUint::from(p).pow(weight - 1) * 4u32;
    &a * &a <= rhs
}

/// `|a(p)| / (2 p^((k-1)/2))`, the cosine of the Sato-Tate angle up to sign.
pub fn normalized(ap: i128, p: u64, weight: u32) -> f64 {
    let p = p as f64;
    ap as f64 / (2.0 * p.powi((weight as i32 - 2) / 2) * p.sqrt())
}

/// Tuning knobs for [`CoefficientTable::generate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateOptions {
    /// Primes at or above this use baby-step/giant-step point counting.
    pub crossover: u64,
    /// Largest q-expansion length the Δ engine may allocate.
    pub max_series_len: usize,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        Self {
            crossover: 10_000,
            max_series_len: DEFAULT_MAX_SERIES_LEN,
        }
    }
}

/// Hecke eigenvalues `a(p)` for every prime up to a coverage limit.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    spec: NewformSpec,
    entries: BTreeMap<u64, i128>,
    coverage: u64,
}

impl CoefficientTable {
    /// Build from raw entries, validating completeness and the Hasse bound.
    ///
    /// `coverage` is the bound up to which every prime must be present.
    pub fn from_entries(
        spec: NewformSpec,
        entries: BTreeMap<u64, i128>,
        coverage: u64,
    ) -> Result<Self> {
        let primes = primes_up_to(coverage);
        for &p in &primes {
            match entries.get(&p) {
                None => return Err(Error::Data(format!("missing coefficient for prime {p}"))),
                Some(&ap) if !spec.is_ramified(p) && !hasse_holds(ap, p, spec.weight) => {
                    return Err(Error::HasseViolation { p, ap })
                }
                _ => {}
            }
        }
        let entries = entries.into_iter().filter(|(p, _)| *p <= coverage).collect();
        Ok(Self {
            spec,
            entries,
            coverage,
        })
    }

    /// An empty table (no primes covered).
    pub fn empty(spec: NewformSpec) -> Self {
        Self {
            spec,
            entries: BTreeMap::new(),
            coverage: 1,
        }
    }

    /// Compute `a(p)` for all primes `p <= x_max` from the spec's source.
    pub fn generate(spec: &NewformSpec, x_max: u64, opts: GenerateOptions) -> Result<Self> {
        let entries = match spec.source() {
            CoefficientSource::EllipticCurve(curve) => {
                elliptic_range(curve, spec, 2, x_max, opts.crossover)?
            }
            CoefficientSource::EtaDelta => {
                let len = usize::try_from(x_max).map_err(|_| Error::Resource("x_max too large".into()))?;
                let tau = tau_table(len.max(1), opts.max_series_len)?;
                primes_up_to(x_max)
                    .into_iter()
                    .map(|p| (p, tau[p as usize - 1]))
                    .collect()
            }
            CoefficientSource::QExpansionFile(path) => {
                let table = ingest_qexp(path, spec)?;
                if table.coverage < x_max {
                    return Err(Error::Coverage {
                        requested: x_max as f64,
                        covered: table.coverage,
                    });
                }
                return Ok(table.restricted(x_max));
            }
        };
        Self::from_entries(spec.clone(), entries, x_max)
    }

    /// Extend coverage to `x_max`, computing only the missing primes where
    /// the source allows it.
    pub fn extend_to(&mut self, x_max: u64, opts: GenerateOptions) -> Result<()> {
        if x_max <= self.coverage {
            return Ok(());
        }
        let fresh = match self.spec.source() {
            CoefficientSource::EllipticCurve(curve) => {
                let extra = elliptic_range(curve, &self.spec, self.coverage + 1, x_max, opts.crossover)?;
                let mut entries = self.entries.clone();
                entries.extend(extra);
                Self::from_entries(self.spec.clone(), entries, x_max)?
            }
            _ => Self::generate(&self.spec, x_max, opts)?,
        };
        *self = fresh;
        Ok(())
    }

    /// Copy keeping only primes `<= x`.
    pub fn restricted(&self, x: u64) -> Self {
        let coverage = x.min(self.coverage);
        Self {
            spec: self.spec.clone(),
            entries: self.entries.range(..=coverage).map(|(&p, &a)| (p, a)).collect(),
            coverage,
        }
    }

    pub fn spec(&self) -> &NewformSpec {
        &self.spec
    }

    /// Every prime `<= coverage()` has an entry.
    pub fn coverage(&self) -> u64 {
        self.coverage
    }

    /// Largest prime with an entry, `None` for an empty table.
    pub fn x_max(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    pub fn get(&self, p: u64) -> Option<i128> {
        self.entries.get(&p).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(p, a(p), ramified)` in ascending `p`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, i128, bool)> + '_ {
        self.entries
            .iter()
            .map(|(&p, &a)| (p, a, self.spec.is_ramified(p)))
    }

    pub fn unramified_count(&self) -> usize {
        self.iter().filter(|e| !e.2).count()
    }

    /// Largest `|a(p)| / (2 p^((k-1)/2))` over unramified primes.
    pub fn max_hasse_ratio(&self) -> f64 {
        self.iter()
            .filter(|e| !e.2)
            .map(|(p, a, _)| normalized(a, p, self.spec.weight).abs())
            .fold(0.0, f64::max)
    }
}

fn elliptic_range(
    curve: &Curve,
    spec: &NewformSpec,
    lo: u64,
    hi: u64,
    crossover: u64,
) -> Result<BTreeMap<u64, i128>> {
    let primes: Vec<u64> = primes_up_to(hi).into_iter().filter(|&p| p >= lo).collect();
    // par_iter().collect() preserves input order, so entries commit ascending.
    let values: Vec<i64> = primes
        .par_iter()
        .map(|&p| {
            if p < crossover || spec.is_ramified(p) {
                ap_elliptic(curve, p)
            } else {
                ap_elliptic_fast(curve, p)
            }
        })
        .collect::<Result<_>>()?;
    Ok(primes
        .into_iter()
        .zip(values)
        .map(|(p, a)| (p, a as i128))
        .collect())
}
