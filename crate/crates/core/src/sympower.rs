//! Von Mangoldt coefficients of the symmetric-power L-functions and their
//! summatory functions ψ, Ψ and Φ.
//!
//! At an unramified prime power `p^m` the coefficient is
//! `U_n(cos mθ_p) log p`. At ramified primes the local parameters are not
//! determined by `a(p)`; those coefficients are set to zero and the
//! resulting discrepancy is covered by [`correction_bound`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::{higher_prime_powers, prime_power};
use crate::sato_tate::{chebyshev_t, chebyshev_u, AngleTable};
use crate::sum::ordered_sum;

/// `Λ_{Sym^n f}(j)`.
pub fn lambda_symn(j: u64, n: usize, table: &AngleTable) -> Result<f64> {
    let Some((p, m)) = prime_power(j) else {
        return Ok(0.0);
    };
    if table.spec().is_ramified(p) {
        return Ok(0.0);
    }
    let rec = table.record(p).ok_or(Error::Coverage {
        requested: p as f64,
        covered: table.x_max() as u64,
    })?;
    Ok(chebyshev_u(n, chebyshev_t(m as usize, rec.cos_theta)) * (p as f64).ln())
}

/// One unramified prime power `j = p^m <= x`.
#[derive(Debug, Clone, Copy)]
struct PowerTerm {
    j: u64,
    p: u64,
    m: u32,
    cos_theta: f64,
}

/// Unramified prime powers up to `x`, ascending in `j`.
fn power_terms(table: &AngleTable, x: f64) -> Result<Vec<PowerTerm>> {
    let recs = table.up_to(x)?;
    let mut terms: Vec<PowerTerm> = recs
        .iter()
        .map(|r| PowerTerm {
            j: r.p,
            p: r.p,
            m: 1,
            cos_theta: r.cos_theta,
        })
        .collect();
    let xi = x.floor() as u64;
    let small: Vec<u64> = recs.iter().map(|r| r.p).collect();
    for (j, p, m) in higher_prime_powers(xi, &small) {
        let rec = table.record(p).expect("prime below sqrt(x) is tabulated");
        terms.push(PowerTerm {
            j,
            p,
            m,
            cos_theta: rec.cos_theta,
        });
    }
    terms.sort_unstable_by_key(|t| t.j);
    Ok(terms)
}

/// `U_n(cos mθ_p)`.
fn term_value(n: usize, t: &PowerTerm) -> f64 {
    chebyshev_u(n, chebyshev_t(t.m as usize, t.cos_theta))
}

/// `ψ_{Sym^n f}(x) = Σ_{j <= x} Λ_{Sym^n f}(j)`.
pub fn psi_symn(x: f64, n: usize, table: &AngleTable) -> Result<f64> {
    let terms = power_terms(table, x)?;
    Ok(ordered_sum(
        terms.iter().map(|t| term_value(n, t) * (t.p as f64).ln()),
    ))
}

/// `Ψ_{Sym^n f}(x) = Σ_{2 <= j <= x} Λ_{Sym^n f}(j) / log j`, summed directly.
pub fn psi_weighted(x: f64, n: usize, table: &AngleTable) -> Result<f64> {
    let terms = power_terms(table, x)?;
    Ok(ordered_sum(terms.iter().map(|t| term_value(n, t) / t.m as f64)))
}

/// `Φ_{Sym^n f}(x) = Σ_{p <= x} U_n(cos θ_p)` over unramified primes.
pub fn phi_sum(x: f64, n: usize, table: &AngleTable) -> Result<f64> {
    Ok(ordered_sum(
        table.up_to(x)?.iter().map(|r| chebyshev_u(n, r.cos_theta)),
    ))
}

/// `(n+1) (#{p^m <= x : m >= 2} + #{p | N})`, an upper bound for `|Φ − Ψ|`.
pub fn correction_bound(x: f64, n: usize, table: &AngleTable) -> Result<f64> {
    let recs = table.up_to(x)?;
    let xi = x.floor() as u64;
    // Ramified primes also have higher powers; count them from all primes.
    let mut primes: Vec<u64> = recs.iter().map(|r| r.p).collect();
    let ramified = table.spec().ramified_primes();
    primes.extend(ramified.iter().copied());
    primes.sort_unstable();
    let higher = higher_prime_powers(xi, &primes).len();
    Ok(((n + 1) * (higher + ramified.len())) as f64)
}

/// All four summatory quantities at one `(n, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymPowerSumReport {
    pub n: usize,
    pub x: f64,
    pub phi: f64,
    pub psi: f64,
    pub psi_weighted: f64,
    pub correction_bound: f64,
}

impl SymPowerSumReport {
    pub const CSV_HEADER: &'static str = "n,x,phi,psi,psi_weighted,correction_bound";

    pub fn compute(table: &AngleTable, n: usize, x: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("symmetric power must be >= 1".into()));
        }
        let terms = power_terms(table, x)?;
        let psi = ordered_sum(terms.iter().map(|t| term_value(n, t) * (t.p as f64).ln()));
        let psi_weighted = ordered_sum(terms.iter().map(|t| term_value(n, t) / t.m as f64));
        Ok(Self {
            n,
            x,
            phi: phi_sum(x, n, table)?,
            psi,
            psi_weighted,
            correction_bound: correction_bound(x, n, table)?,
        })
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.16e},{:.16e},{:.16e},{}",
            self.n, self.x, self.phi, self.psi, self.psi_weighted, self.correction_bound
        )
    }
}
