//! Truncated sums over zeros.
//!
//! A [`ZeroList`] holds positive ordinates `γ`; each stands for the pair of
//! zeros `1/2 ± iγ`, so the counting function of a list is
//! `N(t) = 2 #{γ <= t}`. Lists come from files (for instance Riemann zeros)
//! or from [`synthesize_zeros`], which spreads ordinates to follow the
//! main term of the zero count.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    phi_bound, zero_count_main_term, zero_free_width, zero_window_bound, LogScaleReal,
    SymPowerParams,
};
use crate::error::{Error, Result};
use crate::primes::primes_up_to;
use crate::sum::{par_map_sum, CompensatedSum};

/// Upper limit on the number of synthesized ordinates.
pub const MAX_SYNTHETIC_ZEROS: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZeroSource {
    File { path: PathBuf },
    Synthetic { seed: u64, n: u32, t: f64 },
}

/// Ascending positive ordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroList {
    ordinates: Vec<f64>,
    source: ZeroSource,
}

impl ZeroList {
    /// Validates that the ordinates are finite, positive and strictly increasing.
    pub fn new(ordinates: Vec<f64>, source: ZeroSource) -> Result<Self> {
        if let Some(i) = (0..ordinates.len()).find(|&i| {
            let g = ordinates[i];
            !(g.is_finite() && g > 0.0) || (i > 0 && g <= ordinates[i - 1])
        }) {
            return Err(Error::Data(format!(
                "ordinate #{} ({}) is not positive or not ascending",
                i + 1,
                ordinates[i]
            )));
        }
        Ok(Self { ordinates, source })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn source(&self) -> &ZeroSource {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Largest ordinate, or 0 for an empty list.
    pub fn gamma_max(&self) -> f64 {
        self.ordinates.last().copied().unwrap_or(0.0)
    }

    /// Ordinates `<= t`.
    pub fn up_to(&self, t: f64) -> &[f64] {
        &self.ordinates[..self.ordinates.partition_point(|&g| g <= t)]
    }

    /// The first `m` ordinates.
    pub fn prefix(&self, m: usize) -> Self {
        Self {
            ordinates: self.ordinates[..m.min(self.len())].to_vec(),
            source: self.source.clone(),
        }
    }

    /// `N(t) = 2 #{γ <= t}`.
    pub fn counting_function(&self, t: f64) -> usize {
        2 * self.up_to(t).len()
    }

    /// One ordinate per line with 17 significant digits.
    pub fn to_text(&self) -> String {
        self.ordinates.iter().map(|g| format!("{g:.16e}\n")).collect()
    }
}

/// Parse a zero file: one ordinate per line, `#` comments, blank lines skipped.
pub fn parse_zeros(text: &str, path: &Path) -> Result<ZeroList> {
    let mut out: Vec<f64> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse {
            path: path.to_path_buf(),
            line: idx + 1,
            msg,
        };
        let g: f64 = line.parse().map_err(|_| err(format!("not a number: {line:?}")))?;
        if !(g.is_finite() && g > 0.0) {
            return Err(err(format!("ordinate {g} is not positive")));
        }
        if let Some(&prev) = out.last() {
            if g <= prev {
                return Err(err(format!("ordinate {g} does not exceed previous {prev}")));
            }
        }
        out.push(g);
    }
    Ok(ZeroList {
        ordinates: out,
        source: ZeroSource::File {
            path: path.to_path_buf(),
        },
    })
}

pub fn ingest_zeros(path: impl AsRef<Path>) -> Result<ZeroList> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_zeros(&text, path)
}

/// `2 Re(x^ρ/ρ)` for the pair `ρ = 1/2 ± iγ`.
fn pair_term(sqrt_x: f64, log_x: f64, gamma: f64) -> f64 {
    let (s, c) = (gamma * log_x).sin_cos();
    2.0 * sqrt_x * (0.5 * c + gamma * s) / (0.25 + gamma * gamma)
}

/// `−Σ_{γ <= T} 2 Re(x^ρ/ρ)` over the listed pairs, for `x >= 1`.
pub fn truncated_zero_sum(x: f64, t: f64, zeros: &ZeroList) -> Result<f64> {
    if !(x >= 1.0 && x.is_finite()) || !(t > 0.0) {
        return Err(Error::Domain(format!("need x >= 1 and T > 0, got x = {x}, T = {t}")));
    }
    let (sx, lx) = (x.sqrt(), x.ln());
    Ok(-par_map_sum(zeros.up_to(t), |&g| pair_term(sx, lx, g)))
}

/// `ψ(x) = Σ_{j <= x} Λ(j)`.
pub fn chebyshev_psi(x: f64) -> f64 {
    if x < 2.0 {
        return 0.0;
    }
    let xi = x.floor() as u64;
    let mut acc = CompensatedSum::new();
    for p in primes_up_to(xi) {
        let mut m = 1u32;
        let mut q = p;
        while let Some(next) = q.checked_mul(p).filter(|&v| v <= xi) {
            q = next;
            m += 1;
        }
        acc.add(m as f64 * (p as f64).ln());
    }
    acc.value()
}

/// Direct and zero-sum evaluations of `ψ(x)` for the Riemann zeta function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaPsiReport {
    pub x: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub psi_direct: f64,
    pub psi_explicit: f64,
    pub residual: f64,
}

/// `ψ(x)` against `x + zero sum − log 2π − ½ log(1 − x^{−2})`.
pub fn zeta_psi_compare(x: f64, t: f64, zeros: &ZeroList) -> Result<ZetaPsiReport> {
    if !(x >= 2.0) {
        return Err(Error::Domain(format!("x = {x} must be at least 2")));
    }
    let psi_direct = chebyshev_psi(x);
    let psi_explicit = x + truncated_zero_sum(x, t, zeros)?
        - (2.0 * std::f64::consts::PI).ln()
        - 0.5 * (-(x * x).recip()).ln_1p();
    Ok(ZetaPsiReport {
        x,
        t,
        psi_direct,
        psi_explicit,
        residual: psi_direct - psi_explicit,
    })
}

/// Expected number of ordinates up to `t`: half the zero-count main term.
fn ordinate_count(t: f64, n: u32, params: &SymPowerParams) -> f64 {
    zero_count_main_term(t.max(1.0), n, params).map_or(0.0, |m| 0.5 * m.max(0.0))
}

/// Pseudorandom ordinates up to `T` following the zero-count main term.
///
/// With `G(t)` the expected ordinate count, the `i`-th ordinate is
/// `G^{-1}(i − 1 + U_i)` for independent uniform `U_i`, so each ordinate
/// lands in its own quantile cell. The list is audited against the
/// unit-window bound; a density the bound cannot hold is a domain error.
pub fn synthesize_zeros(n: u32, t: f64, seed: u64, params: &SymPowerParams) -> Result<ZeroList> {
    if n == 0 || !(t > 1.0 && t.is_finite()) {
        return Err(Error::Domain(format!("need n >= 1 and finite T > 1, got n = {n}, T = {t}")));
    }
    let total = ordinate_count(t, n, params);
    if total > MAX_SYNTHETIC_ZEROS as f64 {
        return Err(Error::Resource(format!("{total:.0} ordinates requested")));
    }
    let count = total.floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ordinates = Vec::with_capacity(count);
    let mut lo = 1.0;
    for i in 0..count {
        let u: f64 = rng.gen();
        let g = invert_count(i as f64 + u, lo, t, n, params);
        ordinates.push(g);
        lo = g;
    }
    let zeros = ZeroList::new(ordinates, ZeroSource::Synthetic { seed, n, t })?;
    if let Some(w) = window_violation(&zeros, n, t, params) {
        return Err(Error::Domain(format!(
            "density for n = {n}, T = {t} exceeds the unit-window bound on [{w}, {})",
            w + 1
        )));
    }
    Ok(zeros)
}

/// Smallest `s` in `[lo, hi]` with `G(s) >= target`, by bisection.
fn invert_count(target: f64, lo: f64, hi: f64, n: u32, params: &SymPowerParams) -> f64 {
    let (mut a, mut b) = (lo, hi);
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return b;
        }
        if ordinate_count(mid, n, params) >= target {
            b = mid;
        } else {
            a = mid;
        }
    }
}

/// First integer `j < T` where `N` gains more than the window bound at
/// height `T` on `[j, j+1)`.
pub fn window_violation(zeros: &ZeroList, n: u32, t: f64, params: &SymPowerParams) -> Option<u64> {
    let g = zeros.ordinates();
    let bound = zero_window_bound(t, n, params);
    let mut idx = 0;
    for j in 0..t.ceil() as u64 {
        let start = idx;
        while idx < g.len() && g[idx] < (j + 1) as f64 {
            idx += 1;
        }
        if 2.0 * (idx - start) as f64 > bound {
            return Some(j);
        }
    }
    None
}

/// Largest `|N(t) − max(0, main term)|` over `t` in `[1, T]`, checked at
/// both sides of every ordinate and at the integers.
pub fn counting_deviation(zeros: &ZeroList, n: u32, t: f64, params: &SymPowerParams) -> f64 {
    let main = |s: f64| zero_count_main_term(s, n, params).map_or(0.0, |m| m.max(0.0));
    let mut worst: f64 = 0.0;
    let mut check = |s: f64| {
        if (1.0..=t).contains(&s) {
            let left = 2.0 * zeros.ordinates().partition_point(|&g| g < s) as f64;
            let right = zeros.counting_function(s) as f64;
            worst = worst.max((left - main(s)).abs()).max((right - main(s)).abs());
        }
    };
    for &g in zeros.up_to(t) {
        check(g);
    }
    for j in 1..=t.floor() as u64 {
        check(j as f64);
    }
    check(t);
    worst
}

/// Sum over zeros pushed to the edge of the zero-free region, with the chain
/// of estimates that bounds it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsiBoundReport {
    pub x: f64,
    pub n: u32,
    #[serde(rename = "T")]
    pub t: f64,
    pub zeros_used: usize,
    /// `Σ_{γ <= T} 2 x^β / |β + iγ|` with `β = 1 − width(γ)`.
    pub zero_sum: f64,
    /// `x^{1 − width(T)} 𝒩(T) Σ_{j <= ⌈T⌉} w_j` with `w_1 = 1/β(0)`,
    /// `w_j = 1/(j−1)` and `𝒩(T)` the unit-window bound.
    pub chain_bound: f64,
    pub log_phi_bound: f64,
    pub phi_bound: f64,
    pub chain_dominates: bool,
    pub within_phi_bound: bool,
    pub kind: &'static str,
}

pub fn symn_psi_bound_check(
    x: f64,
    n: u32,
    t: f64,
    zeros: &ZeroList,
    params: &SymPowerParams,
) -> Result<PsiBoundReport> {
    if !(x > 1.0) || !(t > 0.0) {
        return Err(Error::Domain(format!("need x > 1 and T > 0, got x = {x}, T = {t}")));
    }
    let lx = x.ln();
    let used = zeros.up_to(t);
    let mut zero_sum = CompensatedSum::new();
    for &g in used {
        let beta = 1.0 - zero_free_width(n, g, params)?;
        zero_sum.add(2.0 * (beta * lx).exp() / beta.hypot(g));
    }
    let zero_sum = zero_sum.value();

    let beta_t = 1.0 - zero_free_width(n, t, params)?;
    let beta_0 = 1.0 - zero_free_width(n, 0.0, params)?;
    let mut weights = CompensatedSum::new();
    for j in 1..=t.ceil() as u64 {
        let w = if j == 1 { 1.0 / beta_0 } else { 1.0 / (j - 1) as f64 };
        weights.add(w);
    }
    let chain_bound = (beta_t * lx).exp() * zero_window_bound(t, n, params) * weights.value();

    let phi = phi_bound(n, LogScaleReal::from_log(lx.ln()), &params.constants)?;
    Ok(PsiBoundReport {
        x,
        n,
        t,
        zeros_used: used.len(),
        zero_sum,
        chain_bound,
        log_phi_bound: phi.ln(),
        phi_bound: phi.value(),
        chain_dominates: zero_sum <= chain_bound,
        within_phi_bound: zero_sum <= phi.value(),
        kind: crate::bounds::SURROGATE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::BoundConstants;
    use num_complex::Complex64;

    fn list(v: &[f64]) -> ZeroList {
        ZeroList::new(v.to_vec(), ZeroSource::File { path: "mem".into() }).unwrap()
    }

    fn params(k: u32, level: u64) -> SymPowerParams {
        SymPowerParams::new(k, level, BoundConstants::default()).unwrap()
    }

    #[test]
    fn parsing() {
        let p = Path::new("z.txt");
        assert_eq!(parse_zeros("14.134725\n21.022040\n25.010858", p).unwrap().len(), 3);
        assert!(parse_zeros("", p).unwrap().is_empty());
        assert_eq!(parse_zeros("# c\n\n1.5\n", p).unwrap().ordinates(), &[1.5]);
        match parse_zeros("21.0\n14.1", p) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_zeros("1\n-2", p), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_zeros("abc", p), Err(Error::Parse { line: 1, .. })));
        assert!(ZeroList::new(vec![2.0, 2.0], ZeroSource::File { path: "m".into() }).is_err());
    }

    #[test]
    fn zero_sum_two_routes() {
        let z = list(&[14.134725, 21.02204, 25.010858]);
        let x = 100.0f64;
        let complex: f64 = z
            .ordinates()
            .iter()
            .map(|&g| {
                let rho = Complex64::new(0.5, g);
                let term = (rho * x.ln()).exp() / rho;
                -2.0 * term.re
            })
            .sum();
        assert!((truncated_zero_sum(x, 30.0, &z).unwrap() - complex).abs() < 1e-12);
        assert_eq!(truncated_zero_sum(x, 10.0, &z).unwrap(), 0.0);
        assert_eq!(truncated_zero_sum(x, 10.0, &list(&[])).unwrap(), 0.0);
        assert!(truncated_zero_sum(0.5, 10.0, &z).is_err());
    }

    #[test]
    fn psi_values() {
        assert!((chebyshev_psi(2.0) - 2f64.ln()).abs() < 1e-15);
        assert!((chebyshev_psi(100.0) - 94.045).abs() < 1e-3);
        assert_eq!(chebyshev_psi(1.9), 0.0);
        let brute: f64 = (2..=1000u64).map(crate::primes::von_mangoldt).sum();
        assert!((chebyshev_psi(1000.5) - brute).abs() < 1e-9);
    }

    #[test]
    fn synthesis_is_deterministic_and_calibrated() {
        let p = params(2, 11);
        for n in 1..=3 {
            let a = synthesize_zeros(n, 300.0, 7, &p).unwrap();
            let b = synthesize_zeros(n, 300.0, 7, &p).unwrap();
            assert_eq!(a, b);
            assert_ne!(a, synthesize_zeros(n, 300.0, 8, &p).unwrap());
            let main = zero_count_main_term(300.0, n, &p).unwrap();
            assert!((a.counting_function(300.0) as f64 - main).abs() <= 2.0);
            assert!(counting_deviation(&a, n, 300.0, &p) <= zero_window_bound(300.0, n, &p));
            assert_eq!(window_violation(&a, n, 300.0, &p), None);
        }
        assert!(synthesize_zeros(1, 1.0, 0, &p).is_err());
        let tight =
            SymPowerParams::new(2, 11, BoundConstants::new(1.0, 0.5, 1.0, 0.1).unwrap()).unwrap();
        assert!(matches!(synthesize_zeros(1, 300.0, 0, &tight), Err(Error::Domain(_))));
    }

    #[test]
    fn bound_check() {
        let p = params(12, 1);
        let x = 1000.0f64;
        let t = x.ln().sqrt().exp();
        let z = synthesize_zeros(1, t, 1, &p).unwrap();
        let r = symn_psi_bound_check(x, 1, t, &z, &p).unwrap();
        assert!(r.zero_sum <= r.phi_bound && r.within_phi_bound);
        let empty = symn_psi_bound_check(x, 1, t, &list(&[]), &p).unwrap();
        assert_eq!(empty.zero_sum, 0.0);

        let q = params(2, 11);
        let z = synthesize_zeros(1, 200.0, 3, &q).unwrap();
        let mut prev = 0.0;
        for t in [10.0, 20.0, 40.0, 80.0, 160.0] {
            let r = symn_psi_bound_check(x, 1, t, &z, &q).unwrap();
            assert!(r.zero_sum >= prev);
            assert!(r.chain_dominates);
            prev = r.zero_sum;
        }
    }
}
