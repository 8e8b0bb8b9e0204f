//! Smooth periodic approximations of interval indicators.
//!
//! [`SmoothingKernel`] is the indicator of `[a, b]` (mod 1) convolved with the
//! `R`-fold convolution of uniform densities of width `δ/R`. Its Fourier
//! coefficients are the indicator's coefficients times `sinc(π m δ / R)^R`,
//! which puts them under the envelope
//! `min{2(b−a), 2/(mπ), (2/(mπ)) (R/(π m δ))^R}`.
//!
//! Folding a kernel about zero, `G(θ) = g(θ/2π) + g(−θ/2π)`, gives an even
//! function of θ on `[0, π]`. With suitable windows this is a majorant or a
//! minorant of the indicator of an [`Interval`], and its expansion in the
//! `U_n(cos θ)` basis is what turns prime counts into Chebyshev sums.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sato_tate::Interval;

/// Pointwise accuracy target for truncated series evaluations.
pub const TAIL_TOLERANCE: f64 = 1e-6;

/// Upper limit on the truncation length.
pub const MAX_TERMS: usize = 20_000_000;

/// Smallest `M` with `Σ_{m>M} (2/(mπ)) (R/(π m δ))^R <= target`, using the
/// integral bound `(2/(πR)) (R/(π δ M))^R` for the tail.
pub fn truncation_length(delta: f64, r: u32, target: f64) -> Result<usize> {
    let rf = r as f64;
    let log_m = ((2.0 / (PI * rf)).ln() - target.ln()) / rf + (rf / (PI * delta)).ln();
    let m = log_m.exp().ceil().max(1.0);
    if !m.is_finite() || m > MAX_TERMS as f64 {
        return Err(Error::Resource(format!(
            "δ = {delta}, R = {r} needs about {m:e} Fourier terms (limit {MAX_TERMS})"
        )));
    }
    let mut m = m as usize;
    while m > 1 && tail_bound(delta, r, m - 1) <= target {
        m -= 1;
    }
    while tail_bound(delta, r, m) > target {
        m += 1;
    }
    Ok(m)
}

/// `(2/(πR)) (R/(π δ M))^R`, an upper bound for the envelope tail beyond `M`.
pub fn tail_bound(delta: f64, r: u32, m: usize) -> f64 {
    let rf = r as f64;
    (2.0 / (PI * rf)) * (rf / (PI * delta * m as f64)).powi(r as i32)
}

/// Envelope `min{2(b−a), 2/(mπ), (2/(mπ)) (R/(π m δ))^R}` for the `m`-th
/// coefficient. Evaluated with the same floating-point steps as the
/// coefficients themselves so the bound check is exact.
pub fn coefficient_envelope(width: f64, delta: f64, r: u32, m: usize) -> f64 {
    let two_over = 2.0 / (PI * m as f64);
    let x = PI * m as f64 * delta / r as f64;
    (2.0 * width)
        .min(two_over)
        .min(two_over * (1.0 / x).powi(r as i32))
}

/// Fourier data of the smoothed indicator of `[a, b]` mod 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothingKernel {
    a: f64,
    b: f64,
    delta: f64,
    r: u32,
    /// `a_1..a_M`, stored at indices `0..M`.
    cos_coeffs: Vec<f64>,
    /// `b_1..b_M`.
    sin_coeffs: Vec<f64>,
}

impl SmoothingKernel {
    /// Kernel for `0 < δ < 1/2`, `δ <= b − a <= 1 − δ`, `R >= 1`.
    pub fn build(a: f64, b: f64, delta: f64, r: u32) -> Result<Self> {
        let w = b - a;
        if !(delta <= w && w <= 1.0 - delta) {
            return Err(Error::Domain(format!(
                "window length b − a = {w} must lie in [δ, 1 − δ] = [{delta}, {}]",
                1.0 - delta
            )));
        }
        Self::build_unchecked_width(a, b, delta, r)
    }

    /// Same construction, requiring only `0 < b − a < 1`. Narrow windows
    /// never reach the value 1 but keep every other property.
    pub(crate) fn build_unchecked_width(a: f64, b: f64, delta: f64, r: u32) -> Result<Self> {
        if !(delta > 0.0 && delta < 0.5) {
            return Err(Error::Domain(format!("δ = {delta} must lie in (0, 1/2)")));
        }
        if r == 0 {
            return Err(Error::Domain("R must be a positive integer".into()));
        }
        if !(b > a && b - a < 1.0) {
            return Err(Error::Domain(format!("empty or full window [{a}, {b}]")));
        }
        let m_max = truncation_length(delta, r, TAIL_TOLERANCE / 2.0)?;
        let (cos_coeffs, sin_coeffs) = (1..=m_max)
            .into_par_iter()
            .map(|m| {
                let mf = m as f64;
                let w = (PI * mf * (b - a)).sin();
                let (s, c) = (PI * mf * (a + b)).sin_cos();
                let x = PI * mf * delta / r as f64;
                let damp = (x.sin() / x).powi(r as i32);
                let denom = PI * mf;
                ((2.0 * w * c) / denom * damp, (2.0 * w * s) / denom * damp)
            })
            .unzip();
        Ok(Self {
            a,
            b,
            delta,
            r,
            cos_coeffs,
            sin_coeffs,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Constant term `b − a`.
    pub fn constant(&self) -> f64 {
        self.b - self.a
    }

    /// Truncation length `M`.
    pub fn len(&self) -> usize {
        self.cos_coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cos_coeffs.is_empty()
    }

    /// `a_m` for `1 <= m <= M` (zero beyond).
    pub fn cos_coeff(&self, m: usize) -> f64 {
        if m == 0 { 0.0 } else { self.cos_coeffs.get(m - 1).copied().unwrap_or(0.0) }
    }

    /// `b_m` for `1 <= m <= M` (zero beyond).
    pub fn sin_coeff(&self, m: usize) -> f64 {
        if m == 0 { 0.0 } else { self.sin_coeffs.get(m - 1).copied().unwrap_or(0.0) }
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos_coeffs
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin_coeffs
    }

    pub fn envelope(&self, m: usize) -> f64 {
        coefficient_envelope(self.constant(), self.delta, self.r, m)
    }

    /// First `m` whose `a_m` or `b_m` exceeds the envelope, if any.
    pub fn envelope_violation(&self) -> Option<usize> {
        (1..=self.len()).find(|&m| {
            let env = self.envelope(m);
            self.cos_coeff(m).abs() > env || self.sin_coeff(m).abs() > env
        })
    }

    /// Envelope tail beyond the truncation.
    pub fn tail_bound(&self) -> f64 {
        tail_bound(self.delta, self.r, self.len())
    }

    /// `g(y)` from the truncated series.
    pub fn eval(&self, y: f64) -> f64 {
        let phi = 2.0 * PI * y;
        self.constant() + clenshaw_cos(&self.cos_coeffs, phi) + clenshaw_sin(&self.sin_coeffs, phi)
    }

    /// CSV `m,a_m,b_m` preceded by a `#` line with the parameters.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# a={:.16e} b={:.16e} delta={:.16e} R={} M={}",
            self.a,
            self.b,
            self.delta,
            self.r,
            self.len()
        );
        s.push_str("m,a_m,b_m\n");
        for m in 1..=self.len() {
            let _ = writeln!(s, "{m},{:.16e},{:.16e}", self.cos_coeff(m), self.sin_coeff(m));
        }
        s
    }
}

/// `Σ_{k=1}^{M} c_k cos(kφ)` with `c_k = coeffs[k-1]`.
fn clenshaw_cos(coeffs: &[f64], phi: f64) -> f64 {
    let (b1, b2) = clenshaw_tail(coeffs, 2.0 * phi.cos());
    b1 * phi.cos() - b2
}

/// `Σ_{k=1}^{M} c_k sin(kφ)`.
fn clenshaw_sin(coeffs: &[f64], phi: f64) -> f64 {
    clenshaw_tail(coeffs, 2.0 * phi.cos()).0 * phi.sin()
}

/// Returns `(b_1, b_2)` of the backward recurrence `b_k = c_k + α b_{k+1} − b_{k+2}`.
fn clenshaw_tail(coeffs: &[f64], alpha: f64) -> (f64, f64) {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coeffs.iter().rev() {
        (b1, b2) = (c + alpha * b1 - b2, b1);
    }
    (b1, b2)
}

/// `G(θ) = g(θ/2π) + g(−θ/2π)` for a kernel `g`.
///
/// The sine parts cancel, leaving the cosine series
/// `G(θ) = A_0 + 2 Σ_{n>=1} A_n cos(nθ)` with `A_0 = 2(b − a)` and
/// `A_n = a_n`; the `A_n` are the Fourier coefficients
/// `(1/π) ∫_0^π G(θ) cos(nθ) dθ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoldedKernel {
    kernel: SmoothingKernel,
}

impl FoldedKernel {
    pub fn new(kernel: SmoothingKernel) -> Self {
        Self { kernel }
    }

    pub fn kernel(&self) -> &SmoothingKernel {
        &self.kernel
    }

    /// `A_n` for `0 <= n <= M` (zero beyond).
    pub fn cosine_coeff(&self, n: usize) -> f64 {
        if n == 0 {
            2.0 * self.kernel.constant()
        } else {
            self.kernel.cos_coeff(n)
        }
    }

    /// Coefficients `c_0..c_M` in the basis `U_n(cos θ)`:
    /// `c_n = A_n − A_{n+2}`.
    pub fn chebyshev_coeffs(&self) -> Vec<f64> {
        (0..=self.kernel.len())
            .map(|n| self.cosine_coeff(n) - self.cosine_coeff(n + 2))
            .collect()
    }

    /// `G(θ)` from the cosine series.
    pub fn eval(&self, theta: f64) -> f64 {
        2.0 * self.kernel.constant() + 2.0 * clenshaw_cos(&self.kernel.cos_coeffs, theta)
    }

    pub fn eval_many(&self, thetas: &[f64]) -> Vec<f64> {
        thetas.par_iter().map(|&t| self.eval(t)).collect()
    }

    /// Truncation error bound for [`eval`](Self::eval).
    pub fn tail_bound(&self) -> f64 {
        2.0 * self.kernel.tail_bound()
    }
}

/// `Σ c_n U_n(x)` by Clenshaw's recurrence.
pub fn eval_chebyshev_u_series(coeffs: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coeffs.iter().rev() {
        (b1, b2) = (c + 2.0 * x * b1 - b2, b1);
    }
    b1
}

/// Majorant `g⁺ >= χ_I` and minorant `g⁻ <= χ_I` with their Chebyshev-basis
/// coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorantPair {
    #[serde(skip)]
    interval: Interval,
    pub plus: FoldedKernel,
    pub minus: FoldedKernel,
    pub cheb_plus: Vec<f64>,
    pub cheb_minus: Vec<f64>,
}

impl MajorantPair {
    pub fn interval(&self) -> Interval {
        self.interval
    }
}

/// Build `g±(θ; I, δ)`.
///
/// The majorant folds the kernel on `[α/2π − δ/2, β/2π + δ/2]`, the
/// minorant the kernel on `[α/2π + δ/2, β/2π − δ/2]`. Requires
/// `β − α > 2πδ`.
pub fn build_majorants(interval: &Interval, delta: f64, r: u32) -> Result<MajorantPair> {
    if !(interval.width() > 2.0 * PI * delta) {
        return Err(Error::Domain(format!(
            "interval too narrow for δ = {delta}: need β − α > 2πδ = {}",
            2.0 * PI * delta
        )));
    }
    let lo = interval.alpha() / (2.0 * PI);
    let hi = interval.beta() / (2.0 * PI);
    let plus = FoldedKernel::new(SmoothingKernel::build(lo - delta / 2.0, hi + delta / 2.0, delta, r)?);
    // The minorant window is only guaranteed positive, not >= δ.
    let minus = FoldedKernel::new(SmoothingKernel::build_unchecked_width(
        lo + delta / 2.0,
        hi - delta / 2.0,
        delta,
        r,
    )?);
    let (cheb_plus, cheb_minus) = chebyshev_coeffs(&plus, &minus);
    Ok(MajorantPair {
        interval: *interval,
        plus,
        minus,
        cheb_plus,
        cheb_minus,
    })
}

/// `(c⁺, c⁻)` for a pair of folded kernels.
pub fn chebyshev_coeffs(plus: &FoldedKernel, minus: &FoldedKernel) -> (Vec<f64>, Vec<f64>) {
    (plus.chebyshev_coeffs(), minus.chebyshev_coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sato_tate::{chebyshev_u, st_measure};

    #[test]
    fn constant_term_and_bounds() {
        let k = SmoothingKernel::build(0.25, 0.75, 0.1, 2).unwrap();
        assert_eq!(k.constant(), 0.5);
        for m in 1..=k.len() {
            assert!(k.cos_coeff(m).abs() <= 2.0 / (m as f64 * PI));
        }
        assert_eq!(k.envelope_violation(), None);
        assert!(k.tail_bound() <= TAIL_TOLERANCE / 2.0);
    }

    #[test]
    fn truncation_is_minimal() {
        for (d, r) in [(0.1, 2), (0.01, 4), (0.005, 20), (0.3, 1)] {
            let m = truncation_length(d, r, 1e-6).unwrap();
            assert!(tail_bound(d, r, m) <= 1e-6);
            assert!(m == 1 || tail_bound(d, r, m - 1) > 1e-6);
        }
        assert!(matches!(truncation_length(1e-6, 1, 1e-9), Err(Error::Resource(_))));
    }

    #[test]
    fn symmetric_window_has_no_sine_part() {
        let k = SmoothingKernel::build(-0.2, 0.2, 0.05, 3).unwrap();
        assert!(k.sin_coeffs().iter().all(|b| b.abs() < 1e-12));
    }

    #[test]
    fn parameter_validation() {
        assert!(SmoothingKernel::build(0.0, 0.5, 0.0, 2).is_err());
        assert!(SmoothingKernel::build(0.0, 0.5, 0.5, 2).is_err());
        assert!(SmoothingKernel::build(0.0, 0.05, 0.1, 2).is_err());
        assert!(SmoothingKernel::build(0.0, 0.95, 0.1, 2).is_err());
        assert!(SmoothingKernel::build(0.0, 0.5, 0.1, 0).is_err());
        let narrow = Interval::new(1.0, 1.05).unwrap();
        assert!(matches!(build_majorants(&narrow, 0.01, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn plateau_and_support() {
        let k = SmoothingKernel::build(0.1, 0.4, 0.05, 6).unwrap();
        let tol = 2.0 * k.tail_bound();
        for i in 0..=100 {
            let y = 0.125 + 0.25 * i as f64 / 100.0;
            assert!((k.eval(y) - 1.0).abs() <= tol, "y={y}");
            let z = 0.425 + 0.65 * i as f64 / 100.0;
            assert!(k.eval(z).abs() <= tol, "z={z}");
        }
    }

    #[test]
    fn interior_and_exterior_values() {
        let i = Interval::new(1.0, 2.0).unwrap();
        let pair = build_majorants(&i, 0.01, 6).unwrap();
        let mid = 1.5;
        assert!((pair.plus.eval(mid) - 1.0).abs() <= pair.plus.tail_bound());
        assert!((pair.minus.eval(mid) - 1.0).abs() <= pair.minus.tail_bound());
        assert!(pair.plus.eval(0.0) <= 1e-6);
    }

    #[test]
    fn constant_coefficient_near_measure() {
        let i = Interval::new(PI / 3.0, 2.0 * PI / 3.0).unwrap();
        let pair = build_majorants(&i, 0.01, 20).unwrap();
        let mu = st_measure(&i);
        assert!((pair.cheb_plus[0] - mu).abs() <= 4.0 * 0.01);
        assert!((pair.cheb_minus[0] - mu).abs() <= 4.0 * 0.01);
        assert!(pair.cheb_minus[0] <= mu && mu <= pair.cheb_plus[0]);
    }

    #[test]
    fn telescoping_recovers_cosine_coefficients() {
        let f = FoldedKernel::new(SmoothingKernel::build(0.1, 0.3, 0.02, 5).unwrap());
        let c = f.chebyshev_coeffs();
        for n in 0..20 {
            let tele: f64 = c.iter().skip(n).step_by(2).sum();
            assert!((tele - f.cosine_coeff(n)).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn chebyshev_reconstruction() {
        let i = Interval::new(0.7, 2.2).unwrap();
        let pair = build_majorants(&i, 0.02, 4).unwrap();
        for k in 0..=200 {
            let theta = PI * k as f64 / 200.0;
            let direct = pair.plus.eval(theta);
            let via_u = eval_chebyshev_u_series(&pair.cheb_plus, theta.cos());
            assert!((direct - via_u).abs() < 1e-9, "θ={theta}: {direct} vs {via_u}");
        }
        let naive: f64 = pair.cheb_plus.iter().enumerate().map(|(n, c)| c * chebyshev_u(n, 0.3)).sum();
        assert!((naive - eval_chebyshev_u_series(&pair.cheb_plus, 0.3)).abs() < 1e-9);
    }

    #[test]
    fn csv_header() {
        let k = SmoothingKernel::build(0.2, 0.3, 0.05, 8).unwrap();
        let csv = k.to_csv();
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("# a=2.0000000000000001e-1 b="));
        assert_eq!(lines.next(), Some("m,a_m,b_m"));
        assert_eq!(lines.count(), k.len());
    }
}
