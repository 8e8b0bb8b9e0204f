//! Numeric evaluators for conductor, zero-density and error-budget estimates.
//!
//! Everything is computed with natural logarithms. The smoothing parameter
//! only drops below 1/2 once `log log x` is in the hundreds, so the budget
//! works with `log(term / x)` and reports full logarithms only when they fit
//! in an `f64`. The absolute constants are placeholders and the numbers are
//! bound surrogates, not certified estimates.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul};

use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;

use crate::coefficients::NewformSpec;
use crate::error::{Error, Result};
use crate::primes::prime_divisors;
use crate::sato_tate::Interval;

/// Label attached to every report produced here.
pub const SURROGATE: &str = "bound surrogate";

/// A positive real stored as its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct LogScaleReal {
    log_value: f64,
}

impl LogScaleReal {
    pub fn from_log(log_value: f64) -> Self {
        Self { log_value }
    }

    pub fn from_value(v: f64) -> Result<Self> {
        if v > 0.0 {
            Ok(Self { log_value: v.ln() })
        } else {
            Err(Error::Domain(format!("{v} is not positive")))
        }
    }

    pub fn ln(self) -> f64 {
        self.log_value
    }

    /// The value itself; `inf` when it overflows.
    pub fn value(self) -> f64 {
        self.log_value.exp()
    }

    pub fn powf(self, e: f64) -> Self {
        Self::from_log(self.log_value * e)
    }
}

impl Mul for LogScaleReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_log(self.log_value + rhs.log_value)
    }
}

impl Div for LogScaleReal {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self::from_log(self.log_value - rhs.log_value)
    }
}

impl Add for LogScaleReal {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_log(log_sum_exp(self.log_value, rhs.log_value))
    }
}

/// `log(e^a + e^b)`.
pub fn log_sum_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY || hi == f64::INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Absolute constants of the estimates. `c` is the zero-free-region constant,
/// `c2` the one in the final `Φ_n` bound (with `0 < c2 < c`), `c3` scales the
/// `n³` conductor surrogate and `window` the unit-window zero count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundConstants {
    c: f64,
    c2: f64,
    c3: f64,
    window: f64,
}

impl BoundConstants {
    pub fn new(c: f64, c2: f64, c3: f64, window: f64) -> Result<Self> {
        if !(c2 > 0.0 && c2 < c) {
            return Err(Error::Domain(format!("need 0 < c2 < c, got c2 = {c2}, c = {c}")));
        }
        if !(c3 > 0.0 && window > 0.0) {
            return Err(Error::Domain("c3 and the window constant must be positive".into()));
        }
        Ok(Self { c, c2, c3, window })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn c3(&self) -> f64 {
        self.c3
    }

    pub fn window(&self) -> f64 {
        self.window
    }
}

impl Default for BoundConstants {
    fn default() -> Self {
        Self {
            c: 1.0,
            c2: 0.5,
            c3: 1.0,
            window: 1.0,
        }
    }
}

/// Newform data the symmetric-power estimates depend on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymPowerParams {
    pub k: u32,
    pub level: u64,
    pub squarefree: bool,
    pub constants: BoundConstants,
}

impl SymPowerParams {
    pub fn new(k: u32, level: u64, constants: BoundConstants) -> Result<Self> {
        if k < 2 || k % 2 != 0 || level == 0 {
            return Err(Error::Domain(format!("invalid weight {k} or level {level}")));
        }
        Ok(Self {
            k,
            level,
            squarefree: is_squarefree(level),
            constants,
        })
    }

    pub fn from_spec(spec: &NewformSpec, constants: BoundConstants) -> Self {
        Self::new(spec.weight(), spec.level(), constants).expect("validated spec")
    }

    pub fn log_conductor(&self, n: u32) -> f64 {
        log_conductor(n, self.level, self.squarefree, self.constants.c3)
    }

    pub fn log_analytic_conductor(&self, n: u32, s: Complex64) -> Result<f64> {
        log_analytic_conductor(n, self.k, self.level, s, self.squarefree, self.constants.c3)
    }
}

pub fn is_squarefree(n: u64) -> bool {
    prime_divisors(n).iter().all(|&p| (n / p) % p != 0)
}

/// Archimedean shifts `κ_j` of `L(Sym^n f, s)`, as `Γ_R(s + κ_j)` factors.
pub fn gamma_shifts(n: u32, k: u32) -> Result<Vec<Rational64>> {
    if n == 0 || k < 2 || k % 2 != 0 {
        return Err(Error::Domain(format!("invalid power {n} or weight {k}")));
    }
    let km1 = Rational64::from_integer(k as i64 - 1);
    let half = Rational64::new(1, 2);
    let one = Rational64::from_integer(1);
    let mut out = Vec::with_capacity(n as usize + 1);
    if n % 2 == 1 {
        for j in 0..=(n as i64 - 1) / 2 {
            let base = (Rational64::from_integer(j) + half) * km1;
            out.push(base);
            out.push(base + one);
        }
    } else {
        let r = if (n / 2) % 2 == 1 { 1 } else { 0 };
        out.push(Rational64::from_integer(r));
        for j in 1..=(n as i64) / 2 {
            let base = Rational64::from_integer(j) * km1;
            out.push(base);
            out.push(base + one);
        }
    }
    Ok(out)
}

/// `n log N` for squarefree `N`, otherwise the surrogate `c3 n³`.
pub fn log_conductor(n: u32, level: u64, squarefree: bool, c3: f64) -> f64 {
    if squarefree {
        n as f64 * (level as f64).ln()
    } else {
        c3 * (n as f64).powi(3)
    }
}

/// `log q + Σ_κ log(|s + κ| + 3)`.
pub fn log_analytic_conductor(
    n: u32,
    k: u32,
    level: u64,
    s: Complex64,
    squarefree: bool,
    c3: f64,
) -> Result<f64> {
    let shifts = gamma_shifts(n, k)?;
    let arch: f64 = shifts
        .iter()
        .map(|kappa| {
            let kf = *kappa.numer() as f64 / *kappa.denom() as f64;
            ((s + kf).norm() + 3.0).ln()
        })
        .sum();
    Ok(log_conductor(n, level, squarefree, c3) + arch)
}

/// `log(t + 3)` for `t = e^{log_t}`, usable when `t` overflows.
fn log_t_plus_3(log_t: f64) -> f64 {
    if log_t > 40.0 {
        log_t + (3.0 * (-log_t).exp()).ln_1p()
    } else {
        (log_t.exp() + 3.0).ln()
    }
}

/// Width `c / ((n+1)^4 log(𝔮(0)(|t|+3)))` of the zero-free strip at height `t`.
pub fn zero_free_width(n: u32, t: f64, params: &SymPowerParams) -> Result<f64> {
    let lq0 = params.log_analytic_conductor(n, Complex64::new(0.0, 0.0))?;
    Ok(zero_free_width_from(n, lq0, (t.abs() + 3.0).ln(), params.constants.c))
}

fn zero_free_width_from(n: u32, log_q0: f64, log_t3: f64, c: f64) -> f64 {
    c / ((n as f64 + 1.0).powi(4) * (log_q0 + log_t3))
}

/// `(T/π)(log q + (n+1)(log T − log 2πe))`.
pub fn zero_count_main_term(t: f64, n: u32, params: &SymPowerParams) -> Result<f64> {
    if !(t >= 1.0) {
        return Err(Error::Domain(format!("T = {t} must be at least 1")));
    }
    let log_2pie = (2.0 * PI).ln() + 1.0;
    Ok(t / PI * (params.log_conductor(n) + (n as f64 + 1.0) * (t.ln() - log_2pie)))
}

/// Unit-window zero count `window · (n³ + n log T)`.
pub fn zero_window_bound(t: f64, n: u32, params: &SymPowerParams) -> f64 {
    let nf = n as f64;
    params.constants.window * (nf.powi(3) + nf * t.max(1.0).ln())
}

/// `n³ x exp(−c2 log x / (n⁴(√log x + n³)))` with `log_x` holding `log x`.
pub fn phi_bound(n: u32, log_x: LogScaleReal, constants: &BoundConstants) -> Result<LogScaleReal> {
    let l = log_x.value();
    if n == 0 || !(l > 0.0) {
        return Err(Error::Domain(format!("need n >= 1 and log x > 0, got n = {n}, log x = {l}")));
    }
    let nf = n as f64;
    Ok(LogScaleReal::from_log(
        3.0 * nf.ln() + l + pnt_exponent(n, l, l.sqrt(), constants.c2),
    ))
}

/// `−c2 log x / (n⁴(log T + n³))`, the decay exponent before `T` is fixed.
/// At `log T = √log x` this is the exponent of [`phi_bound`].
pub fn pnt_exponent(n: u32, log_x: f64, log_t: f64, c2: f64) -> f64 {
    let nf = n as f64;
    -c2 * log_x / (nf.powi(4) * (log_t + nf.powi(3)))
}

/// Log of the zero-sum estimate `n³ (log T)² x exp(−c log x / ((n+1)^4 log(𝔮(0)(T+3))))`.
pub fn log_zero_sum_estimate(n: u32, log_x: f64, log_t: f64, params: &SymPowerParams) -> Result<f64> {
    let lq0 = params.log_analytic_conductor(n, Complex64::new(0.0, 0.0))?;
    let width = zero_free_width_from(n, lq0, log_t_plus_3(log_t), params.constants.c);
    Ok(3.0 * (n as f64).ln() + 2.0 * log_t.ln() + log_x - width * log_x)
}

/// Log of the truncation error estimate `n³ x (log x)² / T`.
pub fn log_truncation_error(n: u32, log_x: f64, log_t: f64) -> f64 {
    3.0 * (n as f64).ln() + log_x + 2.0 * log_x.ln() - log_t
}

/// `log δ = (5/4) log R + (3/(2R) − 1/8) log log x`.
pub fn optimal_delta(r: u32, log_log_x: f64) -> Result<f64> {
    check_r(r)?;
    let rf = r as f64;
    Ok(1.25 * rf.ln() + (1.5 / rf - 0.125) * log_log_x)
}

/// `9/8 − 3/(2R)`.
pub fn final_exponent(r: u32) -> Result<f64> {
    check_r(r)?;
    Ok(1.125 - 1.5 / r as f64)
}

fn check_r(r: u32) -> Result<()> {
    if r < 4 {
        return Err(Error::Domain(format!("R = {r} must be at least 4")));
    }
    Ok(())
}

/// Inputs of the two-term error budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetParams {
    pub log_log_x: f64,
    pub log_delta: f64,
    pub r: u32,
    pub interval: Option<Interval>,
}

impl BudgetParams {
    pub fn at_optimal_delta(r: u32, log_log_x: f64) -> Result<Self> {
        Ok(Self {
            log_log_x,
            log_delta: optimal_delta(r, log_log_x)?,
            r,
            interval: None,
        })
    }
}

/// Error budget for `term1 = δx/log x` and
/// `term2 = R^{5R/4} δ^{−R} x (log x)^{−(R−3)/8}`.
///
/// `rel_*` fields are `log(term / x)`; `log_*` fields add `log x` and become
/// `inf` (serialized as `null`) once `log x` overflows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BudgetReport {
    #[serde(rename = "R")]
    pub r: u32,
    pub log_log_x: f64,
    pub log_x: f64,
    pub log_delta: f64,
    pub rel_term1: f64,
    pub rel_term2: f64,
    pub rel_total: f64,
    pub log_term1: f64,
    pub log_term2: f64,
    pub log_total: f64,
    pub exponent: f64,
    pub valid_delta: bool,
    pub valid_r: bool,
    pub valid_interval: Option<bool>,
    pub kind: &'static str,
}

impl BudgetReport {
    /// `log term1 − log term2`, finite even when the terms are not.
    pub fn log_ratio(&self) -> f64 {
        self.rel_term1 - self.rel_term2
    }
}

pub fn budget(params: &BudgetParams) -> BudgetReport {
    let rf = params.r as f64;
    let ll = params.log_log_x;
    let ld = params.log_delta;
    let rel_term1 = ld - ll;
    let rel_term2 = 1.25 * rf * rf.ln() - rf * ld - (rf - 3.0) / 8.0 * ll;
    let rel_total = log_sum_exp(rel_term1, rel_term2);
    let log_x = ll.exp();
    let delta = ld.exp();
    BudgetReport {
        r: params.r,
        log_log_x: ll,
        log_x,
        log_delta: ld,
        rel_term1,
        rel_term2,
        rel_total,
        log_term1: log_x + rel_term1,
        log_term2: log_x + rel_term2,
        log_total: log_x + rel_total,
        exponent: 1.125 - 1.5 / rf,
        valid_delta: delta < 0.5,
        valid_r: params.r >= 4,
        valid_interval: params.interval.map(|i| i.width() > 2.0 * PI * delta),
        kind: SURROGATE,
    }
}
