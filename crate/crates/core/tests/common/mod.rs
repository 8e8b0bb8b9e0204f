//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;

/// `τ(1..=m)` from the product `q ∏ (1 − q^n)^24`, multiplied out naively.
pub fn tau_direct(m: usize) -> Vec<i128> {
    // Coefficients of ∏_{n<m} (1 − q^n)^24 up to q^{m−1}.
    let mut poly = vec![0i128; m];
    poly[0] = 1;
    for n in 1..m {
        for _ in 0..24 {
            for i in (n..m).rev() {
                poly[i] -= poly[i - n];
            }
        }
    }
    poly
}

/// `#E(F_p)` for `y² + a1 xy + a3 y = x³ + a2 x² + a4 x + a6` by trying every pair.
pub fn ap_brute(a: [i64; 5], p: u64) -> i64 {
    let p = p as i128;
    let r = |v: i64| (v as i128).rem_euclid(p);
    let [a1, a2, a3, a4, a6] = a.map(r);
    let mut affine = 0i128;
    for x in 0..p {
        let rhs = (((x + a2) * x % p + a4) * x + a6) % p;
        for y in 0..p {
            let lhs = (y * y + a1 * x * y + a3 * y) % p;
            if lhs == rhs {
                affine += 1;
            }
        }
    }
    (p + 1 - (affine + 1)) as i64
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                (p0, p1) = (p1, ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf);
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        xs[i] = x;
        ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (xs, ws)
}

/// `∫_a^b f` by `n`-point Gauss-Legendre on each piece between `knots`.
pub fn piecewise_gl(f: impl Fn(f64) -> f64, knots: &[f64], n: usize) -> f64 {
    let (xs, ws) = gauss_legendre(n);
    let mut total = 0.0;
    for w in knots.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        total += half * xs.iter().zip(&ws).map(|(x, w)| w * f(mid + half * x)).sum::<f64>();
    }
    total
}

/// Adaptive Simpson quadrature.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &impl Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// CDF of the sum of `r` independent uniforms on `[0, 1]`, via
/// `Σ_{j>=0} M_{r+1}(v − j)` with cardinal B-splines from the Cox-de Boor
/// recursion `M_k(t) = (t M_{k−1}(t) + (k − t) M_{k−1}(t − 1)) / (k − 1)`.
pub fn irwin_hall_cdf(r: u32, v: f64) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    if v >= r as f64 {
        return 1.0;
    }
    let k = r as usize + 1;
    let fl = v.floor() as i64;
    let lo = fl - k as i64;
    // vals[i] holds M_level(v − (lo + i)).
    let mut vals: Vec<f64> = (lo..=fl)
        .map(|s| if (0.0..1.0).contains(&(v - s as f64)) { 1.0 } else { 0.0 })
        .collect();
    for level in 2..=k {
        let lf = level as f64;
        vals = (0..vals.len())
            .map(|i| {
                let t = v - (lo + i as i64) as f64;
                let shifted = vals.get(i + 1).copied().unwrap_or(0.0);
                (t * vals[i] + (lf - t) * shifted) / (lf - 1.0)
            })
            .collect();
    }
    (lo..=fl).zip(&vals).filter(|(s, _)| *s >= 0).map(|(_, m)| m).sum()
}

/// The smoothed indicator of `[a, b]` mod 1 in physical space: the chance
/// that `y − S` lands in `[a, b]` mod 1, with `S` a sum of `r` uniforms on
/// `[−h/2, h/2]`, `h = δ/r`.
pub fn smoothed_indicator(a: f64, b: f64, delta: f64, r: u32, y: f64) -> f64 {
    let h = delta / r as f64;
    let cdf_s = |s: f64| irwin_hall_cdf(r, s / h + r as f64 / 2.0);
    (-3..=3)
        .map(|k| {
            let k = k as f64;
            cdf_s(y - a - k) - cdf_s(y - b - k)
        })
        .sum()
}

/// Knots of the folded physical kernel in `[0, π]`.
pub fn folded_knots(a: f64, b: f64, delta: f64, r: u32) -> Vec<f64> {
    let h = delta / r as f64;
    let mut knots = vec![0.0, PI];
    for edge in [a, b] {
        for j in 0..=r {
            let y = edge + (j as f64 - r as f64 / 2.0) * h;
            for k in -2..=2 {
                for sign in [1.0, -1.0] {
                    let theta = sign * 2.0 * PI * (y + k as f64);
                    if theta > 0.0 && theta < PI {
                        knots.push(theta);
                    }
                }
            }
        }
    }
    for i in 1..64 {
        knots.push(PI * i as f64 / 64.0);
    }
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    knots
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}
