//! Ramanujan's τ via the q-expansion of Δ = q ∏ (1 - q^n)^24.
//!
//! We use Jacobi's identity ∏ (1 - q^n)^3 = Σ (-1)^k (2k+1) q^(k(k+1)/2) and
//! square three times. Each squaring is a number-theoretic transform modulo
//! five NTT-friendly primes; the final residues are lifted to `i128` with
//! Garner's algorithm.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default cap on the series length. At 2·10^6 terms |τ(n)| stays below
/// 2^124, inside `i128` and inside half the CRT modulus (about 2^146).
pub const DEFAULT_MAX_SERIES_LEN: usize = 2_000_000;

/// `(modulus, primitive root)`; every modulus supports transforms of length 2^23.
const MODULI: [(u64, u64); 5] = [
    (998_244_353, 3),
    (167_772_161, 3),
    (469_762_049, 3),
    (754_974_721, 11),
    (2_013_265_921, 31),
];

/// τ(1), ..., τ(m) as a vector indexed from zero.
pub fn tau_table(m: usize, max_len: usize) -> Result<Vec<i128>> {
    if m == 0 {
        return Err(Error::Input("series length must be at least 1".into()));
    }
    if m > max_len.min(DEFAULT_MAX_SERIES_LEN) {
        return Err(Error::Resource(format!(
            "q-expansion length {m} exceeds budget {}",
            max_len.min(DEFAULT_MAX_SERIES_LEN)
        )));
    }
    let residues: Vec<Vec<u64>> = MODULI
        .par_iter()
        .map(|&(q, g)| eta24_mod(m, q, g))
        .collect();
    let garner = Garner::new();
    (0..m)
        .map(|i| {
            let r: [u64; 5] = std::array::from_fn(|j| residues[j][i]);
            garner.lift(r).ok_or_else(|| {
                Error::Resource(format!("τ({}) does not fit the CRT range", i + 1))
            })
        })
        .collect()
}

/// First `len` coefficients of ∏ (1 - q^n)^24 modulo `q`.
fn eta24_mod(len: usize, q: u64, g: u64) -> Vec<u64> {
    let mut cube = vec![0u64; len];
    let mut k = 0u64;
    loop {
        let e = (k * (k + 1) / 2) as usize;
        if e >= len {
            break;
        }
        let c = (2 * k + 1) % q;
        cube[e] = if k % 2 == 0 { c } else { (q - c) % q };
        k += 1;
    }
    let mut acc = cube;
    for _ in 0..3 {
        acc = square_truncated(&acc, len, q, g);
    }
    acc
}

fn square_truncated(a: &[u64], len: usize, q: u64, g: u64) -> Vec<u64> {
    let size = (2 * a.len() - 1).next_power_of_two();
    let mut fa = vec![0u64; size];
    fa[..a.len()].copy_from_slice(a);
    ntt(&mut fa, q, g, false);
    for v in fa.iter_mut() {
        *v = *v * *v % q;
    }
    ntt(&mut fa, q, g, true);
    fa.truncate(len);
    fa
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

/// In-place iterative radix-2 transform. Moduli are below 2^31 so products
/// fit in `u64`.
fn ntt(a: &mut [u64], q: u64, g: u64, inverse: bool) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(g, (q - 1) / len as u64, q);
        if inverse {
            w = pow_mod(w, q - 2, q);
        }
        let half = len / 2;
        let mut twiddles = Vec::with_capacity(half);
        let mut t = 1;
        for _ in 0..half {
            twiddles.push(t);
            t = t * w % q;
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((u, v), &tw) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let x = *u;
                let y = *v * tw % q;
                *u = if x + y >= q { x + y - q } else { x + y };
                *v = if x >= y { x - y } else { x + q - y };
            }
        }
        len <<= 1;
    }
    if inverse {
        let inv_n = pow_mod(n as u64, q - 2, q);
        for v in a.iter_mut() {
            *v = *v * inv_n % q;
        }
    }
}

struct Garner {
    /// `inv[i][j]` = (m_j)^-1 mod m_i for j < i.
    inv: [[u64; 5]; 5],
}

impl Garner {
    fn new() -> Self {
        let mut inv = [[0; 5]; 5];
        for i in 0..5 {
            for j in 0..i {
                let (mi, _) = MODULI[i];
                let (mj, _) = MODULI[j];
                inv[i][j] = pow_mod(mj % mi, mi - 2, mi);
            }
        }
        Self { inv }
    }

    fn unsigned(&self, r: [u64; 5]) -> Option<u128> {
        let mut digits = [0u64; 5];
        for i in 0..5 {
            let mi = MODULI[i].0;
            let mut t = r[i] % mi;
            for j in 0..i {
                t = (t + mi - digits[j] % mi) % mi * self.inv[i][j] % mi;
            }
            digits[i] = t;
        }
        let mut value: u128 = 0;
        let mut radix: u128 = 1;
        for (i, &d) in digits.iter().enumerate() {
            if d != 0 {
                value = value.checked_add(radix.checked_mul(d as u128)?)?;
            }
            if i + 1 < 5 {
                // Radix overflow only matters if a later digit is nonzero.
                radix = match radix.checked_mul(MODULI[i].0 as u128) {
                    Some(r) => r,
                    None if digits[i + 1..].iter().all(|&d| d == 0) => break,
                    None => return None,
                };
            }
        }
        Some(value)
    }

    /// Signed value with |v| < 2^127 from its residues.
    fn lift(&self, r: [u64; 5]) -> Option<i128> {
        if let Some(v) = self.unsigned(r).filter(|&v| v <= i128::MAX as u128) {
            return Some(v as i128);
        }
        let neg: [u64; 5] = std::array::from_fn(|i| (MODULI[i].0 - r[i] % MODULI[i].0) % MODULI[i].0);
        self.unsigned(neg)
            .filter(|&v| v <= i128::MAX as u128)
            .map(|v| -(v as i128))
    }
}
