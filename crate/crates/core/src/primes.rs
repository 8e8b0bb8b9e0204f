//! Prime enumeration and elementary arithmetic functions.

/// Segment length (in odd numbers) for [`primes_up_to`].
const SEGMENT: usize = 1 << 15;

/// All primes `p <= limit`, ascending, via a segmented odd-only sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut out = vec![2];
    if limit < 3 {
        return out;
    }
    let root = isqrt(limit);
    let base = small_sieve(root);

    // Odd n = 2i + 1 for i in [lo, hi).
    let total = (limit as usize - 1) / 2 + 1;
    let mut seg = vec![true; SEGMENT];
    let mut lo = 1usize;
    while lo < total {
        let hi = (lo + SEGMENT).min(total);
        let len = hi - lo;
        seg[..len].fill(true);
        for &p in base.iter().skip(1) {
            let p = p as usize;
            let p2 = p * p;
            let start_n = {
                let first_odd = 2 * lo + 1;
                let m = first_odd.div_ceil(p) * p;
                let m = if m % 2 == 0 { m + p } else { m };
                m.max(p2)
            };
            if start_n > 2 * hi - 1 {
                continue;
            }
            let mut i = (start_n - 1) / 2 - lo;
            while i < len {
                seg[i] = false;
                i += p;
            }
        }
        out.extend(
            seg[..len]
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| 2 * (lo + i) as u64 + 1),
        );
        lo = hi;
    }
    out
}

fn small_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut is = vec![true; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if is[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                is[j] = false;
                j += i;
            }
        }
    }
    primes
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Some((p, m))` when `j = p^m` with `m >= 1`.
pub fn prime_power(j: u64) -> Option<(u64, u32)> {
    if j < 2 {
        return None;
    }
    let p = *prime_divisors(j).first()?;
    let mut rest = j;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Classical von Mangoldt function.
pub fn von_mangoldt(j: u64) -> f64 {
    prime_power(j).map_or(0.0, |(p, _)| (p as f64).ln())
}

/// All prime powers `p^m <= x` with `m >= 2`, ascending, as `(p^m, p, m)`.
pub fn higher_prime_powers(x: u64, primes: &[u64]) -> Vec<(u64, u64, u32)> {
    let mut out = Vec::new();
    for &p in primes {
        let Some(mut q) = p.checked_mul(p) else { break };
        if q > x {
            break;
        }
        let mut m = 2;
        while q <= x {
            out.push((q, p, m));
            m += 1;
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
    }
    out.sort_unstable();
    out
}

/// Table of the classical von Mangoldt function on `0..=limit`.
pub fn von_mangoldt_table(limit: u64) -> Vec<f64> {
    let mut lambda = vec![0.0; limit as usize + 1];
    for p in primes_up_to(limit) {
        let logp = (p as f64).ln();
        let mut q = p;
        loop {
            lambda[q as usize] = logp;
            match q.checked_mul(p) {
                Some(next) if next <= limit => q = next,
                _ => break,
            }
        }
    }
    lambda
}
