//! Frobenius traces `a_p = p + 1 - #E(F_p)` for a Weierstrass curve.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::primes::{is_prime, isqrt, mul_mod, pow_mod};

/// Below this bound the group order is not guaranteed to be pinned down by
/// points of E and its twist, so the fast engine always counts naively.
pub const FAST_MIN_PRIME: u64 = 230;

/// Points tried before the fast engine gives up and counts naively.
const MAX_POINTS: usize = 12;

/// Long Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Curve {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
}

impl Curve {
    pub const fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Self {
        Self { a1, a2, a3, a4, a6 }
    }

    /// `(c4, c6)` invariants.
    pub fn c_invariants(&self) -> (i128, i128) {
        let [a1, a2, a3, a4, a6] = [self.a1, self.a2, self.a3, self.a4, self.a6].map(i128::from);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let c4 = b2 * b2 - 24 * b4;
        let c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
        (c4, c6)
    }

    /// Whether the reduction mod the odd prime `p >= 5` is nonsingular.
    fn good_reduction_mod(&self, p: u64) -> bool {
        let (c4, c6) = self.c_invariants();
        let c4 = reduce(c4, p);
        let c6 = reduce(c6, p);
        // 1728 Δ = c4^3 - c6^2, and 1728 is a unit for p >= 5.
        let c4cube = mul_mod(mul_mod(c4, c4, p), c4, p);
        c4cube != mul_mod(c6, c6, p)
    }

    fn reduced(&self, p: u64) -> [u64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6].map(|a| reduce(a as i128, p))
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

impl FromStr for Curve {
    type Err = Error;

    /// Parses `a1,a2,a3,a4,a6`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Input(format!("bad curve coefficients {s:?}: {e}")))?;
        match parts[..] {
            [a1, a2, a3, a4, a6] => Ok(Curve::new(a1, a2, a3, a4, a6)),
            _ => Err(Error::Input(format!("expected five coefficients, got {s:?}"))),
        }
    }
}

fn reduce(a: i128, p: u64) -> u64 {
    a.rem_euclid(p as i128) as u64
}

/// `a_p` by exhaustive point counting. Works for singular reductions too.
pub fn ap_elliptic(curve: &Curve, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    let [a1, a2, a3, a4, a6] = curve.reduced(p);
    let affine = if p == 2 {
        let mut n = 0;
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = (y * y + a1 * x * y + a3 * y) % 2;
                let rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
                n += u64::from(lhs == rhs);
            }
        }
        n
    } else {
        // Complete the square: (y + (a1 x + a3)/2)^2 = f(x) + (a1 x + a3)^2 / 4.
        let mut roots = vec![0u8; p as usize];
        for y in 0..p {
            roots[mul_mod(y, y, p) as usize] += 1;
        }
        let inv4 = pow_mod(4, p - 2, p);
        (0..p)
            .map(|x| {
                let x2 = mul_mod(x, x, p);
                let f = (mul_mod(x2, x, p) + mul_mod(a2, x2, p) + mul_mod(a4, x, p) + a6) % p;
                let h = (mul_mod(a1, x, p) + a3) % p;
                let d = (f + mul_mod(mul_mod(h, h, p), inv4, p)) % p;
                u64::from(roots[d as usize])
            })
            .sum()
    };
    Ok(p as i64 - affine as i64)
}

/// `a_p` by baby-step/giant-step search for the group order inside the
/// Hasse interval.
///
/// Falls back to [`ap_elliptic`] for small or bad primes and whenever the
/// sampled points do not determine the order uniquely, so the result always
/// agrees with the naive count.
pub fn ap_elliptic_fast(curve: &Curve, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    if p < FAST_MIN_PRIME || !curve.good_reduction_mod(p) {
        return ap_elliptic(curve, p);
    }
    let (c4, c6) = curve.c_invariants();
    // y^2 = x^3 - 27 c4 x - 54 c6 is isomorphic over F_p for p >= 5.
    let short = ShortCurve {
        p,
        a: reduce(-27 * c4, p),
        b: reduce(-54 * c6, p),
    };
    match short.trace_bsgs() {
        Some(t) => Ok(t),
        None => ap_elliptic(curve, p),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Point {
    Infinity,
    Affine(u64, u64),
}

struct ShortCurve {
    p: u64,
    a: u64,
    b: u64,
}

impl ShortCurve {
    fn add(&self, u: Point, v: Point) -> Point {
        let p = self.p;
        match (u, v) {
            (Point::Infinity, q) | (q, Point::Infinity) => q,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => {
                let lambda = if x1 == x2 {
                    if (y1 + y2) % p == 0 {
                        return Point::Infinity;
                    }
                    let num = (3 * mul_mod(x1, x1, p) + self.a) % p;
                    mul_mod(num, inv_mod(2 * y1 % p, p), p)
                } else {
                    let num = (y2 + p - y1) % p;
                    mul_mod(num, inv_mod((x2 + p - x1) % p, p), p)
                };
                let x3 = (mul_mod(lambda, lambda, p) + 2 * p - x1 - x2) % p;
                let y3 = (mul_mod(lambda, (x1 + p - x3) % p, p) + p - y1) % p;
                Point::Affine(x3, y3)
            }
        }
    }

    fn neg(&self, u: Point) -> Point {
        match u {
            Point::Infinity => u,
            Point::Affine(x, y) => Point::Affine(x, (self.p - y) % self.p),
        }
    }

    fn mul(&self, mut k: u64, u: Point) -> Point {
        let mut acc = Point::Infinity;
        let mut base = u;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    fn random_point(&self, rng: &mut ChaCha8Rng) -> Point {
        let p = self.p;
        loop {
            let x = rng.gen_range(0..p);
            let rhs = (mul_mod(mul_mod(x, x, p), x, p) + mul_mod(self.a, x, p) + self.b) % p;
            if let Some(y) = sqrt_mod(rhs, p) {
                return Point::Affine(x, y);
            }
        }
    }

    /// Traces `t` with `|t| <= 2 sqrt(p)` and `(p + 1 - t) P = O`.
    fn candidate_traces(&self, pt: Point) -> Option<BTreeSet<i64>> {
        let w = isqrt(4 * self.p) as i64;
        let width = (2 * w + 1) as u64;
        let s = isqrt(width) + 1;

        let mut baby = HashMap::with_capacity(s as usize);
        let mut cur = Point::Infinity;
        for j in 0..s {
            if baby.insert(cur, j).is_some() {
                // Order of P below s: it cannot narrow the search.
                return None;
            }
            cur = self.add(cur, pt);
        }
        let giant = self.neg(self.mul(s, pt));
        let mut r = self.add(self.mul(self.p + 1, pt), self.mul(w as u64, pt));
        let mut out = BTreeSet::new();
        let mut i = 0u64;
        while (i * s) as i64 - w <= w {
            if let Some(&j) = baby.get(&r) {
                let t = -w + (i * s + j) as i64;
                if t <= w {
                    out.insert(t);
                }
            }
            r = self.add(r, giant);
            i += 1;
        }
        Some(out)
    }

    fn trace_bsgs(&self) -> Option<i64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.p ^ 0x5a70_7a7e);
        let mut alive: Option<BTreeSet<i64>> = None;
        for _ in 0..MAX_POINTS {
            let pt = self.random_point(&mut rng);
            let Some(c) = self.candidate_traces(pt) else { continue };
            let next = match alive {
                None => c,
                Some(prev) => prev.intersection(&c).copied().collect(),
            };
            if next.len() == 1 {
                return next.first().copied();
            }
            alive = Some(next);
        }
        None
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "{a} not invertible mod {p}");
    s0.rem_euclid(p as i64) as u64
}

/// Tonelli-Shanks square root for odd prime `p`.
fn sqrt_mod(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(n, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    const E11A1: Curve = Curve::new(0, -1, 1, -10, -20);

    /// Exhaustive count over all (x, y) in F_p^2 plus the point at infinity.
    fn brute_force_ap(c: &Curve, p: u64) -> i64 {
        let r = |a: i64| a.rem_euclid(p as i64) as u64;
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                let lhs = (y * y + r(c.a1) * x % p * y + r(c.a3) * y) % p;
                let rhs = (x * x % p * x + r(c.a2) * x % p * x + r(c.a4) * x + r(c.a6)) % p;
                n += i64::from(lhs == rhs);
            }
        }
        p as i64 + 1 - n
    }

    #[test]
    fn known_traces_11a1() {
        assert_eq!(ap_elliptic(&E11A1, 2).unwrap(), -2);
        assert_eq!(ap_elliptic(&E11A1, 3).unwrap(), -1);
        assert_eq!(ap_elliptic(&E11A1, 5).unwrap(), 1);
        assert_eq!(ap_elliptic(&E11A1, 7).unwrap(), -2);
        // Split multiplicative reduction at 11.
        assert_eq!(ap_elliptic(&E11A1, 11).unwrap(), 1);
    }

    #[test]
    fn naive_matches_brute_force() {
        let curves = [E11A1, Curve::new(1, 0, 0, -1, 0), Curve::new(0, 0, 1, -1, 0)];
        for c in &curves {
            for p in crate::primes::primes_up_to(60) {
                assert_eq!(ap_elliptic(c, p).unwrap(), brute_force_ap(c, p), "{c} p={p}");
            }
        }
    }

    #[test]
    fn fast_equals_naive_on_samples() {
        let curves = [E11A1, Curve::new(0, 0, 1, -1, 0), Curve::new(0, 0, 0, 0, 1)];
        for c in &curves {
            for p in [2, 3, 229, 233, 1009, 10007, 65_537] {
                assert_eq!(ap_elliptic_fast(c, p).unwrap(), ap_elliptic(c, p).unwrap(), "{c} p={p}");
            }
        }
    }

    #[test]
    fn rejects_composites() {
        assert!(matches!(ap_elliptic(&E11A1, 9), Err(Error::Input(_))));
        assert!(matches!(ap_elliptic_fast(&E11A1, 1001), Err(Error::Input(_))));
    }

    #[test]
    fn parse_round_trip() {
        let c: Curve = "0,-1,1,-10,-20".parse().unwrap();
        assert_eq!(c, E11A1);
        assert_eq!(c.to_string().parse::<Curve>().unwrap(), c);
        assert!("1,2,3".parse::<Curve>().is_err());
        assert_eq!(E11A1.c_invariants(), (496, 20008));
    }

    #[test]
    fn tonelli_shanks() {
        for p in [5u64, 13, 17, 41, 97, 257, 65_537] {
            for n in 0..p.min(300) {
                if let Some(r) = sqrt_mod(n, p) {
                    assert_eq!(mul_mod(r, r, p), n);
                } else {
                    assert!((0..p).all(|y| mul_mod(y, y, p) != n));
                }
            }
        }
    }
}
