//! Sato-Tate angles, the Sato-Tate measure, Chebyshev polynomials of the
//! second kind, interval counts and discrepancy.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::coefficients::{hasse_holds, normalized, CoefficientTable, NewformSpec};
use crate::error::{Error, Result};

/// `θ_p` with `a(p) = 2 p^((k-1)/2) cos θ_p`.
pub fn angle(ap: i128, p: u64, weight: u32) -> Result<f64> {
    if !hasse_holds(ap, p, weight) {
        return Err(Error::Domain(format!(
            "a({p}) = {ap} exceeds 2 p^((k-1)/2) for k = {weight}"
        )));
    }
    Ok(normalized(ap, p, weight).clamp(-1.0, 1.0).acos())
}

/// Closed subinterval `[alpha, beta]` of `[0, π]` with `alpha < beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    alpha: f64,
    beta: f64,
}

impl Interval {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(0.0 <= alpha && alpha < beta && beta <= PI) {
            return Err(Error::Domain(format!(
                "interval [{alpha}, {beta}] must satisfy 0 <= alpha < beta <= π"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub const FULL: Interval = Interval { alpha: 0.0, beta: PI };

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn width(&self) -> f64 {
        self.beta - self.alpha
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.alpha <= theta && theta <= self.beta
    }
}

impl FromStr for Interval {
    type Err = Error;

    /// Parses `alpha,beta` in radians.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Input(format!("interval {s:?} should be \"alpha,beta\"")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::Input(format!("bad interval endpoint {t:?}: {e}")))
        };
        Interval::new(parse(a)?, parse(b)?)
    }
}

/// Distribution function of the Sato-Tate measure on `[0, π]`.
pub fn st_cdf(theta: f64) -> f64 {
    (theta - (2.0 * theta).sin() / 2.0) / PI
}

/// `μ_ST(I) = ∫_I (2/π) sin²θ dθ`.
pub fn st_measure(i: &Interval) -> f64 {
    ((i.beta - i.alpha) - ((2.0 * i.beta).sin() - (2.0 * i.alpha).sin()) / 2.0) / PI
}

/// Chebyshev polynomial of the second kind, `U_n(x)`, by the three-term
/// recurrence.
pub fn chebyshev_u(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        (prev, cur) = (cur, 2.0 * x * cur - prev);
    }
    cur
}

/// Chebyshev polynomial of the first kind, `T_m(x) = cos(m arccos x)`.
pub fn chebyshev_t(m: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        (prev, cur) = (cur, 2.0 * x * cur - prev);
    }
    cur
}

/// One unramified prime with its eigenvalue and angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleRecord {
    pub p: u64,
    pub ap: i128,
    /// `a(p) / (2 p^((k-1)/2))`, computed from the integer `a(p)`.
    pub cos_theta: f64,
    pub theta: f64,
}

/// Sato-Tate angles for all unramified primes up to `x_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleTable {
    spec: NewformSpec,
    records: Vec<AngleRecord>,
    x_max: f64,
}

impl AngleTable {
    pub fn from_coefficients(table: &CoefficientTable) -> Result<Self> {
        let k = table.spec().weight();
        let records = table
            .iter()
            .filter(|&(_, _, ramified)| !ramified)
            .map(|(p, ap, _)| {
                Ok(AngleRecord {
                    p,
                    ap,
                    cos_theta: normalized(ap, p, k).clamp(-1.0, 1.0),
                    theta: angle(ap, p, k)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            spec: table.spec().clone(),
            records,
            x_max: table.coverage() as f64,
        })
    }

    /// Build from explicit records (ascending `p`, no ramified primes).
    pub fn from_records(spec: NewformSpec, records: Vec<AngleRecord>, x_max: f64) -> Result<Self> {
        for w in records.windows(2) {
            if w[0].p >= w[1].p {
                return Err(Error::Data(format!("records not ascending at p = {}", w[1].p)));
            }
        }
        for r in &records {
            if spec.is_ramified(r.p) {
                return Err(Error::Data(format!("ramified prime {} in angle table", r.p)));
            }
            if !(0.0..=PI).contains(&r.theta) {
                return Err(Error::Data(format!("angle {} at p = {} outside [0, π]", r.theta, r.p)));
            }
            if r.p as f64 > x_max {
                return Err(Error::Data(format!("prime {} beyond x_max = {x_max}", r.p)));
            }
        }
        Ok(Self { spec, records, x_max })
    }

    pub fn spec(&self) -> &NewformSpec {
        &self.spec
    }

    pub fn records(&self) -> &[AngleRecord] {
        &self.records
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    /// Records with `p <= x`, after checking coverage.
    pub fn up_to(&self, x: f64) -> Result<&[AngleRecord]> {
        if x > self.x_max {
            return Err(Error::Coverage {
                requested: x,
                covered: self.x_max as u64,
            });
        }
        let end = self.records.partition_point(|r| (r.p as f64) <= x);
        Ok(&self.records[..end])
    }

    /// Angle at the unramified prime `p`, if tabulated.
    pub fn record(&self, p: u64) -> Option<&AngleRecord> {
        self.records
            .binary_search_by_key(&p, |r| r.p)
            .ok()
            .map(|i| &self.records[i])
    }

    /// Number of unramified primes `<= x`.
    pub fn pi_unramified(&self, x: f64) -> Result<usize> {
        Ok(self.up_to(x)?.len())
    }

    /// CSV `p,a_p,theta` with angles printed to 17 significant digits.
    ///
    /// A leading `#` line records `label k N x_max` so the table can be read
    /// back without outside context.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# {} {} {} {}",
            self.spec.label(),
            self.spec.weight(),
            self.spec.level(),
            self.x_max
        );
        s.push_str("p,a_p,theta\n");
        for r in &self.records {
            let _ = writeln!(s, "{},{},{:.16e}", r.p, r.ap, r.theta);
        }
        s
    }

    /// Inverse of [`to_csv`](Self::to_csv).
    pub fn from_csv(text: &str, spec: NewformSpec, path: &Path) -> Result<Self> {
        let mut x_max = None;
        let mut records = Vec::new();
        let k = spec.weight();
        for (idx, line) in text.lines().enumerate() {
            let err = |msg: String| Error::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                msg,
            };
            if let Some(h) = line.strip_prefix('#') {
                if let Some(x) = h.split_whitespace().nth(3) {
                    x_max = Some(x.parse::<f64>().map_err(|e| err(format!("bad x_max: {e}")))?);
                }
                continue;
            }
            if line == "p,a_p,theta" || line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            let [p, ap, theta] = fields[..] else {
                return Err(err(format!("expected p,a_p,theta, got {line:?}")));
            };
            let p: u64 = p.parse().map_err(|e| err(format!("bad p: {e}")))?;
            let ap: i128 = ap.parse().map_err(|e| err(format!("bad a_p: {e}")))?;
            let theta: f64 = theta.parse().map_err(|e| err(format!("bad theta: {e}")))?;
            let expect = angle(ap, p, k).map_err(|e| err(e.to_string()))?;
            if (expect - theta).abs() > 1e-9 {
                return Err(err(format!("theta {theta} inconsistent with a_p = {ap}")));
            }
            records.push(AngleRecord {
                p,
                ap,
                cos_theta: normalized(ap, p, k).clamp(-1.0, 1.0),
                theta,
            });
        }
        let x_max = x_max.unwrap_or_else(|| records.last().map_or(1.0, |r| r.p as f64));
        Self::from_records(spec, records, x_max)
    }
}

/// `π_{f,I}(x)`: unramified primes `p <= x` with `θ_p ∈ I` (closed).
pub fn count_in_interval(table: &AngleTable, i: &Interval, x: f64) -> Result<usize> {
    Ok(table.up_to(x)?.iter().filter(|r| i.contains(r.theta)).count())
}

/// Largest `|count/π_unram(x) − μ_ST([u, v])|` over closed intervals whose
/// endpoints lie in `{0, π} ∪ {θ_p : p <= x}`.
///
/// Runs in `O(m log m)`: with `C(t) = #{θ <= t}` and `C⁻(t) = #{θ < t}` the
/// deviation on `[e_i, e_j]` is `A_j − B_i` where `A = C/m − F` and
/// `B = C⁻/m − F`, so one ascending sweep tracking the running extrema of
/// `B` suffices.
pub fn discrepancy(table: &AngleTable, x: f64) -> Result<f64> {
    let recs = table.up_to(x)?;
    if recs.is_empty() {
        return Err(Error::Domain(format!("no unramified primes <= {x}")));
    }
    let m = recs.len() as f64;
    let mut thetas: Vec<f64> = recs.iter().map(|r| r.theta).collect();
    thetas.sort_by(f64::total_cmp);

    // Distinct sweep points with multiplicities.
    let mut points: Vec<(f64, usize)> = Vec::with_capacity(thetas.len() + 2);
    points.push((0.0, 0));
    for &t in &thetas {
        match points.last_mut() {
            Some(last) if last.0 == t => last.1 += 1,
            _ => points.push((t, 1)),
        }
    }
    if points.last().is_some_and(|l| l.0 < PI) {
        points.push((PI, 0));
    }

    let mut below = 0usize;
    let mut min_b = f64::INFINITY;
    let mut max_b = f64::NEG_INFINITY;
    let mut sup = 0.0f64;
    for &(e, mult) in &points {
        let f = st_cdf(e);
        let b = below as f64 / m - f;
        min_b = min_b.min(b);
        max_b = max_b.max(b);
        below += mult;
        let a = below as f64 / m - f;
        sup = sup.max(a - min_b).max(max_b - a);
    }
    Ok(sup)
}
