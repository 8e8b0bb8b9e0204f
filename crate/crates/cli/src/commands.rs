use std::f64::consts::PI;

use serde::Serialize;

use satotate::bounds::{budget, BoundConstants, BudgetParams, BudgetReport, SymPowerParams};
use satotate::coefficients::{
    CacheStatus, CoefficientCache, CoefficientSource, CoefficientTable, GenerateOptions, NewformSpec,
};
use satotate::explicit_formula::{ingest_zeros, symn_psi_bound_check, synthesize_zeros, zeta_psi_compare};
use satotate::sato_tate::{count_in_interval, discrepancy, st_measure, AngleTable, Interval};
use satotate::smoothing::build_majorants;
use satotate::sympower::{phi_sum, SymPowerSumReport};
use satotate::Error;

use crate::args::{
    BudgetArgs, ChebsumsArgs, Cli, CoefficientsArgs, Command, ExplicitArgs, ExplicitMode, FormArgs,
    Format, SatoTateArgs, SmoothArgs, SmoothOutput,
};
use crate::error::CliError;
use crate::report::{csv_rows, render, render_one};

pub fn dispatch(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Coefficients(a) => coefficients(cli, a),
        Command::Satotate(a) => sato_tate(cli, a),
        Command::Chebsums(a) => chebsums(cli, a),
        Command::Smooth(a) => smooth(cli, a),
        Command::Budget(a) => budget_cmd(cli, a),
        Command::Explicit(a) => explicit(cli, a),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn spec_from(form: &FormArgs) -> Result<NewformSpec, CliError> {
    if form.delta_form {
        if let Some(label) = &form.label {
            return Ok(NewformSpec::new(label.clone(), 12, 1, CoefficientSource::EtaDelta)?);
        }
        return Ok(NewformSpec::delta());
    }
    if let Some(curve) = form.curve {
        let level = form.level.ok_or_else(|| usage("--curve needs --level"))?;
        let label = form.label.clone().unwrap_or_else(|| format!("ec{level}"));
        return Ok(NewformSpec::elliptic_curve(label, curve, level)?);
    }
    if let Some(path) = &form.qexp {
        let (Some(weight), Some(level), Some(label)) = (form.weight, form.level, form.label.clone()) else {
            return Err(usage("--qexp needs --weight, --level and --label"));
        };
        return Ok(NewformSpec::qexp_file(label, weight, level, path.clone())?);
    }
    Err(usage("choose a newform with --delta-form, --curve or --qexp"))
}

/// Angle table from an existing cache covering `x`.
fn cached_angles(cli: &Cli, spec: &NewformSpec, x: f64) -> Result<AngleTable, CliError> {
    let cache = CoefficientCache::new(&cli.cache_dir);
    let table = cache.load(spec)?.ok_or_else(|| {
        Error::Data(format!(
            "no coefficient cache for {spec} in {}; run `satotate coefficients` first",
            cli.cache_dir.display()
        ))
    })?;
    if (table.coverage() as f64) < x {
        return Err(Error::Coverage {
            requested: x,
            covered: table.coverage(),
        }
        .into());
    }
    Ok(AngleTable::from_coefficients(&table)?)
}

#[derive(Serialize)]
struct CoefficientsSummary {
    label: String,
    weight: u32,
    level: u64,
    coverage: u64,
    entries: usize,
    unramified: usize,
    ramified: String,
    max_hasse_ratio: f64,
    status: &'static str,
    cache_file: String,
}

fn coefficients(cli: &Cli, a: &CoefficientsArgs) -> Result<String, CliError> {
    let spec = spec_from(&a.form)?;
    let cache = CoefficientCache::new(&cli.cache_dir);
    let (table, status): (CoefficientTable, CacheStatus) =
        cache.load_or_generate(&spec, a.xmax, GenerateOptions::default())?;
    let ramified: Vec<String> = table
        .iter()
        .filter(|(_, _, r)| *r)
        .map(|(p, _, _)| p.to_string())
        .collect();
    let summary = CoefficientsSummary {
        label: spec.label().to_string(),
        weight: spec.weight(),
        level: spec.level(),
        coverage: table.coverage(),
        entries: table.len(),
        unramified: table.unramified_count(),
        ramified: ramified.join(" "),
        max_hasse_ratio: table.max_hasse_ratio(),
        status: match status {
            CacheStatus::Hit => "hit",
            CacheStatus::Extended => "extended",
            CacheStatus::Created => "created",
        },
        cache_file: cache.path_for(&spec)?.display().to_string(),
    };
    render_one(&summary, cli.format)
}

#[derive(Serialize)]
struct SatoTateRow {
    x: f64,
    alpha: f64,
    beta: f64,
    count: usize,
    expected: f64,
    deviation: f64,
    pi_unramified: usize,
    discrepancy: f64,
}

/// `xmin, xmin·r, xmin·r², ...` below `xmax`, then `xmax`.
fn geometric_grid(xmin: f64, ratio: f64, xmax: f64) -> Result<Vec<f64>, CliError> {
    if !(ratio > 1.0) || !(xmin >= 2.0) {
        return Err(usage("grid needs --ratio > 1 and --xmin >= 2"));
    }
    let mut grid = Vec::new();
    let mut x = xmin;
    while x < xmax {
        grid.push(x);
        x *= ratio;
    }
    grid.push(xmax);
    Ok(grid)
}

fn sato_tate(cli: &Cli, a: &SatoTateArgs) -> Result<String, CliError> {
    let spec = spec_from(&a.form)?;
    let xmax = a.xmax as f64;
    let grid = geometric_grid(a.xmin.min(xmax), a.ratio, xmax)?;
    let table = cached_angles(cli, &spec, xmax)?;
    let intervals = if a.intervals.is_empty() {
        vec![
            Interval::new(0.0, PI / 2.0)?,
            Interval::new(PI / 4.0, 3.0 * PI / 4.0)?,
            Interval::new(PI / 3.0, 2.0 * PI / 3.0)?,
        ]
    } else {
        a.intervals.clone()
    };
    let mut rows = Vec::new();
    for &x in &grid {
        let total = table.pi_unramified(x)?;
        let disc = if total == 0 { 0.0 } else { discrepancy(&table, x)? };
        for i in &intervals {
            let count = count_in_interval(&table, i, x)?;
            let expected = st_measure(i) * total as f64;
            rows.push(SatoTateRow {
                x,
                alpha: i.alpha(),
                beta: i.beta(),
                count,
                expected,
                deviation: count as f64 - expected,
                pi_unramified: total,
                discrepancy: disc,
            });
        }
    }
    render(&rows, cli.format)
}

#[derive(Serialize)]
struct AssemblyRow {
    x: f64,
    alpha: f64,
    beta: f64,
    delta: f64,
    #[serde(rename = "R")]
    r: u32,
    series_terms: usize,
    pi_unramified: usize,
    /// `δ x / log x`.
    smoothing_term: f64,
    /// `Σ_{n <= series_terms} (1/n) (R/(nδ))^R |Φ_n(x)|`.
    series_sum: f64,
    /// Bound for the omitted `n > series_terms` via `|Φ_n| <= (n+1) π(x)`.
    tail_bound: f64,
}

fn chebsums(cli: &Cli, a: &ChebsumsArgs) -> Result<String, CliError> {
    if a.n_min == 0 || a.n_min > a.n_max {
        return Err(usage("need 1 <= --n-min <= --n-max"));
    }
    let spec = spec_from(&a.form)?;
    let xmax = a.xs.iter().copied().fold(0.0, f64::max);
    let table = cached_angles(cli, &spec, xmax)?;
    let mut rows = Vec::new();
    for &x in &a.xs {
        for n in a.n_min..=a.n_max {
            rows.push(SymPowerSumReport::compute(&table, n, x)?);
        }
    }
    let mut assembly = Vec::new();
    if let (Some(interval), Some(delta), Some(r)) = (a.interval, a.delta, a.r) {
        if r < 2 || !(delta > 0.0 && delta < 0.5) || a.series_terms == 0 {
            return Err(usage("assembly needs --R >= 2, 0 < --delta < 1/2 and --series-terms >= 1"));
        }
        let rf = r as f64;
        let log_weight = |n: f64| -n.ln() + rf * (rf.ln() - n.ln() - delta.ln());
        for &x in &a.xs {
            let pi_x = table.pi_unramified(x)?;
            let mut series_sum = 0.0;
            for n in 1..=a.series_terms {
                series_sum += log_weight(n as f64).exp() * phi_sum(x, n, &table)?.abs();
            }
            let log_tail = 2f64.ln() + (pi_x as f64).ln() + rf * (rf / delta).ln()
                + (1.0 - rf) * (a.series_terms as f64).ln()
                - (rf - 1.0).ln();
            assembly.push(AssemblyRow {
                x,
                alpha: interval.alpha(),
                beta: interval.beta(),
                delta,
                r,
                series_terms: a.series_terms,
                pi_unramified: pi_x,
                smoothing_term: delta * x / x.ln(),
                series_sum,
                tail_bound: if pi_x == 0 { 0.0 } else { log_tail.exp() },
            });
        }
    }
    match cli.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                sums: &'a [SymPowerSumReport],
                assembly: &'a [AssemblyRow],
            }
            render_one(&Out { sums: &rows, assembly: &assembly }, Format::Json)
        }
        Format::Csv => {
            let mut s = csv_rows(&rows)?;
            if !assembly.is_empty() {
                s.push_str("# assembly\n");
                s.push_str(&csv_rows(&assembly)?);
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct SmoothSummary {
    alpha: f64,
    beta: f64,
    delta: f64,
    #[serde(rename = "R")]
    r: u32,
    terms_plus: usize,
    terms_minus: usize,
    tail_plus: f64,
    tail_minus: f64,
    envelope_plus: bool,
    envelope_minus: bool,
    mu: f64,
    c0_plus: f64,
    c0_minus: f64,
}

#[derive(Serialize)]
struct ChebRow {
    n: usize,
    c_plus: f64,
    c_minus: f64,
}

fn smooth(cli: &Cli, a: &SmoothArgs) -> Result<String, CliError> {
    let pair = build_majorants(&a.interval, a.delta, a.r)?;
    let (kp, km) = (pair.plus.kernel(), pair.minus.kernel());
    if let Some(m) = kp.envelope_violation().or(km.envelope_violation()) {
        return Err(Error::Data(format!("Fourier coefficient {m} exceeds its envelope")).into());
    }
    let summary = SmoothSummary {
        alpha: a.interval.alpha(),
        beta: a.interval.beta(),
        delta: a.delta,
        r: a.r,
        terms_plus: kp.len(),
        terms_minus: km.len(),
        tail_plus: pair.plus.tail_bound(),
        tail_minus: pair.minus.tail_bound(),
        envelope_plus: true,
        envelope_minus: true,
        mu: st_measure(&a.interval),
        c0_plus: pair.cheb_plus[0],
        c0_minus: pair.cheb_minus[0],
    };
    match a.output {
        SmoothOutput::Summary => render_one(&summary, cli.format),
        SmoothOutput::Chebyshev => {
            let len = pair.cheb_plus.len().max(pair.cheb_minus.len());
            let rows: Vec<ChebRow> = (0..len)
                .map(|n| ChebRow {
                    n,
                    c_plus: pair.cheb_plus.get(n).copied().unwrap_or(0.0),
                    c_minus: pair.cheb_minus.get(n).copied().unwrap_or(0.0),
                })
                .collect();
            render(&rows, cli.format)
        }
        SmoothOutput::Kernel | SmoothOutput::MinorantKernel => {
            let kernel = if a.output == SmoothOutput::Kernel { kp } else { km };
            match cli.format {
                Format::Json => render_one(kernel, Format::Json),
                Format::Csv => Ok(format!(
                    "# checks envelope_plus=pass envelope_minus=pass tail_plus={:e} tail_minus={:e} c0_plus={} c0_minus={} mu={}\n{}",
                    summary.tail_plus,
                    summary.tail_minus,
                    summary.c0_plus,
                    summary.c0_minus,
                    summary.mu,
                    kernel.to_csv()
                )),
            }
        }
    }
}

fn budget_cmd(cli: &Cli, a: &BudgetArgs) -> Result<String, CliError> {
    let mut rows: Vec<BudgetReport> = Vec::new();
    for &r in &a.r {
        for &ll in &a.log_log_x {
            let mut params = BudgetParams::at_optimal_delta(r, ll)?;
            if let Some(ld) = a.log_delta {
                params.log_delta = ld;
            }
            params.interval = a.interval;
            rows.push(budget(&params));
        }
    }
    if rows.len() == 1 {
        render_one(&rows[0], cli.format)
    } else {
        render(&rows, cli.format)
    }
}

#[derive(Serialize)]
struct OrdinateRow {
    index: usize,
    gamma: f64,
}

fn explicit(cli: &Cli, a: &ExplicitArgs) -> Result<String, CliError> {
    match a.mode {
        ExplicitMode::Zeta => {
            let path = a.zeros.as_ref().ok_or_else(|| usage("--mode zeta needs --zeros"))?;
            let mut zeros = ingest_zeros(path)?;
            if let Some(m) = a.prefix {
                zeros = zeros.prefix(m);
            }
            let t = a.t.unwrap_or_else(|| zeros.gamma_max());
            let rows = a
                .xs
                .iter()
                .map(|&x| zeta_psi_compare(x, t, &zeros))
                .collect::<Result<Vec<_>, _>>()?;
            render(&rows, cli.format)
        }
        ExplicitMode::Synthesize => {
            let spec = spec_from(&a.form)?;
            let t = a.t.ok_or_else(|| usage("--mode synthesize needs --T"))?;
            let params = SymPowerParams::from_spec(&spec, BoundConstants::default());
            let zeros = synthesize_zeros(a.n, t, cli.seed, &params)?;
            let rows: Vec<OrdinateRow> = zeros
                .ordinates()
                .iter()
                .enumerate()
                .map(|(i, &gamma)| OrdinateRow { index: i + 1, gamma })
                .collect();
            render(&rows, cli.format)
        }
        ExplicitMode::BoundCheck => {
            let spec = spec_from(&a.form)?;
            let params = SymPowerParams::from_spec(&spec, BoundConstants::default());
            let mut rows = Vec::new();
            for &x in &a.xs {
                let t = a.t.unwrap_or_else(|| x.ln().sqrt().exp());
                if !(t > 1.0) {
                    return Err(usage(format!("T = {t} must exceed 1")));
                }
                let zeros = synthesize_zeros(a.n, t, cli.seed, &params)?;
                rows.push(symn_psi_bound_check(x, a.n, t, &zeros, &params)?);
            }
            render(&rows, cli.format)
        }
    }
}
