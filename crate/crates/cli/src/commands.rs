//! The subcommands, independent of argument parsing and output streams.

use std::path::Path;

use gem_core::graph::{second_family, topology};
use gem_core::lattice::field_covariance;
use gem_core::{
    asymptotic_coefficients, gem_field_asymptotic, gem_field_exact, gem_from_purity,
    gem_three_mode_g1, gem_three_mode_g2, gem_two_mode_closed, graph_state_covariance,
    log_negativity_two_mode, purity, reduced_covariance, AsymptoticCoefficients, GraphSpec,
    LatticeFieldConfig, PolarCoupling,
};
use num_complex::Complex64;
use serde::Serialize;

use crate::csv::{log_or_neg_inf, Table};
use crate::error::CliError;
use crate::spec_file::GraphSpecFile;

/// GEM values below this are treated as zero when forming ratios.
pub const RATIO_ZERO: f64 = 1e-14;

/// Tolerance of the `--self-test` spot checks.
pub const SELF_TEST_TOLERANCE: f64 = 1e-8;

/// Largest lattice for which the field self-test builds the dense state.
const SELF_TEST_MAX_SITES: usize = 401;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Gem,
    LogNeg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Equal,
    Xy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    G1,
    G2,
}

/// Parses `a:b` into a finite interval.
pub fn parse_range(text: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Input(format!("invalid range '{text}', expected a:b"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn parse_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("invalid list entry '{s}'")))
        })
        .collect()
}

/// `steps` equally spaced points from `a` to `b` inclusive.
pub fn grid(range: (f64, f64), steps: usize) -> Result<Vec<f64>, CliError> {
    if steps < 2 {
        return Err(CliError::Input("steps must be at least 2".into()));
    }
    let (a, b) = range;
    Ok((0..steps)
        .map(|k| a + (b - a) * k as f64 / (steps - 1) as f64)
        .collect())
}

/// Spot-check indices: first, middle and last row.
fn spot_rows(len: usize) -> [usize; 3] {
    [0, len / 2, len.saturating_sub(1)]
}

fn check(label: &str, table_value: f64, direct: f64) -> Result<(), CliError> {
    let ok = if table_value.is_nan() || direct.is_nan() {
        table_value.is_nan() && direct.is_nan()
    } else {
        (table_value - direct).abs() <= SELF_TEST_TOLERANCE * direct.abs().max(1.0)
    };
    if ok {
        Ok(())
    } else {
        Err(CliError::SelfTest(format!(
            "{label}: table {table_value} vs direct {direct}"
        )))
    }
}

fn pipeline_gem(spec: &GraphSpec) -> Result<f64, CliError> {
    Ok(gem_from_purity(&graph_state_covariance(spec)?)?)
}

fn two_mode_spec(w: Complex64) -> Result<GraphSpec, CliError> {
    Ok(GraphSpec::uniform(2, &[(0, 1)], w)?)
}

/// The closed forms depend on `w` only through `|Re w|` and `|Im w|`; folding
/// into the first quadrant keeps the real axis at exactly `φ = 0`.
fn folded(re: f64, im: f64) -> PolarCoupling {
    PolarCoupling::from_weight(Complex64::new(re.abs(), im.abs()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GemReport {
    pub measure: &'static str,
    pub modes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gem: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub logneg: Option<f64>,
    pub purities: Vec<f64>,
}

pub fn cmd_gem(path: &Path, measure: Measure) -> Result<GemReport, CliError> {
    let spec = GraphSpecFile::read(path)?.to_graph_spec()?;
    let gamma = graph_state_covariance(&spec)?;
    let purities = (0..spec.modes())
        .map(|mu| Ok(purity(&reduced_covariance(&gamma, mu)?)?))
        .collect::<Result<Vec<f64>, CliError>>()?;
    let (gem, logneg, label) = match measure {
        Measure::Gem => (Some(gem_from_purity(&gamma)?), None, "gem"),
        Measure::LogNeg => (None, Some(log_negativity_two_mode(&gamma)?), "logneg"),
    };
    Ok(GemReport {
        measure: label,
        modes: spec.modes(),
        gem,
        logneg,
        purities,
    })
}

/// Two-mode `(Re w, Im w)` scan; `gem` from the closed form, `logneg` from
/// the covariance pipeline.
pub fn cmd_scan2(
    re: (f64, f64),
    im: (f64, f64),
    steps: usize,
    self_test: bool,
) -> Result<Table, CliError> {
    let (xs, ys) = (grid(re, steps)?, grid(im, steps)?);
    let mut table = Table::new(vec!["re_w", "im_w", "gem", "log_gem", "logneg"]);
    for &x in &xs {
        for &y in &ys {
            let gem = gem_two_mode_closed(folded(x, y));
            let gamma = graph_state_covariance(&two_mode_spec(Complex64::new(x, y))?)?;
            let ln = log_negativity_two_mode(&gamma)?;
            table.push(vec![x, y, gem, log_or_neg_inf(gem), ln]);
        }
    }
    if self_test {
        for k in spot_rows(table.rows.len()) {
            let row = &table.rows[k];
            let direct = pipeline_gem(&two_mode_spec(Complex64::new(row[0], row[1]))?)?;
            check(&format!("scan2 row {k}"), row[2], direct)?;
        }
    }
    Ok(table)
}

fn ratio(num: f64, den: f64) -> f64 {
    if den.abs() < RATIO_ZERO || num.abs() < RATIO_ZERO {
        f64::NAN
    } else {
        num / den
    }
}

fn family_gems(family: Family, a: f64, b: f64) -> Result<(f64, f64), CliError> {
    match family {
        Family::Equal => {
            let w = folded(a, b);
            Ok((gem_three_mode_g1(w), gem_three_mode_g2(w)))
        }
        Family::Xy => Ok((
            pipeline_gem(&second_family(a, b, true)?)?,
            pipeline_gem(&second_family(a, b, false)?)?,
        )),
    }
}

fn family_gems_direct(family: Family, a: f64, b: f64) -> Result<(f64, f64), CliError> {
    match family {
        Family::Equal => {
            let w = Complex64::new(a, b);
            Ok((
                pipeline_gem(&GraphSpec::uniform(3, topology::TRIANGLE, w)?)?,
                pipeline_gem(&GraphSpec::uniform(3, topology::PATH3, w)?)?,
            ))
        }
        Family::Xy => family_gems(family, a, b),
    }
}

/// Three-mode scans. The equal family varies the common weight `a + ib`; the
/// xy family sets `A₁₂ = ia`, `A₂₃ = ib` (and `A₁₃ = 1` on the triangle).
/// `log_gem` refers to the selected topology; `ratio` is always G2/G1.
pub fn cmd_scan3(
    family: Family,
    topology: Topology,
    a_range: (f64, f64),
    b_range: (f64, f64),
    steps: usize,
    self_test: bool,
) -> Result<Table, CliError> {
    let (xs, ys) = (grid(a_range, steps)?, grid(b_range, steps)?);
    let mut table = Table::new(vec!["a", "b", "gem_g1", "gem_g2", "log_gem", "ratio"]);
    for &x in &xs {
        for &y in &ys {
            let (g1, g2) = family_gems(family, x, y)?;
            let selected = match topology {
                Topology::G1 => g1,
                Topology::G2 => g2,
            };
            table.push(vec![x, y, g1, g2, log_or_neg_inf(selected), ratio(g2, g1)]);
        }
    }
    if self_test {
        for k in spot_rows(table.rows.len()) {
            let row = &table.rows[k];
            let (g1, g2) = family_gems_direct(family, row[0], row[1])?;
            check(&format!("scan3 row {k} g1"), row[2], g1)?;
            check(&format!("scan3 row {k} g2"), row[3], g2)?;
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldRun {
    pub table: Table,
    pub coefficients: AsymptoticCoefficients,
}

impl FieldRun {
    pub fn summary(&self) -> String {
        let k = &self.coefficients;
        format!(
            "tau={:.8e} p={}\nkappa1={:.8e}\nkappa2={:.8e}\nkappa3={:.8e}\nkappa4={:.8e}\n",
            k.tau, k.p, k.kappa1, k.kappa2, k.kappa3, k.kappa4
        )
    }
}

/// Exact versus asymptotic field GEM for each `n` (`N = 2n + 1` sites).
pub fn cmd_field(
    ns: &[usize],
    mass: f64,
    radius: f64,
    p: u8,
    self_test: bool,
) -> Result<FieldRun, CliError> {
    if ns.is_empty() {
        return Err(CliError::Input("empty n list".into()));
    }
    if !(mass > 0.0 && radius > 0.0) {
        return Err(CliError::Input("mass and radius must be positive".into()));
    }
    if p > 1 {
        return Err(CliError::Input("asymptotic cutoff must be 0 or 1".into()));
    }
    let coefficients = asymptotic_coefficients(mass * radius, p)?;
    let mut table = Table::new(vec!["n", "gem_exact", "gem_asymptotic", "rel_error"]);
    for &n in ns {
        if n == 0 {
            return Err(CliError::Input("n must be at least 1".into()));
        }
        let cfg = LatticeFieldConfig::new(n, mass, radius)?;
        let exact = gem_field_exact(&cfg);
        let asym = gem_field_asymptotic(n, cfg.tau(), p)?;
        let rel = if exact > 0.0 {
            ((asym - exact) / exact).abs()
        } else {
            f64::NAN
        };
        table.push(vec![n as f64, exact, asym, rel]);
    }
    if self_test {
        for k in spot_rows(table.rows.len()) {
            let n = table.rows[k][0] as usize;
            let cfg = LatticeFieldConfig::new(n, mass, radius)?;
            if cfg.modes() > SELF_TEST_MAX_SITES {
                continue;
            }
            let direct = gem_from_purity(&field_covariance(&cfg)?)?;
            check(&format!("field n={n}"), table.rows[k][1], direct)?;
        }
    }
    Ok(FieldRun {
        table,
        coefficients,
    })
}

/// Converts site counts to `n`, rejecting even counts.
pub fn modes_to_n(modes: &[usize]) -> Result<Vec<usize>, CliError> {
    modes
        .iter()
        .map(|&m| {
            if m % 2 == 0 {
                Err(CliError::Input(format!(
                    "number of sites must be odd, got {m}"
                )))
            } else {
                Ok(m / 2)
            }
        })
        .collect()
}
