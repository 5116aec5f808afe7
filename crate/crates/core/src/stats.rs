//! Degree CCDFs, power-law exponent fits, and degree-band stratification.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphgen::Graph;
use crate::rng::{stream, task_rng};

/// Fewest points (regression) or tail samples (MLE) a fit will accept.
pub const MIN_FIT_SAMPLES: usize = 10;

/// Fraction of samples with degree `>= k`, at each observed degree `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ccdf {
    pub points: Vec<(u64, f64)>,
    pub n: u64,
}

impl Ccdf {
    /// Right-continuous step evaluation: 1 below the support, 0 above it.
    pub fn eval(&self, k: u64) -> f64 {
        let idx = self.points.partition_point(|&(d, _)| d < k);
        self.points.get(idx).map_or(0.0, |&(_, f)| f)
    }

    /// Recovers per-degree counts from successive differences.
    pub fn histogram(&self) -> BTreeMap<u64, u64> {
        let n = self.n as f64;
        self.points
            .iter()
            .enumerate()
            .map(|(i, &(k, f))| {
                let next = self.points.get(i + 1).map_or(0.0, |p| p.1);
                (k, ((f - next) * n).round() as u64)
            })
            .collect()
    }

    pub fn write_csv(&self, out: &mut impl Write) -> Result<()> {
        writeln!(out, "degree,ccdf")?;
        for &(k, f) in &self.points {
            writeln!(out, "{k},{f}")?;
        }
        Ok(())
    }
}

pub fn ccdf(hist: &BTreeMap<u64, u64>) -> Result<Ccdf> {
    let n: u64 = hist.values().sum();
    if n == 0 {
        return Err(Error::InsufficientData {
            what: "ccdf",
            needed: 1,
            got: 0,
        });
    }
    let mut points: Vec<(u64, f64)> = Vec::with_capacity(hist.len());
    let mut above = 0u64;
    for (&k, &count) in hist.iter().rev() {
        if count == 0 {
            continue;
        }
        above += count;
        points.push((k, above as f64 / n as f64));
    }
    points.reverse();
    Ok(Ccdf { points, n })
}

/// Pointwise mean of step functions over the union of their supports.
pub fn average_ccdf(curves: &[Ccdf]) -> Result<Ccdf> {
    if curves.is_empty() {
        return Err(Error::InsufficientData {
            what: "average_ccdf",
            needed: 1,
            got: 0,
        });
    }
    let mut support: Vec<u64> = curves
        .iter()
        .flat_map(|c| c.points.iter().map(|p| p.0))
        .collect();
    support.sort_unstable();
    support.dedup();
    let m = curves.len() as f64;
    let points = support
        .into_iter()
        .map(|k| (k, curves.iter().map(|c| c.eval(k)).sum::<f64>() / m))
        .collect();
    Ok(Ccdf {
        points,
        n: curves.iter().map(|c| c.n).sum(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMethod {
    LoglogRegressionCcdf,
    MleHill,
}

impl fmt::Display for FitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitMethod::LoglogRegressionCcdf => "loglog_regression_ccdf",
            FitMethod::MleHill => "mle_hill",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub gamma_hat: f64,
    pub k_min: u64,
    pub method: FitMethod,
    /// Coefficient of determination; regression only.
    pub r_squared: Option<f64>,
    pub standard_error: f64,
    /// Regression points or MLE tail samples used.
    pub sample_size: usize,
}

/// Resamples behind a regression fit's standard error.
pub const BOOTSTRAP_REPLICATES: usize = 200;

/// Least-squares line through `(ln k, ln F(k))` for every CCDF point with
/// `k >= k_min`. A degree law `k^-gamma` has CCDF slope `1 - gamma`.
///
/// CCDF points are cumulative and strongly correlated, so the textbook OLS
/// slope error understates the real spread several times over. The reported
/// standard error instead comes from a fixed-seed bootstrap of the tail
/// samples recovered from the curve.
pub fn fit_gamma_regression(c: &Ccdf, k_min: u64) -> Result<PowerLawFit> {
    let k_min_eff = k_min.max(1);
    let tail = c
        .points
        .iter()
        .copied()
        .filter(|&(k, f)| k >= k_min_eff && f > 0.0);
    let (slope, r_squared, ols_error, used) = loglog_line(tail).ok_or(Error::InsufficientData {
        what: "loglog regression points",
        needed: MIN_FIT_SAMPLES,
        got: c
            .points
            .iter()
            .filter(|&&(k, f)| k >= k_min_eff && f > 0.0)
            .count(),
    })?;
    let gamma_hat = 1.0 - slope;
    if !(gamma_hat > 1.0) {
        return Err(Error::invalid(
            "ccdf",
            format!("fitted exponent {gamma_hat} is not above 1; tail is not power-law shaped"),
        ));
    }
    let standard_error = bootstrap_slope_error(c, k_min_eff).unwrap_or(ols_error);
    Ok(PowerLawFit {
        gamma_hat,
        k_min,
        method: FitMethod::LoglogRegressionCcdf,
        r_squared: Some(r_squared),
        standard_error,
        sample_size: used,
    })
}

/// Slope, r², OLS slope error, and point count; `None` below the point minimum.
fn loglog_line(points: impl Iterator<Item = (u64, f64)>) -> Option<(f64, f64, f64, usize)> {
    let pts: Vec<(f64, f64)> = points.map(|(k, f)| ((k as f64).ln(), f.ln())).collect();
    if pts.len() < MIN_FIT_SAMPLES {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let ss_res = (syy - slope * sxy).max(0.0);
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    Some((
        slope,
        r_squared,
        (ss_res / (n - 2.0) / sxx).sqrt(),
        pts.len(),
    ))
}

/// Standard deviation of the refitted slope over multinomial resamples of
/// the tail counts. The head only shifts `ln F` by a constant, so it is not
/// resampled.
fn bootstrap_slope_error(c: &Ccdf, k_min: u64) -> Option<f64> {
    let tail: Vec<(u64, u64)> = c
        .histogram()
        .into_iter()
        .filter(|&(k, n)| k >= k_min && n > 0)
        .collect();
    let total: u64 = tail.iter().map(|t| t.1).sum();
    if tail.len() < MIN_FIT_SAMPLES {
        return None;
    }
    let pick = WeightedIndex::new(tail.iter().map(|t| t.1)).ok()?;
    let mut rng = task_rng(0, &[stream::BOOTSTRAP]);
    let mut counts = vec![0u64; tail.len()];
    let mut slopes = Vec::with_capacity(BOOTSTRAP_REPLICATES);
    for _ in 0..BOOTSTRAP_REPLICATES {
        counts.iter_mut().for_each(|x| *x = 0);
        for _ in 0..total {
            counts[pick.sample(&mut rng)] += 1;
        }
        let mut above = total;
        let points = tail.iter().zip(&counts).filter_map(|(&(k, _), &n)| {
            let f = above as f64 / total as f64;
            above -= n;
            (n > 0).then_some((k, f))
        });
        if let Some((slope, ..)) = loglog_line(points) {
            slopes.push(slope);
        }
    }
    if slopes.len() < 2 {
        return None;
    }
    let m = slopes.len() as f64;
    let mean = slopes.iter().sum::<f64>() / m;
    Some((slopes.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (m - 1.0)).sqrt())
}

/// Continuous-approximation maximum likelihood (Hill form) for a discrete
/// tail: `1 + n / sum ln(k_i / (k_min - 1/2))` over samples `k_i >= k_min`.
pub fn fit_gamma_mle(degrees: &[u64], k_min: u64) -> Result<PowerLawFit> {
    if k_min == 0 {
        return Err(Error::invalid("k_min", "must be at least 1"));
    }
    let shift = k_min as f64 - 0.5;
    let mut n_tail = 0usize;
    let mut log_sum = 0.0;
    let mut all_at_min = true;
    for &k in degrees.iter().filter(|&&k| k >= k_min) {
        n_tail += 1;
        log_sum += (k as f64 / shift).ln();
        all_at_min &= k == k_min;
    }
    if n_tail < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientData {
            what: "MLE tail samples",
            needed: MIN_FIT_SAMPLES,
            got: n_tail,
        });
    }
    if all_at_min {
        return Err(Error::DegenerateTail);
    }
    let gamma_hat = 1.0 + n_tail as f64 / log_sum;
    Ok(PowerLawFit {
        gamma_hat,
        k_min,
        method: FitMethod::MleHill,
        r_squared: None,
        standard_error: (gamma_hat - 1.0) / (n_tail as f64).sqrt(),
        sample_size: n_tail,
    })
}

/// Inclusive degree range; `hi = None` means unbounded. Serialized as
/// `[lo, hi]` with `null` for an open upper end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(u64, Option<u64>)", into = "(u64, Option<u64>)")]
pub struct DegreeBand {
    pub lo: u64,
    pub hi: Option<u64>,
}

impl DegreeBand {
    pub fn new(lo: u64, hi: Option<u64>) -> Self {
        DegreeBand { lo, hi }
    }

    pub fn contains(&self, k: u64) -> bool {
        k >= self.lo && self.hi.is_none_or(|hi| k <= hi)
    }

    fn overlaps(&self, other: &DegreeBand) -> bool {
        let hi = |b: &DegreeBand| b.hi.unwrap_or(u64::MAX);
        self.lo <= hi(other) && other.lo <= hi(self)
    }
}

impl From<(u64, Option<u64>)> for DegreeBand {
    fn from((lo, hi): (u64, Option<u64>)) -> Self {
        DegreeBand { lo, hi }
    }
}

impl From<DegreeBand> for (u64, Option<u64>) {
    fn from(b: DegreeBand) -> Self {
        (b.lo, b.hi)
    }
}

impl fmt::Display for DegreeBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(hi) => write!(f, "[{}, {}]", self.lo, hi),
            None => write!(f, "[{}, inf)", self.lo),
        }
    }
}

/// Low / medium / high root-degree groups: `[1, 35]`, `[36, 70]`, `[71, inf)`.
pub fn default_bands() -> Vec<DegreeBand> {
    vec![
        DegreeBand::new(1, Some(35)),
        DegreeBand::new(36, Some(70)),
        DegreeBand::new(71, None),
    ]
}

pub fn validate_bands(bands: &[DegreeBand]) -> Result<()> {
    for b in bands {
        if b.hi.is_some_and(|hi| hi < b.lo) {
            return Err(Error::invalid("group_bounds", format!("empty band {b}")));
        }
    }
    for (i, a) in bands.iter().enumerate() {
        for b in &bands[i + 1..] {
            if a.overlaps(b) {
                return Err(Error::OverlappingBounds {
                    first: a.to_string(),
                    second: b.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Vertex ids whose graph degree falls in each band, in increasing id order.
pub fn stratify_by_degree(g: &Graph, bands: &[DegreeBand]) -> Result<Vec<Vec<usize>>> {
    validate_bands(bands)?;
    let mut groups = vec![Vec::new(); bands.len()];
    for v in 0..g.vertex_count() {
        let d = g.degree(v) as u64;
        if let Some(i) = bands.iter().position(|b| b.contains(d)) {
            groups[i].push(v);
        }
    }
    Ok(groups)
}
