//! Closed-form evaluators for tree-sampled power-law graphs, each paired with
//! an exact summation where the closed form is an approximation.

mod series;

use serde::{Deserialize, Serialize};

pub use series::{hurwitz_zeta, power_series, zeta, Support, MAX_TERMS, TAIL_TOLERANCE};

use crate::error::{Error, Result};
use crate::graphgen::DegreeDistribution;

/// Power law `a_k = C k^-gamma` with `gamma > 2`, together with its
/// normalization `C` and mean degree `mu` computed on `support`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawModel {
    pub gamma: f64,
    pub normalization: f64,
    pub mean_degree: f64,
    pub support: Support,
}

impl PowerLawModel {
    pub fn new(gamma: f64, support: Support) -> Result<Self> {
        if !(gamma > 2.0) || !gamma.is_finite() {
            return Err(Error::invalid(
                "gamma",
                format!("must exceed 2, got {gamma}"),
            ));
        }
        if let Support::Truncated(k_max) = support {
            if k_max < 2 {
                return Err(Error::invalid(
                    "k_max",
                    format!("must be at least 2, got {k_max}"),
                ));
            }
        }
        let normalization = 1.0 / power_series(gamma, 1.0, support)?;
        let mean_degree = normalization * power_series(gamma - 1.0, 1.0, support)?;
        Ok(PowerLawModel {
            gamma,
            normalization,
            mean_degree,
            support,
        })
    }

    /// Zeta-normalized law on all positive degrees.
    pub fn unbounded(gamma: f64) -> Result<Self> {
        Self::new(gamma, Support::Unbounded)
    }

    pub fn truncated(gamma: f64, k_max: u64) -> Result<Self> {
        Self::new(gamma, Support::Truncated(k_max))
    }

    /// Model matching a power-law [`DegreeDistribution`].
    pub fn from_distribution(dist: &DegreeDistribution) -> Result<Self> {
        let gamma = dist
            .gamma()
            .ok_or_else(|| Error::invalid("dist", "not a power-law distribution"))?;
        Self::truncated(gamma, dist.k_max())
    }

    /// `C^2 / mu^2`.
    pub fn squared_mass_ratio(&self) -> f64 {
        (self.normalization / self.mean_degree).powi(2)
    }

    /// `sum_k k a_k x^k`.
    fn weighted(&self, x: f64) -> Result<f64> {
        Ok(self.normalization * power_series(self.gamma - 1.0, x, self.support)?)
    }
}

fn check_unit(name: &'static str, t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::invalid(name, format!("must lie in [0, 1], got {t}")));
    }
    Ok(())
}

/// `sum_k k^(1-gamma) t^k` by summation; the quantity the cubic approximates.
pub fn exact_power_sum(m: &PowerLawModel, t: f64) -> Result<f64> {
    check_unit("t", t)?;
    power_series(m.gamma - 1.0, t, m.support)
}

/// `sum_k k a_k t^k = C sum_k k^(1-gamma) t^k`; equals `mu` at `t = 1`.
pub fn exact_weighted_sum(m: &PowerLawModel, t: f64) -> Result<f64> {
    check_unit("t", t)?;
    m.weighted(t)
}

/// Cubic interpolant `t^3 / (gamma - 2)` of `sum_k k^(1-gamma) t^k`.
pub fn cubic_sum_approx(m: &PowerLawModel, t: f64) -> f64 {
    t.powi(3) / (m.gamma - 2.0)
}

pub fn pvis_cubic(t: f64) -> f64 {
    t.powi(3)
}

/// Visibility probability evaluated from the exact series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PvisValue {
    /// `raw` clamped to `[0, 1]`.
    pub value: f64,
    pub raw: f64,
    /// Set when `t <= 0`; the value is the limit 0 rather than a series value.
    pub origin_limit: bool,
}

/// `P_vis(t) = S(q) / S(t)` where `S(x) = sum_k k a_k x^k` and
/// `q = S(t) / (mu t)`, which is the direct sum
/// `(1/S(t)) sum_k k a_k t^k (S(t) / (mu t^2))^k` regrouped.
///
/// `q` lies in `[C/mu, 1]`, so both series converge. The raw value exceeds 1
/// for small `t` and is returned unclamped alongside the clamped one.
pub fn pvis_exact(m: &PowerLawModel, t: f64) -> Result<PvisValue> {
    if t > 1.0 || t.is_nan() {
        return Err(Error::invalid("t", format!("must not exceed 1, got {t}")));
    }
    if t <= 0.0 {
        return Ok(PvisValue {
            value: 0.0,
            raw: 0.0,
            origin_limit: true,
        });
    }
    let s_t = m.weighted(t)?;
    let q = (s_t / (m.mean_degree * t)).min(1.0);
    let raw = m.weighted(q)? / s_t;
    Ok(PvisValue {
        value: raw.clamp(0.0, 1.0),
        raw,
        origin_limit: false,
    })
}

/// `C^2 / mu^2`, a lower bound on `P_vis(t)` over `0 < t <= 1`.
pub fn pvis_lower_bound(m: &PowerLawModel) -> f64 {
    m.squared_mass_ratio()
}

/// `i (i - 1) / (i + 3)`.
pub fn expected_tree_degree(i: u64) -> f64 {
    let i = i as f64;
    i * (i - 1.0) / (i + 3.0)
}

/// `(i - 1) * E[P_vis(T)]` with `T` the maximum of `i` uniforms, integrated
/// numerically against the clamped exact visibility curve.
pub fn expected_tree_degree_from_pvis(m: &PowerLawModel, i: u64, panels: usize) -> Result<f64> {
    if i < 2 {
        return Ok(0.0);
    }
    let panels = panels.max(2) + panels % 2;
    let h = 1.0 / panels as f64;
    let i_f = i as f64;
    let f = |t: f64| -> Result<f64> { Ok(i_f * t.powf(i_f - 1.0) * pvis_exact(m, t)?.value) };
    // Composite Simpson.
    let mut acc = f(0.0)? + f(1.0)?;
    for j in 1..panels {
        let w = if j % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(j as f64 * h)?;
    }
    Ok((i_f - 1.0) * acc * h / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChernoffBound {
    /// `m = i (i - 1) / (2 (i + 3))`.
    pub threshold: f64,
    /// `exp(-i (i - 1) / (8 (i + 3)))`.
    pub epsilon: f64,
}

pub fn chernoff_threshold_and_eps(i: u64) -> ChernoffBound {
    let e = expected_tree_degree(i);
    ChernoffBound {
        threshold: e / 2.0,
        epsilon: (-e / 8.0).exp(),
    }
}

/// Markov bound `(1 - C^2/mu^2) / (1 - C^2/mu^2 + eps)` on the probability
/// that a vertex loses more than `(1 - C^2/mu^2 + eps) deg_G(v)` edges.
pub fn markov_rigorous_fraction(m: &PowerLawModel, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::invalid(
            "epsilon",
            format!("must be positive, got {epsilon}"),
        ));
    }
    let loss = 1.0 - m.squared_mass_ratio();
    if epsilon.is_infinite() {
        return Ok(0.0);
    }
    Ok(loss / (loss + epsilon))
}

/// Tail exponent the tree sample is predicted to show: unchanged.
pub fn predicted_tree_exponent(gamma: f64) -> Result<f64> {
    if !(gamma > 2.0 && gamma < 3.0) {
        return Err(Error::invalid(
            "gamma",
            format!("must lie in (2, 3), got {gamma}"),
        ));
    }
    Ok(gamma)
}

/// `|mu (gamma - 2) - C| / C`: how far the integral approximation
/// `mu (gamma - 2) ~ C` is from the exact sums.
pub fn mean_normalization_gap(m: &PowerLawModel) -> f64 {
    (m.mean_degree * (m.gamma - 2.0) - m.normalization).abs() / m.normalization
}
