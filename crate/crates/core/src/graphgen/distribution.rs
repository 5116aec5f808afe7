use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::{stream, task_rng};

/// Probability masses over positive degrees `1..=k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    // masses[k] is the probability of degree k; masses[0] is always zero.
    masses: Vec<f64>,
    gamma: Option<f64>,
    normalization: Option<f64>,
    mean: f64,
}

impl DegreeDistribution {
    /// `a_k = C k^-gamma` on `1..=k_max`, normalized on that support.
    pub fn power_law(gamma: f64, k_max: u64) -> Result<Self> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::invalid(
                "gamma",
                format!("must exceed 1, got {gamma}"),
            ));
        }
        if k_max < 2 {
            return Err(Error::invalid(
                "k_max",
                format!("must be at least 2, got {k_max}"),
            ));
        }
        let mut masses = vec![0.0; k_max as usize + 1];
        // Sum smallest terms first.
        let mut total = 0.0;
        for k in (1..=k_max as usize).rev() {
            let w = (k as f64).powf(-gamma);
            masses[k] = w;
            total += w;
        }
        let c = 1.0 / total;
        masses.iter_mut().for_each(|m| *m *= c);
        let mean = mean_of(&masses);
        Ok(DegreeDistribution {
            masses,
            gamma: Some(gamma),
            normalization: Some(c),
            mean,
        })
    }

    /// Normalizes arbitrary nonnegative weights indexed by degree.
    pub fn from_weights(weights: impl IntoIterator<Item = (u64, f64)>) -> Result<Self> {
        let mut masses = vec![0.0];
        for (k, w) in weights {
            if k == 0 {
                return Err(Error::invalid("weights", "degrees must be positive"));
            }
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::invalid(
                    "weights",
                    format!("weight {w} at degree {k}"),
                ));
            }
            if masses.len() <= k as usize {
                masses.resize(k as usize + 1, 0.0);
            }
            masses[k as usize] += w;
        }
        let total: f64 = masses.iter().sum();
        if !(total > 0.0) {
            return Err(Error::invalid("weights", "total weight must be positive"));
        }
        masses.iter_mut().for_each(|m| *m /= total);
        while masses.len() > 1 && *masses.last().unwrap() == 0.0 {
            masses.pop();
        }
        let mean = mean_of(&masses);
        Ok(DegreeDistribution {
            masses,
            gamma: None,
            normalization: None,
            mean,
        })
    }

    pub fn point_mass(k: u64) -> Result<Self> {
        Self::from_weights([(k, 1.0)])
    }

    pub fn mass(&self, k: u64) -> f64 {
        self.masses.get(k as usize).copied().unwrap_or(0.0)
    }

    /// Largest degree in the support array.
    pub fn k_max(&self) -> u64 {
        (self.masses.len() - 1) as u64
    }

    pub fn gamma(&self) -> Option<f64> {
        self.gamma
    }

    /// The constant `C` of a power-law instance.
    pub fn normalization(&self) -> Option<f64> {
        self.normalization
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// `(k, a_k)` over the support with nonzero mass.
    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0.0)
            .map(|(k, &m)| (k as u64, m))
    }

    /// Draws `n` i.i.d. degrees, then repairs an odd sum by incrementing one
    /// uniformly chosen entry.
    pub fn sample_degree_sequence(&self, n: usize, seed: u64) -> Result<Vec<u64>> {
        if n < 2 {
            return Err(Error::invalid("n", format!("must be at least 2, got {n}")));
        }
        let index = WeightedIndex::new(&self.masses)
            .map_err(|e| Error::invalid("distribution", e.to_string()))?;
        let mut rng = task_rng(seed, &[stream::DEGREES]);
        let mut degrees: Vec<u64> = (0..n).map(|_| index.sample(&mut rng) as u64).collect();
        if degrees.iter().sum::<u64>() % 2 == 1 {
            let v = rng.random_range(0..n);
            degrees[v] += 1;
        }
        Ok(degrees)
    }
}

fn mean_of(masses: &[f64]) -> f64 {
    masses
        .iter()
        .enumerate()
        .rev()
        .map(|(k, m)| k as f64 * m)
        .sum()
}

/// Convenience wrapper matching [`DegreeDistribution::power_law`].
pub fn power_law_distribution(gamma: f64, k_max: u64) -> Result<DegreeDistribution> {
    DegreeDistribution::power_law(gamma, k_max)
}

pub fn sample_degree_sequence(dist: &DegreeDistribution, n: usize, seed: u64) -> Result<Vec<u64>> {
    dist.sample_degree_sequence(n, seed)
}
