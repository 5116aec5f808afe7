//! Power series `sum_k k^-s x^k` on bounded or unbounded support.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Additive tail bound every unbounded summation must reach.
pub const TAIL_TOLERANCE: f64 = 1e-13;

/// Hard cap on the number of summed terms.
pub const MAX_TERMS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    /// Degrees `1..=k_max`.
    Truncated(u64),
    /// All positive degrees.
    Unbounded,
}

// B_2m / (2m)! for m = 1..=8.
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

/// Hurwitz zeta `sum_{j>=0} (j + a)^-s` for `s > 1`, `a > 0`, by
/// Euler-Maclaurin summation after 16 explicit terms.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    assert!(s > 1.0 && a > 0.0, "hurwitz_zeta needs s > 1 and a > 0");
    const HEAD: usize = 16;
    let head: f64 = (0..HEAD).rev().map(|j| (a + j as f64).powf(-s)).sum();
    let x = a + HEAD as f64;
    let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    let mut rising = s; // s (s+1) ... (s + 2m - 2)
    let mut power = x.powf(-s - 1.0);
    let inv_x2 = 1.0 / (x * x);
    for (m, coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        tail += coef * rising * power;
        let next = 2.0 * m as f64 + 1.0;
        rising *= (s + next) * (s + next + 1.0);
        power *= inv_x2;
    }
    head + tail
}

/// Riemann zeta for `s > 1`.
pub fn zeta(s: f64) -> f64 {
    hurwitz_zeta(s, 1.0)
}

/// `sum_{k >= 1} k^-s x^k` over `support`, for `0 <= x <= 1`.
///
/// Unbounded support at `x = 1` is `zeta(s)` and needs `s > 1`. For `x < 1`
/// terms are added until the integral bound on the remainder,
/// `K^-s x^K / -ln(x)`, falls below [`TAIL_TOLERANCE`].
pub fn power_series(s: f64, x: f64, support: Support) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid("x", format!("must lie in [0, 1], got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    match support {
        Support::Truncated(k_max) => {
            let mut sum = 0.0;
            let mut xk = 1.0;
            for k in 1..=k_max {
                xk *= x;
                if xk == 0.0 {
                    break;
                }
                sum += (k as f64).powf(-s) * xk;
            }
            Ok(sum)
        }
        Support::Unbounded if x == 1.0 => {
            if s <= 1.0 {
                return Err(Error::invalid(
                    "s",
                    format!("series diverges at x = 1 for s = {s}"),
                ));
            }
            Ok(zeta(s))
        }
        Support::Unbounded => {
            let neg_log = -x.ln();
            let mut sum = 0.0;
            let mut xk = 1.0;
            for k in 1..=MAX_TERMS {
                xk *= x;
                let term = (k as f64).powf(-s) * xk;
                sum += term;
                if term / neg_log < TAIL_TOLERANCE {
                    return Ok(sum);
                }
            }
            Err(Error::SummationCap {
                x,
                tolerance: TAIL_TOLERANCE,
                cap: MAX_TERMS,
            })
        }
    }
}
