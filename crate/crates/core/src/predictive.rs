//! Design priors and the prior-predictive distribution of success counts.
//!
//! Under a truncated `Beta(a, b)` law on `[l, u]`, a batch of `n` Bernoulli
//! outcomes has predictive mass
//!
//! ```text
//! C(n, y) B(a + y, b + n - y) [I_u - I_l](a + y, b + n - y) / (B(a, b) [I_u - I_l](a, b))
//! ```
//!
//! and two batches sharing the same latent success probability have the
//! analogous joint mass with `y = y1 + y2`, `n = n1 + m`. A point prior is
//! kept as an exact special case: the batches are then independent binomials.

use std::fmt;

use crate::error::{domain, Result};
use crate::special::{ln_beta_interval_mass, ln_beta_unchecked, ln_choose};

/// A `Beta(a, b)` law truncated to `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedBeta {
    a: f64,
    b: f64,
    lower: f64,
    upper: f64,
    ln_norm: f64,
}

impl TruncatedBeta {
    pub fn new(a: f64, b: f64, lower: f64, upper: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return domain(format!("Beta shapes must be positive, got a = {a}, b = {b}"));
        }
        if !(0.0 <= lower && lower < upper && upper <= 1.0) {
            return domain(format!(
                "truncation must satisfy 0 <= l < u <= 1, got [{lower}, {upper}]"
            ));
        }
        let ln_mass = ln_beta_interval_mass(a, b, lower, upper);
        if !ln_mass.is_finite() {
            return domain(format!(
                "Beta({a}, {b}) puts no mass on [{lower}, {upper}]"
            ));
        }
        Ok(Self {
            a,
            b,
            lower,
            upper,
            ln_norm: ln_beta_unchecked(a, b) + ln_mass,
        })
    }

    /// Untruncated flat prior on `[lower, upper]`.
    pub fn flat(lower: f64, upper: f64) -> Result<Self> {
        Self::new(1.0, 1.0, lower, upper)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// `ln ∫ θ^s (1-θ)^f · prior(θ) dθ` for `s` successes and `f` failures.
    pub(crate) fn ln_moment(&self, successes: usize, failures: usize) -> f64 {
        let a = self.a + successes as f64;
        let b = self.b + failures as f64;
        ln_beta_unchecked(a, b) + ln_beta_interval_mass(a, b, self.lower, self.upper)
            - self.ln_norm
    }
}

impl fmt::Display for TruncatedBeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Beta_[{}, {}]({}, {})",
            self.lower, self.upper, self.a, self.b
        )
    }
}

/// Distribution of the success probability used when planning the trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DesignPrior {
    PointMass(f64),
    Truncated(TruncatedBeta),
}

impl DesignPrior {
    pub fn point(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return domain(format!("point prior must lie in [0, 1], got {p}"));
        }
        Ok(DesignPrior::PointMass(p))
    }

    pub fn truncated(a: f64, b: f64, lower: f64, upper: f64) -> Result<Self> {
        TruncatedBeta::new(a, b, lower, upper).map(DesignPrior::Truncated)
    }

    /// Log predictive mass of `y` successes out of `n`. No range checks.
    pub(crate) fn ln_predictive(&self, y: usize, n: usize) -> f64 {
        match self {
            DesignPrior::PointMass(p) => ln_binomial_pmf(y, n, *p),
            DesignPrior::Truncated(tb) => ln_choose(n, y) + tb.ln_moment(y, n - y),
        }
    }

    /// Log joint predictive mass of `y1` of `n1` and `y2` of `m`. No range checks.
    pub(crate) fn ln_joint(&self, y1: usize, y2: usize, n1: usize, m: usize) -> f64 {
        match self {
            DesignPrior::PointMass(p) => ln_binomial_pmf(y1, n1, *p) + ln_binomial_pmf(y2, m, *p),
            DesignPrior::Truncated(tb) => {
                let s = y1 + y2;
                ln_choose(n1, y1) + ln_choose(m, y2) + tb.ln_moment(s, n1 + m - s)
            }
        }
    }
}

impl fmt::Display for DesignPrior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignPrior::PointMass(p) => write!(f, "point mass at {p}"),
            DesignPrior::Truncated(tb) => tb.fmt(f),
        }
    }
}

fn ln_binomial_pmf(y: usize, n: usize, p: f64) -> f64 {
    // 0 ln 0 = 0 at the boundary probabilities.
    let succ = if y == 0 { 0.0 } else { y as f64 * p.ln() };
    let fail = if y == n { 0.0 } else { (n - y) as f64 * (-p).ln_1p() };
    ln_choose(n, y) + succ + fail
}

/// Predictive probability of `y` successes in a batch of `n`.
pub fn predictive_pmf(y: usize, n: usize, prior: &DesignPrior) -> Result<f64> {
    if n == 0 {
        return domain("batch size must be at least 1");
    }
    if y > n {
        return domain(format!("success count {y} exceeds batch size {n}"));
    }
    Ok(prior.ln_predictive(y, n).exp())
}

/// Joint predictive probability of `y1` successes in a first batch of `n1`
/// and `y2` in a second batch of `m`, both driven by one latent probability.
pub fn joint_predictive_pmf(
    y1: usize,
    y2: usize,
    n1: usize,
    m: usize,
    prior: &DesignPrior,
) -> Result<f64> {
    if n1 == 0 || m == 0 {
        return domain(format!("batch sizes must be at least 1, got n1 = {n1}, m = {m}"));
    }
    if y1 > n1 || y2 > m {
        return domain(format!(
            "success counts ({y1}, {y2}) exceed batch sizes ({n1}, {m})"
        ));
    }
    Ok(prior.ln_joint(y1, y2, n1, m).exp())
}

/// The full predictive distribution for one batch size.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictivePmf {
    n: usize,
    mass: Vec<f64>,
}

impl PredictivePmf {
    pub fn new(n: usize, prior: &DesignPrior) -> Result<Self> {
        if n == 0 {
            return domain("batch size must be at least 1");
        }
        let mass = (0..=n).map(|y| prior.ln_predictive(y, n).exp()).collect();
        Ok(Self { n, mass })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn get(&self, y: usize) -> f64 {
        self.mass[y]
    }

    /// `P(Y <= y)`.
    pub fn cdf(&self, y: usize) -> f64 {
        self.mass[..=y.min(self.n)].iter().sum()
    }

    /// `P(Y >= y)`; zero past the end.
    pub fn upper_tail(&self, y: usize) -> f64 {
        self.mass.get(y..).map_or(0.0, |tail| tail.iter().sum())
    }
}
