//! Bayes factor `BF01` for `H0: p <= p0` against `H1: p > p0` and the
//! critical success counts it induces.

use crate::error::{domain, Result};
use crate::predictive::{DesignPrior, TruncatedBeta};

/// The one-sided hypotheses `H0: p <= p0` and `H1: p > p0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hypotheses {
    p0: f64,
}

impl Hypotheses {
    pub fn new(p0: f64) -> Result<Self> {
        if !(p0 > 0.0 && p0 < 1.0) {
            return domain(format!("p0 must lie in (0, 1), got {p0}"));
        }
        Ok(Self { p0 })
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }
}

/// Truncated Beta priors on the two hypothesis regions, used inside the
/// Bayes factor once data are in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisPrior {
    hyp: Hypotheses,
    h0: TruncatedBeta,
    h1: TruncatedBeta,
}

impl AnalysisPrior {
    /// Flat priors on `[0, p0]` and `[p0, 1]`.
    pub fn flat(hyp: Hypotheses) -> Self {
        Self::new(hyp, 1.0, 1.0, 1.0, 1.0).expect("flat priors are always valid")
    }

    /// `Beta(a0, b0)` on `[0, p0]` and `Beta(a1, b1)` on `[p0, 1]`.
    pub fn new(hyp: Hypotheses, a0: f64, b0: f64, a1: f64, b1: f64) -> Result<Self> {
        let h0 = TruncatedBeta::new(a0, b0, 0.0, hyp.p0)?;
        let h1 = TruncatedBeta::new(a1, b1, hyp.p0, 1.0)?;
        Ok(Self { hyp, h0, h1 })
    }

    pub fn hypotheses(&self) -> Hypotheses {
        self.hyp
    }

    pub fn p0(&self) -> f64 {
        self.hyp.p0
    }

    pub fn h0(&self) -> &TruncatedBeta {
        &self.h0
    }

    pub fn h1(&self) -> &TruncatedBeta {
        &self.h1
    }

    /// `ln BF01` at `y` of `n`. The binomial coefficient cancels.
    pub(crate) fn ln_bf01(&self, y: usize, n: usize) -> f64 {
        self.h0.ln_moment(y, n - y) - self.h1.ln_moment(y, n - y)
    }
}

fn check_counts(y: usize, n: usize) -> Result<()> {
    if n == 0 {
        return domain("sample size must be at least 1");
    }
    if y > n {
        return domain(format!("success count {y} exceeds sample size {n}"));
    }
    Ok(())
}

/// Marginal likelihood `f(y | H)` of `y` successes out of `n` under a
/// region prior.
pub fn marginal_likelihood(y: usize, n: usize, region_prior: &TruncatedBeta) -> Result<f64> {
    check_counts(y, n)?;
    Ok(DesignPrior::Truncated(*region_prior).ln_predictive(y, n).exp())
}

/// `BF01 = f(y | H0) / f(y | H1)`.
pub fn bf01(y: usize, n: usize, ap: &AnalysisPrior) -> Result<f64> {
    ln_bf01(y, n, ap).map(f64::exp)
}

/// `ln BF01`, finite even where `BF01` itself would overflow.
pub fn ln_bf01(y: usize, n: usize, ap: &AnalysisPrior) -> Result<f64> {
    check_counts(y, n)?;
    Ok(ap.ln_bf01(y, n))
}

/// Critical counts at one sample size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CriticalValues {
    /// Smallest `y` with `BF01 < k`.
    pub efficacy: Option<usize>,
    /// Largest `y` with `BF01 > k_f`.
    pub futility: Option<usize>,
}

impl CriticalValues {
    pub fn new(n: usize, k: f64, k_f: f64, ap: &AnalysisPrior) -> Result<Self> {
        Ok(Self {
            efficacy: critical_efficacy(n, k, ap)?,
            futility: critical_futility(n, k_f, ap)?,
        })
    }
}

/// Smallest `y` in `0..=n` with `BF01(y) < k`, found by a full ascending scan.
pub fn critical_efficacy(n: usize, k: f64, ap: &AnalysisPrior) -> Result<Option<usize>> {
    if n == 0 {
        return domain("sample size must be at least 1");
    }
    if !(k > 0.0 && k < 1.0) {
        return domain(format!("evidence threshold k must lie in (0, 1), got {k}"));
    }
    let ln_k = k.ln();
    Ok((0..=n).find(|&y| ap.ln_bf01(y, n) < ln_k))
}

/// Largest `y` in `0..=n` with `BF01(y) > k_f`, found by a full descending scan.
pub fn critical_futility(n: usize, k_f: f64, ap: &AnalysisPrior) -> Result<Option<usize>> {
    if n == 0 {
        return domain("sample size must be at least 1");
    }
    if !(k_f > 1.0 && k_f.is_finite()) {
        return domain(format!("futility threshold k_f must exceed 1, got {k_f}"));
    }
    let ln_kf = k_f.ln();
    Ok((0..=n).rev().find(|&y| ap.ln_bf01(y, n) > ln_kf))
}
