//! Exact operating characteristics of a two-stage design.
//!
//! The design stops at the interim look when `BF01 > k_f` on the first
//! `n1` patients and otherwise runs to `n2`, where `BF01 < k` declares
//! efficacy. There is no early efficacy stop.
//!
//! The unconditional rate `P(BF01(n2) < k)` counts paths the interim look
//! would have cut off: interim futility followed by a swing to efficacy.
//! The *futility-erased* probability of exactly those paths is
//!
//! ```text
//! sum_{y1 = 0}^{c_fut(n1)}  sum_{y2 = c_eff(n2) - y1}^{n2 - n1}  f(y1, y2)
//! ```
//!
//! with `f` the joint predictive pmf of the two batches, and the adjusted
//! rate is the unconditional rate minus it. Under the null design prior
//! this gives the type-I error, under the alternative the power.

use crate::bayes_factor::{critical_efficacy, critical_futility, AnalysisPrior};
use crate::error::{domain, Error, Result};
use crate::predictive::{DesignPrior, PredictivePmf};

/// Tolerance below zero an adjusted rate may reach before it is treated as
/// an internal inconsistency.
pub const NEGATIVE_RATE_TOLERANCE: f64 = 1e-12;

/// Interim and final sample sizes plus the two evidence thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoStageDesign {
    pub n1: usize,
    pub n2: usize,
    /// Final analysis declares efficacy when `BF01 < k`.
    pub k: f64,
    /// Interim analysis stops for futility when `BF01 > k_f`.
    pub k_f: f64,
}

impl TwoStageDesign {
    pub fn new(n1: usize, n2: usize, k: f64, k_f: f64) -> Result<Self> {
        if n1 == 0 || n1 >= n2 {
            return domain(format!("need 1 <= n1 < n2, got n1 = {n1}, n2 = {n2}"));
        }
        check_thresholds(k, k_f)?;
        Ok(Self { n1, n2, k, k_f })
    }

    /// Size of the second batch.
    pub fn second_batch(&self) -> usize {
        self.n2 - self.n1
    }
}

pub(crate) fn check_thresholds(k: f64, k_f: f64) -> Result<()> {
    if !(k > 0.0 && k < 1.0) {
        return domain(format!("evidence threshold k must lie in (0, 1), got {k}"));
    }
    if !(k_f > 1.0 && k_f.is_finite()) {
        return domain(format!("futility threshold k_f must exceed 1, got {k_f}"));
    }
    Ok(())
}

/// Design priors for the two hypotheses.
///
/// The null prior drives type-I error and `E[N | H0]`; the alternative
/// prior drives power and `E[N | H1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignPriors {
    pub null: DesignPrior,
    pub alt: DesignPrior,
}

impl DesignPriors {
    /// Point mass at `p0` under the null, `alt` under the alternative.
    pub fn new(p0: f64, alt: DesignPrior) -> Result<Self> {
        Ok(Self {
            null: DesignPrior::point(p0)?,
            alt,
        })
    }
}

/// Interim outcome probabilities: `BF01 < k`, `k <= BF01 <= k_f`, `BF01 > k_f`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Branches {
    pub efficacy: f64,
    pub indecisive: f64,
    pub futility: f64,
}

impl Branches {
    pub fn total(&self) -> f64 {
        self.efficacy + self.indecisive + self.futility
    }
}

/// Everything the design promises, under both hypotheses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingCharacteristics {
    pub type_i_unadjusted: f64,
    pub type_i_adjusted: f64,
    pub power_unadjusted: f64,
    pub power_adjusted: f64,
    pub futility_erased_power: f64,
    pub futility_erased_type_i: f64,
    /// Probability of compelling evidence for `H0` at the interim look
    /// under a point prior at `p0`.
    pub pce_p0: f64,
    pub e_n_h0: f64,
    pub e_n_h1: f64,
    pub branch_h0: Branches,
    pub branch_h1: Branches,
}

/// `P(BF01(n1) > k_f)` under `prior`; zero when no count reaches `k_f`.
pub fn prob_futility_stop(
    n1: usize,
    k_f: f64,
    ap: &AnalysisPrior,
    prior: &DesignPrior,
) -> Result<f64> {
    Ok(match critical_futility(n1, k_f, ap)? {
        Some(c) => PredictivePmf::new(n1, prior)?.cdf(c),
        None => 0.0,
    })
}

/// `P(BF01(n2) < k)` under `prior`, ignoring the interim look.
pub fn unadjusted_rate(n2: usize, k: f64, ap: &AnalysisPrior, prior: &DesignPrior) -> Result<f64> {
    Ok(match critical_efficacy(n2, k, ap)? {
        Some(c) => PredictivePmf::new(n2, prior)?.upper_tail(c),
        None => 0.0,
    })
}

/// Joint probability of stopping for futility at `n1` and yet reaching
/// `BF01 < k` at `n2` had the trial gone on.
pub fn futility_erased(
    design: &TwoStageDesign,
    ap: &AnalysisPrior,
    prior: &DesignPrior,
) -> Result<f64> {
    let (Some(fut), Some(eff)) = (
        critical_futility(design.n1, design.k_f, ap)?,
        critical_efficacy(design.n2, design.k, ap)?,
    ) else {
        return Ok(0.0);
    };
    let m = design.second_batch();
    let mut total = 0.0;
    for y1 in 0..=fut {
        let start = eff.saturating_sub(y1);
        for y2 in start..=m {
            total += prior.ln_joint(y1, y2, design.n1, m).exp();
        }
    }
    Ok(total)
}

/// Unconditional rate at `n2` minus the futility-erased part.
pub fn adjusted_rate(
    design: &TwoStageDesign,
    ap: &AnalysisPrior,
    prior: &DesignPrior,
) -> Result<f64> {
    let unadjusted = unadjusted_rate(design.n2, design.k, ap, prior)?;
    let erased = futility_erased(design, ap, prior)?;
    adjust(unadjusted, erased)
}

pub(crate) fn adjust(unadjusted: f64, erased: f64) -> Result<f64> {
    let value = unadjusted - erased;
    if value < -NEGATIVE_RATE_TOLERANCE {
        return Err(Error::NegativeAdjustedRate {
            value,
            unadjusted,
            erased,
        });
    }
    Ok(value.max(0.0))
}

/// `E[N] = n2 - (n2 - n1) P(stop at n1)`.
pub fn expected_n(
    n1: usize,
    n2: usize,
    k_f: f64,
    ap: &AnalysisPrior,
    prior: &DesignPrior,
) -> Result<f64> {
    if n1 == 0 || n1 >= n2 {
        return domain(format!("need 1 <= n1 < n2, got n1 = {n1}, n2 = {n2}"));
    }
    let stop = prob_futility_stop(n1, k_f, ap, prior)?;
    Ok(expected_n_from_stop(n1, n2, stop))
}

pub(crate) fn expected_n_from_stop(n1: usize, n2: usize, stop: f64) -> f64 {
    n2 as f64 - (n2 - n1) as f64 * stop
}

/// Interim branch probabilities under `prior`.
pub fn branch_probabilities(
    n1: usize,
    k: f64,
    k_f: f64,
    ap: &AnalysisPrior,
    prior: &DesignPrior,
) -> Result<Branches> {
    check_thresholds(k, k_f)?;
    let pmf = PredictivePmf::new(n1, prior)?;
    let eff = critical_efficacy(n1, k, ap)?;
    let fut = critical_futility(n1, k_f, ap)?;
    Ok(branches_from(&pmf, eff, fut))
}

pub(crate) fn branches_from(
    pmf: &PredictivePmf,
    eff: Option<usize>,
    fut: Option<usize>,
) -> Branches {
    let efficacy = eff.map_or(0.0, |c| pmf.upper_tail(c));
    let futility = fut.map_or(0.0, |c| pmf.cdf(c));
    // The middle band is summed directly rather than as 1 - rest.
    let lo = fut.map_or(0, |c| c + 1);
    let hi = eff.unwrap_or(pmf.n() + 1);
    let indecisive = if lo < hi {
        pmf.mass()[lo..hi].iter().sum()
    } else {
        0.0
    };
    Branches {
        efficacy,
        indecisive,
        futility,
    }
}

/// All characteristics of `design`, computed along the closed-form route.
pub fn operating_characteristics(
    design: &TwoStageDesign,
    ap: &AnalysisPrior,
    priors: &DesignPriors,
) -> Result<OperatingCharacteristics> {
    let type_i_unadjusted = unadjusted_rate(design.n2, design.k, ap, &priors.null)?;
    let futility_erased_type_i = futility_erased(design, ap, &priors.null)?;
    let power_unadjusted = unadjusted_rate(design.n2, design.k, ap, &priors.alt)?;
    let futility_erased_power = futility_erased(design, ap, &priors.alt)?;
    let p0_prior = DesignPrior::point(ap.p0())?;
    let branch_h0 = branch_probabilities(design.n1, design.k, design.k_f, ap, &priors.null)?;
    let branch_h1 = branch_probabilities(design.n1, design.k, design.k_f, ap, &priors.alt)?;
    Ok(OperatingCharacteristics {
        type_i_unadjusted,
        type_i_adjusted: adjust(type_i_unadjusted, futility_erased_type_i)?,
        power_unadjusted,
        power_adjusted: adjust(power_unadjusted, futility_erased_power)?,
        futility_erased_power,
        futility_erased_type_i,
        pce_p0: prob_futility_stop(design.n1, design.k_f, ap, &p0_prior)?,
        e_n_h0: expected_n_from_stop(design.n1, design.n2, branch_h0.futility),
        e_n_h1: expected_n_from_stop(design.n1, design.n2, branch_h1.futility),
        branch_h0,
        branch_h1,
    })
}
