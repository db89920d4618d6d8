//! Cached evaluation of many designs that share thresholds and priors.
//!
//! Given the total `s = y1 + y2`, the first-batch count is hypergeometric
//! whatever the prior on the success probability:
//!
//! ```text
//! f(y1, y2) = C(n1, y1) C(m, y2) / C(n2, s) * f_{n2}(s)
//! ```
//!
//! So the futility-erased mass only needs the single-batch predictive pmf at
//! `n2`, which is computed once per sample size and shared by every `n1`.
//! This is a different algebraic route from the direct double sum in
//! [`crate::operating`], and the two are tested against each other.

use rayon::prelude::*;

use crate::bayes_factor::{critical_efficacy, critical_futility, AnalysisPrior};
use crate::error::{domain, Result};
use crate::operating::{
    adjust, branches_from, check_thresholds, expected_n_from_stop, DesignPriors,
    OperatingCharacteristics, TwoStageDesign,
};
use crate::predictive::{DesignPrior, PredictivePmf};
use crate::special::ln_gamma;

/// The common inputs of a design search: analysis prior, design priors and
/// the two evidence thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignProblem {
    pub ap: AnalysisPrior,
    pub priors: DesignPriors,
    pub k: f64,
    pub k_f: f64,
}

impl DesignProblem {
    pub fn new(ap: AnalysisPrior, priors: DesignPriors, k: f64, k_f: f64) -> Result<Self> {
        check_thresholds(k, k_f)?;
        Ok(Self { ap, priors, k, k_f })
    }

    pub fn design(&self, n1: usize, n2: usize) -> Result<TwoStageDesign> {
        TwoStageDesign::new(n1, n2, self.k, self.k_f)
    }
}

#[derive(Debug, Clone)]
struct Level {
    efficacy: Option<usize>,
    futility: Option<usize>,
    null: PredictivePmf,
    alt: PredictivePmf,
    at_p0: PredictivePmf,
}

/// Per-sample-size tables up to a fixed limit. Immutable once built, so one
/// evaluator can be shared across threads.
#[derive(Debug, Clone)]
pub struct Evaluator {
    problem: DesignProblem,
    levels: Vec<Level>,
    ln_factorial: Vec<f64>,
}

impl Evaluator {
    /// Tables for every sample size in `1..=limit`.
    pub fn new(problem: DesignProblem, limit: usize) -> Result<Self> {
        if limit == 0 {
            return domain("evaluator limit must be at least 1");
        }
        let p0_prior = DesignPrior::point(problem.ap.p0())?;
        let levels = (1..=limit)
            .into_par_iter()
            .map(|n| {
                Ok(Level {
                    efficacy: critical_efficacy(n, problem.k, &problem.ap)?,
                    futility: critical_futility(n, problem.k_f, &problem.ap)?,
                    null: PredictivePmf::new(n, &problem.priors.null)?,
                    alt: PredictivePmf::new(n, &problem.priors.alt)?,
                    at_p0: PredictivePmf::new(n, &p0_prior)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let ln_factorial = (0..=limit).map(|i| ln_gamma(i as f64 + 1.0)).collect();
        Ok(Self {
            problem,
            levels,
            ln_factorial,
        })
    }

    pub fn problem(&self) -> &DesignProblem {
        &self.problem
    }

    pub fn limit(&self) -> usize {
        self.levels.len()
    }

    fn level(&self, n: usize) -> &Level {
        &self.levels[n - 1]
    }

    fn ln_choose(&self, n: usize, k: usize) -> f64 {
        self.ln_factorial[n] - self.ln_factorial[k] - self.ln_factorial[n - k]
    }

    /// `(efficacy, futility)` critical counts at `n`.
    pub fn critical_values(&self, n: usize) -> (Option<usize>, Option<usize>) {
        let level = self.level(n);
        (level.efficacy, level.futility)
    }

    /// Whether any count at `n` reaches `BF01 > k_f`.
    pub fn futility_reachable(&self, n: usize) -> bool {
        self.level(n).futility.is_some()
    }

    /// Single-stage `(type-I, power)` at sample size `n`.
    pub fn single_stage(&self, n: usize) -> (f64, f64) {
        let level = self.level(n);
        match level.efficacy {
            Some(c) => (level.null.upper_tail(c), level.alt.upper_tail(c)),
            None => (0.0, 0.0),
        }
    }

    /// Futility-erased mass under `(null, alt)`.
    fn erased(&self, n1: usize, n2: usize) -> (f64, f64) {
        let (Some(fut), Some(eff)) = (self.level(n1).futility, self.level(n2).efficacy) else {
            return (0.0, 0.0);
        };
        let m = n2 - n1;
        let top = self.level(n2);
        let (mut null, mut alt) = (0.0, 0.0);
        for s in eff..=n2 {
            let lo = s.saturating_sub(m);
            let hi = fut.min(s);
            if lo > hi {
                continue;
            }
            let ln_total = self.ln_choose(n2, s);
            let conditional: f64 = (lo..=hi)
                .map(|y1| (self.ln_choose(n1, y1) + self.ln_choose(m, s - y1) - ln_total).exp())
                .sum();
            null += conditional * top.null.get(s);
            alt += conditional * top.alt.get(s);
        }
        (null, alt)
    }

    /// Operating characteristics of `(n1, n2)`; both must be within the limit.
    pub fn evaluate(&self, n1: usize, n2: usize) -> Result<OperatingCharacteristics> {
        if n1 == 0 || n1 >= n2 {
            return domain(format!("need 1 <= n1 < n2, got n1 = {n1}, n2 = {n2}"));
        }
        if n2 > self.limit() {
            return domain(format!(
                "n2 = {n2} exceeds the evaluator limit {}",
                self.limit()
            ));
        }
        let (type_i_unadjusted, power_unadjusted) = self.single_stage(n2);
        let (erased_null, erased_alt) = self.erased(n1, n2);
        let interim = self.level(n1);
        let branch_h0 = branches_from(&interim.null, interim.efficacy, interim.futility);
        let branch_h1 = branches_from(&interim.alt, interim.efficacy, interim.futility);
        let pce_p0 = interim.futility.map_or(0.0, |c| interim.at_p0.cdf(c));
        Ok(OperatingCharacteristics {
            type_i_unadjusted,
            type_i_adjusted: adjust(type_i_unadjusted, erased_null)?,
            power_unadjusted,
            power_adjusted: adjust(power_unadjusted, erased_alt)?,
            futility_erased_power: erased_alt,
            futility_erased_type_i: erased_null,
            pce_p0,
            e_n_h0: expected_n_from_stop(n1, n2, branch_h0.futility),
            e_n_h1: expected_n_from_stop(n1, n2, branch_h1.futility),
            branch_h0,
            branch_h1,
        })
    }
}
