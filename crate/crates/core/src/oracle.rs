//! Exhaustive path enumeration over every `(y1, y2)` outcome pair.
//!
//! Each path is classified by evaluating the Bayes factor at the interim and
//! final sizes directly; critical counts and the double-sum formula are not
//! used. This makes it an independent check on the closed-form route in
//! [`crate::operating`].

use crate::bayes_factor::AnalysisPrior;
use crate::error::Result;
use crate::operating::{
    adjust, expected_n_from_stop, Branches, DesignPriors, OperatingCharacteristics,
    TwoStageDesign,
};
use crate::predictive::DesignPrior;

/// Probability totals accumulated over all outcome paths for one prior.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PathTotals {
    /// Interim branch masses.
    pub interim: Branches,
    /// `P(BF01(n2) < k, interim branch)`, one entry per branch.
    pub final_efficacy: Branches,
}

impl PathTotals {
    /// Efficacy at `n2` ignoring the interim look.
    pub fn unadjusted(&self) -> f64 {
        self.final_efficacy.total()
    }

    /// Efficacy at `n2` on paths that actually reach `n2`.
    pub fn adjusted(&self) -> f64 {
        self.final_efficacy.efficacy + self.final_efficacy.indecisive
    }

    /// Efficacy at `n2` on paths stopped at `n1`.
    pub fn erased(&self) -> f64 {
        self.final_efficacy.futility
    }
}

/// Walk every `(y1, y2)` and accumulate joint predictive mass by outcome.
pub fn enumerate_paths(
    design: &TwoStageDesign,
    ap: &AnalysisPrior,
    prior: &DesignPrior,
) -> PathTotals {
    let (n1, n2) = (design.n1, design.n2);
    let m = design.second_batch();
    let (ln_k, ln_kf) = (design.k.ln(), design.k_f.ln());
    let mut totals = PathTotals::default();
    for y1 in 0..=n1 {
        let interim_bf = ap.ln_bf01(y1, n1);
        for y2 in 0..=m {
            let w = prior.ln_joint(y1, y2, n1, m).exp();
            let final_eff = ap.ln_bf01(y1 + y2, n2) < ln_k;
            let (branch, eff_slot) = if interim_bf > ln_kf {
                (&mut totals.interim.futility, &mut totals.final_efficacy.futility)
            } else if interim_bf < ln_k {
                (&mut totals.interim.efficacy, &mut totals.final_efficacy.efficacy)
            } else {
                (&mut totals.interim.indecisive, &mut totals.final_efficacy.indecisive)
            };
            *branch += w;
            if final_eff {
                *eff_slot += w;
            }
        }
    }
    totals
}

/// Operating characteristics assembled purely from path enumeration.
pub fn enumerate_oracle(
    design: &TwoStageDesign,
    ap: &AnalysisPrior,
    priors: &DesignPriors,
) -> Result<OperatingCharacteristics> {
    let h0 = enumerate_paths(design, ap, &priors.null);
    let h1 = enumerate_paths(design, ap, &priors.alt);
    let at_p0 = enumerate_paths(design, ap, &DesignPrior::point(ap.p0())?);
    Ok(OperatingCharacteristics {
        type_i_unadjusted: h0.unadjusted(),
        type_i_adjusted: adjust(h0.adjusted(), 0.0)?,
        power_unadjusted: h1.unadjusted(),
        power_adjusted: adjust(h1.adjusted(), 0.0)?,
        futility_erased_power: h1.erased(),
        futility_erased_type_i: h0.erased(),
        pce_p0: at_p0.interim.futility,
        e_n_h0: expected_n_from_stop(design.n1, design.n2, h0.interim.futility),
        e_n_h1: expected_n_from_stop(design.n1, design.n2, h1.interim.futility),
        branch_h0: h0.interim,
        branch_h1: h1.interim,
    })
}
