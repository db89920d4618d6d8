//! Exact operating characteristics and calibration of two-stage single-arm
//! designs driven by a Bayes factor.
//!
//! A trial tests `H0: p <= p0` against `H1: p > p0` on a binary endpoint.
//! After `n1` patients it stops for futility when `BF01 > k_f`; otherwise it
//! runs to `n2` and declares efficacy when `BF01 < k`. Everything here is
//! computed by exact summation over beta-binomial predictive distributions:
//! no simulation is involved.
//!
//! ```
//! use bf_twostage::{
//!     operating_characteristics, AnalysisPrior, DesignPrior, DesignPriors, Hypotheses,
//!     TwoStageDesign,
//! };
//!
//! let ap = AnalysisPrior::flat(Hypotheses::new(0.1)?);
//! let priors = DesignPriors::new(0.1, DesignPrior::point(0.3)?)?;
//! let design = TwoStageDesign::new(10, 29, 1.0 / 3.0, 3.0)?;
//! let oc = operating_characteristics(&design, &ap, &priors)?;
//! assert!(oc.power_adjusted < oc.power_unadjusted);
//! assert_eq!(format!("{:.2}", oc.e_n_h0), "15.01");
//! # Ok::<(), bf_twostage::Error>(())
//! ```

pub mod bayes_factor;
pub mod calibration;
pub mod error;
pub mod evaluator;
pub mod operating;
pub mod oracle;
pub mod predictive;
pub mod simon;
pub mod special;

pub use bayes_factor::{
    bf01, critical_efficacy, critical_futility, ln_bf01, marginal_likelihood, AnalysisPrior,
    CriticalValues, Hypotheses,
};
pub use calibration::{
    base_sample_size, calibrate, optimal_calibrate, scan, CalibratedDesign,
    CalibrationConstraints, Calibrator, ScanRow,
};
pub use error::{Error, Infeasibility, Result};
pub use evaluator::{DesignProblem, Evaluator};
pub use operating::{
    adjusted_rate, branch_probabilities, expected_n, futility_erased, operating_characteristics,
    prob_futility_stop, unadjusted_rate, Branches, DesignPriors, OperatingCharacteristics,
    TwoStageDesign,
};
pub use oracle::{enumerate_oracle, enumerate_paths, PathTotals};
pub use predictive::{
    joint_predictive_pmf, predictive_pmf, DesignPrior, PredictivePmf, TruncatedBeta,
};
pub use simon::{simon_oc, simon_search, SimonDesign, SimonOc};
pub use special::{ln_gamma, ln_reg_inc_beta, log_beta, reg_inc_beta};
