use std::fmt;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An adjusted rate came out negative beyond rounding noise. This points
    /// at inconsistent critical values rather than floating point error.
    #[error("adjusted rate is negative ({value:e}): unadjusted {unadjusted:e}, futility-erased {erased:e}")]
    NegativeAdjustedRate {
        value: f64,
        unadjusted: f64,
        erased: f64,
    },

    /// The search region holds no design meeting the constraints.
    #[error("{0}")]
    Infeasible(Infeasibility),
}

/// Why a calibration search came back empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// No interim size in the search range can ever produce
    /// `BF01 > k_f`, so the design has no futility branch at all.
    FutilityUnreachable { k_f: String, n_min: usize, n_max: usize },
    /// Even without an interim look the power target is missed for every
    /// final size up to `n_max`.
    PowerUnreachable { n_max: usize },
    /// Candidates were evaluated but none met every constraint.
    NoFeasibleDesign { n_min: usize, n_max: usize },
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::FutilityUnreachable { k_f, n_min, n_max } => write!(
                f,
                "no interim size in [{n_min}, {n_max}) yields BF01 > k_f = {k_f}; \
                 the design cannot be calibrated for that choice of thresholds"
            ),
            Infeasibility::PowerUnreachable { n_max } => write!(
                f,
                "the single-stage power target is not met for any final size up to \
                 n_max = {n_max}; increase n_max"
            ),
            Infeasibility::NoFeasibleDesign { n_min, n_max } => write!(
                f,
                "no (n1, n2) with {n_min} <= n1 < n2 <= {n_max} satisfies the constraints"
            ),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
