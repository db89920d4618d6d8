//! Searching for calibrated and optimal designs.
//!
//! Three searches share one [`Evaluator`]:
//!
//! * [`base_sample_size`]: the single-stage size used as a yardstick.
//! * [`calibrate`]: the iterative scheme, `n1` ascending inside each `n2`,
//!   accepting the first design that stays feasible across a lookahead window.
//! * [`optimal_calibrate`]: the feasible design with the smallest `E[N | H0]`.
//!
//! Binomial power oscillates in the sample size, so a design that is feasible
//! at `(n1, n2)` may fail at `(n1 + 1, n2)`. The *stability window* `W`
//! guards against accepting such a point: a candidate passes only if the
//! constraints also hold at `(n1 + j, n2)` and `(n1, n2 + j)` for
//! `j = 1..=W`. Interim sizes that would reach `n2` are skipped; final sizes
//! may look past `n_max`.
//!
//! Adjusted power never exceeds the single-stage power at `n2`. The optimal
//! search therefore skips any `n2` whose single-stage power already misses
//! the target.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::bayes_factor::AnalysisPrior;
use crate::error::{domain, Error, Infeasibility, Result};
use crate::evaluator::{DesignProblem, Evaluator};
use crate::operating::{check_thresholds, OperatingCharacteristics, TwoStageDesign};
use crate::predictive::DesignPrior;

/// Error-rate targets and the search rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationConstraints {
    pub alpha: f64,
    /// Power target is `1 - beta`.
    pub beta: f64,
    /// When set, the interim stop probability under `p0` must exceed it.
    pub f: Option<f64>,
    pub n_min: usize,
    pub n_max: usize,
    pub window: usize,
}

impl CalibrationConstraints {
    pub const DEFAULT_WINDOW: usize = 10;

    pub fn new(
        alpha: f64,
        beta: f64,
        f: Option<f64>,
        n_min: usize,
        n_max: usize,
        window: usize,
    ) -> Result<Self> {
        let open_unit = |x: f64| x > 0.0 && x < 1.0;
        if !open_unit(alpha) {
            return domain(format!("alpha must lie in (0, 1), got {alpha}"));
        }
        if !open_unit(beta) {
            return domain(format!("beta must lie in (0, 1), got {beta}"));
        }
        if let Some(f) = f {
            if !open_unit(f) {
                return domain(format!("f must lie in (0, 1), got {f}"));
            }
        }
        if n_min == 0 || n_min >= n_max {
            return domain(format!(
                "need 1 <= n_min < n_max, got n_min = {n_min}, n_max = {n_max}"
            ));
        }
        Ok(Self {
            alpha,
            beta,
            f,
            n_min,
            n_max,
            window,
        })
    }

    pub fn with_window(mut self, window: usize) -> Self {
        self.window = window;
        self
    }

    pub fn power_target(&self) -> f64 {
        1.0 - self.beta
    }

    /// Pointwise check of the three constraints. No tolerance is applied.
    pub fn satisfied_by(&self, oc: &OperatingCharacteristics) -> bool {
        oc.type_i_adjusted <= self.alpha
            && oc.power_adjusted >= self.power_target()
            && self.f.is_none_or(|f| oc.pce_p0 > f)
    }
}

/// A design together with its characteristics and verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibratedDesign {
    pub design: TwoStageDesign,
    pub oc: OperatingCharacteristics,
    pub feasible: bool,
    /// `E[N | H0]`.
    pub objective: f64,
}

impl CalibratedDesign {
    fn new(design: TwoStageDesign, oc: OperatingCharacteristics, feasible: bool) -> Self {
        Self {
            design,
            oc,
            feasible,
            objective: oc.e_n_h0,
        }
    }

    /// Objective first, then smaller `n2`, then smaller `n1`.
    pub fn cmp_objective(&self, other: &Self) -> Ordering {
        self.objective
            .total_cmp(&other.objective)
            .then(self.design.n2.cmp(&other.design.n2))
            .then(self.design.n1.cmp(&other.design.n1))
    }
}

/// Smallest single-stage `n` in `1..=n_max` whose type-I error is at most
/// `alpha` and whose power reaches `1 - beta` at `n` and each of the next
/// `window` sizes.
pub fn base_sample_size(
    k: f64,
    ap: &AnalysisPrior,
    power_prior: &DesignPrior,
    constraints: &CalibrationConstraints,
) -> Result<Option<usize>> {
    // k_f plays no role here; any valid value builds the tables.
    let priors = crate::operating::DesignPriors::new(ap.p0(), *power_prior)?;
    let problem = DesignProblem::new(*ap, priors, k, 2.0)?;
    let ev = Evaluator::new(problem, constraints.n_max + constraints.window)?;
    let target = constraints.power_target();
    Ok((1..=constraints.n_max).find(|&n| {
        ev.single_stage(n).0 <= constraints.alpha
            && (n..=n + constraints.window).all(|m| ev.single_stage(m).1 >= target)
    }))
}

/// Evaluates designs for one problem and constraint set.
#[derive(Debug, Clone)]
pub struct Calibrator {
    ev: Evaluator,
    constraints: CalibrationConstraints,
}

impl Calibrator {
    /// Tables reach `extent + window` so that the lookahead never runs short.
    pub fn new(
        problem: DesignProblem,
        constraints: CalibrationConstraints,
        extent: usize,
    ) -> Result<Self> {
        check_thresholds(problem.k, problem.k_f)?;
        let ev = Evaluator::new(problem, extent.max(constraints.n_max) + constraints.window)?;
        Ok(Self { ev, constraints })
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.ev
    }

    pub fn constraints(&self) -> &CalibrationConstraints {
        &self.constraints
    }

    fn pointwise(&self, n1: usize, n2: usize) -> Result<bool> {
        Ok(self.constraints.satisfied_by(&self.ev.evaluate(n1, n2)?))
    }

    /// Feasible at `(n1, n2)` and across the window on both margins.
    pub fn stable(&self, n1: usize, n2: usize) -> Result<bool> {
        if !self.pointwise(n1, n2)? {
            return Ok(false);
        }
        for j in 1..=self.constraints.window {
            if n1 + j < n2 && !self.pointwise(n1 + j, n2)? {
                return Ok(false);
            }
            if !self.pointwise(n1, n2 + j)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn assess(&self, n1: usize, n2: usize, stable: bool) -> Result<CalibratedDesign> {
        let design = self.ev.problem().design(n1, n2)?;
        let oc = self.ev.evaluate(n1, n2)?;
        let feasible = if stable {
            self.stable(n1, n2)?
        } else {
            self.constraints.satisfied_by(&oc)
        };
        Ok(CalibratedDesign::new(design, oc, feasible))
    }

    /// `n2` in range whose single-stage power already misses the target.
    pub fn pruned(&self) -> Vec<usize> {
        let c = &self.constraints;
        (c.n_min + 1..=c.n_max)
            .filter(|&n2| self.ev.single_stage(n2).1 < c.power_target())
            .collect()
    }

    /// Without any reachable futility count there is no interim decision and
    /// hence no two-stage design to calibrate.
    fn require_futility(&self) -> Result<()> {
        let c = &self.constraints;
        if (c.n_min..c.n_max).any(|n1| self.ev.futility_reachable(n1)) {
            return Ok(());
        }
        Err(Error::Infeasible(Infeasibility::FutilityUnreachable {
            k_f: self.ev.problem().k_f.to_string(),
            n_min: c.n_min,
            n_max: c.n_max,
        }))
    }

    fn infeasibility(&self) -> Error {
        let c = &self.constraints;
        let reason = if self.pruned().len() == c.n_max - c.n_min {
            Infeasibility::PowerUnreachable { n_max: c.n_max }
        } else {
            Infeasibility::NoFeasibleDesign {
                n_min: c.n_min,
                n_max: c.n_max,
            }
        };
        Error::Infeasible(reason)
    }

    /// Every pointwise-feasible pair in the rectangle, no pruning.
    pub fn feasible_grid(&self) -> Result<Vec<CalibratedDesign>> {
        let c = self.constraints;
        let per_n2 = (c.n_min + 1..=c.n_max)
            .into_par_iter()
            .map(|n2| {
                let mut found = Vec::new();
                for n1 in c.n_min..n2 {
                    let d = self.assess(n1, n2, false)?;
                    if d.feasible {
                        found.push(d);
                    }
                }
                Ok(found)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(per_n2.into_iter().flatten().collect())
    }

    /// The iterative search.
    pub fn calibrate(&self) -> Result<CalibratedDesign> {
        self.require_futility()?;
        let c = &self.constraints;
        let target = c.power_target();
        for n2 in c.n_min + 1..=c.n_max {
            if self.ev.single_stage(n2).1 < target {
                continue;
            }
            for n1 in c.n_min..n2 {
                if self.stable(n1, n2)? {
                    return self.assess(n1, n2, true);
                }
            }
        }
        Err(self.infeasibility())
    }

    /// Minimum `E[N | H0]` over pointwise-feasible pairs.
    pub fn optimal(&self) -> Result<CalibratedDesign> {
        self.require_futility()?;
        let c = self.constraints;
        let target = c.power_target();
        let best = (c.n_min + 1..=c.n_max)
            .into_par_iter()
            .filter(|&n2| self.ev.single_stage(n2).1 >= target)
            .map(|n2| {
                let mut best: Option<CalibratedDesign> = None;
                for n1 in c.n_min..n2 {
                    let d = self.assess(n1, n2, false)?;
                    if d.feasible && best.is_none_or(|b| d.cmp_objective(&b).is_lt()) {
                        best = Some(d);
                    }
                }
                Ok(best)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .min_by(CalibratedDesign::cmp_objective);
        best.ok_or_else(|| self.infeasibility())
    }

    /// One row per `n1` in `n_min..n2`, with the windowed verdict.
    pub fn scan(&self, n2: usize) -> Result<Vec<ScanRow>> {
        if n2 + self.constraints.window > self.ev.limit() {
            return domain(format!(
                "n2 = {n2} plus the window exceeds the table limit {}",
                self.ev.limit()
            ));
        }
        (self.constraints.n_min..n2)
            .into_par_iter()
            .map(|n1| {
                let d = self.assess(n1, n2, true)?;
                Ok(ScanRow {
                    n1,
                    n2,
                    power_adjusted: d.oc.power_adjusted,
                    type_i_adjusted: d.oc.type_i_adjusted,
                    pce_p0: d.oc.pce_p0,
                    e_n_h0: d.oc.e_n_h0,
                    feasible: d.feasible,
                })
            })
            .collect()
    }
}

/// One line of an `n1` sweep at fixed `n2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub n1: usize,
    pub n2: usize,
    pub power_adjusted: f64,
    pub type_i_adjusted: f64,
    pub pce_p0: f64,
    pub e_n_h0: f64,
    pub feasible: bool,
}

/// First stable design in the iterative order.
pub fn calibrate(
    problem: &DesignProblem,
    constraints: &CalibrationConstraints,
) -> Result<CalibratedDesign> {
    Calibrator::new(*problem, *constraints, constraints.n_max)?.calibrate()
}

/// Feasible design with the smallest `E[N | H0]`; ties go to the smaller
/// `n2`, then the smaller `n1`. The window is not used.
pub fn optimal_calibrate(
    problem: &DesignProblem,
    constraints: &CalibrationConstraints,
) -> Result<CalibratedDesign> {
    Calibrator::new(*problem, *constraints, constraints.n_max)?.optimal()
}

/// Sweep `n1` for each requested `n2`, in the order given.
pub fn scan(
    n2s: &[usize],
    problem: &DesignProblem,
    constraints: &CalibrationConstraints,
) -> Result<Vec<ScanRow>> {
    let extent = n2s.iter().copied().max().unwrap_or(1);
    let cal = Calibrator::new(*problem, *constraints, extent)?;
    let mut rows = Vec::new();
    for &n2 in n2s {
        rows.extend(cal.scan(n2)?);
    }
    Ok(rows)
}
