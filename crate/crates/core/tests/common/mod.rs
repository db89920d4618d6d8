//! Independent numerical oracles shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// Double-exponential (tanh-sinh) quadrature of `f` on `[lo, hi]`.
///
/// `f` receives the abscissa together with its distances to both endpoints,
/// computed without cancellation, so integrable endpoint singularities such
/// as `x^(-1/2)` are handled.
pub fn tanh_sinh<F>(lo: f64, hi: f64, f: F) -> f64
where
    F: Fn(f64, f64, f64) -> f64,
{
    let half = 0.5 * (hi - lo);
    let h = 1.0 / 128.0;
    let mut sum = 0.0;
    let mut j: i64 = -(6.0 / h) as i64;
    while (j as f64) * h <= 6.0 {
        let t = j as f64 * h;
        let u = FRAC_PI_2 * t.sinh();
        let cosh_u = u.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
        // Distances of x = tanh(u) from -1 and +1.
        let from_left = 2.0 / (1.0 + (2.0 * u).exp());
        let from_right = 2.0 / (1.0 + (-2.0 * u).exp());
        let (dl, dr) = (half * from_right, half * from_left);
        if dl > 0.0 && dr > 0.0 {
            let x = if dl < dr { lo + dl } else { hi - dr };
            let v = f(x, dl, dr);
            if v.is_finite() {
                sum += w * v;
            }
        }
        j += 1;
    }
    sum * half * h
}

/// `∫_lo^hi θ^(a-1) (1-θ)^(b-1) dθ`.
pub fn beta_integral(a: f64, b: f64, lo: f64, hi: f64) -> f64 {
    tanh_sinh(lo, hi, |x, dl, dr| {
        // Near an endpoint at 0 or 1 use the exact offset.
        let theta = if lo == 0.0 && dl < 0.5 { dl } else { x };
        let one_minus = if hi == 1.0 && dr < 0.5 { dr } else { 1.0 - x };
        theta.powf(a - 1.0) * one_minus.powf(b - 1.0)
    })
}

/// Regularized incomplete beta by quadrature.
pub fn inc_beta(x: f64, a: f64, b: f64) -> f64 {
    let lower = beta_integral(a, b, 0.0, x);
    let upper = beta_integral(a, b, x, 1.0);
    lower / (lower + upper)
}

/// Exact binomial coefficient as a float for small `n`.
pub fn choose(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Predictive mass of `y` of `n` under `Beta(a, b)` truncated to `[lo, hi]`,
/// by quadrature of the binomial likelihood against the prior density.
pub fn predictive(y: usize, n: usize, a: f64, b: f64, lo: f64, hi: f64) -> f64 {
    let num = beta_integral(a + y as f64, b + (n - y) as f64, lo, hi);
    let den = beta_integral(a, b, lo, hi);
    choose(n, y) * num / den
}

use bf_twostage::{AnalysisPrior, DesignPrior, DesignPriors, Hypotheses, TwoStageDesign};
use proptest::prelude::*;

/// A small design together with analysis and design priors.
#[derive(Debug, Clone, Copy)]
pub struct SmallConfig {
    pub design: TwoStageDesign,
    pub ap: AnalysisPrior,
    pub priors: DesignPriors,
}

fn alt_prior(p0: f64) -> impl Strategy<Value = DesignPrior> {
    prop_oneof![
        (0.05f64..0.95).prop_map(move |t| DesignPrior::point(p0 + t * (1.0 - p0)).unwrap()),
        (0.5f64..25.0, 0.5f64..25.0)
            .prop_map(move |(a, b)| DesignPrior::truncated(a, b, p0, 1.0).unwrap()),
    ]
}

/// `n1 <= 15`, `n2 <= 30`, `p0` in {0.1, 0.2, 0.3, 0.5}, point and Beta
/// priors, `k` in {1/3, 1/10}, `k_f` in {3, 10}.
pub fn small_config() -> impl Strategy<Value = SmallConfig> {
    let p0 = prop::sample::select(vec![0.1, 0.2, 0.3, 0.5]);
    let k = prop::sample::select(vec![1.0 / 3.0, 0.1]);
    let k_f = prop::sample::select(vec![3.0, 10.0]);
    (p0, k, k_f, 2usize..=15)
        .prop_flat_map(|(p0, k, k_f, n1)| {
            (
                Just((p0, k, k_f, n1)),
                n1 + 1..=30,
                alt_prior(p0),
                prop::bool::ANY,
            )
        })
        .prop_map(|((p0, k, k_f, n1), n2, alt, informative_analysis)| {
            let hyp = Hypotheses::new(p0).unwrap();
            let ap = if informative_analysis {
                AnalysisPrior::new(hyp, 2.0, 3.0, 3.0, 2.0).unwrap()
            } else {
                AnalysisPrior::flat(hyp)
            };
            SmallConfig {
                design: TwoStageDesign::new(n1, n2, k, k_f).unwrap(),
                ap,
                priors: DesignPriors::new(p0, alt).unwrap(),
            }
        })
}
