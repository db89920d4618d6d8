//! Simon's two-stage design, found by exhaustive binomial search.
//!
//! Stage one enrolls `n1` patients and stops when at most `r1` respond.
//! Otherwise enrollment continues to `n2`, and `H0` is rejected when more
//! than `r` respond in total.

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::predictive::{DesignPrior, PredictivePmf};

/// A Simon design with its attained characteristics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimonDesign {
    pub r1: usize,
    pub n1: usize,
    pub r: usize,
    pub n2: usize,
    pub alpha_attained: f64,
    pub power_attained: f64,
    /// Probability of early termination under `p0`.
    pub pet_p0: f64,
    pub e_n_h0: f64,
}

/// Characteristics at one response probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimonOc {
    pub reject: f64,
    pub pet: f64,
    pub e_n: f64,
}

fn binomial(n: usize, p: f64) -> Result<Vec<f64>> {
    Ok(PredictivePmf::new(n, &DesignPrior::point(p)?)?.mass().to_vec())
}

/// `surv[t] = P(X > t)` for `t` in `0..=n`, with `surv[n] = 0`.
fn survival(pmf: &[f64]) -> Vec<f64> {
    let mut surv = vec![0.0; pmf.len()];
    for t in (0..pmf.len() - 1).rev() {
        surv[t] = surv[t + 1] + pmf[t + 1];
    }
    surv
}

/// `P(X > t)` with the convention that a negative `t` gives 1.
fn surv_at(surv: &[f64], t: isize) -> f64 {
    if t < 0 {
        1.0
    } else {
        surv.get(t as usize).copied().unwrap_or(0.0)
    }
}

/// Exact rejection probability, early-termination probability and expected
/// size at response probability `p`.
pub fn simon_oc(r1: usize, n1: usize, r: usize, n2: usize, p: f64) -> Result<SimonOc> {
    if n1 == 0 || n1 >= n2 || r1 > n1 || r < r1 || r > n2 {
        return domain(format!(
            "need r1 <= n1 < n2 and r1 <= r <= n2, got ({r1}, {n1}, {r}, {n2})"
        ));
    }
    let first = binomial(n1, p)?;
    let second = survival(&binomial(n2 - n1, p)?);
    let pet: f64 = first[..=r1].iter().sum();
    let reject = (r1 + 1..=n1)
        .map(|x1| first[x1] * surv_at(&second, r as isize - x1 as isize))
        .sum();
    Ok(SimonOc {
        reject,
        pet,
        e_n: n1 as f64 + (1.0 - pet) * (n2 - n1) as f64,
    })
}

/// `reject[r][r1]` for every bound pair at fixed `(n1, n2)`.
fn rejection_table(first: &[f64], second_surv: &[f64], n1: usize, n2: usize) -> Vec<Vec<f64>> {
    (0..=n2)
        .map(|r| {
            let mut row = vec![0.0; n1 + 1];
            // row[r1] = row[r1 + 1] + P(X1 = r1 + 1) P(X2 > r - r1 - 1)
            for r1 in (0..n1).rev() {
                let x1 = r1 + 1;
                row[r1] = row[r1 + 1] + first[x1] * surv_at(second_surv, r as isize - x1 as isize);
            }
            row
        })
        .collect()
}

/// All designs at one `(n1, n2)`: for each `r1`, the smallest `r` meeting
/// the type-I bound, kept when it also meets the power target.
fn candidates(
    n1: usize,
    n2: usize,
    null: &[Vec<f64>],
    alt: &[Vec<f64>],
    alpha: f64,
    beta: f64,
) -> Vec<SimonDesign> {
    let m = n2 - n1;
    let first0 = &null[n1];
    let first1 = &alt[n1];
    let surv0 = survival(&null[m]);
    let surv1 = survival(&alt[m]);
    let rej0 = rejection_table(first0, &surv0, n1, n2);
    let rej1 = rejection_table(first1, &surv1, n1, n2);
    let mut out = Vec::new();
    let mut pet = 0.0;
    for r1 in 0..n1 {
        pet += first0[r1];
        let Some(r) = (r1..n2).find(|&r| rej0[r][r1] <= alpha) else {
            continue;
        };
        if rej1[r][r1] < 1.0 - beta {
            continue;
        }
        out.push(SimonDesign {
            r1,
            n1,
            r,
            n2,
            alpha_attained: rej0[r][r1],
            power_attained: rej1[r][r1],
            pet_p0: pet,
            e_n_h0: n1 as f64 + (1.0 - pet) * m as f64,
        });
    }
    out
}

fn optimal_key(d: &SimonDesign) -> (f64, usize, usize, usize) {
    (d.e_n_h0, d.n2, d.n1, d.r1)
}

fn minimax_key(d: &SimonDesign) -> (usize, f64, usize, usize) {
    (d.n2, d.e_n_h0, d.n1, d.r1)
}

/// Optimal (minimum `E[N | p0]`) and minimax (minimum `n2`, then `E[N | p0]`)
/// designs with `n2 <= n_max`. `None` when nothing up to `n_max` qualifies.
pub fn simon_search(
    p0: f64,
    p1: f64,
    alpha: f64,
    beta: f64,
    n_max: usize,
) -> Result<Option<(SimonDesign, SimonDesign)>> {
    if !(0.0 < p0 && p0 < p1 && p1 < 1.0) {
        return domain(format!("need 0 < p0 < p1 < 1, got p0 = {p0}, p1 = {p1}"));
    }
    if !(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0) {
        return domain(format!(
            "alpha and beta must lie in (0, 1), got {alpha}, {beta}"
        ));
    }
    if n_max < 2 {
        return domain("n_max must be at least 2");
    }
    let null = (0..=n_max)
        .map(|n| if n == 0 { Ok(vec![1.0]) } else { binomial(n, p0) })
        .collect::<Result<Vec<_>>>()?;
    let alt = (0..=n_max)
        .map(|n| if n == 0 { Ok(vec![1.0]) } else { binomial(n, p1) })
        .collect::<Result<Vec<_>>>()?;
    let all: Vec<SimonDesign> = (2..=n_max)
        .into_par_iter()
        .flat_map_iter(|n2| {
            let (null, alt) = (&null, &alt);
            (1..n2).flat_map(move |n1| candidates(n1, n2, null, alt, alpha, beta))
        })
        .collect();
    let optimal = all
        .iter()
        .min_by(|a, b| {
            let (ka, kb) = (optimal_key(a), optimal_key(b));
            ka.0.total_cmp(&kb.0).then((ka.1, ka.2, ka.3).cmp(&(kb.1, kb.2, kb.3)))
        })
        .copied();
    let minimax = all
        .iter()
        .min_by(|a, b| {
            let (ka, kb) = (minimax_key(a), minimax_key(b));
            ka.0.cmp(&kb.0)
                .then(ka.1.total_cmp(&kb.1))
                .then((ka.2, ka.3).cmp(&(kb.2, kb.3)))
        })
        .copied();
    Ok(optimal.zip(minimax))
}
