mod common;

use bf_twostage::{
    adjusted_rate, branch_probabilities, enumerate_oracle, enumerate_paths, expected_n,
    futility_erased, operating_characteristics, prob_futility_stop, unadjusted_rate,
    DesignPrior, DesignProblem, Evaluator, PredictivePmf,
};
use common::{small_config, SmallConfig};
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn closed_form_matches_enumeration(cfg in small_config()) {
        let SmallConfig { design, ap, priors } = cfg;
        let oracle = enumerate_oracle(&design, &ap, &priors).unwrap();
        let oc = operating_characteristics(&design, &ap, &priors).unwrap();
        prop_assert!(close(oc.futility_erased_power, oracle.futility_erased_power, 1e-12));
        prop_assert!(close(oc.futility_erased_type_i, oracle.futility_erased_type_i, 1e-12));
        prop_assert!(close(oc.power_adjusted, oracle.power_adjusted, 1e-12));
        prop_assert!(close(oc.type_i_adjusted, oracle.type_i_adjusted, 1e-12));
        prop_assert!(close(oc.power_unadjusted, oracle.power_unadjusted, 1e-12));
        prop_assert!(close(oc.pce_p0, oracle.pce_p0, 1e-12));
        prop_assert!(close(oc.e_n_h0, oracle.e_n_h0, 1e-10));
        prop_assert!(close(oc.e_n_h1, oracle.e_n_h1, 1e-10));
    }

    #[test]
    fn adjusted_never_exceeds_unadjusted(cfg in small_config()) {
        let SmallConfig { design, ap, priors } = cfg;
        for prior in [priors.null, priors.alt] {
            let unadj = unadjusted_rate(design.n2, design.k, &ap, &prior).unwrap();
            let adj = adjusted_rate(&design, &ap, &prior).unwrap();
            let erased = futility_erased(&design, &ap, &prior).unwrap();
            prop_assert!(adj <= unadj);
            // Strictness is only observable once the erased mass exceeds one
            // ulp of the unadjusted rate.
            if erased > f64::EPSILON * unadj {
                prop_assert!(adj < unadj);
            } else if erased == 0.0 {
                prop_assert_eq!(adj, unadj);
            }
        }
    }

    #[test]
    fn fast_evaluator_matches_closed_form(cfg in small_config()) {
        let SmallConfig { design, ap, priors } = cfg;
        let problem = DesignProblem::new(ap, priors, design.k, design.k_f).unwrap();
        let ev = Evaluator::new(problem, design.n2).unwrap();
        let fast = ev.evaluate(design.n1, design.n2).unwrap();
        let oc = operating_characteristics(&design, &ap, &priors).unwrap();
        prop_assert!(close(fast.futility_erased_power, oc.futility_erased_power, 1e-12));
        prop_assert!(close(fast.futility_erased_type_i, oc.futility_erased_type_i, 1e-12));
        prop_assert!(close(fast.power_adjusted, oc.power_adjusted, 1e-12));
        prop_assert!(close(fast.type_i_adjusted, oc.type_i_adjusted, 1e-12));
        prop_assert_eq!(fast.pce_p0, oc.pce_p0);
        prop_assert_eq!(fast.e_n_h0, oc.e_n_h0);
    }

    #[test]
    fn expected_size_identity(cfg in small_config()) {
        let SmallConfig { design, ap, priors } = cfg;
        let stop = prob_futility_stop(design.n1, design.k_f, &ap, &priors.null).unwrap();
        let en = expected_n(design.n1, design.n2, design.k_f, &ap, &priors.null).unwrap();
        prop_assert_eq!(en, design.n2 as f64 - (design.n2 - design.n1) as f64 * stop);
        let oc = operating_characteristics(&design, &ap, &priors).unwrap();
        prop_assert_eq!(oc.e_n_h0, en);
    }

    #[test]
    fn pce_is_stop_probability_at_p0(cfg in small_config()) {
        let SmallConfig { design, ap, priors } = cfg;
        let at_p0 = DesignPrior::point(ap.p0()).unwrap();
        let stop = prob_futility_stop(design.n1, design.k_f, &ap, &at_p0).unwrap();
        let oc = operating_characteristics(&design, &ap, &priors).unwrap();
        prop_assert_eq!(oc.pce_p0, stop);
    }

    #[test]
    fn branches_partition_the_interim(cfg in small_config()) {
        let SmallConfig { design, ap, priors } = cfg;
        for prior in [priors.null, priors.alt] {
            let b = branch_probabilities(design.n1, design.k, design.k_f, &ap, &prior).unwrap();
            prop_assert!(close(b.total(), 1.0, 1e-10));
            prop_assert!(b.efficacy >= 0.0 && b.indecisive >= 0.0 && b.futility >= 0.0);
        }
    }

    #[test]
    fn unconditional_rate_decomposes_over_branches(cfg in small_config()) {
        let SmallConfig { design, ap, priors } = cfg;
        for prior in [priors.null, priors.alt] {
            let paths = enumerate_paths(&design, &ap, &prior);
            let unadj = unadjusted_rate(design.n2, design.k, &ap, &prior).unwrap();
            prop_assert!(close(paths.unadjusted(), unadj, 1e-12));
            let b = branch_probabilities(design.n1, design.k, design.k_f, &ap, &prior).unwrap();
            prop_assert!(close(paths.interim.futility, b.futility, 1e-12));
            prop_assert!(close(paths.interim.efficacy, b.efficacy, 1e-12));
        }
    }

    #[test]
    fn predictive_pmfs_normalize(cfg in small_config()) {
        let SmallConfig { design, priors, .. } = cfg;
        for prior in [priors.null, priors.alt] {
            let pmf = PredictivePmf::new(design.n2, &prior).unwrap();
            prop_assert!(close(pmf.cdf(design.n2), 1.0, 1e-12));
            let m = design.second_batch();
            let mut joint = 0.0;
            for y1 in 0..=design.n1 {
                for y2 in 0..=m {
                    joint += bf_twostage::joint_predictive_pmf(y1, y2, design.n1, m, &prior)
                        .unwrap();
                }
            }
            prop_assert!(close(joint, 1.0, 1e-10));
        }
    }
}

#[test]
fn degenerate_futility_reduces_to_single_stage() {
    let hyp = bf_twostage::Hypotheses::new(0.2).unwrap();
    let ap = bf_twostage::AnalysisPrior::flat(hyp);
    let priors =
        bf_twostage::DesignPriors::new(0.2, DesignPrior::truncated(1.0, 1.0, 0.2, 1.0).unwrap())
            .unwrap();
    let design = bf_twostage::TwoStageDesign::new(3, 20, 1.0 / 3.0, 1e8).unwrap();
    let oracle = enumerate_oracle(&design, &ap, &priors).unwrap();
    assert_eq!(oracle.branch_h1.futility, 0.0);
    assert!(close(oracle.power_adjusted, oracle.power_unadjusted, 1e-15));
    assert!(close(
        oracle.power_unadjusted,
        unadjusted_rate(20, 1.0 / 3.0, &ap, &priors.alt).unwrap(),
        1e-12
    ));
}
