//! Randomized invariants over the whole engine, exact arithmetic throughout.

use netprod::allocation::{
    difference_distribution, difference_distribution_explicit, lrp, shapley_closed,
    shapley_oracle,
};
use netprod::an::{an_table, an_value_sig, convergence_check};
use netprod::fan::{
    difference_table, difference_value_sig, fan_value_sig, productivity_sig,
    AttenuationParams,
};
use netprod::network::{BipartiteNetwork, Side, Signature};
use netprod::scalar::{frac, int, parse, pow, to_decimal, to_exact, Scalar};
use netprod::verify::{axiom_check, core_check, uniqueness_reconstruction};
use netprod::Error;
use num::Zero;
use proptest::prelude::*;

fn params(delta: Scalar, t: usize) -> AttenuationParams {
    AttenuationParams::new(delta, t).expect("valid parameters")
}

/// Nonnegative weights up to 9/4, so truncated games also see weights past
/// every convergence threshold.
fn any_weight() -> impl Strategy<Value = Scalar> {
    (0i64..=9, 4i64..=24).prop_map(|(numer, denom)| frac(numer, denom))
}

/// Weights kept inside [0, 1); convergence is still filtered per case.
fn unit_weight() -> impl Strategy<Value = Scalar> {
    (0i64..=9, 10i64..=24).prop_map(|(numer, denom)| frac(numer, denom))
}

fn isqrt(value: u64) -> u64 {
    let mut root = (value as f64).sqrt() as u64;
    while (root + 1) * (root + 1) <= value {
        root += 1;
    }
    while root * root > value {
        root -= 1;
    }
    root
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn truncated_values_grow_with_horizon_and_membership(
        k in 0usize..=5, m in 0usize..=5, delta in any_weight(), t in 0usize..=12,
    ) {
        let sig = Signature::new(k, m);
        let here = fan_value_sig(sig, &params(delta.clone(), t));
        let later = fan_value_sig(sig, &params(delta.clone(), t + 1));
        prop_assert!(here <= later);
        let more_k = fan_value_sig(Signature::new(k + 1, m), &params(delta.clone(), t));
        let more_m = fan_value_sig(Signature::new(k, m + 1), &params(delta.clone(), t));
        prop_assert!(here < more_k && here < more_m);
    }

    #[test]
    fn productivities_sum_to_the_coalition_value(
        k in 0usize..=5, m in 0usize..=5, delta in any_weight(), t in 0usize..=10,
    ) {
        let sig = Signature::new(k, m);
        let p = params(delta, t);
        let mut total = Scalar::zero();
        if k > 0 {
            total += int(k as i64) * productivity_sig(sig, Side::K, &p);
        }
        if m > 0 {
            total += int(m as i64) * productivity_sig(sig, Side::M, &p);
        }
        prop_assert_eq!(total, fan_value_sig(sig, &p));
    }

    #[test]
    fn the_difference_game_is_the_horizon_step(
        k in 0usize..=5, m in 0usize..=5, delta in any_weight(), t in 1usize..=12,
    ) {
        let sig = Signature::new(k, m);
        let step = fan_value_sig(sig, &params(delta.clone(), t))
            - fan_value_sig(sig, &params(delta.clone(), t - 1));
        prop_assert_eq!(step, difference_value_sig(sig, &delta, t).unwrap());
    }

    #[test]
    fn truncations_approach_the_limit_from_below(
        k in 1usize..=4, m in 1usize..=4, delta in unit_weight(), t in 0usize..=20,
    ) {
        let sig = Signature::new(k, m);
        prop_assume!(sig.spectral_radius().admits(&delta));
        let limit = an_value_sig(sig, &delta).unwrap();
        let here = fan_value_sig(sig, &params(delta.clone(), t));
        let later = fan_value_sig(sig, &params(delta.clone(), t + 2));
        prop_assert!(here <= later && later <= limit);
        if delta > Scalar::zero() {
            prop_assert!(here < limit);
        } else {
            prop_assert_eq!(&here, &limit);
        }
    }

    #[test]
    fn shapley_paths_agree_and_split_the_grand_value(
        k in 1usize..=4, m in 1usize..=4, delta in unit_weight(),
    ) {
        let network = BipartiteNetwork::from_sizes(k, m).unwrap();
        prop_assume!(network.signature().spectral_radius().admits(&delta));
        let closed = shapley_closed(&network, &delta).unwrap();
        let counted = shapley_oracle(&an_table(&network, &delta).unwrap()).unwrap();
        prop_assert!(closed.same_payoffs(&counted));
        prop_assert_eq!(
            closed.total(),
            an_value_sig(network.signature(), &delta).unwrap()
        );
    }

    #[test]
    fn lrp_is_the_unique_axiom_solution(
        k in 1usize..=4, m in 1usize..=4, delta in unit_weight(),
    ) {
        let network = BipartiteNetwork::from_sizes(k, m).unwrap();
        prop_assume!(network.signature().spectral_radius().admits(&delta));
        let omega = lrp(&network, &delta).unwrap();
        let report = axiom_check(&network, &delta, &omega).unwrap();
        prop_assert!(report.all());
        let recon = uniqueness_reconstruction(&network, &delta).unwrap();
        prop_assert!(omega.same_payoffs(&recon));
    }

    #[test]
    fn difference_distributions_are_efficient_stable_and_parity_consistent(
        k in 1usize..=4, m in 1usize..=4, delta in unit_weight(), t in 1usize..=8,
    ) {
        let network = BipartiteNetwork::from_sizes(k, m).unwrap();
        prop_assume!(delta > Scalar::zero());
        let x = difference_distribution(&network, &delta, t).unwrap();
        let explicit = difference_distribution_explicit(&network, &delta, t).unwrap();
        prop_assert!(x.same_payoffs(&explicit));
        let total = difference_value_sig(network.signature(), &delta, t).unwrap();
        prop_assert_eq!(x.total(), total);
        let report = core_check(&difference_table(&network, &delta, t).unwrap(), &x).unwrap();
        prop_assert!(report.in_core);
    }

    #[test]
    fn exact_strings_round_trip(
        numer in -9999i64..=9999, denom in 1i64..=9999,
    ) {
        let x = frac(numer, denom);
        prop_assert_eq!(parse(&to_exact(&x)).unwrap(), x);
    }

    #[test]
    fn decimal_rendering_stays_within_half_an_ulp(
        numer in -9999i64..=9999, denom in 1i64..=9999, places in 0usize..=6,
    ) {
        let x = frac(numer, denom);
        let rendered = parse(&to_decimal(&x, places)).unwrap();
        let error = if rendered >= x { &rendered - &x } else { &x - &rendered };
        let half_ulp = frac(1, 2) * pow(&frac(1, 10), places);
        prop_assert!(error <= half_ulp, "{} -> {}", to_exact(&x), to_exact(&rendered));
    }

    #[test]
    fn at_the_spectral_threshold_the_series_diverges(
        k in 1usize..=6, m in 1usize..=6, t in 1usize..=10,
    ) {
        let sig = Signature::new(k, m);
        let root = isqrt(sig.radicand());
        let threshold = frac(1, root as i64);
        // k*m/root^2 >= 1, so the walk series cannot converge there
        let network = BipartiteNetwork::from_sizes(k, m).unwrap();
        let verdict = convergence_check(&network, &threshold).unwrap();
        prop_assert!(!verdict.converges);
        prop_assert!(verdict.margin <= Scalar::zero());
        let divergent = matches!(
            an_value_sig(sig, &threshold),
            Err(Error::Divergent { .. })
        );
        prop_assert!(divergent);
        // while the truncated side keeps growing: parity steps never shrink
        let here = difference_value_sig(sig, &threshold, t).unwrap();
        let next = difference_value_sig(sig, &threshold, t + 2).unwrap();
        prop_assert!(here <= next);
    }
}

/// Deterministic companion to the divergence property: strictly past the
/// threshold the truncated values genuinely explode.
#[test]
fn far_past_the_threshold_growth_is_enormous() {
    let sig = Signature::new(2, 2);
    let near = fan_value_sig(sig, &params(int(1), 40));
    let far = fan_value_sig(sig, &params(int(1), 4));
    assert!(near / far > int(1_000_000));
}

/// The exact half-ulp tie: banker's rounding goes to the even digit.
#[test]
fn rendering_breaks_ties_to_even() {
    assert_eq!(to_decimal(&frac(25, 10), 0), "2");
    assert_eq!(to_decimal(&frac(35, 10), 0), "4");
    assert_eq!(to_decimal(&frac(125, 1000), 2), "0.12");
}
