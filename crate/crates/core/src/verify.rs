//! Brute-force verification: core membership, convexity, monotonicity,
//! superadditivity, the three fairness axioms with exact witnesses, the
//! axiom-independence counterexamples, and the uniqueness reconstruction
//! of the link ratio productivity distribution.

use std::collections::BTreeMap;

use num::Zero;

use crate::allocation::{productivity_allocation, Allocation};
use crate::an::an_value_sig;
use crate::error::{Error, Result};
use crate::game::GameTable;
use crate::network::{BipartiteNetwork, Side, Signature};
use crate::scalar::{int, Scalar};

/// Maximum network size for signature-level enumeration checks.
pub const CORE_SIGNATURE_MAX: usize = 24;

/// Maximum network size for raw subset enumeration checks.
pub const CORE_SUBSETS_MAX: usize = 16;

/// Outcome of a core-membership check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreReport {
    /// Efficient and no coalition can improve on its payoff.
    pub in_core: bool,
    /// Payoffs sum exactly to the grand coalition's value.
    pub efficient: bool,
    /// Blocking signatures with their (positive) shortfalls, worst first,
    /// ties broken by lexicographic signature. Under subset enumeration a
    /// signature's shortfall is the worst over its coalitions.
    pub violations: Vec<(Signature, Scalar)>,
}

fn check_same_network(game: &GameTable, allocation: &Allocation) -> Result<()> {
    let nodes: Vec<(&str, Side)> = game.network().nodes().collect();
    let allocated: Vec<(&str, Side)> = allocation
        .entries()
        .iter()
        .map(|(label, side, _)| (label.as_str(), *side))
        .collect();
    if nodes != allocated {
        return Err(Error::Input(
            "allocation does not cover the game's network".into(),
        ));
    }
    Ok(())
}

fn check_enumeration_cap(game: &GameTable, cap: usize, what: &str) -> Result<()> {
    let n = game.network().size();
    if n > cap {
        return Err(Error::Capacity(format!(
            "{what} handles at most {cap} nodes, got {n}"
        )));
    }
    Ok(())
}

fn sort_violations(violations: &mut [(Signature, Scalar)]) {
    violations.sort_by(|(sig_a, short_a), (sig_b, short_b)| {
        short_b.cmp(short_a).then(sig_a.cmp(sig_b))
    });
}

fn report_from(efficient: bool, mut violations: Vec<(Signature, Scalar)>) -> CoreReport {
    sort_violations(&mut violations);
    CoreReport {
        in_core: efficient && violations.is_empty(),
        efficient,
        violations,
    }
}

/// Core check for side-symmetric allocations: by symmetry only the
/// `(|K|+1)(|M|+1)` signatures need testing.
pub fn core_check_signatures(
    game: &GameTable,
    allocation: &Allocation,
) -> Result<CoreReport> {
    check_same_network(game, allocation)?;
    check_enumeration_cap(game, CORE_SIGNATURE_MAX, "signature-level core check")?;
    let (k_payoff, m_payoff) = allocation.side_values().ok_or_else(|| {
        Error::Input(
            "allocation is not side-symmetric; use the subset core check".into(),
        )
    })?;
    let efficient = allocation.total() == *game.grand_value();
    let mut violations = Vec::new();
    for (sig, value) in game.entries() {
        let payoff =
            int(sig.count(Side::K) as i64) * &k_payoff + int(sig.count(Side::M) as i64) * &m_payoff;
        if payoff < *value {
            violations.push((sig, value - payoff));
        }
    }
    Ok(report_from(efficient, violations))
}

/// Core check by raw enumeration of all `2^n` coalitions; handles arbitrary
/// allocations and validates the signature-level reduction.
pub fn core_check_subsets(game: &GameTable, allocation: &Allocation) -> Result<CoreReport> {
    check_same_network(game, allocation)?;
    check_enumeration_cap(game, CORE_SUBSETS_MAX, "subset core check")?;
    let efficient = allocation.total() == *game.grand_value();
    let mut worst: BTreeMap<Signature, Scalar> = BTreeMap::new();
    for coalition in game.network().coalitions() {
        let payoff = allocation.sum_over(&coalition)?;
        let value = game.value_of(&coalition)?;
        if payoff < *value {
            let shortfall = value - payoff;
            let slot = worst.entry(coalition.signature()).or_insert_with(Scalar::zero);
            if shortfall > *slot {
                *slot = shortfall;
            }
        }
    }
    Ok(report_from(efficient, worst.into_iter().collect()))
}

/// Core check, picking the cheapest sound path: signature-level enumeration
/// for side-symmetric allocations, raw subsets otherwise.
pub fn core_check(game: &GameTable, allocation: &Allocation) -> Result<CoreReport> {
    if allocation.side_values().is_some() {
        core_check_signatures(game, allocation)
    } else {
        core_check_subsets(game, allocation)
    }
}

/// First witness that a game is not convex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityViolation {
    /// Side of the member whose marginal contribution shrank.
    pub side: Side,
    /// Signature (member included) inside the smaller coalition.
    pub smaller: Signature,
    /// Componentwise-larger signature (member included).
    pub larger: Signature,
    /// Marginal contribution at `smaller`.
    pub smaller_marginal: Scalar,
    /// Marginal contribution at `larger`; convexity demands it be at least
    /// `smaller_marginal`.
    pub larger_marginal: Scalar,
}

/// Outcome of a convexity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityReport {
    /// Marginal contributions are componentwise nondecreasing on both sides.
    pub convex: bool,
    /// First violation in scan order (side `K` before `M`, signatures
    /// lexicographic), if any.
    pub violation: Option<ConvexityViolation>,
}

fn side_marginal(game: &GameTable, side: Side, sig: Signature) -> Result<Scalar> {
    let without = match side {
        Side::K => Signature::new(sig.count(Side::K) - 1, sig.count(Side::M)),
        Side::M => Signature::new(sig.count(Side::K), sig.count(Side::M) - 1),
    };
    Ok(game.value(sig)? - game.value(without)?)
}

/// Check convexity: a member's marginal contribution may only grow as the
/// coalition around it grows, on either side, for every comparable pair of
/// signatures.
pub fn convexity_check(game: &GameTable) -> Result<ConvexityReport> {
    check_enumeration_cap(game, CORE_SIGNATURE_MAX, "convexity check")?;
    let kk = game.k_size();
    let mm = game.m_size();
    for side in [Side::K, Side::M] {
        // signatures that contain at least one member on `side`
        let (k_low, m_low) = match side {
            Side::K => (1usize, 0usize),
            Side::M => (0, 1),
        };
        let mut inhabited = Vec::new();
        for k in k_low..=kk {
            for m in m_low..=mm {
                inhabited.push(Signature::new(k, m));
            }
        }
        for &small in &inhabited {
            for &large in &inhabited {
                if small == large || !small.fits_in(large) {
                    continue;
                }
                let small_marginal = side_marginal(game, side, small)?;
                let large_marginal = side_marginal(game, side, large)?;
                if small_marginal > large_marginal {
                    return Ok(ConvexityReport {
                        convex: false,
                        violation: Some(ConvexityViolation {
                            side,
                            smaller: small,
                            larger: large,
                            smaller_marginal: small_marginal,
                            larger_marginal: large_marginal,
                        }),
                    });
                }
            }
        }
    }
    Ok(ConvexityReport { convex: true, violation: None })
}

/// First componentwise-neighboring pair with a decreasing value, if any:
/// `Some((smaller, larger))` with `v(smaller) > v(larger)`.
pub fn monotonicity_check(game: &GameTable) -> Result<Option<(Signature, Signature)>> {
    check_enumeration_cap(game, CORE_SIGNATURE_MAX, "monotonicity check")?;
    for (sig, value) in game.entries() {
        for neighbor in [
            Signature::new(sig.count(Side::K) + 1, sig.count(Side::M)),
            Signature::new(sig.count(Side::K), sig.count(Side::M) + 1),
        ] {
            if neighbor.fits_in(game.network().signature())
                && *value > *game.value(neighbor)?
            {
                return Ok(Some((sig, neighbor)));
            }
        }
    }
    Ok(None)
}

/// First disjoint pair of signatures whose union is worth less than the
/// parts, if any: `Some((first, second))` with
/// `v(first + second) < v(first) + v(second)`.
pub fn superadditivity_check(
    game: &GameTable,
) -> Result<Option<(Signature, Signature)>> {
    check_enumeration_cap(game, CORE_SIGNATURE_MAX, "superadditivity check")?;
    let kk = game.k_size();
    let mm = game.m_size();
    for k1 in 0..=kk {
        for m1 in 0..=mm {
            let first = Signature::new(k1, m1);
            for k2 in 0..=(kk - k1) {
                for m2 in 0..=(mm - m1) {
                    let second = Signature::new(k2, m2);
                    let union = Signature::new(k1 + k2, m1 + m2);
                    if *game.value(union)? < game.value(first)? + game.value(second)? {
                        return Ok(Some((first, second)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Exact evaluation of the three fairness axioms against the limit game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    /// Efficiency: payoffs sum to the grand coalition's limit value.
    pub ef: bool,
    /// Equality in bipartition: equal payoffs within each side.
    pub eb: bool,
    /// Link balanced productivity: both sides' per-link surplus rates agree.
    pub lbp: bool,
    /// `(payoff total, grand value)` when efficiency fails.
    pub ef_witness: Option<(Scalar, Scalar)>,
    /// First unequal same-side pair `(node, payoff, node, payoff)` when
    /// bipartition equality fails.
    pub eb_witness: Option<(String, Scalar, String, Scalar)>,
    /// The two unequal surplus rates when link balance fails.
    pub lbp_witness: Option<(Scalar, Scalar)>,
}

impl AxiomReport {
    /// All three axioms hold.
    pub fn all(&self) -> bool {
        self.ef && self.eb && self.lbp
    }

    /// `(ef, eb, lbp)` as a tuple, for compact comparisons.
    pub fn flags(&self) -> (bool, bool, bool) {
        (self.ef, self.eb, self.lbp)
    }
}

/// Check efficiency, bipartition equality, and link balance for an
/// allocation on the limit game at `delta`. Each failed axiom carries an
/// exact witness equation.
pub fn axiom_check(
    network: &BipartiteNetwork,
    delta: &Scalar,
    allocation: &Allocation,
) -> Result<AxiomReport> {
    let allocated: Vec<(&str, Side)> = allocation
        .entries()
        .iter()
        .map(|(label, side, _)| (label.as_str(), *side))
        .collect();
    if network.nodes().collect::<Vec<_>>() != allocated {
        return Err(Error::Input(
            "allocation does not cover the network".into(),
        ));
    }
    let grand = an_value_sig(network.signature(), delta)?;

    let total = allocation.total();
    let ef = total == grand;
    let ef_witness = (!ef).then_some((total, grand));

    let mut eb_witness = None;
    for side in [Side::K, Side::M] {
        let mut on_side = allocation
            .entries()
            .iter()
            .filter(|(_, node_side, _)| *node_side == side);
        if let Some((first_label, _, first_value)) = on_side.next() {
            for (label, _, value) in on_side {
                if value != first_value {
                    eb_witness = Some((
                        first_label.clone(),
                        first_value.clone(),
                        label.clone(),
                        value.clone(),
                    ));
                    break;
                }
            }
        }
        if eb_witness.is_some() {
            break;
        }
    }
    let eb = eb_witness.is_none();

    let side_surplus = |side: Side| -> Scalar {
        allocation
            .entries()
            .iter()
            .filter(|(_, node_side, _)| *node_side == side)
            .fold(Scalar::zero(), |acc, (_, _, value)| acc + value - int(1))
    };
    let k_rate = side_surplus(Side::K) / int(network.m_size() as i64);
    let m_rate = side_surplus(Side::M) / int(network.k_size() as i64);
    let lbp = k_rate == m_rate;
    let lbp_witness = (!lbp).then_some((k_rate, m_rate));

    Ok(AxiomReport { ef, eb, lbp, ef_witness, eb_witness, lbp_witness })
}

/// One axiom-independence counterexample and its evaluation.
#[derive(Clone, Debug)]
pub struct IndependenceCase {
    /// Which axiom the case is built to break.
    pub name: &'static str,
    /// The network carrying the counterexample.
    pub network: BipartiteNetwork,
    /// The weight it is evaluated at.
    pub delta: Scalar,
    /// The counterexample allocation.
    pub allocation: Allocation,
    /// Expected `(ef, eb, lbp)` flags.
    pub expected: (bool, bool, bool),
    /// Actual evaluation.
    pub report: AxiomReport,
    /// Did the evaluation match the expectation?
    pub as_claimed: bool,
}

/// The three counterexamples showing the axioms independent: each satisfies
/// exactly two of efficiency, bipartition equality, and link balance.
///
/// The efficiency-breaking case (`p - 1` on the two-by-two network) is
/// evaluated at `delta = 1/4`: the two-by-two walk series needs
/// `delta < 1/2`, and any convergent weight exhibits the same failure.
pub fn independence_suite() -> Vec<IndependenceCase> {
    let mut cases = Vec::new();

    // Link balance fails: raw limit productivity overpays the scarce side.
    let network = BipartiteNetwork::from_sizes(1, 2).expect("valid sizes");
    let delta = crate::scalar::frac(1, 2);
    let allocation = productivity_allocation(&network, &delta).expect("convergent");
    cases.push(build_case("lbp_fails", network, delta, allocation, (true, true, false)));

    // Bipartition equality fails: shift one side's payoffs while keeping
    // totals and per-link rates intact (weight 0 keeps the game additive).
    let network = BipartiteNetwork::from_sizes(2, 2).expect("valid sizes");
    let delta = int(0);
    let allocation = Allocation::custom_ordered(
        &network,
        "skewed_within_sides",
        vec![int(0), int(2), int(0), int(2)],
    )
    .expect("covers the network");
    cases.push(build_case("eb_fails", network, delta, allocation, (true, false, true)));

    // Efficiency fails: limit productivities with the intrinsic unit
    // removed no longer add up to the grand value.
    let network = BipartiteNetwork::from_sizes(2, 2).expect("valid sizes");
    let delta = crate::scalar::frac(1, 4);
    let productivity = productivity_allocation(&network, &delta).expect("convergent");
    let reduced = productivity
        .values()
        .into_iter()
        .map(|value| value - int(1))
        .collect();
    let allocation = Allocation::custom_ordered(&network, "productivity_minus_ones", reduced)
        .expect("covers the network");
    cases.push(build_case("ef_fails", network, delta, allocation, (false, true, true)));

    cases
}

fn build_case(
    name: &'static str,
    network: BipartiteNetwork,
    delta: Scalar,
    allocation: Allocation,
    expected: (bool, bool, bool),
) -> IndependenceCase {
    let report = axiom_check(&network, &delta, &allocation).expect("convergent case");
    let as_claimed = report.flags() == expected;
    IndependenceCase { name, network, delta, allocation, expected, report, as_claimed }
}

/// Solve the two-unknown linear system imposed by efficiency, bipartition
/// equality, and link balance:
///
/// ```text
/// |K| x_K + |M| x_M = v_delta(N)
/// (|K|/|M|) (|K| x_K - |K|) = |M| x_M - |M|
/// ```
///
/// The unique solution; always exactly the link ratio productivity
/// distribution.
pub fn uniqueness_reconstruction(
    network: &BipartiteNetwork,
    delta: &Scalar,
) -> Result<Allocation> {
    let grand = an_value_sig(network.signature(), delta)?;
    let kk = int(network.k_size() as i64);
    let mm = int(network.m_size() as i64);
    let n = int(network.size() as i64);
    // substituting |M| x_M = v(N) - |K| x_K into the balance equation:
    let k_block = (&mm * &grand + &kk * &kk - &mm * &mm) / n;
    let k_value = &k_block / &kk;
    let m_value = (grand - k_block) / mm;
    Ok(Allocation::custom_ordered(
        network,
        "uniqueness_reconstruction",
        network
            .nodes()
            .map(|(_, side)| match side {
                Side::K => k_value.clone(),
                Side::M => m_value.clone(),
            })
            .collect(),
    )
    .expect("covers the network"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::{difference_distribution, lrp, shapley_closed};
    use crate::an::an_table;
    use crate::fan::{difference_table, fan_table, AttenuationParams};
    use crate::game::GameKind;
    use crate::scalar::frac;

    fn net(k: usize, m: usize) -> BipartiteNetwork {
        BipartiteNetwork::from_sizes(k, m).unwrap()
    }

    #[test]
    fn productivity_is_stable_on_the_one_by_two_network() {
        let network = net(1, 2);
        let game = an_table(&network, &frac(1, 2)).unwrap();
        let payoffs = productivity_allocation(&network, &frac(1, 2)).unwrap();
        let report = core_check(&game, &payoffs).unwrap();
        assert!(report.in_core && report.efficient);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn starving_one_side_is_reported_worst_first() {
        let network = net(1, 2);
        let game = an_table(&network, &frac(1, 2)).unwrap();
        let greedy =
            Allocation::custom_ordered(&network, "greedy", vec![int(10), int(0), int(0)])
                .unwrap();
        let report = core_check(&game, &greedy).unwrap();
        assert!(report.efficient, "10 + 0 + 0 is the grand value");
        assert!(!report.in_core);
        assert_eq!(
            report.violations,
            vec![
                (Signature::new(0, 2), int(2)),
                (Signature::new(0, 1), int(1)),
            ]
        );
    }

    #[test]
    fn lrp_is_stable_on_the_one_by_three_network() {
        let network = net(1, 3);
        let game = an_table(&network, &frac(1, 2)).unwrap();
        let omega = lrp(&network, &frac(1, 2)).unwrap();
        assert_eq!(omega.values()[0], int(19));
        let report = core_check(&game, &omega).unwrap();
        assert!(report.in_core);
    }

    #[test]
    fn inefficient_allocations_are_never_in_the_core() {
        let network = net(1, 2);
        let game = an_table(&network, &frac(1, 2)).unwrap();
        let ones =
            Allocation::custom_ordered(&network, "ones", vec![int(1); 3]).unwrap();
        let report = core_check(&game, &ones).unwrap();
        assert!(!report.efficient && !report.in_core);
        assert_eq!(
            report.violations,
            vec![
                (Signature::new(1, 2), int(7)),
                (Signature::new(1, 1), int(2)),
            ]
        );
    }

    #[test]
    fn signature_and_subset_paths_agree() {
        for (k, m, delta) in [(1, 2, frac(1, 2)), (2, 2, frac(1, 4)), (2, 3, frac(1, 4))] {
            let network = net(k, m);
            let game = an_table(&network, &delta).unwrap();
            for allocation in [
                productivity_allocation(&network, &delta).unwrap(),
                shapley_closed(&network, &delta).unwrap(),
                lrp(&network, &delta).unwrap(),
            ] {
                let by_signature = core_check_signatures(&game, &allocation).unwrap();
                let by_subsets = core_check_subsets(&game, &allocation).unwrap();
                assert_eq!(by_signature, by_subsets, "({k},{m}) {}", allocation.tag());
            }
        }
    }

    #[test]
    fn non_symmetric_allocations_need_the_subset_path() {
        let network = net(2, 2);
        let game = an_table(&network, &frac(1, 4)).unwrap();
        let skewed = Allocation::custom_ordered(
            &network,
            "skewed",
            vec![int(8), int(0), int(0), int(0)],
        )
        .unwrap();
        assert!(core_check_signatures(&game, &skewed).is_err());
        let report = core_check(&game, &skewed).unwrap();
        assert!(report.efficient, "the grand value is 8");
        // worst coalition per signature: {K2, M1, M2} is paid 0 against
        // v(1,2) = (3 + 4*1/4)/(1 - 2/16) = 32/7
        assert_eq!(report.violations[0], (Signature::new(1, 2), frac(32, 7)));
    }

    #[test]
    fn allocations_must_cover_the_games_network() {
        let game = an_table(&net(1, 2), &frac(1, 2)).unwrap();
        let other = productivity_allocation(&net(2, 2), &frac(1, 4)).unwrap();
        assert!(matches!(core_check(&game, &other), Err(Error::Input(_))));
    }

    #[test]
    fn walk_games_are_convex() {
        let params = AttenuationParams::new(frac(1, 3), 5).unwrap();
        let report = convexity_check(&fan_table(&net(2, 2), &params)).unwrap();
        assert!(report.convex && report.violation.is_none());
        let report = convexity_check(&an_table(&net(2, 3), &frac(1, 4)).unwrap()).unwrap();
        assert!(report.convex);
    }

    #[test]
    fn a_depressed_grand_value_breaks_convexity() {
        let network = net(1, 1);
        let game = GameTable::build(
            network,
            GameKind::Custom { label: "depressed".into() },
            |sig| {
                Ok(if sig.size() == 2 { int(1) } else { int(sig.size() as i64) })
            },
        )
        .unwrap();
        let report = convexity_check(&game).unwrap();
        assert!(!report.convex);
        let violation = report.violation.unwrap();
        assert_eq!(violation.side, Side::K);
        assert_eq!(violation.smaller, Signature::new(1, 0));
        assert_eq!(violation.larger, Signature::new(1, 1));
        assert_eq!(violation.smaller_marginal, int(1));
        assert_eq!(violation.larger_marginal, int(0));
        // the same table also fails superadditivity, but stays monotone
        assert_eq!(
            superadditivity_check(&game).unwrap(),
            Some((Signature::new(0, 1), Signature::new(1, 0)))
        );
        assert_eq!(monotonicity_check(&game).unwrap(), None);
    }

    #[test]
    fn monotonicity_flags_a_decreasing_step() {
        let game = GameTable::build(
            net(1, 1),
            GameKind::Custom { label: "spiked".into() },
            |sig| {
                Ok(if sig == Signature::new(0, 1) { int(5) } else { int(sig.size() as i64) })
            },
        )
        .unwrap();
        assert_eq!(
            monotonicity_check(&game).unwrap(),
            Some((Signature::new(0, 1), Signature::new(1, 1)))
        );
    }

    #[test]
    fn walk_games_are_monotone_and_superadditive() {
        let params = AttenuationParams::new(frac(1, 4), 6).unwrap();
        for game in [
            fan_table(&net(3, 2), &params),
            an_table(&net(3, 2), &frac(1, 4)).unwrap(),
        ] {
            assert_eq!(monotonicity_check(&game).unwrap(), None);
            assert_eq!(superadditivity_check(&game).unwrap(), None);
        }
    }

    #[test]
    fn difference_distributions_are_stable_for_their_games() {
        let network = net(2, 2);
        for t in 1..=4usize {
            let game = difference_table(&network, &frac(1, 4), t).unwrap();
            let x = difference_distribution(&network, &frac(1, 4), t).unwrap();
            let report = core_check(&game, &x).unwrap();
            assert!(report.in_core, "t = {t}");
        }
    }

    #[test]
    fn lrp_satisfies_all_three_axioms() {
        let network = net(1, 2);
        let omega = lrp(&network, &frac(1, 2)).unwrap();
        let report = axiom_check(&network, &frac(1, 2), &omega).unwrap();
        assert!(report.all());
        assert!(report.ef_witness.is_none());
        assert!(report.eb_witness.is_none());
        assert!(report.lbp_witness.is_none());
    }

    #[test]
    fn raw_productivity_breaks_link_balance_with_the_printed_witness() {
        let network = net(1, 2);
        let payoffs = productivity_allocation(&network, &frac(1, 2)).unwrap();
        let report = axiom_check(&network, &frac(1, 2), &payoffs).unwrap();
        assert_eq!(report.flags(), (true, true, false));
        assert_eq!(report.lbp_witness, Some((frac(3, 2), int(4))));
    }

    #[test]
    fn skewed_sides_break_bipartition_equality_only() {
        let network = net(2, 2);
        let skewed = Allocation::custom_ordered(
            &network,
            "skewed_within_sides",
            vec![int(0), int(2), int(0), int(2)],
        )
        .unwrap();
        let report = axiom_check(&network, &int(0), &skewed).unwrap();
        assert_eq!(report.flags(), (true, false, true));
        assert_eq!(
            report.eb_witness,
            Some(("K1".into(), int(0), "K2".into(), int(2)))
        );
    }

    #[test]
    fn the_independence_suite_matches_its_claims() {
        let cases = independence_suite();
        assert_eq!(cases.len(), 3);
        for case in &cases {
            assert!(case.as_claimed, "{}: {:?}", case.name, case.report.flags());
        }
        let ef_case = cases.iter().find(|case| case.name == "ef_fails").unwrap();
        assert_eq!(ef_case.report.ef_witness, Some((int(4), int(8))));
        let lbp_case = cases.iter().find(|case| case.name == "lbp_fails").unwrap();
        assert_eq!(lbp_case.report.lbp_witness, Some((frac(3, 2), int(4))));
    }

    #[test]
    fn reconstruction_solves_the_axiom_system() {
        let recon = uniqueness_reconstruction(&net(1, 2), &frac(1, 2)).unwrap();
        assert_eq!(recon.values(), vec![frac(17, 3), frac(13, 6), frac(13, 6)]);
        let recon = uniqueness_reconstruction(&net(1, 3), &frac(1, 2)).unwrap();
        assert_eq!(recon.values(), vec![int(19), int(3), int(3), int(3)]);
        let recon = uniqueness_reconstruction(&net(3, 2), &int(0)).unwrap();
        assert!(recon.values().iter().all(|v| *v == int(1)));
    }

    #[test]
    fn reconstruction_always_lands_on_lrp() {
        for k in 1..=4usize {
            for m in 1..=4usize {
                let network = net(k, m);
                for delta in [int(0), frac(1, 10), frac(1, 4), frac(1, 3)] {
                    if !network.signature().spectral_radius().admits(&delta) {
                        continue;
                    }
                    let recon = uniqueness_reconstruction(&network, &delta).unwrap();
                    let omega = lrp(&network, &delta).unwrap();
                    assert!(recon.same_payoffs(&omega), "({k},{m}) at {delta}");
                    let report = axiom_check(&network, &delta, &omega).unwrap();
                    assert!(report.all());
                }
            }
        }
    }

    #[test]
    fn enumeration_caps_are_enforced() {
        let wide = net(13, 13); // 26 nodes
        let game = GameTable::build(
            wide.clone(),
            GameKind::Custom { label: "additive".into() },
            |sig| Ok(int(sig.size() as i64)),
        )
        .unwrap();
        let flat =
            Allocation::custom_ordered(&wide, "flat", vec![int(1); 26]).unwrap();
        assert!(matches!(core_check(&game, &flat), Err(Error::Capacity(_))));
        assert!(matches!(convexity_check(&game), Err(Error::Capacity(_))));

        let mid = net(9, 8); // 17 nodes: signatures fine, subsets capped
        let game = GameTable::build(
            mid.clone(),
            GameKind::Custom { label: "additive".into() },
            |sig| Ok(int(sig.size() as i64)),
        )
        .unwrap();
        let flat = Allocation::custom_ordered(&mid, "flat", vec![int(1); 17]).unwrap();
        assert!(core_check_signatures(&game, &flat).unwrap().in_core);
        assert!(matches!(
            core_check_subsets(&game, &flat),
            Err(Error::Capacity(_))
        ));
    }
}
