//! Limit (infinite-horizon) games on the convergent range.
//!
//! Letting the truncation horizon grow, the walk series of a coalition with
//! signature `(k, m)` converges exactly when `k*m*delta^2 < 1` — that is,
//! when `delta` lies strictly below the reciprocal spectral radius
//! `1/sqrt(k*m)` of the induced subnetwork. On that range the geometric
//! sums collapse:
//!
//! - coalition value: `(k + m + 2*k*m*delta) / (1 - k*m*delta^2)`;
//! - member productivity: `(1 + b*delta) / (1 - k*m*delta^2)`, with `b` the
//!   opposite side's count;
//! - marginal contribution of a member:
//!   `(1 + b*delta)^2 / ((1 - k*m*delta^2) * (1 - k*m*delta^2 + b*delta^2))`,
//!   the second factor being the smaller coalition's convergence margin.
//!
//! Everything here is exact; divergence is a domain error carrying the
//! offending signature, never an approximation.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::check_delta;
use crate::game::{GameKind, GameTable};
use crate::network::{BipartiteNetwork, Coalition, Side, Signature};
use crate::scalar::{int, Scalar};

/// Convergence verdict for a network's grand coalition at a given weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceVerdict {
    /// Does the walk series of the grand coalition converge?
    pub converges: bool,
    /// `|K| * |M|`: the series converges iff `delta^2 * radicand < 1`.
    pub threshold_radicand: u64,
    /// `1 - |K| * |M| * delta^2`; positive exactly when `converges`.
    pub margin: Scalar,
}

/// Check the grand coalition's walk series at `delta`.
pub fn convergence_check(
    network: &BipartiteNetwork,
    delta: &Scalar,
) -> Result<ConvergenceVerdict> {
    check_delta(delta)?;
    let radius = network.signature().spectral_radius();
    Ok(ConvergenceVerdict {
        converges: radius.admits(delta),
        threshold_radicand: radius.radicand(),
        margin: radius.margin(delta),
    })
}

fn require_convergent(sig: Signature, delta: &Scalar) -> Result<Scalar> {
    check_delta(delta)?;
    let margin = sig.spectral_radius().margin(delta);
    if sig.radicand() > 0 && !(margin > Scalar::zero()) {
        return Err(Error::Divergent { sig, delta: delta.clone() });
    }
    Ok(margin)
}

/// Limit value of a coalition's game. Divergent weights are domain errors.
pub fn an_value(coalition: &Coalition, delta: &Scalar) -> Result<Scalar> {
    an_value_sig(coalition.signature(), delta)
}

/// Signature-level limit value.
pub fn an_value_sig(sig: Signature, delta: &Scalar) -> Result<Scalar> {
    let margin = require_convergent(sig, delta)?;
    let km = Scalar::from_integer(sig.radicand().into());
    let linked = int(sig.size() as i64) + int(2) * km * delta;
    Ok(linked / margin)
}

/// Limit productivity of one node inside a coalition; non-members produce
/// nothing.
pub fn limit_productivity(
    coalition: &Coalition,
    node: &str,
    delta: &Scalar,
) -> Result<Scalar> {
    match coalition.side_of(node) {
        None => {
            check_delta(delta)?;
            Ok(Scalar::zero())
        }
        Some(side) => limit_productivity_sig(coalition.signature(), side, delta),
    }
}

/// Signature-level limit productivity for a member on `side` (which must be
/// inhabited).
pub fn limit_productivity_sig(
    sig: Signature,
    side: Side,
    delta: &Scalar,
) -> Result<Scalar> {
    assert!(
        sig.count(side) >= 1,
        "no member on side {side} in a coalition shaped {sig}"
    );
    let margin = require_convergent(sig, delta)?;
    let across = int(sig.count(side.opposite()) as i64);
    Ok((Scalar::one() + across * delta) / margin)
}

/// Marginal contribution of a member to its coalition in the limit game,
/// closed form: `v(S) - v(S minus the member)` without building either
/// value. The node must be a member.
pub fn marginal_contribution(
    coalition: &Coalition,
    node: &str,
    delta: &Scalar,
) -> Result<Scalar> {
    match coalition.side_of(node) {
        None => Err(Error::Input(format!(
            "`{node}` is not a member of the coalition"
        ))),
        Some(side) => marginal_contribution_sig(coalition.signature(), side, delta),
    }
}

/// Signature-level marginal contribution of a member on `side`.
pub fn marginal_contribution_sig(
    sig: Signature,
    side: Side,
    delta: &Scalar,
) -> Result<Scalar> {
    assert!(
        sig.count(side) >= 1,
        "no member on side {side} in a coalition shaped {sig}"
    );
    let margin = require_convergent(sig, delta)?;
    let across = int(sig.count(side.opposite()) as i64);
    let gain = Scalar::one() + &across * delta;
    // Margin of the coalition with the member removed.
    let smaller_margin = &margin + across * delta * delta;
    Ok(&gain * &gain / (margin * smaller_margin))
}

/// Full signature table of the limit game. Fails with the grand signature
/// if the series diverges there (sub-coalitions only ever relax the bound).
pub fn an_table(network: &BipartiteNetwork, delta: &Scalar) -> Result<GameTable> {
    let verdict = convergence_check(network, delta)?;
    if !verdict.converges {
        return Err(Error::Divergent {
            sig: network.signature(),
            delta: delta.clone(),
        });
    }
    GameTable::build(
        network.clone(),
        GameKind::An { delta: delta.clone() },
        |sig| an_value_sig(sig, delta),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{fan_value_sig, AttenuationParams};
    use crate::scalar::frac;

    #[test]
    fn limit_values_on_the_one_by_two_network() {
        let delta = frac(1, 2);
        assert_eq!(an_value_sig(Signature::new(1, 0), &delta).unwrap(), int(1));
        assert_eq!(an_value_sig(Signature::new(0, 2), &delta).unwrap(), int(2));
        assert_eq!(an_value_sig(Signature::new(1, 1), &delta).unwrap(), int(4));
        assert_eq!(an_value_sig(Signature::new(1, 2), &delta).unwrap(), int(10));
    }

    #[test]
    fn limit_values_on_the_one_by_three_network() {
        // K = {1}, M = {2, 3, 4}; columns delta = 1/2 and delta = 1/3.
        let cases = [
            (Signature::new(1, 0), int(1), int(1)),
            (Signature::new(0, 2), int(2), int(2)),
            (Signature::new(1, 1), int(4), int(3)),
            (Signature::new(0, 3), int(3), int(3)),
            (Signature::new(1, 2), int(10), frac(39, 7)),
            (Signature::new(1, 3), int(28), int(9)),
        ];
        for (sig, at_half, at_third) in cases {
            assert_eq!(an_value_sig(sig, &frac(1, 2)).unwrap(), at_half, "{sig} at 1/2");
            assert_eq!(an_value_sig(sig, &frac(1, 3)).unwrap(), at_third, "{sig} at 1/3");
        }
    }

    #[test]
    fn divergent_weights_are_domain_errors_with_the_signature() {
        let sig = Signature::new(2, 2);
        let err = an_value_sig(sig, &frac(1, 2)).unwrap_err();
        match err {
            Error::Divergent { sig: reported, delta } => {
                assert_eq!(reported, sig);
                assert_eq!(delta, frac(1, 2));
            }
            other => panic!("expected a divergence error, got {other:?}"),
        }
        // strictly inside the range is fine
        assert!(an_value_sig(sig, &frac(49, 100)).is_ok());
        // one-sided coalitions converge at any weight
        assert_eq!(an_value_sig(Signature::new(0, 3), &int(7)).unwrap(), int(3));
    }

    #[test]
    fn verdict_reports_threshold_and_margin() {
        let net = BipartiteNetwork::from_sizes(1, 2).unwrap();
        let good = convergence_check(&net, &frac(1, 2)).unwrap();
        assert!(good.converges);
        assert_eq!(good.threshold_radicand, 2);
        assert_eq!(good.margin, frac(1, 2));
        let bad = convergence_check(&net, &frac(3, 4)).unwrap();
        assert!(!bad.converges);
        assert_eq!(bad.margin, frac(-1, 8));
        assert!(convergence_check(&net, &frac(-1, 2)).is_err());
    }

    #[test]
    fn member_productivities_match_the_expected_columns() {
        // (1,2) at 1/2 -> (4, 3); (1,3) at 1/2 -> (10, 6); (1,3) at 1/3 -> (3, 2).
        let table = [
            (Signature::new(1, 2), frac(1, 2), int(4), int(3)),
            (Signature::new(1, 3), frac(1, 2), int(10), int(6)),
            (Signature::new(1, 3), frac(1, 3), int(3), int(2)),
        ];
        for (sig, delta, k_value, m_value) in table {
            assert_eq!(limit_productivity_sig(sig, Side::K, &delta).unwrap(), k_value);
            assert_eq!(limit_productivity_sig(sig, Side::M, &delta).unwrap(), m_value);
        }
    }

    #[test]
    fn non_members_have_zero_limit_productivity() {
        let net = BipartiteNetwork::from_sizes(1, 2).unwrap();
        let pair = net.coalition(["K1", "M1"]).unwrap();
        assert_eq!(limit_productivity(&pair, "M2", &frac(1, 2)).unwrap(), int(0));
        assert!(marginal_contribution(&pair, "M2", &frac(1, 2)).is_err());
    }

    #[test]
    fn marginal_closed_form_equals_the_value_difference() {
        let net = BipartiteNetwork::from_sizes(3, 3).unwrap();
        for delta in [frac(0, 1), frac(1, 10), frac(1, 4)] {
            for coalition in net.coalitions() {
                for (label, _) in coalition.members() {
                    let closed =
                        marginal_contribution(&coalition, label, &delta).unwrap();
                    let whole = an_value(&coalition, &delta).unwrap();
                    let rest =
                        an_value(&coalition.without(label), &delta).unwrap();
                    assert_eq!(closed, whole - rest);
                }
            }
        }
    }

    #[test]
    fn truncated_values_increase_to_the_limit() {
        // Gap shrinks monotonically and is below 1e-6 once the squared-step
        // bound (k*m*delta^2)^(t/2) drops below 1e-8.
        let tiny = frac(1, 1_000_000);
        let bound_target = frac(1, 100_000_000);
        for (k, m, delta) in [
            (1usize, 2usize, frac(1, 2)),
            (2, 2, frac(1, 3)),
            (3, 4, frac(1, 4)),
            (1, 1, frac(9, 10)),
        ] {
            let sig = Signature::new(k, m);
            let limit = an_value_sig(sig, &delta).unwrap();
            let step = Scalar::from_integer(sig.radicand().into()) * &delta * &delta;
            let mut gap_before = None;
            let mut t = 0usize;
            loop {
                let truncated =
                    fan_value_sig(sig, &AttenuationParams::new(delta.clone(), t).unwrap());
                let gap = &limit - &truncated;
                assert!(gap > Scalar::zero(), "strictly below the limit");
                if let Some(previous) = gap_before {
                    assert!(gap <= previous, "gap narrows with the horizon");
                }
                gap_before = Some(gap.clone());
                let bound = crate::scalar::pow(&step, t / 2);
                if bound < bound_target {
                    assert!(gap < tiny, "gap {gap} at t={t} should be under 1e-6");
                    break;
                }
                t += 2;
                assert!(t < 10_000, "runaway horizon in test");
            }
        }
    }

    #[test]
    fn tables_fail_fast_on_divergence_and_match_pointwise_otherwise() {
        let net = BipartiteNetwork::from_sizes(2, 3).unwrap();
        let table = an_table(&net, &frac(1, 4)).unwrap();
        for (sig, value) in table.entries() {
            assert_eq!(*value, an_value_sig(sig, &frac(1, 4)).unwrap());
        }
        match an_table(&net, &frac(1, 2)) {
            Err(Error::Divergent { sig, .. }) => assert_eq!(sig, Signature::new(2, 3)),
            other => panic!("expected divergence, got {other:?}"),
        }
    }
}
