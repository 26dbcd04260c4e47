//! Truncated (finite-horizon) productivity games.
//!
//! The joint productivity of a coalition counts the walks of length at most
//! `t` in the subnetwork it induces, each walk of length `u` weighted
//! `delta^u`; length-0 walks are the members themselves. Because both sides
//! of a complete bipartite subnetwork are interchangeable, the count
//! collapses to closed forms in the signature `(k, m)`:
//!
//! - a walk of even length `2u` starting anywhere contributes `(k*m)^u`
//!   choices, and one of odd length `2u-1` alternates sides, so the
//!   coalition total is `s + (s*delta + 2) * sum_{u=1..floor(t/2)}
//!   (k*m)^u * delta^(2u-1)`, plus `2*(k*m)^((t+1)/2) * delta^t` when `t`
//!   is odd (`s` = coalition size);
//! - a single member's row sum splits the same way into even-length walks
//!   `(k*m*delta^2)^u` and odd-length walks `a^(u-1) * b^u * delta^(2u-1)`,
//!   where `b` is the opposite side's count.
//!
//! [`ProductivityMatrix`] is the deliberately naive oracle for all of this:
//! it materializes `sum_{u=0..t} delta^u * G^u` entry by entry with plain
//! matrix powers and no algebra, so the closed forms can be tested against
//! the definition.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{GameKind, GameTable};
use crate::network::{BipartiteNetwork, Coalition, Side, Signature};
use crate::scalar::{int, pow, Scalar};

/// Attenuation weight `delta >= 0` plus truncation horizon `t >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttenuationParams {
    delta: Scalar,
    horizon: usize,
}

impl AttenuationParams {
    pub fn new(delta: Scalar, horizon: usize) -> Result<Self> {
        check_delta(&delta)?;
        Ok(AttenuationParams { delta, horizon })
    }

    pub fn delta(&self) -> &Scalar {
        &self.delta
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }
}

pub(crate) fn check_delta(delta: &Scalar) -> Result<()> {
    if delta.is_negative() {
        return Err(Error::Input(format!(
            "attenuation weight must be non-negative, got {delta}"
        )));
    }
    Ok(())
}

/// Coalition value of the truncated game, closed form.
pub fn fan_value(coalition: &Coalition, params: &AttenuationParams) -> Scalar {
    fan_value_sig(coalition.signature(), params)
}

/// Signature-level truncated value.
pub fn fan_value_sig(sig: Signature, params: &AttenuationParams) -> Scalar {
    let delta = params.delta();
    let t = params.horizon();
    let size = int(sig.size() as i64);
    let km = Scalar::from_integer(sig.radicand().into());

    // Running term (k*m)^u * delta^(2u-1), advanced by k*m*delta^2 per step.
    let step = &km * delta * delta;
    let mut term = &km * delta;
    let mut odd_walks = Scalar::zero();
    for _ in 0..t / 2 {
        odd_walks += &term;
        term *= &step;
    }
    let mut value = &size + (&size * delta + int(2)) * odd_walks;
    if t % 2 == 1 {
        // `term` now holds u = (t+1)/2, whose delta exponent is exactly t.
        value += int(2) * term;
    }
    value
}

/// Productivity of one node inside a coalition: its row sum of the
/// truncated walk matrix. Non-members produce nothing.
pub fn individual_productivity(
    coalition: &Coalition,
    node: &str,
    params: &AttenuationParams,
) -> Scalar {
    match coalition.side_of(node) {
        None => Scalar::zero(),
        Some(side) => productivity_sig(coalition.signature(), side, params),
    }
}

/// Signature-level row sum for a member sitting on `side`. The side must be
/// inhabited (`k >= 1` for a `K`-member).
pub fn productivity_sig(sig: Signature, side: Side, params: &AttenuationParams) -> Scalar {
    assert!(
        sig.count(side) >= 1,
        "no member on side {side} in a coalition shaped {sig}"
    );
    let delta = params.delta();
    let t = params.horizon();
    let km = Scalar::from_integer(sig.radicand().into());
    let here = int(sig.count(side) as i64);
    let across = int(sig.count(side.opposite()) as i64);

    // Even-length walks return to the member's own side: (k*m*delta^2)^u.
    let even_step = &km * delta * delta;
    let mut even_term = even_step.clone();
    let mut total = Scalar::one();
    for _ in 0..t / 2 {
        total += &even_term;
        even_term *= &even_step;
    }
    // Odd-length walks end on the opposite side: here^(u-1) * across^u *
    // delta^(2u-1), advanced by the same factor per step. Odd horizons
    // admit one more of these than even ones.
    let odd_rounds = t / 2 + t % 2;
    let mut odd_term = &across * delta;
    for _ in 0..odd_rounds {
        total += &odd_term;
        odd_term *= &here * &across * delta * delta;
    }
    total
}

/// One-step difference `v^t - v^(t-1)`, closed form. The horizon must be at
/// least 1 — there is nothing to subtract at `t = 0`.
pub fn difference_value(coalition: &Coalition, delta: &Scalar, t: usize) -> Result<Scalar> {
    difference_value_sig(coalition.signature(), delta, t)
}

/// Signature-level one-step difference.
pub fn difference_value_sig(sig: Signature, delta: &Scalar, t: usize) -> Result<Scalar> {
    check_delta(delta)?;
    if t == 0 {
        return Err(Error::Input(
            "difference values need a horizon t >= 1".into(),
        ));
    }
    let km = Scalar::from_integer(sig.radicand().into());
    let value = if t.is_multiple_of(2) {
        int(sig.size() as i64) * pow(&km, t / 2) * pow(delta, t)
    } else {
        int(2) * pow(&km, t.div_ceil(2)) * pow(delta, t)
    };
    Ok(value)
}

/// Full signature table of the truncated game.
pub fn fan_table(network: &BipartiteNetwork, params: &AttenuationParams) -> GameTable {
    GameTable::build(
        network.clone(),
        GameKind::Fan { delta: params.delta().clone(), t: params.horizon() },
        |sig| Ok(fan_value_sig(sig, params)),
    )
    .expect("truncated values exist for every signature")
}

/// Full signature table of the one-step difference game.
pub fn difference_table(
    network: &BipartiteNetwork,
    delta: &Scalar,
    t: usize,
) -> Result<GameTable> {
    GameTable::build(
        network.clone(),
        GameKind::Difference { delta: delta.clone(), t },
        |sig| difference_value_sig(sig, delta, t),
    )
}

/// The truncated walk matrix `sum_{u=0..t} delta^u * G^u` of a coalition,
/// written out entrywise over exact rationals. `G` is the coalition's
/// adjacency matrix and rows follow its canonical member order.
///
/// This is the slow reference path: row sums re-derive member
/// productivities, the total re-derives the coalition value, and the test
/// suites hold the closed forms to it. The CLI exposes it behind
/// `--oracle` for spot checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductivityMatrix {
    labels: Vec<String>,
    k: usize,
    entries: Vec<Vec<Scalar>>,
}

impl ProductivityMatrix {
    pub fn compute(coalition: &Coalition, params: &AttenuationParams) -> Self {
        let labels: Vec<String> =
            coalition.members().map(|(l, _)| l.to_string()).collect();
        let k = coalition.k_count();
        let n = labels.len();
        let adjacency = coalition.adjacency();

        let identity: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                    .collect()
            })
            .collect();
        let mut accumulated = identity.clone();
        let mut walk_power = identity;
        let mut delta_power = Scalar::one();
        for _ in 1..=params.horizon() {
            // walk_power <- walk_power * G, the long way.
            let mut next = vec![vec![Scalar::zero(); n]; n];
            for (row, next_row) in walk_power.iter().zip(next.iter_mut()) {
                for (j, cell) in next_row.iter_mut().enumerate() {
                    for (l, entry) in row.iter().enumerate() {
                        if adjacency.entry(l, j) == 1 {
                            *cell += entry;
                        }
                    }
                }
            }
            walk_power = next;
            delta_power *= params.delta();
            for i in 0..n {
                for j in 0..n {
                    accumulated[i][j] += &delta_power * &walk_power[i][j];
                }
            }
        }
        ProductivityMatrix { labels, k, entries: accumulated }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn k_count(&self) -> usize {
        self.k
    }

    /// Member labels in row order (`K` block first).
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn row_sum(&self, i: usize) -> Scalar {
        self.entries[i].iter().sum()
    }

    /// Row sum of the member with this label, if present.
    pub fn node_row_sum(&self, label: &str) -> Option<Scalar> {
        let i = self.labels.iter().position(|l| l == label)?;
        Some(self.row_sum(i))
    }

    /// Sum of all entries: the coalition value, the slow way.
    pub fn total(&self) -> Scalar {
        (0..self.dim()).map(|i| self.row_sum(i)).sum()
    }
}
