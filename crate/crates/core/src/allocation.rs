//! Allocation rules: individual-productivity payoffs, the Shapley value
//! (closed form plus two independent oracles), the link-ratio-productivity
//! distribution, and the per-horizon difference distribution.
//!
//! Every rule here is side-symmetric — nodes on the same side of the
//! bipartition always receive equal payoffs — but [`Allocation`] also
//! accepts arbitrary user-supplied payoff vectors so that verification
//! code can probe counterexamples.

use std::collections::BTreeMap;

use num::{BigInt, One, Zero};

use crate::an::marginal_contribution_sig;
use crate::error::{Error, Result};
use crate::fan::{check_delta, difference_value_sig};
use crate::game::GameTable;
use crate::network::{BipartiteNetwork, Coalition, Side, Signature};
use crate::scalar::{int, pow, Scalar};

/// Which rule produced an allocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Limit productivity inside the grand coalition.
    Productivity,
    /// Shapley value via the explicit double-sum formula.
    ShapleyClosed,
    /// Shapley value via signature-counting enumeration.
    ShapleyOracle,
    /// Link ratio productivity distribution.
    Lrp,
    /// Distribution of the one-step difference game at horizon `t`.
    DifferenceX { t: usize },
    /// Anything else (user-supplied vectors, test oracles).
    Custom(String),
}

impl Rule {
    /// Stable identifier used in rendered output.
    pub fn tag(&self) -> String {
        match self {
            Rule::Productivity => "productivity".into(),
            Rule::ShapleyClosed => "shapley_closed".into(),
            Rule::ShapleyOracle => "shapley_oracle".into(),
            Rule::Lrp => "lrp".into(),
            Rule::DifferenceX { t } => format!("difference_x({t})"),
            Rule::Custom(label) => label.clone(),
        }
    }
}

/// A payoff vector over a network's nodes, kept in node order
/// (the `K` block first, then the `M` block).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Allocation {
    rule: Rule,
    delta: Option<Scalar>,
    entries: Vec<(String, Side, Scalar)>,
}

impl Allocation {
    fn per_side(
        network: &BipartiteNetwork,
        rule: Rule,
        delta: Option<Scalar>,
        k_value: Scalar,
        m_value: Scalar,
    ) -> Self {
        let entries = network
            .nodes()
            .map(|(label, side)| {
                let value = match side {
                    Side::K => k_value.clone(),
                    Side::M => m_value.clone(),
                };
                (label.to_owned(), side, value)
            })
            .collect();
        Allocation { rule, delta, entries }
    }

    /// A user-supplied allocation keyed by node label; the map must cover
    /// the network's nodes exactly.
    pub fn custom(
        network: &BipartiteNetwork,
        label: impl Into<String>,
        payoffs: &BTreeMap<String, Scalar>,
    ) -> Result<Self> {
        if payoffs.len() != network.size() {
            return Err(Error::Input(format!(
                "allocation covers {} nodes but the network has {}",
                payoffs.len(),
                network.size()
            )));
        }
        let mut entries = Vec::with_capacity(network.size());
        for (node, side) in network.nodes() {
            let value = payoffs
                .get(node)
                .ok_or_else(|| Error::Input(format!("no payoff for node `{node}`")))?;
            entries.push((node.to_owned(), side, value.clone()));
        }
        Ok(Allocation { rule: Rule::Custom(label.into()), delta: None, entries })
    }

    /// A user-supplied allocation given in node order (`K` block first).
    pub fn custom_ordered(
        network: &BipartiteNetwork,
        label: impl Into<String>,
        values: Vec<Scalar>,
    ) -> Result<Self> {
        if values.len() != network.size() {
            return Err(Error::Input(format!(
                "{} payoffs supplied for a network of {} nodes",
                values.len(),
                network.size()
            )));
        }
        let entries = network
            .nodes()
            .zip(values)
            .map(|((label, side), value)| (label.to_owned(), side, value))
            .collect();
        Ok(Allocation { rule: Rule::Custom(label.into()), delta: None, entries })
    }

    /// The producing rule.
    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    /// Stable identifier of the producing rule.
    pub fn tag(&self) -> String {
        self.rule.tag()
    }

    /// The weight parameter, when the rule has one.
    pub fn delta(&self) -> Option<&Scalar> {
        self.delta.as_ref()
    }

    /// Number of nodes paid.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Never true for allocations built from a valid network.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Payoff of one node.
    pub fn get(&self, label: &str) -> Option<&Scalar> {
        self.entries
            .iter()
            .find(|(node, _, _)| node == label)
            .map(|(_, _, value)| value)
    }

    /// All `(label, side, payoff)` rows in node order.
    pub fn entries(&self) -> &[(String, Side, Scalar)] {
        &self.entries
    }

    /// Payoffs in node order, without labels.
    pub fn values(&self) -> Vec<Scalar> {
        self.entries.iter().map(|(_, _, value)| value.clone()).collect()
    }

    /// Same labels, sides, and payoffs (the producing rule may differ).
    pub fn same_payoffs(&self, other: &Allocation) -> bool {
        self.entries == other.entries
    }

    /// Sum of all payoffs.
    pub fn total(&self) -> Scalar {
        self.entries
            .iter()
            .fold(Scalar::zero(), |acc, (_, _, value)| acc + value)
    }

    /// `(K payoff, M payoff)` when every node on a side is paid the same;
    /// `None` for allocations that are not side-symmetric.
    pub fn side_values(&self) -> Option<(Scalar, Scalar)> {
        let mut k_value: Option<&Scalar> = None;
        let mut m_value: Option<&Scalar> = None;
        for (_, side, value) in &self.entries {
            let slot = match side {
                Side::K => &mut k_value,
                Side::M => &mut m_value,
            };
            match slot {
                None => *slot = Some(value),
                Some(seen) if *seen == value => {}
                Some(_) => return None,
            }
        }
        Some((k_value?.clone(), m_value?.clone()))
    }

    /// Sum of the payoffs of a coalition's members.
    pub fn sum_over(&self, coalition: &Coalition) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for (label, _) in coalition.members() {
            let value = self.get(label).ok_or_else(|| {
                Error::Input(format!("coalition member `{label}` is not allocated"))
            })?;
            total += value;
        }
        Ok(total)
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn binomial(n: usize, r: usize) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    num::integer::binomial(BigInt::from(n), BigInt::from(r))
}

/// Combinatorial weights behind the Shapley double sums.
///
/// With sides of sizes `X` and `Y`, `pi(i, j)` is the probability that in a
/// uniformly random arrival order a fixed `X`-side player completes a
/// coalition holding `i` players of its own side (itself included) and `j`
/// of the other:
///
/// ```text
/// pi(i, j) = C(Y, j) * C(X-1, i-1) * (i+j-1)! * (X+Y-i-j)! / (X+Y)!
/// ```
#[derive(Clone, Copy, Debug)]
pub struct ShapleyCoefficients {
    x_size: usize,
    y_size: usize,
}

impl ShapleyCoefficients {
    /// Weights for a player on a side of `x_size` facing a side of `y_size`.
    pub fn new(x_size: usize, y_size: usize) -> Self {
        assert!(x_size >= 1, "the player's own side cannot be empty");
        ShapleyCoefficients { x_size, y_size }
    }

    /// The arrival-order weight `pi(i, j)` for `1 <= i <= X`, `0 <= j <= Y`.
    pub fn pi(&self, i: usize, j: usize) -> Scalar {
        assert!(
            (1..=self.x_size).contains(&i) && j <= self.y_size,
            "pi({i}, {j}) out of range for sides ({}, {})",
            self.x_size,
            self.y_size
        );
        let n = self.x_size + self.y_size;
        let numerator = binomial(self.y_size, j)
            * binomial(self.x_size - 1, i - 1)
            * factorial(i + j - 1)
            * factorial(n - i - j);
        Scalar::new(numerator, factorial(n))
    }

    /// The order weight `gamma(s) = (s-1)! (n-s)! / n!` of one coalition of
    /// size `s` in the game on all `n = X + Y` players.
    pub fn gamma(&self, s: usize) -> Scalar {
        let n = self.x_size + self.y_size;
        assert!((1..=n).contains(&s), "gamma({s}) out of range for n = {n}");
        Scalar::new(factorial(s - 1) * factorial(n - s), factorial(n))
    }

    /// Sum of `pi` over its whole index range; always exactly 1.
    pub fn normalization(&self) -> Scalar {
        let mut total = Scalar::zero();
        for i in 1..=self.x_size {
            for j in 0..=self.y_size {
                total += self.pi(i, j);
            }
        }
        total
    }
}

fn require_grand_convergent(network: &BipartiteNetwork, delta: &Scalar) -> Result<()> {
    check_delta(delta)?;
    let sig = network.signature();
    if !sig.spectral_radius().admits(delta) {
        return Err(Error::Divergent { sig, delta: delta.clone() });
    }
    Ok(())
}

/// Pay every node its limit productivity inside the grand coalition.
pub fn productivity_allocation(
    network: &BipartiteNetwork,
    delta: &Scalar,
) -> Result<Allocation> {
    require_grand_convergent(network, delta)?;
    let sig = network.signature();
    let k_value = crate::an::limit_productivity_sig(sig, Side::K, delta)?;
    let m_value = crate::an::limit_productivity_sig(sig, Side::M, delta)?;
    Ok(Allocation::per_side(
        network,
        Rule::Productivity,
        Some(delta.clone()),
        k_value,
        m_value,
    ))
}

/// Shapley value of the limit game by the explicit double-sum formula:
/// each side's payoff is the `pi`-weighted sum of that side's closed-form
/// marginal contributions over all signatures the side inhabits.
pub fn shapley_closed(network: &BipartiteNetwork, delta: &Scalar) -> Result<Allocation> {
    require_grand_convergent(network, delta)?;
    let kk = network.k_size();
    let mm = network.m_size();

    let k_weights = ShapleyCoefficients::new(kk, mm);
    let mut phi_k = Scalar::zero();
    for k in 1..=kk {
        for m in 0..=mm {
            let marginal = marginal_contribution_sig(Signature::new(k, m), Side::K, delta)?;
            phi_k += k_weights.pi(k, m) * marginal;
        }
    }

    let m_weights = ShapleyCoefficients::new(mm, kk);
    let mut phi_m = Scalar::zero();
    for m in 1..=mm {
        for k in 0..=kk {
            let marginal = marginal_contribution_sig(Signature::new(k, m), Side::M, delta)?;
            phi_m += m_weights.pi(m, k) * marginal;
        }
    }

    Ok(Allocation::per_side(
        network,
        Rule::ShapleyClosed,
        Some(delta.clone()),
        phi_k,
        phi_m,
    ))
}

/// Maximum network size for the signature-counting Shapley oracle.
pub const SHAPLEY_ORACLE_MAX: usize = 20;

/// Maximum network size for the raw subset-sum Shapley oracle.
pub const SHAPLEY_SUBSETS_MAX: usize = 12;

/// Shapley value of an arbitrary signature game by counting, for each side,
/// how many coalitions realize each signature:
///
/// ```text
/// phi_K = sum over k=1..K, m=0..M of
///     C(K-1, k-1) * C(M, m) * gamma(k+m) * (v(k,m) - v(k-1,m))
/// ```
///
/// and symmetrically for the `M` side.
pub fn shapley_oracle(game: &GameTable) -> Result<Allocation> {
    let network = game.network();
    if network.size() > SHAPLEY_ORACLE_MAX {
        return Err(Error::Capacity(format!(
            "Shapley oracle handles at most {SHAPLEY_ORACLE_MAX} nodes, got {}",
            network.size()
        )));
    }
    let kk = network.k_size();
    let mm = network.m_size();

    let k_weights = ShapleyCoefficients::new(kk, mm);
    let mut phi_k = Scalar::zero();
    for k in 1..=kk {
        for m in 0..=mm {
            let marginal =
                game.value(Signature::new(k, m))? - game.value(Signature::new(k - 1, m))?;
            phi_k += k_weights.pi(k, m) * marginal;
        }
    }

    let m_weights = ShapleyCoefficients::new(mm, kk);
    let mut phi_m = Scalar::zero();
    for m in 1..=mm {
        for k in 0..=kk {
            let marginal =
                game.value(Signature::new(k, m))? - game.value(Signature::new(k, m - 1))?;
            phi_m += m_weights.pi(m, k) * marginal;
        }
    }

    Ok(Allocation::per_side(
        network,
        Rule::ShapleyOracle,
        game.kind().delta().cloned(),
        phi_k,
        phi_m,
    ))
}

/// Shapley value by brute force over all `2^n` coalitions; validates the
/// signature-counting reduction on small networks.
pub fn shapley_subsets(game: &GameTable) -> Result<Allocation> {
    let network = game.network();
    let n = network.size();
    if n > SHAPLEY_SUBSETS_MAX {
        return Err(Error::Capacity(format!(
            "subset Shapley oracle handles at most {SHAPLEY_SUBSETS_MAX} nodes, got {n}"
        )));
    }
    let weights = ShapleyCoefficients::new(network.k_size(), network.m_size());
    let mut payoffs: BTreeMap<String, Scalar> = network
        .nodes()
        .map(|(label, _)| (label.to_owned(), Scalar::zero()))
        .collect();
    for coalition in network.coalitions() {
        if coalition.is_empty() {
            continue;
        }
        let gamma = weights.gamma(coalition.size());
        let value = game.value_of(&coalition)?;
        for (label, _) in coalition.members() {
            let rest = game.value_of(&coalition.without(label))?;
            let share = &gamma * (value - rest);
            *payoffs.get_mut(label).expect("member of the network") += share;
        }
    }
    let entries = network
        .nodes()
        .map(|(label, side)| {
            let value = payoffs.remove(label).expect("every node accumulated");
            (label.to_owned(), side, value)
        })
        .collect();
    Ok(Allocation {
        rule: Rule::Custom("shapley_subsets".into()),
        delta: game.kind().delta().cloned(),
        entries,
    })
}

fn difference_shares(
    network: &BipartiteNetwork,
    delta: &Scalar,
    t: usize,
) -> Result<(Scalar, Scalar)> {
    let sig = network.signature();
    let total = difference_value_sig(sig, delta, t)?;
    let per_node = total / int(network.size() as i64);
    let kk = int(network.k_size() as i64);
    let mm = int(network.m_size() as i64);
    Ok((&per_node * &mm / &kk, per_node * kk / mm))
}

/// Distribute the one-step difference game's grand value with the link
/// ratio: `K`-side nodes weight their equal share by `|M|/|K|`, `M`-side
/// nodes by `|K|/|M|`. Efficient for the difference game by construction.
pub fn difference_distribution(
    network: &BipartiteNetwork,
    delta: &Scalar,
    t: usize,
) -> Result<Allocation> {
    let (k_value, m_value) = difference_shares(network, delta, t)?;
    Ok(Allocation::per_side(
        network,
        Rule::DifferenceX { t },
        Some(delta.clone()),
        k_value,
        m_value,
    ))
}

/// The same distribution through the explicit parity-split formulas
/// (`K`-side, even `t`: `K^(t/2-1) M^(t/2+1) delta^t`; odd `t`:
/// `(2/n) K^((t-1)/2) M^((t+3)/2) delta^t`; mirrored for `M`). Exists as an
/// independent cross-check of [`difference_distribution`].
pub fn difference_distribution_explicit(
    network: &BipartiteNetwork,
    delta: &Scalar,
    t: usize,
) -> Result<Allocation> {
    check_delta(delta)?;
    if t == 0 {
        return Err(Error::Input(
            "the difference game needs a horizon of at least 1".into(),
        ));
    }
    let kk = int(network.k_size() as i64);
    let mm = int(network.m_size() as i64);
    let weight = pow(delta, t);
    let (k_value, m_value) = if t.is_multiple_of(2) {
        (
            pow(&kk, t / 2 - 1) * pow(&mm, t / 2 + 1) * &weight,
            pow(&mm, t / 2 - 1) * pow(&kk, t / 2 + 1) * &weight,
        )
    } else {
        let scale = int(2) / int(network.size() as i64);
        (
            &scale * pow(&kk, (t - 1) / 2) * pow(&mm, (t + 3) / 2) * &weight,
            &scale * pow(&mm, (t - 1) / 2) * pow(&kk, (t + 3) / 2) * &weight,
        )
    };
    Ok(Allocation::per_side(
        network,
        Rule::DifferenceX { t },
        Some(delta.clone()),
        k_value,
        m_value,
    ))
}

/// Link ratio productivity distribution, closed form:
///
/// ```text
/// omega_K = 1 + (|M|/|K| * delta + 2|M|/(n|K|)) * |K||M|delta / (1 - |K||M|delta^2)
/// ```
///
/// and mirrored for the `M` side. At `delta = 0` the formula itself
/// evaluates to the all-ones vector; there is no special case.
pub fn lrp(network: &BipartiteNetwork, delta: &Scalar) -> Result<Allocation> {
    require_grand_convergent(network, delta)?;
    let sig = network.signature();
    let kk = int(network.k_size() as i64);
    let mm = int(network.m_size() as i64);
    let n = int(network.size() as i64);
    let margin = sig.spectral_radius().margin(delta);
    let pump = &kk * &mm * delta / margin;
    let k_value = Scalar::one() + (&mm / &kk * delta + int(2) * &mm / (&n * &kk)) * &pump;
    let m_value = Scalar::one() + (&kk / &mm * delta + int(2) * &kk / (&n * &mm)) * &pump;
    Ok(Allocation::per_side(
        network,
        Rule::Lrp,
        Some(delta.clone()),
        k_value,
        m_value,
    ))
}

/// Partial sums of the series defining the link ratio productivity
/// distribution: ones plus the difference distributions through `t_max`.
/// A test oracle for [`lrp`]; meaningful on the convergent range, where the
/// gap to the limit is at most `C * (|K||M|delta^2)^floor(t_max/2)`
/// componentwise.
///
/// # Panics
///
/// Panics if `t_max` is 0 or `delta` is negative (contract violations).
pub fn lrp_series_oracle(
    network: &BipartiteNetwork,
    delta: &Scalar,
    t_max: usize,
) -> Allocation {
    assert!(t_max >= 1, "the series needs at least one term");
    check_delta(delta).expect("weight must be nonnegative");
    let mut k_value = Scalar::one();
    let mut m_value = Scalar::one();
    for t in 1..=t_max {
        let (k_term, m_term) =
            difference_shares(network, delta, t).expect("t >= 1 and delta validated");
        k_value += k_term;
        m_value += m_term;
    }
    Allocation::per_side(
        network,
        Rule::Custom(format!("lrp_series(t_max={t_max})")),
        Some(delta.clone()),
        k_value,
        m_value,
    )
}
