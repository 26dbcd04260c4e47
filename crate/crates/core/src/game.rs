//! Signature-indexed value tables.
//!
//! Every game in this crate is side-symmetric: a coalition's worth depends
//! only on its [`Signature`]. A [`GameTable`] therefore stores one value per
//! `(k, m)` with `0 <= k <= |K|`, `0 <= m <= |M|` — the memoized form that
//! the Shapley oracle, the core checks, and the convexity checks all walk.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::network::{BipartiteNetwork, Coalition, Signature};
use crate::scalar::{to_exact, Scalar};

/// What a table's values mean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameKind {
    /// Truncated walk-productivity game at horizon `t`.
    Fan { delta: Scalar, t: usize },
    /// Limit walk-productivity game.
    An { delta: Scalar },
    /// One-step difference game `v^t - v^(t-1)`.
    Difference { delta: Scalar, t: usize },
    /// Anything else (hand-built tables).
    Custom { label: String },
}

impl GameKind {
    /// The attenuation weight, when the kind has one.
    pub fn delta(&self) -> Option<&Scalar> {
        match self {
            GameKind::Fan { delta, .. }
            | GameKind::An { delta }
            | GameKind::Difference { delta, .. } => Some(delta),
            GameKind::Custom { .. } => None,
        }
    }

    /// The horizon, when the kind has one.
    pub fn horizon(&self) -> Option<usize> {
        match self {
            GameKind::Fan { t, .. } | GameKind::Difference { t, .. } => Some(*t),
            GameKind::An { .. } | GameKind::Custom { .. } => None,
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameKind::Fan { delta, t } => {
                write!(f, "fan(delta={}, t={t})", to_exact(delta))
            }
            GameKind::An { delta } => write!(f, "an(delta={})", to_exact(delta)),
            GameKind::Difference { delta, t } => {
                write!(f, "diff(delta={}, t={t})", to_exact(delta))
            }
            GameKind::Custom { label } => write!(f, "custom({label})"),
        }
    }
}

/// A complete table of coalition values, keyed by signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameTable {
    network: BipartiteNetwork,
    kind: GameKind,
    values: BTreeMap<Signature, Scalar>,
}

impl GameTable {
    /// Build a table by evaluating `value_of` on every signature. The
    /// closure sees signatures in lexicographic order.
    pub fn build<F>(network: BipartiteNetwork, kind: GameKind, mut value_of: F) -> Result<Self>
    where
        F: FnMut(Signature) -> Result<Scalar>,
    {
        let mut values = BTreeMap::new();
        for k in 0..=network.k_size() {
            for m in 0..=network.m_size() {
                let sig = Signature::new(k, m);
                values.insert(sig, value_of(sig)?);
            }
        }
        GameTable::from_values(network, kind, values)
    }

    /// Wrap an existing value map, checking that it covers exactly the
    /// network's signature grid and gives the empty coalition nothing.
    pub fn from_values(
        network: BipartiteNetwork,
        kind: GameKind,
        values: BTreeMap<Signature, Scalar>,
    ) -> Result<Self> {
        let expected = (network.k_size() + 1) * (network.m_size() + 1);
        if values.len() != expected {
            return Err(Error::Input(format!(
                "game table has {} entries, expected {} for a {}x{} network",
                values.len(),
                expected,
                network.k_size(),
                network.m_size()
            )));
        }
        for sig in values.keys() {
            if !sig.fits_in(network.signature()) {
                return Err(Error::Input(format!(
                    "game table contains out-of-range signature {sig}"
                )));
            }
        }
        match values.get(&Signature::new(0, 0)) {
            Some(v) if v.is_zero() => {}
            _ => {
                return Err(Error::Input(
                    "game table must give the empty coalition value 0".into(),
                ))
            }
        }
        Ok(GameTable { network, kind, values })
    }

    pub fn network(&self) -> &BipartiteNetwork {
        &self.network
    }

    pub fn kind(&self) -> &GameKind {
        &self.kind
    }

    pub fn k_size(&self) -> usize {
        self.network.k_size()
    }

    pub fn m_size(&self) -> usize {
        self.network.m_size()
    }

    /// Value of any coalition with the given signature.
    pub fn value(&self, sig: Signature) -> Result<&Scalar> {
        self.values.get(&sig).ok_or_else(|| {
            Error::Input(format!(
                "signature {sig} is outside this {}x{} table",
                self.k_size(),
                self.m_size()
            ))
        })
    }

    pub fn value_of(&self, coalition: &Coalition) -> Result<&Scalar> {
        self.value(coalition.signature())
    }

    pub fn grand_value(&self) -> &Scalar {
        &self.values[&self.network.signature()]
    }

    /// All `(signature, value)` pairs in lexicographic signature order.
    pub fn entries(&self) -> impl Iterator<Item = (Signature, &Scalar)> {
        self.values.iter().map(|(sig, v)| (*sig, v))
    }
}
