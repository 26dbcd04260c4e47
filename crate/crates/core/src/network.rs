//! Complete bipartite networks, coalitions, and their spectral data.
//!
//! A network is two disjoint sides of labeled nodes, `K` and `M`; every
//! cross-side pair is linked and no same-side pair is. Completeness is
//! structural — there is no edge list to get wrong. Nothing about a
//! coalition's productivity depends on *which* members it draws from each
//! side, only on how many, so most of the crate keys its work on the
//! coalition's [`Signature`] `(k, m)`.

use std::collections::BTreeSet;
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Hard cap on nodes per side. The engines are desk calculators built on
/// exact arithmetic; this bound keeps table sizes and radicands comfortably
/// in range while being far beyond anything the closed forms need.
pub const MAX_SIDE: usize = 1024;

/// Which side of the network a node sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    K,
    M,
}

impl Side {
    /// The other side.
    pub fn opposite(self) -> Side {
        match self {
            Side::K => Side::M,
            Side::M => Side::K,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::K => "K",
            Side::M => "M",
        })
    }
}

/// Coalition shape: `k` members from side `K` and `m` from side `M`.
///
/// The derived ordering is lexicographic in `(k, m)`, which is the canonical
/// iteration and reporting order everywhere in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub k: usize,
    pub m: usize,
}

impl Signature {
    pub fn new(k: usize, m: usize) -> Self {
        Signature { k, m }
    }

    /// Number of members.
    pub fn size(self) -> usize {
        self.k + self.m
    }

    /// `k * m`: the square of the largest adjacency eigenvalue of any
    /// coalition with this shape.
    pub fn radicand(self) -> u64 {
        self.k as u64 * self.m as u64
    }

    /// Componentwise `<=`: can a coalition of this shape sit inside one of
    /// shape `other`?
    pub fn fits_in(self, other: Signature) -> bool {
        self.k <= other.k && self.m <= other.m
    }

    /// How many members sit on `side`.
    pub fn count(self, side: Side) -> usize {
        match side {
            Side::K => self.k,
            Side::M => self.m,
        }
    }

    pub fn spectral_radius(self) -> SpectralRadius {
        SpectralRadius { radicand: self.radicand() }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.m)
    }
}

/// The largest eigenvalue of a coalition's adjacency matrix, `sqrt(k*m)`,
/// carried exactly as its radicand. Every decision that depends on it
/// (convergence gates, margins) compares squares, so the irrational value
/// itself never has to be materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpectralRadius {
    radicand: u64,
}

impl SpectralRadius {
    /// `k * m`.
    pub fn radicand(self) -> u64 {
        self.radicand
    }

    /// Floating-point approximation, for display only.
    pub fn approx(self) -> f64 {
        (self.radicand as f64).sqrt()
    }

    /// Does `delta` fall strictly inside the convergence range, i.e. is
    /// `radicand * delta^2 < 1`? Exact; no square roots involved.
    pub fn admits(self, delta: &Scalar) -> bool {
        self.margin(delta) > Scalar::zero()
    }

    /// `1 - radicand * delta^2`. Positive exactly when [`Self::admits`].
    pub fn margin(self, delta: &Scalar) -> Scalar {
        Scalar::one() - Scalar::from_integer(self.radicand.into()) * delta * delta
    }
}

fn validate_label(label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(Error::Input("node labels must be non-empty".into()));
    }
    if label.chars().any(|c| c.is_whitespace() || c == ',') {
        return Err(Error::Input(format!(
            "node label `{label}` contains whitespace or a comma; labels must be plain tokens"
        )));
    }
    Ok(())
}

/// A complete bipartite network: every `K`-side node linked to every
/// `M`-side node. Labels are caller-supplied strings, unique across both
/// sides; both sides are non-empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteNetwork {
    k_labels: Vec<String>,
    m_labels: Vec<String>,
}

impl BipartiteNetwork {
    pub fn new(k_labels: Vec<String>, m_labels: Vec<String>) -> Result<Self> {
        if k_labels.is_empty() || m_labels.is_empty() {
            return Err(Error::Input("both network sides must be non-empty".into()));
        }
        if k_labels.len() > MAX_SIDE || m_labels.len() > MAX_SIDE {
            return Err(Error::Capacity(format!(
                "network sides are limited to {MAX_SIDE} nodes each"
            )));
        }
        let mut seen = BTreeSet::new();
        for label in k_labels.iter().chain(m_labels.iter()) {
            validate_label(label)?;
            if !seen.insert(label.as_str()) {
                return Err(Error::Input(format!(
                    "duplicate node label `{label}`; labels must be unique across both sides"
                )));
            }
        }
        Ok(BipartiteNetwork { k_labels, m_labels })
    }

    /// Network with auto-generated labels `K1..Kk` and `M1..Mm`.
    pub fn from_sizes(k: usize, m: usize) -> Result<Self> {
        BipartiteNetwork::new(
            (1..=k).map(|i| format!("K{i}")).collect(),
            (1..=m).map(|j| format!("M{j}")).collect(),
        )
    }

    pub fn k_size(&self) -> usize {
        self.k_labels.len()
    }

    pub fn m_size(&self) -> usize {
        self.m_labels.len()
    }

    /// Total node count.
    pub fn size(&self) -> usize {
        self.k_size() + self.m_size()
    }

    pub fn k_labels(&self) -> &[String] {
        &self.k_labels
    }

    pub fn m_labels(&self) -> &[String] {
        &self.m_labels
    }

    /// All nodes in network order: the `K` side first, then `M`.
    pub fn nodes(&self) -> impl Iterator<Item = (&str, Side)> {
        self.k_labels
            .iter()
            .map(|l| (l.as_str(), Side::K))
            .chain(self.m_labels.iter().map(|l| (l.as_str(), Side::M)))
    }

    /// Grand-coalition signature `(|K|, |M|)`.
    pub fn signature(&self) -> Signature {
        Signature::new(self.k_size(), self.m_size())
    }

    pub fn side_of(&self, label: &str) -> Option<Side> {
        if self.k_labels.iter().any(|l| l == label) {
            Some(Side::K)
        } else if self.m_labels.iter().any(|l| l == label) {
            Some(Side::M)
        } else {
            None
        }
    }

    /// The grand coalition `N`.
    pub fn grand(&self) -> Coalition {
        Coalition {
            k_members: self.k_labels.iter().cloned().collect(),
            m_members: self.m_labels.iter().cloned().collect(),
        }
    }

    /// Induce the coalition with the given members. Unknown labels are input
    /// errors; duplicates are tolerated (it is a set).
    pub fn coalition<'a, I>(&self, members: I) -> Result<Coalition>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut coalition = Coalition::empty();
        for label in members {
            match self.side_of(label) {
                Some(Side::K) => {
                    coalition.k_members.insert(label.to_string());
                }
                Some(Side::M) => {
                    coalition.m_members.insert(label.to_string());
                }
                None => {
                    return Err(Error::Input(format!(
                        "unknown node label `{label}`"
                    )));
                }
            }
        }
        Ok(coalition)
    }

    /// Every coalition of the network, smallest-first by (size, members).
    /// There are `2^n` of them — meant for test oracles and the raw
    /// enumeration paths, which cap `n` themselves.
    pub fn coalitions(&self) -> impl Iterator<Item = Coalition> + '_ {
        let labels: Vec<(&str, Side)> = self.nodes().collect();
        let n = labels.len();
        assert!(n < usize::BITS as usize, "coalition enumeration overflow");
        (0usize..1 << n).map(move |mask| {
            let mut c = Coalition::empty();
            for (bit, (label, side)) in labels.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    match side {
                        Side::K => c.k_members.insert((*label).to_string()),
                        Side::M => c.m_members.insert((*label).to_string()),
                    };
                }
            }
            c
        })
    }
}

/// A subset of a network's nodes with its side bookkeeping. Only
/// constructible through [`BipartiteNetwork`] (or [`Coalition::empty`]), so
/// the side assignment is right by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalition {
    k_members: BTreeSet<String>,
    m_members: BTreeSet<String>,
}

impl Coalition {
    pub fn empty() -> Self {
        Coalition { k_members: BTreeSet::new(), m_members: BTreeSet::new() }
    }

    pub fn k_count(&self) -> usize {
        self.k_members.len()
    }

    pub fn m_count(&self) -> usize {
        self.m_members.len()
    }

    pub fn size(&self) -> usize {
        self.k_count() + self.m_count()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.k_count(), self.m_count())
    }

    pub fn contains(&self, label: &str) -> bool {
        self.side_of(label).is_some()
    }

    pub fn side_of(&self, label: &str) -> Option<Side> {
        if self.k_members.contains(label) {
            Some(Side::K)
        } else if self.m_members.contains(label) {
            Some(Side::M)
        } else {
            None
        }
    }

    pub fn k_members(&self) -> impl Iterator<Item = &str> {
        self.k_members.iter().map(String::as_str)
    }

    pub fn m_members(&self) -> impl Iterator<Item = &str> {
        self.m_members.iter().map(String::as_str)
    }

    /// Members in canonical order: the `K` block first, then `M`, each
    /// sorted by label. Adjacency rows and walk matrices use this order.
    pub fn members(&self) -> impl Iterator<Item = (&str, Side)> {
        self.k_members()
            .map(|l| (l, Side::K))
            .chain(self.m_members().map(|l| (l, Side::M)))
    }

    /// The coalition with `label` removed (unchanged if not a member).
    pub fn without(&self, label: &str) -> Coalition {
        let mut smaller = self.clone();
        smaller.k_members.remove(label);
        smaller.m_members.remove(label);
        smaller
    }

    /// Adjacency matrix of the induced subnetwork.
    pub fn adjacency(&self) -> AdjacencyMatrix {
        AdjacencyMatrix::for_signature(self.signature())
    }

    pub fn spectral_radius(&self) -> SpectralRadius {
        self.signature().spectral_radius()
    }
}

/// Dense 0/1 adjacency matrix of the subnetwork a coalition induces. Rows
/// and columns follow the coalition's canonical member order (`K` block
/// first), so the matrix is the block pattern `[[0, 1], [1, 0]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    k: usize,
    m: usize,
    entries: Vec<Vec<u8>>,
}

impl AdjacencyMatrix {
    pub fn for_signature(sig: Signature) -> Self {
        let dim = sig.size();
        let entries = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| u8::from((i < sig.k) != (j < sig.k)))
                    .collect()
            })
            .collect();
        AdjacencyMatrix { k: sig.k, m: sig.m, entries }
    }

    pub fn dim(&self) -> usize {
        self.k + self.m
    }

    pub fn k_count(&self) -> usize {
        self.k
    }

    pub fn m_count(&self) -> usize {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.entries
    }
}
