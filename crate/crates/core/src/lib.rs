//! Exact cooperative game analysis on complete bipartite networks.
//!
//! Nodes sit on two sides, `K` and `M`, and every cross-side pair is
//! linked. Each node has an intrinsic productivity of 1 and gains more
//! along network walks, attenuated by a weight `delta` per step. Summing
//! the attenuated walks up to a horizon `t` gives each coalition a value —
//! a transferable-utility game — and letting `t` grow gives the limit game
//! wherever the walk series converges (`delta` below the reciprocal
//! spectral radius of the coalition's subnetwork).
//!
//! The crate computes, entirely in arbitrary-precision rational
//! arithmetic:
//!
//! - truncated and limit game values, per coalition or as full
//!   signature-indexed tables ([`fan`], [`an`], [`game`]);
//! - node productivities, their matrix-power oracle, and the one-step
//!   difference games ([`fan`]);
//! - allocation rules: limit productivity payoffs, the Shapley value
//!   (closed form plus two independent oracles), the link ratio
//!   productivity distribution and its defining series
//!   ([`allocation`]);
//! - verification tools: core membership, convexity, monotonicity,
//!   superadditivity, the three fairness axioms with exact witnesses, and
//!   the axiom-independence counterexamples ([`verify`]);
//! - exact scalar plumbing: strict rational parsing and deterministic
//!   decimal rendering with banker's rounding ([`scalar`]).
//!
//! Divergent weights are domain errors carrying the offending coalition
//! signature — never silent approximations.
//!
//! ```
//! use netprod::{an_value, fan_value, AttenuationParams, BipartiteNetwork};
//! use netprod::scalar::{frac, int};
//!
//! let network = BipartiteNetwork::from_sizes(1, 2)?;
//! let grand = network.grand();
//! let params = AttenuationParams::new(frac(1, 2), 10)?;
//! assert_eq!(fan_value(&grand, &params), frac(313, 32));
//! assert_eq!(an_value(&grand, &frac(1, 2))?, int(10));
//! # Ok::<(), netprod::Error>(())
//! ```

pub mod allocation;
pub mod an;
pub mod error;
pub mod fan;
pub mod game;
pub mod network;
pub mod scalar;
pub mod verify;

pub use allocation::{
    difference_distribution, difference_distribution_explicit, lrp, lrp_series_oracle,
    productivity_allocation, shapley_closed, shapley_oracle, shapley_subsets, Allocation,
    Rule, ShapleyCoefficients,
};
pub use an::{
    an_table, an_value, an_value_sig, convergence_check, limit_productivity,
    marginal_contribution, ConvergenceVerdict,
};
pub use error::{Error, Result};
pub use fan::{
    difference_table, difference_value, fan_table, fan_value, individual_productivity,
    AttenuationParams, ProductivityMatrix,
};
pub use game::{GameKind, GameTable};
pub use network::{
    AdjacencyMatrix, BipartiteNetwork, Coalition, Side, Signature, SpectralRadius,
    MAX_SIDE,
};
pub use scalar::Scalar;
pub use verify::{
    axiom_check, convexity_check, core_check, core_check_signatures, core_check_subsets,
    independence_suite, monotonicity_check, superadditivity_check,
    uniqueness_reconstruction, AxiomReport, ConvexityReport, CoreReport,
    IndependenceCase,
};
