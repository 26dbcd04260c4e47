//! Error type shared across the crate.
//!
//! Three failure families matter to callers (and map to distinct CLI exit
//! codes): malformed inputs, domain errors (asking for a limit value where
//! the walk series diverges), and capacity limits on the brute-force
//! enumeration paths.

use crate::network::Signature;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed or inconsistent input: bad literals, unknown node labels,
    /// invalid network descriptions, out-of-range parameters.
    #[error("invalid input: {0}")]
    Input(String),

    /// The walk series does not converge for this coalition shape at the
    /// requested attenuation weight, so no limit value exists.
    #[error(
        "series diverges on signature (k={}, m={}): needs delta^2 < 1/{}, got delta = {delta}",
        .sig.k, .sig.m, .sig.radicand()
    )]
    Divergent { sig: Signature, delta: Scalar },

    /// The requested computation enumerates more than this build is willing
    /// to chew through (e.g. raw subset enumeration on a large network).
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
