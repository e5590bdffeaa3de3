//! Exact symbolic tools for complex orthogonal designs (CODs).
//!
//! A COD is a p×n matrix whose entries are 0 or ±z_j / ±z_j^* over formal
//! variables z_1..z_k, satisfying Oᴴ·O = (Σ_j z_j z_j^*)·I_n. The crate
//! builds the classical design families, verifies the orthogonality
//! identity by exact monomial arithmetic (no floating point anywhere),
//! decomposes designs into atomic parts, canonicalizes atomic parts under
//! the standard equivalence operations, and solves the parameter
//! feasibility system that governs which [p, n, k] triples are realizable.
//!
//! Modules:
//! - [`f2vec`]: fixed-length bit vectors indexing rows and variables.
//! - [`cod`]: the matrix model, symbolic Gram verification, predicates.
//! - [`io`]: text/JSON parsing and text/JSON/CSV/LaTeX serialization.
//! - [`generators`]: the explicit design constructions.
//! - [`structure`]: equivalence ops, decomposition, canonicalization,
//!   equivalence testing via signatures.
//! - [`params`]: parameter tables, feasibility enumeration, rate/delay
//!   formulas.
//! - [`cli`]: the `codforge` command-line front end.

// Index-based loops and `% 2` tests mirror the underlying math (1-based
// matrix coordinates, mod-2 parities); the iterator and `is_multiple_of`
// rewrites clippy proposes read worse in this domain.
#![allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]

pub mod cli;
pub mod cod;
pub mod f2vec;
pub mod generators;
pub mod io;
pub mod params;
pub mod structure;
mod uf;

use thiserror::Error;

/// Unified error type for all fallible operations in the crate.
#[derive(Debug, Error)]
pub enum CodError {
    /// A caller-supplied argument is outside the documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Malformed textual or JSON input.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// The input fails the orthogonality identity (or a structural
    /// consequence of it that the operation relies on).
    #[error("not an orthogonal design: {0}")]
    NotACod(String),

    /// An atomic part's parameters match no known atomic class.
    #[error("no atomic class matches parameters [{p}, {n}, {k}]")]
    Unclassifiable { p: usize, n: usize, k: usize },

    /// Canonicalization could not map the input onto the canonical target.
    #[error("not equivalent to the canonical form: {0}")]
    NotEquivalent(String),

    /// The operation is only defined for a class of inputs that the
    /// argument falls outside of (e.g. equivalence of non-first-type
    /// designs).
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// The request exceeds a built-in size cap.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, CodError>;
