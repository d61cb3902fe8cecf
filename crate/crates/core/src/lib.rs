//! Exact-arithmetic computation of nonsymmetric Macdonald polynomials
//! specialized at `t = 0` for finite root systems.
//!
//! The same polynomial `E_{wλ}(x; q, 0)` is computed by four independent
//! combinatorial models and cross-validated for exact equality:
//!
//! * [`qls`] — quantum Lakshmibai–Seshadri paths, filtered by initial
//!   direction and graded by the degree statistic;
//! * [`alcove`] — the quantum alcove model: admissible subsets of a
//!   lexicographic λ-chain, graded by coheight;
//! * [`ospath`] — quantum alcove paths in the Orr–Shimozono style, derived
//!   from the lex chain for `-w∘λ` and filtered through a Bruhat condition;
//! * [`charpoly`] — a Demazure-operator recursion seeded from the identity
//!   coset.
//!
//! Everything is exact: weights are integer vectors, cut points are
//! rationals, polynomials are integer-coefficient maps. No floating point
//! anywhere.

pub mod alcove;
pub mod cartan_weyl;
pub mod charpoly;
pub mod ospath;
pub mod qbg;
pub mod qls;

/// Exact rational scalar used for cut points, chain ratios and the alcove
/// walk. Always normalized (positive denominator, reduced fraction).
pub type Rational = num_rational::Ratio<i64>;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid Cartan type {letter}{rank}")]
    InvalidCartanType { letter: char, rank: usize },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("simple-root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("index 0 is the affine node; only classical indices are supported")]
    AffineIndex,
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("element `{0}` is not a minimal coset representative for the given J")]
    NotMinimalRep(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("chain validation failed: {0}")]
    ChainInvalid(alcove::ChainReport),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use cartan_weyl::{CartanType, Coroot, Letter, Root, RootDatum, Weight, WeylElt};
pub use charpoly::GradedChar;
