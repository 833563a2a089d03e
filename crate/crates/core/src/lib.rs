//! A computational kernel for finite (pre)stratified simplicial sets.
//!
//! The library implements, at desk scale, the combinatorics underlying the
//! theory of complicial sets: the indexing category tΔ with its Reedy
//! structure, finite simplicial sets in Eilenberg–Zilber normal form, the
//! stratification layer with its reflector onto stratified objects, the named
//! marked shapes and the four families of elementary anodyne extensions, a
//! lifting-problem solver with explicit search budgets, pushout-product
//! analysis with replayable anodyne schedules, and the Roberts–Street nerve
//! of finite categories.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything can be shared and evaluated concurrently.

pub mod cli;
pub mod io;
pub mod lifting;
pub mod nerve;
pub mod report;
pub mod scomplex;
pub mod shapes;
pub mod strat;
pub mod tdelta;

use thiserror::Error as ThisError;

/// Errors surfaced by kernel operations.
#[derive(ThisError, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("map is not a monomorphism: {0}")]
    NotMono(String),
    #[error("map is not entire: {0}")]
    NotEntire(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
