//! Exact arithmetic for linear partial differential operators over a
//! differential field of rational functions.
//!
//! The crate covers the operator ring `K[D]` ([`operator`]), principal
//! symbols ([`symbol`]), division with remainder ([`division`]), refinement
//! of pairs of two-factor (incomplete) factorizations into three-factor ones
//! ([`refine`]), and an ansatz engine that compares coefficients of
//! factorizations with unknown coefficients ([`ansatz`]). A small expression
//! language and session runner ([`parse`], [`session`]) drive it all from
//! text.

pub mod ansatz;
pub mod coeff;
pub mod division;
pub mod error;
pub mod multi_index;
pub mod operator;
pub mod parse;
pub mod print;
pub mod refine;
pub mod session;
pub mod symbol;

pub use coeff::{Context, RatFunc};
pub use division::{divide_left, divide_right, DivisionResult};
pub use error::{Error, Result};
pub use multi_index::MultiIndex;
pub use operator::{Lpdo, Order};
pub use print::Render;
pub use refine::{
    laplace_invariants, refine_complete, refine_obstacle, IncompleteFactorization,
    LaplaceInvariants, Side, ThreeFactor, TwoFactor, Violation,
};
pub use symbol::{FactorizationType, SymbolPoly};
