//! Exact multivariate polynomial arithmetic over arbitrary-precision
//! rationals, Groebner bases, saturation, elimination, dimension, and
//! constructible-set consistency.
//!
//! Everything here is certificate-grade: coefficients are exact rationals,
//! consistency is decided over the algebraic closure, and heavy operations
//! take explicit budgets and report `Tri::Unknown` instead of guessing.

mod constructible;
mod ffsearch;
mod fraction;
mod groebner;
mod ideal;
mod matrix;
mod parse;
mod poly;
mod symbol;

pub use constructible::{ConstructibleSet, Stratum};
pub use ffsearch::{fq_find_point, FqSearchOutcome, FQ_PRIME};
pub use fraction::PolyFraction;
pub use groebner::{groebner, normal_form, reduce_basis};
pub use ideal::{eliminate, ideal_dimension, intersect, saturate, Ideal};
pub use matrix::{generic_rank, rank_rational, GenericRankReport, RankStrategy};
pub use parse::{parse_fraction, parse_poly, ParseError};
pub use poly::{grevlex_cmp, MonomialOrder, MultiPoly, Term};
pub use symbol::SymbolTable;

use num::BigRational;
use std::time::Instant;
use thiserror::Error;

/// Rational scalar used by every kernel computation.
pub type Q = BigRational;

/// Tri-state outcome for budgeted decisions. `Unknown` means "cannot
/// certify", and callers must never treat it as either definite answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn is_true(self) -> bool {
        self == Tri::True
    }
    pub fn is_false(self) -> bool {
        self == Tri::False
    }
}

/// Resource caps for Groebner-type computations. Basis computations are
/// doubly exponential in the worst case, so every heavy operation carries
/// one of these and degrades to an explicit `Unknown`/budget error.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Cap on the total degree of any polynomial admitted into a basis.
    pub max_degree: u32,
    /// Cap on the number of basis elements.
    pub max_basis: usize,
    /// Cap on processed S-pairs.
    pub max_pairs: usize,
    /// Wall-clock cap in milliseconds.
    pub max_millis: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: 60,
            max_basis: 4000,
            max_pairs: 200_000,
            max_millis: 120_000,
        }
    }
}

impl Budget {
    pub fn tiny() -> Self {
        Budget {
            max_degree: 2,
            max_basis: 4,
            max_pairs: 4,
            max_millis: 5,
        }
    }

    pub fn with_millis(ms: u64) -> Self {
        Budget {
            max_millis: ms,
            ..Budget::default()
        }
    }

    pub(crate) fn start(&self) -> BudgetClock<'_> {
        BudgetClock {
            budget: self,
            t0: Instant::now(),
        }
    }
}

pub(crate) struct BudgetClock<'a> {
    budget: &'a Budget,
    t0: Instant,
}

impl BudgetClock<'_> {
    pub(crate) fn check(
        &self,
        basis_len: usize,
        pairs_done: usize,
        degree: u32,
    ) -> Result<(), ExactError> {
        let b = self.budget;
        if degree > b.max_degree {
            return Err(ExactError::Budget {
                what: format!("degree {} exceeds cap {}", degree, b.max_degree),
            });
        }
        if basis_len > b.max_basis {
            return Err(ExactError::Budget {
                what: format!("basis size {} exceeds cap {}", basis_len, b.max_basis),
            });
        }
        if pairs_done > b.max_pairs {
            return Err(ExactError::Budget {
                what: format!("pair count {} exceeds cap {}", pairs_done, b.max_pairs),
            });
        }
        if self.t0.elapsed().as_millis() as u64 > b.max_millis {
            return Err(ExactError::Budget {
                what: format!("wall clock exceeded {} ms", b.max_millis),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("resource budget exceeded: {what}")]
    Budget { what: String },
    #[error("polynomials use incompatible symbol tables")]
    IncompatibleTables,
    #[error("variable `{0}` not present in symbol table")]
    UnknownVariable(String),
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("all sampled points hit denominator zeros after {0} retries")]
    SamplingFailed(usize),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
}
