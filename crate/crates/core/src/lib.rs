//! Polycyclic group presentations and nilpotent associative algebra
//! presentations: collection to normal form, consistency checks by finite
//! families of test equations, and an exhaustive oracle for finite
//! instances.
//!
//! ```
//! use pcp_core::syntax::parse_group;
//! use pcp_core::group_consistency::{check_consistency, CheckOptions};
//!
//! let text = "group 2\norder g1 = 2\norder g2 = 3\ng2*g1 = g1*g2^2\n";
//! let s3 = parse_group(text, pcp_core::DEFAULT_BUDGET).unwrap();
//! let report = check_consistency(&s3, &CheckOptions::default()).unwrap();
//! assert!(report.is_consistent());
//! ```

pub mod algebra;
pub mod coefficients;
pub mod collector;
pub mod group_consistency;
pub mod oracle;
pub mod presentation;
pub mod syntax;
#[cfg(test)]
mod test_fixtures;
pub mod word;

use thiserror::Error;

pub use algebra::{AlgebraPresentation, FreeElement, NormalVector};
pub use coefficients::{RingDescriptor, Scalar};
pub use collector::{CollectionTrace, Collector, DEFAULT_BUDGET};
pub use group_consistency::{ConsistencyReport, Mode, TestEquation};
pub use presentation::{GroupPresentation, RelativeOrder, WeightAssignment};
pub use word::{NormalWord, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Syntax(#[from] syntax::SyntaxError),
    #[error(transparent)]
    Presentation(#[from] presentation::PresentationError),
    #[error(transparent)]
    Collect(#[from] collector::CollectError),
    #[error(transparent)]
    Consistency(#[from] group_consistency::ConsistencyError),
    #[error(transparent)]
    Coefficient(#[from] coefficients::CoefficientError),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
}
