//! Presentations shared by the unit tests.

use crate::algebra::AlgebraPresentation;
use crate::presentation::GroupPresentation;
use crate::syntax;
use crate::DEFAULT_BUDGET;

pub const EX13: &str = include_str!("../../../fixtures/ex13.pcp");
pub const EX14: &str = include_str!("../../../fixtures/ex14.pcp");
pub const EX15: &str = include_str!("../../../fixtures/ex15.pcp");
pub const EX16: &str = include_str!("../../../fixtures/ex16.pcp");
pub const EX17: &str = include_str!("../../../fixtures/ex17.pcp");
pub const EX24: &str = include_str!("../../../fixtures/ex24.pcp");
pub const EX25: &str = include_str!("../../../fixtures/ex25.pcp");
pub const EX26: &str = include_str!("../../../fixtures/ex26.pcp");
pub const S3: &str = include_str!("../../../fixtures/s3.pcp");
pub const C2XC2: &str = include_str!("../../../fixtures/c2xc2.pcp");
pub const HEISENBERG: &str = include_str!("../../../fixtures/heisenberg.pcp");
pub const Z3: &str = include_str!("../../../fixtures/free_abelian_z3.pcp");
pub const UPPER_TRIANGULAR: &str = include_str!("../../../fixtures/upper_triangular_gf2.pcp");

pub fn group(text: &str) -> GroupPresentation {
    syntax::parse_group(text, DEFAULT_BUDGET).unwrap()
}

pub fn algebra(text: &str) -> AlgebraPresentation {
    syntax::parse_algebra(text).unwrap()
}
