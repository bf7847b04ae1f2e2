//! Real zeros and interlacing of g-polynomials.

mod family;
mod interlace;
mod liu_wang;

use thiserror::Error;

pub use family::{verify_sturm_family, Family, FamilyReport, Member, PairReport};
pub use interlace::{
    interlaces, is_real_rooted, nonzero_roots_strict, InterlacingVerdict, Relation, Witness, REPORT_WIDTH,
};
pub use liu_wang::{liu_wang_check, Condition, LiuWangInstance, LiuWangOutcome, Recursion, Violation};

use crate::gpoly::GPolyError;
use crate::polycore::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootlineError {
    #[error("zero polynomial has no root structure")]
    ZeroPolynomial,
    #[error("{0} is not real-rooted")]
    NotRealRooted(&'static str),
    #[error("{0}")]
    BadFamily(String),
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error(transparent)]
    GPoly(#[from] GPolyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
