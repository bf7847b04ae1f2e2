//! Exact polynomial kernel: rational arithmetic, Sturm chains, root
//! isolation and sign determination at algebraic points.

pub mod poly;
pub mod roots;
pub mod sturm;

use thiserror::Error;

pub use poly::{frac, gcd_squarefree, poly_arith, rat, ArithOp, ExactRational, UniPoly};
pub use roots::{
    cauchy_bound, dyadic_at_most, isolate_roots, refine, sign_at_root, IsolatingInterval, RootKind, RootOracle,
};
pub use sturm::{sturm_count, Endpoint, Sign, SturmChain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("endpoint {0} is a root; perturb it and retry")]
    EndpointIsRoot(ExactRational),
    #[error("interval is empty (lo must be below hi)")]
    EmptyInterval,
    #[error("polynomial is not squarefree; pass it through gcd_squarefree first")]
    NotSquarefree,
    #[error("interval does not isolate a root")]
    NotIsolating,
    #[error("refinement width must be positive")]
    NonPositiveWidth,
    #[error("polynomial division left a non-zero remainder")]
    InexactDivision,
}
