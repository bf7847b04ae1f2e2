//! Exact workbench for the g-polynomials of uniform matroids.
//!
//! * [`polycore`]: rational polynomials, Sturm chains, certified root isolation.
//! * [`gpoly`]: the closed factorial formula and recurrence-driven constructors.
//! * [`recurrence`]: registry of recurrence identities and an exact verifier.
//! * [`rootline`]: real-rootedness, interlacing, generalized Sturm sequences and
//!   the Liu–Wang sufficient condition.
//! * [`asymptotics`]: exact mean/variance of the half-diagonal family, the
//!   ratio sequence `r_n(1)`, inequality sweeps and Gaussian distances.
//! * [`cli`]: the `gpoly` command-line front end.

pub mod asymptotics;
pub mod cli;
pub mod gpoly;
pub mod json;
pub mod polycore;
pub mod recurrence;
pub mod rootline;

pub use gpoly::{closed_form, coefficient, symmetry_normalize, via_recurrence, GPolyError, GPolyRecord, RecurrenceScheme};
pub use polycore::{ExactRational, UniPoly};
