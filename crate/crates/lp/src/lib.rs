//! Exact rational linear programming.
//!
//! [`solve`] runs a two-phase simplex with Bland's rule on arbitrary
//! precision rationals and self-checks every optimum against its dual
//! certificate. [`solve_with_separation`] wraps it in a constraint
//! generation loop driven by a caller-supplied oracle, and
//! [`max_over_optimal_face`] probes the set of optimal solutions.

mod error;
mod program;
mod rational;
mod separation;
mod simplex;

pub use error::LpError;
pub use program::{Constraint, LinearProgram, Relation};
pub use rational::{format_rational, parse_rational, ratio, ParseRationalError};
pub use separation::{
    max_over_optimal_face, min_over_optimal_face, solve_with_separation,
    solve_with_separation_limits, SeparationLimits, SeparationOutcome, DEFAULT_CUT_LIMIT,
};
pub use simplex::{
    check_certificate, solve, solve_with_limit, LpSolution, LpStatus, Optimum,
    DEFAULT_PIVOT_LIMIT,
};

pub type Rational = num_rational::BigRational;
