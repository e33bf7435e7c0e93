//! Exact arithmetic for self-adjoint three-term recurrences: solution
//! propagation, symmetric-product lifts to higher-order recurrences,
//! algebraic-degree tests for limits of solution ratios, irrationality
//! condition diagnostics and accelerated series for powers of ζ(3), ζ(2).

pub mod algebraicity;
pub mod apery;
pub mod bounded;
pub mod cache;
pub mod coeff;
pub mod criterion;
pub mod lift;
pub mod linalg;
pub mod pairs;
pub mod poly;
pub mod rational;
pub mod recurrence;
pub mod reference;
pub mod series;
pub mod verify;

pub use bounded::BoundedValue;
pub use coeff::{CoeffError, CoeffExpr};
pub use poly::Poly;
pub use rational::Rational;
pub use recurrence::{
    casoratian, casoratian_constant, disconjugacy_report, propagate, to_self_adjoint, Coefficient,
    DisconjugacyReport, Recurrence, RecurrenceError, SolutionSeq,
};
