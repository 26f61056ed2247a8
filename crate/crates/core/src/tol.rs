//! Numerical tolerances shared across the crate.

/// Hermiticity, idempotence, unitarity, completeness and trace checks.
pub const CONSTRUCTION: f64 = 1e-10;

/// Smallest eigenvalue a density operator may have.
pub const PSD: f64 = 1e-9;

/// Slack allowed on a probability before it is clamped into `[0, 1]`.
pub const PROBABILITY_CLAMP: f64 = 1e-12;

/// Branch probabilities at or below this are treated as null events.
pub const NULL_EVENT: f64 = 1e-12;

/// Normalization slack for probability distributions.
pub const NORMALIZATION: f64 = 1e-10;

/// Default margin above a bound before an inequality counts as violated.
pub const VIOLATION: f64 = 1e-12;

/// Default phase-1 optimum below which an LP is declared feasible.
pub const FEASIBILITY: f64 = 1e-9;

/// Largest witness residual accepted for a feasible verdict.
pub const WITNESS_RESIDUAL: f64 = 1e-8;
