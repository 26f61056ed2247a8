//! Sequential quantum measurements and the two necessary conditions for
//! macrorealism: Leggett-Garg inequalities and no-signaling in time.
//!
//! - [`quantum`]: density operators, unitaries, projective measurements.
//! - [`protocol`]: temporal scenarios, sequential joint distributions and
//!   correlation functions.
//! - [`criteria`]: Leggett-Garg inequalities (CHSH and Wigner forms) and the
//!   no-signaling-in-time comparison.
//! - [`feasibility`]: linear-programming test for a macrorealist model.
//! - [`models`]: Mach-Zehnder interferometer, precessing spin, double slit.
//! - [`stats`]: seeded sampling, chi-square homogeneity test, overlap estimate.
//! - [`cli`]: the `temporalis` command-line front end.

pub mod cli;
pub mod criteria;
pub mod distribution;
pub mod error;
pub mod feasibility;
pub mod models;
pub mod protocol;
pub mod quantum;
pub mod stats;
pub mod tol;

pub use distribution::Distribution;
pub use error::{Error, Result};
