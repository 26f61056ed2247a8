//! Leggett-Garg inequalities and no-signaling in time.
//!
//! Both criteria are evaluated on exact (model) probabilities; finite-sample
//! decisions live in [`crate::stats`].

use serde::{Deserialize, Serialize};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LgiForm {
    /// `C12 + C23 + C34 − C14 ≤ 2`.
    Chsh4,
    /// `C01 + C12 − C02 ≤ 1`.
    Wigner3,
}

impl LgiForm {
    pub fn bound(self) -> f64 {
        match self {
            LgiForm::Chsh4 => 2.0,
            LgiForm::Wigner3 => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LgiReport {
    pub form: LgiForm,
    pub lhs: f64,
    pub bound: f64,
    pub violated: bool,
    pub margin: f64,
    /// Checkpoint indices the correlations were taken at, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoints: Option<Vec<usize>>,
}

impl LgiReport {
    fn new(form: LgiForm, lhs: f64) -> Self {
        let bound = form.bound();
        let margin = lhs - bound;
        Self {
            form,
            lhs,
            bound,
            violated: margin > tol::VIOLATION,
            margin,
            checkpoints: None,
        }
    }

    pub fn at_checkpoints(mut self, checkpoints: Vec<usize>) -> Self {
        self.checkpoints = Some(checkpoints);
        self
    }
}

fn check_correlations(cs: &[f64]) -> Result<()> {
    match cs.iter().find(|c| !(-1.0..=1.0).contains(*c)) {
        Some(c) => Err(Error::OutOfRange(format!("correlation {c} outside [-1, 1]"))),
        None => Ok(()),
    }
}

/// Four-time inequality of the CHSH type.
pub fn lgi_chsh4(c12: f64, c23: f64, c34: f64, c14: f64) -> Result<LgiReport> {
    check_correlations(&[c12, c23, c34, c14])?;
    Ok(LgiReport::new(LgiForm::Chsh4, c12 + c23 + c34 - c14))
}

/// Three-time inequality of the Wigner form.
pub fn lgi_wigner3(c01: f64, c12: f64, c02: f64) -> Result<LgiReport> {
    check_correlations(&[c01, c12, c02])?;
    Ok(LgiReport::new(LgiForm::Wigner3, c01 + c12 - c02))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NsitReport {
    /// `(label, P(B) − P(B | earlier measurement))` in the order of the
    /// unmeasured distribution.
    pub deltas: Vec<(f64, f64)>,
    pub max_abs_delta: f64,
    /// Overlap `Σ_B √(P(B) P(B | earlier))`.
    pub kappa: f64,
    pub violated: bool,
}

impl NsitReport {
    pub fn delta(&self, label: f64) -> Option<f64> {
        self.deltas.iter().find(|(l, _)| *l == label).map(|&(_, d)| d)
    }
}

/// Compares the later-time distribution without (`p_without`) and with
/// (`p_with`) an earlier measurement. Violation is decided on the max-norm
/// of the difference; `kappa` is reported alongside.
pub fn nsit_compare(p_without: &Distribution, p_with: &Distribution, tol: f64) -> Result<NsitReport> {
    if !p_without.same_labels(p_with) {
        return Err(Error::LabelMismatch);
    }
    let mut deltas = Vec::with_capacity(p_without.len());
    let mut kappa = 0.0;
    for (label, a) in p_without.iter() {
        let b = p_with.prob(label).ok_or(Error::LabelMismatch)?;
        deltas.push((label, a - b));
        kappa += (a * b).sqrt();
    }
    let max_abs_delta = deltas.iter().map(|(_, d)| d.abs()).fold(0.0, f64::max);
    Ok(NsitReport {
        deltas,
        max_abs_delta,
        kappa,
        violated: max_abs_delta > tol,
    })
}
