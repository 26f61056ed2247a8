//! Temporal measurement scenarios.
//!
//! A [`TemporalScenario`] declares an observable at every checkpoint, but a
//! measurement is only performed at the checkpoints a query names. The same
//! scenario therefore answers both "what is `P(B)` at `t_j`" and "what is
//! `P(B)` at `t_j` given an earlier measurement at `t_i`".

mod chain;
mod joint;
pub mod schema;

pub use chain::{interference_difference, AmplitudeChain};
pub use joint::{format_label, format_label_tuple, parse_label_tuple, JointDistribution};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::quantum::{collapse, evolve, outcome_probabilities, DensityOperator, ProjectiveMeasurement, UnitaryOp};
use crate::tol;

#[derive(Debug, Clone, PartialEq)]
pub struct TemporalScenario {
    initial: DensityOperator,
    checkpoints: Vec<String>,
    segments: Vec<UnitaryOp>,
    measurements: Vec<ProjectiveMeasurement>,
}

impl TemporalScenario {
    /// Checkpoints are labelled `t0, t1, ...`.
    pub fn new(
        initial: DensityOperator,
        segments: Vec<UnitaryOp>,
        measurements: Vec<ProjectiveMeasurement>,
    ) -> Result<Self> {
        let names = (0..measurements.len()).map(|k| format!("t{k}")).collect();
        Self::with_checkpoints(initial, names, segments, measurements)
    }

    pub fn with_checkpoints(
        initial: DensityOperator,
        checkpoints: Vec<String>,
        segments: Vec<UnitaryOp>,
        measurements: Vec<ProjectiveMeasurement>,
    ) -> Result<Self> {
        if checkpoints.is_empty() {
            return Err(Error::InvalidParams("scenario needs at least one checkpoint".into()));
        }
        if measurements.len() != checkpoints.len() {
            return Err(Error::InvalidParams(format!(
                "{} checkpoints but {} measurements",
                checkpoints.len(),
                measurements.len()
            )));
        }
        if segments.len() + 1 != checkpoints.len() {
            return Err(Error::InvalidParams(format!(
                "{} checkpoints need {} segments, got {}",
                checkpoints.len(),
                checkpoints.len() - 1,
                segments.len()
            )));
        }
        let dim = initial.dim();
        for d in segments.iter().map(UnitaryOp::dim).chain(measurements.iter().map(ProjectiveMeasurement::dim)) {
            if d != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: d,
                });
            }
        }
        Ok(Self {
            initial,
            checkpoints,
            segments,
            measurements,
        })
    }

    pub fn dim(&self) -> usize {
        self.initial.dim()
    }

    pub fn initial(&self) -> &DensityOperator {
        &self.initial
    }

    pub fn checkpoints(&self) -> &[String] {
        &self.checkpoints
    }

    pub fn len(&self) -> usize {
        self.checkpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checkpoints.is_empty()
    }

    pub fn segments(&self) -> &[UnitaryOp] {
        &self.segments
    }

    pub fn measurements(&self) -> &[ProjectiveMeasurement] {
        &self.measurements
    }

    pub fn measurement(&self, index: usize) -> Result<&ProjectiveMeasurement> {
        self.check_index(index)?;
        Ok(&self.measurements[index])
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }

    /// Evolves `state` from checkpoint `from` to checkpoint `to` without measuring.
    pub fn propagate(&self, state: &DensityOperator, from: usize, to: usize) -> Result<DensityOperator> {
        self.check_index(to)?;
        if from > to {
            return Err(Error::TimeOrder(vec![from, to]));
        }
        self.segments[from..to]
            .iter()
            .try_fold(state.clone(), |rho, u| evolve(&rho, u))
    }

    /// Product of the segment unitaries between two checkpoints.
    pub fn evolution(&self, from: usize, to: usize) -> Result<UnitaryOp> {
        self.check_index(to)?;
        if from > to {
            return Err(Error::TimeOrder(vec![from, to]));
        }
        self.segments[from..to]
            .iter()
            .try_fold(UnitaryOp::identity(self.dim()), |acc, u| u.after(&acc))
    }

    /// Unmeasured state at checkpoint `index`.
    pub fn state_at(&self, index: usize) -> Result<DensityOperator> {
        self.propagate(&self.initial, 0, index)
    }
}

/// Joint distribution of measurements performed at strictly increasing
/// checkpoints `indices`, with no measurement anywhere else.
///
/// Branches of probability at most [`tol::NULL_EVENT`] contribute zero cells.
pub fn joint_multi_time(s: &TemporalScenario, indices: &[usize]) -> Result<JointDistribution> {
    let Some(&first) = indices.first() else {
        return Err(Error::InvalidParams("no measurement times given".into()));
    };
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::TimeOrder(indices.to_vec()));
    }
    for &k in indices {
        s.check_index(k)?;
    }

    let mut branches: Vec<(Option<DensityOperator>, f64)> = vec![(Some(s.state_at(first)?), 1.0)];
    for (depth, &at) in indices.iter().enumerate() {
        let m = &s.measurements[at];
        let next = indices.get(depth + 1).copied();
        let mut expanded = Vec::with_capacity(branches.len() * m.len());
        for (state, weight) in branches {
            let Some(state) = state else {
                expanded.extend(std::iter::repeat_n((None, 0.0), m.len()));
                continue;
            };
            let probs = outcome_probabilities(&state, m)?;
            for (label, p) in probs.iter() {
                if p <= tol::NULL_EVENT {
                    expanded.push((None, 0.0));
                    continue;
                }
                let post = collapse(&state, m, label)?;
                let post = match next {
                    Some(to) => s.propagate(&post, at, to)?,
                    None => post,
                };
                expanded.push((Some(post), weight * p));
            }
        }
        branches = expanded;
    }

    let labels = indices.iter().map(|&k| s.measurements[k].labels()).collect();
    let probs = branches.into_iter().map(|(_, w)| w.clamp(0.0, 1.0)).collect();
    JointDistribution::new(indices.to_vec(), labels, probs)
}

/// Joint distribution for measurements at `t_i` and then `t_j`.
pub fn joint_two_time(s: &TemporalScenario, i: usize, j: usize) -> Result<JointDistribution> {
    if i >= j {
        return Err(Error::TimeOrder(vec![i, j]));
    }
    joint_multi_time(s, &[i, j])
}

/// `P(B_{t_j})` with no earlier measurement.
pub fn marginal_without(s: &TemporalScenario, j: usize) -> Result<Distribution> {
    outcome_probabilities(&s.state_at(j)?, s.measurement(j)?)
}

/// `P(B_{t_j | t_i})`: the `t_j` marginal when `t_i` was also measured.
pub fn marginal_with(s: &TemporalScenario, i: usize, j: usize) -> Result<Distribution> {
    joint_two_time(s, i, j)?.marginal(1)
}

/// Temporal correlation `⟨Q_{t_i} Q_{t_j}⟩` for ±1-valued observables.
pub fn correlation(s: &TemporalScenario, i: usize, j: usize) -> Result<f64> {
    if i >= j {
        return Err(Error::TimeOrder(vec![i, j]));
    }
    if !s.measurement(i)?.is_dichotomic() || !s.measurement(j)?.is_dichotomic() {
        return Err(Error::NonDichotomic);
    }
    let joint = joint_two_time(s, i, j)?;
    let c: f64 = joint.cells().map(|(ls, p)| ls[0] * ls[1] * p).sum();
    Ok(c.clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{CMatrix, DensityOperator};
    use num_complex::Complex64;

    fn identity_scenario(initial: DensityOperator, n: usize) -> TemporalScenario {
        TemporalScenario::new(
            initial,
            vec![UnitaryOp::identity(2); n - 1],
            vec![ProjectiveMeasurement::dichotomic(); n],
        )
        .unwrap()
    }

    fn rotation(theta: f64) -> UnitaryOp {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        UnitaryOp::new(
            CMatrix::from_rows(&[
                vec![Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
                vec![Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn construction_checks() {
        let rho = DensityOperator::maximally_mixed(2).unwrap();
        let z = ProjectiveMeasurement::dichotomic();
        assert!(TemporalScenario::new(rho.clone(), vec![], vec![z.clone(), z.clone()]).is_err());
        assert!(TemporalScenario::new(rho.clone(), vec![UnitaryOp::identity(3)], vec![z.clone(), z.clone()]).is_err());
        assert!(TemporalScenario::new(rho, vec![], vec![z]).is_ok());
    }

    #[test]
    fn identity_segments_repeat_outcomes() {
        let s = identity_scenario(DensityOperator::diagonal(&[0.3, 0.7]).unwrap(), 3);
        let j = joint_two_time(&s, 0, 2).unwrap();
        assert_eq!(j.probs(), &[0.3, 0.0, 0.0, 0.7]);
        let without = marginal_without(&s, 2).unwrap();
        let with = marginal_with(&s, 0, 2).unwrap();
        assert_eq!(without, with);
        let pure = identity_scenario(DensityOperator::pure(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap(), 2);
        assert_eq!(correlation(&pure, 0, 1).unwrap(), 1.0);
    }

    #[test]
    fn zero_branches_give_zero_rows() {
        let up = DensityOperator::pure(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
        let s = TemporalScenario::new(
            up,
            vec![rotation(std::f64::consts::FRAC_PI_2)],
            vec![ProjectiveMeasurement::dichotomic(); 2],
        )
        .unwrap();
        let j = joint_two_time(&s, 0, 1).unwrap();
        assert_eq!(&j.probs()[2..], &[0.0, 0.0]);
        assert!((j.probs()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn index_errors() {
        let s = identity_scenario(DensityOperator::maximally_mixed(2).unwrap(), 2);
        assert!(matches!(joint_two_time(&s, 1, 1), Err(Error::TimeOrder(_))));
        assert!(matches!(joint_two_time(&s, 1, 0), Err(Error::TimeOrder(_))));
        assert!(matches!(marginal_without(&s, 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(joint_multi_time(&s, &[0, 5]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn non_dichotomic_correlation_rejected() {
        let m = ProjectiveMeasurement::computational(&[0.0, 1.0]).unwrap();
        let s = TemporalScenario::new(
            DensityOperator::maximally_mixed(2).unwrap(),
            vec![UnitaryOp::identity(2)],
            vec![m.clone(), m],
        )
        .unwrap();
        assert_eq!(correlation(&s, 0, 1), Err(Error::NonDichotomic));
    }

    #[test]
    fn three_time_joint_marginalizes_to_sequential_pairs() {
        let s = TemporalScenario::new(
            DensityOperator::pure(&[Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.6)]).unwrap(),
            vec![rotation(0.7), rotation(1.9)],
            vec![ProjectiveMeasurement::dichotomic(); 3],
        )
        .unwrap();
        let full = joint_multi_time(&s, &[0, 1, 2]).unwrap();
        let pair = joint_two_time(&s, 0, 1).unwrap();
        for (ls, p) in pair.cells() {
            let summed: f64 = [1.0, -1.0].iter().map(|&c| full.get(&[ls[0], ls[1], c]).unwrap()).sum();
            assert!((summed - p).abs() < 1e-14);
        }
    }
}
