//! Finite probability distributions over real outcome labels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// Probabilities for an ordered list of distinct real labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistributionRepr", into = "DistributionRepr")]
pub struct Distribution {
    labels: Vec<f64>,
    probs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionRepr {
    labels: Vec<f64>,
    probs: Vec<f64>,
}

impl TryFrom<DistributionRepr> for Distribution {
    type Error = Error;

    fn try_from(r: DistributionRepr) -> Result<Self> {
        Distribution::new(r.labels, r.probs)
    }
}

impl From<Distribution> for DistributionRepr {
    fn from(d: Distribution) -> Self {
        Self {
            labels: d.labels,
            probs: d.probs,
        }
    }
}

impl Distribution {
    pub fn new(labels: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if labels.len() != probs.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} labels but {} probabilities",
                labels.len(),
                probs.len()
            )));
        }
        if labels.is_empty() {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        for (k, l) in labels.iter().enumerate() {
            if !l.is_finite() || labels[..k].contains(l) {
                return Err(Error::InvalidDistribution(format!("bad or duplicate label {l}")));
            }
        }
        if let Some(p) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidDistribution(format!("probability {p} outside [0, 1]")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol::NORMALIZATION {
            return Err(Error::Unnormalized(sum));
        }
        Ok(Self { labels, probs })
    }

    pub fn point_mass(label: f64) -> Self {
        Self {
            labels: vec![label],
            probs: vec![1.0],
        }
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn prob(&self, label: f64) -> Option<f64> {
        self.labels.iter().position(|&l| l == label).map(|k| self.probs[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.labels.iter().copied().zip(self.probs.iter().copied())
    }

    /// True when both distributions carry the same label set, in any order.
    pub fn same_labels(&self, other: &Distribution) -> bool {
        self.len() == other.len() && self.labels.iter().all(|l| other.labels.contains(l))
    }

    /// `Σ label · p`.
    pub fn mean(&self) -> f64 {
        self.iter().map(|(l, p)| l * p).sum()
    }
}
