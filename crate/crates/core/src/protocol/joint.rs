use std::collections::BTreeMap;

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::tol;

/// Joint outcome probabilities for measurements at a set of checkpoints.
///
/// Cells are stored row-major over the per-variable label lists, the first
/// variable varying slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    variables: Vec<usize>,
    labels: Vec<Vec<f64>>,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(variables: Vec<usize>, labels: Vec<Vec<f64>>, probs: Vec<f64>) -> Result<Self> {
        if variables.is_empty() || variables.len() != labels.len() {
            return Err(Error::InvalidDistribution(
                "one label list per variable required".into(),
            ));
        }
        if variables.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::TimeOrder(variables));
        }
        for ls in &labels {
            for (k, l) in ls.iter().enumerate() {
                if !l.is_finite() || ls[..k].contains(l) {
                    return Err(Error::InvalidDistribution(format!("bad or duplicate label {l}")));
                }
            }
        }
        let cells: usize = labels.iter().map(Vec::len).product();
        if cells != probs.len() || cells == 0 {
            return Err(Error::InvalidDistribution(format!(
                "{cells} cells but {} probabilities",
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidDistribution(format!("probability {p} outside [0, 1]")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol::NORMALIZATION {
            return Err(Error::Unnormalized(sum));
        }
        Ok(Self {
            variables,
            labels,
            probs,
        })
    }

    /// Single-variable table from a distribution.
    pub fn from_marginal(variable: usize, dist: &Distribution) -> Self {
        Self {
            variables: vec![variable],
            labels: vec![dist.labels().to_vec()],
            probs: dist.probs().to_vec(),
        }
    }

    pub fn variables(&self) -> &[usize] {
        &self.variables
    }

    pub fn labels(&self) -> &[Vec<f64>] {
        &self.labels
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Label indices of flat cell `k`.
    pub fn cell_indices(&self, mut k: usize) -> Vec<usize> {
        let mut idx = vec![0; self.labels.len()];
        for (v, ls) in self.labels.iter().enumerate().rev() {
            idx[v] = k % ls.len();
            k /= ls.len();
        }
        idx
    }

    pub fn cell_labels(&self, k: usize) -> Vec<f64> {
        self.cell_indices(k)
            .iter()
            .zip(&self.labels)
            .map(|(&i, ls)| ls[i])
            .collect()
    }

    /// Every `(label tuple, probability)` in storage order.
    pub fn cells(&self) -> impl Iterator<Item = (Vec<f64>, f64)> + '_ {
        (0..self.probs.len()).map(move |k| (self.cell_labels(k), self.probs[k]))
    }

    pub fn get(&self, labels: &[f64]) -> Option<f64> {
        if labels.len() != self.labels.len() {
            return None;
        }
        let mut k = 0;
        for (l, ls) in labels.iter().zip(&self.labels) {
            k = k * ls.len() + ls.iter().position(|x| x == l)?;
        }
        Some(self.probs[k])
    }

    /// Marginal over the variable at `position` within `variables()`.
    pub fn marginal(&self, position: usize) -> Result<Distribution> {
        let ls = self.labels.get(position).ok_or(Error::IndexOutOfRange {
            index: position,
            len: self.labels.len(),
        })?;
        let mut probs = vec![0.0; ls.len()];
        for k in 0..self.probs.len() {
            probs[self.cell_indices(k)[position]] += self.probs[k];
        }
        Distribution::new(ls.clone(), probs.into_iter().map(|p| p.clamp(0.0, 1.0)).collect())
    }

    /// Cells keyed by their label tuple rendered as `"+1,-1"`.
    pub fn to_keyed(&self) -> BTreeMap<String, f64> {
        self.cells().map(|(ls, p)| (format_label_tuple(&ls), p)).collect()
    }

    /// Inverse of [`to_keyed`](Self::to_keyed); missing cells are zero.
    pub fn from_keyed(variables: Vec<usize>, labels: Vec<Vec<f64>>, table: &BTreeMap<String, f64>) -> Result<Self> {
        let cells: usize = labels.iter().map(Vec::len).product();
        let mut probs = vec![0.0; cells];
        for (key, &p) in table {
            let tuple = parse_label_tuple(key)?;
            if tuple.len() != labels.len() {
                return Err(Error::InvalidDistribution(format!("key {key:?} has wrong arity")));
            }
            let mut k = 0;
            for (l, ls) in tuple.iter().zip(&labels) {
                let pos = ls.iter().position(|x| x == l).ok_or(Error::UnknownLabel(*l))?;
                k = k * ls.len() + pos;
            }
            probs[k] = p;
        }
        Self::new(variables, labels, probs)
    }
}

/// `+1`, `-1`, `+0.5`: explicit sign, integers without a fraction.
pub fn format_label(l: f64) -> String {
    if l.fract() == 0.0 && l.abs() < 1e15 {
        format!("{:+}", l as i64)
    } else {
        format!("{l:+}")
    }
}

pub fn format_label_tuple(ls: &[f64]) -> String {
    ls.iter().map(|&l| format_label(l)).collect::<Vec<_>>().join(",")
}

pub fn parse_label_tuple(key: &str) -> Result<Vec<f64>> {
    key.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidDistribution(format!("bad label {s:?} in key {key:?}")))
        })
        .collect()
}
