//! Existence of a macrorealist model for observed temporal statistics.
//!
//! A macrorealist assigns every run a deterministic history: one definite
//! outcome per checkpoint. Stochastic dynamics only show up as a
//! distribution over histories. Because measurements are non-invasive in
//! such a model, a table observed with measurements at a subset of
//! checkpoints is simply a marginal of that distribution, regardless of
//! which other measurements were performed. The observed statistics are
//! macrorealist iff the linear system "marginals of `ρ(λ)` = observed
//! tables, `ρ ≥ 0`, `Σρ = 1`" is feasible.

mod simplex;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protocol::{
    format_label_tuple, joint_two_time, marginal_without, JointDistribution, TemporalScenario,
};
use crate::tol;

/// Largest number of deterministic histories `build_lp` accepts.
pub const MAX_HISTORIES: usize = 1 << 20;

/// One definite outcome per checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterministicHistory(pub Vec<f64>);

impl fmt::Display for DeterministicHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_label_tuple(&self.0))
    }
}

/// Mixed-radix enumeration of histories, first checkpoint slowest.
fn history_digits(outcomes: &[Vec<f64>], mut h: usize) -> Vec<usize> {
    let mut d = vec![0; outcomes.len()];
    for (v, ls) in outcomes.iter().enumerate().rev() {
        d[v] = h % ls.len();
        h /= ls.len();
    }
    d
}

fn history_count(outcomes: &[Vec<f64>]) -> Result<usize> {
    let count = outcomes.iter().map(|o| o.len() as u128).product::<u128>();
    if count > MAX_HISTORIES as u128 {
        return Err(Error::TooManyHistories {
            count,
            limit: MAX_HISTORIES,
        });
    }
    Ok(count as usize)
}

fn check_outcomes(outcomes: &[Vec<f64>]) -> Result<()> {
    if outcomes.is_empty() {
        return Err(Error::InvalidProblem("no checkpoints".into()));
    }
    for (k, ls) in outcomes.iter().enumerate() {
        if ls.is_empty() {
            return Err(Error::InvalidProblem(format!("checkpoint {k} has no outcomes")));
        }
        for (i, l) in ls.iter().enumerate() {
            if !l.is_finite() || ls[..i].contains(l) {
                return Err(Error::InvalidProblem(format!("bad or duplicate outcome {l} at checkpoint {k}")));
            }
        }
    }
    Ok(())
}

/// A probability distribution `ρ(λ)` over deterministic histories.
#[derive(Debug, Clone, PartialEq)]
pub struct MrModel {
    outcomes: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl MrModel {
    /// `weights` are indexed like [`MrModel::histories`].
    pub fn new(outcomes: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        check_outcomes(&outcomes)?;
        let count = history_count(&outcomes)?;
        if weights.len() != count {
            return Err(Error::InvalidProblem(format!("{count} histories but {} weights", weights.len())));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidProblem(format!("negative or non-finite weight {w}")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tol::NORMALIZATION {
            return Err(Error::Unnormalized(sum));
        }
        Ok(Self { outcomes, weights })
    }

    /// Weights drawn uniformly from the simplex.
    pub fn random<R: Rng + ?Sized>(outcomes: Vec<Vec<f64>>, rng: &mut R) -> Result<Self> {
        check_outcomes(&outcomes)?;
        let count = history_count(&outcomes)?;
        let raw: Vec<f64> = (0..count).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let total: f64 = raw.iter().sum();
        Self::new(outcomes, raw.into_iter().map(|w| w / total).collect())
    }

    pub fn outcomes(&self) -> &[Vec<f64>] {
        &self.outcomes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn history(&self, index: usize) -> DeterministicHistory {
        DeterministicHistory(
            history_digits(&self.outcomes, index)
                .iter()
                .zip(&self.outcomes)
                .map(|(&d, ls)| ls[d])
                .collect(),
        )
    }

    pub fn histories(&self) -> impl Iterator<Item = (DeterministicHistory, f64)> + '_ {
        (0..self.weights.len()).map(move |h| (self.history(h), self.weights[h]))
    }

    /// Table this model predicts for measurements at `variables`.
    pub fn predict(&self, variables: &[usize]) -> Result<JointDistribution> {
        if let Some(&v) = variables.iter().find(|&&v| v >= self.outcomes.len()) {
            return Err(Error::IndexOutOfRange {
                index: v,
                len: self.outcomes.len(),
            });
        }
        let labels: Vec<Vec<f64>> = variables.iter().map(|&v| self.outcomes[v].clone()).collect();
        let mut probs = vec![0.0; labels.iter().map(Vec::len).product()];
        for (h, &w) in self.weights.iter().enumerate() {
            let d = history_digits(&self.outcomes, h);
            let cell = variables
                .iter()
                .fold(0, |k, &v| k * self.outcomes[v].len() + d[v]);
            probs[cell] += w;
        }
        let probs = probs.into_iter().map(|p| p.clamp(0.0, 1.0)).collect();
        JointDistribution::new(variables.to_vec(), labels, probs)
    }
}

/// Observed tables that a macrorealist model must reproduce simultaneously.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityProblem {
    outcomes: Vec<Vec<f64>>,
    constraints: Vec<JointDistribution>,
}

impl FeasibilityProblem {
    /// Each constraint's variables are checkpoint indices; its label lists
    /// must be permutations of the declared outcomes.
    pub fn new(outcomes: Vec<Vec<f64>>, constraints: Vec<JointDistribution>) -> Result<Self> {
        check_outcomes(&outcomes)?;
        for (c, table) in constraints.iter().enumerate() {
            for (&v, ls) in table.variables().iter().zip(table.labels()) {
                let declared = outcomes.get(v).ok_or(Error::IndexOutOfRange {
                    index: v,
                    len: outcomes.len(),
                })?;
                if declared.len() != ls.len() || !ls.iter().all(|l| declared.contains(l)) {
                    return Err(Error::InvalidProblem(format!(
                        "constraint {c} uses labels {ls:?} at checkpoint {v}, declared {declared:?}"
                    )));
                }
            }
        }
        Ok(Self { outcomes, constraints })
    }

    /// All tables a given model predicts for the listed variable sets.
    pub fn from_model(model: &MrModel, variable_sets: &[Vec<usize>]) -> Result<Self> {
        let tables = variable_sets
            .iter()
            .map(|vs| model.predict(vs))
            .collect::<Result<Vec<_>>>()?;
        Self::new(model.outcomes().to_vec(), tables)
    }

    pub fn outcomes(&self) -> &[Vec<f64>] {
        &self.outcomes
    }

    pub fn constraints(&self) -> &[JointDistribution] {
        &self.constraints
    }

    pub fn with_constraint(mut self, table: JointDistribution) -> Result<Self> {
        self.constraints.push(table);
        Self::new(self.outcomes, self.constraints)
    }
}

/// What an equality row of the LP encodes.
#[derive(Debug, Clone, PartialEq)]
pub enum RowOrigin {
    Cell { constraint: usize, labels: Vec<f64> },
    Normalization,
}

/// `A ρ = b, ρ ≥ 0` with one column per deterministic history.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    outcomes: Vec<Vec<f64>>,
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    origins: Vec<RowOrigin>,
}

impl LinearSystem {
    pub fn num_variables(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    pub fn num_rows(&self) -> usize {
        self.a.len()
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.a
    }

    pub fn rhs(&self) -> &[f64] {
        &self.b
    }

    pub fn origins(&self) -> &[RowOrigin] {
        &self.origins
    }

    /// `max_i |(A x)_i − b_i|`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, b)| (row.iter().zip(x).map(|(a, x)| a * x).sum::<f64>() - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn build_lp(p: &FeasibilityProblem) -> Result<LinearSystem> {
    let n = history_count(&p.outcomes)?;
    let digits: Vec<Vec<usize>> = (0..n).map(|h| history_digits(&p.outcomes, h)).collect();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut origins = Vec::new();
    for (c, table) in p.constraints.iter().enumerate() {
        let vars = table.variables();
        // position of each table label within the declared outcome list
        let maps: Vec<Vec<usize>> = vars
            .iter()
            .zip(table.labels())
            .map(|(&v, ls)| {
                ls.iter()
                    .map(|l| p.outcomes[v].iter().position(|x| x == l).expect("validated labels"))
                    .collect()
            })
            .collect();
        for k in 0..table.probs().len() {
            let cell = table.cell_indices(k);
            let want: Vec<usize> = cell.iter().zip(&maps).map(|(&i, m)| m[i]).collect();
            let row = digits
                .iter()
                .map(|d| {
                    let hit = vars.iter().zip(&want).all(|(&v, &w)| d[v] == w);
                    if hit {
                        1.0
                    } else {
                        0.0
                    }
                })
                .collect();
            a.push(row);
            b.push(table.probs()[k]);
            origins.push(RowOrigin::Cell {
                constraint: c,
                labels: table.cell_labels(k),
            });
        }
    }
    a.push(vec![1.0; n]);
    b.push(1.0);
    origins.push(RowOrigin::Normalization);
    Ok(LinearSystem {
        outcomes: p.outcomes.clone(),
        a,
        b,
        origins,
    })
}

/// Constraints whose rows carry weight in the infeasibility multipliers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub constraints: Vec<usize>,
    pub normalization: bool,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "constraints {:?}", self.constraints)?;
        if self.normalization {
            write!(f, " with normalization")?;
        }
        write!(f, " admit no nonnegative history weights")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityResult {
    pub feasible: bool,
    pub witness: Option<MrModel>,
    /// Max constraint violation of the witness, or of the best phase-1
    /// point when infeasible.
    pub residual: f64,
    pub certificate: Option<Certificate>,
}

/// Phase-1 simplex verdict: feasible iff the phase-1 optimum is `≤ tol`.
pub fn solve_feasibility(lp: &LinearSystem, tol: f64) -> Result<FeasibilityResult> {
    let sol = simplex::phase_one(&lp.a, &lp.b)?;
    if sol.objective <= tol {
        let total: f64 = sol.x.iter().sum();
        if total <= 0.0 {
            return Err(Error::Numerical("feasible point with zero mass".into()));
        }
        let weights: Vec<f64> = sol.x.iter().map(|w| w / total).collect();
        let residual = lp.residual(&weights);
        if residual > tol::WITNESS_RESIDUAL {
            return Err(Error::Numerical(format!("witness residual {residual:e} too large")));
        }
        let witness = MrModel::new(lp.outcomes.clone(), weights)
            .map_err(|e| Error::InternalConsistency(format!("witness invalid: {e}")))?;
        return Ok(FeasibilityResult {
            feasible: true,
            witness: Some(witness),
            residual,
            certificate: None,
        });
    }
    let scale = sol.duals.iter().map(|y| y.abs()).fold(0.0, f64::max).max(1.0);
    let mut constraints = BTreeSet::new();
    let mut normalization = false;
    for (y, origin) in sol.duals.iter().zip(&lp.origins) {
        if y.abs() <= 1e-9 * scale {
            continue;
        }
        match origin {
            RowOrigin::Cell { constraint, .. } => {
                constraints.insert(*constraint);
            }
            RowOrigin::Normalization => normalization = true,
        }
    }
    Ok(FeasibilityResult {
        feasible: false,
        witness: None,
        residual: lp.residual(&sol.x),
        certificate: Some(Certificate {
            constraints: constraints.into_iter().collect(),
            normalization,
        }),
    })
}

/// `build_lp` followed by `solve_feasibility` at the default tolerance.
pub fn solve(p: &FeasibilityProblem) -> Result<FeasibilityResult> {
    solve_feasibility(&build_lp(p)?, tol::FEASIBILITY)
}

/// Builds the problem a scenario's quantum statistics pose: the sequential
/// joint for every pair and, optionally, the unmeasured marginal at every
/// checkpoint those pairs touch.
pub fn scenario_problem(s: &TemporalScenario, pairs: &[(usize, usize)], include_unmeasured: bool) -> Result<FeasibilityProblem> {
    let mut tables = pairs
        .iter()
        .map(|&(i, j)| joint_two_time(s, i, j))
        .collect::<Result<Vec<_>>>()?;
    if include_unmeasured {
        let touched: BTreeSet<usize> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
        for j in touched {
            tables.push(JointDistribution::from_marginal(j, &marginal_without(s, j)?));
        }
    }
    let outcomes = s.measurements().iter().map(|m| m.labels()).collect();
    FeasibilityProblem::new(outcomes, tables)
}

pub fn check_scenario(s: &TemporalScenario, pairs: &[(usize, usize)], include_unmeasured: bool) -> Result<FeasibilityResult> {
    solve(&scenario_problem(s, pairs, include_unmeasured)?)
}

/// JSON form: tables keyed by label tuples such as `"+1,-1"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemJson {
    pub outcomes: Vec<Vec<f64>>,
    pub constraints: Vec<ConstraintJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintJson {
    pub times: Vec<usize>,
    pub table: BTreeMap<String, f64>,
}

impl ProblemJson {
    pub fn to_problem(&self) -> Result<FeasibilityProblem> {
        check_outcomes(&self.outcomes)?;
        let tables = self
            .constraints
            .iter()
            .map(|c| {
                let labels = c
                    .times
                    .iter()
                    .map(|&t| {
                        self.outcomes.get(t).cloned().ok_or(Error::IndexOutOfRange {
                            index: t,
                            len: self.outcomes.len(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                JointDistribution::from_keyed(c.times.clone(), labels, &c.table)
            })
            .collect::<Result<Vec<_>>>()?;
        FeasibilityProblem::new(self.outcomes.clone(), tables)
    }

    pub fn from_problem(p: &FeasibilityProblem) -> Self {
        Self {
            outcomes: p.outcomes.clone(),
            constraints: p
                .constraints
                .iter()
                .map(|t| ConstraintJson {
                    times: t.variables().to_vec(),
                    table: t.to_keyed(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelJson {
    pub outcomes: Vec<Vec<f64>>,
    /// Nonzero weights keyed by history; absent histories have weight zero.
    pub weights: BTreeMap<String, f64>,
}

impl ModelJson {
    pub fn from_model(m: &MrModel) -> Self {
        Self {
            outcomes: m.outcomes.clone(),
            weights: m
                .histories()
                .filter(|(_, w)| *w > 0.0)
                .map(|(h, w)| (h.to_string(), w))
                .collect(),
        }
    }

    pub fn to_model(&self) -> Result<MrModel> {
        let all: Vec<usize> = (0..self.outcomes.len()).collect();
        let table = JointDistribution::from_keyed(all, self.outcomes.clone(), &self.weights)?;
        MrModel::new(self.outcomes.clone(), table.probs().to_vec())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultJson {
    pub feasible: bool,
    pub residual: f64,
    pub witness: Option<ModelJson>,
    pub certificate: Option<Certificate>,
}

impl ResultJson {
    pub fn from_result(r: &FeasibilityResult) -> Self {
        Self {
            feasible: r.feasible,
            residual: r.residual,
            witness: r.witness.as_ref().map(ModelJson::from_model),
            certificate: r.certificate.clone(),
        }
    }

    pub fn to_result(&self) -> Result<FeasibilityResult> {
        Ok(FeasibilityResult {
            feasible: self.feasible,
            witness: self.witness.as_ref().map(ModelJson::to_model).transpose()?,
            residual: self.residual,
            certificate: self.certificate.clone(),
        })
    }
}
