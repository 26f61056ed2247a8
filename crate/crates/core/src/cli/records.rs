//! Typed reports emitted by the command line. Every record rejects unknown
//! fields, so emitted JSON re-validates by deserializing it.

use serde::{Deserialize, Serialize};

use crate::criteria::{LgiReport, NsitReport};
use crate::distribution::Distribution;
use crate::feasibility::ResultJson;
use crate::models::{DoubleSlitParams, Experiment, MzCorrelations, MzParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MzParamsRecord {
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    pub phi: f64,
    pub q: f64,
}

impl From<MzParams> for MzParamsRecord {
    fn from(p: MzParams) -> Self {
        Self {
            r1: p.r1,
            r2: p.r2,
            phi: p.phi,
            q: p.q,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MzPointRecord {
    pub params: MzParamsRecord,
    pub analytic: MzCorrelations,
    pub simulated: MzCorrelations,
    /// Closed-form `K = C01 + C12 − C02`.
    pub wigner_k: f64,
    /// Wigner-form inequality on the simulated correlations.
    pub lgi: LgiReport,
    pub nsit_delta_analytic: f64,
    pub nsit_kappa_analytic: f64,
    /// `t2` statistics without versus with the `t1` measurement, simulated.
    pub nsit: NsitReport,
    /// Sequential joints `(t0,t1)`, `(t1,t2)`, `(t0,t2)` only.
    pub feasibility_joints: ResultJson,
    /// The same joints plus the unmeasured marginal at every checkpoint.
    pub feasibility_with_marginals: ResultJson,
}

/// One `mz-scan` row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanRow {
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    pub phi: f64,
    pub q: f64,
    #[serde(rename = "C01")]
    pub c01: f64,
    #[serde(rename = "C02")]
    pub c02: f64,
    #[serde(rename = "C12")]
    pub c12: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub lgi_violated: bool,
    pub delta: f64,
    pub nsit_violated: bool,
    /// Verdict on the simulated sequential joints.
    pub feasible: bool,
}

pub const SCAN_HEADER: [&str; 12] = [
    "R1",
    "R2",
    "phi",
    "q",
    "C01",
    "C02",
    "C12",
    "K",
    "lgi_violated",
    "delta",
    "nsit_violated",
    "feasible",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MzScanRecord {
    pub rows: Vec<ScanRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinPairRecord {
    pub i: usize,
    pub j: usize,
    pub correlation: f64,
    pub nsit: NsitReport,
    /// Joint at `(i, j)` plus both unmeasured marginals.
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinRecord {
    pub omega: f64,
    pub times: Vec<f64>,
    pub pairs: Vec<SpinPairRecord>,
    /// On the first four times, when available.
    pub chsh4: Option<LgiReport>,
    /// On the first three times, when available.
    pub wigner3: Option<LgiReport>,
    /// All pairwise joints and unmeasured marginals at once.
    pub feasibility_all_pairs: ResultJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSummary {
    pub experiment: Experiment,
    pub local_maxima: usize,
    /// Simpson integral of the unnormalized density.
    pub raw_integral: f64,
    pub bin_mass_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleSlitRecord {
    pub params: DoubleSlitParams,
    /// Overlap of the binned I and II&III patterns.
    pub kappa: f64,
    pub max_abs_delta: f64,
    pub nsit_violated: bool,
    pub experiments: Vec<ExperimentSummary>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub kappa_hat: f64,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NsitSampleRecord {
    pub params: MzParamsRecord,
    pub n: u64,
    pub seed: u64,
    pub alpha: f64,
    pub p_without: Distribution,
    pub p_with: Distribution,
    pub significant: usize,
    pub trials: Vec<TrialRecord>,
}
