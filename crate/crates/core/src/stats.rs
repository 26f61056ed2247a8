//! Finite-sample side of no-signaling in time.
//!
//! Outcomes are drawn with ChaCha8 (`rand_chacha::ChaCha8Rng`), seeded with
//! `seed_from_u64(seed)`; each draw takes one `f64` uniform in `[0, 1)` and
//! maps it through the inverse CDF over the labels in declared order.
//! Monte Carlo trial `k` of a run with base seed `s` uses seed
//! `s.wrapping_add(k)` and draws the "without" arm before the "with" arm
//! from that one stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distribution::Distribution;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSet {
    labels: Vec<f64>,
    counts: Vec<u64>,
}

impl SampleSet {
    pub fn new(labels: Vec<f64>, counts: Vec<u64>) -> Result<Self> {
        if labels.len() != counts.len() || labels.is_empty() {
            return Err(Error::InvalidDistribution("one count per label required".into()));
        }
        if counts.iter().sum::<u64>() == 0 {
            return Err(Error::InvalidDistribution("sample set is empty".into()));
        }
        Ok(Self { labels, counts })
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn n_total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn count(&self, label: f64) -> Option<u64> {
        self.labels.iter().position(|&l| l == label).map(|k| self.counts[k])
    }

    /// Empirical frequencies.
    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.n_total() as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    fn aligned_counts(&self, other: &SampleSet) -> Result<Vec<u64>> {
        if self.labels.len() != other.labels.len() {
            return Err(Error::LabelMismatch);
        }
        self.labels
            .iter()
            .map(|&l| other.count(l).ok_or(Error::LabelMismatch))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestResult {
    pub statistic: f64,
    /// Degrees of freedom after dropping empty pooled categories. Zero when
    /// both samples fall in a single category, in which case the statistic
    /// is 0 and the p-value 1.
    pub dof: usize,
    pub p_value: f64,
}

pub fn sample_with<R: Rng + ?Sized>(dist: &Distribution, n: u64, rng: &mut R) -> Result<SampleSet> {
    if n == 0 {
        return Err(Error::InvalidParams("sample size must be at least 1".into()));
    }
    let mut cdf = Vec::with_capacity(dist.len());
    let mut acc = 0.0;
    for &p in dist.probs() {
        acc += p;
        cdf.push(acc);
    }
    // rounding must not leave mass past the last label with positive probability
    let last = dist.probs().iter().rposition(|&p| p > 0.0).unwrap_or(dist.len() - 1);
    let mut counts = vec![0u64; dist.len()];
    for _ in 0..n {
        let u: f64 = rng.random();
        let k = cdf[..last].iter().position(|&c| u < c).unwrap_or(last);
        counts[k] += 1;
    }
    SampleSet::new(dist.labels().to_vec(), counts)
}

/// `n` independent draws from `dist`; identical inputs give identical counts.
pub fn sample(dist: &Distribution, n: u64, seed: u64) -> Result<SampleSet> {
    sample_with(dist, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Pearson chi-square two-sample homogeneity test.
pub fn two_sample_test(a: &SampleSet, b: &SampleSet) -> Result<TestResult> {
    let b_counts = a.aligned_counts(b)?;
    let (na, nb) = (a.n_total() as f64, b.n_total() as f64);
    let total = na + nb;
    let mut statistic = 0.0;
    let mut categories = 0usize;
    for (&ca, &cb) in a.counts.iter().zip(&b_counts) {
        let pooled = (ca + cb) as f64;
        if pooled == 0.0 {
            continue;
        }
        categories += 1;
        let ea = na * pooled / total;
        let eb = nb * pooled / total;
        statistic += (ca as f64 - ea).powi(2) / ea + (cb as f64 - eb).powi(2) / eb;
    }
    let dof = categories.saturating_sub(1);
    if dof == 0 || statistic == 0.0 {
        return Ok(TestResult {
            statistic: 0.0,
            dof,
            p_value: 1.0,
        });
    }
    Ok(TestResult {
        statistic,
        dof,
        p_value: chi_square_sf(statistic, dof).clamp(0.0, 1.0),
    })
}

/// Plug-in overlap `Σ_B √(p̂_a(B) p̂_b(B))`.
pub fn kappa_estimate(a: &SampleSet, b: &SampleSet) -> Result<f64> {
    let b_counts = a.aligned_counts(b)?;
    let (na, nb) = (a.n_total() as f64, b.n_total() as f64);
    let k: f64 = a
        .counts
        .iter()
        .zip(&b_counts)
        .map(|(&ca, &cb)| ((ca as f64 / na) * (cb as f64 / nb)).sqrt())
        .sum();
    Ok(k.clamp(0.0, 1.0))
}

/// Survival function of the chi-square distribution.
pub fn chi_square_sf(x: f64, dof: usize) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    gamma_q(dof as f64 / 2.0, x / 2.0)
}

/// Regularized upper incomplete gamma `Q(a, x)`.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    assert!(a > 0.0, "gamma_q needs a > 0");
    if x <= 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_continued_fraction(a, x)
    }
}

const GAMMA_EPS: f64 = 1e-15;
const GAMMA_MAX_ITER: usize = 10_000;

fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut ap = a;
    for _ in 0..GAMMA_MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * GAMMA_EPS {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Modified Lentz evaluation.
fn gamma_q_continued_fraction(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..GAMMA_MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < GAMMA_EPS {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

/// Lanczos approximation (g = 7, n = 9).
pub fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // reflection
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let t = x + 7.5;
    let series = COEF[1..]
        .iter()
        .enumerate()
        .fold(COEF[0], |acc, (i, &c)| acc + c / (x + i as f64 + 1.0));
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + series.ln()
}

/// One seeded NSIT trial: both arms sampled, tested and overlapped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrialOutcome {
    pub seed: u64,
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub kappa_hat: f64,
}

/// Runs `trials` seeded trials in parallel; results are in trial order.
pub fn nsit_trials(
    p_without: &Distribution,
    p_with: &Distribution,
    n: u64,
    trials: usize,
    seed: u64,
) -> Result<Vec<TrialOutcome>> {
    if !p_without.same_labels(p_with) {
        return Err(Error::LabelMismatch);
    }
    (0..trials)
        .into_par_iter()
        .map(|k| {
            let trial_seed = seed.wrapping_add(k as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
            let a = sample_with(p_without, n, &mut rng)?;
            let b = sample_with(p_with, n, &mut rng)?;
            let t = two_sample_test(&a, &b)?;
            Ok(TrialOutcome {
                seed: trial_seed,
                statistic: t.statistic,
                dof: t.dof,
                p_value: t.p_value,
                kappa_hat: kappa_estimate(&a, &b)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: f64) -> Distribution {
        Distribution::new(vec![1.0, -1.0], vec![p, 1.0 - p]).unwrap()
    }

    #[test]
    fn certain_outcome() {
        let s = sample(&Distribution::point_mass(1.0), 100, 99).unwrap();
        assert_eq!(s.counts(), &[100]);
        let s = sample(&pm(1.0), 100, 3).unwrap();
        assert_eq!(s.counts(), &[100, 0]);
        let s = sample(&pm(0.0), 100, 3).unwrap();
        assert_eq!(s.counts(), &[0, 100]);
    }

    #[test]
    fn deterministic_and_binomially_plausible() {
        let a = sample(&pm(0.5), 1_000_000, 2024).unwrap();
        let b = sample(&pm(0.5), 1_000_000, 2024).unwrap();
        assert_eq!(a, b);
        // 5 sd of Binomial(1e6, 1/2) is 2500
        assert!(a.counts()[0].abs_diff(500_000) <= 2500);
        assert_ne!(sample(&pm(0.5), 1000, 1).unwrap(), sample(&pm(0.5), 1000, 2).unwrap());
        assert!(sample(&pm(0.5), 0, 1).is_err());
    }

    #[test]
    fn identical_counts_give_unit_p() {
        let a = SampleSet::new(vec![1.0, -1.0], vec![40, 60]).unwrap();
        let t = two_sample_test(&a, &a).unwrap();
        assert_eq!((t.statistic, t.p_value, t.dof), (0.0, 1.0, 1));
    }

    #[test]
    fn strongly_different_counts() {
        let a = SampleSet::new(vec![1.0, -1.0], vec![1000, 0]).unwrap();
        let b = SampleSet::new(vec![1.0, -1.0], vec![500, 500]).unwrap();
        let t = two_sample_test(&a, &b).unwrap();
        assert!((t.statistic - 2000.0 / 3.0).abs() < 1e-9);
        assert_eq!(t.dof, 1);
        assert!(t.p_value < 1e-6);
    }

    #[test]
    fn empty_pooled_category_dropped() {
        let a = SampleSet::new(vec![1.0, 0.0, -1.0], vec![30, 0, 70]).unwrap();
        let b = SampleSet::new(vec![-1.0, 0.0, 1.0], vec![50, 0, 50]).unwrap();
        let t = two_sample_test(&a, &b).unwrap();
        assert_eq!(t.dof, 1);
        let one = SampleSet::new(vec![1.0, -1.0], vec![10, 0]).unwrap();
        let t = two_sample_test(&one, &one).unwrap();
        assert_eq!((t.dof, t.p_value), (0, 1.0));
    }

    #[test]
    fn label_mismatch() {
        let a = SampleSet::new(vec![1.0, -1.0], vec![1, 1]).unwrap();
        let b = SampleSet::new(vec![1.0, 0.0], vec![1, 1]).unwrap();
        assert_eq!(two_sample_test(&a, &b), Err(Error::LabelMismatch));
        assert_eq!(kappa_estimate(&a, &b), Err(Error::LabelMismatch));
    }

    #[test]
    fn kappa_cases() {
        let a = SampleSet::new(vec![1.0, -1.0], vec![30, 70]).unwrap();
        let b = SampleSet::new(vec![1.0, -1.0], vec![300, 700]).unwrap();
        assert!((kappa_estimate(&a, &b).unwrap() - 1.0).abs() < 1e-15);
        let sure = SampleSet::new(vec![1.0, -1.0], vec![1000, 0]).unwrap();
        let half = SampleSet::new(vec![1.0, -1.0], vec![500, 500]).unwrap();
        assert!((kappa_estimate(&sure, &half).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let other = SampleSet::new(vec![1.0, -1.0], vec![0, 10]).unwrap();
        assert_eq!(kappa_estimate(&sure, &other).unwrap(), 0.0);
    }

    #[test]
    fn gamma_special_values() {
        // Q(1, x) = e^{-x}
        for x in [0.1, 1.0, 3.0, 20.0] {
            assert!((gamma_q(1.0, x) - (-x as f64).exp()).abs() < 1e-14);
        }
        // chi-square(2) survival is e^{-x/2}
        assert!((chi_square_sf(5.0, 2) - (-2.5f64).exp()).abs() < 1e-14);
        // ln Γ(5) = ln 24
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-13);
        assert!((ln_gamma(0.5) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-13);
        assert_eq!(chi_square_sf(0.0, 3), 1.0);
    }

    #[test]
    fn trials_are_reproducible() {
        let a = nsit_trials(&pm(1.0), &pm(0.5), 1000, 8, 11).unwrap();
        let b = nsit_trials(&pm(1.0), &pm(0.5), 1000, 8, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[3].seed, 14);
    }
}
