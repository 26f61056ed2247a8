//! One-dimensional double slit with Gaussian wavepackets (`ħ = 1`).
//!
//! Each slit emits a Gaussian of position spread `sigma` centred at `±d/2`
//! that then propagates freely for `t_prop`:
//!
//! `ψ(x, t) = (2πσ²)^{-1/4} (1 + iτ)^{-1/2} exp(−(x − x0)² / (4σ²(1 + iτ)))`,
//! `τ = t / (2 m σ²)`, so `|ψ|²` has variance `σ² + (t / (2 m σ))²`.
//!
//! Experiment I keeps both slits open, II blocks the left slit (only the
//! right packet arrives), III blocks the right slit, and II&III is the
//! weighted mixture of II and III.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::distribution::Distribution;
use crate::error::{Error, Result};

/// Screen sampling `[x_min, x_max]` with an odd number of points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl Grid {
    pub fn step(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn points(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.n_points).map(|k| self.x_min + k as f64 * h).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleSlitParams {
    pub sigma: f64,
    pub d: f64,
    pub mass: f64,
    pub t_prop: f64,
    pub grid: Grid,
    /// Weight of experiment II in the II&III mixture.
    pub weight: f64,
}

impl Default for DoubleSlitParams {
    /// Packets overlap after propagation and show several fringes on the
    /// screen while the mixture stays unimodal.
    fn default() -> Self {
        Self {
            sigma: 1.0,
            d: 10.0,
            mass: 1.0,
            t_prop: 20.0,
            grid: Grid {
                x_min: -60.0,
                x_max: 60.0,
                n_points: 2001,
            },
            weight: 0.5,
        }
    }
}

impl DoubleSlitParams {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!("{name} = {v} must be positive")))
            }
        };
        positive("sigma", self.sigma)?;
        positive("d", self.d)?;
        positive("mass", self.mass)?;
        if !(self.t_prop.is_finite() && self.t_prop >= 0.0) {
            return Err(Error::InvalidParams(format!("t_prop = {} must be non-negative", self.t_prop)));
        }
        let g = &self.grid;
        if g.n_points < 3 || g.n_points % 2 == 0 {
            return Err(Error::InvalidParams(format!(
                "grid needs an odd number of points ≥ 3, got {}",
                g.n_points
            )));
        }
        if !(g.x_min.is_finite() && g.x_max.is_finite() && g.x_min < g.x_max) {
            return Err(Error::InvalidParams("grid bounds must satisfy x_min < x_max".into()));
        }
        if !(0.0..=1.0).contains(&self.weight) {
            return Err(Error::InvalidParams(format!("weight {} outside [0, 1]", self.weight)));
        }
        Ok(())
    }

    /// Spread of each packet's density on the screen.
    pub fn screen_width(&self) -> f64 {
        (self.sigma.powi(2) + (self.t_prop / (2.0 * self.mass * self.sigma)).powi(2)).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Experiment {
    /// Both slits open.
    #[serde(rename = "I")]
    BothOpen,
    /// Left slit blocked by a detector.
    #[serde(rename = "II")]
    LeftBlocked,
    /// Right slit blocked by a detector.
    #[serde(rename = "III")]
    RightBlocked,
    /// Weighted mixture of II and III.
    #[serde(rename = "II_AND_III")]
    Mixture,
}

/// Free Gaussian wavepacket centred at `x0` at `t = 0`.
pub fn gaussian_packet(p: &DoubleSlitParams, x0: f64, x: f64) -> Complex64 {
    let tau = p.t_prop / (2.0 * p.mass * p.sigma * p.sigma);
    let spread = Complex64::new(1.0, tau);
    let prefactor = (2.0 * PI * p.sigma * p.sigma).powf(-0.25) / spread.sqrt();
    let dx = x - x0;
    prefactor * (-(dx * dx) / (4.0 * p.sigma * p.sigma * spread)).exp()
}

/// Normalized screen density with Simpson bin masses.
#[derive(Debug, Clone, PartialEq)]
pub struct SlitPattern {
    pub experiment: Experiment,
    pub x: Vec<f64>,
    /// Density normalized to unit Simpson integral.
    pub density: Vec<f64>,
    /// One bin per Simpson panel pair `[x_{2k}, x_{2k+2}]`.
    pub bin_masses: Vec<f64>,
    /// Simpson integral of the density before normalization.
    pub raw_integral: f64,
}

impl SlitPattern {
    pub fn bin_centers(&self) -> Vec<f64> {
        self.x.iter().skip(1).step_by(2).copied().collect()
    }

    /// Bin masses as a distribution over bin centres.
    pub fn to_distribution(&self) -> Result<Distribution> {
        Distribution::new(self.bin_centers(), self.bin_masses.clone())
    }

    /// Interior local maxima, ignoring wiggles smaller than `noise`.
    pub fn local_maxima(&self, noise: f64) -> usize {
        count_maxima(&self.density, noise)
    }
}

fn count_maxima(values: &[f64], noise: f64) -> usize {
    #[derive(PartialEq)]
    enum Trend {
        Unknown,
        Rising,
        Falling,
    }
    let Some(&first) = values.first() else {
        return 0;
    };
    let mut trend = Trend::Unknown;
    let mut extreme = first;
    let mut count = 0;
    for &v in &values[1..] {
        match trend {
            Trend::Rising => {
                if v > extreme {
                    extreme = v;
                } else if extreme - v > noise {
                    count += 1;
                    trend = Trend::Falling;
                    extreme = v;
                }
            }
            Trend::Falling => {
                if v < extreme {
                    extreme = v;
                } else if v - extreme > noise {
                    trend = Trend::Rising;
                    extreme = v;
                }
            }
            Trend::Unknown => {
                if v - extreme > noise {
                    trend = Trend::Rising;
                    extreme = v;
                } else if extreme - v > noise {
                    trend = Trend::Falling;
                    extreme = v;
                }
            }
        }
    }
    count
}

fn simpson_bins(values: &[f64], h: f64) -> Vec<f64> {
    values
        .windows(3)
        .step_by(2)
        .map(|w| h / 3.0 * (w[0] + 4.0 * w[1] + w[2]))
        .collect()
}

fn pattern_from_raw(experiment: Experiment, grid: &Grid, raw: Vec<f64>) -> Result<SlitPattern> {
    let bins = simpson_bins(&raw, grid.step());
    let total: f64 = bins.iter().sum();
    if (total - 1.0).abs() > 1e-3 {
        return Err(Error::GridTooCoarse(total));
    }
    Ok(SlitPattern {
        experiment,
        x: grid.points(),
        density: raw.iter().map(|v| v / total).collect(),
        bin_masses: bins.iter().map(|m| m / total).collect(),
        raw_integral: total,
    })
}

pub fn double_slit_pattern(p: &DoubleSlitParams, experiment: Experiment) -> Result<SlitPattern> {
    p.validate()?;
    let xs = p.grid.points();
    let left = |x: f64| gaussian_packet(p, -p.d / 2.0, x);
    let right = |x: f64| gaussian_packet(p, p.d / 2.0, x);
    match experiment {
        Experiment::BothOpen => {
            // ‖ψ_L + ψ_R‖² = 2 (1 + ⟨ψ_L|ψ_R⟩), and the overlap is real and conserved
            let norm = 2.0 * (1.0 + (-p.d * p.d / (8.0 * p.sigma * p.sigma)).exp());
            let raw = xs.iter().map(|&x| (left(x) + right(x)).norm_sqr() / norm).collect();
            pattern_from_raw(experiment, &p.grid, raw)
        }
        Experiment::LeftBlocked => {
            let raw = xs.iter().map(|&x| right(x).norm_sqr()).collect();
            pattern_from_raw(experiment, &p.grid, raw)
        }
        Experiment::RightBlocked => {
            let raw = xs.iter().map(|&x| left(x).norm_sqr()).collect();
            pattern_from_raw(experiment, &p.grid, raw)
        }
        Experiment::Mixture => {
            let ii = double_slit_pattern(p, Experiment::LeftBlocked)?;
            let iii = double_slit_pattern(p, Experiment::RightBlocked)?;
            let w = p.weight;
            let mix = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(a, b)| w * a + (1.0 - w) * b).collect();
            Ok(SlitPattern {
                experiment,
                x: ii.x.clone(),
                density: mix(&ii.density, &iii.density),
                bin_masses: mix(&ii.bin_masses, &iii.bin_masses),
                raw_integral: w * ii.raw_integral + (1.0 - w) * iii.raw_integral,
            })
        }
    }
}
