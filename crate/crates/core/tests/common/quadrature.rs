//! Gauss-Legendre quadrature and real closed-form double-slit densities.

use std::f64::consts::PI;

/// Nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rule: &[(f64, f64)]) -> f64 {
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    half * rule.iter().map(|&(x, w)| w * f(mid + half * x)).sum::<f64>()
}

/// Two equal Gaussian slits of width `sigma` at `±d/2`, freely spread for
/// `t` (ħ = 1).
#[derive(Debug, Clone, Copy)]
pub struct Slits {
    pub sigma: f64,
    pub d: f64,
    pub mass: f64,
    pub t: f64,
}

impl Slits {
    fn tau(&self) -> f64 {
        self.t / (2.0 * self.mass * self.sigma * self.sigma)
    }

    /// Screen width `σ √(1 + τ²)`.
    pub fn width(&self) -> f64 {
        self.sigma * (1.0 + self.tau().powi(2)).sqrt()
    }

    /// Density of a single packet centred at `x0`.
    pub fn single(&self, x0: f64, x: f64) -> f64 {
        let w = self.width();
        (-(x - x0).powi(2) / (2.0 * w * w)).exp() / (w * (2.0 * PI).sqrt())
    }

    /// Local phase of the right packet relative to the left one.
    pub fn relative_phase(&self, x: f64) -> f64 {
        let tau = self.tau();
        tau * x * self.d / (2.0 * self.sigma * self.sigma * (1.0 + tau * tau))
    }

    /// Both slits open, unnormalized: `ρ_L + ρ_R + 2 √(ρ_L ρ_R) cos Δφ`.
    pub fn both_open(&self, x: f64) -> f64 {
        let (l, r) = (self.single(-self.d / 2.0, x), self.single(self.d / 2.0, x));
        l + r + 2.0 * (l * r).sqrt() * self.relative_phase(x).cos()
    }

    /// Equal-weight mixture of the two single-slit densities.
    pub fn mixture(&self, x: f64) -> f64 {
        0.5 * (self.single(-self.d / 2.0, x) + self.single(self.d / 2.0, x))
    }
}

/// Bin masses on `[edges[k], edges[k+1]]`, normalized to their sum.
pub fn binned(f: impl Fn(f64) -> f64, edges: &[f64], rule: &[(f64, f64)]) -> Vec<f64> {
    let raw: Vec<f64> = edges.windows(2).map(|e| integrate(&f, e[0], e[1], rule)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|m| m / total).collect()
}

pub fn overlap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p * q).sqrt()).sum()
}
