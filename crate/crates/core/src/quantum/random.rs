//! Random states, unitaries and measurements for property testing and demos.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{CMatrix, DensityOperator, ProjectiveMeasurement, UnitaryOp};

fn gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Haar-distributed unitary via Gram-Schmidt on a complex Gaussian matrix.
pub fn unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> UnitaryOp {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v = gaussian_vector(dim, rng);
        for u in &cols {
            let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= overlap * ui;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut data = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for col in &cols {
            data.push(col[i]);
        }
    }
    UnitaryOp::new(CMatrix::new(dim, dim, data).expect("finite entries")).expect("orthonormal columns")
}

pub fn pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityOperator {
    DensityOperator::pure(&gaussian_vector(dim, rng)).expect("nonzero Gaussian vector")
}

/// Mixture of `dim` random pure states with random weights.
pub fn density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityOperator {
    let weights: Vec<f64> = (0..dim).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let mut acc = CMatrix::zeros(dim, dim);
    for w in weights {
        let p = pure_state(dim, rng);
        acc = &acc + &p.matrix().scale(Complex64::new(w / total, 0.0));
    }
    // symmetrize roundoff away before validation
    let herm = (&acc + &acc.adjoint()).scale(Complex64::new(0.5, 0.0));
    DensityOperator::new(herm).expect("convex mixture of pure states")
}

/// Rank-1 measurement in a random orthonormal basis with labels `0, 1, ...`.
pub fn basis_measurement<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ProjectiveMeasurement {
    let labels: Vec<f64> = (0..dim).map(|k| k as f64).collect();
    ProjectiveMeasurement::from_basis(&unitary(dim, rng), &labels).expect("valid basis")
}

/// Random basis measurement whose basis vectors are grouped into
/// (possibly degenerate) projectors.
pub fn coarse_measurement<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ProjectiveMeasurement {
    let u = unitary(dim, rng);
    let groups = rng.random_range(1..=dim);
    let mut assignment: Vec<usize> = (0..dim).map(|k| k % groups).collect();
    for k in (1..dim).rev() {
        let j = rng.random_range(0..=k);
        assignment.swap(k, j);
    }
    let branches = (0..groups)
        .map(|g| {
            let mut p = CMatrix::zeros(dim, dim);
            for (k, _) in assignment.iter().enumerate().filter(|(_, &a)| a == g) {
                let col: Vec<Complex64> = (0..dim).map(|i| u.element(i, k)).collect();
                p = &p + &CMatrix::outer(&col, &col);
            }
            (g as f64, p)
        })
        .collect();
    ProjectiveMeasurement::new(branches).expect("valid coarse-grained measurement")
}
