//! Dense phase-1 simplex for `A x = b, x ≥ 0`.
//!
//! One artificial variable per row; the phase-1 objective is their sum.
//! Pivoting follows Bland's rule (lowest entering index, lowest basic index
//! on ratio ties), so the result is deterministic and cannot cycle in exact
//! arithmetic. An iteration cap turns numerical stalls into an error.

use crate::error::{Error, Result};

const REDUCED_COST_EPS: f64 = 1e-11;
const PIVOT_EPS: f64 = 1e-11;

#[derive(Debug, Clone)]
pub(crate) struct PhaseOne {
    /// Phase-1 optimum, `Σ artificials`.
    pub objective: f64,
    /// Values of the structural variables at the optimum.
    pub x: Vec<f64>,
    /// Farkas-type multipliers, one per original row (sign of the original
    /// row orientation).
    pub duals: Vec<f64>,
}

pub(crate) fn phase_one(a: &[Vec<f64>], b: &[f64]) -> Result<PhaseOne> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let cols = n + m;
    let width = cols + 1;
    // tableau rows: m constraint rows, then the reduced-cost row
    let mut t = vec![0.0; (m + 1) * width];
    let mut sign = vec![1.0; m];
    for i in 0..m {
        if b[i] < 0.0 {
            sign[i] = -1.0;
        }
        for j in 0..n {
            t[i * width + j] = sign[i] * a[i][j];
        }
        t[i * width + n + i] = 1.0;
        t[i * width + cols] = sign[i] * b[i];
    }
    let obj = m * width;
    for j in 0..n {
        t[obj + j] = -(0..m).map(|i| t[i * width + j]).sum::<f64>();
    }
    t[obj + cols] = -(0..m).map(|i| t[i * width + cols]).sum::<f64>();
    let mut basis: Vec<usize> = (n..cols).collect();

    let max_iter = 50 * (m + cols) + 1000;
    let mut iter = 0;
    loop {
        let Some(enter) = (0..cols).find(|&j| t[obj + j] < -REDUCED_COST_EPS) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let piv = t[i * width + enter];
            if piv <= PIVOT_EPS {
                continue;
            }
            let ratio = t[i * width + cols] / piv;
            leave = match leave {
                None => Some((i, ratio)),
                Some((r, best)) => {
                    if ratio < best - 1e-15 || (ratio <= best + 1e-15 && basis[i] < basis[r]) {
                        Some((i, ratio))
                    } else {
                        Some((r, best))
                    }
                }
            };
        }
        let Some((row, _)) = leave else {
            // phase 1 is bounded below by zero
            return Err(Error::Numerical("unbounded phase-1 direction".into()));
        };
        pivot(&mut t, width, m + 1, row, enter);
        basis[row] = enter;
        iter += 1;
        if iter > max_iter {
            return Err(Error::Numerical(format!("simplex exceeded {max_iter} pivots")));
        }
    }

    let mut x = vec![0.0; n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i * width + cols].max(0.0);
        }
    }
    // reduced cost of artificial i is 1 − y_i
    let duals = (0..m).map(|i| sign[i] * (1.0 - t[obj + n + i])).collect();
    Ok(PhaseOne {
        objective: -t[obj + cols],
        x,
        duals,
    })
}

fn pivot(t: &mut [f64], width: usize, rows: usize, row: usize, col: usize) {
    let p = t[row * width + col];
    for v in &mut t[row * width..(row + 1) * width] {
        *v /= p;
    }
    let pivot_row: Vec<f64> = t[row * width..(row + 1) * width].to_vec();
    for r in (0..rows).filter(|&r| r != row) {
        let f = t[r * width + col];
        if f == 0.0 {
            continue;
        }
        for (v, pr) in t[r * width..(r + 1) * width].iter_mut().zip(&pivot_row) {
            *v -= f * pr;
        }
        t[r * width + col] = 0.0;
    }
}
