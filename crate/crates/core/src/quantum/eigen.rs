//! Eigenvalues of small Hermitian matrices.
//!
//! A Hermitian `H = A + iB` is embedded as the real symmetric
//! `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every eigenvalue
//! doubled. The embedding is diagonalized with cyclic Jacobi rotations.

use super::CMatrix;

const MAX_SWEEPS: usize = 100;

/// Ascending eigenvalues of a Hermitian matrix. Only the Hermitian part of
/// the input is used.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    assert!(h.is_square(), "eigenvalues need a square matrix");
    let n = h.rows();
    let m = 2 * n;
    let mut a = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = (h.get(i, j) + h.get(j, i).conj()) * 0.5;
            a[i * m + j] = z.re;
            a[(i + n) * m + (j + n)] = z.re;
            a[i * m + (j + n)] = -z.im;
            a[(i + n) * m + j] = z.im;
        }
    }
    let mut eig = jacobi_symmetric(&mut a, m);
    eig.sort_by(f64::total_cmp);
    eig.into_iter().step_by(2).collect()
}

pub fn min_eigenvalue(h: &CMatrix) -> f64 {
    hermitian_eigenvalues(h)[0]
}

fn jacobi_symmetric(a: &mut [f64], n: usize) -> Vec<f64> {
    let scale = a.iter().map(|x| x.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q] * a[p * n + q])
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}
