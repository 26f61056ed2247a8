//! Exact feasibility of `{A x = b, x ≥ 0}` by Gauss-Jordan elimination
//! followed by Fourier-Motzkin projection, over arbitrary-precision rationals.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

fn exact(v: f64) -> Q {
    Q::from_float(v).expect("finite input")
}

/// `Σ coef_k y_k ≤ rhs`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Ineq {
    coef: Vec<Q>,
    rhs: Q,
}

impl Ineq {
    /// Scales so the first nonzero coefficient has magnitude one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coef.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coef {
                *c = &*c / &lead;
            }
            self.rhs = &self.rhs / &lead;
        }
        self
    }
}

/// Reduced row echelon form of `[a | b]`; `None` when some row reads `0 = c ≠ 0`.
fn rref(a: &[Vec<f64>], b: &[f64]) -> Option<(Vec<Vec<Q>>, Vec<Q>, Vec<usize>)> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> = a.iter().map(|row| row.iter().map(|&v| exact(v)).collect()).collect();
    let mut r: Vec<Q> = b.iter().map(|&v| exact(v)).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        r.swap(row, p);
        let inv = m[row][col].recip();
        for c in &mut m[row] {
            *c = &*c * &inv;
        }
        r[row] = &r[row] * &inv;
        for i in 0..m.len() {
            if i == row || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for c in 0..n {
                let delta = &f * &m[row][c];
                m[i][c] = &m[i][c] - delta;
            }
            let delta = &f * &r[row];
            r[i] = &r[i] - delta;
        }
        pivots.push(col);
        row += 1;
    }
    if r[row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    m.truncate(row);
    r.truncate(row);
    Some((m, r, pivots))
}

fn eliminate(ineqs: Vec<Ineq>, k: usize) -> Vec<Ineq> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for q in ineqs {
        if q.coef[k].is_positive() {
            pos.push(q);
        } else if q.coef[k].is_negative() {
            neg.push(q);
        } else {
            out.push(q);
        }
    }
    for p in &pos {
        for m in &neg {
            // p.coef[k] > 0 > m.coef[k]; the sum cancels y_k.
            let (sp, sm) = (-m.coef[k].clone(), p.coef[k].clone());
            let coef = p.coef.iter().zip(&m.coef).map(|(a, b)| a * &sp + b * &sm).collect();
            out.push(Ineq {
                coef,
                rhs: &p.rhs * &sp + &m.rhs * &sm,
            });
        }
    }
    let mut out: Vec<Ineq> = out.into_iter().map(Ineq::normalized).collect();
    out.sort();
    out.dedup();
    out
}

/// Exact verdict on `{A x = b, x ≥ 0}`.
pub fn feasible(a: &[Vec<f64>], b: &[f64]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    let Some((m, r, pivots)) = rref(a, b) else {
        return false;
    };
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    // x_pivot = r − Σ_free m·y ≥ 0  ⇔  Σ m·y ≤ r;   y ≥ 0  ⇔  −y ≤ 0.
    let mut ineqs: Vec<Ineq> = m
        .iter()
        .zip(&r)
        .map(|(row, rhs)| Ineq {
            coef: free.iter().map(|&f| row[f].clone()).collect(),
            rhs: rhs.clone(),
        })
        .collect();
    for k in 0..free.len() {
        let mut coef = vec![Q::zero(); free.len()];
        coef[k] = -Q::one();
        ineqs.push(Ineq { coef, rhs: Q::zero() });
    }
    let mut remaining: Vec<usize> = (0..free.len()).collect();
    while !remaining.is_empty() {
        if ineqs.iter().any(|q| q.coef.iter().all(Zero::is_zero) && q.rhs.is_negative()) {
            return false;
        }
        ineqs.retain(|q| !q.coef.iter().all(Zero::is_zero));
        // Eliminate the variable producing the fewest combinations.
        let cost = |k: usize| {
            let p = ineqs.iter().filter(|q| q.coef[k].is_positive()).count();
            let n = ineqs.iter().filter(|q| q.coef[k].is_negative()).count();
            p * n
        };
        let (slot, &k) = remaining.iter().enumerate().min_by_key(|&(_, &k)| cost(k)).expect("nonempty");
        remaining.swap_remove(slot);
        ineqs = eliminate(ineqs, k);
    }
    ineqs.iter().all(|q| !q.rhs.is_negative())
}
