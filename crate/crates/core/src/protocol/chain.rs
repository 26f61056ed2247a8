use num_complex::Complex64;

use super::TemporalScenario;
use crate::error::{Error, Result};
use crate::tol;

/// Amplitudes `a_A` for the first outcome and transition amplitudes
/// `a_{A→B}` (row `A`, column `B`) to the second.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeChain {
    amps: Vec<Complex64>,
    trans: Vec<Vec<Complex64>>,
}

impl AmplitudeChain {
    pub fn new(amps: Vec<Complex64>, trans: Vec<Vec<Complex64>>) -> Result<Self> {
        if amps.is_empty() || amps.len() != trans.len() {
            return Err(Error::InvalidChain("one transition row per first outcome required".into()));
        }
        let width = trans[0].len();
        if width == 0 || trans.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidChain("ragged transition matrix".into()));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > tol::CONSTRUCTION {
            return Err(Error::InvalidChain(format!("Σ|a_A|² = {norm}")));
        }
        for (a, row) in trans.iter().enumerate() {
            let n: f64 = row.iter().map(|t| t.norm_sqr()).sum();
            if (n - 1.0).abs() > tol::CONSTRUCTION {
                return Err(Error::InvalidChain(format!("Σ_B |a_{{{a}→B}}|² = {n}")));
            }
        }
        Ok(Self { amps, trans })
    }

    /// Extracts the chain between checkpoints `i < j` of a scenario with a
    /// pure initial state and complete rank-1 measurements at both times.
    ///
    /// Mixed initial states have no single amplitude per outcome and are
    /// rejected.
    pub fn from_scenario(s: &TemporalScenario, i: usize, j: usize) -> Result<Self> {
        if i >= j {
            return Err(Error::TimeOrder(vec![i, j]));
        }
        let psi0 = s
            .initial()
            .state_vector()
            .ok_or_else(|| Error::InvalidChain("initial state is not pure".into()))?;
        let to_first = s.evolution(0, i)?;
        let between = s.evolution(i, j)?;
        let basis = |k: usize| -> Result<Vec<Vec<Complex64>>> {
            let m = s.measurement(k)?;
            if m.len() != s.dim() {
                return Err(Error::InvalidChain(format!("measurement at checkpoint {k} is not rank 1")));
            }
            (0..m.len())
                .map(|b| {
                    m.rank_one_vector(b)
                        .ok_or_else(|| Error::InvalidChain(format!("measurement at checkpoint {k} is not rank 1")))
                })
                .collect()
        };
        let first = basis(i)?;
        let second = basis(j)?;
        let psi_i = to_first.matrix().matvec(&psi0);
        let amps = first.iter().map(|v| inner(v, &psi_i)).collect();
        let trans = first
            .iter()
            .map(|a| {
                let moved = between.matrix().matvec(a);
                second.iter().map(|b| inner(b, &moved)).collect()
            })
            .collect();
        Self::new(amps, trans)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn transitions(&self) -> &[Vec<Complex64>] {
        &self.trans
    }

    pub fn second_outcomes(&self) -> usize {
        self.trans[0].len()
    }
}

fn inner(bra: &[Complex64], ket: &[Complex64]) -> Complex64 {
    bra.iter().zip(ket).map(|(a, b)| a.conj() * b).sum()
}

/// `|Σ_A a_A a_{A→B}|² − Σ_A |a_A|² |a_{A→B}|²`: the interference part of
/// `P(B)` that an intermediate measurement removes.
pub fn interference_difference(c: &AmplitudeChain, b: usize) -> Result<f64> {
    if b >= c.second_outcomes() {
        return Err(Error::IndexOutOfRange {
            index: b,
            len: c.second_outcomes(),
        });
    }
    let coherent: Complex64 = c.amps.iter().zip(&c.trans).map(|(a, row)| a * row[b]).sum();
    let incoherent: f64 = c
        .amps
        .iter()
        .zip(&c.trans)
        .map(|(a, row)| a.norm_sqr() * row[b].norm_sqr())
        .sum();
    Ok(coherent.norm_sqr() - incoherent)
}
