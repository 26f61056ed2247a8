//! Random dichotomic feasibility problems with exactly representable data,
//! and a history-sum bookkeeping independent of the library's LP builder.

use rand::seq::SliceRandom;
use rand::Rng;
use temporalis::feasibility::FeasibilityProblem;
use temporalis::protocol::JointDistribution;

/// Probabilities are multiples of `1 / DENOM`, exact in binary floating point.
pub const DENOM: i64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Marginals of a genuine distribution over histories.
    Macrorealist,
    /// Marginals of a signed weight vector, kept only when every cell is nonnegative.
    QuasiProbability,
    /// Unrelated random tables.
    Independent,
}

pub const KINDS: [Kind; 3] = [Kind::Macrorealist, Kind::QuasiProbability, Kind::Independent];

pub fn dichotomic(n: usize) -> Vec<Vec<f64>> {
    vec![vec![1.0, -1.0]; n]
}

/// Every assignment of one label per variable.
pub fn assignments(labels: &[Vec<f64>]) -> Vec<Vec<f64>> {
    labels.iter().fold(vec![Vec::new()], |acc, ls| {
        acc.iter()
            .flat_map(|prefix| {
                ls.iter().map(move |&l| {
                    let mut v = prefix.clone();
                    v.push(l);
                    v
                })
            })
            .collect()
    })
}

/// `Σ_h w(h)` over histories agreeing with `cell` on `vars`.
pub fn history_sum(histories: &[Vec<f64>], weights: &[f64], vars: &[usize], cell: &[f64]) -> f64 {
    histories
        .iter()
        .zip(weights)
        .filter(|(h, _)| vars.iter().zip(cell).all(|(&v, &l)| h[v] == l))
        .map(|(_, &w)| w)
        .sum()
}

/// `A x = b` with one column per history and a trailing normalization row.
pub fn equality_system(p: &FeasibilityProblem) -> (Vec<Vec<f64>>, Vec<f64>, Vec<Vec<f64>>) {
    let histories = assignments(p.outcomes());
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for table in p.constraints() {
        let vars = table.variables();
        for cell in assignments(table.labels()) {
            a.push(
                histories
                    .iter()
                    .map(|h| f64::from(u8::from(vars.iter().zip(&cell).all(|(&v, &l)| h[v] == l))))
                    .collect(),
            );
            b.push(table.get(&cell).expect("cell of its own table"));
        }
    }
    a.push(vec![1.0; histories.len()]);
    b.push(1.0);
    (a, b, histories)
}

/// Largest deviation between the tables and the marginals of `weights`.
pub fn reproduction_error(p: &FeasibilityProblem, histories: &[Vec<f64>], weights: &[f64]) -> f64 {
    let mut worst = (weights.iter().sum::<f64>() - 1.0).abs();
    for table in p.constraints() {
        for cell in assignments(table.labels()) {
            let got = history_sum(histories, weights, table.variables(), &cell);
            worst = worst.max((got - table.get(&cell).unwrap()).abs());
        }
    }
    worst
}

/// Random nonempty subsets of `{0..n}` as sorted index lists.
pub fn variable_sets<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|&k| mask & (1 << k) != 0).collect())
        .collect();
    all.shuffle(rng);
    let take = rng.random_range(1..=all.len().min(4));
    all.truncate(take);
    all
}

/// Integers summing to `DENOM`, spread over `len` slots, some zero.
fn composition<R: Rng>(len: usize, rng: &mut R) -> Vec<i64> {
    let support: Vec<usize> = (0..len).filter(|_| rng.random_bool(0.6)).collect();
    let support = if support.is_empty() { vec![rng.random_range(0..len)] } else { support };
    let mut counts = vec![0i64; len];
    for _ in 0..DENOM {
        counts[support[rng.random_range(0..support.len())]] += 1;
    }
    counts
}

fn tables_from_weights(n: usize, weights: &[f64], sets: &[Vec<usize>]) -> Vec<JointDistribution> {
    let histories = assignments(&dichotomic(n));
    sets.iter()
        .map(|vars| {
            let labels = dichotomic(vars.len());
            let probs = assignments(&labels)
                .iter()
                .map(|cell| history_sum(&histories, weights, vars, cell))
                .collect();
            JointDistribution::new(vars.clone(), labels, probs).expect("marginal of a normalized vector")
        })
        .collect()
}

/// Every pair, plus random further sets; the configuration where signed
/// weights can have nonnegative marginals without a macrorealist model.
fn all_pairs_and_more<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| vec![i, j])).collect();
    for extra in variable_sets(n, rng).into_iter().take(rng.random_range(0..=2)) {
        if !sets.contains(&extra) {
            sets.push(extra);
        }
    }
    sets
}

pub fn random_problem<R: Rng>(kind: Kind, n: usize, rng: &mut R) -> FeasibilityProblem {
    let sets = match kind {
        Kind::QuasiProbability if n >= 3 => all_pairs_and_more(n, rng),
        _ => variable_sets(n, rng),
    };
    let scale = DENOM as f64;
    let tables = match kind {
        Kind::Macrorealist => {
            let w: Vec<f64> = composition(1 << n, rng).iter().map(|&k| k as f64 / scale).collect();
            tables_from_weights(n, &w, &sets)
        }
        Kind::QuasiProbability => loop {
            let mut k: Vec<i64> = (0..(1 << n) - 1).map(|_| rng.random_range(-48..=128)).collect();
            k.push(DENOM - k.iter().sum::<i64>());
            let w: Vec<f64> = k.iter().map(|&k| k as f64 / scale).collect();
            let histories = assignments(&dichotomic(n));
            let nonnegative = sets.iter().all(|vars| {
                assignments(&dichotomic(vars.len()))
                    .iter()
                    .all(|cell| history_sum(&histories, &w, vars, cell) >= 0.0)
            });
            if nonnegative {
                break tables_from_weights(n, &w, &sets);
            }
        },
        Kind::Independent => sets
            .iter()
            .map(|vars| {
                let labels = dichotomic(vars.len());
                let probs = composition(1 << vars.len(), rng).iter().map(|&k| k as f64 / scale).collect();
                JointDistribution::new(vars.clone(), labels, probs).expect("composition sums to one")
            })
            .collect(),
    };
    FeasibilityProblem::new(dichotomic(n), tables).expect("valid problem")
}
