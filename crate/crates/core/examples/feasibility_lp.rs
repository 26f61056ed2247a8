//! Deciding whether observed tables admit a distribution over
//! deterministic histories, with a witness or an infeasibility certificate.
//!
//! Run with `cargo run --example feasibility_lp`.

use rand::SeedableRng;
use temporalis::feasibility::{solve, FeasibilityProblem, MrModel};
use temporalis::protocol::JointDistribution;

fn pair(i: usize, j: usize, c: f64) -> temporalis::Result<JointDistribution> {
    let (same, diff) = ((1.0 + c) / 4.0, (1.0 - c) / 4.0);
    JointDistribution::new(vec![i, j], vec![vec![1.0, -1.0]; 2], vec![same, diff, diff, same])
}

fn report(name: &str, p: &FeasibilityProblem) -> temporalis::Result<()> {
    let r = solve(p)?;
    println!("{name}: feasible = {}, residual = {:.1e}", r.feasible, r.residual);
    if let Some(w) = &r.witness {
        for (h, weight) in w.histories().filter(|(_, w)| *w > 1e-12) {
            println!("    history ({h})  weight {weight:.4}");
        }
    }
    if let Some(c) = &r.certificate {
        println!("    {c}");
    }
    Ok(())
}

fn main() -> temporalis::Result<()> {
    let pm = vec![vec![1.0, -1.0]; 3];
    // Correlations 1/2, 1/2, -1/2 exceed the Wigner-form bound.
    let quantum = FeasibilityProblem::new(pm.clone(), vec![pair(0, 1, 0.5)?, pair(1, 2, 0.5)?, pair(0, 2, -0.5)?])?;
    report("C = (1/2, 1/2, -1/2)", &quantum)?;

    let mild = FeasibilityProblem::new(pm.clone(), vec![pair(0, 1, 0.5)?, pair(1, 2, 0.5)?, pair(0, 2, 0.0)?])?;
    report("C = (1/2, 1/2, 0)", &mild)?;

    // Anything predicted by a genuine history model passes.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let model = MrModel::random(pm, &mut rng)?;
    let generated = FeasibilityProblem::from_model(&model, &[vec![0, 1], vec![1, 2], vec![0, 2], vec![2]])?;
    report("random history model", &generated)?;
    Ok(())
}
