//! A qutrit measured at three checkpoints: sequential joint statistics,
//! the effect of an intermediate measurement, and the interference term
//! that accounts for it.
//!
//! Run with `cargo run --example sequential_measurement`.

use num_complex::Complex64;
use temporalis::protocol::{
    interference_difference, joint_multi_time, marginal_with, marginal_without, schema::ScenarioJson,
    AmplitudeChain, TemporalScenario,
};
use temporalis::quantum::{CMatrix, DensityOperator, ProjectiveMeasurement, UnitaryOp};

fn main() -> temporalis::Result<()> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let s3 = 1.0 / 3f64.sqrt();
    // discrete Fourier transform on three levels
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let dft = UnitaryOp::new(CMatrix::from_rows(&[
        vec![c(s3, 0.0), c(s3, 0.0), c(s3, 0.0)],
        vec![c(s3, 0.0), w * s3, w * w * s3],
        vec![c(s3, 0.0), w * w * s3, w * s3],
    ])?)?;
    let psi = DensityOperator::pure(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])?;
    let readout = ProjectiveMeasurement::computational(&[-1.0, 0.0, 1.0])?;
    let s = TemporalScenario::with_checkpoints(
        psi,
        vec!["prepare".into(), "middle".into(), "screen".into()],
        vec![dft.clone(), dft],
        vec![readout.clone(), readout.clone(), readout],
    )?;

    let joint = joint_multi_time(&s, &[1, 2])?;
    println!("P(middle, screen):");
    for (cell, p) in joint.cells() {
        println!("  {cell:?}  {p:.6}");
    }

    let without = marginal_without(&s, 2)?;
    let with = marginal_with(&s, 1, 2)?;
    let chain = AmplitudeChain::from_scenario(&s, 1, 2)?;
    println!("\nscreen   P(B)      P(B | middle)   difference   interference term");
    for (b, (label, p)) in without.iter().enumerate() {
        let q = with.prob(label).unwrap();
        println!(
            "{label:>5}   {p:.6}   {q:.6}        {:+.6}    {:+.6}",
            p - q,
            interference_difference(&chain, b)?
        );
    }

    let json = serde_json::to_string(&ScenarioJson::from_scenario(&s)).expect("serializable");
    println!("\nscenario as JSON ({} bytes), accepted by ScenarioJson::to_scenario", json.len());
    Ok(())
}
