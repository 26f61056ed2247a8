//! Leggett-Garg and no-signaling-in-time verdicts for a Mach-Zehnder
//! interferometer: the four regime classes and the maximal Wigner-form
//! violation.
//!
//! Run with `cargo run --example mach_zehnder_regimes`.

use std::f64::consts::PI;

use temporalis::cli::{mz_point_record, mz_scan_rows, scan_grid};
use temporalis::models::MzParams;

fn main() -> temporalis::Result<()> {
    for (label, r1, r2, phi, q) in [
        ("maximal K", 0.25, 0.75, PI, 0.5),
        ("NSIT only", 0.5, 0.5, PI, 1.0),
        ("classical", 0.0, 0.0, 0.0, 1.0),
    ] {
        let r = mz_point_record(&MzParams::new(r1, r2, phi, q)?)?;
        println!(
            "{label:<10} K = {:+.4} (LGI {}), delta = {:+.4} (NSIT {}), kappa = {:.4}, macrorealist model: {}",
            r.wigner_k,
            if r.lgi.violated { "violated" } else { "holds" },
            r.nsit.delta(1.0).unwrap(),
            if r.nsit.violated { "violated" } else { "holds" },
            r.nsit.kappa,
            if r.feasibility_with_marginals.feasible { "exists" } else { "none" },
        );
    }

    let axis: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let phases: Vec<f64> = (0..=10).map(|k| 2.0 * PI * k as f64 / 10.0).collect();
    let rows = mz_scan_rows(&scan_grid(&axis, &axis, &phases, &axis)?)?;
    let mut classes = [[0usize; 2]; 2];
    for r in &rows {
        classes[usize::from(r.lgi_violated)][usize::from(r.nsit_violated)] += 1;
    }
    println!("\n{} grid points", rows.len());
    println!("  both hold        {}", classes[0][0]);
    println!("  NSIT violated    {}", classes[0][1]);
    println!("  LGI violated     {}", classes[1][0]);
    println!("  both violated    {}", classes[1][1]);
    let best = rows.iter().max_by(|a, b| a.k.total_cmp(&b.k)).unwrap();
    println!("largest K = {} at R1 = {}, R2 = {}, phi = {:.4}", best.k, best.r1, best.r2, best.phi);
    Ok(())
}
