//! Finite samples at the Mach-Zehnder point of maximal signaling and at a
//! point where no-signaling in time holds: chi-square p-values and the
//! estimated overlap.
//!
//! Run with `cargo run --release --example nsit_significance`.

use temporalis::cli::nsit_sample_record;
use temporalis::models::MzParams;

fn main() -> temporalis::Result<()> {
    for (name, q) in [("q = 1 (signaling)", 1.0), ("q = 1/2 (no signaling)", 0.5)] {
        let p = MzParams::new(0.5, 0.5, 0.0, q)?;
        let r = nsit_sample_record(&p, 10_000, 200, 42, 0.05)?;
        let mean_kappa = r.trials.iter().map(|t| t.kappa_hat).sum::<f64>() / r.trials.len() as f64;
        let mut ps: Vec<f64> = r.trials.iter().map(|t| t.p_value).collect();
        ps.sort_by(f64::total_cmp);
        println!(
            "{name:<24} significant at 0.05: {:>3}/200, median p = {:.3e}, mean kappa_hat = {:.4}",
            r.significant,
            ps[ps.len() / 2],
            mean_kappa
        );
    }
    Ok(())
}
