//! Gaussian double slit: both slits open versus the mixture of the two
//! blocked-slit experiments. Prints a coarse text plot and the overlap of
//! the binned screen distributions.
//!
//! Run with `cargo run --example double_slit`.

use temporalis::cli::double_slit_record;
use temporalis::models::DoubleSlitParams;

fn main() -> temporalis::Result<()> {
    let p = DoubleSlitParams::default();
    let (record, patterns) = double_slit_record(&p)?;
    let (open, mix) = (&patterns[0], &patterns[3]);
    let peak = open.density.iter().cloned().fold(0.0, f64::max);
    println!("     x   both open                                  mixture");
    for k in (0..open.x.len()).step_by(50) {
        let bar = |v: f64| "#".repeat((v / peak * 40.0).round() as usize);
        println!("{:6.1}   {:<42} {}", open.x[k], bar(open.density[k]), bar(mix.density[k]));
    }
    for e in &record.experiments {
        println!("{:?}: {} local maxima, bins sum to {:.12}", e.experiment, e.local_maxima, e.bin_mass_sum);
    }
    println!("kappa = {:.9}, max |delta| per bin = {:.3e}", record.kappa, record.max_abs_delta);
    Ok(())
}
