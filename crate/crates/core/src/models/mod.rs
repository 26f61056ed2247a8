//! Concrete physical models: Mach-Zehnder interferometer, precessing
//! macro-spin and Gaussian double slit.

pub mod double_slit;
pub mod mach_zehnder;
pub mod spin;

pub use double_slit::{double_slit_pattern, DoubleSlitParams, Experiment, Grid, SlitPattern};
pub use mach_zehnder::{
    mz_build_scenario, mz_correlations_analytic, mz_nsit_delta_analytic, mz_nsit_probs_analytic, mz_wigner_k,
    MzCorrelations, MzParams,
};
pub use spin::{spin_build_scenario, spin_correlation, spin_nsit_probs, SpinParams};
