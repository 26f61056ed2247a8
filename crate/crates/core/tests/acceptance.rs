//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2, TAU};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::fourier_motzkin;
use common::problems::{equality_system, random_problem, reproduction_error, KINDS};
use temporalis::cli::{mz_scan_row, spin_record};
use temporalis::criteria::{lgi_wigner3, nsit_compare};
use temporalis::feasibility::solve;
use temporalis::models::*;
use temporalis::protocol::{
    correlation, interference_difference, marginal_with, marginal_without, AmplitudeChain, TemporalScenario,
};
use temporalis::quantum::random;
use temporalis::stats::nsit_trials;

const GOLDEN_KAPPA: f64 = 0.93104771475833026;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn grid(n: usize, hi: f64) -> Vec<f64> {
    (0..n).map(|k| hi * k as f64 / (n - 1) as f64).collect()
}

/// Analytic and simulated `(C01, C12, C02)` at one Mach-Zehnder point.
fn mz_correlations_both(p: &MzParams) -> Result<([f64; 3], [f64; 3]), String> {
    let a = mz_correlations_analytic(p);
    let s = mz_build_scenario(p).map_err(e)?;
    let sim = [
        correlation(&s, 0, 1).map_err(e)?,
        correlation(&s, 1, 2).map_err(e)?,
        correlation(&s, 0, 2).map_err(e)?,
    ];
    Ok(([a.c01, a.c12, a.c02], sim))
}

fn ac1() -> Check {
    let p = MzParams::new(0.25, 0.75, PI, 0.5).map_err(e)?;
    let first = Instant::now();
    let (analytic, sim) = mz_correlations_both(&p)?;
    let cold = first.elapsed();
    let mut times: Vec<Duration> = (0..101)
        .map(|_| {
            let t = Instant::now();
            let _ = std::hint::black_box(mz_correlations_both(std::hint::black_box(&p)));
            t.elapsed()
        })
        .collect();
    times.sort();
    let median = times[50];
    let want = [0.5, 0.5, -0.5];
    for (k, (got, w)) in analytic.iter().zip(want).enumerate() {
        ensure((got - w).abs() <= 1e-12, format!("analytic #{k} = {got}"))?;
    }
    for (k, (got, w)) in sim.iter().zip(want).enumerate() {
        ensure((got - w).abs() <= 1e-12, format!("simulated #{k} = {got}"))?;
    }
    ensure(median < Duration::from_millis(1), format!("median runtime {median:?}"))?;
    Ok(format!(
        "(C01, C12, C02) = ({}, {}, {}); runtime median {median:?} over 101 runs, first call {cold:?}",
        sim[0], sim[1], sim[2]
    ))
}

fn ac2() -> Check {
    let k = mz_wigner_k(&MzParams::new(0.25, 0.75, PI, 0.5).map_err(e)?);
    ensure((k - 1.5).abs() <= 1e-12, format!("K = {k}"))?;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0, 0.0);
    for &r1 in &grid(41, 1.0) {
        for &r2 in &grid(41, 1.0) {
            for &phi in &grid(41, TAU) {
                let k = mz_wigner_k(&MzParams::new(r1, r2, phi, 0.5).map_err(e)?);
                if k > best.0 {
                    best = (k, r1, r2, phi);
                }
            }
        }
    }
    ensure((best.0 - 1.5).abs() <= 1e-6, format!("grid max {}", best.0))?;
    ensure(
        (best.1 - 0.25).abs() < 1e-12 && (best.2 - 0.75).abs() < 1e-12 && (best.3 - PI).abs() < 1e-12,
        format!("argmax at {:?}", (best.1, best.2, best.3)),
    )?;
    Ok(format!("K(1/4, 3/4, pi) = {k}; 41^3 grid max {} at (R1, R2, phi) = ({}, {}, {})", best.0, best.1, best.2, best.3))
}

fn ac3() -> Check {
    let mut max_k = f64::NEG_INFINITY;
    for &phi in &grid(1001, TAU) {
        let p = MzParams::new(0.5, 0.5, phi, 0.5).map_err(e)?;
        let s = mz_build_scenario(&p).map_err(e)?;
        let report = lgi_wigner3(
            correlation(&s, 0, 1).map_err(e)?,
            correlation(&s, 1, 2).map_err(e)?,
            correlation(&s, 0, 2).map_err(e)?,
        )
        .map_err(e)?;
        ensure(!report.violated, format!("violated at phi = {phi}: K = {}", report.lhs))?;
        max_k = max_k.max(mz_wigner_k(&p));
    }
    ensure((max_k - 1.0).abs() <= 1e-12, format!("max K = {max_k}"))?;
    Ok(format!("max K over 1001 phases = {max_k}, never violated"))
}

fn ac4() -> Check {
    let mut worst: f64 = 0.0;
    for &r1 in &grid(11, 1.0) {
        for &r2 in &grid(11, 1.0) {
            for &phi in &grid(11, TAU) {
                for &q in &grid(11, 1.0) {
                    let p = MzParams::new(r1, r2, phi, q).map_err(e)?;
                    let s = mz_build_scenario(&p).map_err(e)?;
                    let delta = marginal_without(&s, 2).map_err(e)?.prob(1.0).unwrap()
                        - marginal_with(&s, 1, 2).map_err(e)?.prob(1.0).unwrap();
                    let formula = 2.0 * (2.0 * q - 1.0) * (r1 * (1.0 - r1) * r2 * (1.0 - r2)).sqrt() * phi.cos();
                    worst = worst.max((delta - formula).abs());
                }
            }
        }
    }
    ensure(worst <= 1e-12, format!("max deviation {worst:e}"))?;
    let s = mz_build_scenario(&MzParams::new(0.5, 0.5, 0.0, 1.0).map_err(e)?).map_err(e)?;
    let r = nsit_compare(&marginal_without(&s, 2).map_err(e)?, &marginal_with(&s, 1, 2).map_err(e)?, 1e-12).map_err(e)?;
    let delta = r.delta(1.0).unwrap();
    ensure((delta - 0.5).abs() <= 1e-12, format!("delta = {delta}"))?;
    ensure((r.kappa - FRAC_1_SQRT_2).abs() <= 1e-12, format!("kappa = {}", r.kappa))?;
    Ok(format!("11^4 grid max |delta - formula| = {worst:e}; at (1/2, 1/2, 0, 1) delta = {delta}, kappa = {}", r.kappa))
}

fn ac5() -> Check {
    let lgi_only = mz_scan_row(&MzParams::new(0.25, 0.75, PI, 0.5).map_err(e)?).map_err(e)?;
    ensure(lgi_only.lgi_violated && !lgi_only.nsit_violated, format!("{lgi_only:?}"))?;
    let nsit_only = mz_scan_row(&MzParams::new(0.5, 0.5, PI, 1.0).map_err(e)?).map_err(e)?;
    ensure(!nsit_only.lgi_violated && nsit_only.nsit_violated, format!("{nsit_only:?}"))?;
    Ok(format!(
        "(1/4, 3/4, pi, 1/2): K = {}, delta = {}; (1/2, 1/2, pi, 1): K = {}, delta = {}",
        lgi_only.k, lgi_only.delta, nsit_only.k, nsit_only.delta
    ))
}

fn ac6() -> Check {
    let p = SpinParams::new(1.0, vec![0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0]).map_err(e)?;
    let r = spin_record(&p).map_err(e)?;
    for pair in &r.pairs {
        ensure(
            pair.nsit.max_abs_delta == 0.0 && (pair.nsit.kappa - 1.0).abs() <= 1e-12 && !pair.nsit.violated,
            format!("pair ({}, {}) NSIT {:?}", pair.i, pair.j, pair.nsit),
        )?;
        ensure(pair.feasible, format!("pair ({}, {}) LP infeasible", pair.i, pair.j))?;
    }
    let chsh = r.chsh4.ok_or("no CHSH report")?;
    ensure((chsh.lhs - 2.0 * SQRT_2).abs() <= 1e-12 && chsh.violated, format!("CHSH lhs {}", chsh.lhs))?;
    ensure(!r.feasibility_all_pairs.feasible, "4-time LP feasible")?;
    Ok(format!(
        "6 pairs: delta = 0, kappa = 1, LP feasible; CHSH = {}; 4-time LP infeasible (certificate {:?})",
        chsh.lhs,
        r.feasibility_all_pairs.certificate.map(|c| c.constraints)
    ))
}

fn ac7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for k in 0..500 {
        let dim = 2 + k % 3;
        let s = TemporalScenario::new(
            random::pure_state(dim, &mut rng),
            vec![random::unitary(dim, &mut rng), random::unitary(dim, &mut rng)],
            (0..3).map(|_| random::basis_measurement(dim, &mut rng)).collect(),
        )
        .map_err(e)?;
        let chain = AmplitudeChain::from_scenario(&s, 1, 2).map_err(e)?;
        let (without, with) = (marginal_without(&s, 2).map_err(e)?, marginal_with(&s, 1, 2).map_err(e)?);
        for b in 0..dim {
            let delta = without.probs()[b] - with.probs()[b];
            worst = worst.max((delta - interference_difference(&chain, b).map_err(e)?).abs());
        }
    }
    ensure(worst <= 1e-10, format!("max deviation {worst:e}"))?;
    Ok(format!("500 scenarios, max |delta - interference| = {worst:e}"))
}

fn ac8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut agree, mut feasible, mut worst) = (0, 0, 0.0f64);
    for k in 0..200 {
        let p = random_problem(KINDS[k % 3], 1 + (k / 3) % 3, &mut rng);
        let (a, b, _) = equality_system(&p);
        let exact = fourier_motzkin::feasible(&a, &b);
        let r = solve(&p).map_err(e)?;
        if r.feasible == exact {
            agree += 1;
        }
        if let Some(w) = &r.witness {
            feasible += 1;
            let (hs, ws): (Vec<Vec<f64>>, Vec<f64>) = w.histories().map(|(h, x)| (h.0, x)).unzip();
            worst = worst.max(reproduction_error(&p, &hs, &ws));
        }
    }
    ensure(agree == 200, format!("{agree}/200 verdicts agree"))?;
    ensure(worst <= 1e-9, format!("witness residual {worst:e}"))?;
    Ok(format!("{agree}/200 agree ({feasible} feasible), max witness residual {worst:e}"))
}

fn ac9() -> Check {
    let p = DoubleSlitParams::default();
    let pats = [Experiment::BothOpen, Experiment::LeftBlocked, Experiment::RightBlocked, Experiment::Mixture]
        .map(|x| double_slit_pattern(&p, x));
    let pats = pats.into_iter().collect::<Result<Vec<_>, _>>().map_err(e)?;
    let fringes = pats[0].local_maxima(1e-8);
    let mixture = pats[3].local_maxima(1e-8);
    ensure(fringes >= 3, format!("I has {fringes} maxima"))?;
    ensure(mixture <= 1, format!("II&III has {mixture} maxima"))?;
    for pat in &pats {
        let total: f64 = pat.bin_masses.iter().sum();
        ensure((total - 1.0).abs() <= 1e-6, format!("{:?} bins sum to {total}", pat.experiment))?;
    }
    let r = nsit_compare(&pats[0].to_distribution().map_err(e)?, &pats[3].to_distribution().map_err(e)?, 1e-12)
        .map_err(e)?;
    ensure((r.kappa - GOLDEN_KAPPA).abs() <= 1e-6, format!("kappa {} vs golden {GOLDEN_KAPPA}", r.kappa))?;
    Ok(format!("I: {fringes} maxima, II&III: {mixture}; kappa = {} (golden {GOLDEN_KAPPA})", r.kappa))
}

fn ac10() -> Check {
    let point = |q: f64| -> Result<_, String> {
        let s = mz_build_scenario(&MzParams::new(0.5, 0.5, 0.0, q).map_err(e)?).map_err(e)?;
        Ok((marginal_without(&s, 2).map_err(e)?, marginal_with(&s, 1, 2).map_err(e)?))
    };
    let (a, b) = point(1.0)?;
    let power = nsit_trials(&a, &b, 10_000, 500, 1_000).map_err(e)?;
    let detected = power.iter().filter(|t| t.p_value < 1e-6).count();
    let (a, b) = point(0.5)?;
    let size = nsit_trials(&a, &b, 10_000, 1000, 2_000_000).map_err(e)?;
    let false_positives = size.iter().filter(|t| t.p_value < 0.05).count();
    let rate = false_positives as f64 / 1000.0;
    ensure(detected * 100 >= 99 * 500, format!("power {detected}/500"))?;
    ensure((0.03..=0.07).contains(&rate), format!("false-positive rate {rate}"))?;
    Ok(format!("power {detected}/500 with p < 1e-6; false-positive rate {false_positives}/1000 at alpha 0.05"))
}

fn main() {
    let suite = Instant::now();
    let criteria: [(&str, fn() -> Check); 10] = [
        ("AC1 appendix correlations", ac1),
        ("AC2 K maximum", ac2),
        ("AC3 balanced beam splitters", ac3),
        ("AC4 NSIT difference formula", ac4),
        ("AC5 regime separation", ac5),
        ("AC6 spin counterexample", ac6),
        ("AC7 interference identity", ac7),
        ("AC8 LP oracle equivalence", ac8),
        ("AC9 double slit", ac9),
        ("AC10 statistics", ac10),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} [{:.2?}]", start.elapsed());
            }
        }
    }
    let total = suite.elapsed();
    if total < Duration::from_secs(60) {
        println!("PASS suite runtime: {total:.2?} < 60s");
    } else {
        failed += 1;
        println!("FAIL suite runtime: {total:.2?} >= 60s");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
