//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line and
//! then asserts, so `cargo test --test acceptance -- --nocapture` gives a
//! compact report.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use fxr::classic::{params, ClassicParams, Method};
use fxr::hamming::{identify_secret, HammingInstance};
use fxr::phase_ops::{fxr_alpha_rotation, fxr_beta_rotation, g_rotation};
use fxr::solver::{phi0, residuals};
use fxr::{compose, k_lower, run_2d, run_full, solve_free_pair, trace_curve, Mode, Schedule, SearchSpec};

fn verdict(n: u32, pass: bool, detail: String) {
    println!("criterion {n}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

type M2 = [[Complex64; 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Success probability from raw operator definitions in the (|R⟩, |T⟩) basis.
fn raw_success(mode: Mode, fixed: f64, pair: (f64, f64), k: u32, lambda: f64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let psi = [(1.0 - lambda).sqrt(), lambda.sqrt()];
    let oracle = |a: f64| [[one, zero], [zero, Complex64::from_polar(1.0, a)]];
    let diffusion = |b: f64| {
        let f = one - Complex64::from_polar(1.0, -b);
        let mut m = [[one, zero], [zero, one]];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] -= f * psi[i] * psi[j];
            }
        }
        m
    };
    let g = |a: f64, b: f64| mul(&diffusion(b), &oracle(a));
    let block = match mode {
        Mode::Alpha => mul(&g(fixed, pair.1), &g(fixed, pair.0)),
        Mode::Beta => mul(&g(pair.1, fixed), &g(pair.0, fixed)),
    };
    let mut total = [[one, zero], [zero, one]];
    for _ in 0..k {
        total = mul(&block, &total);
    }
    (total[1][0] * psi[0] + total[1][1] * psi[1]).norm_sqr()
}

#[test]
fn criterion_1_closed_forms_match_composition() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for i in 0..10_000 {
        let spec = SearchSpec::new(rng.random_range(1e-4..1.0 - 1e-4)).unwrap();
        let (fixed, a, b) = (
            rng.random_range(-2.0 * PI..2.0 * PI),
            rng.random_range(-2.0 * PI..2.0 * PI),
            rng.random_range(-2.0 * PI..2.0 * PI),
        );
        let (closed, built) = if i % 2 == 0 {
            (
                fxr_alpha_rotation(fixed, a, b, &spec),
                compose(&g_rotation(fixed, b, &spec), &g_rotation(fixed, a, &spec)),
            )
        } else {
            (fxr_beta_rotation(a, b, fixed, &spec), compose(&g_rotation(b, fixed, &spec), &g_rotation(a, fixed, &spec)))
        };
        worst = worst.max(closed.distance(&built));
    }
    let elapsed = start.elapsed();
    verdict(
        1,
        worst < 1e-11 && elapsed < Duration::from_secs(5),
        format!("10^4 samples, max |closed - composed| = {worst:.2e}, {elapsed:.2?}"),
    );
}

const SWEEP_LAMBDAS: [f64; 7] = [0.01, 0.05, 0.1, 0.2, 0.333, 0.5, 0.75];

fn sweep(mode: Mode) -> (usize, Vec<String>, f64, f64) {
    let cells: Vec<(f64, f64, u32)> = SWEEP_LAMBDAS
        .iter()
        .flat_map(|&l| (0..10).map(move |j| (l, (0.1 + 0.2 * j as f64) * PI)))
        .flat_map(|(l, a)| [1u32, 2, 5].map(|d| (l, a, d)))
        .collect();
    let results: Vec<(Option<String>, f64, f64)> = cells
        .par_iter()
        .map(|&(l, a, d)| {
            let spec = SearchSpec::new(l).unwrap();
            let k = k_lower(a, &spec).unwrap().ceil() as u32 + d;
            let label = format!("lambda={l} fixed={:.1}pi k={k}", a / PI);
            match solve_free_pair(mode, a, &spec, k) {
                Err(e) => (Some(format!("{label}: {e}")), f64::NAN, 0.0),
                Ok(sol) => {
                    let (re, im) = residuals(mode, a, sol.free_pair, k, &spec);
                    let p = raw_success(mode, a, sol.free_pair, k, l);
                    let ok = re.abs() < 1e-9 && im.abs() < 1e-9 && p > 1.0 - 1e-8;
                    let fail = (!ok).then(|| format!("{label}: res=({re:.1e},{im:.1e}) P={p}"));
                    (fail, re.abs().max(im.abs()), p)
                }
            }
        })
        .collect();
    let failures: Vec<String> = results.iter().filter_map(|r| r.0.clone()).collect();
    let worst_res = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let worst_p = results.iter().map(|r| r.2).fold(1.0, f64::min);
    (cells.len(), failures, worst_res, worst_p)
}

fn sweep_criterion(n: u32, mode: Mode) {
    let start = Instant::now();
    let (cells, failures, res, p) = sweep(mode);
    let elapsed = start.elapsed();
    for f in &failures {
        println!("  {f}");
    }
    verdict(
        n,
        failures.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{mode}-fixed sweep: {}/{cells} certified, max residual {res:.2e}, min P {p:.15}, {elapsed:.2?}",
            cells - failures.len()
        ),
    );
}

#[test]
fn criterion_2_alpha_fixed_sweep() {
    sweep_criterion(2, Mode::Alpha);
}

#[test]
fn criterion_3_beta_fixed_sweep() {
    sweep_criterion(3, Mode::Beta);
}

#[test]
fn criterion_4_quadratic_speedup() {
    let mut detail = Vec::new();
    let mut pass = true;
    for lambda in [1e-2, 1e-4, 1e-6] {
        let spec = SearchSpec::new(lambda).unwrap();
        let scaled = k_lower(PI, &spec).unwrap() * lambda.sqrt();
        let rel = (scaled / (PI / 4.0) - 1.0).abs();
        pass &= rel <= 0.05;
        detail.push(format!("{lambda:.0e}: {scaled:.6} ({:.2}%)", 100.0 * rel));
    }
    verdict(4, pass, format!("k_lower*sqrt(lambda) vs pi/4: {}", detail.join(", ")));
}

#[test]
fn criterion_5_curve_continuity_and_g_range() {
    let start = Instant::now();
    let spec = SearchSpec::new(0.2).unwrap();
    let alpha = 0.6 * PI;
    let curve = trace_curve(Mode::Alpha, alpha, &spec, fxr::curve::DEFAULT_POINTS).unwrap();
    let jump = curve.worst_jump_ratio();
    let imag = curve
        .samples
        .iter()
        .map(|&(x, y)| {
            let r = curve.constraint.rotation(x, y);
            (spec.sqrt_unmarked() * r.v[2] + spec.sqrt_lambda() * r.v[0]).abs()
        })
        .fold(0.0, f64::max);
    let gs: Vec<f64> = curve.samples.iter().map(|&(x, _)| curve.g(x)).collect();
    let gmin = gs.iter().cloned().fold(curve.g(curve.identity_point), f64::min);
    let gmax = gs.iter().cloned().fold(0.0, f64::max);
    let p0 = phi0(alpha, &spec);
    let elapsed = start.elapsed();
    verdict(
        5,
        jump <= 10.0 && imag < 1e-10 && gmin < 1e-10 && gmax >= p0 && elapsed < Duration::from_secs(2),
        format!(
            "jump ratio {jump:.3}, max imag {imag:.1e}, g in [{gmin:.1e}, {gmax:.6}] vs phi0 {p0:.6}, {elapsed:.2?}"
        ),
    );
}

#[test]
fn criterion_6_classic_methods() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut worst = 1.0f64;
    for (marked, total) in [(1, 10), (1, 5), (1, 4), (1, 2)] {
        let spec = SearchSpec::from_counts(marked, total).unwrap();
        for m in [Method::BigSmallStep, Method::ConjugateRotation, Method::ThreeDRotation] {
            let c = params(m, &spec).unwrap();
            let p2 = c.success_probability(&spec);
            let pf = run_full(total, &[0], &c.phase_sequence).unwrap().marked_mass();
            worst = worst.min(p2).min(pf);
            if p2 <= 1.0 - 1e-8 || pf <= 1.0 - 1e-8 {
                failures.push(format!("{m:?} at lambda={}: P2={p2} Pfull={pf}", spec.lambda));
            }
        }
    }
    let c = params(Method::ThreeDRotation, &SearchSpec::new(0.25).unwrap()).unwrap();
    let ClassicParams::ThreeDRotation { alpha3 } = c.params else { unreachable!() };
    let exact = (alpha3 - PI).abs() < 1e-12 && c.k_used == 1;
    let elapsed = start.elapsed();
    for f in &failures {
        println!("  {f}");
    }
    verdict(
        6,
        failures.is_empty() && exact && elapsed < Duration::from_secs(5),
        format!(
            "12 schedules, min P {worst:.15}; 3D at 1/4: alpha3-pi = {:.1e}, k = {}, {elapsed:.2?}",
            alpha3 - PI,
            c.k_used
        ),
    );
}

#[test]
fn criterion_7_hamming_secret_recovery() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut runs = 0;
    let mut failures = Vec::new();
    let mut worst = 1.0f64;
    for k in 5..=8 {
        let kl = k_lower(PI, &SearchSpec::new(1.0 / k as f64).unwrap()).unwrap();
        let expected_queries = 2 * (kl.ceil() as usize + 1);
        for n in 1..=3 {
            for _ in 0..5 {
                let inst = HammingInstance::random(k, n, &mut rng).unwrap();
                let out = identify_secret(&inst).unwrap();
                runs += 1;
                worst = worst.min(out.success_mass);
                if out.recovered != inst.secret
                    || out.success_mass <= 1.0 - 1e-8
                    || out.oracle_queries != expected_queries
                {
                    failures.push(format!(
                        "k={k} secret={:?}: got {:?}, mass {}, queries {} (want {expected_queries})",
                        inst.secret, out.recovered, out.success_mass, out.oracle_queries
                    ));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    for f in &failures {
        println!("  {f}");
    }
    verdict(
        7,
        failures.is_empty() && elapsed < Duration::from_secs(120),
        format!("{}/{runs} secrets recovered exactly, min mass {worst:.15}, {elapsed:.2?}", runs - failures.len()),
    );
}

#[test]
fn criterion_8_full_vector_matches_two_dim() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let n = rng.random_range(2..=4096usize);
        let m = rng.random_range(1..n);
        let mut marked: Vec<usize> = rand::seq::index::sample(&mut rng, n, m).into_vec();
        marked.sort_unstable();
        let mut sched = Schedule::new();
        for _ in 0..rng.random_range(0..=20) {
            let a = rng.random_range(-PI..PI);
            sched = if rng.random_bool(0.5) { sched.oracle(a) } else { sched.diffusion(a) };
        }
        let spec = SearchSpec::from_counts(m, n).unwrap();
        let full = run_full(n, &marked, &sched).unwrap().marked_mass();
        let two = run_2d(&sched, &spec).success();
        worst = worst.max((full - two).abs());
    }
    verdict(8, worst < 1e-10, format!("200 random instances, max |full - 2D| = {worst:.2e}"));
}
