//! Three earlier exact-search schemes, used as baselines and as cross-checks
//! for the simulator.
//!
//! Their published parameter tables write a Grover step as `G(x, y)` meaning
//! `S_r(−x)·S_o(−y)`. In this crate's `G(α, β) = S_r(β)·S_o(α)` that is
//! `G(−y, −x)`, which is how the schedules below are built.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{FxrError, Result};
use crate::phase_ops::SearchSpec;
use crate::simulator::{run_2d, Schedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BigSmallStep,
    ConjugateRotation,
    ThreeDRotation,
}

impl std::str::FromStr for Method {
    type Err = FxrError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bss" | "big-small-step" => Ok(Method::BigSmallStep),
            "conj" | "conjugate-rotation" => Ok(Method::ConjugateRotation),
            "3d" | "three-d-rotation" => Ok(Method::ThreeDRotation),
            _ => Err(FxrError::InvalidArgument(format!("unknown method '{s}' (expected bss, conj or 3d)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassicParams {
    BigSmallStep { alpha1: f64, beta1: f64 },
    ConjugateRotation { alpha2: f64, beta2: f64, u: f64 },
    ThreeDRotation { alpha3: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicSchedule {
    pub method: Method,
    pub k_opt: f64,
    pub k_used: u32,
    pub params: ClassicParams,
    pub phase_sequence: Schedule,
}

impl ClassicSchedule {
    pub fn success_probability(&self, spec: &SearchSpec) -> f64 {
        run_2d(&self.phase_sequence, spec).success()
    }
}

/// `π/(2θ) − 1/2`, snapped to an integer when within rounding of one.
pub fn k_opt(spec: &SearchSpec) -> f64 {
    let k = PI / (2.0 * spec.theta) - 0.5;
    if (k - k.round()).abs() < 1e-9 {
        k.round()
    } else {
        k
    }
}

/// `arcsin` for arguments that are ±1 in exact arithmetic but may land a few
/// ulps outside. Anything further out is infeasible.
fn asin_exact(x: f64, what: &str) -> Result<f64> {
    if x.abs() > 1.0 + 1e-12 || x.is_nan() {
        return Err(FxrError::Infeasible(format!("{what}: arcsin argument {x} outside [-1, 1]")));
    }
    if 1.0 - x.abs() < 1e-12 {
        return Ok(PI / 2.0 * x.signum());
    }
    Ok(x.asin())
}

pub fn params(method: Method, spec: &SearchSpec) -> Result<ClassicSchedule> {
    match method {
        Method::BigSmallStep => big_small_step_params(spec),
        Method::ConjugateRotation => conjugate_rotation_params(spec),
        Method::ThreeDRotation => three_d_rotation_params(spec),
    }
}

/// `k = ⌈k_opt⌉` steps of `G(α3, −α3)` with `sin(π/(4k+2)) = sin(α3/2)·sin(θ/2)`.
pub fn three_d_rotation_params(spec: &SearchSpec) -> Result<ClassicSchedule> {
    let ko = k_opt(spec);
    let k = (ko.ceil() as u32).max(1);
    let a3 = 2.0 * asin_exact((PI / (4 * k + 2) as f64).sin() / spec.sqrt_lambda(), "3D rotation")?;
    let block = Schedule::new().grover(a3, -a3);
    Ok(ClassicSchedule {
        method: Method::ThreeDRotation,
        k_opt: ko,
        k_used: k,
        params: ClassicParams::ThreeDRotation { alpha3: a3 },
        phase_sequence: Schedule::new().repeat(&block, k),
    })
}

/// `k = ⌈k_opt⌉` conjugated steps:
/// `sin(α2/2)·sinθ = sin((π−θ)/(2k))`, `tan(β2/2) = tan(α2/2)·cosθ`, `u = (π−β2)/2`.
pub fn conjugate_rotation_params(spec: &SearchSpec) -> Result<ClassicSchedule> {
    let ko = k_opt(spec);
    let k = (ko.ceil() as u32).max(1);
    let (st, ct) = spec.theta.sin_cos();
    let a2 = 2.0 * asin_exact(((PI - spec.theta) / (2 * k) as f64).sin() / st, "conjugate rotation")?;
    let (sa, ca) = (a2 / 2.0).sin_cos();
    let b2 = 2.0 * (sa * ct).atan2(ca);
    let u = (PI - b2) / 2.0;
    let block = Schedule::new().grover(b2, -a2);
    Ok(ClassicSchedule {
        method: Method::ConjugateRotation,
        k_opt: ko,
        k_used: k,
        params: ClassicParams::ConjugateRotation { alpha2: a2, beta2: b2, u },
        phase_sequence: Schedule::new().oracle(u).repeat(&block, k),
    })
}

/// `k = ⌊k_opt⌋` standard steps, then one tuned step whose phases solve
/// `(−cosθ + i·cot(α1/2))·cot((2k+1)θ/2) = e^{iβ1}·sinθ`.
pub fn big_small_step_params(spec: &SearchSpec) -> Result<ClassicSchedule> {
    let ko = k_opt(spec);
    // k = 0 is kept: for λ > 3/4-ish the equation has no root at k = 1.
    let k = ko.floor().max(0.0) as u32;
    let (alpha1, beta1) = solve_big_small(spec, k)?;
    Ok(ClassicSchedule {
        method: Method::BigSmallStep,
        k_opt: ko,
        k_used: k,
        params: ClassicParams::BigSmallStep { alpha1, beta1 },
        phase_sequence: Schedule::new().repeat(&Schedule::new().grover(PI, PI), k).grover(beta1, -alpha1),
    })
}

fn big_small_residual(spec: &SearchSpec, k: u32, a: f64, b: f64) -> [f64; 2] {
    let (st, ct) = spec.theta.sin_cos();
    let cot_big = 1.0 / ((2 * k + 1) as f64 * spec.theta / 2.0).tan();
    let cot_a = 1.0 / (a / 2.0).tan();
    [-ct * cot_big - st * b.cos(), cot_a * cot_big - st * b.sin()]
}

/// Damped Newton from a grid of starts; returns `α1 ∈ (0, 2π)`, `β1 ∈ (−π, π]`.
fn solve_big_small(spec: &SearchSpec, k: u32) -> Result<(f64, f64)> {
    let st = spec.theta.sin();
    let cot_big = 1.0 / ((2 * k + 1) as f64 * spec.theta / 2.0).tan();
    if cot_big.abs() < 1e-12 {
        // k plain steps already land on |T⟩; the root sits at the limit α1 → 0.
        return Ok((0.0, PI / 2.0));
    }
    let norm = |r: [f64; 2]| r[0].hypot(r[1]);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    let starts: Vec<f64> = (1..=7).map(|i| i as f64 * PI / 4.0).collect();
    for &a0 in &starts {
        for &b0 in &starts {
            let (mut a, mut b) = (a0, b0);
            let mut r = big_small_residual(spec, k, a, b);
            for _ in 0..100 {
                if norm(r) < 1e-15 {
                    break;
                }
                let sa = (a / 2.0).sin();
                // ∂/∂α of cot(α/2) = −1/(2 sin²(α/2)); row 0 does not depend on α.
                let j = [[0.0, st * b.sin()], [-cot_big / (2.0 * sa * sa), -st * b.cos()]];
                let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
                if det.abs() < 1e-14 || !det.is_finite() {
                    break;
                }
                let da = (j[1][1] * r[0] - j[0][1] * r[1]) / det;
                let db = (-j[1][0] * r[0] + j[0][0] * r[1]) / det;
                let mut t = 1.0;
                let mut improved = false;
                while t > 1e-6 {
                    let (na, nb) = (a - t * da, b - t * db);
                    let nr = big_small_residual(spec, k, na, nb);
                    if norm(nr) < norm(r) {
                        (a, b, r) = (na, nb, nr);
                        improved = true;
                        break;
                    }
                    t *= 0.5;
                }
                if !improved {
                    break;
                }
            }
            let rn = norm(r);
            if rn < best.0 {
                best = (rn, a, b);
            }
        }
    }
    if best.0.is_nan() || best.0 >= 1e-10 {
        return Err(FxrError::SolverFailure(format!(
            "big-small-step Newton did not converge from 49 starts (best residual {:.3e}, k = {k})",
            best.0
        )));
    }
    let a = best.1.rem_euclid(2.0 * PI);
    Ok((a, crate::rotation::wrap_pi(best.2)))
}
