//! Solving for the free phase pair of a fixed-axis-rotation (FXR) block.
//!
//! For `k > k_lower` the pair exists: walk the constraint curve from the
//! identity point (half-angle `g = 0`) toward `x = −fixed` (where `g ≥ φ₀`),
//! stop at the first `g = π/k`, and bisect the real-part equation on that arc.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curve::{nearest_lift, trace_curve, CurveF, Mode, DEFAULT_POINTS};
use crate::error::{FxrError, Result};
use crate::phase_ops::SearchSpec;
use crate::simulator::{run_2d, Schedule, CERTIFY_THRESHOLD};

const PATH_SAMPLES: usize = 4097;
const ABSCISSA_TOL: f64 = 1e-13;
const MAX_BISECT: usize = 200;
const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamSolution {
    pub mode: Mode,
    pub fixed_angle: f64,
    pub lambda: f64,
    /// `(β1, β2)` in α-fixed mode, `(α1, α2)` in β-fixed mode.
    pub free_pair: (f64, f64),
    pub k: u32,
    /// Rotation angle φ of one block; `k·φ/2` lands the state on `|T⟩`.
    pub rotation_angle_phi: f64,
    pub residual_real: f64,
    pub residual_imag: f64,
    pub certified_success_prob: f64,
}

impl ParamSolution {
    /// The `4k` operator steps: each block is oracle, diffusion, oracle, diffusion.
    pub fn schedule(&self) -> Schedule {
        fxr_schedule(self.mode, self.fixed_angle, self.free_pair, self.k)
    }
}

pub fn fxr_schedule(mode: Mode, fixed: f64, pair: (f64, f64), k: u32) -> Schedule {
    let block = match mode {
        Mode::Alpha => Schedule::new().grover(fixed, pair.0).grover(fixed, pair.1),
        Mode::Beta => Schedule::new().grover(pair.0, fixed).grover(pair.1, fixed),
    };
    Schedule::new().repeat(&block, k)
}

/// `sin φ′ = √λ·sin(a/2)`.
fn phi_prime(fixed: f64, spec: &SearchSpec) -> f64 {
    (spec.sqrt_lambda() * (fixed / 2.0).sin()).asin()
}

/// Smallest half-angle guaranteed at `x = −fixed`: `φ₀ = arccos|cos 4φ′|`.
pub fn phi0(fixed: f64, spec: &SearchSpec) -> f64 {
    (4.0 * phi_prime(fixed, spec)).cos().abs().acos()
}

/// `π / |4φ′ reduced into [−π/2, π/2]|`; any integer `k` above it is solvable.
pub fn k_lower(fixed: f64, spec: &SearchSpec) -> Result<f64> {
    let x = 4.0 * phi_prime(fixed, spec);
    let r = x - PI * (x / PI).round();
    if r.abs() < 1e-14 {
        return Err(FxrError::DegenerateAngle { fixed_angle: fixed, lambda: spec.lambda });
    }
    Ok(PI / r.abs())
}

/// Smallest integer strictly above `k_lower`.
pub fn min_feasible_k(fixed: f64, spec: &SearchSpec) -> Result<u32> {
    let kl = k_lower(fixed, spec)?;
    let mut k = kl.ceil().max(1.0) as u32;
    if !is_above(k, kl) {
        k += 1;
    }
    Ok(k)
}

fn is_above(k: u32, kl: f64) -> bool {
    k as f64 > kl * (1.0 + 1e-9)
}

/// Absolute residuals of the real- and imaginary-part equations at a free pair.
///
/// The real part is written as `sin(φ/2)·cos(kφ/2) − 2λ·sin(kφ/2)·[…]`, which
/// vanishes at solutions (and, spuriously, at φ = 0).
pub fn residuals(mode: Mode, fixed: f64, pair: (f64, f64), k: u32, spec: &SearchSpec) -> (f64, f64) {
    let l = spec.lambda;
    let q = 1.0 - 2.0 * l;
    let (s1, c1) = (pair.0 / 2.0).sin_cos();
    let (s2, c2) = (pair.1 / 2.0).sin_cos();
    let (sf, cf) = fixed.sin_cos();
    let r = match mode {
        Mode::Alpha => crate::phase_ops::fxr_alpha_rotation(fixed, pair.0, pair.1, spec),
        Mode::Beta => crate::phase_ops::fxr_beta_rotation(pair.0, pair.1, fixed, spec),
    };
    let g = r.half_angle();
    let kg = k as f64 * g;
    let (bracket, imag) = match mode {
        Mode::Alpha => (
            -sf * c1 * s2 + q * (1.0 - cf) * s1 * s2,
            -s1 * s2 * sf * q + s1 * c2 * (q * cf + 2.0 * l) + c1 * s2 * cf + c1 * c2 * sf,
        ),
        Mode::Beta => (
            -s1 * c2 * sf + q * s1 * s2 * (1.0 - cf),
            -s1 * s2 * q * sf + s1 * c2 * cf + c1 * s2 * (2.0 * l + q * cf) + c1 * c2 * sf,
        ),
    };
    let real = r.sin_half() * kg.cos() - 2.0 * l * kg.sin() * bracket;
    (real.abs(), imag.abs())
}

/// Where along the curve we are: `s ∈ [0, 1]` maps to a point `(x, y)`.
enum Path<'a> {
    Curve {
        curve: &'a CurveF,
        x0: f64,
        x1: f64,
    },
    /// Degenerate constraint: along the horizontal line, then up the vertical one.
    Corner {
        x0: f64,
        xd: f64,
        yh: f64,
        y1: f64,
    },
}

impl Path<'_> {
    fn at(&self, s: f64) -> (f64, f64) {
        match *self {
            Path::Curve { curve, x0, x1 } => {
                let x = x0 + s * (x1 - x0);
                (x, curve.anchored(x))
            }
            Path::Corner { x0, xd, yh, y1 } => {
                let (a, b) = ((xd - x0).abs(), (y1 - yh).abs());
                let t = s * (a + b);
                if t <= a && a > 0.0 {
                    (x0 + (xd - x0) * t / a, yh)
                } else {
                    (xd, yh + (y1 - yh) * ((t - a) / b.max(f64::MIN_POSITIVE)).min(1.0))
                }
            }
        }
    }

    fn length(&self) -> f64 {
        match *self {
            Path::Curve { x0, x1, .. } => (x1 - x0).abs(),
            Path::Corner { x0, xd, yh, y1 } => (xd - x0).abs() + (y1 - yh).abs(),
        }
    }
}

fn bisect(f: impl Fn(f64) -> bool, mut lo: f64, mut hi: f64, scale: f64) -> f64 {
    // invariant: f(lo) false, f(hi) true
    for _ in 0..MAX_BISECT {
        if (hi - lo) * scale < ABSCISSA_TOL {
            break;
        }
        let m = 0.5 * (lo + hi);
        if f(m) {
            hi = m;
        } else {
            lo = m;
        }
    }
    0.5 * (lo + hi)
}

/// Reduce into (−2π, 2π]; a shift by 2π flips the rotation sign, so only 4π is free.
pub fn reduce_4pi(y: f64) -> f64 {
    let r = y.rem_euclid(4.0 * PI);
    if r > 2.0 * PI {
        r - 4.0 * PI
    } else {
        r
    }
}

/// Find the free pair for `k` iterations of the FXR block.
pub fn solve_free_pair(mode: Mode, fixed: f64, spec: &SearchSpec, k: u32) -> Result<ParamSolution> {
    if !fixed.is_finite() {
        return Err(FxrError::InvalidArgument("fixed angle must be finite".into()));
    }
    let kl = k_lower(fixed, spec)?;
    if !is_above(k, kl) {
        return Err(FxrError::IterationCountTooSmall { k, k_lower: kl });
    }
    let curve = trace_curve(mode, fixed, spec, DEFAULT_POINTS)?;
    let con = &curve.constraint;

    let x0 = curve.identity_point;
    let mut xd = -fixed.rem_euclid(2.0 * PI);
    if xd < -PI {
        xd += 2.0 * PI;
    }
    let path = if con.is_degenerate() {
        let yh = curve.anchored(xd);
        Path::Corner { x0, xd, yh, y1: nearest_lift(-fixed, yh) }
    } else {
        Path::Curve { curve: &curve, x0, x1: xd }
    };

    let g_at = |s: f64| {
        let (x, y) = path.at(s);
        con.rotation(x, y).half_angle()
    };
    let target = PI / k as f64;
    let hit = (1..PATH_SAMPLES).map(|j| j as f64 / (PATH_SAMPLES - 1) as f64).find(|&s| g_at(s) >= target).ok_or_else(
        || {
            let gmax = (0..PATH_SAMPLES).map(|j| g_at(j as f64 / (PATH_SAMPLES - 1) as f64)).fold(0.0, f64::max);
            FxrError::SolverFailure(format!(
                "half-angle never reaches pi/k = {target:.6} along the curve (max g = {gmax:.6}, phi0 = {:.6})",
                phi0(fixed, spec)
            ))
        },
    )?;
    let step = 1.0 / (PATH_SAMPLES - 1) as f64;
    let len = path.length();
    let s3 = bisect(|s| g_at(s) >= target, hit - step, hit, len);

    let kf = k as f64;
    let (sl, sr) = (spec.sqrt_lambda(), spec.sqrt_unmarked());
    let real_part = |s: f64| {
        let (x, y) = path.at(s);
        let r = con.rotation(x, y);
        let g = r.half_angle();
        let sv = r.sin_half();
        let ny = if sv > 0.0 { r.v[1] / sv } else { 0.0 };
        sr * (kf * g).cos() - sl * (kf * g).sin() * ny
    };
    if !(real_part(0.0) > 0.0 && real_part(s3) < 0.0) {
        return Err(FxrError::SolverFailure(format!(
            "real part not bracketed: F(start) = {:.3e}, F(end) = {:.3e}",
            real_part(0.0),
            real_part(s3)
        )));
    }
    let s_hat = bisect(|s| real_part(s) < 0.0, 0.0, s3, len);
    let (x, y) = path.at(s_hat);
    let (a, b) = con.free_pair(x, reduce_4pi(y));
    let free_pair = (a, b);

    let (residual_real, residual_imag) = residuals(mode, fixed, free_pair, k, spec);
    let rot = con.rotation(x, y);
    let mut sol = ParamSolution {
        mode,
        fixed_angle: fixed,
        lambda: spec.lambda,
        free_pair,
        k,
        rotation_angle_phi: rot.angle(),
        residual_real,
        residual_imag,
        certified_success_prob: 0.0,
    };
    sol.certified_success_prob = run_2d(&sol.schedule(), spec).success();
    if residual_real >= RESIDUAL_TOL || residual_imag >= RESIDUAL_TOL || sol.certified_success_prob <= CERTIFY_THRESHOLD
    {
        return Err(FxrError::SolverFailure(format!(
            "solution failed certification: residuals ({residual_real:.3e}, {residual_imag:.3e}), success {:.15}",
            sol.certified_success_prob
        )));
    }
    Ok(sol)
}
