//! The imaginary-part constraint as a continuous curve `y = f(x)`.
//!
//! With the fixed angle held constant, the constraint is linear in
//! `u = (cos(x/2), sin(x/2))`: `(cos(y/2), sin(y/2)) ∝ N·u` for a 2×2 matrix `N`.
//! So `y = 2·arg(N·u)` up to 2π, and `arg(N·u)` turns monotonically with the
//! sign of `det N`, at rate `det N / |N·u|²`. Tracing accumulates those exact
//! angle increments instead of guessing where the arctangent jumped.
//!
//! Driver/dependent roles: in α-fixed mode `x = β1`, `y = β2`; in β-fixed mode
//! `x = α2`, `y = α1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{FxrError, Result};
use crate::phase_ops::{fxr_alpha_rotation, fxr_beta_rotation, SearchSpec};
use crate::rotation::{wrap_pi, Rotation};

pub const DEFAULT_POINTS: usize = 4096;
const REFINE: usize = 16;
const DEGENERATE_DET: f64 = 1e-9;
const IDENTITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// α given, solve for (β1, β2).
    Alpha,
    /// β given, solve for (α1, α2).
    Beta,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Alpha => "alpha",
            Mode::Beta => "beta",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constraint {
    pub mode: Mode,
    pub fixed: f64,
    pub spec: SearchSpec,
    n: [[f64; 2]; 2],
    det: f64,
    /// `y` of the horizontal line when degenerate.
    level: f64,
}

impl Constraint {
    pub fn new(mode: Mode, fixed: f64, spec: SearchSpec) -> Self {
        let l = spec.lambda;
        let q = 1.0 - 2.0 * l;
        let (s, c) = fixed.sin_cos();
        let n = match mode {
            Mode::Alpha => [[-c, s * q], [s, q * c + 2.0 * l]],
            Mode::Beta => [[c, -q * s], [-s, -(2.0 * l + q * c)]],
        };
        let det = n[0][0] * n[1][1] - n[0][1] * n[1][0];
        // Rank one: N·u always points along the column space, except near the
        // kernel where its direction is rounding noise. Read the level off the
        // dominant column instead.
        let col =
            if n[0][0].hypot(n[1][0]) >= n[0][1].hypot(n[1][1]) { [n[0][0], n[1][0]] } else { [n[0][1], n[1][1]] };
        let level = wrap_pi(2.0 * col[1].atan2(col[0]));
        Constraint { mode, fixed, spec, n, det, level }
    }

    /// `det N = −(1 − 4λ·sin²(fixed/2))`.
    pub fn det(&self) -> f64 {
        self.det
    }

    /// At `det N = 0` the solution set is a horizontal line plus the vertical
    /// line `x = −fixed`.
    pub fn is_degenerate(&self) -> bool {
        self.det.abs() < DEGENERATE_DET
    }

    pub fn image(&self, x: f64) -> [f64; 2] {
        let (s, c) = (x / 2.0).sin_cos();
        [self.n[0][0] * c + self.n[0][1] * s, self.n[1][0] * c + self.n[1][1] * s]
    }

    /// The dependent angle reduced into (−π, π].
    pub fn raw(&self, x: f64) -> f64 {
        let w = self.image(x);
        wrap_pi(2.0 * w[1].atan2(w[0]))
    }

    pub fn slope(&self, x: f64) -> f64 {
        let w = self.image(x);
        self.det / (w[0] * w[0] + w[1] * w[1])
    }

    /// Continue the branch through `(x0, y0)` to `x1`.
    pub fn continue_to(&self, x0: f64, y0: f64, x1: f64) -> f64 {
        if self.is_degenerate() {
            return nearest_lift(self.level, y0);
        }
        let (a, b) = (self.image(x0), self.image(x1));
        let sg = self.det.signum();
        let turn = (sg * (a[0] * b[1] - a[1] * b[0])).atan2(a[0] * b[0] + a[1] * b[1]);
        y0 + 2.0 * sg * turn
    }

    /// Closed-form rotation of the four-operator block at driver `x`, dependent `y`.
    pub fn rotation(&self, x: f64, y: f64) -> Rotation {
        match self.mode {
            Mode::Alpha => fxr_alpha_rotation(self.fixed, x, y, &self.spec),
            Mode::Beta => fxr_beta_rotation(y, x, self.fixed, &self.spec),
        }
    }

    /// `(β1, β2)` or `(α1, α2)` in that order.
    pub fn free_pair(&self, x: f64, y: f64) -> (f64, f64) {
        match self.mode {
            Mode::Alpha => (x, y),
            Mode::Beta => (y, x),
        }
    }

    /// Exact upper bound on |dy/dx| over `[x0, x1]`.
    pub fn slope_bound(&self, x0: f64, x1: f64) -> f64 {
        // |N u(x)|² = a0 + amp·cos(x − psi)
        let m = |i: usize, j: usize| self.n[0][i] * self.n[0][j] + self.n[1][i] * self.n[1][j];
        let (p, q, r) = (m(0, 0), m(1, 1), m(0, 1));
        let a0 = (p + q) / 2.0;
        let amp = ((p - q) / 2.0).hypot(r);
        let psi = r.atan2((p - q) / 2.0);
        let at = |x: f64| a0 + amp * (x - psi).cos();
        let mut lo = at(x0).min(at(x1));
        let first = psi + PI + 2.0 * PI * ((x0 - psi - PI) / (2.0 * PI)).ceil();
        if first <= x1 {
            lo = lo.min(a0 - amp);
        }
        self.det.abs() / lo
    }
}

/// The repaired curve `f̂` on [−π, π].
#[derive(Debug, Clone)]
pub struct CurveF {
    pub constraint: Constraint,
    /// `(x, y)` samples on one continuous branch, sorted by `x`.
    pub samples: Vec<(f64, f64)>,
    /// Multiple of 2π added to `y` so the branch passes through `+I`.
    pub branch_offset: i32,
    /// Driver value where the rotation is the identity.
    pub identity_point: f64,
}

impl CurveF {
    pub fn mode(&self) -> Mode {
        self.constraint.mode
    }

    pub fn fixed_angle(&self) -> f64 {
        self.constraint.fixed
    }

    pub fn spec(&self) -> &SearchSpec {
        &self.constraint.spec
    }

    /// Unwrapped `y` at `x`, without the branch offset.
    pub fn eval(&self, x: f64) -> f64 {
        let i = self.samples.partition_point(|s| s.0 <= x).clamp(1, self.samples.len()) - 1;
        let (x0, y0) = self.samples[i];
        self.constraint.continue_to(x0, y0, x)
    }

    pub fn offset(&self) -> f64 {
        2.0 * PI * self.branch_offset as f64
    }

    /// `y` on the anchored branch.
    pub fn anchored(&self, x: f64) -> f64 {
        self.eval(x) + self.offset()
    }

    pub fn rotation_at(&self, x: f64) -> Rotation {
        self.constraint.rotation(x, self.anchored(x))
    }

    /// `g(x) = φ/2` on the anchored branch.
    pub fn g(&self, x: f64) -> f64 {
        self.rotation_at(x).half_angle()
    }

    /// Largest `|Δy| / (Δx · slope bound)` over adjacent samples.
    pub fn worst_jump_ratio(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| {
                let dy = (w[1].1 - w[0].1).abs();
                let bound = (w[1].0 - w[0].0) * self.constraint.slope_bound(w[0].0, w[1].0);
                if dy == 0.0 {
                    0.0
                } else {
                    dy / bound
                }
            })
            .fold(0.0, f64::max)
    }
}

pub fn nearest_lift(raw: f64, reference: f64) -> f64 {
    raw + 2.0 * PI * ((reference - raw) / (2.0 * PI)).round()
}

/// Sample the constraint curve on `points` grid points over [−π, π] and anchor
/// it at the identity rotation.
pub fn trace_curve(mode: Mode, fixed: f64, spec: &SearchSpec, points: usize) -> Result<CurveF> {
    if points < 16 {
        return Err(FxrError::InvalidArgument(format!("need at least 16 curve points, got {points}")));
    }
    let con = Constraint::new(mode, fixed, *spec);
    let h = 2.0 * PI / (points - 1) as f64;
    let grid = |i: usize| if i == points - 1 { PI } else { -PI + i as f64 * h };

    let mut samples = Vec::with_capacity(points + 4 * REFINE);
    let y_start = if con.is_degenerate() { con.level } else { con.raw(grid(0)) };
    let (mut x, mut y) = (grid(0), y_start);
    let mut raw_prev = y;
    samples.push((x, y));
    for i in 1..points {
        let xn = grid(i);
        let raw = con.raw(xn);
        // Where the reduced arctangent jumps, the branch is steep: sample it finer.
        if (raw - raw_prev).abs() > PI && !con.is_degenerate() {
            for j in 1..REFINE {
                let xm = x + (xn - x) * j as f64 / REFINE as f64;
                samples.push((xm, con.continue_to(x, y, xm)));
            }
        }
        y = con.continue_to(x, y, xn);
        x = xn;
        raw_prev = raw;
        samples.push((x, y));
    }

    let mut curve = CurveF { constraint: con, samples, branch_offset: 0, identity_point: f64::NAN };
    let (xi, vi) = find_identity(&curve);
    if vi.is_nan() || vi >= IDENTITY_TOL {
        return Err(FxrError::SolverFailure(format!(
            "no identity rotation on the constraint curve (min |v| = {vi:.3e})"
        )));
    }
    curve.identity_point = xi;
    if curve.rotation_at(xi).c < 0.0 {
        // Passing through −I: shifting y by 2π flips the rotation's sign.
        curve.branch_offset = 1;
    }
    Ok(curve)
}

fn find_identity(curve: &CurveF) -> (f64, f64) {
    let s = &curve.samples;
    let vn: Vec<f64> = s.iter().map(|&(x, y)| curve.constraint.rotation(x, y).sin_half()).collect();
    let mut minima: Vec<usize> =
        (0..s.len()).filter(|&i| (i == 0 || vn[i] <= vn[i - 1]) && (i + 1 == s.len() || vn[i] <= vn[i + 1])).collect();
    minima.sort_by(|&a, &b| vn[a].total_cmp(&vn[b]));
    minima.truncate(6);

    let v_at = |x: f64| curve.constraint.rotation(x, curve.eval(x)).sin_half();
    minima
        .into_iter()
        .map(|i| {
            let lo = s[i.saturating_sub(1)].0;
            let hi = s[(i + 1).min(s.len() - 1)].0;
            let x = golden_min(v_at, lo, hi);
            let (xb, vb) = if v_at(x) <= vn[i] { (x, v_at(x)) } else { (s[i].0, vn[i]) };
            (xb, vb)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((f64::NAN, f64::INFINITY))
}

pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut m1 = hi - r * (hi - lo);
    let mut m2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(m1), f(m2));
    for _ in 0..200 {
        if hi - lo < 1e-15 {
            break;
        }
        if f1 < f2 {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - r * (hi - lo);
            f1 = f(m1);
        } else {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + r * (hi - lo);
            f2 = f(m2);
        }
    }
    (lo + hi) / 2.0
}
