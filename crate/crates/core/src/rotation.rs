//! SU(2) rotations as unit quaternions `(c, v)` with `c = cos(φ/2)`, `v = sin(φ/2)·n`,
//! plus the explicit 2×2 complex matrices they stand for.

use std::f64::consts::PI;
use std::ops::Mul;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{FxrError, Result};

const RENORM_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rotation {
    pub c: f64,
    pub v: [f64; 3],
}

impl Rotation {
    pub const IDENTITY: Rotation = Rotation { c: 1.0, v: [0.0; 3] };

    pub fn new(c: f64, v: [f64; 3]) -> Self {
        Rotation { c, v }.renormalized()
    }

    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Result<Self> {
        let n = norm3(axis);
        if n == 0.0 || !n.is_finite() {
            return Err(FxrError::InvalidArgument("rotation axis must be a nonzero finite vector".into()));
        }
        let (s, c) = (angle / 2.0).sin_cos();
        Ok(Rotation { c, v: axis.map(|a| s * a / n) })
    }

    pub fn rx(angle: f64) -> Self {
        let (s, c) = (angle / 2.0).sin_cos();
        Rotation { c, v: [s, 0.0, 0.0] }
    }

    pub fn ry(angle: f64) -> Self {
        let (s, c) = (angle / 2.0).sin_cos();
        Rotation { c, v: [0.0, s, 0.0] }
    }

    pub fn rz(angle: f64) -> Self {
        let (s, c) = (angle / 2.0).sin_cos();
        Rotation { c, v: [0.0, 0.0, s] }
    }

    /// Rotation angle φ ∈ [0, 2π].
    pub fn angle(&self) -> f64 {
        2.0 * self.half_angle()
    }

    /// φ/2 ∈ [0, π].
    pub fn half_angle(&self) -> f64 {
        self.c.clamp(-1.0, 1.0).acos()
    }

    pub fn sin_half(&self) -> f64 {
        norm3(self.v)
    }

    /// Unit axis, or `None` for ±I.
    pub fn axis(&self) -> Option<[f64; 3]> {
        let s = norm3(self.v);
        (s > 0.0).then(|| self.v.map(|x| x / s))
    }

    pub fn norm_sq(&self) -> f64 {
        self.c * self.c + dot3(self.v, self.v)
    }

    pub fn neg(&self) -> Self {
        Rotation { c: -self.c, v: self.v.map(|x| -x) }
    }

    pub fn inverse(&self) -> Self {
        Rotation { c: self.c, v: self.v.map(|x| -x) }
    }

    /// `r^k`; for ±I this is (±1)^k.
    pub fn power(&self, k: u32) -> Self {
        match self.axis() {
            None => {
                let c = if self.c < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
                Rotation { c, v: [0.0; 3] }
            }
            Some(n) => {
                let g = k as f64 * self.half_angle();
                let (s, c) = g.sin_cos();
                Rotation { c, v: n.map(|x| s * x) }
            }
        }
    }

    /// Distance that ignores the ±1 double cover.
    pub fn distance_projective(&self, other: &Rotation) -> f64 {
        let d = |a: &Rotation, b: &Rotation| {
            let dv = [a.v[0] - b.v[0], a.v[1] - b.v[1], a.v[2] - b.v[2]];
            ((a.c - b.c).powi(2) + dot3(dv, dv)).sqrt()
        };
        d(self, other).min(d(self, &other.neg()))
    }

    pub fn distance(&self, other: &Rotation) -> f64 {
        let dv = [self.v[0] - other.v[0], self.v[1] - other.v[1], self.v[2] - other.v[2]];
        ((self.c - other.c).powi(2) + dot3(dv, dv)).sqrt()
    }

    pub fn to_unitary(&self) -> Unitary2 {
        let [x, y, z] = self.v;
        let c = self.c;
        Unitary2::new([[Complex64::new(c, -z), Complex64::new(-y, -x)], [Complex64::new(y, -x), Complex64::new(c, z)]])
    }

    fn renormalized(self) -> Self {
        let n2 = self.norm_sq();
        if (n2 - 1.0).abs() > RENORM_TOL && n2 > 0.0 {
            let n = n2.sqrt();
            Rotation { c: self.c / n, v: self.v.map(|x| x / n) }
        } else {
            self
        }
    }
}

/// `second ∘ first`: the rotation that applies `first`, then `second`.
pub fn compose(second: &Rotation, first: &Rotation) -> Rotation {
    let (c1, v1) = (first.c, first.v);
    let (c2, v2) = (second.c, second.v);
    let x = cross3(v2, v1);
    Rotation {
        c: c1 * c2 - dot3(v1, v2),
        v: [c2 * v1[0] + c1 * v2[0] + x[0], c2 * v1[1] + c1 * v2[1] + x[1], c2 * v1[2] + c1 * v2[2] + x[2]],
    }
    .renormalized()
}

impl Mul for Rotation {
    type Output = Rotation;
    /// Operator order: `a * b` applies `b` first.
    fn mul(self, rhs: Rotation) -> Rotation {
        compose(&self, &rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    pub m: [[Complex64; 2]; 2],
}

impl Unitary2 {
    pub fn new(m: [[Complex64; 2]; 2]) -> Self {
        Unitary2 { m }
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Unitary2 { m: [[o, z], [z, o]] }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Unitary2 { m: self.m.map(|r| r.map(|x| x * s)) }
    }

    pub fn adjoint(&self) -> Self {
        let m = self.m;
        Unitary2 { m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]] }
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, s: [Complex64; 2]) -> [Complex64; 2] {
        [self.m[0][0] * s[0] + self.m[0][1] * s[1], self.m[1][0] * s[0] + self.m[1][1] * s[1]]
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_diff(&self, other: &Unitary2) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        d
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (*self * self.adjoint()).max_diff(&Unitary2::identity()) <= tol
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;
    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let (a, b) = (self.m, rhs.m);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Unitary2 { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }
}

/// Split `U = e^{iφ_g}·R` with `R ∈ SU(2)`.
///
/// The sign ambiguity is fixed by `c ≥ 0`; when `c = 0` the first nonzero
/// component of `v` is made positive. `φ_g` is reported in (−π, π].
pub fn decompose_unitary(u: &Unitary2) -> Result<(f64, Rotation)> {
    if !u.is_unitary(1e-10) {
        return Err(FxrError::InvalidArgument("matrix is not unitary".into()));
    }
    let mut phase = u.det().arg() / 2.0;
    let w = u.scaled(Complex64::from_polar(1.0, -phase)).m;
    let mut r = Rotation {
        c: (w[0][0] + w[1][1]).re / 2.0,
        v: [-(w[0][1] + w[1][0]).im / 2.0, (w[1][0] - w[0][1]).re / 2.0, (w[1][1] - w[0][0]).im / 2.0],
    };
    let flip =
        if r.c.abs() > 1e-15 { r.c < 0.0 } else { r.v.iter().find(|x| x.abs() > 1e-15).is_some_and(|x| *x < 0.0) };
    if flip {
        r = r.neg();
        phase += PI;
    }
    Ok((wrap_pi(phase), r.renormalized()))
}

/// Reduce into (−π, π].
pub fn wrap_pi(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}
