//! The search operators in the two-dimensional `{|R⟩, |T⟩}` subspace.
//!
//! `|R⟩` is the normalized sum of unmarked states (Bloch north pole) and `|T⟩`
//! the normalized sum of marked states (south pole). Every operator exists as a
//! matrix and as a [`Rotation`]; the matrices are the reference, the closed-form
//! rotations are what the solver evaluates in its inner loops.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FxrError, Result};
use crate::rotation::{Rotation, Unitary2};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub lambda: f64,
    pub theta: f64,
}

impl SearchSpec {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(FxrError::InvalidArgument(format!("lambda must lie in (0, 1), got {lambda}")));
        }
        Ok(SearchSpec { lambda, theta: 2.0 * lambda.sqrt().asin() })
    }

    /// `marked` of `total` elements.
    pub fn from_counts(marked: usize, total: usize) -> Result<Self> {
        if marked == 0 || marked >= total {
            return Err(FxrError::InvalidArgument(format!("need 0 < marked < total, got {marked}/{total}")));
        }
        Self::new(marked as f64 / total as f64)
    }

    pub fn sqrt_lambda(&self) -> f64 {
        self.lambda.sqrt()
    }

    pub fn sqrt_unmarked(&self) -> f64 {
        (1.0 - self.lambda).sqrt()
    }

    /// `|ψ₀⟩ = √(1−λ)|R⟩ + √λ|T⟩`.
    pub fn initial_state(&self) -> [Complex64; 2] {
        [Complex64::new(self.sqrt_unmarked(), 0.0), Complex64::new(self.sqrt_lambda(), 0.0)]
    }

    pub fn initial_bloch(&self) -> [f64; 3] {
        [self.theta.sin(), 0.0, self.theta.cos()]
    }

    // cosθ and sinθ straight from λ, which is more accurate than going through θ.
    fn cos_theta(&self) -> f64 {
        1.0 - 2.0 * self.lambda
    }

    fn sin_theta(&self) -> f64 {
        2.0 * (self.lambda * (1.0 - self.lambda)).sqrt()
    }
}

/// `S_o(α) = diag(1, e^{iα})`.
pub fn oracle_matrix(alpha: f64) -> Unitary2 {
    let z = Complex64::new(0.0, 0.0);
    Unitary2::new([[Complex64::new(1.0, 0.0), z], [z, Complex64::from_polar(1.0, alpha)]])
}

/// `S_r(β) = I − (1 − e^{−iβ})|ψ₀⟩⟨ψ₀|`.
pub fn diffusion_matrix(beta: f64, spec: &SearchSpec) -> Unitary2 {
    let f = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -beta);
    let psi = [spec.sqrt_unmarked(), spec.sqrt_lambda()];
    let mut m = Unitary2::identity().m;
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x -= f * psi[i] * psi[j];
        }
    }
    Unitary2::new(m)
}

/// `G(α, β) = S_r(β)·S_o(α)`.
pub fn g_matrix(alpha: f64, beta: f64, spec: &SearchSpec) -> Unitary2 {
    diffusion_matrix(beta, spec) * oracle_matrix(alpha)
}

/// `S_o(α) = e^{iα/2}·R_z(α)`, returned as `(global phase, rotation)`.
pub fn oracle_rotation(alpha: f64) -> (f64, Rotation) {
    (alpha / 2.0, Rotation::rz(alpha))
}

/// `S_r(β) = e^{−iβ/2}·R_{ψ₀}(β)`, a rotation about the initial-state axis.
pub fn diffusion_rotation(beta: f64, spec: &SearchSpec) -> (f64, Rotation) {
    let (s, c) = (beta / 2.0).sin_cos();
    let n = [spec.sin_theta(), 0.0, spec.cos_theta()];
    (-beta / 2.0, Rotation { c, v: n.map(|x| s * x) })
}

/// Rotation part of `G(α, β)`, i.e. `R_{ψ₀}(β)·R_z(α)`.
pub fn g_rotation(alpha: f64, beta: f64, spec: &SearchSpec) -> Rotation {
    let (sa, ca) = (alpha / 2.0).sin_cos();
    let (sb, cb) = (beta / 2.0).sin_cos();
    let (ct, st) = (spec.cos_theta(), spec.sin_theta());
    Rotation { c: cb * ca - sb * sa * ct, v: [sb * ca * st, -sb * sa * st, cb * sa + sb * ca * ct] }
}

/// Closed-form rotation of `G(α, β2)·G(α, β1)` (β1 applied first).
pub fn fxr_alpha_rotation(alpha: f64, beta1: f64, beta2: f64, spec: &SearchSpec) -> Rotation {
    let lam = spec.lambda;
    let q = 1.0 - 2.0 * lam;
    let kk = spec.sin_theta();
    let (sa, ca) = alpha.sin_cos();
    let sa2 = (alpha / 2.0).sin();
    let (s1, c1) = (beta1 / 2.0).sin_cos();
    let (s2, c2) = (beta2 / 2.0).sin_cos();
    let sum = (beta1 + beta2) / 2.0;
    let ss = s1 * s2;

    let c =
        (alpha + sum).cos() + 2.0 * lam * (sa * sum.sin() - 4.0 * sa2 * sa2 * ss) + 8.0 * lam * lam * sa2 * sa2 * ss;
    let vx = kk * (s1 * c2 + ca * c1 * s2 - q * sa * ss);
    let vy = kk * (-sa * c1 * s2 + 2.0 * q * sa2 * sa2 * ss);
    let vz = sa * c1 * c2 + q * ca * sum.sin() - q * q * sa * ss;
    Rotation::new(c, [vx, vy, vz])
}

/// Closed-form rotation of `G(α2, β)·G(α1, β)` (α1 applied first).
pub fn fxr_beta_rotation(alpha1: f64, alpha2: f64, beta: f64, spec: &SearchSpec) -> Rotation {
    let lam = spec.lambda;
    let q = 1.0 - 2.0 * lam;
    let kk = spec.sin_theta();
    let (sb, cb) = beta.sin_cos();
    let sb2 = (beta / 2.0).sin();
    let (s1, c1) = (alpha1 / 2.0).sin_cos();
    let (s2, c2) = (alpha2 / 2.0).sin_cos();
    let sum = (alpha1 + alpha2) / 2.0;

    let c = (sum + beta).cos()
        + 2.0 * lam * (sum.sin() * sb - 4.0 * s1 * s2 * sb2 * sb2)
        + 8.0 * lam * lam * s1 * s2 * sb2 * sb2;
    let vx = kk * (c1 * c2 * sb - 2.0 * q * c1 * s2 * sb2 * sb2);
    let vy = kk * (-s1 * c2 * sb + 2.0 * q * s1 * s2 * sb2 * sb2);
    let vz = s1 * c2 * cb + c1 * s2 + q * sum.cos() * sb - 2.0 * q * q * c1 * s2 * sb2 * sb2;
    Rotation::new(c, [vx, vy, vz])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::{compose, decompose_unitary};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn spec(l: f64) -> SearchSpec {
        SearchSpec::new(l).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_lambda_outside_unit_interval() {
        for l in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(SearchSpec::new(l).is_err());
        }
        assert!(SearchSpec::from_counts(0, 4).is_err());
        assert!(SearchSpec::from_counts(4, 4).is_err());
    }

    #[test]
    fn quarter_lambda_is_sixty_degrees() {
        assert!((spec(0.25).theta - PI / 3.0).abs() < 1e-15);
        let b = spec(0.25).initial_bloch();
        assert!((b[0] - (PI / 3.0).sin()).abs() < 1e-15 && (b[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn oracle_matrix_examples() {
        let z = c(0.0, 0.0);
        assert!(oracle_matrix(PI).max_diff(&Unitary2::new([[c(1.0, 0.0), z], [z, c(-1.0, 0.0)]])) < 1e-15);
        assert!(oracle_matrix(0.0).max_diff(&Unitary2::identity()) < 1e-15);
        assert!(oracle_matrix(PI / 2.0).max_diff(&Unitary2::new([[c(1.0, 0.0), z], [z, c(0.0, 1.0)]])) < 1e-15);
    }

    #[test]
    fn diffusion_pi_is_reflection() {
        let s = spec(0.5);
        let p = s.initial_state();
        let mut m = Unitary2::identity().m;
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] -= 2.0 * p[i] * p[j].conj();
            }
        }
        assert!(diffusion_matrix(PI, &s).max_diff(&Unitary2::new(m)) < 1e-15);
        assert!(diffusion_matrix(0.0, &s).max_diff(&Unitary2::identity()) < 1e-15);
    }

    #[test]
    fn oracle_rotation_examples() {
        let (ph, r) = oracle_rotation(PI);
        assert!((ph - PI / 2.0).abs() < 1e-15 && r.c.abs() < 1e-15 && (r.v[2] - 1.0).abs() < 1e-15);
        let (ph, r) = oracle_rotation(2.0 * PI);
        assert!((ph - PI).abs() < 1e-15 && (r.c + 1.0).abs() < 1e-15 && r.sin_half() < 1e-15);
        assert_eq!(oracle_rotation(0.0), (0.0, Rotation::IDENTITY));
    }

    #[test]
    fn diffusion_axis_is_initial_state() {
        let s = spec(0.37);
        for beta in [0.3, 1.0, 2.5, -1.2] {
            let n = diffusion_rotation(beta, &s).1.axis().unwrap();
            let b = s.initial_bloch();
            let d = if beta > 0.0 { 1.0 } else { -1.0 };
            for i in 0..3 {
                assert!((n[i] - d * b[i]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn diffusion_rotation_matches_decomposition() {
        let s = spec(0.2);
        let (ph, r) = diffusion_rotation(PI, &s);
        let (dph, dr) = decompose_unitary(&diffusion_matrix(PI, &s)).unwrap();
        assert!(r.distance_projective(&dr) < 1e-14);
        let back = r.to_unitary().scaled(Complex64::from_polar(1.0, ph));
        assert!(back.max_diff(&dr.to_unitary().scaled(Complex64::from_polar(1.0, dph))) < 1e-14);
    }

    #[test]
    fn g_rotation_standard_grover_at_quarter() {
        let s = spec(0.25);
        let g = g_rotation(PI, PI, &s);
        assert!((g.c + 0.5).abs() < 1e-15);
        let built = compose(&diffusion_rotation(PI, &s).1, &oracle_rotation(PI).1);
        assert!(g.distance(&built) < 1e-15);
        assert!(g_rotation(0.9, 0.0, &s).distance(&oracle_rotation(0.9).1) < 1e-15);
        assert!(g_rotation(0.0, 0.9, &s).distance(&diffusion_rotation(0.9, &s).1) < 1e-15);
    }

    #[test]
    fn fxr_alpha_degenerate_cases() {
        let s = spec(0.3);
        assert!(fxr_alpha_rotation(0.8, 0.0, 0.0, &s).distance(&Rotation::rz(1.6)) < 1e-15);
        let q = spec(0.25);
        let r = fxr_alpha_rotation(PI, PI, PI, &q);
        assert!((r.c - (2.0 * q.theta).cos()).abs() < 1e-15);
    }

    #[test]
    fn fxr_beta_degenerate_cases() {
        let s = spec(0.3);
        let r = fxr_beta_rotation(0.0, 0.0, 0.7, &s);
        assert!(r.distance(&diffusion_rotation(1.4, &s).1) < 1e-15);
        assert!(fxr_beta_rotation(0.4, 0.9, 0.0, &s).distance(&Rotation::rz(1.3)) < 1e-15);
    }

    fn angle() -> impl Strategy<Value = f64> {
        -7.0f64..7.0
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn fxr_alpha_closed_form_matches_compose(a in angle(), b1 in angle(), b2 in angle(), l in 0.001f64..0.999) {
            let s = spec(l);
            let built = compose(&g_rotation(a, b2, &s), &g_rotation(a, b1, &s));
            prop_assert!(built.distance(&fxr_alpha_rotation(a, b1, b2, &s)) < 1e-11);
        }

        #[test]
        fn fxr_beta_closed_form_matches_compose(a1 in angle(), a2 in angle(), b in angle(), l in 0.001f64..0.999) {
            let s = spec(l);
            let built = compose(&g_rotation(a2, b, &s), &g_rotation(a1, b, &s));
            prop_assert!(built.distance(&fxr_beta_rotation(a1, a2, b, &s)) < 1e-11);
        }

        #[test]
        fn g_rotation_matches_matrix(a in angle(), b in angle(), l in 0.001f64..0.999) {
            let s = spec(l);
            let m = g_matrix(a, b, &s);
            let r = g_rotation(a, b, &s).to_unitary().scaled(Complex64::from_polar(1.0, (a - b) / 2.0));
            prop_assert!(m.max_diff(&r) < 1e-13);
        }

        #[test]
        fn global_phase_bookkeeping(a in angle(), b1 in angle(), b2 in angle(), l in 0.001f64..0.999) {
            let s = spec(l);
            let m = g_matrix(a, b2, &s) * g_matrix(a, b1, &s);
            let phase = a - (b1 + b2) / 2.0;
            let r = fxr_alpha_rotation(a, b1, b2, &s).to_unitary().scaled(Complex64::from_polar(1.0, phase));
            prop_assert!(m.max_diff(&r) < 1e-12);
        }

        #[test]
        fn imaginary_constraint_alpha(a in angle(), b1 in angle(), b2 in angle(), l in 0.001f64..0.999) {
            let s = spec(l);
            let r = fxr_alpha_rotation(a, b1, b2, &s);
            let lhs = s.sqrt_unmarked() * r.v[2] + s.sqrt_lambda() * r.v[0];
            let (s1, c1) = (b1 / 2.0).sin_cos();
            let (s2, c2) = (b2 / 2.0).sin_cos();
            let q = 1.0 - 2.0 * l;
            let rhs = -s1 * s2 * a.sin() * q + s1 * c2 * (q * a.cos() + 2.0 * l) + c1 * s2 * a.cos() + c1 * c2 * a.sin();
            prop_assert!((lhs - s.sqrt_unmarked() * rhs).abs() < 1e-11);
        }

        #[test]
        fn imaginary_constraint_beta(a1 in angle(), a2 in angle(), b in angle(), l in 0.001f64..0.999) {
            let s = spec(l);
            let r = fxr_beta_rotation(a1, a2, b, &s);
            let lhs = s.sqrt_unmarked() * r.v[2] + s.sqrt_lambda() * r.v[0];
            let (s1, c1) = (a1 / 2.0).sin_cos();
            let (s2, c2) = (a2 / 2.0).sin_cos();
            let q = 1.0 - 2.0 * l;
            let rhs = -s1 * s2 * q * b.sin() + s1 * c2 * b.cos() + c1 * s2 * (2.0 * l + q * b.cos()) + c1 * c2 * b.sin();
            prop_assert!((lhs - s.sqrt_unmarked() * rhs).abs() < 1e-11);
        }
    }
}
