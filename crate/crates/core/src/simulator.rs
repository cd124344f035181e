//! Exact simulation of phase-oracle / diffusion schedules, either in the
//! two-dimensional `{|R⟩, |T⟩}` model or on a full N-element state vector.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FxrError, Result};
use crate::phase_ops::{diffusion_matrix, oracle_matrix, SearchSpec};
use crate::solver::ParamSolution;

/// Success threshold used to call a schedule exact.
pub const CERTIFY_THRESHOLD: f64 = 1.0 - 1e-8;

pub const MAX_FULL_DIM: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", content = "angle", rename_all = "lowercase")]
pub enum Step {
    Oracle(f64),
    Diffusion(f64),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Schedule {
    pub steps: Vec<Step>,
}

impl Schedule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn oracle(mut self, alpha: f64) -> Self {
        self.steps.push(Step::Oracle(alpha));
        self
    }

    pub fn diffusion(mut self, beta: f64) -> Self {
        self.steps.push(Step::Diffusion(beta));
        self
    }

    /// One `G(α, β)`: oracle, then diffusion.
    pub fn grover(self, alpha: f64, beta: f64) -> Self {
        self.oracle(alpha).diffusion(beta)
    }

    pub fn repeat(mut self, block: &Schedule, times: u32) -> Self {
        for _ in 0..times {
            self.steps.extend_from_slice(&block.steps);
        }
        self
    }

    pub fn oracle_calls(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Oracle(_))).count()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State2 {
    pub amp_r: Complex64,
    pub amp_t: Complex64,
}

impl State2 {
    pub fn success(&self) -> f64 {
        self.amp_t.norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp_r.norm_sqr() + self.amp_t.norm_sqr()
    }
}

pub fn run_2d(schedule: &Schedule, spec: &SearchSpec) -> State2 {
    let mut s = spec.initial_state();
    for step in &schedule.steps {
        let m = match *step {
            Step::Oracle(a) => oracle_matrix(a),
            Step::Diffusion(b) => diffusion_matrix(b, spec),
        };
        s = m.apply(s);
    }
    State2 { amp_r: s[0], amp_t: s[1] }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub amplitudes: Vec<Complex64>,
    pub marked: Vec<usize>,
}

impl StateVector {
    pub fn marked_mass(&self) -> f64 {
        self.marked.iter().map(|&i| self.amplitudes[i].norm_sqr()).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Full-vector simulation starting from the uniform superposition.
pub fn run_full(n: usize, marked: &[usize], schedule: &Schedule) -> Result<StateVector> {
    if n > MAX_FULL_DIM {
        return Err(FxrError::ResourceLimit { requested: n as u64, cap: MAX_FULL_DIM as u64 });
    }
    let mut marked = marked.to_vec();
    marked.sort_unstable();
    marked.dedup();
    if n < 2 || marked.is_empty() || marked.len() >= n || marked.last().is_some_and(|&m| m >= n) {
        return Err(FxrError::InvalidArgument(format!(
            "need 2 <= N and a marked set that is a nonempty proper subset of 0..{n}"
        )));
    }
    let amp0 = 1.0 / (n as f64).sqrt();
    let mut psi = vec![Complex64::new(amp0, 0.0); n];
    for step in &schedule.steps {
        match *step {
            Step::Oracle(a) => {
                let ph = Complex64::from_polar(1.0, a);
                for &i in &marked {
                    psi[i] *= ph;
                }
            }
            Step::Diffusion(b) => {
                // ψ ← ψ − (1 − e^{−iβ})⟨ψ₀|ψ⟩ ψ₀, with ψ₀ uniform.
                let overlap: Complex64 = psi.iter().sum::<Complex64>() * amp0;
                let shift = (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -b)) * overlap * amp0;
                for x in psi.iter_mut() {
                    *x -= shift;
                }
            }
        }
    }
    Ok(StateVector { amplitudes: psi, marked })
}

/// `|⟨T| F^k |ψ₀⟩|²` for a solved phase pair.
pub fn success_probability(solution: &ParamSolution, spec: &SearchSpec) -> f64 {
    run_2d(&solution.schedule(), spec).success()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_oracle_is_noop() {
        let s = SearchSpec::new(0.3).unwrap();
        let st = run_2d(&Schedule::new().oracle(0.0), &s);
        assert!((st.amp_r.re - 0.7f64.sqrt()).abs() < 1e-15 && (st.amp_t.re - 0.3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn one_grover_step_is_exact_at_quarter() {
        let s = SearchSpec::new(0.25).unwrap();
        let st = run_2d(&Schedule::new().grover(PI, PI), &s);
        assert!(st.amp_r.norm() < 1e-15);
        assert!((st.amp_t.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_grover_steps_overshoot_at_quarter() {
        // sin²(5θ/2) with θ = π/3
        let s = SearchSpec::new(0.25).unwrap();
        let st = run_2d(&Schedule::new().grover(PI, PI).grover(PI, PI), &s);
        assert!((st.success() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn four_elements_one_marked() {
        let v = run_full(4, &[2], &Schedule::new().grover(PI, PI)).unwrap();
        assert!((v.amplitudes[2].norm() - 1.0).abs() < 1e-15);
        for i in [0, 1, 3] {
            assert!(v.amplitudes[i].norm() < 1e-15);
        }
    }

    #[test]
    fn zero_oracle_keeps_uniform() {
        let v = run_full(8, &[1, 5], &Schedule::new().oracle(0.0)).unwrap();
        for a in &v.amplitudes {
            assert!((a.re - 8f64.sqrt().recip()).abs() < 1e-15 && a.im == 0.0);
        }
    }

    #[test]
    fn run_full_rejects_bad_marked_sets() {
        let g = Schedule::new().grover(PI, PI);
        assert!(matches!(run_full(4, &[], &g), Err(FxrError::InvalidArgument(_))));
        assert!(matches!(run_full(3, &[0, 1, 2], &g), Err(FxrError::InvalidArgument(_))));
        assert!(matches!(run_full(3, &[5], &g), Err(FxrError::InvalidArgument(_))));
        assert!(matches!(run_full(MAX_FULL_DIM + 1, &[0], &g), Err(FxrError::ResourceLimit { .. })));
    }

    #[test]
    fn long_schedules_stay_normalized() {
        let s = SearchSpec::new(0.13).unwrap();
        let mut sch = Schedule::new();
        for i in 0..5000 {
            sch = sch.grover(0.37 * i as f64, 1.3 - 0.011 * i as f64);
        }
        assert!((run_2d(&sch, &s).norm_sqr() - 1.0).abs() < 1e-10);
        let v = run_full(100, &[3, 17, 42, 99, 0, 64, 8, 1, 2, 77, 13, 5, 90], &sch).unwrap();
        assert!((v.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn schedule_serializes() {
        let sch = Schedule::new().grover(1.0, -2.0);
        let js = serde_json::to_string(&sch).unwrap();
        assert_eq!(js, r#"[{"op":"oracle","angle":1.0},{"op":"diffusion","angle":-2.0}]"#);
        assert_eq!(serde_json::from_str::<Schedule>(&js).unwrap(), sch);
    }
}
