// The dual problem: keep the diffusion phase fixed and tune the two oracle
// phases instead.

use std::f64::consts::PI;

use fxr::{min_feasible_k, solve_free_pair, Mode, SearchSpec};

fn main() {
    let spec = SearchSpec::new(0.2).unwrap();
    for beta in [0.3 * PI, 0.6 * PI, PI] {
        let k = min_feasible_k(beta, &spec).unwrap();
        let sol = solve_free_pair(Mode::Beta, beta, &spec, k).unwrap();
        println!(
            "beta = {:.2}pi  k = {k:2}  alpha1 = {:+.10}  alpha2 = {:+.10}  residuals = ({:.1e}, {:.1e})  P = {:.15}",
            beta / PI,
            sol.free_pair.0,
            sol.free_pair.1,
            sol.residual_real,
            sol.residual_imag,
            sol.certified_success_prob
        );
    }
}
