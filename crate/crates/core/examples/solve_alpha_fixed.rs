// Exact search with the standard phase-flip oracle (α = π): pick any iteration
// count above the lower bound and solve for the two diffusion phases.

use std::f64::consts::PI;

use fxr::{k_lower, run_2d, solve_free_pair, Mode, SearchSpec};

fn main() {
    // 3 marked items out of 40
    let spec = SearchSpec::from_counts(3, 40).expect("valid counts");
    let kl = k_lower(PI, &spec).expect("alpha = pi is not degenerate here");
    println!("lambda = {:.4}, k_lower = {kl:.4}", spec.lambda);

    for k in [kl.ceil() as u32 + 1, kl.ceil() as u32 + 3] {
        let sol = solve_free_pair(Mode::Alpha, PI, &spec, k).expect("k above the bound is solvable");
        let (b1, b2) = sol.free_pair;
        let sched = sol.schedule();
        let state = run_2d(&sched, &spec);
        println!(
            "k = {k:2}: beta1 = {b1:+.12}, beta2 = {b2:+.12}, oracle calls = {}, P(marked) = {:.15}",
            sched.oracle_calls(),
            state.success()
        );
    }
}
