// The three earlier exact-search schemes, certified by the same simulator.

use fxr::classic::{params, Method};
use fxr::SearchSpec;

fn main() {
    for lambda in [0.1, 0.2, 0.25, 0.5] {
        let spec = SearchSpec::new(lambda).unwrap();
        println!("lambda = {lambda}");
        for m in [Method::BigSmallStep, Method::ConjugateRotation, Method::ThreeDRotation] {
            let c = params(m, &spec).unwrap();
            println!(
                "  {:<18} k_opt = {:.3}  k = {}  oracle calls = {}  P = {:.15}  {:?}",
                format!("{m:?}"),
                c.k_opt,
                c.k_used,
                c.phase_sequence.oracle_calls(),
                c.success_probability(&spec),
                c.params
            );
        }
    }
}
