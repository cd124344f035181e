// How the lower bound on the iteration count scales: k_lower·√λ → π/4,
// the same quadratic speedup as plain Grover search.

use std::f64::consts::PI;

use fxr::{k_lower, FxrError, SearchSpec};

fn main() {
    println!("{:>10} {:>14} {:>12}", "lambda", "k_lower", "k_lower*sqrt");
    for e in 1..=6 {
        let spec = SearchSpec::new(10f64.powi(-e)).unwrap();
        let kl = k_lower(PI, &spec).unwrap();
        println!("{:>10.0e} {kl:>14.3} {:>12.6}", spec.lambda, kl * spec.lambda.sqrt());
    }
    println!("pi/4 = {:.6}", PI / 4.0);

    match k_lower(PI, &SearchSpec::new(0.5).unwrap()) {
        Err(FxrError::DegenerateAngle { .. }) => println!("lambda = 1/2 with alpha = pi: no k works"),
        other => println!("unexpected: {other:?}"),
    }
}
