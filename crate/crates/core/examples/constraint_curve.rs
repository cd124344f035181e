// The curve of phase pairs that keep the rotation axis orthogonal to the
// initial state, and the half rotation angle g along it. The samples are also
// written as CSV to the system temp directory.

use std::f64::consts::PI;
use std::fmt::Write;

use fxr::solver::phi0;
use fxr::{trace_curve, Mode, SearchSpec};

fn main() {
    let spec = SearchSpec::new(0.2).unwrap();
    let alpha = 0.6 * PI;
    let curve = trace_curve(Mode::Alpha, alpha, &spec, 1024).unwrap();

    let g: Vec<f64> = curve.samples.iter().map(|&(x, _)| curve.g(x)).collect();
    let gmax = g.iter().cloned().fold(0.0, f64::max);
    println!("{} samples, branch offset {}", curve.samples.len(), curve.branch_offset);
    println!("identity rotation at beta1 = {:+.12}", curve.identity_point);
    println!("g spans [{:.3e}, {gmax:.6}], phi0 = {:.6}", curve.g(curve.identity_point), phi0(alpha, &spec));

    let mut csv = String::from("x,f,g\n");
    for (&(x, y), gx) in curve.samples.iter().zip(&g) {
        writeln!(csv, "{x:.16e},{y:.16e},{gx:.16e}").unwrap();
    }
    let path = std::env::temp_dir().join("fxr_curve_lambda0.2_alpha0.6pi.csv");
    std::fs::write(&path, csv).unwrap();
    println!("wrote {}", path.display());

    for &(x, y) in curve.samples.iter().step_by(128) {
        println!("  beta1 = {x:+.4}  beta2 = {y:+.4}  g = {:.4}", curve.g(x));
    }
}
