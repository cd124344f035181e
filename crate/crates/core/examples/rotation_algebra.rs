// Grover steps as rotations of the Bloch sphere: compose them, split a unitary
// into phase and rotation, and check the closed form of a two-step block.

use std::f64::consts::PI;

use fxr::phase_ops::{fxr_alpha_rotation, g_matrix, g_rotation};
use fxr::{compose, decompose_unitary, SearchSpec};

fn main() {
    let spec = SearchSpec::new(0.25).unwrap();

    let (phase, r) = decompose_unitary(&g_matrix(PI, PI, &spec)).unwrap();
    println!("G(pi, pi) = e^(i{phase:.4}) * R, angle {:.6} about {:?}", r.angle(), r.axis().unwrap());

    let (a, b1, b2) = (0.7, 1.9, -0.4);
    let built = compose(&g_rotation(a, b2, &spec), &g_rotation(a, b1, &spec));
    let closed = fxr_alpha_rotation(a, b1, b2, &spec);
    println!("two-step block: composed c = {:.15}, closed form c = {:.15}", built.c, closed.c);
    println!("distance = {:.1e}", built.distance(&closed));
}
