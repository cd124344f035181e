// Run a solved schedule on an explicit 1000-element database with 200 marked
// entries and compare with the two-dimensional model.

use std::f64::consts::PI;

use fxr::{min_feasible_k, run_2d, run_full, solve_free_pair, Mode, SearchSpec};

fn main() {
    let n = 1000;
    let marked: Vec<usize> = (0..n).filter(|i| i % 5 == 3).collect();
    let spec = SearchSpec::from_counts(marked.len(), n).unwrap();
    let k = min_feasible_k(PI, &spec).unwrap();
    let sol = solve_free_pair(Mode::Alpha, PI, &spec, k).unwrap();

    let full = run_full(n, &marked, &sol.schedule()).unwrap();
    let two = run_2d(&sol.schedule(), &spec);
    let amps: Vec<f64> = marked.iter().map(|&i| full.amplitudes[i].norm()).collect();
    let spread = amps.iter().cloned().fold(f64::MIN, f64::max) - amps.iter().cloned().fold(f64::MAX, f64::min);
    println!("k = {k}, {} steps", sol.schedule().len());
    println!("marked mass (full) = {:.15}", full.marked_mass());
    println!("|amp_T|^2   (2D)   = {:.15}", two.success());
    println!("spread of marked amplitudes = {spread:.1e}");
}
