//! Eigenvectors of the Z kernel for every λ ≥ ρ, and the failure below ρ.
//!
//! `cargo run --example eigenvalue_range`

use maxplus_martin::boundary::{construct_eigenvector, Coord, NonTightRule, ZRule};

fn main() {
    let ray: Vec<Coord> = (1..=14).map(|k| vec![k]).collect();
    for lambda in [-1.5, -1.0, -0.5, 0.0, 1.0] {
        match construct_eigenvector(&ZRule, lambda, 3, &ray, 0.0) {
            Ok(u) => println!("lambda {lambda}: u = {:?} on {:?} (residual {})", u.values, u.labels, u.residual),
            Err(e) => println!("lambda {lambda}: {e}"),
        }
    }
    // without tightness the boundary limit need not be harmonic
    match construct_eigenvector(&NonTightRule, 0.0, 3, &ray, 0.0) {
        Ok(u) => println!("non-tight: residual {}", u.residual),
        Err(e) => println!("non-tight: {e}"),
    }
}
