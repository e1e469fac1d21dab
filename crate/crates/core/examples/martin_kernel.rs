//! Martin kernel and minimal Martin space of a finite kernel.
//!
//! `cargo run --example martin_kernel`

use maxplus_martin::martin::{martin_data, minimal_martin_finite, PiSpec};
use maxplus_martin::tropical::TropicalMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // o is transient; a and c carry zero loops, so ρ = 0 with two classes
    let labels: Vec<String> = ["o", "a", "b", "c"].map(String::from).to_vec();
    let a = TropicalMatrix::from_arcs(
        labels,
        [(0, 1, -1.0), (0, 2, -2.0), (1, 1, 0.0), (2, 3, -1.0), (3, 3, 0.0), (3, 2, -3.0)],
    )?;
    let md = martin_data(&a, PiSpec::Basepoint("o".into()))?;
    println!("pi = {:?}", md.pi.row.values());
    println!("K = A* pi^-1, by columns:");
    for j in 0..md.n() {
        println!("  K[., {}] = {:?}", md.label(j), md.column(j).values());
    }
    let minimal: Vec<&str> = minimal_martin_finite(&md).into_iter().map(|j| md.label(j)).collect();
    println!("minimal Martin points: {minimal:?}");
    println!("column classes: {:?}", md.column_classes);
    Ok(())
}
