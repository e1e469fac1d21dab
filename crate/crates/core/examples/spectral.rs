//! Spectral radius, critical circuit and recurrence classes.
//!
//! `cargo run --example spectral`

use maxplus_martin::spectral::{critical_circuit, max_circuit_mean_fraction, spectral_data};
use maxplus_martin::tropical::TropicalMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let labels: Vec<String> = ["0", "1", "2", "3"].map(String::from).to_vec();
    // two circuits of mean 0 ({0} and {2,3}) linked by a transient node
    let a = TropicalMatrix::from_arcs(
        labels,
        [(0, 0, 0.0), (0, 1, -1.0), (1, 2, -2.0), (2, 3, 1.0), (3, 2, -1.0), (1, 0, -4.0)],
    )?;
    let sd = spectral_data(&a)?;
    let name = |i: &usize| a.label(*i).to_string();
    println!("rho = {}", sd.rho.0);
    if let Some(c) = max_circuit_mean_fraction(&a) {
        println!("as a fraction: {} / {}", c.weight, c.length);
    }
    println!("recurrent nodes: {:?}", sd.recurrent.iter().map(name).collect::<Vec<_>>());
    for (k, class) in sd.classes.iter().enumerate() {
        println!("class {k}: {:?}", class.iter().map(name).collect::<Vec<_>>());
    }
    println!("a critical circuit: {:?}", critical_circuit(&a).unwrap_or_default().iter().map(name).collect::<Vec<_>>());
    Ok(())
}
