//! Representing measures, harmonic decompositions and extremality.
//!
//! `cargo run --example harmonic_decomposition`

use maxplus_martin::martin::{decompose_harmonic, is_extremal, martin_data, mu, reconstruct, PiSpec};
use maxplus_martin::tropical::{TropicalMatrix, TropicalVector};
use maxplus_martin::Trop;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let labels: Vec<String> = ["a", "c", "o"].map(String::from).to_vec();
    let a = TropicalMatrix::from_arcs(labels, [(2, 0, -1.0), (2, 1, -1.0), (0, 0, 0.0), (1, 1, 0.0)])?;
    let md = martin_data(&a, PiSpec::Basepoint("o".into()))?;

    // a harmonic vector built from the two recurrent columns
    let u = md.column(0).oplus(&md.column(1).scale(Trop(-2.0)));
    println!("u = {:?}", u.values());
    let nu = decompose_harmonic(&md, &u)?;
    for atom in &nu.atoms {
        println!("  density {} on K[., {}]", atom.density.0, atom.label);
    }
    println!("reconstructed: {:?}", reconstruct(&md, &nu)?.values());

    let ext = is_extremal(&md, &md.column(0).oplus(&md.column(1)))?;
    println!("K[., a] (+) K[., c] extremal? {}", ext.extremal);
    if let Some((v1, v2)) = ext.witness {
        println!("  split as {:?} (+) {:?}", v1.values(), v2.values());
    }

    // super-harmonic but not harmonic: every column may carry mass
    let s = TropicalVector::from_values([0.0, -5.0, 0.0]);
    let full = mu(&md, &s)?;
    println!("mu of {:?}: {:?}", s.values(), full.atoms.iter().map(|a| (a.label.as_str(), a.density.0)).collect::<Vec<_>>());
    Ok(())
}
