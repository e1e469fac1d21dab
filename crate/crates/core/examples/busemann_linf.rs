//! Busemann points of the sup-norm plane and a few ray limits.
//!
//! `cargo run --example busemann_linf`

use maxplus_martin::busemann::{enumerate_faces, ray_limit, BusemannPoint, Norm, PolyhedralNorm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let poly = PolyhedralNorm::linf(2);
    let faces = enumerate_faces(&poly);
    println!("{} Busemann points through X = (1, -2):", faces.faces.len());
    for face in &faces.faces {
        let w = BusemannPoint::polyhedral(&poly, face.clone(), vec![1.0, -2.0])?;
        println!("  {}", w.describe());
    }

    let samples: Vec<Vec<f64>> = (-3..=3).flat_map(|i| (-3..=3).map(move |j| vec![i as f64, j as f64])).collect();
    let linf = Norm::Polyhedral(poly);
    for y in [[1.0, 0.0], [1.0, 1.0], [-2.0, 1.0]] {
        let lim = ray_limit(&linf, &[0.0, 0.0], &y, &samples, 1e6, 1e-9)?;
        println!("ray along {y:?} -> {} (gap {:e})", lim.point.describe(), lim.max_gap);
    }
    let l2 = Norm::Euclidean(2);
    let lim = ray_limit(&l2, &[0.0, 0.0], &[3.0, 4.0], &samples, 1e8, 1e-6)?;
    println!("euclidean ray along (3, 4) -> {}", lim.point.describe());
    Ok(())
}
