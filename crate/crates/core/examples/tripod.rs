//! The tripod: two minimal boundary points and a non-minimal one between them.
//!
//! `cargo run --example tripod`

use maxplus_martin::boundary::{column_limit, h_flat_self, Coord, TripodRule};

fn row(j: i64, ks: std::ops::RangeInclusive<i64>) -> Vec<Coord> {
    ks.map(|k| vec![k, j]).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rule = TripodRule;
    for j in 0..=2 {
        let est = column_limit(&rule, &row(j, 1..=12), 3, 0.0, None)?;
        let h = h_flat_self(&rule, &est, &[row(j, 0..=8)], 0.0)?;
        println!("xi{j}: H-flat(xi, xi) ~ {} ({})", h.value, if h.value == 0.0 { "minimal" } else { "not minimal" });
        for (l, v) in est.labels.iter().zip(&est.values).take(6) {
            println!("  {l}: {v}");
        }
    }
    Ok(())
}
