//! Boundary points of the nearest-neighbour kernel on Z², estimated on a
//! window from truncated balls.
//!
//! `cargo run --example boundary_z2`

use maxplus_martin::boundary::{column_limit, Coord, TargetExpr, Z2Rule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let window = 2;
    for expr in ["(k,0)", "(k,k)", "(2k,-k)", "(0,-k)"] {
        let targets: Vec<Coord> = TargetExpr::parse(expr)?.sequence(1, 12);
        let est = column_limit(&Z2Rule, &targets, window, 0.0, None)?;
        println!("targets {expr}: residual {}, truncation radius {}", est.residual, est.truncation_radius);
        for (label, v) in est.labels.iter().zip(&est.values).filter(|(l, _)| l.starts_with("(1") || l.starts_with("(0")) {
            println!("  xi{label} = {v}");
        }
    }
    Ok(())
}
