//! Lax-Oleinik eigenvectors for L(v) = |v|^p / p on a grid.
//!
//! `cargo run --example lax_oleinik`

use maxplus_martin::busemann::{
    conjugate, eigen_check, lax_star_asymptotics_check, search_radius, theta, GridSpec, Lagrangian, Norm,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, lambda, s) in [(2.0, 0.5, 1.0), (3.0, 1.0, 0.5)] {
        let l = Lagrangian::p_norm(Norm::Euclidean(1), p)?;
        let th = theta(p, lambda);
        let d_star = th.powf(conjugate(p) - 1.0) * s;
        let extent = 3.0 * search_radius(&l, lambda, s);
        println!("p = {p}, lambda = {lambda}, s = {s}: u(x) = {th} x");
        for h in [d_star / 6.25, d_star / 12.5] {
            let rep = eigen_check(&|x| th * x[0], &l, lambda, s, &GridSpec::centered(1, h, extent)?, 0.0)?;
            println!("  h = {h:.4}: |T^s u - u - lambda s| <= {:.2e} (bound {:.2e})", rep.residual, rep.bound);
        }
        let asym = lax_star_asymptotics_check(p, s, lambda, &[1.0, 10.0, 100.0])?;
        for row in &asym.rows {
            println!("  d = {:>5}: sup_k = {:.4}, -theta d = {:.4}", row.displacement, row.plus_value, row.predicted);
        }
    }
    Ok(())
}
