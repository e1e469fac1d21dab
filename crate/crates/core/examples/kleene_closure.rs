//! Kleene star and plus of a small weighted graph.
//!
//! `cargo run --example kleene_closure`

use maxplus_martin::tropical::{kleene_plus, kleene_star, TropicalMatrix};

fn show(name: &str, m: &TropicalMatrix) {
    println!("{name}:");
    for row in m.to_dense() {
        let cells: Vec<String> = row.iter().map(|w| if *w == f64::NEG_INFINITY { "-inf".into() } else { format!("{w}") }).collect();
        println!("  [{}]", cells.join(", "));
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a 3-cycle of weight -3 with a shortcut
    let labels = ["a", "b", "c"].map(String::from).to_vec();
    let a = TropicalMatrix::from_arcs(labels, [(0, 1, -1.0), (1, 2, -1.0), (2, 0, -1.0), (0, 2, -3.0)])?;
    show("A", &a);
    show("A* (best path weights, 0 on the diagonal)", &kleene_star(&a));
    show("A+ (non-empty paths)", &kleene_plus(&a));

    // a positive circuit makes the closure diverge
    let b = TropicalMatrix::from_arcs(vec!["x".into()], [(0, 0, 1.0)])?;
    show("star of a positive loop", &kleene_star(&b));
    Ok(())
}
