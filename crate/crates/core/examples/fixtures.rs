//! The built-in example suite, with timings.
//!
//! `cargo run --release --example fixtures`

use maxplus_martin::boundary::fixture_suite;

fn main() {
    let report = fixture_suite();
    for f in &report.fixtures {
        println!("{:<10} {:>3} checks  {:>8.1} ms  {}", f.name, f.assertions.len(), f.elapsed_ms, if f.pass() { "ok" } else { "FAILED" });
        for a in f.assertions.iter().filter(|a| !a.pass) {
            println!("    {}: {}", a.name, a.witness);
        }
    }
    std::process::exit(if report.pass() { 0 } else { 1 });
}
