//! Driving the command line in-process and reading its JSON report.
//!
//! `cargo run --example cli_report`

use clap::Parser;
use maxplus_martin::cli::{run, Cli};

fn main() {
    let cli = Cli::parse_from(["maxplus", "--mode", "integer", "boundary", "--rule", "tripod", "--targets", "(k,1)", "--probe", "(k,1)"]);
    let report = run(&cli);
    println!("status {} (exit code {})", report.status, report.exit_code());
    println!("H-flat estimate: {}", report.results["h_flat"]["value"]);
    for a in &report.assertions {
        println!("  {} -> {}", a.name, a.pass);
    }
}
