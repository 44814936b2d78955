//! One line per acceptance criterion, with tolerance and wall time.

use std::process::ExitCode;
use std::time::Instant;

use apolar_cli::reproduce::{run_all, Context};
use apolar_core::betti::DEFAULT_BUDGET;
use apolar_core::Field;

fn main() -> ExitCode {
    let start = Instant::now();
    let cx = Context {
        field: Field::default_prime(),
        seed: 0,
        budget: DEFAULT_BUDGET,
    };
    let results = run_all(&cx);
    for r in &results {
        println!("{}", r.line(true));
    }
    let passed = results.iter().filter(|r| r.pass).count();
    println!(
        "{passed}/{} criteria pass in {:.2} s",
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
