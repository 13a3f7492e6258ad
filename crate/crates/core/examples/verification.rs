// Runs the built-in verification suites with a fixed seed and prints the report.

use massent::experiments::{run_verification, VerifyOptions};

pub fn run_example() -> massent::Result<bool> {
    let report = run_verification(&VerifyOptions {
        seed: 7,
        ..Default::default()
    })?;
    println!("{report}");
    Ok(report.passed())
}

fn main() -> massent::Result<()> {
    run_example()?;
    Ok(())
}
