//! Run a check sweep over small pairs and print the CSV table.
//!
//!     cargo run --example sweep_table -- 60

use gcseq::sweep::{sweep_up_to, Check, Format};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_n: u64 = std::env::args().nth(1).map_or(Ok(60), |s| s.parse())?;
    let outcome = sweep_up_to(max_n, &Check::ALL);
    outcome.write(Format::Csv, std::io::stdout().lock())?;
    eprintln!("{}", outcome.summary());
    for row in outcome.failed_rows() {
        let names: Vec<_> = row.violations.iter().map(|v| v.name()).collect();
        eprintln!("  {}:{} abc={}{}{} {}", row.p, row.q, row.a, row.b, row.c, names.join(","));
    }
    Ok(())
}
