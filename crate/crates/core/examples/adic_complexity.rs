//! 2-adic complexity: exact gcd against the closed-form factors.
//!
//!     cargo run --example adic_complexity -- 3 13 010

use gcseq::adic2::complexity_report;
use gcseq::{SequenceParams, Triple};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: u64 = args.first().map_or(Ok(3), |s| s.parse())?;
    let q: u64 = args.get(1).map_or(Ok(13), |s| s.parse())?;

    let triples: Vec<Triple> = match args.get(2) {
        Some(s) => vec![s.parse()?],
        None => Triple::all().collect(),
    };
    for triple in triples {
        let params = SequenceParams::new(p, q, triple)?;
        let report = complexity_report(&params);
        println!(
            "{params}: d={} d_p={} d_q={} d*={} phi={} (~{:.6})",
            report.d_exact,
            report.d_p,
            report.d_q,
            report.d_star,
            report.complexity_bits_exact(),
            report.complexity_float
        );
        if !report.holds() {
            let names: Vec<_> = report.violations.iter().map(|v| v.name()).collect();
            println!("  violations: {}", names.join(", "));
        }
    }
    Ok(())
}
