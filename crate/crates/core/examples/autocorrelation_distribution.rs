//! Periodic autocorrelation by direct summation and by closed form.
//!
//!     cargo run --example autocorrelation_distribution -- 5 7 011

use gcseq::autocorr::{autocorr_all_closed_form, autocorr_all_empirical_par, distribution_empirical, verify_theorem1};
use gcseq::sequence::generate;
use gcseq::{SequenceParams, Triple};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: u64 = args.first().map_or(Ok(5), |s| s.parse())?;
    let q: u64 = args.get(1).map_or(Ok(7), |s| s.parse())?;
    let triple: Triple = args.get(2).map_or("011", String::as_str).parse()?;
    let params = SequenceParams::new(p, q, triple)?;

    let seq = generate(&params);
    let empirical = autocorr_all_empirical_par(&seq);
    let closed = autocorr_all_closed_form(&params);
    let agree = empirical == closed;
    println!("{params}: {} shifts, routes agree: {agree}", empirical.len());

    let profile = distribution_empirical(&seq);
    println!("family {}", profile.family.name());
    println!("max |C(tau)| for tau != 0: {}", profile.max_nontrivial_abs);
    for (value, count) in &profile.distribution {
        println!("  C = {value:>5}  x{count}");
    }

    // Same statement through the library check.
    let check = verify_theorem1(&params);
    println!("theorem1 check passed: {}", check.passed);
    Ok(())
}
