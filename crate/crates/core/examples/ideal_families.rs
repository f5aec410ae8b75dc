//! Twin primes give ideal sequences, cousin primes give three-valued ones.
//!
//!     cargo run --example ideal_families -- 60

use gcseq::autocorr::distribution;
use gcseq::numtheory::is_odd_prime;
use gcseq::{SequenceParams, Triple};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p_max: u64 = std::env::args().nth(1).map_or(Ok(40), |s| s.parse())?;
    for (gap, label) in [(2, "q = p + 2"), (4, "q = p + 4")] {
        println!("{label}");
        for p in (3..=p_max).filter(|&p| is_odd_prime(p) && is_odd_prime(p + gap)) {
            for abc in ["100", "011"] {
                let params = SequenceParams::new(p, p + gap, abc.parse::<Triple>()?)?;
                let profile = distribution(&params);
                println!("  {:<24} {:<18} {:?}", params.to_string(), profile.family.name(), profile.nontrivial_values());
            }
        }
    }
    Ok(())
}
