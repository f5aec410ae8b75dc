//! Group ring elements over Z_pq and the identities between them.
//!
//!     cargo run --example group_ring_identities -- 3 5

use gcseq::groupring::{build_decomposition, gamma_p, gamma_q, gauss_gp, gauss_gq, verify_correlation_identity, verify_lemma1};
use gcseq::{OddPrimePair, SequenceParams, Triple};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: u64 = args.first().map_or(Ok(3), |s| s.parse())?;
    let q: u64 = args.get(1).map_or(Ok(5), |s| s.parse())?;
    let primes = OddPrimePair::new(p, q)?;

    println!("Gamma_p = {}", gamma_p(&primes));
    println!("Gamma_q = {}", gamma_q(&primes));
    println!("G_p     = {}", gauss_gp(&primes));
    println!("G_q     = {}", gauss_gq(&primes));
    let gp = gauss_gp(&primes);
    println!("G_p^2   = {}", &gp * &gp);

    for check in &verify_lemma1(&primes).checks {
        println!("[{}] {}", if check.passed { "ok" } else { "FAIL" }, check.name);
    }

    let params = SequenceParams { primes, triple: "100".parse::<Triple>()? };
    let dec = build_decomposition(&params);
    println!("e = {}", dec.e);
    println!("S(x) sigma(S(x)) = {}", dec.correlation_raw());
    for check in &verify_correlation_identity(&params).checks {
        println!("[{}] {}", if check.passed { "ok" } else { "FAIL" }, check.name);
    }
    Ok(())
}
