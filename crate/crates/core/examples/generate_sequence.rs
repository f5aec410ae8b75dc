//! Build one sequence and show how each index is classified.
//!
//!     cargo run --example generate_sequence -- 3 5 100

use gcseq::sequence::{classify, generate, unit_character};
use gcseq::{SequenceParams, Triple};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: u64 = args.first().map_or(Ok(3), |s| s.parse())?;
    let q: u64 = args.get(1).map_or(Ok(5), |s| s.parse())?;
    let triple: Triple = args.get(2).map_or("100", String::as_str).parse()?;

    let params = SequenceParams::new(p, q, triple)?;
    let seq = generate(&params);
    println!("{params}");
    println!("bits   {}", seq.to_bit_string());
    println!("weight {} of {}", seq.weight(), seq.len());

    if seq.len() <= 64 {
        for lambda in 0..seq.len() {
            let class = classify(lambda, &params)?;
            let chi = match class.name() {
                "unit" => format!("{:+}", unit_character(lambda, &params.primes)),
                _ => String::from(" ."),
            };
            println!("{lambda:>4} {:<5} {chi}  {}", class.name(), u8::from(seq.get(lambda)));
        }
    }
    println!("{}", seq.to_json());
    Ok(())
}
