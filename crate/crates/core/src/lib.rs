//! Generalized cyclotomic binary sequences of order 2 and period `n = pq`.
//!
//! * [`sequence`] builds `S(a,b,c)` from two distinct odd primes and a bit
//!   triple.
//! * [`autocorr`] computes the periodic autocorrelation both by direct
//!   summation and by the per-class closed form, and aggregates the
//!   distribution.
//! * [`groupring`] reproduces the underlying algebra in `Z[Γ]`: subgroup
//!   sums, the Gauss-sum elements `G_p`, `G_q` and the factorization of
//!   `σ(S) S`.
//! * [`adic2`] gives the exact 2-adic complexity and its factor gcds.
//! * [`sweep`] runs batches of the above over many parameter sets and
//!   writes CSV or JSON tables.
//!
//! ```
//! use gcseq::{autocorr, sequence::{generate, SequenceParams}};
//!
//! let params = SequenceParams::new(3, 5, "100".parse().unwrap()).unwrap();
//! assert_eq!(generate(&params).to_bit_string(), "000100110101111");
//! let profile = autocorr::distribution(&params);
//! assert_eq!(profile.family, autocorr::Family::Ideal);
//! ```

pub mod adic2;
pub mod autocorr;
pub mod error;
pub mod groupring;
pub mod numtheory;
mod report;
pub mod sequence;
pub mod sweep;

pub use error::{Error, Result};
pub use numtheory::OddPrimePair;
pub use sequence::{BinarySequence, SequenceParams, Triple};
