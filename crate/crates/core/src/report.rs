//! Serialization helpers shared by the JSON emitters.

use std::fmt::Display;

use serde::Serializer;

/// Big integers are emitted as decimal strings so that values beyond 2^53
/// survive JSON round trips.
pub fn big_as_string<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}
