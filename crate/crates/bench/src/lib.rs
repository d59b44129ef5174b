//! Fixed inputs shared by the benchmarks.

use qmarkoff::{christoffel_words, Word};

/// The longest Christoffel word of length `<= max_len`, ties broken by order.
pub fn longest_christoffel(max_len: usize) -> Word {
    christoffel_words(max_len).pop().expect("a and b are always present")
}

/// `(ab)^n`, a balanced word of length `2n`.
pub fn alternating(n: usize) -> Word {
    "ab".repeat(n).parse().expect("binary literal")
}
