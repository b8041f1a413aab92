//! Fixtures shared by the criterion benches in `benches/`.

use probmink::{DigitSeq, Distribution};

/// The three families the benches sweep over.
pub fn families() -> Vec<Distribution> {
    ["dyadic", "geometric:1/3", "custom:1/10,1/5;1/2"]
        .iter()
        .map(|s| s.parse().expect("fixture distribution"))
        .collect()
}

/// A deterministic finite-preperiod sequence of `len` digits with a short period.
pub fn sample_digits(len: usize) -> DigitSeq {
    let pre: Vec<u32> = (0..len).map(|i| 1 + (i as u32 * 7 + 3) % 5).collect();
    DigitSeq::new(pre, vec![1, 2]).expect("positive digits")
}
