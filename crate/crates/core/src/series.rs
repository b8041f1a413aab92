//! The alternating dyadic series `Σ_k (-1)^(k-1) 2^(1 - s_k)`, `s_k = i_1 + ... + i_k`.
//!
//! One engine serves both digit sources: expansion digits (for `M_π`) and
//! continued-fraction digits (for the classical question-mark function).
//! Writing `S(s)` for the value on sequence `s` and `S_l` for its `l`-term
//! partial sum, the split
//!
//! ```text
//! S(s) = S_l + (-1)^l 2^(-s_l) S(σ^l s)
//! ```
//!
//! gives the closed form for a purely periodic tail of length `m` and digit
//! sum `P`: `S = S_m / (1 - (-1)^m 2^(-P))`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::digits::DigitSeq;
use crate::rational::{pow2_neg, Rational};

/// Value of a (possibly truncated) series with a certified enclosure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltSeriesValue {
    /// Partial sum over the digits consumed.
    pub value: Rational,
    pub lower: Rational,
    pub upper: Rational,
    /// Partial digit sum `s_n` at the truncation depth.
    pub digit_sum: u64,
}

impl AltSeriesValue {
    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn midpoint(&self) -> Rational {
        (&self.upper + &self.lower) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// `(S_n, s_n)` for the digits in `digits`.
pub(crate) fn partial(digits: &[u32]) -> (Rational, u64) {
    let total: u64 = digits.iter().map(|&d| u64::from(d)).sum();
    if digits.is_empty() {
        return (Rational::zero(), 0);
    }
    // over the common denominator 2^(s_n - 1): term k contributes ±2^(s_n - s_k)
    let mut numer = BigInt::zero();
    let mut s = 0u64;
    for (k, &d) in digits.iter().enumerate() {
        s += u64::from(d);
        let term = BigInt::one() << (total - s);
        if k % 2 == 0 {
            numer += term;
        } else {
            numer -= term;
        }
    }
    (Rational::new(numer, BigInt::one() << (total - 1)), total)
}

/// Exact value of the finite sum over `digits`; empty input gives 0.
pub fn alt_series_finite(digits: &[u32]) -> Rational {
    partial(digits).0
}

/// Exact value over an infinite eventually periodic sequence.
pub fn alt_series_exact(s: &DigitSeq) -> Rational {
    let (block, block_sum) = partial(s.period());
    let ratio = pow2_neg(block_sum);
    let denom = if s.period().len().is_multiple_of(2) {
        Rational::one() - ratio
    } else {
        Rational::one() + ratio
    };
    let tail = block / denom;
    let (head, head_sum) = partial(s.preperiod());
    let scaled = pow2_neg(head_sum) * tail;
    if s.preperiod().len().is_multiple_of(2) {
        head + scaled
    } else {
        head - scaled
    }
}

/// `2(2^w - 1)/(2^(v+w) - 1)`, the value on the period `(v, w)`.
pub fn alt_series_periodic_closed_form(v: u32, w: u32) -> Rational {
    assert!(v >= 1 && w >= 1, "period digits must be positive");
    let two_w = crate::rational::pow2(u64::from(w));
    let two_vw = crate::rational::pow2(u64::from(v) + u64::from(w));
    Rational::from_integer(2.into()) * (two_w - Rational::one()) / (two_vw - Rational::one())
}

/// Enclosure after the digits of `prefix`, assuming the sequence continues
/// forever.
///
/// The remainder is `(-1)^n 2^(-s_n) S(σ^n s)` with `S(σ^n s) ∈ (0, 1]`, so the
/// enclosure lies on one side of the partial sum and has width `2^(-s_n)`.
pub fn enclose_prefix(prefix: &[u32]) -> AltSeriesValue {
    let (value, s) = partial(prefix);
    let slack = pow2_neg(s);
    let (lower, upper) = if prefix.len().is_multiple_of(2) {
        (value.clone(), &value + slack)
    } else {
        (&value - slack, value.clone())
    };
    AltSeriesValue {
        value,
        lower,
        upper,
        digit_sum: s,
    }
}

/// Truncated evaluation over a digit stream.
///
/// Consumes up to `n` digits. If the stream ends by then the sum is finite and
/// the result is exact; otherwise the remainder is enclosed as in
/// [`enclose_prefix`].
pub fn alt_series_truncated<I>(digits: I, n: usize) -> AltSeriesValue
where
    I: IntoIterator<Item = u32>,
{
    let mut it = digits.into_iter().peekable();
    let prefix: Vec<u32> = it.by_ref().take(n).collect();
    if prefix.len() < n || it.peek().is_none() {
        let (value, s) = partial(&prefix);
        return AltSeriesValue {
            lower: value.clone(),
            upper: value.clone(),
            value,
            digit_sum: s,
        };
    }
    enclose_prefix(&prefix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn seq(s: &str) -> DigitSeq {
        s.parse().unwrap()
    }

    /// Brute-force partial sum of `terms` terms, straight from the definition.
    fn brute(s: &DigitSeq, terms: usize) -> Rational {
        let mut total = int(0);
        let mut acc = 0u64;
        for (k, d) in s.iter().take(terms).enumerate() {
            acc += u64::from(d);
            let t = ratio(2, 1) / crate::rational::pow2(acc);
            if k % 2 == 0 {
                total += t
            } else {
                total -= t
            }
        }
        total
    }

    #[test]
    fn exact_examples() {
        assert_eq!(alt_series_exact(&seq("(1,2)")), ratio(6, 7));
        assert_eq!(alt_series_exact(&seq("(2,1)")), ratio(2, 7));
        assert_eq!(alt_series_exact(&seq("(1,4)")), ratio(30, 31));
        assert_eq!(alt_series_exact(&seq("(1)")), ratio(2, 3));
        assert_eq!(alt_series_finite(&[2, 2]), ratio(3, 8));
        assert_eq!(alt_series_finite(&[]), int(0));
        assert_eq!(alt_series_finite(&[1]), int(1));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(alt_series_periodic_closed_form(1, 2), ratio(6, 7));
        assert_eq!(alt_series_periodic_closed_form(1, 1), ratio(2, 3));
        assert_eq!(alt_series_periodic_closed_form(2, 1), ratio(2, 7));
    }

    #[test]
    fn closed_form_grid() {
        for v in 1..=8 {
            for w in 1..=8 {
                let s = DigitSeq::new(vec![], vec![v, w]).unwrap();
                assert_eq!(alt_series_exact(&s), alt_series_periodic_closed_form(v, w), "({v},{w})");
            }
        }
    }

    #[test]
    fn truncated_examples() {
        let e = alt_series_truncated(seq("(1)").iter(), 10);
        assert!(e.width() <= pow2_neg(10));
        assert!(e.contains(&ratio(2, 3)));
        let e = alt_series_truncated(seq("(1,2)").iter(), 12);
        assert!(e.contains(&ratio(6, 7)));
        let e = alt_series_truncated(vec![5], 1);
        assert_eq!(e.value, ratio(1, 16));
        assert!(e.is_exact());
    }

    #[test]
    fn exact_agrees_with_200_term_sums() {
        for text in ["(1,2)", "3,1(2,5,1)", "(7)", "2,2,2(1,3)", "1(1,1,2)"] {
            let s = seq(text);
            let exact = alt_series_exact(&s);
            let approx = brute(&s, 200);
            // remainder after 200 terms is below 2^(-s_200) <= 2^-200
            let gap = &exact - &approx;
            assert!(gap.clone() * crate::rational::pow2(199) < int(1), "{text}");
            assert!(-gap * crate::rational::pow2(199) < int(1), "{text}");
        }
    }

    fn arb_seq() -> impl Strategy<Value = DigitSeq> {
        (
            proptest::collection::vec(1u32..10, 0..=8),
            proptest::collection::vec(1u32..10, 1..=4),
        )
            .prop_map(|(a, b)| DigitSeq::new(a, b).unwrap())
    }

    proptest! {
        #[test]
        fn truncation_brackets(s in arb_seq(), n in 1usize..40) {
            let e = alt_series_truncated(s.iter(), n);
            let exact = alt_series_exact(&s);
            prop_assert!(e.contains(&exact));
            prop_assert!(e.width() <= pow2_neg(e.digit_sum));
            prop_assert!(e.digit_sum >= n as u64);
        }

        #[test]
        fn strict_range_for_infinite(s in arb_seq()) {
            let v = alt_series_exact(&s);
            prop_assert!(v > int(0) && v < int(1));
        }

        #[test]
        fn prefix_split(s in arb_seq(), l in 0usize..12) {
            let head = s.take(l);
            let (sl, sum) = partial(&head);
            let sign = if l % 2 == 0 { int(1) } else { int(-1) };
            let rhs = sl + sign * pow2_neg(sum) * alt_series_exact(&s.shift_by(l));
            prop_assert_eq!(alt_series_exact(&s), rhs);
        }
    }
}
