//! Brute-force reference computations, written straight from the defining
//! series and kept apart from the library's closed-form paths.

use num_traits::{One, Zero};
use probmink::rational::{int, pow2, Rational};
use probmink::{DigitSeq, Distribution};

/// Partial sum of `terms` terms of `Σ (-1)^(k-1) 2^(1-s_k)`, with the
/// alternating-series bracket `[lo, hi]` around the full sum.
pub fn series_bracket(s: &DigitSeq, terms: usize) -> (Rational, Rational) {
    let digits = s.take(terms + 1);
    let mut sum = Rational::zero();
    let mut acc = 0u64;
    for (k, &d) in digits[..terms].iter().enumerate() {
        acc += u64::from(d);
        let t = int(2) / pow2(acc);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
    }
    let next = int(2) / pow2(acc + u64::from(digits[terms]));
    let other = if terms.is_multiple_of(2) { &sum + next } else { &sum - next };
    if sum < other {
        (sum, other)
    } else {
        (other, sum)
    }
}

/// Left endpoint of the cylinder of `prefix`, summed term by term from the
/// expansion's defining series (the all-ones tail adds nothing since `p̂_1 = 0`).
pub fn cylinder_inf(p: &Distribution, prefix: &[u32]) -> Rational {
    let mut total = p.prefix(prefix[0]).unwrap();
    let mut weight = Rational::one();
    for k in 1..prefix.len() {
        weight *= p.pmf(prefix[k - 1]).unwrap();
        total += &weight * p.prefix(prefix[k]).unwrap();
    }
    total
}

pub fn product_of_pmf(p: &Distribution, prefix: &[u32]) -> Rational {
    prefix.iter().map(|&c| p.pmf(c).unwrap()).product()
}

/// Value of the finite continued fraction `[0; a_1, ..., a_n]`.
pub fn cf_value(digits: &[u32]) -> Rational {
    digits
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, &a| Rational::one() / (int(i64::from(a)) + acc))
}
