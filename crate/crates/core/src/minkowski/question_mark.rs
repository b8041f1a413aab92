use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::rational::Rational;
use crate::series::alt_series_finite;

/// Continued-fraction digits `[a_1, ..., a_n]` of `x ∈ [0,1]` by Euclid's algorithm.
///
/// `0` has no digits, `1` is `[1]`; every other input ends in a digit `>= 2`.
pub fn continued_fraction(x: &Rational) -> Result<Vec<u32>> {
    if x < &Rational::zero() || x > &Rational::one() {
        return Err(domain("question-mark argument must lie in [0,1]"));
    }
    if x.is_one() {
        return Ok(vec![1]);
    }
    let mut digits = Vec::new();
    // x = num/den, a_0 = 0; expand den/num
    let mut a: BigInt = x.numer().clone();
    let mut b: BigInt = x.denom().clone();
    while !a.is_zero() {
        let (q, r) = b.div_rem(&a);
        let q = q
            .to_u32()
            .ok_or_else(|| domain("continued-fraction digit exceeds u32"))?;
        digits.push(q);
        b = a;
        a = r;
    }
    Ok(digits)
}

/// The classical question-mark function on a finite continued fraction.
pub fn question_mark_from_cf(digits: &[u32]) -> Rational {
    alt_series_finite(digits)
}

/// `?(x)` for rational `x ∈ [0,1]`.
pub fn eval_question_mark(x: &Rational) -> Result<Rational> {
    Ok(question_mark_from_cf(&continued_fraction(x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(eval_question_mark(&ratio(1, 2)).unwrap(), ratio(1, 2));
        assert_eq!(eval_question_mark(&ratio(1, 3)).unwrap(), ratio(1, 4));
        assert_eq!(eval_question_mark(&ratio(2, 5)).unwrap(), ratio(3, 8));
        assert_eq!(eval_question_mark(&int(0)).unwrap(), int(0));
        assert_eq!(eval_question_mark(&int(1)).unwrap(), int(1));
        assert!(eval_question_mark(&ratio(3, 2)).is_err());
        assert!(eval_question_mark(&ratio(-1, 2)).is_err());
    }

    #[test]
    fn euclid_digits() {
        assert_eq!(continued_fraction(&ratio(2, 5)).unwrap(), vec![2, 2]);
        assert_eq!(continued_fraction(&ratio(1, 3)).unwrap(), vec![3]);
        assert_eq!(continued_fraction(&ratio(13, 30)).unwrap(), vec![2, 3, 4]);
        assert!(continued_fraction(&int(0)).unwrap().is_empty());
    }

    fn value_of_cf(digits: &[u32]) -> Rational {
        digits
            .iter()
            .rev()
            .fold(int(0), |acc, &a| int(1) / (int(a.into()) + acc))
    }

    proptest! {
        #[test]
        fn cf_reconstructs_and_alternative_form_agrees(num in 1u64..10_000, den in 1u64..10_000) {
            prop_assume!(num < den);
            let x = Rational::new(num.into(), den.into());
            let cf = continued_fraction(&x).unwrap();
            prop_assert_eq!(value_of_cf(&cf), x.clone());
            prop_assert!(*cf.last().unwrap() >= 2);
            let mut alt = cf.clone();
            *alt.last_mut().unwrap() -= 1;
            alt.push(1);
            prop_assert_eq!(value_of_cf(&alt), x);
            prop_assert_eq!(question_mark_from_cf(&alt), question_mark_from_cf(&cf));
        }

        #[test]
        fn strictly_increasing(a in 0u64..5000, b in 0u64..5000, d1 in 1u64..5000, d2 in 1u64..5000) {
            let x = Rational::new(a.min(d1).into(), d1.into());
            let y = Rational::new(b.min(d2).into(), d2.into());
            prop_assume!(x != y);
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            prop_assert!(eval_question_mark(&lo).unwrap() < eval_question_mark(&hi).unwrap());
        }
    }
}
