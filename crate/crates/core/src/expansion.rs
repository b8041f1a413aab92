//! The codec between digit sequences and points of `[0,1)`.
//!
//! A sequence `(i_k)` maps to `p̂_{i_1} + Σ_k p̂_{i_{k+1}} p_{i_1}···p_{i_k}`.
//! Read as an iterated affine map `x = p̂_{i_1} + p_{i_1}·σ(x)`, an eventually
//! periodic sequence is the preperiod's composed map applied to the fixed
//! point of the period's composed map, which is exact in rationals.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::digits::DigitSeq;
use crate::distribution::Distribution;
use crate::error::{domain, Error, Result};
use crate::rational::Rational;

/// Default remainder-history budget for [`decode_periodic`].
pub const DEFAULT_MAX_STEPS: usize = 4096;

/// A level-`n` cylinder: all points whose first `n` digits are `digits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    pub digits: Vec<u32>,
    /// Left end, included.
    pub inf: Rational,
    /// Right end, excluded.
    pub sup: Rational,
    pub measure: Rational,
}

impl Cylinder {
    pub fn new(p: &Distribution, digits: &[u32]) -> Result<Self> {
        if digits.is_empty() {
            return Err(domain("cylinder needs at least one digit"));
        }
        if digits.contains(&0) {
            return Err(domain("digits must be positive"));
        }
        let (offset, scale) = compose(p, digits);
        Ok(Cylinder {
            digits: digits.to_vec(),
            sup: &offset + &scale,
            inf: offset,
            measure: scale,
        })
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.inf <= x && x < &self.sup
    }

    pub fn child(&self, p: &Distribution, c: u32) -> Result<Cylinder> {
        let mut digits = self.digits.clone();
        digits.push(c);
        Cylinder::new(p, &digits)
    }
}

/// Composes the affine maps of `digits`: returns `(A, B)` with `x = A + B·y`.
fn compose(p: &Distribution, digits: &[u32]) -> (Rational, Rational) {
    let mut offset = Rational::zero();
    let mut scale = Rational::one();
    for &d in digits {
        offset += &scale * p.p_hat(d);
        scale *= p.p(d);
    }
    (offset, scale)
}

pub fn encode(p: &Distribution, s: &DigitSeq) -> Rational {
    let (a, b) = compose(p, s.period());
    let periodic_point = a / (Rational::one() - b);
    let (pa, pb) = compose(p, s.preperiod());
    pa + pb * periodic_point
}

/// The level-`n` cylinder around the point whose expansion starts with `digits`.
pub fn encode_enclosure(p: &Distribution, digits: &[u32], n: usize) -> Result<Cylinder> {
    if n == 0 {
        return Err(domain("depth must be at least 1"));
    }
    if digits.len() < n {
        return Err(domain(format!("need {n} digits, got {}", digits.len())));
    }
    Cylinder::new(p, &digits[..n])
}

fn check_unit(x: &Rational) -> Result<()> {
    if x < &Rational::zero() || x >= &Rational::one() {
        Err(domain("point must lie in [0,1)"))
    } else {
        Ok(())
    }
}

/// One step of `σ`: returns `(i_1, σ(x))`.
pub fn shift(p: &Distribution, x: &Rational) -> Result<(u32, Rational)> {
    check_unit(x)?;
    Ok(shift_unchecked(p, x))
}

fn shift_unchecked(p: &Distribution, x: &Rational) -> (u32, Rational) {
    let c = p.locate(x);
    let rest = (x - p.p_hat(c)) / p.p(c);
    (c, rest)
}

/// First `n` digits of `x` and the remainder `σ^n(x)`.
pub fn decode(p: &Distribution, x: &Rational, n: usize) -> Result<(Vec<u32>, Rational)> {
    check_unit(x)?;
    let mut digits = Vec::with_capacity(n);
    // unreduced num/den; reduce only occasionally
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    for step in 0..n {
        let (c, (hn, hd), (pn, pd)) = p.locate_int(&num, &den);
        digits.push(c);
        // (num/den - hn/hd) / (pn/pd)
        let next_num = (&num * &hd - &hn * &den) * &pd;
        den = den * hd * pn;
        num = next_num;
        if step % 8 == 7 {
            let g = num.gcd(&den);
            if !g.is_one() {
                num /= &g;
                den /= &g;
            }
        }
    }
    Ok((digits, Rational::new(num, den)))
}

/// Decodes until a remainder repeats, yielding the exact eventually periodic
/// expansion of `x`.
///
/// Fails with [`Error::PeriodNotDetected`] when no repeat occurs within
/// `max_steps` digits; rationals need not cycle under `σ` for every `P`.
pub fn decode_periodic(p: &Distribution, x: &Rational, max_steps: usize) -> Result<DigitSeq> {
    check_unit(x)?;
    let mut seen: HashMap<Rational, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut rem = x.clone();
    for step in 0..=max_steps {
        if let Some(&start) = seen.get(&rem) {
            let period = digits[start..].to_vec();
            digits.truncate(start);
            let seq = DigitSeq::new(digits, period)?;
            if &encode(p, &seq) != x {
                return Err(Error::Domain(format!("periodic decode of {x} failed to re-encode")));
            }
            return Ok(seq);
        }
        if step == max_steps {
            break;
        }
        let (c, next) = shift_unchecked(p, &rem);
        seen.insert(std::mem::replace(&mut rem, next), step);
        digits.push(c);
    }
    Err(Error::PeriodNotDetected {
        steps: max_steps,
        prefix: digits,
    })
}

/// `max_p^u`: any two points sharing their first `u` digits are closer than this.
pub fn approximation_bound(p: &Distribution, u: u32) -> Result<Rational> {
    if u == 0 {
        return Err(domain("u must be at least 1"));
    }
    Ok(crate::rational::powi(&p.max_p(), u64::from(u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, pow2_neg, ratio};
    use proptest::prelude::*;

    fn seq(s: &str) -> DigitSeq {
        s.parse().unwrap()
    }

    fn g13() -> Distribution {
        Distribution::geometric(ratio(1, 3)).unwrap()
    }

    /// Direct partial sum of the defining series over the first `terms` digits.
    fn series_partial(p: &Distribution, s: &DigitSeq, terms: usize) -> Rational {
        let d = s.take(terms + 1);
        let mut total = p.prefix(d[0]).unwrap();
        let mut weight = int(1);
        for k in 0..terms {
            weight *= p.pmf(d[k]).unwrap();
            total += &weight * p.prefix(d[k + 1]).unwrap();
        }
        total
    }

    #[test]
    fn encode_examples() {
        let d = Distribution::dyadic();
        assert_eq!(encode(&d, &seq("(1)")), int(0));
        assert_eq!(encode(&d, &seq("(2)")), ratio(2, 3));
        assert_eq!(encode(&d, &seq("1,2(1)")), ratio(1, 4));
        // 60-term partial sums approach 2/3 from below within the remaining weight
        let partial = series_partial(&d, &seq("(2)"), 60);
        assert!(partial <= ratio(2, 3) && ratio(2, 3) - partial < pow2_neg(100));
        assert_eq!(series_partial(&d, &seq("1,2(1)"), 10), ratio(1, 4));
    }

    #[test]
    fn encode_matches_partial_sums_for_other_laws() {
        for p in [g13(), Distribution::custom(vec![ratio(1, 10)], ratio(1, 2)).unwrap()] {
            for s in ["(1,2)", "3,1(2,5)", "(4)"] {
                let s = seq(s);
                let exact = encode(&p, &s);
                let partial = series_partial(&p, &s, 80);
                let gap = &exact - &partial;
                assert!(gap >= int(0));
                assert!(gap < crate::rational::powi(&p.max_p(), 80));
            }
        }
    }

    #[test]
    fn enclosure_examples() {
        let d = Distribution::dyadic();
        let c = encode_enclosure(&d, &[2], 1).unwrap();
        assert_eq!((c.inf.clone(), c.sup.clone(), c.measure.clone()), (ratio(1, 2), ratio(3, 4), ratio(1, 4)));
        assert_eq!(c.inf, d.prefix(2).unwrap());
        assert_eq!(c.sup, d.prefix(3).unwrap());
        let c = encode_enclosure(&d, &[1, 2], 2).unwrap();
        assert_eq!((c.inf, c.sup, c.measure), (ratio(1, 4), ratio(3, 8), ratio(1, 8)));
        let c = encode_enclosure(&g13(), &[1], 1).unwrap();
        assert_eq!((c.inf, c.sup, c.measure), (int(0), ratio(1, 3), ratio(1, 3)));
        assert!(encode_enclosure(&d, &[1], 2).is_err());
        assert!(encode_enclosure(&d, &[1], 0).is_err());
    }

    #[test]
    fn cylinder_endpoints_are_corner_encodings() {
        let p = g13();
        let c = Cylinder::new(&p, &[2, 3, 1]).unwrap();
        assert_eq!(c.inf, encode(&p, &DigitSeq::finite(&[2, 3, 1]).unwrap()));
        assert_eq!(c.sup, encode(&p, &DigitSeq::finite(&[2, 3, 2]).unwrap()));
    }

    #[test]
    fn decode_examples() {
        let d = Distribution::dyadic();
        assert_eq!(decode(&d, &ratio(1, 4), 3).unwrap(), (vec![1, 2, 1], int(0)));
        assert_eq!(decode(&d, &ratio(2, 3), 4).unwrap(), (vec![2, 2, 2, 2], ratio(2, 3)));
        for p in [d.clone(), g13()] {
            assert_eq!(decode(&p, &int(0), 5).unwrap(), (vec![1; 5], int(0)));
        }
        assert!(matches!(decode(&d, &int(1), 1), Err(Error::Domain(_))));
        assert!(matches!(decode(&d, &ratio(-1, 2), 1), Err(Error::Domain(_))));
    }

    #[test]
    fn decode_periodic_examples() {
        let d = Distribution::dyadic();
        assert_eq!(decode_periodic(&d, &ratio(1, 4), 100).unwrap(), seq("1,2(1)"));
        assert_eq!(decode_periodic(&d, &ratio(2, 3), 100).unwrap(), seq("(2)"));
        assert_eq!(decode_periodic(&g13(), &int(0), 100).unwrap(), seq("(1)"));
        assert!(decode_periodic(&d, &int(1), 10).is_err());
    }

    #[test]
    fn decode_periodic_reports_budget_exhaustion() {
        // 1/3 under dyadic: remainders 1/3 -> 2/3 -> 2/3, needs two steps
        let d = Distribution::dyadic();
        match decode_periodic(&d, &ratio(1, 3), 1) {
            Err(Error::PeriodNotDetected { steps, prefix }) => {
                assert_eq!(steps, 1);
                assert_eq!(prefix, vec![1]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(decode_periodic(&d, &ratio(1, 3), 2).unwrap(), seq("1(2)"));
    }

    #[test]
    fn shift_examples() {
        let d = Distribution::dyadic();
        assert_eq!(shift(&d, &ratio(1, 4)).unwrap(), (1, ratio(1, 2)));
        assert_eq!(shift(&d, &ratio(2, 3)).unwrap(), (2, ratio(2, 3)));
        assert_eq!(shift(&g13(), &int(0)).unwrap(), (1, int(0)));
        assert!(shift(&d, &int(1)).is_err());
    }

    #[test]
    fn approximation_bound_examples() {
        assert_eq!(approximation_bound(&Distribution::dyadic(), 3).unwrap(), ratio(1, 8));
        assert_eq!(approximation_bound(&g13(), 2).unwrap(), ratio(1, 9));
        assert!(approximation_bound(&g13(), 0).is_err());
    }

    fn families() -> Vec<Distribution> {
        vec![
            Distribution::dyadic(),
            g13(),
            Distribution::custom(vec![ratio(1, 10), ratio(1, 4)], ratio(2, 3)).unwrap(),
        ]
    }

    fn arb_seq() -> impl Strategy<Value = DigitSeq> {
        (
            proptest::collection::vec(1u32..10, 0..=8),
            proptest::collection::vec(1u32..10, 1..=4),
        )
            .prop_map(|(a, b)| DigitSeq::new(a, b).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn round_trip(s in arb_seq(), which in 0usize..3) {
            let p = &families()[which];
            let x = encode(p, &s);
            prop_assert!(x >= int(0) && x < int(1));
            let (digits, _) = decode(p, &x, 30).unwrap();
            prop_assert_eq!(digits, s.take(30));
            prop_assert_eq!(decode_periodic(p, &x, DEFAULT_MAX_STEPS).unwrap(), s);
        }

        #[test]
        fn shift_identity(num in 0u64..1_000_000_007, which in 0usize..3) {
            let p = &families()[which];
            let x = Rational::new(num.into(), 1_000_000_007u64.into());
            let (c, sx) = shift(p, &x).unwrap();
            prop_assert!(sx >= int(0) && sx < int(1));
            prop_assert_eq!(p.prefix(c).unwrap() + p.pmf(c).unwrap() * sx, x);
        }

        #[test]
        fn nesting_and_partition(prefix in proptest::collection::vec(1u32..6, 1..=8), which in 0usize..3) {
            let p = &families()[which];
            let parent = Cylinder::new(p, &prefix).unwrap();
            let cap = 7u32;
            let mut covered = int(0);
            let mut left = parent.inf.clone();
            for c in 1..=cap {
                let child = parent.child(p, c).unwrap();
                prop_assert!(child.inf >= parent.inf && child.sup <= parent.sup);
                prop_assert_eq!(&child.inf, &left);
                left = child.sup.clone();
                covered += &child.measure;
            }
            let tail = p.tail_mass(cap + 1).unwrap() * &parent.measure;
            prop_assert_eq!(covered + tail, parent.measure.clone());
            prop_assert_eq!(&parent.sup - &parent.inf, parent.measure.clone());
        }

        #[test]
        fn shared_prefix_bound(a in arb_seq(), b in arb_seq(), u in 1usize..6, which in 0usize..3) {
            let p = &families()[which];
            let head = a.take(u);
            let b = DigitSeq::new(head.iter().copied().chain(b.take(6)).collect(), b.shift_by(6).period().to_vec()).unwrap();
            let gap = encode(p, &a) - encode(p, &b);
            let bound = approximation_bound(p, u as u32).unwrap();
            prop_assert!(gap < bound && -gap < bound);
        }
    }
}
