//! Eventually periodic sequences of positive-integer digits.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, parse, Error, Result};

/// An infinite digit sequence `preperiod · period^ω`, kept in canonical form.
///
/// Canonical means the period is primitive (not a power of a shorter word) and
/// the preperiod is as short as possible, i.e. its last digit differs from the
/// last digit of the period. Two sequences are equal iff their canonical forms
/// are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitSeq {
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl DigitSeq {
    pub fn new(preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if period.is_empty() {
            return Err(domain("period must be nonempty"));
        }
        if preperiod.iter().chain(&period).any(|&d| d == 0) {
            return Err(domain("digits must be positive"));
        }
        let mut seq = DigitSeq { preperiod, period };
        seq.normalize();
        Ok(seq)
    }

    /// `digits` followed by the all-ones tail.
    pub fn finite(digits: &[u32]) -> Result<Self> {
        Self::new(digits.to_vec(), vec![1])
    }

    pub fn periodic(period: &[u32]) -> Result<Self> {
        Self::new(Vec::new(), period.to_vec())
    }

    /// The sequence `1, 1, 1, ...`, which encodes 0 under every distribution.
    pub fn ones() -> Self {
        DigitSeq {
            preperiod: Vec::new(),
            period: vec![1],
        }
    }

    fn normalize(&mut self) {
        let n = self.period.len();
        if let Some(root) = (1..=n)
            .filter(|k| n.is_multiple_of(*k))
            .find(|&k| self.period.chunks(k).all(|c| c == &self.period[..k]))
        {
            self.period.truncate(root);
        }
        while let Some(&last) = self.preperiod.last() {
            if last != *self.period.last().expect("nonempty") {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    /// Digit at 0-based position `k`.
    pub fn digit(&self, k: usize) -> u32 {
        if k < self.preperiod.len() {
            self.preperiod[k]
        } else {
            self.period[(k - self.preperiod.len()) % self.period.len()]
        }
    }

    /// First `n` digits.
    pub fn take(&self, n: usize) -> Vec<u32> {
        self.iter().take(n).collect()
    }

    /// Infinite iterator over the digits.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.preperiod.iter().copied().chain(self.period.iter().copied().cycle())
    }

    /// `σ`: drop the first digit.
    pub fn shift(&self) -> DigitSeq {
        if let Some((_, rest)) = self.preperiod.split_first() {
            DigitSeq::new(rest.to_vec(), self.period.clone()).expect("valid digits")
        } else {
            let mut period = self.period.clone();
            period.rotate_left(1);
            DigitSeq::new(Vec::new(), period).expect("valid digits")
        }
    }

    /// `σ^n`.
    pub fn shift_by(&self, n: usize) -> DigitSeq {
        if n <= self.preperiod.len() {
            return DigitSeq::new(self.preperiod[n..].to_vec(), self.period.clone())
                .expect("valid digits");
        }
        let mut period = self.period.clone();
        let k = (n - self.preperiod.len()) % period.len();
        period.rotate_left(k);
        DigitSeq::new(Vec::new(), period).expect("valid digits")
    }

    /// `t · self`.
    pub fn prepend(&self, t: u32) -> Result<DigitSeq> {
        let mut pre = Vec::with_capacity(self.preperiod.len() + 1);
        pre.push(t);
        pre.extend_from_slice(&self.preperiod);
        DigitSeq::new(pre, self.period.clone())
    }

    /// Length of the longest common prefix, or `None` when the sequences are equal.
    pub fn common_prefix_len(&self, other: &DigitSeq) -> Option<usize> {
        if self == other {
            return None;
        }
        // distinct eventually periodic sequences differ before this horizon
        let horizon = self.preperiod.len().max(other.preperiod.len())
            + self.period.len() * other.period.len();
        (0..=horizon).find(|&k| self.digit(k) != other.digit(k))
    }
}

/// Grammar: `d1,...,dk(p1,...,pm)`; a bare list `d1,...,dk` means a tail of ones.
impl FromStr for DigitSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (pre, per) = match s.find('(') {
            Some(open) => {
                let rest = &s[open + 1..];
                let close = rest
                    .strip_suffix(')')
                    .ok_or_else(|| parse(format!("unterminated period in `{s}`")))?;
                let pre = s[..open].trim_end_matches(',');
                if s[..open].ends_with(",,") {
                    return Err(parse(format!("empty digit in `{s}`")));
                }
                (pre.to_string(), Some(close.to_string()))
            }
            None => (s.clone(), None),
        };
        let list = |text: &str| -> Result<Vec<u32>> {
            if text.is_empty() {
                return Ok(Vec::new());
            }
            text.split(',')
                .map(|d| {
                    let v: u32 = d.parse().map_err(|_| parse(format!("bad digit `{d}`")))?;
                    if v == 0 {
                        Err(parse("digits must be positive"))
                    } else {
                        Ok(v)
                    }
                })
                .collect()
        };
        let preperiod = list(&pre)?;
        let period = match per {
            Some(p) => {
                let v = list(&p)?;
                if v.is_empty() {
                    return Err(parse("empty period"));
                }
                v
            }
            None => {
                if preperiod.is_empty() {
                    return Err(parse("empty digit sequence"));
                }
                vec![1]
            }
        };
        DigitSeq::new(preperiod, period)
    }
}

fn join(d: &[u32]) -> String {
    d.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for DigitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", join(&self.preperiod), join(&self.period))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> DigitSeq {
        s.parse().unwrap()
    }

    #[test]
    fn normalization_is_canonical() {
        assert_eq!(seq("(1,2,1,2)"), seq("(1,2)"));
        assert_eq!(seq("1,2(1,2)"), seq("(1,2)"));
        assert_eq!(seq("2(1,2)"), seq("(2,1)"));
        assert_eq!(seq("3,3,3"), seq("3,3,3(1)"));
        assert_eq!(seq("1,1,1"), DigitSeq::ones());
        let s = seq("4,1,2(1,2)");
        assert_eq!(s.preperiod(), &[4]);
        assert_eq!(s.period(), &[1, 2]);
    }

    #[test]
    fn grammar() {
        assert_eq!(seq("1,2(1)").preperiod(), &[1, 2]);
        assert_eq!(seq("(2)").period(), &[2]);
        assert_eq!(seq(" 5, 5 (7) ").to_string(), "5,5(7)");
        for bad in ["", "()", "1,0", "(0)", "1,2(", "a", "1,,2(3)", "1(2)3"] {
            assert!(bad.parse::<DigitSeq>().is_err(), "{bad}");
        }
    }

    #[test]
    fn invalid_construction() {
        assert!(DigitSeq::new(vec![1], vec![]).is_err());
        assert!(DigitSeq::new(vec![0], vec![1]).is_err());
    }

    #[test]
    fn shifting() {
        let s = seq("3(1,2)");
        assert_eq!(s.shift(), seq("(1,2)"));
        assert_eq!(s.shift().shift(), seq("(2,1)"));
        assert_eq!(s.shift_by(4), seq("(2,1)"));
        assert_eq!(s.shift_by(0), s);
        assert_eq!(seq("(1,2)").prepend(3).unwrap(), s);
    }

    #[test]
    fn common_prefix() {
        assert_eq!(seq("(1,2)").common_prefix_len(&seq("(1,4)")), Some(1));
        assert_eq!(seq("(1,2)").common_prefix_len(&seq("(2,1)")), Some(0));
        assert_eq!(seq("5,5(1)").common_prefix_len(&seq("5,5(2)")), Some(2));
        assert_eq!(seq("(1,2)").common_prefix_len(&seq("1,2(1,2)")), None);
        assert_eq!(seq("(1,1,2)").common_prefix_len(&seq("(1,1,2,1,1,3)")), Some(5));
    }

    fn arb_seq() -> impl Strategy<Value = DigitSeq> {
        (
            proptest::collection::vec(1u32..10, 0..8),
            proptest::collection::vec(1u32..10, 1..5),
        )
            .prop_map(|(a, b)| DigitSeq::new(a, b).unwrap())
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(s in arb_seq()) {
            prop_assert_eq!(s.to_string().parse::<DigitSeq>().unwrap(), s);
        }

        #[test]
        fn normalization_preserves_digits(pre in proptest::collection::vec(1u32..4, 0..8),
                                          per in proptest::collection::vec(1u32..4, 1..5)) {
            let raw: Vec<u32> = pre.iter().copied().chain(per.iter().copied().cycle()).take(40).collect();
            let s = DigitSeq::new(pre, per).unwrap();
            prop_assert_eq!(s.take(40), raw);
            prop_assert!(s.preperiod().last() != s.period().last());
        }
    }
}
