//! Probability distributions on the positive integers with exact pmf.
//!
//! Three families are supported, all of which share one internal shape: a
//! finite explicit head `p_1..p_{m-1}` followed by a geometric tail
//! `p_i = t * r^(i-m)` for `i >= m`. Dyadic and geometric laws are the
//! special case of an empty head.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{parse, Error, Result};
use crate::rational::{fraction_string, parse_rational, powi, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistributionKind {
    /// `p_i = 2^-i`.
    Dyadic,
    /// `p_i = q (1-q)^(i-1)`.
    Geometric { q: Rational },
    /// Explicit head, then `p_i = (1-s)(1-r) r^(i-m)` where `s` is the head mass
    /// and `m - 1` the head length.
    CustomPrefixTail {
        prefix: Vec<Rational>,
        tail_ratio: Rational,
    },
}

/// A distribution `P = (p_i)` supported on every `i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    kind: DistributionKind,
    head: Vec<Rational>,
    // head_prefix[k] = p̂_{k+1}, length head.len() + 1
    head_prefix: Vec<Rational>,
    head_mass: Rational,
    tail_first: Rational,
    ratio: Rational,
}

fn open_unit(x: &Rational) -> bool {
    x > &Rational::zero() && x < &Rational::one()
}

impl Distribution {
    pub fn dyadic() -> Self {
        Self::build(DistributionKind::Dyadic, Vec::new(), ratio(1, 2))
            .expect("dyadic parameters are valid")
    }

    pub fn geometric(q: Rational) -> Result<Self> {
        if !open_unit(&q) {
            return Err(Error::InvalidDistribution(format!(
                "geometric parameter {} not in (0,1)",
                fraction_string(&q)
            )));
        }
        let r = Rational::one() - &q;
        Self::build(DistributionKind::Geometric { q }, Vec::new(), r)
    }

    pub fn custom(prefix: Vec<Rational>, tail_ratio: Rational) -> Result<Self> {
        if let Some(bad) = prefix.iter().find(|p| !open_unit(p)) {
            return Err(Error::InvalidDistribution(format!(
                "head probability {} not in (0,1)",
                fraction_string(bad)
            )));
        }
        if !open_unit(&tail_ratio) {
            return Err(Error::InvalidDistribution(format!(
                "tail ratio {} not in (0,1)",
                fraction_string(&tail_ratio)
            )));
        }
        let kind = DistributionKind::CustomPrefixTail {
            prefix: prefix.clone(),
            tail_ratio: tail_ratio.clone(),
        };
        Self::build(kind, prefix, tail_ratio)
    }

    fn build(kind: DistributionKind, head: Vec<Rational>, r: Rational) -> Result<Self> {
        let mut head_prefix = Vec::with_capacity(head.len() + 1);
        let mut acc = Rational::zero();
        head_prefix.push(acc.clone());
        for p in &head {
            acc += p;
            head_prefix.push(acc.clone());
        }
        if acc >= Rational::one() {
            return Err(Error::InvalidDistribution(format!(
                "head mass {} leaves nothing for the tail",
                fraction_string(&acc)
            )));
        }
        let tail_first = (Rational::one() - &acc) * (Rational::one() - &r);
        Ok(Distribution {
            kind,
            head,
            head_prefix,
            head_mass: acc,
            tail_first,
            ratio: r,
        })
    }

    pub fn kind(&self) -> &DistributionKind {
        &self.kind
    }

    /// Explicit head `p_1..p_{m-1}` (empty for dyadic and geometric).
    pub fn head(&self) -> &[Rational] {
        &self.head
    }

    /// Mass of the explicit head, `s`.
    pub fn head_mass(&self) -> &Rational {
        &self.head_mass
    }

    /// First tail probability `p_m`.
    pub fn tail_first(&self) -> &Rational {
        &self.tail_first
    }

    /// Geometric ratio of the tail.
    pub fn tail_ratio(&self) -> &Rational {
        &self.ratio
    }

    /// Index `m` of the first tail digit.
    pub fn tail_start(&self) -> u32 {
        self.head.len() as u32 + 1
    }

    pub fn pmf(&self, i: u32) -> Result<Rational> {
        check_index(i)?;
        Ok(self.p(i))
    }

    pub fn prefix(&self, i: u32) -> Result<Rational> {
        check_index(i)?;
        Ok(self.p_hat(i))
    }

    /// Unchecked `p_i`; callers guarantee `i >= 1`.
    pub(crate) fn p(&self, i: u32) -> Rational {
        debug_assert!(i >= 1);
        let m = self.tail_start();
        if i < m {
            self.head[(i - 1) as usize].clone()
        } else {
            &self.tail_first * powi(&self.ratio, u64::from(i - m))
        }
    }

    /// Unchecked `p̂_i`; callers guarantee `i >= 1`.
    pub(crate) fn p_hat(&self, i: u32) -> Rational {
        debug_assert!(i >= 1);
        let m = self.tail_start();
        if i <= m {
            self.head_prefix[(i - 1) as usize].clone()
        } else {
            let tail_mass = Rational::one() - &self.head_mass;
            &self.head_mass + tail_mass * (Rational::one() - powi(&self.ratio, u64::from(i - m)))
        }
    }

    /// Exact tail mass `1 - p̂_i = sum_{j >= i} p_j`.
    pub fn tail_mass(&self, i: u32) -> Result<Rational> {
        Ok(Rational::one() - self.prefix(i)?)
    }

    /// `max_i p_i`: the larger of the head maximum and the first tail term.
    pub fn max_p(&self) -> Rational {
        self.head
            .iter()
            .chain(std::iter::once(&self.tail_first))
            .max()
            .cloned()
            .expect("tail always contributes one term")
    }

    /// Finds the digit `c` with `p̂_c <= x < p̂_{c+1}`; `x` must lie in `[0,1)`.
    ///
    /// The tail search compares exact powers of the ratio against the
    /// normalized complement, so no logarithms or floats are involved.
    pub(crate) fn locate(&self, x: &Rational) -> u32 {
        debug_assert!(x >= &Rational::zero() && x < &Rational::one());
        let m = self.tail_start();
        if x < &self.head_mass {
            // head_prefix is strictly increasing, head_prefix[0] = 0
            let idx = self.head_prefix.partition_point(|h| h <= x);
            return idx as u32;
        }
        // within the tail: (1 - x) / (1 - s) = r^k * (1 - v) with v in [0,1)
        let complement = (Rational::one() - x) / (Rational::one() - &self.head_mass);
        let mut k = 0u32;
        let mut next = self.ratio.clone();
        while next >= complement {
            k += 1;
            next *= &self.ratio;
        }
        m + k
    }

    /// Integer-only variant of [`Self::locate`] for a point `num/den` (unreduced, `den > 0`).
    ///
    /// Returns the digit `c` together with `p̂_c` and `p_c` as unreduced
    /// numerator/denominator pairs.
    pub(crate) fn locate_int(&self, num: &BigInt, den: &BigInt) -> (u32, (BigInt, BigInt), (BigInt, BigInt)) {
        let s = &self.head_mass;
        // x < s  <=>  num * s.den < s.num * den
        if num * s.denom() < s.numer() * den {
            let c = self
                .head_prefix
                .partition_point(|h| h.numer() * den <= num * h.denom()) as u32;
            let ph = &self.head_prefix[(c - 1) as usize];
            let p = &self.head[(c - 1) as usize];
            return (
                c,
                (ph.numer().clone(), ph.denom().clone()),
                (p.numer().clone(), p.denom().clone()),
            );
        }
        let rest = Rational::one() - s;
        let (un, ud) = (rest.numer(), rest.denom());
        let (rn, rd) = (self.ratio.numer(), self.ratio.denom());
        // r^(k+1) >= (1 - x)/(1 - s)  <=>  rn^(k+1) den un >= (den - num) ud rd^(k+1)
        let mut lhs = (den - num) * ud * rd;
        let mut rhs = den * un * rn;
        let mut rn_k = BigInt::one();
        let mut rd_k = BigInt::one();
        let mut k = 0u32;
        while rhs >= lhs {
            k += 1;
            rn_k *= rn;
            rd_k *= rd;
            lhs *= rd;
            rhs *= rn;
        }
        // p̂_c = 1 - (1-s) r^k,  p_c = (1-s)(1-r) r^k
        let hat_den = ud * &rd_k;
        let hat_num = &hat_den - un * &rn_k;
        let (tn, td) = (self.tail_first.numer(), self.tail_first.denom());
        (self.tail_start() + k, (hat_num, hat_den), (tn * rn_k, td * rd_k))
    }

    /// Text form in the distribution grammar.
    pub fn spec_string(&self) -> String {
        match &self.kind {
            DistributionKind::Dyadic => "dyadic".to_string(),
            DistributionKind::Geometric { q } => format!("geometric:{}", fraction_string(q)),
            DistributionKind::CustomPrefixTail { prefix, tail_ratio } => {
                let head: Vec<String> = prefix.iter().map(fraction_string).collect();
                format!("custom:{};{}", head.join(","), fraction_string(tail_ratio))
            }
        }
    }
}

fn check_index(i: u32) -> Result<()> {
    if i < 1 {
        Err(crate::error::domain("digit index must be at least 1"))
    } else {
        Ok(())
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

/// Grammar: `dyadic` | `geometric:<q>` | `custom:<p1,p2,...;r>`.
impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "dyadic" {
            return Ok(Distribution::dyadic());
        }
        if let Some(q) = s.strip_prefix("geometric:") {
            return Distribution::geometric(parse_rational(q)?);
        }
        if let Some(body) = s.strip_prefix("custom:") {
            let (head, r) = body
                .split_once(';')
                .ok_or_else(|| parse("custom distribution needs `;<ratio>`"))?;
            let prefix = if head.trim().is_empty() {
                Vec::new()
            } else {
                head.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?
            };
            return Distribution::custom(prefix, parse_rational(r)?);
        }
        Err(parse(format!("unknown distribution `{s}`")))
    }
}
