//! Local-structure diagnostics: cylinder increments, difference-quotient
//! ratios, the continuity modulus and non-monotonicity witnesses.
//!
//! The increment of `M_π` across a level-`n` cylinder with digit sum `s_n` is
//! `(-1)^n 2^(1 - s_n) / 3`, obtained here by evaluating the series at both
//! corners. A frequently quoted form of this constant, `(-1)^n / (3·2^(s_n))`,
//! is half as large; it is exposed as [`printed_increment`] only so the
//! discrepancy can be checked, never used for computation.

use num_traits::{One, Signed, Zero};

use crate::digits::DigitSeq;
use crate::distribution::Distribution;
use crate::error::{domain, Error, Result};
use crate::expansion::{encode, Cylinder};
use crate::rational::{int, pow2, pow2_neg, Rational};

use super::eval_m;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncrementReport {
    pub digits: Vec<u32>,
    pub digit_sum: u64,
    /// `M_π(sup Λ) - M_π(inf Λ)`, signed.
    pub delta_m: Rational,
    pub cylinder_measure: Rational,
    /// `|delta_m| / measure`.
    pub rho: Rational,
}

impl IncrementReport {
    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    /// `sign(delta_m) = (-1)^n`.
    pub fn sign_alternates(&self) -> bool {
        let expected_positive = self.depth().is_multiple_of(2);
        !self.delta_m.is_zero() && self.delta_m.is_positive() == expected_positive
    }

    /// `|delta_m| · 3 · 2^(s_n - 1) = 1`.
    pub fn satisfies_corner_constant(&self) -> bool {
        self.delta_m.abs() * int(3) * pow2(self.digit_sum) / int(2) == Rational::one()
    }
}

/// The increment constant in the form `(-1)^n / (3·2^(s_n))`, kept for comparison only.
pub fn printed_increment(depth: usize, digit_sum: u64) -> Rational {
    let v = pow2_neg(digit_sum) / int(3);
    if depth.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

pub fn cylinder_increment(p: &Distribution, digits: &[u32]) -> Result<IncrementReport> {
    let cyl = Cylinder::new(p, digits)?;
    let inf_seq = DigitSeq::finite(digits)?;
    let mut upper = digits.to_vec();
    *upper.last_mut().expect("nonempty") += 1;
    let sup_seq = DigitSeq::finite(&upper)?;
    let delta_m = eval_m(&sup_seq) - eval_m(&inf_seq);
    let rho = delta_m.abs() / &cyl.measure;
    Ok(IncrementReport {
        digits: digits.to_vec(),
        digit_sum: digits.iter().map(|&d| u64::from(d)).sum(),
        delta_m,
        cylinder_measure: cyl.measure,
        rho,
    })
}

/// `1 / (p_c · 2^c)`, the factor by which `ρ` changes when digit `c` is appended.
pub fn singularity_ratio_step(p: &Distribution, c: u32) -> Result<Rational> {
    let pc = p.pmf(c)?;
    Ok(Rational::one() / (pc * pow2(u64::from(c))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusCheck {
    /// Length `l` of the longest common prefix.
    pub shared: usize,
    /// `2^(1 - s_l)`.
    pub bound: Rational,
    /// `|M_π(s2) - M_π(s1)|`.
    pub actual: Rational,
}

impl ModulusCheck {
    pub fn holds(&self) -> bool {
        self.actual < self.bound
    }
}

pub fn continuity_modulus_check(s1: &DigitSeq, s2: &DigitSeq) -> Result<ModulusCheck> {
    let shared = s1
        .common_prefix_len(s2)
        .ok_or_else(|| Error::Degenerate(format!("sequences {s1} and {s2} coincide")))?;
    let s_l: u64 = s1.iter().take(shared).map(u64::from).sum();
    let bound = int(2) * pow2_neg(s_l);
    let actual = (eval_m(s2) - eval_m(s1)).abs();
    Ok(ModulusCheck {
        shared,
        bound,
        actual,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub left: DigitSeq,
    pub right: DigitSeq,
    pub x_left: Rational,
    pub x_right: Rational,
    /// `M_π(x_right) - M_π(x_left)`.
    pub delta_m: Rational,
}

impl WitnessPair {
    fn new(p: &Distribution, left: DigitSeq, right: DigitSeq) -> Self {
        WitnessPair {
            x_left: encode(p, &left),
            x_right: encode(p, &right),
            delta_m: eval_m(&right) - eval_m(&left),
            left,
            right,
        }
    }

    pub fn ordered(&self) -> bool {
        self.x_left < self.x_right
    }
}

/// Two ordered pairs of points on which `M_π` moves in opposite directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityWitness {
    /// `(1,2)^ω` vs `(2,1)^ω`: `ΔM = -4/7`.
    pub decreasing: WitnessPair,
    /// `(1,2)^ω` vs `(1,4)^ω`: `ΔM = 24/217`.
    pub increasing: WitnessPair,
}

impl MonotonicityWitness {
    pub fn verified(&self) -> bool {
        self.decreasing.ordered()
            && self.increasing.ordered()
            && self.decreasing.delta_m.is_negative()
            && self.increasing.delta_m.is_positive()
    }
}

pub fn monotonicity_witness(p: &Distribution) -> Result<MonotonicityWitness> {
    let base = DigitSeq::periodic(&[1, 2])?;
    let witness = MonotonicityWitness {
        decreasing: WitnessPair::new(p, base.clone(), DigitSeq::periodic(&[2, 1])?),
        increasing: WitnessPair::new(p, base, DigitSeq::periodic(&[1, 4])?),
    };
    if !witness.decreasing.ordered() || !witness.increasing.ordered() {
        return Err(domain(format!("witness points are not ordered under {p}")));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn seq(s: &str) -> DigitSeq {
        s.parse().unwrap()
    }

    #[test]
    fn increment_examples() {
        let d = Distribution::dyadic();
        let r = cylinder_increment(&d, &[2]).unwrap();
        assert_eq!(eval_m(&seq("3(1)")), ratio(1, 6));
        assert_eq!(eval_m(&seq("2(1)")), ratio(1, 3));
        assert_eq!(r.delta_m, ratio(-1, 6));
        assert_eq!(printed_increment(1, 2), ratio(-1, 12));
        assert_ne!(printed_increment(1, 2), r.delta_m);
        assert!(r.sign_alternates() && r.satisfies_corner_constant());

        let r = cylinder_increment(&d, &[1, 1]).unwrap();
        assert_eq!(r.delta_m, ratio(1, 6));
        assert!(r.sign_alternates());
        assert_eq!(r.rho, ratio(2, 3));
    }

    #[test]
    fn ratio_examples() {
        let d = Distribution::dyadic();
        for c in 1..20 {
            assert_eq!(singularity_ratio_step(&d, c).unwrap(), int(1));
        }
        let g = Distribution::geometric(ratio(1, 3)).unwrap();
        assert_eq!(singularity_ratio_step(&g, 1).unwrap(), ratio(3, 2));
        assert_eq!(singularity_ratio_step(&g, 3).unwrap(), ratio(27, 32));
        let a = cylinder_increment(&g, &[2, 5]).unwrap();
        let b = cylinder_increment(&g, &[2, 5, 3]).unwrap();
        assert_eq!(b.rho / a.rho, ratio(27, 32));
    }

    #[test]
    fn modulus_examples() {
        let m = continuity_modulus_check(&seq("(1,2)"), &seq("(1,4)")).unwrap();
        assert_eq!((m.shared, m.bound.clone(), m.actual.clone()), (1, int(1), ratio(24, 217)));
        let m = continuity_modulus_check(&seq("(1,2)"), &seq("(2,1)")).unwrap();
        assert_eq!((m.shared, m.bound.clone(), m.actual.clone()), (0, int(2), ratio(4, 7)));
        let m = continuity_modulus_check(&seq("5,5(1)"), &seq("5,5,3(2)")).unwrap();
        assert_eq!(m.bound, pow2_neg(9));
        assert!(m.holds());
        assert!(matches!(
            continuity_modulus_check(&seq("(1,2)"), &seq("1,2(1,2)")),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn witness_examples() {
        for p in [Distribution::dyadic(), Distribution::geometric(ratio(1, 3)).unwrap()] {
            let w = monotonicity_witness(&p).unwrap();
            assert_eq!(w.decreasing.delta_m, ratio(-4, 7));
            assert_eq!(w.increasing.delta_m, ratio(24, 217));
            assert!(w.verified());
        }
        let d = Distribution::dyadic();
        assert!(encode(&d, &seq("(1,2)")) < encode(&d, &seq("(2,1)")));
    }

    proptest! {
        #[test]
        fn increment_laws(digits in proptest::collection::vec(1u32..9, 1..10), q in 1i64..10) {
            let p = Distribution::geometric(ratio(q, 10)).unwrap();
            let r = cylinder_increment(&p, &digits).unwrap();
            prop_assert!(r.sign_alternates());
            prop_assert!(r.satisfies_corner_constant());
            prop_assert!(r.rho.is_positive());
            if digits.len() > 1 {
                let parent = cylinder_increment(&p, &digits[..digits.len() - 1]).unwrap();
                let step = singularity_ratio_step(&p, *digits.last().unwrap()).unwrap();
                prop_assert_eq!(r.rho / parent.rho, step);
            }
        }
    }
}
