//! The affine maps `ψ_t(x, y) = (p̂_t + p_t x, 2^-t (1 - y))` and graph sampling.
//!
//! The y-part of `ψ_t` is the functional equation for `h = M_π / 2`, whose
//! value on the all-ones tail is `1/3`. On `M_π` itself the matching relation
//! is `M_π(t·s) = 2^-t (2 - M_π(s))`. Graph points are therefore reported as
//! `(x, M_π(x))` and [`ifs_image`] acts on the `h`-scaled graph.

use num_traits::One;
use rayon::prelude::*;

use crate::digits::DigitSeq;
use crate::distribution::Distribution;
use crate::error::{domain, Result};
use crate::expansion::encode;
use crate::rational::{powi, pow2_neg, Rational};

use super::eval_m;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap2D {
    pub t: u32,
    pub x_scale: Rational,
    pub x_offset: Rational,
    pub y_scale: Rational,
    pub y_offset: Rational,
}

impl AffineMap2D {
    pub fn new(p: &Distribution, t: u32) -> Result<Self> {
        let y = pow2_neg(u64::from(t));
        Ok(AffineMap2D {
            t,
            x_scale: p.pmf(t)?,
            x_offset: p.prefix(t)?,
            y_scale: -y.clone(),
            y_offset: y,
        })
    }

    pub fn apply(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        (
            &self.x_offset + &self.x_scale * x,
            &self.y_offset + &self.y_scale * y,
        )
    }

    /// Unique fixed point; exists since both scales are contractions.
    pub fn fixed_point(&self) -> (Rational, Rational) {
        (
            &self.x_offset / (Rational::one() - &self.x_scale),
            &self.y_offset / (Rational::one() - &self.y_scale),
        )
    }
}

/// `ψ_1, ..., ψ_{t_max}`.
pub fn ifs_maps(p: &Distribution, t_max: u32) -> Result<Vec<AffineMap2D>> {
    if t_max == 0 {
        return Err(domain("t_max must be at least 1"));
    }
    (1..=t_max).map(|t| AffineMap2D::new(p, t)).collect()
}

/// `ψ_{t_1} ∘ ... ∘ ψ_{t_n}` applied to `(x, y)`.
pub fn ifs_image(p: &Distribution, word: &[u32], x: &Rational, y: &Rational) -> Result<(Rational, Rational)> {
    let mut pt = (x.clone(), y.clone());
    for &t in word.iter().rev() {
        pt = AffineMap2D::new(p, t)?.apply(&pt.0, &pt.1);
    }
    Ok(pt)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphPoints {
    /// `(x, M_π(x))` in lexicographic order of digit words.
    pub points: Vec<(Rational, Rational)>,
    /// Lebesgue measure of the level-`depth` cylinders not sampled because some digit exceeds the cap.
    pub uncovered_measure: Rational,
}

/// Points `(encode(w·1^ω), M_π(w·1^ω))` for every word `w` of length `depth` over `1..=cap`.
pub fn graph_points(p: &Distribution, depth: usize, cap: u32) -> Result<GraphPoints> {
    if depth == 0 || cap == 0 {
        return Err(domain("depth and digit cap must be at least 1"));
    }
    let count = u64::from(cap)
        .checked_pow(depth as u32)
        .filter(|&c| c <= 1 << 24)
        .ok_or_else(|| domain("too many graph points requested"))?;
    let points = (0..count)
        .into_par_iter()
        .map(|index| {
            let word = word_at(index, depth, cap);
            let s = DigitSeq::finite(&word).expect("positive digits");
            (encode(p, &s), eval_m(&s))
        })
        .collect();
    let covered = powi(&p.prefix(cap + 1)?, depth as u64);
    Ok(GraphPoints {
        points,
        uncovered_measure: Rational::one() - covered,
    })
}

/// The `index`-th word of length `depth` over `1..=cap`, in lexicographic order.
fn word_at(mut index: u64, depth: usize, cap: u32) -> Vec<u32> {
    let mut word = vec![1u32; depth];
    for slot in word.iter_mut().rev() {
        *slot = (index % u64::from(cap)) as u32 + 1;
        index /= u64::from(cap);
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn map_coefficients() {
        let d = Distribution::dyadic();
        let psi1 = &ifs_maps(&d, 1).unwrap()[0];
        assert_eq!(psi1.x_offset, int(0));
        assert_eq!(psi1.x_scale, ratio(1, 2));
        assert_eq!(psi1.y_offset, ratio(1, 2));
        assert_eq!(psi1.y_scale, ratio(-1, 2));
        let g = Distribution::geometric(ratio(1, 3)).unwrap();
        let psi2 = &ifs_maps(&g, 2).unwrap()[1];
        assert_eq!((psi2.x_offset.clone(), psi2.x_scale.clone()), (ratio(1, 3), ratio(2, 9)));
        assert_eq!((psi2.y_offset.clone(), psi2.y_scale.clone()), (ratio(1, 4), ratio(-1, 4)));
        assert!(ifs_maps(&d, 0).is_err());
    }

    #[test]
    fn psi1_fixed_point_is_the_h_base_point() {
        let psi1 = AffineMap2D::new(&Distribution::dyadic(), 1).unwrap();
        assert_eq!(psi1.fixed_point(), (int(0), ratio(1, 3)));
        assert_eq!(eval_m(&DigitSeq::ones()) / int(2), ratio(1, 3));
    }

    #[test]
    fn graph_examples() {
        let d = Distribution::dyadic();
        let g = graph_points(&d, 1, 2).unwrap();
        assert_eq!(g.points, vec![(int(0), ratio(2, 3)), (ratio(1, 2), ratio(1, 3))]);
        assert_eq!(g.uncovered_measure, ratio(1, 4));
        assert_eq!(graph_points(&d, 3, 4).unwrap().points.len(), 64);
    }

    #[test]
    fn graph_points_are_ifs_images_of_the_base_point_for_h() {
        let p = Distribution::geometric(ratio(1, 3)).unwrap();
        let depth = 3;
        let cap = 3;
        let g = graph_points(&p, depth, cap).unwrap();
        for (index, (x, y)) in g.points.iter().enumerate() {
            let word = word_at(index as u64, depth, cap);
            let (ix, iy) = ifs_image(&p, &word, &int(0), &ratio(1, 3)).unwrap();
            assert_eq!(&ix, x);
            assert_eq!(iy * int(2), y.clone());
        }
    }

    #[test]
    fn word_order_is_lexicographic() {
        assert_eq!(word_at(0, 2, 3), vec![1, 1]);
        assert_eq!(word_at(1, 2, 3), vec![1, 2]);
        assert_eq!(word_at(3, 2, 3), vec![2, 1]);
        assert_eq!(word_at(8, 2, 3), vec![3, 3]);
    }
}
