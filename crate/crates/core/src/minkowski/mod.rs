//! The Minkowski-type function `M_π` and its relatives.
//!
//! `M_π(x)` is the alternating dyadic series evaluated on the expansion digits
//! of `x`. It depends on the distribution only through the decoding of `x`;
//! on a digit sequence it is distribution-free.

mod diagnostics;
mod ifs;
mod question_mark;

pub use diagnostics::{
    continuity_modulus_check, cylinder_increment, monotonicity_witness, printed_increment,
    singularity_ratio_step, IncrementReport, ModulusCheck, MonotonicityWitness, WitnessPair,
};
pub use ifs::{graph_points, ifs_image, ifs_maps, AffineMap2D, GraphPoints};
pub use question_mark::{continued_fraction, eval_question_mark, question_mark_from_cf};

use num_traits::{One, Zero};

use crate::digits::DigitSeq;
use crate::distribution::Distribution;
use crate::error::{domain, Result};
use crate::expansion::{decode, decode_periodic, encode, shift, DEFAULT_MAX_STEPS};
use crate::rational::{pow2_neg, Rational};
use crate::series::{alt_series_exact, enclose_prefix, AltSeriesValue};

/// `M_π` on a digit sequence.
pub fn eval_m(s: &DigitSeq) -> Rational {
    alt_series_exact(s)
}

/// `M_π(x)` for a rational point, via periodic decoding.
///
/// Returns [`crate::Error::PeriodNotDetected`] when the expansion of `x` does not
/// cycle within the default budget; [`eval_m_enclosure`] works for every `x`.
pub fn eval_m_point(p: &Distribution, x: &Rational) -> Result<Rational> {
    eval_m_point_with_budget(p, x, DEFAULT_MAX_STEPS)
}

pub fn eval_m_point_with_budget(p: &Distribution, x: &Rational, max_steps: usize) -> Result<Rational> {
    let s = decode_periodic(p, x, max_steps)?;
    Ok(eval_m(&s))
}

/// Enclosure of `M_π(x)` from the first `depth` digits of `x`; width `<= 2^-depth`.
pub fn eval_m_enclosure(p: &Distribution, x: &Rational, depth: usize) -> Result<AltSeriesValue> {
    if depth == 0 {
        return Err(domain("depth must be at least 1"));
    }
    let (digits, _) = decode(p, x, depth)?;
    Ok(enclose_prefix(&digits))
}

/// Residuals `h(σ^k x) - 2^(-i_{k+1}) (1 - h(σ^{k+1} x))` for `k = 0..n`, with `h = M_π / 2`.
///
/// The points `σ^k x` are produced by applying the shift map to `x = encode(s)`
/// numerically, and `h` is evaluated on each by decoding it afresh, so the
/// check does not reuse the symbolic digit sequence.
pub fn functional_equation_residual(p: &Distribution, s: &DigitSeq, n: usize) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(domain("depth must be at least 1"));
    }
    let half = Rational::new(1.into(), 2.into());
    let mut point = encode(p, s);
    let mut h_here = eval_m_point(p, &point)? * &half;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let (digit, next) = shift(p, &point)?;
        let h_next = eval_m_point(p, &next)? * &half;
        let rhs = pow2_neg(u64::from(digit)) * (Rational::one() - &h_next);
        out.push(&h_here - rhs);
        point = next;
        h_here = h_next;
    }
    Ok(out)
}

/// True when every residual vanishes.
pub fn residuals_vanish(residuals: &[Rational]) -> bool {
    residuals.iter().all(Zero::is_zero)
}
