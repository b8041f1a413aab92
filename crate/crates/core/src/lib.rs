//! Digit expansions of `[0,1)` induced by probability distributions on the
//! positive integers, the Minkowski-type function built on them, and the
//! classical question-mark function, all in exact rational arithmetic.
//!
//! A point `x = π_P(i_1, i_2, ...)` is addressed by its digits; `M_π(x)` is the
//! alternating dyadic series `Σ (-1)^(k-1) 2^(1 - i_1 - ... - i_k)` on those
//! digits. Eventually periodic digit sequences (and the rationals that decode
//! to them) are handled exactly; everything else gets certified enclosures.
//!
//! ```
//! use probmink::{eval_m, DigitSeq};
//! use probmink::rational::ratio;
//!
//! let x: DigitSeq = "(1,2)".parse().unwrap();
//! assert_eq!(eval_m(&x), ratio(6, 7));
//! ```

pub mod digits;
pub mod distribution;
pub mod error;
pub mod expansion;
pub mod integral;
pub mod minkowski;
pub mod rational;
pub mod series;

pub use digits::DigitSeq;
pub use distribution::{Distribution, DistributionKind};
pub use error::{Error, Result};
pub use expansion::{
    approximation_bound, decode, decode_periodic, encode, encode_enclosure, shift, Cylinder,
    DEFAULT_MAX_STEPS,
};
pub use integral::{
    alpha, gamma, integral_closed, integral_mc, integral_quadrature, ClosedForms, IntegralReport,
    McEstimate, QuadratureEnclosure, Verdict,
};
pub use minkowski::{
    continuity_modulus_check, cylinder_increment, eval_m, eval_m_enclosure, eval_m_point,
    eval_question_mark, functional_equation_residual, graph_points, ifs_maps,
    monotonicity_witness, singularity_ratio_step, AffineMap2D, IncrementReport,
};
pub use rational::Rational;
pub use series::{alt_series_exact, alt_series_periodic_closed_form, alt_series_truncated, AltSeriesValue};
