//! `∫_0^1 M_π(x) dx` three ways.
//!
//! * Closed forms in `α = Σ p_j 2^-j` and `γ = Σ p_j² 2^-j`. Two candidates are
//!   reported: `2α/(1+α)`, which follows from integrating the self-affinity
//!   relation once per first-digit cylinder, and the frequently quoted
//!   `2α/(1+γ)`, which picks up an extra factor `p_j` in that substitution.
//! * A rigorous Riemann sum over level-`n` cylinders with digits `<= D`,
//!   evaluated at each cylinder's left corner and enclosed using the
//!   continuity modulus plus the exact uncovered mass.
//! * Seeded Monte Carlo over uniform 64-bit dyadic points.
//!
//! The quadrature enclosure decides between the two closed forms.

use num_traits::{One, Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::digits::DigitSeq;
use crate::distribution::Distribution;
use crate::error::{domain, Result};
use crate::expansion::Cylinder;
use crate::minkowski::{eval_m, eval_m_enclosure};
use crate::rational::{decimal_string, fraction_string, int, pow2_neg, powi, to_f64, Rational};

/// Depth at which each Monte Carlo sample is enclosed.
pub const MC_DEPTH: usize = 64;

const MC_BATCH: u64 = 1024;

/// `Σ_{i<m} w(p_i) 2^-i` plus the geometric tail `w(t) 2^-m / (1 - w(r)/2)`,
/// with `w` the identity (for α) or squaring (for γ).
fn weighted_sum(p: &Distribution, square: bool) -> Rational {
    let w = |x: &Rational| if square { x * x } else { x.clone() };
    let mut total = Rational::zero();
    for (i, pi) in p.head().iter().enumerate() {
        total += w(pi) * pow2_neg(i as u64 + 1);
    }
    let m = u64::from(p.tail_start());
    let half = Rational::new(1.into(), 2.into());
    total + w(p.tail_first()) * pow2_neg(m) / (Rational::one() - w(p.tail_ratio()) * half)
}

/// `α = Σ_j p_j / 2^j`.
pub fn alpha(p: &Distribution) -> Rational {
    weighted_sum(p, false)
}

/// `γ = Σ_j p_j² / 2^j`.
pub fn gamma(p: &Distribution) -> Rational {
    weighted_sum(p, true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForms {
    /// `2α / (1 + γ)`.
    pub paper_value: Rational,
    /// `2α / (1 + α)`.
    pub alpha_value: Rational,
}

pub fn integral_closed(p: &Distribution) -> ClosedForms {
    let a = alpha(p);
    let g = gamma(p);
    ClosedForms {
        paper_value: int(2) * &a / (Rational::one() + g),
        alpha_value: int(2) * &a / (Rational::one() + &a),
    }
}

/// `Σ_{n=1}^{terms} (-1)^(n-1) α γ^(n-1)`, whose limit is `α / (1 + γ)`.
pub fn alternating_partial(alpha: &Rational, gamma: &Rational, terms: usize) -> Rational {
    let mut sum = Rational::zero();
    let mut term = alpha.clone();
    for n in 0..terms {
        if n % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        term *= gamma;
    }
    sum
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadratureEnclosure {
    pub depth: usize,
    pub cap: u32,
    /// `Σ |Λ| · M_π(inf Λ)` over the sampled cylinders.
    pub corner_sum: Rational,
    /// `Σ |Λ| · 2^(1 - s_n)`, bounding the deviation from the corner values.
    pub oscillation: Rational,
    /// Total measure of cylinders containing a digit above the cap.
    pub uncovered: Rational,
    pub lo: Rational,
    pub hi: Rational,
}

impl QuadratureEnclosure {
    fn from_parts(depth: usize, cap: u32, corner_sum: Rational, oscillation: Rational, uncovered: Rational) -> Self {
        // 0 < M_π <= 1, so uncovered cylinders add between 0 and their measure
        let lo = &corner_sum - &oscillation;
        let hi = &corner_sum + &oscillation + &uncovered;
        QuadratureEnclosure {
            depth,
            cap,
            corner_sum,
            oscillation,
            uncovered,
            lo,
            hi,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.hi + &self.lo) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// A priori width bound `2^(2-n) + uncovered`.
    pub fn width_bound(&self) -> Rational {
        int(4) * pow2_neg(self.depth as u64) + &self.uncovered
    }
}

fn check_quadrature_args(depth: usize, cap: u32) -> Result<()> {
    if depth == 0 || cap == 0 {
        Err(domain("depth and digit cap must be at least 1"))
    } else {
        Ok(())
    }
}

/// Rigorous cylinder quadrature at `depth` with digits capped at `cap`.
///
/// The word sum is accumulated level by level. Splitting off the first digit
/// `c` gives `M_π(c·w·1^ω) = 2^(1-c) - 2^-c M_π(w·1^ω)`, so with
/// `a = Σ_{c<=D} p_c 2^-c` and covered mass `W = p̂_{D+1}` the corner sum over
/// words of length `k` is `F_k = 2a W^(k-1) - a F_(k-1)`, `F_0 = M_π(1^ω)`. This
/// is an exact regrouping of the finite sum that [`integral_quadrature_enumerated`]
/// computes word by word.
pub fn integral_quadrature(p: &Distribution, depth: usize, cap: u32) -> Result<QuadratureEnclosure> {
    check_quadrature_args(depth, cap)?;
    let a: Rational = (1..=cap).map(|c| p.p(c) * pow2_neg(u64::from(c))).sum();
    let covered = p.prefix(cap + 1)?;
    let mut corner = eval_m(&DigitSeq::ones());
    let mut level_mass = Rational::one();
    for _ in 0..depth {
        corner = int(2) * &a * &level_mass - &a * &corner;
        level_mass *= &covered;
    }
    let oscillation = int(2) * powi(&a, depth as u64);
    let uncovered = Rational::one() - level_mass;
    Ok(QuadratureEnclosure::from_parts(depth, cap, corner, oscillation, uncovered))
}

/// The same enclosure as [`integral_quadrature`], summed word by word in parallel.
///
/// Cost is `cap^depth` series evaluations; meant for small parameters and
/// cross-checking.
pub fn integral_quadrature_enumerated(p: &Distribution, depth: usize, cap: u32) -> Result<QuadratureEnclosure> {
    check_quadrature_args(depth, cap)?;
    let count = u64::from(cap)
        .checked_pow(depth as u32)
        .filter(|&c| c <= 1 << 22)
        .ok_or_else(|| domain("too many words to enumerate"))?;
    let (corner, oscillation, mass) = (0..count)
        .into_par_iter()
        .map(|mut index| {
            let mut word = vec![1u32; depth];
            for slot in word.iter_mut().rev() {
                *slot = (index % u64::from(cap)) as u32 + 1;
                index /= u64::from(cap);
            }
            let cyl = Cylinder::new(p, &word).expect("positive digits");
            let s: u64 = word.iter().map(|&d| u64::from(d)).sum();
            let m = eval_m(&DigitSeq::finite(&word).expect("positive digits"));
            (&cyl.measure * m, &cyl.measure * int(2) * pow2_neg(s), cyl.measure)
        })
        .reduce(
            || (Rational::zero(), Rational::zero(), Rational::zero()),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2),
        );
    Ok(QuadratureEnclosure::from_parts(depth, cap, corner, oscillation, Rational::one() - mass))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub samples: u64,
    pub seed: u64,
    pub estimate: f64,
    pub std_error: f64,
}

impl McEstimate {
    /// `|estimate - target| <= k · std_error`.
    pub fn agrees_with(&self, target: f64, k: f64) -> bool {
        (self.estimate - target).abs() <= k * self.std_error
    }
}

/// The uniform dyadic sample points `k / 2^64`, in a schedule-independent order.
///
/// Batch `b` draws from ChaCha8 stream `b` of `seed`, so the sequence does not
/// depend on how the work is split across threads.
pub fn mc_points(samples: u64, seed: u64) -> Vec<Rational> {
    let batches = samples.div_ceil(MC_BATCH);
    (0..batches)
        .into_par_iter()
        .flat_map_iter(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let len = MC_BATCH.min(samples - b * MC_BATCH);
            (0..len)
                .map(move |_| Rational::new(rng.next_u64().into(), num_bigint::BigInt::one() << 64u32))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Sample mean and standard error of `M_π` at uniform points.
pub fn integral_mc(p: &Distribution, samples: u64, seed: u64) -> Result<McEstimate> {
    if samples == 0 {
        return Err(domain("at least one sample is required"));
    }
    let values: Vec<f64> = mc_points(samples, seed)
        .par_iter()
        .map(|x| eval_m_enclosure(p, x, MC_DEPTH).map(|e| to_f64(&e.midpoint())))
        .collect::<Result<_>>()?;
    // sequential two-pass reduction: identical for any thread schedule
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std_error = if values.len() > 1 {
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        samples,
        seed,
        estimate: mean,
        std_error,
    })
}

/// Which closed form the quadrature enclosure contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AlphaDenominator,
    PaperDenominator,
    Both,
    Neither,
}

impl Verdict {
    pub fn judge(enclosure: &QuadratureEnclosure, forms: &ClosedForms) -> Self {
        match (enclosure.contains(&forms.alpha_value), enclosure.contains(&forms.paper_value)) {
            (true, false) => Verdict::AlphaDenominator,
            (false, true) => Verdict::PaperDenominator,
            (true, true) => Verdict::Both,
            (false, false) => Verdict::Neither,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::AlphaDenominator => "2a/(1+a)",
            Verdict::PaperDenominator => "2a/(1+g)",
            Verdict::Both => "both",
            Verdict::Neither => "neither",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralReport {
    pub distribution: String,
    pub alpha: Rational,
    pub gamma: Rational,
    pub closed_form_alpha: Rational,
    pub closed_form_paper: Rational,
    pub quadrature: QuadratureEnclosure,
    pub mc: Option<McEstimate>,
    pub verdict: Verdict,
}

impl IntegralReport {
    /// Runs all three methods; `mc_samples = 0` skips Monte Carlo.
    pub fn compute(p: &Distribution, depth: usize, cap: u32, mc_samples: u64, seed: u64) -> Result<Self> {
        let forms = integral_closed(p);
        let quadrature = integral_quadrature(p, depth, cap)?;
        let mc = if mc_samples > 0 {
            Some(integral_mc(p, mc_samples, seed)?)
        } else {
            None
        };
        Ok(IntegralReport {
            distribution: p.spec_string(),
            alpha: alpha(p),
            gamma: gamma(p),
            verdict: Verdict::judge(&quadrature, &forms),
            closed_form_alpha: forms.alpha_value,
            closed_form_paper: forms.paper_value,
            quadrature,
            mc,
        })
    }

    /// JSON with every rational as an `a/b` string plus a decimal rendering.
    pub fn to_json(&self, precision: usize) -> Value {
        let num = |x: &Rational| json!({ "exact": fraction_string(x), "decimal": decimal_string(x, precision) });
        let q = &self.quadrature;
        let mc = self.mc.map(|m| {
            json!({
                "samples": m.samples,
                "seed": m.seed,
                "estimate": m.estimate,
                "std_error": m.std_error,
                "within_3se_of_quadrature_midpoint": m.agrees_with(to_f64(&q.midpoint()), 3.0),
            })
        });
        json!({
            "distribution": self.distribution,
            "alpha": num(&self.alpha),
            "gamma": num(&self.gamma),
            "closed_form_alpha": num(&self.closed_form_alpha),
            "closed_form_paper": num(&self.closed_form_paper),
            "quadrature": {
                "depth": q.depth,
                "cap": q.cap,
                "corner_sum": num(&q.corner_sum),
                "oscillation": num(&q.oscillation),
                "uncovered": num(&q.uncovered),
                "lo": num(&q.lo),
                "hi": num(&q.hi),
                "width": num(&q.width()),
            },
            "monte_carlo": mc,
            "verdict": self.verdict.label(),
        })
    }
}

/// Absolute gap between a closed form and the quadrature midpoint.
pub fn distance_to_midpoint(q: &QuadratureEnclosure, x: &Rational) -> Rational {
    (q.midpoint() - x).abs()
}
