//! Acceptance criteria for the `probmink` library.
//!
//! Each criterion is a deterministic check (fixed seeds) returning an
//! [`Outcome`]. The `acceptance` test target and the CLI `selftest` command run
//! the same list.

pub mod oracle;

use std::time::Instant;

use num_traits::{One, Signed, Zero};
use probmink::integral::{alternating_partial, mc_points};
use probmink::minkowski::{printed_increment, residuals_vanish};
use probmink::rational::{int, pow2, pow2_neg, ratio, to_f64, Rational};
use probmink::{
    alpha, alt_series_exact, alt_series_periodic_closed_form, continuity_modulus_check,
    cylinder_increment, decode, encode, eval_m, eval_m_point, eval_question_mark,
    functional_equation_residual, gamma, graph_points, ifs_maps, integral_closed, integral_mc,
    integral_quadrature, monotonicity_witness, shift, singularity_ratio_step, Cylinder, DigitSeq,
    Distribution, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2}. {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

type Check = fn() -> Result<String, String>;

pub const CRITERIA: [(u8, &str, Check); 12] = [
    (1, "fixture exactness", fixture_exactness),
    (2, "periodic closed form", periodic_closed_form),
    (3, "functional equation", functional_equation),
    (4, "codec round-trip", codec_round_trip),
    (5, "cylinder laws", cylinder_laws),
    (6, "increment oracle", increment_oracle),
    (7, "ratio formula", ratio_formula),
    (8, "continuity modulus", continuity_modulus),
    (9, "non-monotonicity witnesses", non_monotonicity),
    (10, "integral adjudication", integral_adjudication),
    (11, "question-mark cross-checks", question_mark),
    (12, "IFS and graph", ifs_graph),
];

pub fn run(id: u8, name: &'static str, check: Check) -> Outcome {
    let start = Instant::now();
    let result = std::panic::catch_unwind(check).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome {
        id,
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(|&(id, name, check)| run(id, name, check)).collect()
}

/// The three built-in families exercised by the suite.
pub fn families() -> Vec<Distribution> {
    vec![
        Distribution::dyadic(),
        Distribution::geometric(ratio(1, 3)).unwrap(),
        Distribution::custom(vec![ratio(1, 10)], ratio(1, 2)).unwrap(),
    ]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_seq(rng: &mut ChaCha8Rng, max_pre: usize, max_per: usize, max_digit: u32) -> DigitSeq {
    let pre_len = rng.random_range(0..=max_pre);
    let per_len = rng.random_range(1..=max_per);
    let pre = (0..pre_len).map(|_| rng.random_range(1..=max_digit)).collect();
    let per = (0..per_len).map(|_| rng.random_range(1..=max_digit)).collect();
    DigitSeq::new(pre, per).unwrap()
}

fn random_unit_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den: u64 = rng.random_range(1..=1_000_000_000);
    let num: u64 = rng.random_range(0..den);
    Rational::new(num.into(), den.into())
}

fn fixture_exactness() -> Result<String, String> {
    let fixtures = [("(1,2)", ratio(6, 7)), ("(2,1)", ratio(2, 7)), ("(1,4)", ratio(30, 31)), ("(1)", ratio(2, 3))];
    for (text, expected) in &fixtures {
        let s: DigitSeq = text.parse().unwrap();
        let got = eval_m(&s);
        ensure(&got == expected, || format!("M{text} = {got}, expected {expected}"))?;
        let (lo, hi) = oracle::series_bracket(&s, 120);
        ensure(lo <= got && got <= hi, || format!("M{text} outside brute-force bracket"))?;
    }
    Ok("M(1,2)=6/7, M(2,1)=2/7, M(1,4)=30/31, M(1)=2/3 exactly".into())
}

fn periodic_closed_form() -> Result<String, String> {
    for v in 1..=8u32 {
        for w in 1..=8u32 {
            let formula = Rational::new(
                (2 * ((1i64 << w) - 1)).into(),
                ((1i64 << (v + w)) - 1).into(),
            );
            let s = DigitSeq::periodic(&[v, w]).unwrap();
            let got = alt_series_exact(&s);
            ensure(got == formula, || format!("({v},{w}): series {got} vs formula {formula}"))?;
            ensure(alt_series_periodic_closed_form(v, w) == formula, || format!("({v},{w}) named form"))?;
        }
    }
    Ok("64/64 pairs (v,w) in [1,8]^2 exact".into())
}

fn functional_equation() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let fams = families();
    let mut total = 0usize;
    for trial in 0..500 {
        let p = &fams[trial % fams.len()];
        let s = random_seq(&mut rng, 6, 3, 6);
        let depth = rng.random_range(1..=10);
        let r = functional_equation_residual(p, &s, depth).map_err(|e| e.to_string())?;
        ensure(r.len() == depth && residuals_vanish(&r), || format!("nonzero residual for {s} under {p}: {r:?}"))?;
        // the numerically shifted orbit matches the symbolic shift
        let mut x = encode(p, &s);
        for k in 0..depth {
            x = shift(p, &x).map_err(|e| e.to_string())?.1;
            ensure(x == encode(p, &s.shift_by(k + 1)), || format!("orbit mismatch for {s}"))?;
        }
        total += depth;
    }
    Ok(format!("500 triples, {total} residuals, all exactly zero"))
}

fn codec_round_trip() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in families() {
        for _ in 0..200 {
            let s = random_seq(&mut rng, 8, 4, 9);
            let x = encode(&p, &s);
            ensure(x >= int(0) && x < int(1), || format!("encode({s}) = {x} outside [0,1)"))?;
            let (digits, _) = decode(&p, &x, 30).map_err(|e| e.to_string())?;
            ensure(digits == s.take(30), || format!("round trip failed for {s} under {p}"))?;
        }
        for _ in 0..200 {
            let x = random_unit_rational(&mut rng);
            let (c, sx) = shift(&p, &x).map_err(|e| e.to_string())?;
            let rebuilt = p.prefix(c).unwrap() + p.pmf(c).unwrap() * &sx;
            ensure(rebuilt == x && sx >= int(0) && sx < int(1), || format!("shift identity failed at {x} under {p}"))?;
        }
    }
    Ok("3 families x 200 sequences (30 digits) and 200 shift identities exact".into())
}

fn cylinder_laws() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fams = families();
    for trial in 0..100 {
        let p = &fams[trial % fams.len()];
        let depth = rng.random_range(1..=10);
        let prefix: Vec<u32> = (0..depth).map(|_| rng.random_range(1..=7)).collect();
        let cyl = Cylinder::new(p, &prefix).map_err(|e| e.to_string())?;
        let product = oracle::product_of_pmf(p, &prefix);
        ensure(&cyl.sup - &cyl.inf == product && cyl.measure == product, || format!("measure of {prefix:?}"))?;
        ensure(cyl.inf == oracle::cylinder_inf(p, &prefix), || format!("inf of {prefix:?}"))?;
        let cap = 6;
        let mut mass = Rational::zero();
        for c in 1..=cap {
            let child = cyl.child(p, c).map_err(|e| e.to_string())?;
            ensure(child.inf >= cyl.inf && child.sup <= cyl.sup, || format!("child {c} of {prefix:?} escapes"))?;
            mass += child.measure;
        }
        let tail = (Rational::one() - p.prefix(cap + 1).unwrap()) * &cyl.measure;
        ensure(mass + tail == cyl.measure, || format!("children of {prefix:?} do not partition"))?;
    }
    Ok("100 prefixes to depth 10: measure, endpoints, nesting, partition exact".into())
}

fn increment_oracle() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let fams = families();
    for trial in 0..100 {
        let p = &fams[trial % fams.len()];
        let depth = rng.random_range(1..=10);
        let digits: Vec<u32> = (0..depth).map(|_| rng.random_range(1..=8)).collect();
        let r = cylinder_increment(p, &digits).map_err(|e| e.to_string())?;
        // corner values by brute-force brackets
        let mut upper = digits.clone();
        *upper.last_mut().unwrap() += 1;
        let (lo_a, hi_a) = oracle::series_bracket(&DigitSeq::finite(&digits).unwrap(), 150);
        let (lo_b, hi_b) = oracle::series_bracket(&DigitSeq::finite(&upper).unwrap(), 150);
        ensure(&lo_b - &hi_a <= r.delta_m && r.delta_m <= &hi_b - &lo_a, || format!("delta outside oracle bracket for {digits:?}"))?;
        let expected_sign = if depth % 2 == 0 { 1 } else { -1 };
        ensure(r.delta_m.signum() == int(expected_sign), || format!("sign for {digits:?}"))?;
        let normalized = r.delta_m.abs() * int(3) * pow2(r.digit_sum) / int(2);
        ensure(normalized.is_one(), || format!("|dM| 3 2^(s-1) = {normalized} for {digits:?}"))?;
        let printed = printed_increment(depth, r.digit_sum);
        ensure(printed * int(2) == r.delta_m, || format!("printed constant not off by exactly 2 for {digits:?}"))?;
    }
    let two = cylinder_increment(&Distribution::dyadic(), &[2]).unwrap();
    ensure(two.delta_m == ratio(-1, 6), || format!("digits [2]: {}", two.delta_m))?;
    ensure(printed_increment(1, 2) == ratio(-1, 12), || "printed constant at [2]".into())?;
    Ok("100 cylinders: sign (-1)^n, |dM|*3*2^(s_n-1)=1; printed (-1)^n/(3*2^s_n) is half the direct value ([2]: -1/6 vs -1/12)".into())
}

fn ratio_formula() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fams = families();
    for trial in 0..100 {
        let p = &fams[trial % fams.len()];
        let depth = rng.random_range(2..=10);
        let digits: Vec<u32> = (0..depth).map(|_| rng.random_range(1..=8)).collect();
        let outer = cylinder_increment(p, &digits[..depth - 1]).map_err(|e| e.to_string())?;
        let inner = cylinder_increment(p, &digits).map_err(|e| e.to_string())?;
        let c = digits[depth - 1];
        let formula = Rational::one() / (p.pmf(c).unwrap() * pow2(u64::from(c)));
        let observed = &inner.rho / &outer.rho;
        ensure(observed == formula, || format!("ratio {observed} vs {formula} for {digits:?}"))?;
        ensure(singularity_ratio_step(p, c).unwrap() == formula, || "library step".into())?;
        if trial % fams.len() == 0 {
            ensure(observed.is_one(), || "dyadic ratio not 1".into())?;
        }
    }
    Ok("100 nested pairs exact; dyadic ratio identically 1".into())
}

fn continuity_modulus() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let l = rng.random_range(0..=8);
        let shared: Vec<u32> = (0..l).map(|_| rng.random_range(1..=6)).collect();
        let a = random_seq(&mut rng, 4, 3, 6);
        let mut b = random_seq(&mut rng, 4, 3, 6);
        while b.digit(0) == a.digit(0) {
            b = random_seq(&mut rng, 4, 3, 6);
        }
        let join = |head: &[u32], s: &DigitSeq| {
            let mut pre = head.to_vec();
            pre.extend_from_slice(s.preperiod());
            DigitSeq::new(pre, s.period().to_vec()).unwrap()
        };
        let (s1, s2) = (join(&shared, &a), join(&shared, &b));
        let m = continuity_modulus_check(&s1, &s2).map_err(|e| e.to_string())?;
        let s_l: u64 = shared.iter().map(|&d| u64::from(d)).sum();
        ensure(m.shared == l, || format!("shared prefix {} vs {l}", m.shared))?;
        ensure(m.bound == int(2) * pow2_neg(s_l), || "bound".into())?;
        ensure(m.actual < m.bound, || format!("|dM| = {} not below {} for {s1} / {s2}", m.actual, m.bound))?;
    }
    Ok("200 pairs with forced shared prefixes: |dM| < 2^(1-s_l) strictly".into())
}

fn non_monotonicity() -> Result<String, String> {
    for p in families() {
        let w = monotonicity_witness(&p).map_err(|e| e.to_string())?;
        ensure(w.decreasing.delta_m == ratio(-4, 7), || format!("pair A under {p}"))?;
        ensure(w.increasing.delta_m == ratio(24, 217), || format!("pair B under {p}"))?;
        ensure(w.decreasing.x_left < w.decreasing.x_right, || format!("pair A order under {p}"))?;
        ensure(w.increasing.x_left < w.increasing.x_right, || format!("pair B order under {p}"))?;
    }
    Ok("dM = -4/7 and +24/217 with x1 < x2 under all 3 families".into())
}

fn integral_adjudication() -> Result<String, String> {
    let cases = [
        (Distribution::dyadic(), ratio(1, 2), ratio(7, 12)),
        (Distribution::geometric(ratio(1, 3)).unwrap(), ratio(2, 5), ratio(7, 15)),
    ];
    let mut notes = Vec::new();
    for (p, alpha_form, printed_form) in cases {
        let forms = integral_closed(&p);
        ensure(forms.alpha_value == alpha_form && forms.paper_value == printed_form, || format!("closed forms for {p}"))?;
        // the printed form is twice the limit of the alternating series in α, γ
        let (a, g) = (alpha(&p), gamma(&p));
        let partial = alternating_partial(&a, &g, 80);
        ensure(((int(2) * partial) - &printed_form).abs() < pow2_neg(100), || "alternating series".into())?;

        let q = integral_quadrature(&p, 14, 40).map_err(|e| e.to_string())?;
        ensure(q.width() <= pow2_neg(12) + &q.uncovered, || format!("width {} too large", to_f64(&q.width())))?;
        let hits = [q.contains(&alpha_form), q.contains(&printed_form)];
        ensure(hits.iter().filter(|&&h| h).count() == 1, || format!("enclosure holds {hits:?} of the candidates"))?;
        let verdict = Verdict::judge(&q, &forms);

        let mc = integral_mc(&p, 100_000, 42).map_err(|e| e.to_string())?;
        let mid = to_f64(&q.midpoint());
        ensure(mc.agrees_with(mid, 3.0), || {
            format!("MC {} +- {} vs midpoint {mid}", mc.estimate, mc.std_error)
        })?;
        ensure(mc_points(100_000, 42).len() == 100_000, || "sample count".into())?;
        notes.push(format!(
            "{p}: [{:.12}, {:.12}] -> {} (MC {:.5}+-{:.5})",
            to_f64(&q.lo),
            to_f64(&q.hi),
            verdict.label(),
            mc.estimate,
            mc.std_error
        ));
    }
    Ok(notes.join("; "))
}

fn question_mark() -> Result<String, String> {
    let fixtures = [(int(0), int(0)), (int(1), int(1)), (ratio(1, 2), ratio(1, 2)), (ratio(1, 3), ratio(1, 4)), (ratio(2, 5), ratio(3, 8))];
    for (x, y) in &fixtures {
        let got = eval_question_mark(x).map_err(|e| e.to_string())?;
        ensure(&got == y, || format!("?({x}) = {got}, expected {y}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let den: i64 = rng.random_range(2..=100_000);
        let x = ratio(rng.random_range(1..den), den);
        let cf = probmink::minkowski::continued_fraction(&x).map_err(|e| e.to_string())?;
        ensure(oracle::cf_value(&cf) == x, || format!("CF of {x} does not reconstruct"))?;
        let mut alt = cf.clone();
        *alt.last_mut().unwrap() -= 1;
        alt.push(1);
        ensure(oracle::cf_value(&alt) == x, || "alternative CF".into())?;
        ensure(
            probmink::minkowski::question_mark_from_cf(&alt) == eval_question_mark(&x).unwrap(),
            || format!("CF forms disagree at {x}"),
        )?;
    }
    for _ in 0..200 {
        let (a, b) = (random_unit_rational(&mut rng), random_unit_rational(&mut rng));
        if a == b {
            continue;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        ensure(
            eval_question_mark(&lo).unwrap() < eval_question_mark(&hi).unwrap(),
            || format!("? not increasing on {lo} < {hi}"),
        )?;
    }
    Ok("fixtures exact; 200 CF-form invariances; 200 ordered pairs strictly increasing".into())
}

fn ifs_graph() -> Result<String, String> {
    for p in families() {
        let g = graph_points(&p, 3, 4).map_err(|e| e.to_string())?;
        ensure(g.points.len() == 64, || format!("{} points", g.points.len()))?;
        for (x, y) in &g.points {
            let direct = eval_m_point(&p, x).map_err(|e| e.to_string())?;
            ensure(&direct == y, || format!("y != M(x) at x = {x} under {p}"))?;
        }
        for (t, map) in ifs_maps(&p, 10).map_err(|e| e.to_string())?.iter().enumerate() {
            let t = t as u32 + 1;
            ensure(map.x_offset == p.prefix(t).unwrap() && map.x_scale == p.pmf(t).unwrap(), || format!("psi_{t} x-part"))?;
            ensure(map.y_offset == pow2_neg(u64::from(t)) && map.y_scale == -pow2_neg(u64::from(t)), || format!("psi_{t} y-part"))?;
        }
    }
    let d1 = &ifs_maps(&Distribution::dyadic(), 1).unwrap()[0];
    ensure(d1.x_offset.is_zero() && d1.x_scale == ratio(1, 2) && d1.y_offset == ratio(1, 2), || "psi_1 dyadic".into())?;
    let g2 = &ifs_maps(&Distribution::geometric(ratio(1, 3)).unwrap(), 2).unwrap()[1];
    ensure(g2.x_offset == ratio(1, 3) && g2.x_scale == ratio(2, 9) && g2.y_offset == ratio(1, 4), || "psi_2 geometric".into())?;
    Ok("3 x 64 graph points satisfy y = M(x) exactly; psi_t coefficients match".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_bracket_contains_exact_value() {
        let s: DigitSeq = "2,1(3,1)".parse().unwrap();
        let (lo, hi) = oracle::series_bracket(&s, 20);
        let exact = eval_m(&s);
        assert!(lo <= exact && exact <= hi);
    }

    #[test]
    fn failing_check_is_reported() {
        fn bad() -> Result<String, String> {
            Err("nope".into())
        }
        fn boom() -> Result<String, String> {
            panic!("kaboom")
        }
        assert!(!run(99, "bad", bad).passed);
        let o = run(98, "boom", boom);
        assert!(!o.passed && o.detail.contains("kaboom"));
    }
}
