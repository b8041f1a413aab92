use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use probmink::integral::alternating_partial;
use probmink::minkowski::printed_increment;
use probmink::rational::{decimal_string, fraction_string, parse_rational, to_f64, Rational};
use probmink::{
    cylinder_increment, decode_periodic, eval_m, eval_m_enclosure, eval_m_point,
    eval_question_mark, graph_points, integral_closed, integral_mc,
    singularity_ratio_step, DigitSeq, Distribution, Error, IntegralReport,
};
use serde_json::json;

use crate::output::{digits_string, exact_json, print_json, print_value};
use crate::{Common, Format, Method};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(String),
    SelfTest(usize),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::SelfTest(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Domain(m) => f.write_str(m),
            CliError::SelfTest(n) => write!(f, "{n} acceptance criteria failed"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidDistribution(_) => CliError::Parse(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<(), CliError>;

fn dist(text: &str) -> Result<Distribution, CliError> {
    Ok(text.parse::<Distribution>()?)
}

fn digits(text: &str) -> Result<DigitSeq, CliError> {
    Ok(text.parse::<DigitSeq>()?)
}

fn finite_digits(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|d| match d.trim().parse::<u32>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(CliError::Parse(format!("bad digit `{d}` in `{text}`"))),
        })
        .collect()
}

fn rational(text: &str) -> Result<Rational, CliError> {
    Ok(parse_rational(text)?)
}

pub fn eval(dist_text: &str, seq: Option<&str>, x: Option<&str>, enclose: Option<usize>, common: &Common) -> CliResult {
    let p = dist(dist_text)?;
    let precision = common.precision as usize;
    if let Some(text) = seq {
        let s = digits(text)?;
        let value = eval_m(&s);
        return emit_value(&value, precision, common.format, json!({ "digits": s.to_string() }));
    }
    let x = rational(x.expect("clap enforces --digits or --x"))?;
    if let Some(depth) = enclose {
        let e = eval_m_enclosure(&p, &x, depth)?;
        match common.format {
            Format::Json => print_json(&json!({
                "x": fraction_string(&x),
                "depth": depth,
                "lower": exact_json(&e.lower, precision),
                "upper": exact_json(&e.upper, precision),
                "width": exact_json(&e.width(), precision),
            })),
            _ => {
                println!("{} {}", fraction_string(&e.lower), fraction_string(&e.upper));
                println!("{} {}", decimal_string(&e.lower, precision), decimal_string(&e.upper, precision));
            }
        }
        return Ok(());
    }
    let value = eval_m_point(&p, &x).map_err(|e| match e {
        Error::PeriodNotDetected { steps, .. } => CliError::Domain(format!(
            "no period within {steps} digits of {}; rerun with --enclose <depth>",
            fraction_string(&x)
        )),
        other => other.into(),
    })?;
    emit_value(&value, precision, common.format, json!({ "x": fraction_string(&x) }))
}

fn emit_value(value: &Rational, precision: usize, format: Format, mut context: serde_json::Value) -> CliResult {
    match format {
        Format::Json => {
            context["value"] = exact_json(value, precision);
            print_json(&context);
        }
        Format::Csv => {
            println!("value_rational,value_decimal");
            println!("{},{}", fraction_string(value), decimal_string(value, precision));
        }
        Format::Plain => print_value(value, precision),
    }
    Ok(())
}

pub fn encode(dist_text: &str, seq: &str, common: &Common) -> CliResult {
    let p = dist(dist_text)?;
    let s = digits(seq)?;
    let x = probmink::encode(&p, &s);
    emit_value(&x, common.precision as usize, common.format, json!({ "digits": s.to_string() }))
}

pub fn decode(dist_text: &str, x: &str, depth: usize, max_steps: usize, common: &Common) -> CliResult {
    let p = dist(dist_text)?;
    let x = rational(x)?;
    let (prefix, remainder) = probmink::decode(&p, &x, depth)?;
    let periodic = match decode_periodic(&p, &x, max_steps) {
        Ok(s) => Some(s),
        Err(Error::PeriodNotDetected { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let precision = common.precision as usize;
    match common.format {
        Format::Json => print_json(&json!({
            "x": fraction_string(&x),
            "digits": prefix,
            "remainder": exact_json(&remainder, precision),
            "periodic": periodic.as_ref().map(ToString::to_string),
        })),
        _ => {
            println!("digits: {}", digits_string(&prefix));
            println!("remainder: {}", fraction_string(&remainder));
            match periodic {
                Some(s) => println!("periodic: {s}"),
                None => println!("periodic: not detected within {max_steps} steps"),
            }
        }
    }
    Ok(())
}

pub fn qmark(x: &str, common: &Common) -> CliResult {
    let x = rational(x)?;
    let value = eval_question_mark(&x)?;
    emit_value(&value, common.precision as usize, common.format, json!({ "x": fraction_string(&x) }))
}

pub fn integral(
    dist_text: &str,
    method: Method,
    depth: usize,
    cap: u32,
    samples: u64,
    seed: u64,
    common: &Common,
) -> CliResult {
    let p = dist(dist_text)?;
    let precision = common.precision as usize;
    match method {
        Method::All | Method::Quad => {
            let samples = if method == Method::All { samples } else { 0 };
            let report = IntegralReport::compute(&p, depth, cap, samples, seed)?;
            match common.format {
                Format::Json => print_json(&report.to_json(precision)),
                _ => print_report(&report, precision),
            }
        }
        Method::Closed => {
            let forms = integral_closed(&p);
            let (a, g) = (probmink::alpha(&p), probmink::gamma(&p));
            match common.format {
                Format::Json => print_json(&json!({
                    "alpha": exact_json(&a, precision),
                    "gamma": exact_json(&g, precision),
                    "closed_form_alpha": exact_json(&forms.alpha_value, precision),
                    "closed_form_paper": exact_json(&forms.paper_value, precision),
                    "alternating_partial_64": exact_json(&alternating_partial(&a, &g, 64), precision),
                })),
                _ => {
                    println!("alpha: {}", fraction_string(&a));
                    println!("gamma: {}", fraction_string(&g));
                    println!("2a/(1+a): {}", fraction_string(&forms.alpha_value));
                    println!("2a/(1+g): {}", fraction_string(&forms.paper_value));
                }
            }
        }
        Method::Mc => {
            let mc = integral_mc(&p, samples, seed)?;
            match common.format {
                Format::Json => print_json(&json!({
                    "samples": mc.samples, "seed": mc.seed,
                    "estimate": mc.estimate, "std_error": mc.std_error,
                })),
                _ => println!("{} +- {} ({} samples, seed {})", mc.estimate, mc.std_error, mc.samples, mc.seed),
            }
        }
    }
    Ok(())
}

fn print_report(r: &IntegralReport, precision: usize) {
    let q = &r.quadrature;
    println!("distribution: {}", r.distribution);
    println!("alpha: {} = {}", fraction_string(&r.alpha), decimal_string(&r.alpha, precision));
    println!("gamma: {} = {}", fraction_string(&r.gamma), decimal_string(&r.gamma, precision));
    println!("2a/(1+a): {} = {}", fraction_string(&r.closed_form_alpha), decimal_string(&r.closed_form_alpha, precision));
    println!("2a/(1+g): {} = {}", fraction_string(&r.closed_form_paper), decimal_string(&r.closed_form_paper, precision));
    println!(
        "quadrature (depth {}, cap {}): [{}, {}]",
        q.depth,
        q.cap,
        decimal_string(&q.lo, precision),
        decimal_string(&q.hi, precision)
    );
    println!("quadrature width: {}", decimal_string(&q.width(), precision));
    if let Some(mc) = r.mc {
        let sigmas = (mc.estimate - to_f64(&q.midpoint())).abs() / mc.std_error;
        println!(
            "monte carlo ({} samples, seed {}): {} +- {} ({sigmas:.2} SE from quadrature midpoint)",
            mc.samples, mc.seed, mc.estimate, mc.std_error
        );
    }
    println!("verdict: {}", r.verdict.label());
}

pub fn graph(dist_text: &str, depth: usize, cap: u32, out: Option<&Path>, precision: usize) -> CliResult {
    let p = dist(dist_text)?;
    let mut g = graph_points(&p, depth, cap)?;
    g.points.sort_by(|a, b| a.0.cmp(&b.0));
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = BufWriter::new(sink);
    writeln!(w, "x_rational,y_rational,x_decimal,y_decimal")?;
    for (x, y) in &g.points {
        writeln!(
            w,
            "{},{},{},{}",
            fraction_string(x),
            fraction_string(y),
            decimal_string(x, precision),
            decimal_string(y, precision)
        )?;
    }
    w.flush()?;
    if out.is_some() {
        eprintln!(
            "{} points; uncovered x-measure {}",
            g.points.len(),
            decimal_string(&g.uncovered_measure, 12)
        );
    }
    Ok(())
}

pub fn diagnose(dist_text: &str, digit_text: &str, common: &Common) -> CliResult {
    let p = dist(dist_text)?;
    let prefix = finite_digits(digit_text)?;
    let precision = common.precision as usize;
    let mut rows = Vec::new();
    let mut prev_rho: Option<Rational> = None;
    for n in 1..=prefix.len() {
        let r = cylinder_increment(&p, &prefix[..n])?;
        let ratio_check = match &prev_rho {
            Some(prev) => {
                let observed = &r.rho / prev;
                let formula = singularity_ratio_step(&p, prefix[n - 1])?;
                Some((observed.clone(), formula.clone(), observed == formula))
            }
            None => None,
        };
        prev_rho = Some(r.rho.clone());
        rows.push((r, ratio_check));
    }
    match common.format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(r, check)| {
                    json!({
                        "digits": r.digits,
                        "digit_sum": r.digit_sum,
                        "delta_m": exact_json(&r.delta_m, precision),
                        "printed_constant": exact_json(&printed_increment(r.depth(), r.digit_sum), precision),
                        "measure": exact_json(&r.cylinder_measure, precision),
                        "rho": exact_json(&r.rho, precision),
                        "sign_alternates": r.sign_alternates(),
                        "corner_constant_holds": r.satisfies_corner_constant(),
                        "ratio": check.as_ref().map(|(o, f, ok)| json!({
                            "observed": fraction_string(o), "formula": fraction_string(f), "equal": ok,
                        })),
                    })
                })
                .collect();
            print_json(&json!({ "distribution": p.spec_string(), "increments": items }));
        }
        _ => {
            println!("n,digits,s_n,delta_m,measure,rho,rho_ratio,ratio_formula,ratio_ok");
            for (r, check) in &rows {
                let (o, f, ok) = match check {
                    Some((o, f, ok)) => (fraction_string(o), fraction_string(f), ok.to_string()),
                    None => (String::new(), String::new(), String::new()),
                };
                println!(
                    "{},{},{},{},{},{},{o},{f},{ok}",
                    r.depth(),
                    digits_string(&r.digits).replace(',', " "),
                    r.digit_sum,
                    fraction_string(&r.delta_m),
                    fraction_string(&r.cylinder_measure),
                    fraction_string(&r.rho),
                );
            }
        }
    }
    Ok(())
}

pub fn selftest(only: Option<u8>) -> CliResult {
    let mut failed = 0;
    let mut ran = 0;
    for &(id, name, check) in probmink_conformance::CRITERIA.iter() {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let outcome = probmink_conformance::run(id, name, check);
        println!("{outcome}");
        ran += 1;
        if !outcome.passed {
            failed += 1;
        }
    }
    if ran == 0 {
        return Err(CliError::Parse("no criterion with that number".into()));
    }
    if failed > 0 {
        return Err(CliError::SelfTest(failed));
    }
    println!("all {ran} criteria passed");
    Ok(())
}
