use probmink::rational::{decimal_string, fraction_string, Rational};
use serde_json::{json, Value};

pub fn exact_json(x: &Rational, precision: usize) -> Value {
    json!({ "exact": fraction_string(x), "decimal": decimal_string(x, precision) })
}

/// `a/b` on the first line, decimal on the second.
pub fn print_value(x: &Rational, precision: usize) {
    println!("{}", fraction_string(x));
    println!("{}", decimal_string(x, precision));
}

pub fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

pub fn digits_string(d: &[u32]) -> String {
    d.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}
