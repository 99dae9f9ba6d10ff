use serde_json::{Number, Value};

/// 17 significant digits.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn float(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(num(x).parse::<Number>().expect("formatted float is a JSON number"))
    } else {
        Value::Null
    }
}

/// Rewrites every non-integer number in `v` with 17 significant digits.
pub fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_u64() || n.is_i64()) => n.as_f64().map_or(Value::Null, float),
        Value::Array(xs) => Value::Array(xs.into_iter().map(normalize).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, normalize(v))).collect()),
        other => other,
    }
}

pub fn csv_row(cells: &[String]) -> String {
    let mut line = cells
        .iter()
        .map(|c| if c.contains([',', '"', '\n']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() })
        .collect::<Vec<_>>()
        .join(",");
    line.push('\n');
    line
}
