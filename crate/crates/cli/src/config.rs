//! Point-set files: `{"points": [...]}` where each entry is a complex number string
//! ("0.5+0.25i", "-i", "3"), the literal "inf", or a unit vector `[x, y, z]`.

use std::fmt;
use std::str::FromStr;

use ahlfors_core::{Configuration, ExtendedComplex, SpherePoint};
use num_complex::Complex64;
use serde_json::Value;

#[derive(Debug)]
pub struct ConfigFileError(pub String);

impl fmt::Display for ConfigFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigFileError> {
    Err(ConfigFileError(msg.into()))
}

pub fn parse_point(v: &Value) -> Result<SpherePoint, ConfigFileError> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            if matches!(s.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
                return Ok(SpherePoint::infinity());
            }
            let z = Complex64::from_str(s).map_err(|_| ConfigFileError(format!("not a complex number: {s:?}")))?;
            if !(z.re.is_finite() && z.im.is_finite()) {
                return err(format!("not a finite complex number: {s:?}"));
            }
            SpherePoint::from_extended(ExtendedComplex::Finite(z)).map_err(|e| ConfigFileError(e.to_string()))
        }
        Value::Array(xs) if xs.len() == 3 => {
            let c: Vec<f64> = xs.iter().filter_map(Value::as_f64).collect();
            if c.len() != 3 {
                return err(format!("vector entries must be numbers: {v}"));
            }
            let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
            if !((n - 1.0).abs() <= 1e-9) {
                return err(format!("vector is not a unit vector (norm {n}): {v}"));
            }
            SpherePoint::from_xyz(c[0], c[1], c[2]).map_err(|e| ConfigFileError(e.to_string()))
        }
        Value::Number(n) => {
            let x = n.as_f64().filter(|x| x.is_finite()).ok_or_else(|| ConfigFileError(format!("bad number {n}")))?;
            SpherePoint::from_complex(x, 0.0).map_err(|e| ConfigFileError(e.to_string()))
        }
        _ => err(format!("unrecognized point {v}")),
    }
}

pub fn parse_config(text: &str) -> Result<Configuration, ConfigFileError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ConfigFileError(format!("invalid JSON: {e}")))?;
    let Some(points) = v.get("points").and_then(Value::as_array) else {
        return err("expected an object with a \"points\" array");
    };
    let pts = points.iter().map(parse_point).collect::<Result<Vec<_>, _>>()?;
    Configuration::new(pts).map_err(|e| ConfigFileError(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_forms() {
        let c = parse_config(r#"{"points": ["0", "0.5+0.25i", "inf", [1, 0, 0], "-2i", 3]}"#).unwrap();
        assert_eq!(c.q(), 6);
        assert!(c.point(2).is_infinity());
        match c.point(4).to_extended() {
            ExtendedComplex::Finite(z) => assert!((z - Complex64::new(0.0, -2.0)).norm() < 1e-12),
            _ => panic!(),
        }
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            r#"{"points": ["0", "1"]}"#,
            r#"{"points": ["0", "1", "0"]}"#,
            r#"{"points": ["0", "1", "x"]}"#,
            r#"{"points": ["0", "1", [1, 1, 0]]}"#,
            r#"{"points": ["0", "1", "NaN"]}"#,
            r#"["0", "1", "inf"]"#,
            "not json",
        ] {
            assert!(parse_config(text).is_err(), "{text}");
        }
    }
}
