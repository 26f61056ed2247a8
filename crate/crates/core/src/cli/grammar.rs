//! Angle literals and scan-axis specifications.
//!
//! ```text
//! angle := ["-"] (number | [coef ["*"]] "pi" ["/" number])
//! axis  := angle | angle ":" angle ":" count | angle ("," angle)+
//! ```

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn number(s: &str) -> Result<f64> {
    let t = s.trim();
    let ok = !t.is_empty()
        && t.chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'));
    match t.parse::<f64>() {
        Ok(v) if ok && v.is_finite() => Ok(v),
        _ => Err(Error::InvalidParams(format!("'{s}' is not a finite number"))),
    }
}

/// Parses `pi`, `2pi`, `3*pi/4`, `-pi/2` or a plain number of radians.
pub fn parse_angle(s: &str) -> Result<f64> {
    let t = s.trim();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim_start()),
        None => (1.0, t),
    };
    let Some(at) = body.find("pi") else {
        return number(t);
    };
    let (pre, post) = (&body[..at], &body[at + 2..]);
    let coef = match pre.strip_suffix('*').unwrap_or(pre) {
        "" if pre.is_empty() => 1.0,
        "" => return Err(Error::InvalidParams(format!("missing coefficient in '{s}'"))),
        c => number(c)?,
    };
    let denom = match post {
        "" => 1.0,
        p => {
            let d = p
                .strip_prefix('/')
                .ok_or_else(|| Error::InvalidParams(format!("unexpected '{p}' in '{s}'")))?;
            number(d)?
        }
    };
    if denom == 0.0 {
        return Err(Error::InvalidParams(format!("division by zero in '{s}'")));
    }
    Ok(sign * coef * PI / denom)
}

/// Values along one scan axis, in scan order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AxisSpec {
    Value(f64),
    List(Vec<AngleValue>),
    Text(String),
}

/// A number or an angle literal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleValue {
    Number(f64),
    Text(#[serde(with = "angle_text")] f64),
}

mod angle_text {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(*v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_angle(&text).map_err(D::Error::custom)
    }
}

impl AngleValue {
    pub fn value(self) -> f64 {
        match self {
            AngleValue::Number(v) | AngleValue::Text(v) => v,
        }
    }
}

impl AxisSpec {
    pub fn values(&self) -> Result<Vec<f64>> {
        match self {
            AxisSpec::Value(v) => Ok(vec![*v]),
            AxisSpec::List(vs) if vs.is_empty() => Err(Error::InvalidParams("empty axis list".into())),
            AxisSpec::List(vs) => Ok(vs.iter().map(|v| v.value()).collect()),
            AxisSpec::Text(s) => parse_axis(s),
        }
    }
}

/// `min:max:n` (inclusive, `n ≥ 1`), `v1,v2,...` or a single value.
pub fn parse_axis(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [single] => single.split(',').map(parse_angle).collect(),
        [lo, hi, n] => {
            let (lo, hi) = (parse_angle(lo)?, parse_angle(hi)?);
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParams(format!("axis count '{n}' is not a positive integer")))?;
            match n {
                0 => Err(Error::InvalidParams("axis count must be at least 1".into())),
                1 => Ok(vec![lo]),
                _ => Ok((0..n)
                    .map(|k| {
                        if k == n - 1 {
                            hi
                        } else {
                            lo + (hi - lo) * k as f64 / (n - 1) as f64
                        }
                    })
                    .collect()),
            }
        }
        _ => Err(Error::InvalidParams(format!("axis '{s}' is not v, v1,v2,... or min:max:n"))),
    }
}

/// Comma-separated angle list.
pub fn parse_angle_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(parse_angle).collect()
}
