//! Bit-exact CSV output: `%.17g` numbers, `.` decimal, `\n` line endings.

use std::fmt::Write as _;

/// C `printf("%.17g")`: 17 significant digits, trailing zeros removed.
pub fn g17(v: f64) -> String {
    const P: i32 = 17;
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..P).contains(&exp) {
        trim_zeros(format!("{:.*}", (P - 1 - exp) as usize, v))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// A CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => g17(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(t) if t.contains([',', '"', '\n']) => format!("\"{}\"", t.replace('"', "\"\"")),
            Cell::Text(t) => t.clone(),
        }
    }
}

pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<Cell>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        for (k, cell) in row.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}", cell.render());
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf() {
        let cases = [
            (0.1, "0.10000000000000001"),
            (0.5, "0.5"),
            (1.0, "1"),
            (-1.5, "-1.5"),
            (1e-5, "1.0000000000000001e-05"),
            (1.5e-4, "0.00014999999999999999"),
            (1e17, "1e+17"),
            (12345678901234567.0, "12345678901234568"),
            (std::f64::consts::PI, "3.1415926535897931"),
            (2.0f64.sqrt() * 2.0, "2.8284271247461903"),
            (-0.0, "-0"),
            (1e300, "1.0000000000000001e+300"),
        ];
        for (v, want) in cases {
            assert_eq!(g17(v), want, "{v:e}");
        }
    }

    #[test]
    fn roundtrips() {
        for v in [0.1, 1.0 / 3.0, 6.02214076e23, -2.2250738585072014e-308, 0.7071067811865476] {
            assert_eq!(g17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn table() {
        let t = csv(&["a", "b"], vec![vec![Cell::Num(0.5), Cell::Bool(true)], vec![Cell::Int(3), Cell::Text("x,y".into())]]);
        assert_eq!(t, "a,b\n0.5,true\n3,\"x,y\"\n");
    }
}
