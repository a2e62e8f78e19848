//! JSON encodings shared by every payload.
//!
//! Integers with absolute value above 2⁵³−1 become decimal strings, rationals
//! that are not integers become `"a/b"` strings, and a cyclotomic number is
//! `{"order": m, "coords": [...]}` with coordinates on `1, ζ_m, …, ζ_m^{φ(m)−1}`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use modrep::arith::{CyclotomicNumber, Rational};
use modrep::linalg::IntMatrix;

pub const MAX_SAFE_INTEGER: i64 = (1 << 53) - 1;

pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) if v.abs() <= MAX_SAFE_INTEGER => Value::from(v),
        _ => Value::String(n.to_string()),
    }
}

pub fn parse_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn rational(q: &Rational) -> Value {
    if q.denom().is_one() {
        int(q.numer())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

pub fn parse_rational(v: &Value) -> Option<Rational> {
    if let Value::String(s) = v {
        if let Some((a, b)) = s.split_once('/') {
            let (a, b): (BigInt, BigInt) = (a.parse().ok()?, b.parse().ok()?);
            if b == BigInt::from(0) {
                return None;
            }
            return Some(Rational::new(a, b));
        }
    }
    parse_int(v).map(Rational::from_integer)
}

/// Rational values are written with order 1.
pub fn cyclotomic(x: &CyclotomicNumber) -> Value {
    match x.to_rational() {
        Some(q) => json!({"order": 1, "coords": [rational(&q)]}),
        None => json!({"order": x.order(), "coords": x.reduced().iter().map(rational).collect::<Vec<_>>()}),
    }
}

pub fn parse_cyclotomic(v: &Value) -> Option<CyclotomicNumber> {
    let order = v.get("order")?.as_u64().filter(|&m| m > 0 && m <= 1 << 20)?;
    let coords = v.get("coords")?.as_array()?.iter().map(parse_rational).collect::<Option<Vec<_>>>()?;
    Some(CyclotomicNumber::new(order, coords))
}

/// Row-major array of rows.
pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(int).collect())).collect())
}

pub fn parse_matrix(v: &Value) -> Option<IntMatrix> {
    let rows = v.as_array()?;
    let cols = rows.first().map_or(Some(0), |r| r.as_array().map(Vec::len))?;
    let mut data = Vec::with_capacity(rows.len() * cols);
    for r in rows {
        let r = r.as_array().filter(|r| r.len() == cols)?;
        for x in r {
            data.push(parse_int(x)?);
        }
    }
    Some(IntMatrix::from_vec(rows.len(), cols, data))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        assert_eq!(int(&BigInt::from(MAX_SAFE_INTEGER)), json!(9007199254740991i64));
        assert_eq!(int(&BigInt::from(MAX_SAFE_INTEGER + 1)), json!("9007199254740992"));
        assert_eq!(int(&BigInt::from(-MAX_SAFE_INTEGER - 1)), json!("-9007199254740992"));
        let big = BigInt::from(3).pow(100);
        assert_eq!(parse_int(&int(&big)), Some(big));
    }

    #[test]
    fn rationals_and_cyclotomics_round_trip() {
        let q = Rational::new(BigInt::from(-7), BigInt::from(4));
        assert_eq!(rational(&q), json!("-7/4"));
        assert_eq!(parse_rational(&rational(&q)), Some(q));
        assert_eq!(parse_rational(&json!("1/0")), None);

        let z = CyclotomicNumber::zeta(8, 3);
        let v = cyclotomic(&z);
        assert_eq!(v, json!({"order": 8, "coords": [0, 0, 0, 1]}));
        assert_eq!(parse_cyclotomic(&v).unwrap(), z);
        // ζ₃ + ζ₃² = −1
        let s = &CyclotomicNumber::zeta(3, 1) + &CyclotomicNumber::zeta(3, 2);
        assert_eq!(cyclotomic(&s), json!({"order": 1, "coords": [-1]}));
    }

    #[test]
    fn matrices_round_trip() {
        let m = IntMatrix::from_i64_rows(&[vec![1, -2], vec![0, i64::MAX]]);
        let v = matrix(&m);
        assert_eq!(v, json!([[1, -2], [0, "9223372036854775807"]]));
        assert_eq!(parse_matrix(&v), Some(m));
        assert_eq!(parse_matrix(&json!([[1, 2], [3]])), None);
    }
}
