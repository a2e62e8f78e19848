//! Dense univariate polynomials, low-to-high coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

pub(crate) fn trim_q(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Quotient and remainder over ℚ; `b` must be nonzero after trimming.
pub(crate) fn divrem_q(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut b = b.to_vec();
    trim_q(&mut b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.to_vec();
    trim_q(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = &r[i] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                let idx = i - db + j;
                r[idx] = &r[idx] - &c * bj;
            }
        }
        q[i - db] = c;
    }
    r.truncate(db);
    trim_q(&mut r);
    trim_q(&mut q);
    (q, r)
}

pub(crate) fn mul_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim_q(&mut out);
    out
}

pub(crate) fn sub_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim_q(&mut out);
    out
}

/// Inverse of `a` modulo `m` over ℚ, assuming `gcd(a, m) = 1`.
pub(crate) fn inverse_mod_q(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    // extended Euclid tracking only the coefficient of `a`
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim_q(&mut r0);
    trim_q(&mut r1);
    let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem_q(&r0, &r1);
        let s = sub_q(&s0, &mul_q(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let mut inv: Vec<Rational> = s0.iter().map(|x| x * &c).collect();
    let (_, rem) = divrem_q(&inv, m);
    inv = rem;
    Some(inv)
}

/// Exact division of integer polynomials; panics if the division is not exact.
pub(crate) fn div_exact_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let aq: Vec<Rational> = a.iter().cloned().map(Rational::from_integer).collect();
    let bq: Vec<Rational> = b.iter().cloned().map(Rational::from_integer).collect();
    let (q, r) = divrem_q(&aq, &bq);
    assert!(r.is_empty(), "inexact integer polynomial division");
    q.into_iter()
        .map(|c| {
            assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rational(x)).collect()
    }

    #[test]
    fn division() {
        // x³ − 1 = (x − 1)(x² + x + 1)
        let (q, r) = divrem_q(&qv(&[-1, 0, 0, 1]), &qv(&[-1, 1]));
        assert_eq!(q, qv(&[1, 1, 1]));
        assert!(r.is_empty());
        let (q, r) = divrem_q(&qv(&[1, 0, 1]), &qv(&[0, 2]));
        assert_eq!(q, vec![Rational::zero(), Rational::new(1.into(), 2.into())]);
        assert_eq!(r, qv(&[1]));
    }

    #[test]
    fn inverse_modulo() {
        // (x + 1)⁻¹ mod x² + 1 is (1 − x)/2
        let inv = inverse_mod_q(&qv(&[1, 1]), &qv(&[1, 0, 1])).unwrap();
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(inv, vec![half.clone(), -half]);
        assert!(inverse_mod_q(&qv(&[1, 1]), &qv(&[-1, 0, 1])).is_none());
    }
}
