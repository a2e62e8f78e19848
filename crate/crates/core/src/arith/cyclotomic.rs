use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{div_exact_z, inverse_mod_q};
use super::{lcm_u64, Field, Rational};

pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            while m.is_multiple_of(d) {
                m /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The `m`-th cyclotomic polynomial (low-to-high integer coefficients),
/// obtained by dividing `xᵐ − 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    let mut memo = HashMap::new();
    cyclotomic_rec(m, &mut memo)
}

fn cyclotomic_rec(m: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(v) = memo.get(&m) {
        return v.clone();
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let phi_d = cyclotomic_rec(d, memo);
        num = div_exact_z(&num, &phi_d);
    }
    memo.insert(m, num.clone());
    num
}

/// An element `Σ cᵢ ζ_mⁱ` of `ℚ(ζ_m)`, stored in the power basis modulo
/// `ζᵐ − 1`. The representation is not unique; equality reduces the
/// difference modulo `Φ_m`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    order: u64,
    coords: Vec<Rational>,
}

impl CyclotomicNumber {
    /// Folds coordinates of any length into `ℚ(ζ_order)`.
    pub fn new(order: u64, coords: Vec<Rational>) -> Self {
        assert!(order > 0);
        let mut c = vec![Rational::zero(); order as usize];
        for (i, x) in coords.into_iter().enumerate() {
            if !x.is_zero() {
                c[i % order as usize] += x;
            }
        }
        CyclotomicNumber { order, coords: c }
    }

    pub fn from_rational(q: Rational) -> Self {
        CyclotomicNumber { order: 1, coords: vec![q] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `ζ_m^k`.
    pub fn zeta(m: u64, k: i64) -> Self {
        let mut coords = vec![Rational::zero(); m as usize];
        coords[k.rem_euclid(m as i64) as usize] = Rational::one();
        CyclotomicNumber { order: m, coords }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Embedding `ℚ(ζ_m) → ℚ(ζ_n)` for `m | n`, sending `ζ_m` to `ζ_n^{n/m}`.
    pub fn embed(&self, n: u64) -> Self {
        assert!(n.is_multiple_of(self.order), "cannot embed order {} into {}", self.order, n);
        if n == self.order {
            return self.clone();
        }
        let step = (n / self.order) as usize;
        let mut coords = vec![Rational::zero(); n as usize];
        for (i, x) in self.coords.iter().enumerate() {
            if !x.is_zero() {
                coords[i * step] = x.clone();
            }
        }
        CyclotomicNumber { order: n, coords }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let n = lcm_u64(a.order, b.order);
        (a.embed(n), b.embed(n))
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// The Galois automorphism `ζ ↦ ζ^k` (`k` coprime to the order).
    pub fn galois(&self, k: i64) -> Self {
        let m = self.order as i64;
        let mut coords = vec![Rational::zero(); self.order as usize];
        for (i, x) in self.coords.iter().enumerate() {
            if !x.is_zero() {
                coords[(i as i64 * k).rem_euclid(m) as usize] += x;
            }
        }
        CyclotomicNumber { order: self.order, coords }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CyclotomicNumber {
            order: self.order,
            coords: self.coords.iter().map(|x| x * q).collect(),
        }
    }

    /// Coordinates of the reduction modulo `Φ_m`, of length `φ(m)`.
    pub fn reduced(&self) -> Vec<Rational> {
        reduce_mod(&self.coords, &cyclotomic_polynomial(self.order))
    }

    fn reduced_with(&self, phi: &[BigInt]) -> Vec<Rational> {
        reduce_mod(&self.coords, phi)
    }

    pub fn is_zero(&self) -> bool {
        // cheap exits before reducing
        if self.coords.iter().all(|c| c.is_zero()) {
            return true;
        }
        self.reduced().iter().all(|c| c.is_zero())
    }

    /// The rational value, if this number is rational.
    pub fn to_rational(&self) -> Option<Rational> {
        let r = self.reduced();
        if r.iter().skip(1).all(|c| c.is_zero()) {
            Some(r.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Canonical coordinates in `ℚ(ζ_n)`, `n` a multiple of the order.
    pub fn canonical_in(&self, n: u64) -> Vec<Rational> {
        self.embed(n).reduced()
    }

    /// Total order used for canonical sorting: compare canonical coordinates
    /// in the common field lexicographically.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        let n = lcm_u64(self.order, other.order);
        self.canonical_in(n).cmp(&other.canonical_in(n))
    }

    pub fn inverse(&self) -> Option<Self> {
        CyclotomicField::new(self.order).inv(self)
    }
}

/// Remainder of a coefficient vector modulo a monic integer polynomial.
fn reduce_mod(coords: &[Rational], phi: &[BigInt]) -> Vec<Rational> {
    let deg = phi.len() - 1;
    let mut r: Vec<Rational> = coords.to_vec();
    if r.len() < deg {
        r.resize(deg, Rational::zero());
    }
    for i in (deg..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut r[i], Rational::zero());
        for (j, pj) in phi.iter().enumerate().take(deg) {
            if !pj.is_zero() {
                let idx = i - deg + j;
                r[idx] -= &c * Rational::from_integer(pj.clone());
            }
        }
    }
    r.truncate(deg);
    r
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "z{}^{}", self.order, i)?;
            } else {
                write!(f, "{a}*z{}^{}", self.order, i)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (mut a, b) = CyclotomicNumber::common(self, rhs);
        for (x, y) in a.coords.iter_mut().zip(b.coords) {
            if !y.is_zero() {
                *x += y;
            }
        }
        a
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (mut a, b) = CyclotomicNumber::common(self, rhs);
        for (x, y) in a.coords.iter_mut().zip(b.coords) {
            if !y.is_zero() {
                *x -= y;
            }
        }
        a
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let n = lcm_u64(self.order, rhs.order);
        let (sa, sb) = ((n / self.order) as usize, (n / rhs.order) as usize);
        let mut coords = vec![Rational::zero(); n as usize];
        for (i, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coords.iter().enumerate() {
                if !y.is_zero() {
                    coords[(i * sa + j * sb) % n as usize] += x * y;
                }
            }
        }
        CyclotomicNumber { order: n, coords }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `ℚ(ζ_m)` as a linear-algebra context. `Φ_m` is computed once here.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    order: u64,
    phi: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn new(order: u64) -> Self {
        CyclotomicField { order, phi: cyclotomic_polynomial(order) }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn lift(&self, a: &CyclotomicNumber) -> CyclotomicNumber {
        a.embed(self.order)
    }

    /// Canonical coordinates (length `φ(m)`) of an element of this field.
    pub fn canonical(&self, a: &CyclotomicNumber) -> Vec<Rational> {
        self.lift(a).reduced_with(&self.phi)
    }
}

impl Field for CyclotomicField {
    type Elem = CyclotomicNumber;

    fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber::zero().embed(self.order)
    }
    fn one(&self) -> CyclotomicNumber {
        CyclotomicNumber::one().embed(self.order)
    }
    fn from_i64(&self, n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_int(n).embed(self.order)
    }
    fn add(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.lift(&(a + b))
    }
    fn sub(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.lift(&(a - b))
    }
    fn mul(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        // keep products reduced so entries do not drift through the power basis
        let prod = self.lift(&(a * b));
        let mut c = prod.reduced_with(&self.phi);
        c.resize(self.order as usize, Rational::zero());
        CyclotomicNumber { order: self.order, coords: c }
    }
    fn neg(&self, a: &CyclotomicNumber) -> CyclotomicNumber {
        self.lift(&-a)
    }
    fn inv(&self, a: &CyclotomicNumber) -> Option<CyclotomicNumber> {
        let red = self.canonical(a);
        if red.iter().all(|c| c.is_zero()) {
            return None;
        }
        let phi_q: Vec<Rational> = self.phi.iter().cloned().map(Rational::from_integer).collect();
        let inv = inverse_mod_q(&red, &phi_q)?;
        Some(CyclotomicNumber::new(self.order, inv))
    }
    fn is_zero(&self, a: &CyclotomicNumber) -> bool {
        self.canonical(a).iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), bi(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), bi(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), bi(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(8), bi(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), bi(&[1, 0, -1, 0, 1]));
        for m in 1..40u64 {
            assert_eq!(cyclotomic_polynomial(m).len() as u64 - 1, euler_phi(m));
        }
    }

    #[test]
    fn zeta_to_the_m_is_one() {
        for m in 1..20u64 {
            let z = CyclotomicNumber::zeta(m, 1);
            let mut acc = CyclotomicNumber::one();
            for _ in 0..m {
                acc = &acc * &z;
            }
            assert_eq!(acc, CyclotomicNumber::one());
        }
    }

    #[test]
    fn sum_of_primitive_roots() {
        // 1 + ζ₃ + ζ₃² = 0 and ζ₄ + ζ₄⁻¹ = 0
        let s = &(&CyclotomicNumber::one() + &CyclotomicNumber::zeta(3, 1)) + &CyclotomicNumber::zeta(3, 2);
        assert!(s.is_zero());
        let t = &CyclotomicNumber::zeta(4, 1) + &CyclotomicNumber::zeta(4, -1);
        assert!(t.is_zero());
        assert_eq!(CyclotomicNumber::zeta(8, 4), CyclotomicNumber::from_int(-1));
        assert_eq!(CyclotomicNumber::zeta(6, 3).to_integer(), Some(BigInt::from(-1)));
    }

    #[test]
    fn inverse_in_field() {
        let k = CyclotomicField::new(8);
        let a = &CyclotomicNumber::one() + &CyclotomicNumber::zeta(8, 1);
        let ai = k.inv(&a).unwrap();
        assert!(k.is_one(&k.mul(&a, &ai)));
        assert!(k.inv(&(&CyclotomicNumber::zeta(2, 1) + &CyclotomicNumber::one())).is_none());
    }

    #[test]
    fn conjugation_and_display() {
        let a = &CyclotomicNumber::zeta(5, 1).scale(&rational(2)) + &CyclotomicNumber::from_int(-3);
        assert_eq!(a.conj(), &CyclotomicNumber::zeta(5, 4).scale(&rational(2)) + &CyclotomicNumber::from_int(-3));
        assert_eq!(format!("{a}"), "-3 + 2*z5^1");
        assert_eq!(format!("{}", CyclotomicNumber::zero()), "0");
    }

    #[test]
    fn canonical_ordering_ignores_representation() {
        // 1 + ζ₃ and −ζ₃² are the same number
        let a = &CyclotomicNumber::one() + &CyclotomicNumber::zeta(3, 1);
        let b = -CyclotomicNumber::zeta(3, 2);
        assert_eq!(a.cmp_canonical(&b), Ordering::Equal);
        assert_eq!(CyclotomicNumber::from_int(-1).cmp_canonical(&CyclotomicNumber::one()), Ordering::Less);
    }
}
