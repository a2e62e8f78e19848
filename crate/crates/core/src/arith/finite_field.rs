use std::fmt;

use super::{is_prime, pow_mod, ArithError, CyclotomicNumber, Field};

/// Largest field for which log/exp tables are built.
const MAX_FIELD_SIZE: u64 = 1 << 22;
/// Fields up to this size also get a full addition table.
const ADD_TABLE_LIMIT: u64 = 1024;

/// Element of a finite field, packed as the base-`p` integer `Σ cᵢ pⁱ` of its
/// polynomial-basis coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FfElem(pub u32);

impl fmt::Debug for FfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The field `𝔽_p[x]/(modulus)` with a fixed multiplicative generator.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    size: u32,
    /// Monic, low-to-high coefficients, length `degree + 1`.
    modulus: Vec<u32>,
    generator: FfElem,
    /// `exp[k] = g^k` for `k < size - 1`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus && self.generator == other.generator
    }
}

impl Eq for FiniteField {}

/// Builds `𝔽_{p^e}`.
///
/// Without an explicit modulus the irreducible monic polynomial with the
/// smallest packed coefficient value is used, so `make_field(3, 2, None)` gives
/// `x² + 1`. The generator is always the smallest packed element of full order.
pub fn make_field(p: u32, degree: u32, modulus: Option<&[u32]>) -> Result<FiniteField, ArithError> {
    if !is_prime(p as u64) {
        return Err(ArithError::NotPrime(p as u64));
    }
    if degree == 0 {
        return Err(ArithError::BadModulus { expected: 0, got: modulus.map(|m| m.to_vec()).unwrap_or_default() });
    }
    let size = (p as u64).checked_pow(degree).unwrap_or(u64::MAX);
    if size > MAX_FIELD_SIZE {
        return Err(ArithError::FieldTooLarge(size));
    }
    let modulus = match modulus {
        Some(m) => {
            let m: Vec<u32> = m.iter().map(|c| c % p).collect();
            if m.len() != degree as usize + 1 || m[degree as usize] != 1 {
                return Err(ArithError::BadModulus { expected: degree, got: m });
            }
            if !is_irreducible(p, &m) {
                return Err(ArithError::NonIrreducibleModulus(m));
            }
            m
        }
        None => smallest_irreducible(p, degree),
    };
    FiniteField::with_modulus(p, degree, size as u32, modulus)
}

impl FiniteField {
    fn with_modulus(p: u32, degree: u32, size: u32, modulus: Vec<u32>) -> Result<Self, ArithError> {
        let e = degree as usize;
        let unpack = |x: u32| -> Vec<u32> {
            let mut v = vec![0u32; e];
            let mut x = x;
            for c in v.iter_mut() {
                *c = x % p;
                x /= p;
            }
            v
        };
        let pack = |v: &[u32]| -> u32 { v.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
        let slow_mul = |a: u32, b: u32| -> u32 { pack(&poly_mul_mod(p, &unpack(a), &unpack(b), &modulus)) };

        let order_of = |x: u32| -> u32 {
            let mut acc = x;
            let mut k = 1;
            while acc != 1 {
                acc = slow_mul(acc, x);
                k += 1;
                if k > size {
                    return 0;
                }
            }
            k
        };
        let generator = (1..size)
            .find(|&x| order_of(x) == size - 1)
            .ok_or(ArithError::NoGeneratorFound(size as u64))?;

        let mut exp = Vec::with_capacity(size as usize - 1);
        let mut log = vec![0u32; size as usize];
        let mut acc = 1u32;
        for k in 0..size - 1 {
            exp.push(acc);
            log[acc as usize] = k;
            acc = slow_mul(acc, generator);
        }
        assert_eq!(acc, 1, "generator order check");

        let add_digits = |a: u32, b: u32| -> u32 {
            let (ua, ub) = (unpack(a), unpack(b));
            let s: Vec<u32> = ua.iter().zip(&ub).map(|(x, y)| (x + y) % p).collect();
            pack(&s)
        };
        let neg_table: Vec<u32> = (0..size)
            .map(|a| pack(&unpack(a).iter().map(|&c| (p - c) % p).collect::<Vec<_>>()))
            .collect();
        let add_table = if (size as u64) <= ADD_TABLE_LIMIT && degree > 1 {
            let mut t = vec![0u32; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    t[(a * size + b) as usize] = add_digits(a, b);
                }
            }
            Some(t)
        } else {
            None
        };

        Ok(FiniteField {
            p,
            degree,
            size,
            modulus,
            generator: FfElem(generator),
            exp,
            log,
            add_table,
            neg_table,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FfElem {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = FfElem> {
        (0..self.size).map(FfElem)
    }

    pub fn from_coords(&self, coords: &[u32]) -> FfElem {
        assert_eq!(coords.len(), self.degree as usize);
        FfElem(coords.iter().rev().fold(0u32, |acc, &c| acc * self.p + c % self.p))
    }

    pub fn coords(&self, x: FfElem) -> Vec<u32> {
        let mut v = vec![0u32; self.degree as usize];
        let mut r = x.0;
        for c in v.iter_mut() {
            *c = r % self.p;
            r /= self.p;
        }
        v
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FfElem {
        FfElem(n.rem_euclid(self.p as i64) as u32)
    }

    /// `g^k` for the fixed generator `g`.
    pub fn generator_pow(&self, k: i64) -> FfElem {
        let k = k.rem_euclid(self.size as i64 - 1) as usize;
        FfElem(self.exp[k])
    }

    pub fn pow(&self, x: FfElem, k: u64) -> FfElem {
        if x.0 == 0 {
            return if k == 0 { FfElem(1) } else { FfElem(0) };
        }
        let l = self.log[x.0 as usize] as u64;
        let n = self.size as u64 - 1;
        FfElem(self.exp[((l * (k % n)) % n) as usize])
    }

    /// Exponent of `x` with respect to the fixed generator, in `[0, q − 2]`.
    pub fn discrete_log(&self, x: FfElem) -> Result<u64, ArithError> {
        if x.0 == 0 {
            return Err(ArithError::ZeroElement);
        }
        Ok(self.log[x.0 as usize] as u64)
    }

    pub fn multiplicative_order(&self, x: FfElem) -> Result<u64, ArithError> {
        let l = self.discrete_log(x)?;
        let n = self.size as u64 - 1;
        Ok(n / super::gcd_u64(l, n))
    }

    /// The root of unity `ζ_{q−1}^{log x}` attached to a nonzero element.
    pub fn teichmuller_lift(&self, x: FfElem) -> Result<CyclotomicNumber, ArithError> {
        let l = self.discrete_log(x)?;
        Ok(CyclotomicNumber::zeta(self.size as u64 - 1, l as i64))
    }

    /// All `d`-th roots of unity as pairs `(j, g^{j(q−1)/d})`, so that the
    /// `j`-th entry lifts to `ζ_d^j`. Requires `d | q − 1`.
    pub fn roots_of_unity(&self, d: u64) -> Vec<(u64, FfElem)> {
        let n = self.size as u64 - 1;
        assert!(d > 0 && n.is_multiple_of(d), "{d} does not divide {n}");
        let step = n / d;
        (0..d).map(|j| (j, FfElem(self.exp[(j * step) as usize]))).collect()
    }

    /// Evaluates a polynomial with prime-field coefficients (low to high).
    pub fn eval_prime_poly(&self, coeffs: &[u32], x: FfElem) -> FfElem {
        coeffs.iter().rev().fold(FfElem(0), |acc, &c| {
            let t = Field::mul(self, &acc, &x);
            Field::add(self, &t, &self.from_int(c as i64))
        })
    }

    /// An embedding of `self` into `big`, given as the image of every element
    /// (indexed by packed value). `None` if `self` is not a subfield of `big`.
    pub fn embedding_into(&self, big: &FiniteField) -> Option<Vec<FfElem>> {
        if big.p != self.p || !big.degree.is_multiple_of(self.degree) {
            return None;
        }
        let root = big.elements().find(|&y| big.eval_prime_poly(&self.modulus, y).0 == 0)?;
        let images = self
            .elements()
            .map(|x| {
                let c = self.coords(x);
                c.iter().rev().fold(FfElem(0), |acc, &ci| {
                    let t = Field::mul(big, &acc, &root);
                    Field::add(big, &t, &big.from_int(ci as i64))
                })
            })
            .collect();
        Some(images)
    }
}

impl Field for FiniteField {
    type Elem = FfElem;

    fn zero(&self) -> FfElem {
        FfElem(0)
    }

    fn one(&self) -> FfElem {
        FfElem(1)
    }

    fn from_i64(&self, n: i64) -> FfElem {
        self.from_int(n)
    }

    #[inline]
    fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        if self.degree == 1 {
            let s = a.0 + b.0;
            return FfElem(if s >= self.p { s - self.p } else { s });
        }
        if let Some(t) = &self.add_table {
            return FfElem(t[(a.0 * self.size + b.0) as usize]);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.degree {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        FfElem(out)
    }

    #[inline]
    fn sub(&self, a: &FfElem, b: &FfElem) -> FfElem {
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        if a.0 == 0 || b.0 == 0 {
            return FfElem(0);
        }
        let n = self.size - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FfElem(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    #[inline]
    fn neg(&self, a: &FfElem) -> FfElem {
        FfElem(self.neg_table[a.0 as usize])
    }

    fn inv(&self, a: &FfElem) -> Option<FfElem> {
        if a.0 == 0 {
            return None;
        }
        let n = self.size - 1;
        let l = self.log[a.0 as usize];
        Some(FfElem(self.exp[((n - l) % n) as usize]))
    }

    #[inline]
    fn is_zero(&self, a: &FfElem) -> bool {
        a.0 == 0
    }

    #[inline]
    fn eq(&self, a: &FfElem, b: &FfElem) -> bool {
        a == b
    }
}

// ---- polynomials over 𝔽_p, low-to-high coefficient vectors ----

/// Remainder of `a` modulo the monic-or-not `m` (degree ≥ 1), padded to
/// length `deg m`.
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    let pp = p as u64;
    let lead_inv = pow_mod(m[dm] as u64, pp - 2, pp);
    let mut r = a.to_vec();
    if r.len() < dm {
        r.resize(dm, 0);
    }
    for i in (dm..r.len()).rev() {
        let c = r[i] as u64 * lead_inv % pp;
        if c == 0 {
            continue;
        }
        for (j, &mj) in m.iter().enumerate() {
            let idx = i - dm + j;
            r[idx] = ((r[idx] as u64 + (pp - c) * mj as u64) % pp) as u32;
        }
    }
    r.truncate(dm);
    r
}

fn poly_mul_mod(p: u32, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem(p, &prod, m)
}

/// Trial division by every monic polynomial of degree at most `deg/2`.
fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut r = idx;
            for _ in 0..d {
                f.push((r % p as u64) as u32);
                r /= p as u64;
            }
            f.push(1);
            let rem = poly_rem(p, m, &f);
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, degree: u32) -> Vec<u32> {
    let count = (p as u64).pow(degree);
    for idx in 0..count {
        let mut f = Vec::with_capacity(degree as usize + 1);
        let mut r = idx;
        for _ in 0..degree {
            f.push((r % p as u64) as u32);
            r /= p as u64;
        }
        f.push(1);
        if is_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
