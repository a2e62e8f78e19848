use std::sync::Arc;

use num_integer::Roots;

use super::{basis_order, normalize, CharacterError, ClassFunction};
use crate::arith::{is_prime, make_field, CyclotomicNumber, FfElem, Field, FiniteField, Rational};
use crate::group::{ConjugacyClassData, FiniteGroup};
use crate::linalg::{self, Matrix};

pub const DEFAULT_PRIME_BOUND: u64 = 1_000_000;

/// Ordinary irreducible characters on all conjugacy classes.
///
/// Values live in `ℚ(ζ_e)` for `e` the group exponent. Rows are sorted by
/// degree, then trivial character first, then by decreasing canonical value
/// vector.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    exponent: u64,
    prime: u64,
    rows: Vec<ClassFunction>,
    degrees: Vec<u64>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClassData {
        self.group.conjugacy_classes()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// The auxiliary prime used for the modular eigenvalue computation.
    pub fn dixon_prime(&self) -> u64 {
        self.prime
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `⟨a, b⟩ = (1/|G|) Σ_c |c|·a(c)·conj(b(c))` for class functions on all classes.
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<Rational, CharacterError> {
        let cc = self.classes();
        if a.classes() != b.classes() || a.len() != cc.len() {
            return Err(CharacterError::ClassMismatch);
        }
        let mut acc = CyclotomicNumber::zero();
        for (c, (x, y)) in a.values().iter().zip(b.values()).enumerate() {
            let term = (x * &y.conj()).scale(&Rational::from_integer(cc.size(c).into()));
            acc = acc + term;
        }
        let q = acc.to_rational().ok_or_else(|| CharacterError::VerificationFailed("irrational inner product".into()))?;
        Ok(q / Rational::from_integer(cc.group_order().into()))
    }
}

/// Dixon–Schneider with the default prime bound.
pub fn dixon_character_table(g: Arc<FiniteGroup>) -> Result<CharacterTable, CharacterError> {
    dixon_character_table_with_bound(g, DEFAULT_PRIME_BOUND)
}

/// Computes the character table by diagonalizing the class multiplication
/// matrices modulo a prime `ℓ ≡ 1 (mod e)` with `ℓ > 2√|G|`, then lifting
/// eigenvalue multiplicities to `ℚ(ζ_e)`.
pub fn dixon_character_table_with_bound(g: Arc<FiniteGroup>, bound: u64) -> Result<CharacterTable, CharacterError> {
    let cc = g.conjugacy_classes();
    let order = g.order() as u64;
    let e = g.exponent();
    let ell = dixon_prime(order, e, bound)?;
    let f = make_field(ell as u32, 1, None).map_err(|err| CharacterError::VerificationFailed(err.to_string()))?;
    let r = cc.len();

    let mats = class_matrices(&g, cc, &f);
    let spaces = common_eigenvectors(&f, &mats, r)?;

    let z = f.generator_pow(((ell - 1) / e) as i64);
    let mut rows: Vec<(u64, Vec<Vec<i64>>)> = Vec::with_capacity(r);
    for v in spaces {
        rows.push(lift_character(&f, cc, order, e, z, &v)?);
    }
    verify(cc, order, e, &rows)?;

    let mut table: Vec<(u64, ClassFunction)> = rows
        .into_iter()
        .map(|(deg, vals)| {
            let values = vals.into_iter().map(|c| normalize(&int_cyclotomic(e, &c))).collect();
            (deg, ClassFunction::new((0..r).collect(), values))
        })
        .collect();
    table.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| basis_order(&a.1, &b.1)));
    let (degrees, rows) = table.into_iter().unzip();
    Ok(CharacterTable { group: g, exponent: e, prime: ell, rows, degrees })
}

fn dixon_prime(order: u64, e: u64, bound: u64) -> Result<u64, CharacterError> {
    let mut ell = e + 1;
    while ell <= bound {
        if ell * ell > 4 * order && is_prime(ell) {
            return Ok(ell);
        }
        ell += e;
    }
    Err(CharacterError::NoSuitablePrime { exponent: e, bound })
}

/// `M_j[l][k] = #{x ∈ C_j : x⁻¹·z_k ∈ C_l}`, reduced mod `ℓ`. The vector of
/// central character values `ω` is a right eigenvector of `M_j` for `ω_j`.
fn class_matrices(g: &FiniteGroup, cc: &ConjugacyClassData, f: &FiniteField) -> Vec<Matrix<FfElem>> {
    let r = cc.len();
    let members = cc.members();
    members
        .iter()
        .map(|cls| {
            let mut counts = vec![0u64; r * r];
            for &x in cls {
                let xi = g.inv(x);
                for k in 0..r {
                    let l = cc.class_of(g.mul(xi, cc.representative(k)));
                    counts[l * r + k] += 1;
                }
            }
            Matrix::from_vec(r, r, counts.into_iter().map(|c| f.from_int(c as i64)).collect())
        })
        .collect()
}

/// Splits `F_ℓ^r` into the common eigenlines of the commuting class matrices.
fn common_eigenvectors(f: &FiniteField, mats: &[Matrix<FfElem>], r: usize) -> Result<Vec<Vec<FfElem>>, CharacterError> {
    let mut spaces = vec![Matrix::identity(f, r)];
    for m in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.cols() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(spaces.len());
        for w in spaces {
            if w.cols() == 1 {
                next.push(w);
                continue;
            }
            let image = m.mul(f, &w);
            let restricted = linalg::solve(f, &w, &image)
                .map_err(|_| CharacterError::VerificationFailed("eigenspace is not invariant".into()))?;
            let cp = linalg::charpoly(f, &restricted);
            let mut total = 0;
            for lambda in f.elements() {
                if !f.is_zero(&eval(f, &cp, lambda)) {
                    continue;
                }
                let ker = linalg::kernel_basis(f, &restricted.shift(f, &lambda));
                total += ker.len();
                let k = Matrix::from_columns(w.cols(), &ker);
                next.push(w.mul(f, &k));
            }
            if total != w.cols() {
                return Err(CharacterError::VerificationFailed("class matrix is not diagonalizable mod ℓ".into()));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.cols() != 1) || spaces.len() != r {
        return Err(CharacterError::VerificationFailed("central characters are not separated".into()));
    }
    Ok(spaces.into_iter().map(|s| s.column(0)).collect())
}

fn eval(f: &FiniteField, coeffs: &[FfElem], x: FfElem) -> FfElem {
    coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, &x), c))
}

/// From a common eigenvector to the degree and the values, each value given
/// as integer coordinates in the (unreduced) power basis of `ℚ(ζ_e)`.
fn lift_character(
    f: &FiniteField,
    cc: &ConjugacyClassData,
    order: u64,
    e: u64,
    z: FfElem,
    v: &[FfElem],
) -> Result<(u64, Vec<Vec<i64>>), CharacterError> {
    let r = cc.len();
    let v0 = f.inv(&v[0]).ok_or_else(|| CharacterError::VerificationFailed("eigenvector vanishes at 1".into()))?;
    let omega: Vec<FfElem> = v.iter().map(|x| f.mul(x, &v0)).collect();
    let size = |c: usize| f.from_int(cc.size(c) as i64);

    let mut s = f.zero();
    for c in 0..r {
        let t = f.mul(&omega[c], &omega[cc.inverse_class(c)]);
        s = f.add(&s, &f.div(&t, &size(c)).unwrap());
    }
    let deg_sq = f.div(&f.from_int(order as i64), &s).ok_or_else(|| CharacterError::VerificationFailed("zero norm".into()))?;
    let deg = (1..=order.sqrt())
        .find(|&d| order.is_multiple_of(d) && f.from_int((d * d) as i64) == deg_sq)
        .ok_or_else(|| CharacterError::VerificationFailed("no admissible degree".into()))?;
    let degf = f.from_int(deg as i64);
    let chi: Vec<FfElem> = (0..r).map(|c| f.div(&f.mul(&omega[c], &degf), &size(c)).unwrap()).collect();

    let ell = f.size() as u64;
    let mut values = Vec::with_capacity(r);
    for c in 0..r {
        let o = cc.element_order(c) as u64;
        let step = e / o;
        let zo = f.pow(z, step);
        let o_inv = f.inv(&f.from_int(o as i64)).unwrap();
        let mut coords = vec![0i64; e as usize];
        let mut total = 0u64;
        for k in 0..o {
            // m_k = (1/o) Σ_t χ(g^t) ζ_o^{−kt}
            let mut acc = f.zero();
            for t in 0..o {
                let root = f.pow(zo, (o - (k * t) % o) % o);
                acc = f.add(&acc, &f.mul(&chi[cc.power_class(c, t as i64)], &root));
            }
            let m = f.mul(&acc, &o_inv).0 as u64;
            if m > deg {
                return Err(CharacterError::VerificationFailed(format!("eigenvalue multiplicity {m} mod {ell} exceeds degree")));
            }
            total += m;
            coords[(k * step) as usize] += m as i64;
        }
        if total != deg {
            return Err(CharacterError::VerificationFailed("eigenvalue multiplicities do not sum to the degree".into()));
        }
        values.push(coords);
    }
    Ok((deg, values))
}

/// Product in `ℤ[x]/(x^e − 1)`.
fn cyclic_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let e = a.len();
    let mut out = vec![0i64; e];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[(i + j) % e] += x * y;
            }
        }
    }
    out
}

/// Complex conjugate in `ℤ[x]/(x^e − 1)`.
fn cyclic_conj(a: &[i64]) -> Vec<i64> {
    let e = a.len();
    (0..e).map(|i| a[(e - i) % e]).collect()
}

fn int_cyclotomic(e: u64, coords: &[i64]) -> CyclotomicNumber {
    CyclotomicNumber::new(e, coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
}

/// Exact row and column orthogonality, plus `Σ χ(1)² = |G|`.
fn verify(cc: &ConjugacyClassData, order: u64, e: u64, rows: &[(u64, Vec<Vec<i64>>)]) -> Result<(), CharacterError> {
    let r = cc.len();
    let fail = |what: String| Err(CharacterError::VerificationFailed(what));
    if rows.iter().map(|(d, _)| d * d).sum::<u64>() != order {
        return fail("sum of squared degrees differs from the group order".into());
    }
    let is_int = |v: &[i64], target: i64| {
        let mut w = v.to_vec();
        w[0] -= target;
        int_cyclotomic(e, &w).is_zero()
    };
    for a in 0..r {
        for b in a..r {
            let mut acc = vec![0i64; e as usize];
            for c in 0..r {
                let prod = cyclic_mul(&rows[a].1[c], &cyclic_conj(&rows[b].1[c]));
                let size = cc.size(c) as i64;
                for (x, y) in acc.iter_mut().zip(prod) {
                    *x += size * y;
                }
            }
            let target = if a == b { order as i64 } else { 0 };
            if !is_int(&acc, target) {
                return fail(format!("rows {a} and {b} are not orthogonal"));
            }
        }
    }
    for c in 0..r {
        for d in c..r {
            let mut acc = vec![0i64; e as usize];
            for row in rows {
                for (x, y) in acc.iter_mut().zip(cyclic_mul(&row.1[c], &cyclic_conj(&row.1[d]))) {
                    *x += y;
                }
            }
            let target = if c == d { cc.centralizer_order(c) as i64 } else { 0 };
            if !is_int(&acc, target) {
                return fail(format!("columns {c} and {d} are not orthogonal"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_group, sl2_over, ResidueMatrix, DEFAULT_CAP};

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(generate_group(&[ResidueMatrix::new(3, 1, &[-1]).unwrap()], 10).unwrap())
    }

    fn s3() -> Arc<FiniteGroup> {
        let gens = [ResidueMatrix::new(3, 2, &[1, 1, 0, 1]).unwrap(), ResidueMatrix::new(3, 2, &[-1, 0, 0, 1]).unwrap()];
        Arc::new(generate_group(&gens, 100).unwrap())
    }

    fn ints(row: &ClassFunction) -> Vec<i64> {
        row.values().iter().map(|v| v.to_integer().unwrap().try_into().unwrap()).collect()
    }

    #[test]
    fn prime_choice() {
        assert_eq!(dixon_prime(24, 12, 1000).unwrap(), 13);
        // SL₂(ℤ/9): exponent 36, 2√648 ≈ 50.9
        assert_eq!(dixon_prime(648, 36, 1000).unwrap(), 73);
        assert!(matches!(dixon_prime(24, 12, 12), Err(CharacterError::NoSuitablePrime { .. })));
    }

    #[test]
    fn cyclic_group_of_order_two() {
        let t = dixon_character_table(c2()).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(ints(t.row(0)), vec![1, 1]);
        assert_eq!(ints(t.row(1)), vec![1, -1]);
    }

    #[test]
    fn trivial_group() {
        let g = Arc::new(generate_group(&[ResidueMatrix::identity(3, 1)], 10).unwrap());
        let t = dixon_character_table(g).unwrap();
        assert_eq!(t.degrees(), &[1]);
    }

    #[test]
    fn symmetric_group_degrees() {
        let t = dixon_character_table(s3()).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        // the 2-dimensional character vanishes on transpositions
        let cc = t.classes();
        let transposition = (0..cc.len()).find(|&c| cc.element_order(c) == 2).unwrap();
        assert!(t.row(2).values()[transposition].is_zero());
    }

    #[test]
    fn sl2_3_table() {
        let g = Arc::new(sl2_over(3, 1, DEFAULT_CAP).unwrap());
        let t = dixon_character_table(g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 2, 2, 2, 3]);
        for a in 0..t.len() {
            for b in 0..t.len() {
                let ip = t.inner_product(t.row(a), t.row(b)).unwrap();
                assert_eq!(ip, Rational::from_integer(((a == b) as i64).into()));
            }
        }
        // the trivial character is first
        assert!(t.row(0).values().iter().all(|v| *v == CyclotomicNumber::one()));
        // degree-3 character takes the value −1 on the central involution
        let cc = t.classes();
        let z = (0..cc.len()).find(|&c| cc.element_order(c) == 2).unwrap();
        assert_eq!(t.row(6).values()[z], CyclotomicNumber::from_int(3));
        assert_eq!(t.row(3).values()[z], CyclotomicNumber::from_int(-2));
    }

    #[test]
    fn cyclic_arithmetic() {
        assert_eq!(cyclic_mul(&[0, 1, 0], &[0, 0, 1]), vec![1, 0, 0]);
        assert_eq!(cyclic_conj(&[0, 1, 0]), vec![0, 0, 1]);
    }
}
