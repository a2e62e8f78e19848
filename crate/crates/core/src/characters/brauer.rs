use std::sync::Arc;

use super::{normalize, CharacterError, ClassFunction};
use crate::arith::{lcm_u64, make_field, p_prime_part, CyclotomicNumber, FfElem, FiniteField, Rational, Rationals};
use crate::group::{FiniteGroup, QuotientMap};
use crate::linalg::{self, LinalgError, Matrix};
use crate::meataxe::{chop, hom_dim, Fingerprint, Representation};

/// Largest field size allowed for the splitting extension used to read off
/// eigenvalues.
const MAX_EXTENSION_SIZE: u64 = 1 << 20;

/// Groups up to this order fall back to chopping the regular module when the
/// tensor closure of the seed modules does not produce every simple.
const REGULAR_FALLBACK_LIMIT: usize = 5_000;

/// `e′`, the `p′`-part of the group exponent. Brauer character values are
/// stored in `ℚ(ζ_{e′})`.
pub fn brauer_value_order(g: &FiniteGroup, p: u32) -> u64 {
    p_prime_part(g.exponent(), p as u64)
}

/// Smallest `d` such that `𝔽_{p^d}` contains all `e′`-th roots of unity.
pub fn default_field_degree(g: &FiniteGroup, p: u32) -> u32 {
    let e = brauer_value_order(g, p);
    let mut d = 1;
    let mut q = p as u64 % e;
    while q != 1 % e {
        q = q * p as u64 % e;
        d += 1;
    }
    d
}

/// Brauer character of a module on the given `p`-regular classes, evaluated at
/// the class representatives.
pub fn brauer_character(m: &Representation, classes: &[usize]) -> Result<ClassFunction, CharacterError> {
    let cc = m.group().conjugacy_classes();
    let reps: Vec<usize> = classes.iter().map(|&c| cc.representative(c)).collect();
    let values = brauer_character_at(m, &reps)?;
    Ok(ClassFunction::new(classes.to_vec(), values))
}

/// Brauer character values at arbitrary `p`-regular elements.
///
/// Each eigenvalue `λ` of `M_x` is a `d`-th root of unity for `d = order(x)`,
/// found in an extension containing those roots; its multiplicity is the
/// nullity of `M_x − λ` and it lifts to `ζ_d^j` through the Teichmüller
/// convention of that extension.
pub fn brauer_character_at(m: &Representation, elements: &[usize]) -> Result<Vec<CyclotomicNumber>, CharacterError> {
    let g = m.group();
    let field = m.field();
    let p = field.characteristic();
    let e = brauer_value_order(g, p);
    let mut l = 1u64;
    for &x in elements {
        let o = g.element_order(x);
        if o.is_multiple_of(p) {
            return Err(CharacterError::NotPRegular(x));
        }
        l = lcm_u64(l, o as u64);
    }
    let (big, embedding) = splitting_extension(field, l)?;
    let dim = m.dim();
    let mut out = Vec::with_capacity(elements.len());
    for &x in elements {
        let mat = m.element_matrix(x);
        let mat = match &embedding {
            Some(emb) => mat.map(|a| emb[a.0 as usize]),
            None => mat,
        };
        let d = g.element_order(x) as u64;
        let step = (e / d) as usize;
        let mut coords = vec![Rational::from_integer(0.into()); e as usize];
        let mut total = 0;
        for (j, lambda) in big.roots_of_unity(d) {
            if total == dim {
                break;
            }
            let nullity = dim - linalg::rank(big.as_ref(), &mat.shift(big.as_ref(), &lambda));
            total += nullity;
            coords[j as usize * step] += Rational::from_integer(nullity.into());
        }
        if total != dim {
            return Err(CharacterError::VerificationFailed(format!("element {x} does not act semisimply")));
        }
        out.push(normalize(&CyclotomicNumber::new(e, coords)));
    }
    Ok(out)
}

type Extension = (Arc<FiniteField>, Option<Vec<FfElem>>);

fn splitting_extension(field: &Arc<FiniteField>, l: u64) -> Result<Extension, CharacterError> {
    let q = field.size() as u64;
    let mut k = 1u32;
    let mut qk = q;
    while !(qk - 1).is_multiple_of(l) {
        k += 1;
        qk = qk.saturating_mul(q);
        if qk > MAX_EXTENSION_SIZE {
            return Err(CharacterError::ExtensionTooLarge { size: q as u32, degree: k });
        }
    }
    if k == 1 {
        return Ok((field.clone(), None));
    }
    let big = make_field(field.characteristic(), field.degree() * k, None)
        .map_err(|_| CharacterError::ExtensionTooLarge { size: q as u32, degree: k })?;
    let emb = field.embedding_into(&big).expect("degree divides");
    Ok((Arc::new(big), Some(emb)))
}

/// Values of an ordinary class function on the `p`-regular classes.
pub fn restrict_to_p_regular(chi: &ClassFunction, g: &FiniteGroup, p: u32) -> ClassFunction {
    let cc = g.conjugacy_classes();
    let mut classes = Vec::new();
    let mut values = Vec::new();
    for (&c, v) in chi.classes().iter().zip(chi.values()) {
        if !cc.element_order(c).is_multiple_of(p) {
            classes.push(c);
            values.push(v.clone());
        }
    }
    ClassFunction::new(classes, values)
}

/// Exact coordinates of `target` in a linearly independent basis.
pub fn decompose(target: &ClassFunction, basis: &[ClassFunction]) -> Result<Vec<Rational>, CharacterError> {
    if basis.iter().any(|b| b.classes() != target.classes()) {
        return Err(CharacterError::ClassMismatch);
    }
    let n = basis.iter().fold(target.value_order(), |acc, b| lcm_u64(acc, b.value_order()));
    let expand = |f: &ClassFunction| -> Vec<Rational> { f.canonical_key(n).into_iter().flatten().collect() };
    let t = expand(target);
    if basis.is_empty() {
        return if t.iter().all(|x| *x == Rational::from_integer(0.into())) {
            Ok(Vec::new())
        } else {
            Err(CharacterError::NoSolution)
        };
    }
    let columns: Vec<Vec<Rational>> = basis.iter().map(expand).collect();
    let a = Matrix::from_columns(t.len(), &columns);
    if linalg::rank(&Rationals, &a) < basis.len() {
        return Err(CharacterError::SingularBasis);
    }
    let b = Matrix::from_columns(t.len(), &[t]);
    match linalg::solve(&Rationals, &a, &b) {
        Ok(x) => Ok(x.column(0)),
        Err(LinalgError::NoSolution) => Err(CharacterError::NoSolution),
        Err(err) => Err(CharacterError::VerificationFailed(err.to_string())),
    }
}

/// Irreducible Brauer characters of a group over a finite field, with the
/// simple modules realizing them.
///
/// Rows are sorted by dimension, trivial module first, then by decreasing
/// canonical character values.
#[derive(Clone, Debug)]
pub struct BrauerCharacterTable {
    group: Arc<FiniteGroup>,
    field: Arc<FiniteField>,
    classes: Vec<usize>,
    fingerprints: Vec<Fingerprint>,
    simples: Vec<Representation>,
}

impl BrauerCharacterTable {
    /// Finds every simple module by chopping tensor products of a seed module
    /// (the natural module when the group modulus is a power of `p`, the
    /// regular module otherwise) until there are as many simples as
    /// `p`-regular classes.
    pub fn compute(group: Arc<FiniteGroup>, field: Arc<FiniteField>, seed: u64) -> Result<Self, CharacterError> {
        let p = field.characteristic();
        let classes = group.conjugacy_classes().p_regular_classes(p);
        let expected = classes.len();
        let seeds = match Representation::natural(group.clone(), field.clone()) {
            Ok(v) => vec![v],
            Err(_) => vec![Representation::regular(group.clone(), field.clone())],
        };
        let mut found: Vec<(Fingerprint, Representation)> = Vec::new();
        let absorb = |m: &Representation, found: &mut Vec<(Fingerprint, Representation)>| -> Result<Vec<Representation>, CharacterError> {
            let mut fresh = Vec::new();
            for f in chop(m, seed)?.into_factors() {
                if !found.iter().any(|(fp, _)| *fp == f.fingerprint) {
                    found.push((f.fingerprint, f.module.clone()));
                    fresh.push(f.module);
                }
            }
            Ok(fresh)
        };
        let mut frontier = absorb(&Representation::trivial(group.clone(), field.clone()), &mut found)?;
        for s in &seeds {
            frontier.extend(absorb(s, &mut found)?);
        }
        while found.len() < expected && !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for v in &seeds {
                    next.extend(absorb(&s.tensor(v)?, &mut found)?);
                    if found.len() == expected {
                        break;
                    }
                }
            }
            frontier = next;
        }
        if found.len() < expected && group.order() <= REGULAR_FALLBACK_LIMIT {
            absorb(&Representation::regular(group.clone(), field.clone()), &mut found)?;
        }
        if found.len() != expected {
            return Err(CharacterError::IncompleteSimples { found: found.len(), expected });
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        for (i, (_, s)) in found.iter().enumerate() {
            if hom_dim(s, s)? != 1 {
                return Err(CharacterError::NotSplit(i));
            }
        }
        let (fingerprints, simples) = found.into_iter().unzip();
        let table = BrauerCharacterTable { group, field, classes, fingerprints, simples };
        table.check_invertible()?;
        Ok(table)
    }

    fn check_invertible(&self) -> Result<(), CharacterError> {
        let rows = self.rows();
        for (i, r) in rows.iter().enumerate() {
            let others: Vec<ClassFunction> = rows.iter().take(i).cloned().collect();
            if !others.is_empty() && decompose(r, &others).is_ok() {
                return Err(CharacterError::SingularBasis);
            }
        }
        Ok(())
    }

    /// The table of `map.source()` whose simples are inflated along `map`.
    /// Only valid when the kernel is a `p`-group, so that every simple of the
    /// source is inflated from the target.
    pub fn inflate(&self, map: &QuotientMap) -> Result<Self, CharacterError> {
        if !Arc::ptr_eq(map.target(), &self.group) {
            return Err(CharacterError::ClassMismatch);
        }
        let p = self.field.characteristic();
        map.check_p_kernel(p).map_err(|e| CharacterError::VerificationFailed(e.to_string()))?;
        let source = map.source().clone();
        let classes = source.conjugacy_classes().p_regular_classes(p);
        let mut fingerprints = Vec::with_capacity(self.fingerprints.len());
        let mut simples = Vec::with_capacity(self.simples.len());
        for (i, s) in self.simples.iter().enumerate() {
            fingerprints.push(self.inflate_fingerprint(i, map)?);
            simples.push(s.inflate(map)?);
        }
        if fingerprints.len() != classes.len() {
            return Err(CharacterError::IncompleteSimples { found: fingerprints.len(), expected: classes.len() });
        }
        Ok(BrauerCharacterTable { group: source, field: self.field.clone(), classes, fingerprints, simples })
    }

    /// Fingerprint of the inflation of simple `i` along any surjection onto
    /// this table's group.
    pub fn inflate_fingerprint(&self, i: usize, map: &QuotientMap) -> Result<Fingerprint, CharacterError> {
        if !Arc::ptr_eq(map.target(), &self.group) {
            return Err(CharacterError::ClassMismatch);
        }
        let p = self.field.characteristic();
        let source = map.source();
        let sc = source.conjugacy_classes();
        let tc = self.group.conjugacy_classes();
        let classes = sc.p_regular_classes(p);
        let e = brauer_value_order(source, p);
        let fp = &self.fingerprints[i];
        let values = classes
            .iter()
            .map(|&c| {
                let t = tc.class_of(map.apply(sc.representative(c)));
                fp.character.value_at_class(t).map(|v| v.embed(e)).ok_or(CharacterError::ClassMismatch)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Fingerprint { dim: fp.dim, character: ClassFunction::new(classes, values) })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    /// The `p`-regular class indices the characters are defined on.
    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn rows(&self) -> Vec<ClassFunction> {
        self.fingerprints.iter().map(|f| f.character.clone()).collect()
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.fingerprints[i].character
    }

    pub fn dims(&self) -> Vec<usize> {
        self.fingerprints.iter().map(|f| f.dim).collect()
    }

    pub fn fingerprints(&self) -> &[Fingerprint] {
        &self.fingerprints
    }

    pub fn simples(&self) -> &[Representation] {
        &self.simples
    }

    /// Index of the simple with this fingerprint.
    pub fn index_of(&self, fp: &Fingerprint) -> Option<usize> {
        self.fingerprints.iter().position(|f| f == fp)
    }

    /// Coordinates of a class function on the `p`-regular classes in the
    /// basis of irreducible Brauer characters.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<Vec<Rational>, CharacterError> {
        decompose(chi, &self.rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use crate::group::{generate_group, sl2_over, ResidueMatrix, DEFAULT_CAP};

    fn f9() -> Arc<FiniteField> {
        Arc::new(make_field(3, 2, None).unwrap())
    }

    fn s3() -> Arc<FiniteGroup> {
        let gens = [ResidueMatrix::new(3, 2, &[1, 1, 0, 1]).unwrap(), ResidueMatrix::new(3, 2, &[-1, 0, 0, 1]).unwrap()];
        Arc::new(generate_group(&gens, 100).unwrap())
    }

    fn int(n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_int(n)
    }

    #[test]
    fn field_degrees() {
        let g = sl2_over(3, 1, DEFAULT_CAP).unwrap();
        assert_eq!(brauer_value_order(&g, 3), 4);
        assert_eq!(default_field_degree(&g, 3), 2);
        assert_eq!(default_field_degree(&s3(), 3), 1);
    }

    #[test]
    fn natural_sl2_3_character() {
        let g = Arc::new(sl2_over(3, 1, DEFAULT_CAP).unwrap());
        let v = Representation::natural(g.clone(), f9()).unwrap();
        let cc = g.conjugacy_classes();
        let classes = cc.p_regular_classes(3);
        let chi = brauer_character(&v, &classes).unwrap();
        for (&c, val) in classes.iter().zip(chi.values()) {
            match cc.element_order(c) {
                1 => assert_eq!(*val, int(2)),
                2 => assert_eq!(*val, int(-2)),
                // eigenvalues ±i
                4 => assert_eq!(*val, int(0)),
                o => panic!("unexpected order {o}"),
            }
        }
        let t = brauer_character(&Representation::trivial(g.clone(), f9()), &classes).unwrap();
        assert_eq!(t, ClassFunction::constant(classes.clone(), 1));
        let all: Vec<usize> = (0..cc.len()).collect();
        assert!(matches!(brauer_character(&v, &all), Err(CharacterError::NotPRegular(_))));
    }

    #[test]
    fn constant_on_classes() {
        let g = Arc::new(sl2_over(3, 1, DEFAULT_CAP).unwrap());
        let v = Representation::natural(g.clone(), f9()).unwrap();
        let w = v.tensor(&v).unwrap();
        let cc = g.conjugacy_classes();
        let members = cc.members();
        for c in cc.p_regular_classes(3) {
            let vals = brauer_character_at(&w, &members[c]).unwrap();
            assert!(vals.iter().all(|x| *x == vals[0]));
        }
    }

    #[test]
    fn extension_field_used_when_needed() {
        // over 𝔽₃ the order-4 eigenvalues ±i need 𝔽₉
        let g = Arc::new(sl2_over(3, 1, DEFAULT_CAP).unwrap());
        let f3 = Arc::new(make_field(3, 1, None).unwrap());
        let v3 = Representation::natural(g.clone(), f3).unwrap();
        let v9 = Representation::natural(g.clone(), f9()).unwrap();
        let classes = g.conjugacy_classes().p_regular_classes(3);
        assert_eq!(brauer_character(&v3, &classes).unwrap(), brauer_character(&v9, &classes).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let classes = vec![0, 1];
        let triv = ClassFunction::constant(classes.clone(), 1);
        let sign = ClassFunction::new(classes.clone(), vec![int(1), int(-1)]);
        let x = ClassFunction::new(classes.clone(), vec![int(3), int(1)]);
        assert_eq!(decompose(&x, &[triv.clone(), sign.clone()]).unwrap(), vec![rational(2), rational(1)]);
        assert_eq!(decompose(&triv, &[triv.clone(), sign.clone()]).unwrap(), vec![rational(1), rational(0)]);
        let zero = ClassFunction::constant(classes.clone(), 0);
        assert_eq!(decompose(&zero, &[triv.clone(), sign.clone()]).unwrap(), vec![rational(0), rational(0)]);
        assert_eq!(decompose(&x, &[triv.clone(), triv.clone()]).unwrap_err(), CharacterError::SingularBasis);
        assert_eq!(decompose(&sign, std::slice::from_ref(&triv)).unwrap_err(), CharacterError::NoSolution);
    }

    #[test]
    fn sl2_3_brauer_table() {
        let g = Arc::new(sl2_over(3, 1, DEFAULT_CAP).unwrap());
        let bt = BrauerCharacterTable::compute(g, f9(), 0).unwrap();
        assert_eq!(bt.len(), 3);
        assert_eq!(bt.dims(), vec![1, 2, 3]);
        assert_eq!(bt.row(0), &ClassFunction::constant(bt.classes().to_vec(), 1));
    }

    #[test]
    fn s3_brauer_table() {
        let g = s3();
        let f3 = Arc::new(make_field(3, 1, None).unwrap());
        let bt = BrauerCharacterTable::compute(g.clone(), f3, 0).unwrap();
        assert_eq!(bt.dims(), vec![1, 1]);
        let restricted = restrict_to_p_regular(&ClassFunction::constant((0..3).collect(), 1), &g, 3);
        assert_eq!(restricted.classes(), bt.classes());
    }
}
