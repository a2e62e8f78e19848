//! Class functions, ordinary character tables and Brauer characters.

mod brauer;
mod dixon;

pub use brauer::{
    brauer_character, brauer_character_at, brauer_value_order, decompose, default_field_degree, restrict_to_p_regular,
    BrauerCharacterTable,
};
pub use dixon::{dixon_character_table, dixon_character_table_with_bound, CharacterTable, DEFAULT_PRIME_BOUND};

use std::cmp::Ordering;

use thiserror::Error;

use crate::arith::{CyclotomicNumber, Rational};
use crate::meataxe::MeataxeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("no prime ℓ ≡ 1 mod {exponent} with ℓ > 2√|G| below {bound}")]
    NoSuitablePrime { exponent: u64, bound: u64 },
    #[error("character table verification failed: {0}")]
    VerificationFailed(String),
    #[error("element {0} has order divisible by the characteristic")]
    NotPRegular(usize),
    #[error("splitting extension of degree {degree} over 𝔽_{size} exceeds the bound")]
    ExtensionTooLarge { size: u32, degree: u32 },
    #[error("class functions are defined on different class lists")]
    ClassMismatch,
    #[error("target is not in the span of the basis")]
    NoSolution,
    #[error("basis class functions are linearly dependent")]
    SingularBasis,
    #[error("found {found} simple modules, expected {expected}")]
    IncompleteSimples { found: usize, expected: usize },
    #[error("simple module {0} is not absolutely irreducible over the given field")]
    NotSplit(usize),
    #[error(transparent)]
    Meataxe(#[from] Box<MeataxeError>),
}

impl From<MeataxeError> for CharacterError {
    fn from(e: MeataxeError) -> Self {
        CharacterError::Meataxe(Box::new(e))
    }
}

/// A function on a list of conjugacy classes (all classes, or the
/// `p`-regular ones), valued in a cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    classes: Vec<usize>,
    values: Vec<CyclotomicNumber>,
}

impl ClassFunction {
    pub fn new(classes: Vec<usize>, values: Vec<CyclotomicNumber>) -> Self {
        assert_eq!(classes.len(), values.len(), "one value per class");
        ClassFunction { classes, values }
    }

    pub fn constant(classes: Vec<usize>, value: i64) -> Self {
        let values = vec![CyclotomicNumber::from_int(value); classes.len()];
        ClassFunction { classes, values }
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn values(&self) -> &[CyclotomicNumber] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at a class index, if that class is in the list.
    pub fn value_at_class(&self, class: usize) -> Option<&CyclotomicNumber> {
        self.classes.iter().position(|&c| c == class).map(|i| &self.values[i])
    }

    fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(&CyclotomicNumber, &CyclotomicNumber) -> CyclotomicNumber,
    ) -> Result<Self, CharacterError> {
        if self.classes != other.classes {
            return Err(CharacterError::ClassMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| normalize(&op(a, b))).collect();
        Ok(ClassFunction { classes: self.classes.clone(), values })
    }

    pub fn add(&self, other: &Self) -> Result<Self, CharacterError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CharacterError> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self, CharacterError> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let values = self.values.iter().map(|v| v.scale(q)).collect();
        ClassFunction { classes: self.classes.clone(), values }
    }

    /// Values on a sub-list of classes.
    pub fn restrict(&self, classes: &[usize]) -> Result<Self, CharacterError> {
        let values = classes
            .iter()
            .map(|&c| self.value_at_class(c).cloned().ok_or(CharacterError::ClassMismatch))
            .collect::<Result<_, _>>()?;
        Ok(ClassFunction { classes: classes.to_vec(), values })
    }

    /// Smallest `n` such that every value lies in `ℚ(ζ_n)` as stored.
    pub fn value_order(&self) -> u64 {
        self.values.iter().fold(1, |acc, v| crate::arith::lcm_u64(acc, v.order()))
    }

    /// Canonical coordinates of every value inside `ℚ(ζ_n)`.
    pub fn canonical_key(&self, n: u64) -> Vec<Vec<Rational>> {
        self.values.iter().map(|v| v.canonical_in(n)).collect()
    }

    /// Lexicographic comparison of canonical value vectors in a common field.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        let n = crate::arith::lcm_u64(self.value_order(), other.value_order());
        self.canonical_key(n).cmp(&other.canonical_key(n))
    }
}

/// Order of basis rows of equal degree: the trivial character first, then
/// decreasing canonical value vectors.
pub(crate) fn basis_order(a: &ClassFunction, b: &ClassFunction) -> Ordering {
    let one = |f: &ClassFunction| f.values.iter().all(|v| *v == CyclotomicNumber::one());
    one(b).cmp(&one(a)).then_with(|| b.cmp_canonical(a))
}

/// Re-expresses a cyclotomic number by its reduced coordinates in its own
/// field, so that equal values have equal stored coordinates.
pub(crate) fn normalize(x: &CyclotomicNumber) -> CyclotomicNumber {
    CyclotomicNumber::new(x.order(), x.reduced())
}
