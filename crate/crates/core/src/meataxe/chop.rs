use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spin::{spin, split, Echelon};
use super::{MeataxeError, Representation};
use crate::arith::{FfElem, Field, FiniteField};
use crate::characters::{brauer_character, ClassFunction};
use crate::linalg::{self, Matrix};

/// Parameters of the random search for splitting elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChopConfig {
    /// Random algebra elements tried per module before giving up.
    pub budget: usize,
    pub max_word_len: usize,
    /// Number of group words combined into one algebra element.
    pub terms: usize,
}

impl Default for ChopConfig {
    fn default() -> Self {
        ChopConfig { budget: 200, max_word_len: 6, terms: 3 }
    }
}

/// Isomorphism invariant of a simple module: its dimension and Brauer
/// character on the `p`-regular classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim: usize,
    pub character: ClassFunction,
}

impl Ord for Fingerprint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim.cmp(&other.dim).then_with(|| crate::characters::basis_order(&self.character, &other.character))
    }
}

impl PartialOrd for Fingerprint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct CompositionFactor {
    pub module: Representation,
    pub multiplicity: usize,
    pub fingerprint: Fingerprint,
}

/// Composition factors with multiplicities, sorted by fingerprint.
#[derive(Clone, Debug)]
pub struct ChopResult {
    factors: Vec<CompositionFactor>,
}

impl ChopResult {
    pub fn factors(&self) -> &[CompositionFactor] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<CompositionFactor> {
        self.factors
    }

    /// `(fingerprint, multiplicity)` pairs; equal across seeds for the same module.
    pub fn fingerprints(&self) -> Vec<(Fingerprint, usize)> {
        self.factors.iter().map(|f| (f.fingerprint.clone(), f.multiplicity)).collect()
    }

    pub fn multiplicity(&self, fp: &Fingerprint) -> usize {
        self.factors.iter().find(|f| f.fingerprint == *fp).map_or(0, |f| f.multiplicity)
    }

    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity * f.module.dim()).sum()
    }
}

pub fn chop(m: &Representation, seed: u64) -> Result<ChopResult, MeataxeError> {
    chop_with(m, seed, &ChopConfig::default())
}

/// Splits `m` into composition factors. Irreducibility of each factor is
/// certified by Norton's test; factors are identified by fingerprint.
pub fn chop_with(m: &Representation, seed: u64, cfg: &ChopConfig) -> Result<ChopResult, MeataxeError> {
    let f = m.field().as_ref();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces = Vec::new();
    chop_rec(f, m.action().to_vec(), m.dim(), &mut rng, cfg, &mut pieces)?;

    let classes = m.group().conjugacy_classes().p_regular_classes(f.characteristic());
    let mut factors: Vec<CompositionFactor> = Vec::new();
    for (dim, action) in pieces {
        let module = Representation::new_unchecked(m.group().clone(), m.field().clone(), dim, action)?;
        let character = brauer_character(&module, &classes).map_err(|e| MeataxeError::Character(Box::new(e)))?;
        let fingerprint = Fingerprint { dim, character };
        match factors.iter_mut().find(|x| x.fingerprint == fingerprint) {
            Some(x) => x.multiplicity += 1,
            None => factors.push(CompositionFactor { module, multiplicity: 1, fingerprint }),
        }
    }
    factors.sort_by(|a, b| a.fingerprint.cmp(&b.fingerprint));
    Ok(ChopResult { factors })
}

fn chop_rec(
    f: &FiniteField,
    mats: Vec<Matrix<FfElem>>,
    dim: usize,
    rng: &mut ChaCha8Rng,
    cfg: &ChopConfig,
    out: &mut Vec<(usize, Vec<Matrix<FfElem>>)>,
) -> Result<(), MeataxeError> {
    if dim == 0 {
        return Ok(());
    }
    if dim == 1 {
        out.push((dim, mats));
        return Ok(());
    }
    match find_submodule(f, &mats, dim, rng, cfg)? {
        Some(sub) => {
            let s = sub.len();
            let (lower, upper) = split(f, &mats, &sub);
            chop_rec(f, lower, s, rng, cfg, out)?;
            chop_rec(f, upper, dim - s, rng, cfg, out)
        }
        None => {
            out.push((dim, mats));
            Ok(())
        }
    }
}

/// A proper nonzero submodule, or `None` once Norton's test certifies that
/// the module is irreducible.
fn find_submodule(
    f: &FiniteField,
    mats: &[Matrix<FfElem>],
    dim: usize,
    rng: &mut ChaCha8Rng,
    cfg: &ChopConfig,
) -> Result<Option<Echelon>, MeataxeError> {
    let transposed: Vec<Matrix<FfElem>> = mats.iter().map(|m| m.transpose()).collect();
    for _ in 0..cfg.budget {
        let a = random_element(f, mats, dim, rng, cfg);
        let cp = linalg::charpoly(f, &a);
        for lambda in f.elements() {
            if !f.is_zero(&eval(f, &cp, lambda)) {
                continue;
            }
            let n = a.shift(f, &lambda);
            let kernel = linalg::kernel_basis(f, &n);
            for v in &kernel {
                let w = spin(f, mats, v);
                if w.len() < dim {
                    return Ok(Some(w));
                }
            }
            if kernel.len() == 1 {
                // Norton: the kernel vector generates everything; the module
                // is irreducible iff the same holds for the transposed action
                let kt = linalg::kernel_basis(f, &n.transpose());
                let w = spin(f, &transposed, &kt[0]);
                if w.len() == dim {
                    return Ok(None);
                }
                let annihilator = linalg::kernel_basis(f, &Matrix::from_rows(w.vectors()));
                let mut sub = Echelon::new();
                for v in annihilator {
                    sub.insert(f, v);
                }
                return Ok(Some(sub));
            }
        }
    }
    Err(MeataxeError::RetryBudgetExceeded(cfg.budget))
}

fn random_element(
    f: &FiniteField,
    mats: &[Matrix<FfElem>],
    dim: usize,
    rng: &mut ChaCha8Rng,
    cfg: &ChopConfig,
) -> Matrix<FfElem> {
    let q = f.size();
    let mut acc = Matrix::zero(f, dim, dim);
    for _ in 0..cfg.terms {
        let len = rng.gen_range(1..=cfg.max_word_len);
        let mut w = mats[rng.gen_range(0..mats.len())].clone();
        for _ in 1..len {
            w = w.mul(f, &mats[rng.gen_range(0..mats.len())]);
        }
        let c = FfElem(rng.gen_range(1..q));
        acc = acc.add(f, &w.scale(f, &c));
    }
    acc
}

fn eval(f: &FiniteField, coeffs: &[FfElem], x: FfElem) -> FfElem {
    coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, &x), c))
}
