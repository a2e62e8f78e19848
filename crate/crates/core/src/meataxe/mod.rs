//! Modules over `kG` given by generator action matrices, and the meataxe.
//!
//! Matrices act on column vectors: `g · v = A_g v`, with `A_{gh} = A_g A_h`.

mod chop;
mod spin;

pub use chop::{chop, chop_with, ChopConfig, ChopResult, Fingerprint};

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{FfElem, Field, FiniteField};
use crate::group::{FiniteGroup, QuotientMap};
use crate::linalg::{self, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeataxeError {
    #[error("modules belong to different groups")]
    GroupMismatch,
    #[error("modules are defined over different fields")]
    FieldMismatch,
    #[error("expected {expected} action matrices, got {got}")]
    WrongGeneratorCount { expected: usize, got: usize },
    #[error("action matrix {0} is not a square matrix of the module dimension")]
    BadShape(usize),
    #[error("action matrix {0} is singular")]
    NotInvertible(usize),
    #[error("generator images do not define an action: {0}")]
    NotAnAction(String),
    #[error("group modulus {modulus} is not a power of the characteristic {p}")]
    NoNaturalModule { modulus: u32, p: u32 },
    #[error("no splitting element found in {0} trials")]
    RetryBudgetExceeded(usize),
    #[error(transparent)]
    Character(#[from] Box<crate::characters::CharacterError>),
}

/// A finite-dimensional `kG`-module.
#[derive(Clone, Debug)]
pub struct Representation {
    group: Arc<FiniteGroup>,
    field: Arc<FiniteField>,
    dim: usize,
    action: Vec<Matrix<FfElem>>,
}

/// Number of random `(element, generator)` pairs checked when a module is built
/// from arbitrary matrices.
const ACTION_SAMPLES: usize = 64;

impl Representation {
    /// Builds a module from one matrix per group generator, checking shape,
    /// invertibility and multiplicativity on sampled group elements.
    pub fn new(
        group: Arc<FiniteGroup>,
        field: Arc<FiniteField>,
        dim: usize,
        action: Vec<Matrix<FfElem>>,
    ) -> Result<Self, MeataxeError> {
        let rep = Self::new_unchecked(group, field, dim, action)?;
        rep.verify_action(ACTION_SAMPLES, 0)?;
        Ok(rep)
    }

    fn new_unchecked(
        group: Arc<FiniteGroup>,
        field: Arc<FiniteField>,
        dim: usize,
        action: Vec<Matrix<FfElem>>,
    ) -> Result<Self, MeataxeError> {
        let expected = group.generators().len();
        if action.len() != expected {
            return Err(MeataxeError::WrongGeneratorCount { expected, got: action.len() });
        }
        for (i, a) in action.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(MeataxeError::BadShape(i));
            }
            if linalg::rank(field.as_ref(), a) != dim {
                return Err(MeataxeError::NotInvertible(i));
            }
        }
        Ok(Representation { group, field, dim, action })
    }

    /// Checks `A(x·s) = A(x)·A(s)` for random elements `x` and generators `s`,
    /// where `A(x)` is evaluated along the BFS word of `x`.
    pub fn verify_action(&self, samples: usize, seed: u64) -> Result<(), MeataxeError> {
        let f = self.field.as_ref();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.group.order();
        for _ in 0..samples {
            let x = rng.gen_range(0..n);
            let s = rng.gen_range(0..self.action.len());
            let xs = self.group.mul(x, self.group.generators()[s]);
            let lhs = self.element_matrix(xs);
            let rhs = self.element_matrix(x).mul(f, &self.action[s]);
            if lhs != rhs {
                return Err(MeataxeError::NotAnAction(format!("relation fails at element {x}, generator {s}")));
            }
        }
        Ok(())
    }

    pub fn trivial(group: Arc<FiniteGroup>, field: Arc<FiniteField>) -> Self {
        let one = Matrix::identity(field.as_ref(), 1);
        let action = vec![one; group.generators().len()];
        Representation { group, field, dim: 1, action }
    }

    /// The defining matrices reduced modulo `p`; requires the group modulus to
    /// be a power of the field characteristic.
    pub fn natural(group: Arc<FiniteGroup>, field: Arc<FiniteField>) -> Result<Self, MeataxeError> {
        let p = field.characteristic();
        let modulus = group.modulus();
        if !crate::group::is_power_of(modulus, p) || modulus == 1 {
            return Err(MeataxeError::NoNaturalModule { modulus, p });
        }
        let d = group.dim();
        let action = group
            .generator_matrices()
            .iter()
            .map(|m| Matrix::from_vec(d, d, m.entries().iter().map(|&x| field.from_int(x as i64)).collect()))
            .collect();
        Ok(Representation { group, field, dim: d, action })
    }

    /// Permutation module from generator permutations of `{0, …, n−1}`.
    ///
    /// The action is checked exhaustively (`π(x·s) = π(x)∘π(s)` for all `x`,
    /// `s`) when `|G|·n` is small, otherwise on sampled elements.
    pub fn perm_module(
        group: Arc<FiniteGroup>,
        perms: &[Vec<usize>],
        field: Arc<FiniteField>,
    ) -> Result<Self, MeataxeError> {
        let expected = group.generators().len();
        if perms.len() != expected {
            return Err(MeataxeError::WrongGeneratorCount { expected, got: perms.len() });
        }
        let n = perms.first().map_or(0, |p| p.len());
        for (i, p) in perms.iter().enumerate() {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(MeataxeError::NotAnAction(format!("generator {i} is not a permutation")));
            }
        }
        verify_perm_action(&group, perms)?;
        let f = field.as_ref();
        let action = perms
            .iter()
            .map(|p| {
                let mut m = Matrix::zero(f, n, n);
                for (x, &y) in p.iter().enumerate() {
                    m.set(y, x, f.one());
                }
                m
            })
            .collect();
        Ok(Representation { group, field, dim: n, action })
    }

    /// Left regular module `k[G]`.
    pub fn regular(group: Arc<FiniteGroup>, field: Arc<FiniteField>) -> Self {
        let perms: Vec<Vec<usize>> = group
            .generators()
            .iter()
            .map(|&s| (0..group.order()).map(|x| group.mul(s, x)).collect())
            .collect();
        Self::perm_module(group, &perms, field).expect("left multiplication is an action")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix<FfElem>] {
        &self.action
    }

    /// Matrix of an arbitrary group element, multiplied out along its word.
    pub fn element_matrix(&self, x: usize) -> Matrix<FfElem> {
        let f = self.field.as_ref();
        self.group
            .word(x)
            .into_iter()
            .fold(Matrix::identity(f, self.dim), |acc, s| acc.mul(f, &self.action[s]))
    }

    fn check_compatible(&self, other: &Self) -> Result<(), MeataxeError> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(MeataxeError::GroupMismatch);
        }
        if self.field != other.field {
            return Err(MeataxeError::FieldMismatch);
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, MeataxeError> {
        self.check_compatible(other)?;
        let f = self.field.as_ref();
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(f, b)).collect();
        Ok(Representation { group: self.group.clone(), field: self.field.clone(), dim: self.dim + other.dim, action })
    }

    pub fn tensor(&self, other: &Self) -> Result<Self, MeataxeError> {
        self.check_compatible(other)?;
        let f = self.field.as_ref();
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.kronecker(f, b)).collect();
        Ok(Representation { group: self.group.clone(), field: self.field.clone(), dim: self.dim * other.dim, action })
    }

    /// Contragredient module, acting by inverse transposes.
    pub fn dual(&self) -> Self {
        let f = self.field.as_ref();
        let action = self
            .action
            .iter()
            .map(|a| linalg::inverse(f, a).expect("action matrices are invertible").transpose())
            .collect();
        Representation { group: self.group.clone(), field: self.field.clone(), dim: self.dim, action }
    }

    /// Inflation along `map: H ↠ G` where `G` is this module's group.
    pub fn inflate(&self, map: &QuotientMap) -> Result<Self, MeataxeError> {
        if !Arc::ptr_eq(map.target(), &self.group) {
            return Err(MeataxeError::GroupMismatch);
        }
        let source = map.source().clone();
        let action = source.generators().iter().map(|&s| self.element_matrix(map.apply(s))).collect();
        Ok(Representation { group: source, field: self.field.clone(), dim: self.dim, action })
    }

    /// Extension of scalars along an embedding of fields given elementwise.
    pub fn extend_scalars(&self, big: Arc<FiniteField>, embedding: &[FfElem]) -> Self {
        let action = self.action.iter().map(|a| a.map(|x| embedding[x.0 as usize])).collect();
        Representation { group: self.group.clone(), field: big, dim: self.dim, action }
    }
}

fn verify_perm_action(group: &FiniteGroup, perms: &[Vec<usize>]) -> Result<(), MeataxeError> {
    const EXHAUSTIVE_LIMIT: usize = 20_000_000;
    let n = perms.first().map_or(0, |p| p.len());
    let order = group.order();
    let gens = group.generators();
    if order.saturating_mul(n.max(1)) <= EXHAUSTIVE_LIMIT {
        // π(x) along BFS words, then check every edge of the Cayley graph
        let mut pi: Vec<Vec<usize>> = vec![Vec::new(); order];
        pi[0] = (0..n).collect();
        for x in 1..order {
            let (parent, s) = group.parent(x).unwrap();
            pi[x] = (0..n).map(|i| pi[parent][perms[s][i]]).collect();
        }
        for x in 0..order {
            for (s, &g) in gens.iter().enumerate() {
                let xs = group.mul(x, g);
                if (0..n).any(|i| pi[xs][i] != pi[x][perms[s][i]]) {
                    return Err(MeataxeError::NotAnAction(format!("relation fails at element {x}, generator {s}")));
                }
            }
        }
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let eval = |x: usize| -> Vec<usize> {
        group.word(x).into_iter().fold((0..n).collect::<Vec<_>>(), |acc, s| (0..n).map(|i| acc[perms[s][i]]).collect())
    };
    for _ in 0..ACTION_SAMPLES {
        let x = rng.gen_range(0..order);
        let s = rng.gen_range(0..gens.len());
        let lhs = eval(group.mul(x, gens[s]));
        let px = eval(x);
        if (0..n).any(|i| lhs[i] != px[perms[s][i]]) {
            return Err(MeataxeError::NotAnAction(format!("relation fails at element {x}, generator {s}")));
        }
    }
    Ok(())
}

/// `dim Hom_{kG}(a, b)`: the solution space of `T·aᵢ = bᵢ·T` over all generators.
pub fn hom_dim(a: &Representation, b: &Representation) -> Result<usize, MeataxeError> {
    a.check_compatible(b)?;
    let f = a.field.as_ref();
    let (da, db) = (a.dim, b.dim);
    let unknowns = da * db;
    if unknowns == 0 {
        return Ok(0);
    }
    let eqs = a.action.len() * unknowns;
    let mut sys = Matrix::zero(f, eqs, unknowns);
    // T is db × da, unknown (r, c) sits at column r·da + c
    for (g, (ai, bi)) in a.action.iter().zip(&b.action).enumerate() {
        for r in 0..db {
            for c in 0..da {
                let row = g * unknowns + r * da + c;
                for k in 0..da {
                    let col = r * da + k;
                    let v = f.add(sys.get(row, col), ai.get(k, c));
                    sys.set(row, col, v);
                }
                for k in 0..db {
                    let col = k * da + c;
                    let v = f.sub(sys.get(row, col), bi.get(r, k));
                    sys.set(row, col, v);
                }
            }
        }
    }
    Ok(unknowns - linalg::rank(f, &sys))
}
