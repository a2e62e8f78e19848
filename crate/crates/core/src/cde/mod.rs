//! The cde triangle at a finite level: decomposition matrix `D`, Cartan
//! matrix `C = DᵀD`, the maps `c`, `d`, `e` on Grothendieck coordinates,
//! the projective/simple pairing and blocks.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{rational_to_integer, FiniteField, Rationals};
use crate::characters::{
    dixon_character_table, restrict_to_p_regular, BrauerCharacterTable, CharacterError, CharacterTable,
};
use crate::group::{FiniteGroup, QuotientMap};
use crate::linalg::{self, int_det, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CdeError {
    #[error("decomposition number ({row}, {col}) is not an integer")]
    NonIntegralEntry { row: usize, col: usize },
    #[error("decomposition number ({row}, {col}) is negative")]
    NegativeEntry { row: usize, col: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("expected a vector in {expected}, got {got}")]
    TagMismatch { expected: Basis, got: Basis },
    #[error("vector has {got} coordinates, basis has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("simples of block {0} inflate into more than one block")]
    NotWellDefined(usize),
    #[error(transparent)]
    Character(#[from] CharacterError),
}

/// Which basis a Grothendieck coordinate vector is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Ordinary irreducible characters, `R_K(G)`.
    Ordinary,
    /// Simple `kG`-modules, `R_k(G)`.
    Simple,
    /// Projective indecomposables, `P_k(G)`, indexed like the simples.
    Projective,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Basis::Ordinary => "R_K",
            Basis::Simple => "R_k",
            Basis::Projective => "P_k",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrothendieckVector {
    basis: Basis,
    coords: Vec<BigInt>,
}

impl GrothendieckVector {
    pub fn new(basis: Basis, coords: Vec<BigInt>) -> Self {
        GrothendieckVector { basis, coords }
    }

    pub fn from_i64(basis: Basis, coords: &[i64]) -> Self {
        GrothendieckVector { basis, coords: coords.iter().map(|&c| BigInt::from(c)).collect() }
    }

    /// The `i`-th basis vector.
    pub fn unit(basis: Basis, len: usize, i: usize) -> Self {
        let mut coords = vec![BigInt::zero(); len];
        coords[i] = BigInt::from(1);
        GrothendieckVector { basis, coords }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    fn expect(&self, basis: Basis, len: usize) -> Result<(), CdeError> {
        if self.basis != basis {
            return Err(CdeError::TagMismatch { expected: basis, got: self.basis });
        }
        if self.coords.len() != len {
            return Err(CdeError::LengthMismatch { expected: len, got: self.coords.len() });
        }
        Ok(())
    }
}

/// Rows indexed by ordinary irreducibles, columns by simples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionMatrix {
    matrix: IntMatrix,
    p: u32,
}

impl DecompositionMatrix {
    /// Validates nonnegativity, nonzero rows and columns, and full column rank.
    pub fn new(matrix: IntMatrix, p: u32) -> Result<Self, CdeError> {
        for r in 0..matrix.rows() {
            for c in 0..matrix.cols() {
                if matrix.get(r, c).is_negative() {
                    return Err(CdeError::NegativeEntry { row: r, col: c });
                }
            }
            if matrix.row(r).iter().all(|x| x.is_zero()) {
                return Err(CdeError::InvariantViolation(format!("row {r} of D is zero")));
            }
        }
        for c in 0..matrix.cols() {
            if matrix.column(c).iter().all(|x| x.is_zero()) {
                return Err(CdeError::InvariantViolation(format!("column {c} of D is zero")));
            }
        }
        if linalg::rank(&Rationals, &matrix.to_rational()) != matrix.cols() {
            return Err(CdeError::InvariantViolation("D does not have full column rank".into()));
        }
        Ok(DecompositionMatrix { matrix, p })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn num_ordinary(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_simples(&self) -> usize {
        self.matrix.cols()
    }
}

/// `d_{χ,S}`: the coordinates of `χ` restricted to `p`-regular classes in the
/// basis of irreducible Brauer characters.
pub fn decomposition_matrix(ct: &CharacterTable, bt: &BrauerCharacterTable) -> Result<DecompositionMatrix, CdeError> {
    if !Arc::ptr_eq(ct.group(), bt.group()) {
        return Err(CdeError::InvariantViolation("tables belong to different groups".into()));
    }
    let p = bt.p();
    let mut d = IntMatrix::zero(ct.len(), bt.len());
    for (r, chi) in ct.rows().iter().enumerate() {
        let restricted = restrict_to_p_regular(chi, ct.group(), p);
        let coords = bt.decompose(&restricted)?;
        for (c, q) in coords.iter().enumerate() {
            let n = rational_to_integer(q).ok_or(CdeError::NonIntegralEntry { row: r, col: c })?;
            if n.is_negative() {
                return Err(CdeError::NegativeEntry { row: r, col: c });
            }
            d.set(r, c, n);
        }
    }
    DecompositionMatrix::new(d, p)
}

/// `C = DᵀD`, checked to be symmetric, positive definite, with `p`-power determinant.
pub fn cartan_matrix(d: &DecompositionMatrix) -> Result<IntMatrix, CdeError> {
    let c = d.matrix.transpose().mul(&d.matrix);
    check_cartan(&c, d.p)?;
    Ok(c)
}

/// Checks the invariants every Cartan matrix satisfies.
pub fn check_cartan(c: &IntMatrix, p: u32) -> Result<(), CdeError> {
    if !c.is_symmetric() {
        return Err(CdeError::InvariantViolation("Cartan matrix is not symmetric".into()));
    }
    if !c.is_positive_definite() {
        return Err(CdeError::InvariantViolation("Cartan matrix is not positive definite".into()));
    }
    let det = int_det(c);
    if !is_p_power(&det, p) {
        return Err(CdeError::InvariantViolation(format!("det C = {det} is not a power of {p}")));
    }
    Ok(())
}

/// Whether `n = pᵏ` for some `k ≥ 0`.
pub fn is_p_power(n: &BigInt, p: u32) -> bool {
    if !n.is_positive() {
        return false;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    while (&n % &p).is_zero() {
        n /= &p;
    }
    n == BigInt::from(1)
}

/// `d: R_K → R_k`, coordinates `Dᵀ·v`.
pub fn apply_d(v: &GrothendieckVector, d: &DecompositionMatrix) -> Result<GrothendieckVector, CdeError> {
    v.expect(Basis::Ordinary, d.num_ordinary())?;
    Ok(GrothendieckVector::new(Basis::Simple, d.matrix.transpose().mul_vec(&v.coords)))
}

/// `e: P_k → R_K`, coordinates `D·v`.
pub fn apply_e(v: &GrothendieckVector, d: &DecompositionMatrix) -> Result<GrothendieckVector, CdeError> {
    v.expect(Basis::Projective, d.num_simples())?;
    Ok(GrothendieckVector::new(Basis::Ordinary, d.matrix.mul_vec(&v.coords)))
}

/// The Cartan map `c = d ∘ e: P_k → R_k`, coordinates `C·v`.
pub fn apply_c(v: &GrothendieckVector, d: &DecompositionMatrix) -> Result<GrothendieckVector, CdeError> {
    apply_d(&apply_e(v, d)?, d)
}

/// `⟨P, V⟩ = dim Hom(P, V)` in the dual bases of projective covers and simples.
pub fn pairing(pv: &GrothendieckVector, rv: &GrothendieckVector) -> Result<BigInt, CdeError> {
    pv.expect(Basis::Projective, pv.coords.len())?;
    rv.expect(Basis::Simple, pv.coords.len())?;
    Ok(pv.coords.iter().zip(&rv.coords).map(|(a, b)| a * b).sum())
}

/// The pairing on `R_K` in which ordinary irreducibles are orthonormal.
pub fn pairing_ordinary(a: &GrothendieckVector, b: &GrothendieckVector) -> Result<BigInt, CdeError> {
    a.expect(Basis::Ordinary, a.coords.len())?;
    b.expect(Basis::Ordinary, a.coords.len())?;
    Ok(a.coords.iter().zip(&b.coords).map(|(x, y)| x * y).sum())
}

/// Blocks as connected components of the graph linking `χ` and `S` when
/// `d_{χ,S} ≠ 0`. Blocks are numbered by their smallest simple index, so the
/// block containing simple `0` comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    simple_block: Vec<usize>,
    ordinary_block: Vec<usize>,
    count: usize,
}

impl BlockPartition {
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn block_of_simple(&self, s: usize) -> usize {
        self.simple_block[s]
    }

    pub fn block_of_ordinary(&self, chi: usize) -> usize {
        self.ordinary_block[chi]
    }

    /// Simple indices of each block.
    pub fn simple_blocks(&self) -> Vec<Vec<usize>> {
        group_by_block(&self.simple_block, self.count)
    }

    /// Ordinary irreducible indices of each block.
    pub fn ordinary_blocks(&self) -> Vec<Vec<usize>> {
        group_by_block(&self.ordinary_block, self.count)
    }

    /// Whether `m[S][T] = 0` whenever `S` and `T` lie in different blocks.
    pub fn respects_zero_pattern(&self, m: &IntMatrix) -> bool {
        let n = self.simple_block.len();
        (0..n).all(|s| (0..n).all(|t| self.simple_block[s] == self.simple_block[t] || m.get(s, t).is_zero()))
    }
}

fn group_by_block(assign: &[usize], count: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); count];
    for (i, &b) in assign.iter().enumerate() {
        out[b].push(i);
    }
    out
}

pub fn block_partition(d: &DecompositionMatrix) -> BlockPartition {
    let (rows, cols) = (d.num_ordinary(), d.num_simples());
    let mut simple_block = vec![usize::MAX; cols];
    let mut ordinary_block = vec![usize::MAX; rows];
    let mut count = 0;
    for start in 0..cols {
        if simple_block[start] != usize::MAX {
            continue;
        }
        simple_block[start] = count;
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for r in 0..rows {
                if d.matrix.get(r, s).is_zero() || ordinary_block[r] != usize::MAX {
                    continue;
                }
                ordinary_block[r] = count;
                for t in 0..cols {
                    if !d.matrix.get(r, t).is_zero() && simple_block[t] == usize::MAX {
                        simple_block[t] = count;
                        stack.push(t);
                    }
                }
            }
        }
        count += 1;
    }
    BlockPartition { simple_block, ordinary_block, count }
}

/// For a surjection `α: G ↠ H`, sends each block of `H` to the block of `G`
/// containing the inflations of its simples.
pub fn block_pullback(
    alpha: &QuotientMap,
    h_table: &BrauerCharacterTable,
    h_blocks: &BlockPartition,
    g_table: &BrauerCharacterTable,
    g_blocks: &BlockPartition,
) -> Result<Vec<usize>, CdeError> {
    if !Arc::ptr_eq(alpha.source(), g_table.group()) {
        return Err(CdeError::InvariantViolation("map source is not the group of the table".into()));
    }
    let mut image = vec![None; h_blocks.len()];
    for s in 0..h_table.len() {
        let fp = h_table.inflate_fingerprint(s, alpha)?;
        let t = g_table
            .index_of(&fp)
            .ok_or_else(|| CdeError::InvariantViolation(format!("inflation of simple {s} is not a simple of G")))?;
        let hb = h_blocks.block_of_simple(s);
        let gb = g_blocks.block_of_simple(t);
        match image[hb] {
            None => image[hb] = Some(gb),
            Some(b) if b == gb => {}
            Some(_) => return Err(CdeError::NotWellDefined(hb)),
        }
    }
    image
        .into_iter()
        .enumerate()
        .map(|(b, x)| x.ok_or(CdeError::NotWellDefined(b)))
        .collect()
}

/// Everything the cde triangle produces for one group and field.
#[derive(Debug, Clone)]
pub struct ModularData {
    pub characters: CharacterTable,
    pub brauer: BrauerCharacterTable,
    pub decomposition: DecompositionMatrix,
    pub cartan: IntMatrix,
    pub blocks: BlockPartition,
}

impl ModularData {
    /// Dixon table, meataxe simples, `D`, `C` and blocks.
    pub fn compute(group: Arc<FiniteGroup>, field: Arc<FiniteField>, seed: u64) -> Result<Self, CdeError> {
        let characters = dixon_character_table(group.clone())?;
        let brauer = BrauerCharacterTable::compute(group, field, seed)?;
        Self::from_tables(characters, brauer)
    }

    pub fn from_tables(characters: CharacterTable, brauer: BrauerCharacterTable) -> Result<Self, CdeError> {
        let decomposition = decomposition_matrix(&characters, &brauer)?;
        let cartan = cartan_matrix(&decomposition)?;
        let blocks = block_partition(&decomposition);
        if !blocks.respects_zero_pattern(&cartan) {
            return Err(CdeError::InvariantViolation("Cartan matrix links different blocks".into()));
        }
        Ok(ModularData { characters, brauer, decomposition, cartan, blocks })
    }
}
