//! Congruence towers `⋯ ↠ G₃ ↠ G₂ ↠ G₁` and the Cartan recursion
//! `C(G_{i+1}) = B·C(G_i)`, where `B` records the composition factors of
//! `k[U_i] ⊗ T` for the kernel `U_i` of `G_{i+1} ↠ G_i` acting by conjugation.
//!
//! Levels and sections are numbered from 1: section `i` is the kernel of
//! `G_{i+1} ↠ G_i`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{rational_to_integer, CyclotomicNumber, FiniteField};
use crate::cde::CdeError;
use crate::characters::{BrauerCharacterTable, CharacterError, ClassFunction};
use crate::group::{generate_group, reduction_map, sl2_over, FiniteGroup, GroupError, QuotientMap, ResidueMatrix};
use crate::linalg::{int_det, int_matpow, IntMatrix};
use crate::meataxe::{MeataxeError, Representation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Cde(#[from] CdeError),
    #[error(transparent)]
    Meataxe(#[from] MeataxeError),
    #[error("tower has no level or section {0}")]
    BadLevel(usize),
    #[error("p-power map between sections {level} and {next} fails: {reason}", next = .level + 1)]
    NotUniform { level: usize, reason: String },
    #[error("B entry ({row}, {col}) is not an integer")]
    NonIntegralEntry { row: usize, col: usize },
    #[error("B entry ({row}, {col}) is negative")]
    NegativeEntry { row: usize, col: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `SL₂(ℤ/pⁿ)` for `n = 1, 2, …`.
    Sl2,
    /// Explicitly given levels and maps.
    Custom(String),
}

#[derive(Debug, Clone)]
pub struct TowerDescriptor {
    family: Family,
    p: u32,
    levels: Vec<Arc<FiniteGroup>>,
    /// `maps[i]: levels[i + 1] ↠ levels[i]`.
    maps: Vec<QuotientMap>,
}

/// The `SL₂(ℤ/pⁿ)` tower for `n = 1..=depth`.
pub fn build_tower(p: u32, depth: usize, cap: usize) -> Result<TowerDescriptor, TowerError> {
    let mut levels = Vec::with_capacity(depth);
    for n in 1..=depth {
        levels.push(Arc::new(sl2_over(p, n as u32, cap)?));
    }
    let maps = levels
        .windows(2)
        .map(|w| reduction_map(w[1].clone(), w[0].clone(), p))
        .collect::<Result<Vec<_>, _>>()?;
    TowerDescriptor::new(Family::Sl2, p, levels, maps)
}

/// `S₃ ≅ AGL(1, 3)` over `C₂`, the kernel being the translations `C₃`.
pub fn s3_tower() -> TowerDescriptor {
    let s3 = Arc::new(
        generate_group(
            &[ResidueMatrix::new(3, 2, &[1, 1, 0, 1]).unwrap(), ResidueMatrix::new(3, 2, &[-1, 0, 0, 1]).unwrap()],
            100,
        )
        .unwrap(),
    );
    let c2 = Arc::new(generate_group(&[ResidueMatrix::new(3, 1, &[-1]).unwrap()], 10).unwrap());
    let det = QuotientMap::from_fn(s3.clone(), c2.clone(), |m| ResidueMatrix::new(3, 1, &[m.det() as i64]).unwrap())
        .expect("determinant is a surjection onto C₂");
    TowerDescriptor::new(Family::Custom("S3/C3".into()), 3, vec![c2, s3], vec![det]).expect("kernel is a 3-group")
}

impl TowerDescriptor {
    /// Checks that the maps chain up and that every kernel is a `p`-group.
    pub fn new(family: Family, p: u32, levels: Vec<Arc<FiniteGroup>>, maps: Vec<QuotientMap>) -> Result<Self, TowerError> {
        if levels.is_empty() || maps.len() + 1 != levels.len() {
            return Err(TowerError::DimensionMismatch("need one map between consecutive levels".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if !Arc::ptr_eq(m.source(), &levels[i + 1]) || !Arc::ptr_eq(m.target(), &levels[i]) {
                return Err(TowerError::DimensionMismatch(format!("map {} does not connect its levels", i + 1)));
            }
            m.check_p_kernel(p)?;
        }
        Ok(TowerDescriptor { family, p, levels, maps })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// `G_n`, `1 ≤ n ≤ depth`.
    pub fn level(&self, n: usize) -> Result<&Arc<FiniteGroup>, TowerError> {
        n.checked_sub(1).and_then(|i| self.levels.get(i)).ok_or(TowerError::BadLevel(n))
    }

    /// `G_{i+1} ↠ G_i`.
    pub fn map(&self, i: usize) -> Result<&QuotientMap, TowerError> {
        i.checked_sub(1).and_then(|j| self.maps.get(j)).ok_or(TowerError::BadLevel(i))
    }

    /// The composite `G_n ↠ G_m` for `m ≤ n`.
    pub fn map_between(&self, n: usize, m: usize) -> Result<QuotientMap, TowerError> {
        let mut out = QuotientMap::identity(self.level(n)?.clone());
        self.level(m)?;
        for k in (m..n).rev() {
            out = out.then(self.map(k)?)?;
        }
        Ok(out)
    }

    /// Elements of `U_i = ker(G_{i+1} ↠ G_i)`, as indices in `G_{i+1}`.
    pub fn section(&self, i: usize) -> Result<&[usize], TowerError> {
        Ok(self.map(i)?.kernel())
    }

    /// Permutation module of `G_{i+1}` on `U_i` by conjugation.
    pub fn section_module(&self, i: usize, field: Arc<FiniteField>) -> Result<Representation, TowerError> {
        let g = self.level(i + 1)?.clone();
        let sec = self.section(i)?;
        let pos = positions(g.order(), sec);
        let perms: Vec<Vec<usize>> = g
            .generators()
            .iter()
            .map(|&s| sec.iter().map(|&u| pos[g.conjugate(u, s)]).collect())
            .collect();
        Ok(Representation::perm_module(g, &perms, field)?)
    }

    /// Brauer character of `k[U_i]` on the given `p`-regular classes of
    /// `G_{i+1}`: the number of section elements each class representative
    /// centralizes.
    pub fn section_brauer_character(&self, i: usize, classes: &[usize]) -> Result<ClassFunction, TowerError> {
        let g = self.level(i + 1)?;
        let sec = self.section(i)?;
        let cc = g.conjugacy_classes();
        let values = classes
            .iter()
            .map(|&c| {
                let x = cc.representative(c);
                let fixed = sec.iter().filter(|&&u| g.conjugate(u, x) == u).count();
                CyclotomicNumber::from_int(fixed as i64)
            })
            .collect();
        Ok(ClassFunction::new(classes.to_vec(), values))
    }

    /// `B[S][T]`, the multiplicity of `S` in `k[U_i] ⊗ T`, from a Brauer table
    /// of `G_{i+1}` whose simples are inflated from `G_i`.
    pub fn b_matrix(&self, i: usize, bt: &BrauerCharacterTable) -> Result<IntMatrix, TowerError> {
        let g = self.level(i + 1)?;
        if !Arc::ptr_eq(bt.group(), g) {
            return Err(TowerError::InvariantViolation(format!("Brauer table is not over level {}", i + 1)));
        }
        let x = self.section_brauer_character(i, bt.classes())?;
        let n = bt.len();
        let mut b = IntMatrix::zero(n, n);
        for t in 0..n {
            let col = bt.decompose(&x.mul(bt.row(t))?)?;
            for (s, q) in col.iter().enumerate() {
                let v = rational_to_integer(q).ok_or(TowerError::NonIntegralEntry { row: s, col: t })?;
                if v.is_negative() {
                    return Err(TowerError::NegativeEntry { row: s, col: t });
                }
                b.set(s, t, v);
            }
        }
        let dims: Vec<BigInt> = bt.dims().into_iter().map(BigInt::from).collect();
        check_dimension_count(&b, &dims, self.section(i)?.len())?;
        Ok(b)
    }

    /// Brauer table of `G_n` obtained by inflating a table of `G_1`.
    pub fn inflate_table(&self, base: &BrauerCharacterTable, n: usize) -> Result<BrauerCharacterTable, TowerError> {
        if !Arc::ptr_eq(base.group(), self.level(1)?) {
            return Err(TowerError::InvariantViolation("base table is not over level 1".into()));
        }
        if n == 1 {
            return Ok(base.clone());
        }
        Ok(base.inflate(&self.map_between(n, 1)?)?)
    }

    /// Checks that `x ↦ xᵖ` on lifts induces a well-defined, conjugation
    /// equivariant bijection `U_i → U_{i+1}`. Returns, for each position in
    /// `U_i`, the image as an index in `G_{i+2}`; empty (vacuously uniform)
    /// when the tower is too short to have both sections.
    pub fn verify_uniform(&self, i: usize) -> Result<Vec<usize>, TowerError> {
        if i == 0 {
            return Err(TowerError::BadLevel(0));
        }
        if self.depth() < i + 2 {
            return Ok(Vec::new());
        }
        let top = self.level(i + 2)?;
        let lower = self.section(i)?;
        let upper = self.section(i + 1)?;
        let not_uniform = |reason: String| TowerError::NotUniform { level: i, reason };
        let down = self.map(i + 1)?;
        let mid = self.level(i + 1)?;
        let pos_lower = positions(mid.order(), lower);
        let pos_upper = positions(top.order(), upper);
        let mut image = vec![usize::MAX; lower.len()];
        for x in 0..top.order() {
            let u = pos_lower[down.apply(x)];
            if u == usize::MAX {
                continue;
            }
            let y = top.pow(x, self.p as i64);
            if pos_upper[y] == usize::MAX {
                return Err(not_uniform(format!("the p-th power of lift {x} leaves the section")));
            }
            if image[u] == usize::MAX {
                image[u] = y;
            } else if image[u] != y {
                return Err(not_uniform(format!("p-th powers of lifts of element {} disagree", lower[u])));
            }
        }
        let mut hit = vec![false; upper.len()];
        for &y in &image {
            hit[pos_upper[y]] = true;
        }
        if lower.len() != upper.len() || hit.iter().any(|h| !h) {
            return Err(not_uniform("p-power map is not a bijection".into()));
        }
        // conjugation by every generator of the top level commutes with the map
        for &g in top.generators() {
            let gbar = down.apply(g);
            for (u, &elem) in lower.iter().enumerate() {
                let conj = pos_lower[mid.conjugate(elem, gbar)];
                if image[conj] != top.conjugate(image[u], g) {
                    return Err(not_uniform(format!("not equivariant under generator {g}")));
                }
            }
        }
        Ok(image)
    }
}

fn positions(n: usize, elems: &[usize]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (i, &x) in elems.iter().enumerate() {
        pos[x] = i;
    }
    pos
}

/// `Σ_S dim(S)·B[S][T] = |U|·dim(T)` for every column `T`.
pub fn check_dimension_count(b: &IntMatrix, dims: &[BigInt], section_order: usize) -> Result<(), TowerError> {
    for t in 0..b.cols() {
        let lhs: BigInt = (0..b.rows()).map(|s| &dims[s] * b.get(s, t)).sum();
        if lhs != BigInt::from(section_order) * &dims[t] {
            return Err(TowerError::InvariantViolation(format!("dimension count fails in column {t}")));
        }
    }
    Ok(())
}

/// `C(G_n) = B^{n−1}·C(G_1)`.
pub fn tower_cartan(c1: &IntMatrix, b: &IntMatrix, n: u64) -> Result<IntMatrix, TowerError> {
    if n == 0 {
        return Err(TowerError::BadLevel(0));
    }
    if !b.is_square() || !c1.is_square() || b.cols() != c1.rows() {
        return Err(TowerError::DimensionMismatch(format!(
            "B is {}×{}, C₁ is {}×{}",
            b.rows(),
            b.cols(),
            c1.rows(),
            c1.cols()
        )));
    }
    Ok(int_matpow(b, n - 1).mul(c1))
}

/// Closed form of `C(SL₂(ℤ/3ⁿ))` over `𝔽₉`, simples ordered by dimension
/// `(1, 3, 2)`, together with its determinant `3^{7n−5}`.
pub fn sl2_closed_form(n: u32) -> Result<(IntMatrix, BigInt), TowerError> {
    if n == 0 {
        return Err(TowerError::BadLevel(0));
    }
    let three = BigInt::from(3);
    let top = three.pow(3 * n - 2);
    let quarter = |x: BigInt, idx: (usize, usize)| -> Result<BigInt, TowerError> {
        if !(&x % 4u32).is_zero() {
            return Err(TowerError::NonIntegralEntry { row: idx.0, col: idx.1 });
        }
        Ok(x / 4u32)
    };
    let a = quarter(&top + three.pow(n + 1), (0, 0))?;
    let b = quarter(&top - three.pow(n), (0, 1))?;
    let c = quarter(&top + three.pow(n - 1), (1, 1))?;
    let z = BigInt::zero();
    let m = IntMatrix::from_vec(3, 3, vec![a, b.clone(), z.clone(), b, c, z.clone(), z.clone(), z, top]);
    let det = three.pow(7 * n - 5);
    if int_det(&m) != det {
        return Err(TowerError::InvariantViolation("closed form determinant".into()));
    }
    Ok((m, det))
}

/// A permutation `π` with `ours[k].permuted(π) == theirs[k]` for every `k`,
/// found by exhaustive search (intended for a handful of simples).
pub fn find_simultaneous_permutation(ours: &[&IntMatrix], theirs: &[&IntMatrix]) -> Option<Vec<usize>> {
    let n = ours.first()?.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut found = None;
    permute(&mut perm, 0, &mut |p| {
        if found.is_none() && ours.iter().zip(theirs).all(|(a, b)| a.permuted(p) == **b) {
            found = Some(p.to_vec());
        }
    });
    found
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}
