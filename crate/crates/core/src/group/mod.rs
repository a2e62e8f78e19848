//! Finite matrix groups over `ℤ/N`, fully enumerated.

mod classes;
mod quotient;

pub use classes::ConjugacyClassData;
pub use quotient::{reduction_map, QuotientMap};

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::linalg::{int_det, IntMatrix};

/// Default enumeration cap for [`generate_group`].
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("generator {0} is not invertible modulo {1}")]
    NotInvertible(usize, u32),
    #[error("malformed generators: {0}")]
    Malformed(String),
    #[error("reduction is not a homomorphism")]
    NotAHomomorphism,
    #[error("image of element {0} lies outside the target group")]
    TargetMismatch(usize),
    #[error("map is not surjective: image has {image} of {target} elements")]
    NotSurjective { image: usize, target: usize },
    #[error("kernel element {0} has order {1}, not a power of {2}")]
    NonPGroupKernel(usize, u32, u32),
    #[error("order {got} does not match the expected {expected}")]
    OrderMismatch { got: usize, expected: usize },
}

/// A square matrix with entries in `[0, N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueMatrix {
    modulus: u32,
    dim: usize,
    entries: Vec<u32>,
}

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.to_rows(), self.modulus)
    }
}

impl ResidueMatrix {
    pub fn new(modulus: u32, dim: usize, entries: &[i64]) -> Result<Self, GroupError> {
        if modulus == 0 || dim == 0 || entries.len() != dim * dim {
            return Err(GroupError::Malformed(format!(
                "need {} entries for dimension {dim}, modulus {modulus}",
                dim * dim
            )));
        }
        let entries = entries.iter().map(|&x| x.rem_euclid(modulus as i64) as u32).collect();
        Ok(ResidueMatrix { modulus, dim, entries })
    }

    pub fn from_rows(modulus: u32, rows: &[Vec<i64>]) -> Result<Self, GroupError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(GroupError::Malformed("matrix must be square".into()));
        }
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::new(modulus, dim, &flat)
    }

    pub fn identity(modulus: u32, dim: usize) -> Self {
        let mut entries = vec![0u32; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % modulus;
        }
        ResidueMatrix { modulus, dim, entries }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.dim).map(|c| c.to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        ResidueMatrix {
            modulus: self.modulus,
            dim: self.dim,
            entries: mat_mul(self.modulus, self.dim, &self.entries, &other.entries),
        }
    }

    /// Determinant reduced into `[0, N)`.
    pub fn det(&self) -> u32 {
        let m = IntMatrix::from_vec(
            self.dim,
            self.dim,
            self.entries.iter().map(|&x| BigInt::from(x)).collect(),
        );
        int_det(&m).mod_floor(&BigInt::from(self.modulus)).to_u32().unwrap()
    }

    pub fn is_unit(&self) -> bool {
        self.det().gcd(&self.modulus) == 1
    }

    /// Entrywise reduction to a divisor of the modulus.
    pub fn reduce(&self, modulus: u32) -> Self {
        assert!(self.modulus.is_multiple_of(modulus), "{modulus} does not divide {}", self.modulus);
        ResidueMatrix {
            modulus,
            dim: self.dim,
            entries: self.entries.iter().map(|&x| x % modulus).collect(),
        }
    }
}

fn mat_mul(modulus: u32, dim: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = modulus as u64;
    let mut out = vec![0u32; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut s = 0u64;
            for k in 0..dim {
                s += a[i * dim + k] as u64 * b[k * dim + j] as u64;
            }
            out[i * dim + j] = (s % n) as u32;
        }
    }
    out
}

/// A finite group of `dim × dim` matrices modulo `N`, enumerated in
/// breadth-first order from the identity.
pub struct FiniteGroup {
    modulus: u32,
    dim: usize,
    /// Flattened entries, `dim²` per element.
    elements: Vec<u32>,
    index: HashMap<Box<[u32]>, u32>,
    generators: Vec<usize>,
    generator_matrices: Vec<ResidueMatrix>,
    /// `(parent, generator)` with `element = parent · generator`.
    parent: Vec<(u32, u16)>,
    inverse: Vec<u32>,
    order: Vec<u32>,
    classes: OnceLock<ConjugacyClassData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("modulus", &self.modulus)
            .field("dim", &self.dim)
            .field("order", &self.order())
            .field("generators", &self.generator_matrices)
            .finish()
    }
}

/// Breadth-first closure of the generators. Element `0` is the identity and
/// new elements appear in the order `x · s` is discovered, `x` in BFS order and
/// `s` in the given generator order.
pub fn generate_group(gens: &[ResidueMatrix], cap: usize) -> Result<FiniteGroup, GroupError> {
    let Some(first) = gens.first() else {
        return Err(GroupError::Malformed("at least one generator is required".into()));
    };
    let (modulus, dim) = (first.modulus, first.dim);
    for (i, g) in gens.iter().enumerate() {
        if g.modulus != modulus || g.dim != dim {
            return Err(GroupError::Malformed(format!("generator {i} has a different shape or modulus")));
        }
        if !g.is_unit() {
            return Err(GroupError::NotInvertible(i, modulus));
        }
    }
    if gens.len() > u16::MAX as usize {
        return Err(GroupError::Malformed("too many generators".into()));
    }
    let stride = dim * dim;
    let identity = ResidueMatrix::identity(modulus, dim);
    let mut elements: Vec<u32> = identity.entries.clone();
    let mut index: HashMap<Box<[u32]>, u32> = HashMap::new();
    index.insert(identity.entries.clone().into_boxed_slice(), 0);
    let mut parent = vec![(0u32, u16::MAX)];
    let mut head = 0usize;
    while head < parent.len() {
        for (s, g) in gens.iter().enumerate() {
            let prod = mat_mul(modulus, dim, &elements[head * stride..(head + 1) * stride], &g.entries);
            if index.contains_key(prod.as_slice()) {
                continue;
            }
            if parent.len() >= cap {
                return Err(GroupError::CapExceeded(cap));
            }
            index.insert(prod.clone().into_boxed_slice(), parent.len() as u32);
            elements.extend_from_slice(&prod);
            parent.push((head as u32, s as u16));
        }
        head += 1;
    }

    let generators = gens
        .iter()
        .map(|g| index[g.entries.as_slice()] as usize)
        .collect();
    let mut group = FiniteGroup {
        modulus,
        dim,
        elements,
        index,
        generators,
        generator_matrices: gens.to_vec(),
        parent,
        inverse: Vec::new(),
        order: Vec::new(),
        classes: OnceLock::new(),
    };
    group.compute_orders_and_inverses();
    Ok(group)
}

/// The standard generators `[[1,1],[0,1]]` and `[[0,−1],[1,0]]` of `SL₂(ℤ/N)`.
pub fn sl2_generators(modulus: u32) -> Vec<ResidueMatrix> {
    vec![
        ResidueMatrix::new(modulus, 2, &[1, 1, 0, 1]).unwrap(),
        ResidueMatrix::new(modulus, 2, &[0, -1, 1, 0]).unwrap(),
    ]
}

/// Expected order `p^{3(n−1)} · p(p² − 1)` of `SL₂(ℤ/pⁿ)`.
pub fn sl2_order(p: u32, n: u32) -> u64 {
    let p = p as u64;
    p.pow(3 * (n - 1)) * p * (p * p - 1)
}

/// `SL₂(ℤ/pⁿ)`, with its order checked against the closed formula.
pub fn sl2_over(p: u32, n: u32, cap: usize) -> Result<FiniteGroup, GroupError> {
    if !crate::arith::is_prime(p as u64) || n == 0 {
        return Err(GroupError::Malformed(format!("SL2 over Z/{p}^{n} needs a prime p and n >= 1")));
    }
    let modulus = (p as u64).checked_pow(n).filter(|&m| m < u32::MAX as u64 / 2);
    let Some(modulus) = modulus else {
        return Err(GroupError::CapExceeded(cap));
    };
    let expected = sl2_order(p, n);
    if expected > cap as u64 {
        return Err(GroupError::CapExceeded(cap));
    }
    let g = generate_group(&sl2_generators(modulus as u32), cap)?;
    if g.order() as u64 != expected {
        return Err(GroupError::OrderMismatch { got: g.order(), expected: expected as usize });
    }
    Ok(g)
}

impl FiniteGroup {
    fn compute_orders_and_inverses(&mut self) {
        let n = self.order();
        let mut order = vec![1u32; n];
        let mut inverse = vec![0u32; n];
        for x in 1..n {
            // walk x, x², … until the identity; the last non-identity power is x⁻¹
            let mut acc = x;
            let mut prev = x;
            let mut k = 1u32;
            while acc != 0 {
                prev = acc;
                acc = self.mul(acc, x);
                k += 1;
            }
            order[x] = k;
            inverse[x] = prev as u32;
        }
        self.order = order;
        self.inverse = inverse;
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Element indices of the generators.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_matrices(&self) -> &[ResidueMatrix] {
        &self.generator_matrices
    }

    pub fn entries(&self, x: usize) -> &[u32] {
        let s = self.dim * self.dim;
        &self.elements[x * s..(x + 1) * s]
    }

    pub fn element(&self, x: usize) -> ResidueMatrix {
        ResidueMatrix { modulus: self.modulus, dim: self.dim, entries: self.entries(x).to_vec() }
    }

    pub fn index_of(&self, m: &ResidueMatrix) -> Option<usize> {
        if m.modulus != self.modulus || m.dim != self.dim {
            return None;
        }
        self.index_of_entries(&m.entries)
    }

    pub fn index_of_entries(&self, entries: &[u32]) -> Option<usize> {
        self.index.get(entries).map(|&i| i as usize)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let prod = mat_mul(self.modulus, self.dim, self.entries(a), self.entries(b));
        self.index[prod.as_slice()] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.order[a] as i64;
        let k = k.rem_euclid(o);
        let mut acc = 0usize;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.order[a]
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.order.iter().fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64))
    }

    /// A word `[s₀, s₁, …]` in generator positions with
    /// `x = gen[s₀] · gen[s₁] ⋯`.
    pub fn word(&self, mut x: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while x != 0 {
            let (p, s) = self.parent[x];
            w.push(s as usize);
            x = p as usize;
        }
        w.reverse();
        w
    }

    /// BFS parent of a non-identity element: `x = parent · gen[s]`.
    pub fn parent(&self, x: usize) -> Option<(usize, usize)> {
        if x == 0 {
            None
        } else {
            let (p, s) = self.parent[x];
            Some((p as usize, s as usize))
        }
    }

    pub fn conjugacy_classes(&self) -> &ConjugacyClassData {
        self.classes.get_or_init(|| ConjugacyClassData::compute(self))
    }

    /// Whether every element order is a power of `p`.
    pub fn is_p_group(&self, p: u32) -> bool {
        self.order.iter().all(|&o| is_power_of(o, p))
    }
}

pub(crate) fn is_power_of(mut n: u32, p: u32) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}
