use crate::arith::{FfElem, Field, FiniteField};
use crate::linalg::{self, Matrix};

/// Vectors in semi-echelon form: each stored row is zero at the pivots of
/// the rows stored before it and has a `1` at its own pivot.
pub(super) struct Echelon {
    rows: Vec<(usize, Vec<FfElem>)>,
}

impl Echelon {
    pub(super) fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub(super) fn len(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, f: &FiniteField, mut v: Vec<FfElem>) -> Vec<FfElem> {
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c.0 == 0 {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if r.0 != 0 {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    /// Adds `v` if it is independent; returns the reduced, normalized vector.
    pub(super) fn insert(&mut self, f: &FiniteField, v: Vec<FfElem>) -> Option<Vec<FfElem>> {
        let mut v = self.reduce(f, v);
        let piv = v.iter().position(|x| x.0 != 0)?;
        let inv = f.inv(&v[piv]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push((piv, v.clone()));
        Some(v)
    }

    pub(super) fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub(super) fn vectors(&self) -> Vec<Vec<FfElem>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

/// The smallest subspace containing `seed` and invariant under all `mats`.
pub(super) fn spin(f: &FiniteField, mats: &[Matrix<FfElem>], seed: &[FfElem]) -> Echelon {
    let mut ech = Echelon::new();
    let mut queue = Vec::new();
    if let Some(v) = ech.insert(f, seed.to_vec()) {
        queue.push(v);
    }
    let dim = seed.len();
    while let Some(v) = queue.pop() {
        if ech.len() == dim {
            break;
        }
        for m in mats {
            let w = m.mul_vec(f, &v);
            if let Some(w) = ech.insert(f, w) {
                queue.push(w);
            }
        }
    }
    ech
}

/// Block-triangularizes the action along the submodule spanned by `sub`
/// (semi-echelon), returning the actions on the submodule and on the quotient.
pub(super) fn split(
    f: &FiniteField,
    mats: &[Matrix<FfElem>],
    sub: &Echelon,
) -> (Vec<Matrix<FfElem>>, Vec<Matrix<FfElem>>) {
    let dim = mats[0].rows();
    let s = sub.len();
    let mut columns = sub.vectors();
    let pivots = sub.pivots();
    for j in (0..dim).filter(|j| !pivots.contains(j)) {
        let mut e = vec![FfElem(0); dim];
        e[j] = f.one();
        columns.push(e);
    }
    let basis = Matrix::from_columns(dim, &columns);
    let basis_inv = linalg::inverse(f, &basis).expect("completed basis is invertible");
    let mut subs = Vec::with_capacity(mats.len());
    let mut quots = Vec::with_capacity(mats.len());
    for m in mats {
        let conj = basis_inv.mul(f, &m.mul(f, &basis));
        subs.push(conj.submatrix(0, s, 0, s));
        quots.push(conj.submatrix(s, dim, s, dim));
    }
    (subs, quots)
}
