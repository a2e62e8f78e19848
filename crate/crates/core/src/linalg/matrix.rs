use std::fmt;

use super::LinalgError;
use crate::arith::Field;

/// Dense row-major matrix. Arithmetic goes through a field context.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self
    where
        E: Default,
    {
        let cols = columns.len();
        let mut data = vec![E::default(); rows * cols];
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                data[i * cols + j] = x.clone();
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zero<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zero(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = f.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for r in r0..r1 {
            data.extend_from_slice(&self.data[r * self.cols + c0..r * self.cols + c1]);
        }
        Matrix { rows: r1 - r0, cols: c1 - c0, data }
    }

    pub fn map<G: Clone>(&self, f: impl Fn(&E) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = Self::zero(f, n, m);
        for i in 0..n {
            for l in 0..k {
                let a = &self.data[i * k + l];
                if f.is_zero(a) {
                    continue;
                }
                let orow = &other.data[l * m..(l + 1) * m];
                for j in 0..m {
                    let t = f.mul(a, &orow[j]);
                    let cur = &out.data[i * m + j];
                    out.data[i * m + j] = f.add(cur, &t);
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        self.map(|x| f.mul(x, s))
    }

    /// `self − λ·I`.
    pub fn shift<F: Field<Elem = E>>(&self, f: &F, lambda: &E) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = f.sub(m.get(i, i), lambda);
            m.set(i, i, v);
        }
        m
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    /// Kronecker product.
    pub fn kronecker<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zero(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn direct_sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut out = Self::zero(f, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero_matrix<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn equals<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| f.eq(a, b))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Reduced row-echelon form by Gauss–Jordan elimination. Returns the reduced
/// matrix, its pivot columns and rank.
pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>, usize) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(a.get(i, c))) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = f.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = f.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..cols {
                let t = f.mul(&factor, a.get(r, j));
                let v = f.sub(a.get(i, j), &t);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    (a, pivots, rank)
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    rref(f, m).2
}

/// Basis of the right null space, one column vector per free variable.
pub fn kernel_basis<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots, rank) = rref(f, m);
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::with_capacity(cols - rank);
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(r.get(row, free));
        }
        basis.push(v);
    }
    basis
}

/// Solves `a·x = b`. When `a` has a nontrivial kernel the solution with free
/// variables set to zero is returned.
pub fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>, LinalgError> {
    if a.rows != b.rows {
        return Err(LinalgError::DimensionMismatch(format!("{} rows vs {} rows", a.rows, b.rows)));
    }
    let (n, k) = (a.cols, b.cols);
    let mut aug = Matrix::zero(f, a.rows, n + k);
    for i in 0..a.rows {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        for j in 0..k {
            aug.set(i, n + j, b.get(i, j).clone());
        }
    }
    let (r, pivots, _) = rref(f, &aug);
    if pivots.iter().any(|&p| p >= n) {
        return Err(LinalgError::NoSolution);
    }
    let mut x = Matrix::zero(f, n, k);
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..k {
            x.set(p, j, r.get(row, n + j).clone());
        }
    }
    Ok(x)
}

pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    if rank(f, m) < m.rows {
        return Err(LinalgError::Singular);
    }
    solve(f, m, &Matrix::identity(f, m.rows))
}

/// Monic characteristic polynomial `det(xI − m)`, low-to-high coefficients,
/// via similarity reduction to upper Hessenberg form.
pub fn charpoly<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<F::Elem> {
    assert!(m.is_square(), "charpoly of a non-square matrix");
    let n = m.rows;
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let m1 = col + 1;
        let Some(piv) = (m1..n).find(|&i| !f.is_zero(h.get(i, col))) else {
            continue;
        };
        if piv != m1 {
            h.swap_rows(piv, m1);
            for r in 0..n {
                h.data.swap(r * n + piv, r * n + m1);
            }
        }
        let t_inv = f.inv(h.get(m1, col)).expect("pivot is nonzero");
        for i in (m1 + 1)..n {
            let u = f.mul(h.get(i, col), &t_inv);
            if f.is_zero(&u) {
                continue;
            }
            // row_i -= u·row_m1, then col_m1 += u·col_i keeps the similarity
            for j in 0..n {
                let v = f.sub(h.get(i, j), &f.mul(&u, h.get(m1, j)));
                h.set(i, j, v);
            }
            for r in 0..n {
                let v = f.add(h.get(r, m1), &f.mul(&u, h.get(r, i)));
                h.set(r, m1, v);
            }
        }
    }

    // p_k = (x − h_kk) p_{k−1} − Σ_{i<k} h_ik (Π_{j=i+1}^{k} h_{j,j−1}) p_{i−1}  (1-indexed)
    let mut polys: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
    for k in 1..=n {
        let prev = &polys[k - 1];
        let hkk = h.get(k - 1, k - 1);
        let mut next = vec![f.zero(); k + 1];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] = f.add(&next[d + 1], c);
            next[d] = f.sub(&next[d], &f.mul(hkk, c));
        }
        let mut t = f.one();
        for i in (1..k).rev() {
            t = f.mul(&t, h.get(i, i - 1));
            if f.is_zero(&t) {
                break;
            }
            let coef = f.mul(h.get(i - 1, k - 1), &t);
            if f.is_zero(&coef) {
                continue;
            }
            for (d, c) in polys[i - 1].iter().enumerate() {
                next[d] = f.sub(&next[d], &f.mul(&coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// `Σ cᵢ mⁱ` by Horner's rule.
pub fn eval_poly_at_matrix<F: Field>(f: &F, coeffs: &[F::Elem], m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = m.rows;
    let mut acc = Matrix::zero(f, n, n);
    for c in coeffs.iter().rev() {
        acc = acc.mul(f, m);
        for i in 0..n {
            let v = f.add(acc.get(i, i), c);
            acc.set(i, i, v);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{make_field, rational, FfElem, Rational, Rationals};

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect())
    }

    #[test]
    fn rref_examples() {
        let q = Rationals;
        let id = Matrix::identity(&q, 3);
        assert_eq!(rref(&q, &id), (id.clone(), vec![0, 1, 2], 3));
        let z = Matrix::zero(&q, 2, 2);
        assert_eq!(rref(&q, &z), (z.clone(), vec![], 0));
        let (r, piv, rk) = rref(&q, &qm(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, qm(&[&[1, 2], &[0, 0]]));
        assert_eq!((piv, rk), (vec![0], 1));
    }

    #[test]
    fn solve_examples() {
        let q = Rationals;
        let b = qm(&[&[3, 4], &[5, 6]]);
        assert_eq!(solve(&q, &Matrix::identity(&q, 2), &b).unwrap(), b);
        assert_eq!(solve(&q, &qm(&[&[1], &[1]]), &qm(&[&[1], &[2]])), Err(LinalgError::NoSolution));
        // Brauer table of S₃ at p = 3 against the restricted degree-2 character
        let x = solve(&q, &qm(&[&[1, 1], &[1, -1]]), &qm(&[&[3], &[1]])).unwrap();
        assert_eq!(x, qm(&[&[2], &[1]]));
    }

    #[test]
    fn kernel_examples() {
        let q = Rationals;
        assert!(kernel_basis(&q, &Matrix::identity(&q, 3)).is_empty());
        let k = kernel_basis(&q, &Matrix::zero(&q, 3, 3));
        assert_eq!(k.len(), 3);
        let k = kernel_basis(&q, &qm(&[&[1, 1], &[1, 1]]));
        assert_eq!(k, vec![vec![rational(-1), rational(1)]]);
    }

    #[test]
    fn charpoly_examples() {
        let q = Rationals;
        let cp = charpoly(&q, &qm(&[&[1, 0], &[0, 2]]));
        assert_eq!(cp, vec![rational(2), rational(-3), rational(1)]);
        let cp = charpoly(&q, &Matrix::zero(&q, 3, 3));
        assert_eq!(cp, vec![rational(0), rational(0), rational(0), rational(1)]);
        let f3 = make_field(3, 1, None).unwrap();
        // companion matrix of x² + 1
        let comp = Matrix::from_rows(vec![vec![FfElem(0), f3.from_int(-1)], vec![FfElem(1), FfElem(0)]]);
        assert_eq!(charpoly(&f3, &comp), vec![FfElem(1), FfElem(0), FfElem(1)]);
    }

    #[test]
    fn charpoly_needs_row_swaps() {
        let q = Rationals;
        let m = qm(&[&[1, 2, 3, 4], &[5, 0, 0, 1], &[0, 1, 0, 0], &[1, 0, 2, 0]]);
        let cp = charpoly(&q, &m);
        assert!(eval_poly_at_matrix(&q, &cp, &m).is_zero_matrix(&q));
        let m = qm(&[&[0, 0, 1], &[0, 0, 0], &[1, 1, 0]]);
        let cp = charpoly(&q, &m);
        assert!(eval_poly_at_matrix(&q, &cp, &m).is_zero_matrix(&q));
    }

    #[test]
    fn kronecker_and_direct_sum_shapes() {
        let q = Rationals;
        let a = qm(&[&[1, 2], &[3, 4]]);
        let b = Matrix::identity(&q, 3);
        assert_eq!(a.kronecker(&q, &b).rows(), 6);
        assert_eq!(a.direct_sum(&q, &b).cols(), 5);
        assert_eq!(*a.kronecker(&q, &b).get(3, 0), rational(3));
    }
}
