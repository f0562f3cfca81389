//! Exact dense and sparse linear algebra over a [`Field`].

use std::collections::HashMap;

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].clone() + a.clone() * b.clone();
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (m, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| m[(i, j + n)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// Rank of the span of a list of vectors.
pub fn rank_of_vectors<F: Field>(vectors: &[Vec<F>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

/// Dimension of the unital associative algebra generated by square matrices.
pub fn generated_algebra_dim<F: Field>(gens: &[Matrix<F>]) -> usize {
    let Some(n) = gens.first().map(|g| g.rows()) else {
        return 1;
    };
    let flat = |m: &Matrix<F>| sparse_from_pairs((0..n * n).map(|e| (e, m[(e / n, e % n)].clone())));
    let mut ech = SparseEchelon::new();
    let mut queue = vec![Matrix::identity(n)];
    while let Some(m) = queue.pop() {
        if ech.insert(flat(&m)) {
            if ech.rank() == n * n {
                break;
            }
            queue.extend(gens.iter().map(|g| m.mul(g)));
        }
    }
    ech.rank()
}

/// Degree of the minimal polynomial of a square matrix.
pub fn minimal_polynomial_degree<F: Field>(m: &Matrix<F>) -> usize {
    let n = m.rows();
    let mut ech = SparseEchelon::new();
    let mut p: Matrix<F> = Matrix::identity(n);
    for d in 0..=n {
        if !ech.insert(sparse_from_pairs((0..n * n).map(|e| (e, p[(e / n, e % n)].clone())))) {
            return d;
        }
        p = p.mul(m);
    }
    n
}

/// Dimension of the space of matrices commuting with every given matrix.
pub fn commutant_dim<F: Field>(mats: &[Matrix<F>]) -> usize {
    let Some(n) = mats.first().map(|g| g.rows()) else {
        return 0;
    };
    // unknown C (n*n entries, index i*n+j); rows: entries of C X - X C
    let mut rows = Vec::new();
    for x in mats {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![F::zero(); n * n];
                for k in 0..n {
                    row[i * n + k] = row[i * n + k].clone() + x[(k, j)].clone();
                    row[k * n + j] = row[k * n + j].clone() - x[(i, k)].clone();
                }
                rows.push(row);
            }
        }
    }
    n * n - Matrix::from_rows(rows).rank()
}

/// A sparse vector: `(index, value)` pairs sorted by decreasing index, no zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn sparse_from_pairs<F: Field>(pairs: impl IntoIterator<Item = (usize, F)>) -> SparseVec<F> {
    let mut v: Vec<(usize, F)> = pairs.into_iter().collect();
    v.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out: SparseVec<F> = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d = d.clone() + c,
            _ => out.push((i, c)),
        }
        if out.last().is_some_and(|(_, d)| d.is_zero()) {
            out.pop();
        }
    }
    out
}

/// `a - c*b` for sparse vectors in decreasing-index order.
fn axpy<F: Field>(a: &SparseVec<F>, c: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 > b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 > a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c.clone() * b[j].1.clone())));
            j += 1;
        } else {
            let v = a[i].1.clone() - c.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental Gaussian elimination on sparse vectors, pivoting on the largest index.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F: Field> {
    pivots: HashMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for SparseEchelon<F> {
    fn default() -> Self {
        SparseEchelon {
            pivots: HashMap::new(),
        }
    }
}

impl<F: Field> SparseEchelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the stored pivots; the result has no pivot as leading index.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut done: SparseVec<F> = Vec::new();
        while let Some(&(lead, ref c)) = v.first() {
            match self.pivots.get(&lead) {
                Some(p) => v = axpy(&v, &c.clone(), p),
                None => {
                    // leading entry is not a pivot; keep it and continue with the tail
                    done.push(v.remove(0));
                }
            }
        }
        done
    }

    /// Reduces only the leading entries; cheaper when full reduction is not needed.
    fn reduce_lead(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        while let Some(&(lead, ref c)) = v.first() {
            match self.pivots.get(&lead) {
                Some(p) => v = axpy(&v, &c.clone(), p),
                None => break,
            }
        }
        v
    }

    /// Adds a vector; returns true when it increased the rank.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let v = self.reduce_lead(v);
        let Some((lead, c)) = v.first().cloned() else {
            return false;
        };
        let inv = c.inv().expect("nonzero leading coefficient");
        let v: SparseVec<F> = v.into_iter().map(|(i, x)| (i, x * inv.clone())).collect();
        self.pivots.insert(lead, v);
        true
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivot_indices(&self) -> Vec<usize> {
        let mut k: Vec<usize> = self.pivots.keys().copied().collect();
        k.sort_unstable();
        k
    }
}

/// Rank of a list of sparse vectors, stopping early once `stop_at` is reached.
pub fn sparse_rank<F: Field>(vectors: impl IntoIterator<Item = SparseVec<F>>, stop_at: Option<usize>) -> usize {
    let mut e = SparseEchelon::new();
    for v in vectors {
        e.insert(v);
        if stop_at.is_some_and(|s| e.rank() >= s) {
            break;
        }
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rational, Rational, F7};

    fn q(n: i64) -> Rational {
        rational(n, 1)
    }

    #[test]
    fn rank_and_nullspace() {
        let m = Matrix::from_rows(vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(1), q(0), q(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_and_inverse() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(1)]]);
        let x = m.solve(&[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let s = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(1)]]);
        assert!(s.solve(&[q(1), q(0)]).is_none());
        assert!(s.inverse().is_none());
    }

    #[test]
    fn sparse_matches_dense() {
        let rows = vec![
            vec![F7::new(1), F7::new(2), F7::new(0), F7::new(3)],
            vec![F7::new(2), F7::new(4), F7::new(0), F7::new(6)],
            vec![F7::new(0), F7::new(1), F7::new(1), F7::new(0)],
            vec![F7::new(1), F7::new(3), F7::new(1), F7::new(3)],
        ];
        let dense = Matrix::from_rows(rows.clone()).rank();
        let sparse = sparse_rank(
            rows.iter()
                .map(|r| sparse_from_pairs(r.iter().cloned().enumerate())),
            None,
        );
        assert_eq!(dense, 2);
        assert_eq!(sparse, 2);
    }
}
