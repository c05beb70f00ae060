//! Dense exact linear algebra over [`Cyclotomic`].

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::cyclo::{lcm, normalize_conductor, Cyclotomic};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
}

/// A dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Cyclotomic>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Cyclotomic::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Cyclotomic::one())
    }

    pub fn scalar(n: usize, z: Cyclotomic) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = z.clone();
        }
        m
    }

    pub fn diagonal(d: &[Cyclotomic]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, z) in d.iter().enumerate() {
            m[(i, i)] = z.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Cyclotomic>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Permutation matrix with `(M x)_i = x_{σ(i)}`, `perm[i] = σ(i)` (0-based).
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (i, &j) in perm.iter().enumerate() {
            m[(i, j)] = Cyclotomic::one();
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

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Least conductor containing every entry as stored.
    pub fn conductor(&self) -> u32 {
        let n = self
            .entries
            .iter()
            .fold(1u64, |acc, z| lcm(acc, z.conductor() as u64));
        normalize_conductor(n as u32)
    }

    /// All entries re-expressed in conductor `n`.
    pub fn embed(&self, n: u32) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.embed(n)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, z: &Cyclotomic) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * z).collect(),
        }
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut t = Cyclotomic::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            for j in 0..other.cols {
                let pairs: Vec<(&Cyclotomic, &Cyclotomic)> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(k, a)| (a, &other.entries[k * other.cols + j]))
                    .filter(|(_, b)| !b.is_zero())
                    .collect();
                entries.push(Cyclotomic::dot(pairs.iter().copied()));
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| Cyclotomic::dot(self.row(i).iter().zip(v.iter())))
            .collect()
    }

    pub fn pow(&self, e: u64) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Cyclotomic::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value().is_some_and(|z| z.is_one())
    }

    /// `Some(z)` when the matrix is `z·I`.
    pub fn scalar_value(&self) -> Option<Cyclotomic> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let z = &self[(0, 0)];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = &self[(i, j)];
                let ok = if i == j { e == z } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(z.clone())
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Cyclotomic::one();
        }
        let (r, rank) = rref(&aug);
        let pivots_ok = (0..n).all(|i| r[(i, i)].is_one());
        if rank < n || !pivots_ok {
            return Err(LinalgError::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Kronecker-free direct sum `diag(self, other)`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Cyclotomic;
    fn index(&self, (i, j): (usize, usize)) -> &Cyclotomic {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyclotomic {
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|z| z.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form and rank. Pivots are the leftmost nonzero entry
/// in the topmost available row, so the result is canonical.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let n = m.conductor();
    let mut rows: Vec<Vec<Cyclotomic>> = (0..m.rows)
        .map(|i| m.row(i).iter().map(|z| z.embed(n)).collect())
        .collect();
    let rank = rref_rows(&mut rows, m.cols);
    let entries = rows.into_iter().flatten().collect();
    (
        Matrix {
            rows: m.rows,
            cols: m.cols,
            entries,
        },
        rank,
    )
}

/// In-place RREF on a list of rows of length `cols`; returns the rank.
/// Zero rows end up at the bottom.
fn rref_rows(rows: &mut [Vec<Cyclotomic>], cols: usize) -> usize {
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r][col..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..cols {
                if pivot_row[j].is_zero() {
                    continue;
                }
                let t = &f * &pivot_row[j];
                row[j] -= &t;
            }
        }
        r += 1;
    }
    r
}

/// A subspace of `K^n` stored by its canonical RREF basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Cyclotomic>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    /// Span of the given vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Cyclotomic>]) -> Result<Self, LinalgError> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(LinalgError::DimensionMismatch(format!(
                "vectors must have length {ambient_dim}"
            )));
        }
        let n = vectors
            .iter()
            .flatten()
            .fold(1u64, |acc, z| lcm(acc, z.conductor() as u64));
        let n = normalize_conductor(n as u32);
        let mut rows: Vec<Vec<Cyclotomic>> = vectors
            .iter()
            .map(|v| v.iter().map(|z| z.embed(n)).collect())
            .collect();
        let rank = rref_rows(&mut rows, ambient_dim);
        rows.truncate(rank);
        Ok(Subspace {
            ambient_dim,
            basis: rows,
        })
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix) -> Self {
        Self::span(m.cols(), &m.to_rows()).expect("rows have matrix width")
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Cyclotomic>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Cyclotomic]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Subspace::span(self.ambient_dim, &rows).is_ok_and(|s| s.dim() == self.dim())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch("ambient dimensions differ".into()));
        }
        // kernel of [A; -B]^T gives the combinations landing in both
        let k = self.dim() + other.dim();
        let mut m = Matrix::zeros(self.ambient_dim, k);
        for (j, v) in self.basis.iter().enumerate() {
            for i in 0..self.ambient_dim {
                m[(i, j)] = v[i].clone();
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for i in 0..self.ambient_dim {
                m[(i, self.dim() + j)] = -&v[i];
            }
        }
        let ker = nullspace(&m);
        let vecs: Vec<Vec<Cyclotomic>> = ker
            .basis
            .iter()
            .map(|c| {
                (0..self.ambient_dim)
                    .map(|i| {
                        Cyclotomic::dot(
                            self.basis
                                .iter()
                                .zip(c.iter())
                                .map(|(v, x)| (&v[i], x)),
                        )
                    })
                    .collect()
            })
            .collect();
        Subspace::span(self.ambient_dim, &vecs)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Subspace(dim {} in {})", self.dim(), self.ambient_dim)?;
        for v in &self.basis {
            let s: Vec<String> = v.iter().map(|z| z.to_string()).collect();
            writeln!(f, "  [{}]", s.join(", "))?;
        }
        Ok(())
    }
}

/// Right kernel `{v : M v = 0}`.
pub fn nullspace(m: &Matrix) -> Subspace {
    let (r, rank) = rref(m);
    let cols = m.cols();
    let mut pivots = Vec::with_capacity(rank);
    for i in 0..rank {
        let p = (0..cols).find(|&j| !r[(i, j)].is_zero()).unwrap();
        pivots.push(p);
    }
    let free: Vec<usize> = (0..cols).filter(|j| !pivots.contains(j)).collect();
    let vecs: Vec<Vec<Cyclotomic>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Cyclotomic::zero(); cols];
            v[f] = Cyclotomic::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(i, f)];
            }
            v
        })
        .collect();
    Subspace::span(cols, &vecs).expect("kernel vectors have the right length")
}

/// Whether two subspaces coincide.
pub fn span_equal(a: &Subspace, b: &Subspace) -> Result<bool, LinalgError> {
    if a.ambient_dim != b.ambient_dim {
        return Err(LinalgError::DimensionMismatch(format!(
            "ambient dimensions {} and {}",
            a.ambient_dim, b.ambient_dim
        )));
    }
    Ok(a.basis == b.basis)
}

/// Dimension of `{X : X g = g X for all generators g}`.
///
/// With no generators the size must be supplied through `size`.
pub fn commutant_dimension(generators: &[Matrix], size: usize) -> Result<usize, LinalgError> {
    let m = size;
    if generators.iter().any(|g| g.rows() != m || g.cols() != m) {
        return Err(LinalgError::DimensionMismatch(format!(
            "all generators must be {m}x{m}"
        )));
    }
    if generators.is_empty() {
        return Ok(m * m);
    }
    // unknown X[a][b] lives at column a*m + b; equation (Xg - gX)[i][j] = 0
    let mut sys = Matrix::zeros(generators.len() * m * m, m * m);
    for (gi, g) in generators.iter().enumerate() {
        for i in 0..m {
            for j in 0..m {
                let row = gi * m * m + i * m + j;
                // (Xg)[i][j] = Σ_k X[i][k] g[k][j]
                for k in 0..m {
                    let col = i * m + k;
                    sys[(row, col)] = &sys[(row, col)] + &g[(k, j)];
                }
                // (gX)[i][j] = Σ_k g[i][k] X[k][j]
                for k in 0..m {
                    let col = k * m + j;
                    sys[(row, col)] = &sys[(row, col)] - &g[(i, k)];
                }
            }
        }
    }
    let (_, rank) = rref(&sys);
    Ok(m * m - rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Cyclotomic {
        Cyclotomic::e(3)
    }

    #[test]
    fn rref_rank_examples() {
        let (r, rank) = rref(&Matrix::identity(6));
        assert_eq!(rank, 6);
        assert_eq!(r, Matrix::identity(6));
        let w2 = &w() * &w();
        let m = Matrix::from_rows(vec![
            vec![Cyclotomic::one(), w(), w2.clone()],
            vec![w(), w2, Cyclotomic::one()],
        ])
        .unwrap();
        assert_eq!(rref(&m).1, 1);
        assert_eq!(rref(&Matrix::zeros(3, 4)).1, 0);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&Matrix::identity(4)).dim(), 0);
        let m = Matrix::from_rows(vec![vec![Cyclotomic::one(), Cyclotomic::from_int(-1)]]).unwrap();
        let k = nullspace(&m);
        let expected = Subspace::span(2, &[vec![Cyclotomic::one(), Cyclotomic::one()]]).unwrap();
        assert!(span_equal(&k, &expected).unwrap());
    }

    #[test]
    fn span_equal_examples() {
        let one = Cyclotomic::one;
        let zero = Cyclotomic::zero;
        let a = Subspace::span(2, &[vec![one(), zero()], vec![zero(), one()]]).unwrap();
        let b = Subspace::span(2, &[vec![one(), one()], vec![one(), -one()]]).unwrap();
        assert!(span_equal(&a, &b).unwrap());
        let c = Subspace::span(2, &[vec![one(), zero()]]).unwrap();
        let d = Subspace::span(2, &[vec![zero(), one()]]).unwrap();
        assert!(!span_equal(&c, &d).unwrap());
        assert!(span_equal(&c, &Subspace::zero(3)).is_err());
    }

    #[test]
    fn commutant_of_diagonal() {
        assert_eq!(commutant_dimension(&[], 6).unwrap(), 36);
        let one = Cyclotomic::one();
        let g = Matrix::diagonal(&[one.clone(), one.clone(), one, w(), w(), &w() * &w()]);
        assert_eq!(commutant_dimension(&[g], 6).unwrap(), 9 + 4 + 1);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![
            vec![Cyclotomic::one(), w()],
            vec![Cyclotomic::from_int(2), Cyclotomic::sqrt(3).unwrap()],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!(Matrix::zeros(2, 2).inverse().is_err());
    }

    #[test]
    fn intersection() {
        let one = Cyclotomic::one;
        let zero = Cyclotomic::zero;
        let a = Subspace::span(3, &[vec![one(), zero(), zero()], vec![zero(), one(), zero()]]).unwrap();
        let b = Subspace::span(3, &[vec![zero(), one(), zero()], vec![zero(), zero(), one()]]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[zero(), one(), zero()]));
    }
}
