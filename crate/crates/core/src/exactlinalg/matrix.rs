use std::ops::{Index, IndexMut, Mul};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::Scalar;
use super::subspace::Subspace;
use crate::error::Error;

/// Dense row-major matrix of scalars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Build from rows given with an explicit column count (allows zero rows).
    pub fn from_rows_with_cols(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        assert!(rows.iter().all(|x| x.len() == cols), "ragged rows");
        let r = rows.len();
        Matrix { rows: r, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: &[Vec<Scalar>], nrows: usize) -> Self {
        let mut m = Matrix::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..nrows {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
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

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn matmul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut m = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += &(a * b);
                    }
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
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
            m.swap_rows(p, r);
            let inv = m[(r, c)].inv().unwrap();
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let d = &f * &m[(r, j)];
                        m[(i, j)] -= &d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        super::bareiss::rank(self)
    }

    /// Right kernel {x : m·x = 0}.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(k, f)];
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.cols, basis)
    }

    /// Column space as a subspace of the codomain.
    pub fn image(&self) -> Subspace {
        Subspace::from_spanning(self.rows, (0..self.cols).map(|j| self.col(j)).collect())
    }

    /// One exact solution of m·x = rhs, if the system is consistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows, "shape mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r[(k, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let d = &f * &m[(c, j)];
                        m[(i, j)] -= &d;
                    }
                }
            }
        }
        det
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn commutator(&self, o: &Matrix) -> Matrix {
        self.matmul(o).sub(&o.matmul(self))
    }

    /// Entries flattened row by row.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        self.matmul(o)
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<Scalar>> = Vec::deserialize(d)?;
        let c = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != c) {
            return Err(serde::de::Error::custom("ragged matrix"));
        }
        Ok(Matrix::from_rows_with_cols(rows, c))
    }
}

/// A random scalar with numerator bounded by `height` and denominator in 1..=height.
pub fn random_scalar<R: Rng>(rng: &mut R, height: u32, gaussian: bool) -> Scalar {
    let h = height.max(1) as i64;
    let part = |rng: &mut R| {
        let n = rng.gen_range(-h..=h);
        let d = rng.gen_range(1..=h);
        Scalar::frac(n, d)
    };
    let re = part(rng);
    if gaussian {
        let im = part(rng);
        &re + &(&im * &Scalar::i())
    } else {
        re
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, height: u32, gaussian: bool) -> Vec<Scalar> {
    (0..n).map(|_| random_scalar(rng, height, gaussian)).collect()
}

fn random_invertible_impl(n: usize, seed: u64, height: u32, gaussian: bool) -> Matrix {
    assert!(n >= 1, "n must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows = (0..n).map(|_| random_vector(&mut rng, n, height, gaussian)).collect();
        let m = Matrix::from_rows(rows);
        if m.rank() == n {
            return m;
        }
    }
}

/// Deterministic random invertible matrix over ℚ.
pub fn random_invertible(n: usize, seed: u64, height: u32) -> Matrix {
    random_invertible_impl(n, seed, height, false)
}

/// Deterministic random invertible matrix over ℚ(i).
pub fn random_invertible_gaussian(n: usize, seed: u64, height: u32) -> Matrix {
    random_invertible_impl(n, seed, height, true)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn unit_vector(n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[k] = Scalar::one();
    v
}

/// Parse a matrix from JSON (array of arrays of scalar strings).
pub fn matrix_from_json(s: &str) -> Result<Matrix, Error> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank_and_kernel() {
        let id = Matrix::identity(3);
        assert_eq!(id.rank(), 3);
        assert_eq!(id.kernel().dim(), 0);
        assert_eq!(Matrix::zeros(4, 7).rank(), 0);
        assert_eq!(Matrix::zeros(4, 7).kernel().dim(), 7);
    }

    #[test]
    fn solve_cases() {
        let v = vec![Scalar::from(2), Scalar::frac(1, 3), Scalar::i()];
        assert_eq!(Matrix::identity(3).solve(&v), Some(v));
        let m = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.solve(&[Scalar::from(1), Scalar::from(2)]), None);
    }

    #[test]
    fn vandermonde_for_cubic_interpolation() {
        let ts = [-1i64, 0, 1, 2];
        let rows: Vec<Vec<Scalar>> =
            ts.iter().map(|&t| (0..4).map(|k| Scalar::from(t.pow(k))).collect()).collect();
        let v = Matrix::from_rows(rows);
        assert!(!v.det().is_zero());
        // coefficients of 1 + 2t - t^3 are recovered
        let vals: Vec<Scalar> = ts.iter().map(|&t| Scalar::from(1 + 2 * t - t * t * t)).collect();
        let c = v.solve(&vals).unwrap();
        assert_eq!(c, vec![Scalar::from(1), Scalar::from(2), Scalar::zero(), Scalar::from(-1)]);
    }

    #[test]
    fn random_invertible_is_deterministic() {
        assert_eq!(random_invertible(5, 11, 3), random_invertible(5, 11, 3));
        assert_eq!(random_invertible(1, 0, 2).rank(), 1);
        for seed in 0..100 {
            assert_eq!(random_invertible(7, seed, 3).rank(), 7);
        }
    }

    #[test]
    fn inverse_and_det() {
        let g = random_invertible_gaussian(4, 5, 3);
        let gi = g.inverse().unwrap();
        assert_eq!(g.matmul(&gi), Matrix::identity(4));
        assert_eq!(&g.det() * &gi.det(), Scalar::one());
    }

    #[test]
    fn json_round_trip() {
        let g = random_invertible_gaussian(3, 1, 2);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(matrix_from_json(&s).unwrap(), g);
    }
}
