use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::scalar::Scalar;

/// A linear subspace of an n-dimensional coordinate space, held in reduced
/// row-echelon form so that equality is structural.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_spanning(
            ambient,
            (0..ambient).map(|k| super::matrix::unit_vector(ambient, k)).collect(),
        )
    }

    pub fn from_spanning(ambient: usize, vecs: Vec<Vec<Scalar>>) -> Self {
        if vecs.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = Matrix::from_rows_with_cols(vecs, ambient);
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).unwrap())
            .collect()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (b, p) in self.basis.iter().zip(self.pivots()) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        w.iter().all(Scalar::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.ambient, v)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // a·A = b·B; solve for (a, b) in the kernel of [A^T | -B^T]
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut m = Matrix::zeros(self.ambient, k + l);
        for i in 0..self.ambient {
            for a in 0..k {
                m[(i, a)] = self.basis[a][i].clone();
            }
            for b in 0..l {
                m[(i, k + b)] = -&other.basis[b][i];
            }
        }
        let ker = m.kernel();
        let vecs = ker
            .basis()
            .iter()
            .map(|c| {
                let mut v = vec![Scalar::zero(); self.ambient];
                for a in 0..k {
                    if c[a].is_zero() {
                        continue;
                    }
                    for i in 0..self.ambient {
                        if !self.basis[a][i].is_zero() {
                            v[i] += &(&c[a] * &self.basis[a][i]);
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::from_spanning(self.ambient, vecs)
    }

    /// Coordinates of v in the stored basis, if v lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots().iter().map(|&p| v[p].clone()).collect())
    }

    /// Matrix with the basis vectors as rows.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows_with_cols(self.basis.clone(), self.ambient)
    }

    /// The annihilator {w : w·v = 0 for all v} under the coordinate pairing.
    pub fn annihilator(&self) -> Subspace {
        self.to_matrix().kernel()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<Scalar> {
        x.iter().map(|&a| Scalar::from(a)).collect()
    }

    #[test]
    fn canonical_form() {
        let a = Subspace::from_spanning(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::from_spanning(3, vec![v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])]);
        assert_eq!(a, b);
        assert_eq!(Subspace::from_spanning(3, a.basis().to_vec()), a);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::from_spanning(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::from_spanning(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b), Subspace::from_spanning(3, vec![v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert!(a.contains(&v(&[3, -2, 0])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }
}
