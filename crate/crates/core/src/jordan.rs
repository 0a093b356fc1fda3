//! Cubic Jordan algebras H₃(𝔸) of Hermitian 3×3 matrices over a composition
//! algebra 𝔸 of dimension a ∈ {0,1,2,4,8} (a = 0: diagonal matrices), the
//! cubic determinant, the adjugate, and the cubic map into the Freudenthal
//! space ℂ ⊕ H₃(𝔸) ⊕ H₃(𝔸)* ⊕ ℂ.
//!
//! H₃(𝔸)* is identified with H₃(𝔸) through the trace pairing T(A,B) = tr(A∘B).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::composition::{self, AlgElement, CompAlgebra};
use crate::error::{Error, Result};
use crate::exactlinalg::{vec_add, vec_scale, vec_sub, Matrix, Scalar};
use crate::liealg::SCAlgebra;

/// H₃(𝔸) with coordinates [x, y, z, u, v, w]: the matrix
/// [[x, w, v̄], [w̄, y, u], [v, ū, z]].
#[derive(Clone, Debug)]
pub struct JordanAlgebra {
    a: usize,
    alg: CompAlgebra,
    gram_inv: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanElement {
    pub diag: [Scalar; 3],
    /// u, v, w at positions (2,3), (3,1), (1,2).
    pub off: [AlgElement; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreudenthalVector {
    pub alpha: Scalar,
    pub m: JordanElement,
    pub n: JordanElement,
    pub beta: Scalar,
}

/// p'(0) for a cubic p from its values at −1, 0, 1, 2.
fn derivative_at_zero(p: [&Scalar; 4]) -> Scalar {
    let s = &(&(&(p[0] * &Scalar::from(-2)) - &(p[1] * &Scalar::from(3))) + &(p[2] * &Scalar::from(6))) - p[3];
    &s * &Scalar::frac(1, 6)
}

impl JordanAlgebra {
    pub fn new(a: usize) -> Result<Self> {
        let alg = match a {
            0 | 1 => composition::real(),
            2 => composition::complex(),
            4 => composition::quaternions(),
            8 => composition::canonical_octonions(),
            _ => return Err(Error::InvalidType(format!("H₃ needs a ∈ {{0,1,2,4,8}}, got {a}"))),
        };
        let gram_inv = if a == 0 { Matrix::zeros(0, 0) } else { alg.gram().inverse().ok_or(Error::Singular)? };
        Ok(JordanAlgebra { a, alg, gram_inv })
    }

    fn off_bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        if self.a == 0 {
            Scalar::zero()
        } else {
            self.alg.bilinear(x, y)
        }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn dim(&self) -> usize {
        3 + 3 * self.a
    }

    pub fn base(&self) -> &CompAlgebra {
        &self.alg
    }

    pub fn zero(&self) -> JordanElement {
        let z = vec![Scalar::zero(); self.a];
        JordanElement { diag: [Scalar::zero(), Scalar::zero(), Scalar::zero()], off: [z.clone(), z.clone(), z] }
    }

    pub fn identity(&self) -> JordanElement {
        self.diagonal(Scalar::one(), Scalar::one(), Scalar::one())
    }

    pub fn diagonal(&self, x: Scalar, y: Scalar, z: Scalar) -> JordanElement {
        let mut e = self.zero();
        e.diag = [x, y, z];
        e
    }

    pub fn to_vector(&self, m: &JordanElement) -> Vec<Scalar> {
        let mut v = m.diag.to_vec();
        for o in &m.off {
            v.extend(o.iter().cloned());
        }
        v
    }

    pub fn from_vector(&self, v: &[Scalar]) -> JordanElement {
        let a = self.a;
        JordanElement {
            diag: [v[0].clone(), v[1].clone(), v[2].clone()],
            off: [v[3..3 + a].to_vec(), v[3 + a..3 + 2 * a].to_vec(), v[3 + 2 * a..3 + 3 * a].to_vec()],
        }
    }

    pub fn basis(&self, k: usize) -> JordanElement {
        self.from_vector(&crate::exactlinalg::unit_vector(self.dim(), k))
    }

    pub fn add(&self, x: &JordanElement, y: &JordanElement) -> JordanElement {
        self.from_vector(&vec_add(&self.to_vector(x), &self.to_vector(y)))
    }

    pub fn sub(&self, x: &JordanElement, y: &JordanElement) -> JordanElement {
        self.from_vector(&vec_sub(&self.to_vector(x), &self.to_vector(y)))
    }

    pub fn scale(&self, x: &JordanElement, s: &Scalar) -> JordanElement {
        self.from_vector(&vec_scale(&self.to_vector(x), s))
    }

    /// Entry (i,j) of the full matrix as an element of the base algebra.
    fn entry(&self, m: &JordanElement, i: usize, j: usize) -> AlgElement {
        let d = self.alg.dim();
        if i == j {
            let mut e = vec![Scalar::zero(); d];
            e[0] = m.diag[i].clone();
            return e;
        }
        if self.a == 0 {
            return vec![Scalar::zero(); d];
        }
        // u = (1,2), v = (2,0), w = (0,1) in 0-based indices
        match (i, j) {
            (1, 2) => m.off[0].clone(),
            (2, 0) => m.off[1].clone(),
            (0, 1) => m.off[2].clone(),
            (2, 1) => self.alg.conjugate(&m.off[0]),
            (0, 2) => self.alg.conjugate(&m.off[1]),
            (1, 0) => self.alg.conjugate(&m.off[2]),
            _ => unreachable!(),
        }
    }

    /// A∘B = (AB + BA)/2.
    pub fn product(&self, x: &JordanElement, y: &JordanElement) -> JordanElement {
        let half = Scalar::frac(1, 2);
        let ex: Vec<Vec<AlgElement>> = (0..3).map(|i| (0..3).map(|j| self.entry(x, i, j)).collect()).collect();
        let ey: Vec<Vec<AlgElement>> = (0..3).map(|i| (0..3).map(|j| self.entry(y, i, j)).collect()).collect();
        let mut out = self.zero();
        for i in 0..3 {
            // Re(Σ_k x_ik y_ki + y_ik x_ki) = 2 Σ_k ⟨x_ik, conj(y_ki)⟩ = 2 Σ_k ⟨x_ik, y_ik⟩
            let mut s = Scalar::zero();
            for k in 0..3 {
                s += &self.alg.bilinear(&ex[i][k], &ey[i][k]);
            }
            out.diag[i] = s;
        }
        if self.a > 0 {
            for (slot, (i, j)) in [(1usize, 2usize), (2, 0), (0, 1)].into_iter().enumerate() {
                let k = 3 - i - j;
                let mut acc = vec_add(&vec_scale(&ex[i][j], &(&y.diag[i] + &y.diag[j])), &vec_scale(&ey[i][j], &(&x.diag[i] + &x.diag[j])));
                acc = vec_add(&acc, &self.alg.mul(&ex[i][k], &ey[k][j]));
                acc = vec_add(&acc, &self.alg.mul(&ey[i][k], &ex[k][j]));
                out.off[slot] = vec_scale(&acc, &half);
            }
        }
        out
    }

    pub fn trace(&self, m: &JordanElement) -> Scalar {
        &(&m.diag[0] + &m.diag[1]) + &m.diag[2]
    }

    /// T(A,B) = tr(A∘B).
    pub fn trace_form(&self, x: &JordanElement, y: &JordanElement) -> Scalar {
        let mut s = Scalar::zero();
        for i in 0..3 {
            s += &(&x.diag[i] * &y.diag[i]);
        }
        for k in 0..3 {
            s += &(&self.off_bilinear(&x.off[k], &y.off[k]) * &Scalar::from(2));
        }
        s
    }

    pub fn square(&self, m: &JordanElement) -> JordanElement {
        self.product(m, m)
    }

    /// Det(M) = tr(M³)/3 − tr(M)tr(M²)/2 + tr(M)³/6 with Jordan powers.
    pub fn det(&self, m: &JordanElement) -> Scalar {
        let m2 = self.square(m);
        let t1 = self.trace(m);
        let t2 = self.trace(&m2);
        let t3 = self.trace_form(m, &m2);
        let a = &t3 * &Scalar::frac(1, 3);
        let b = &(&t1 * &t2) * &Scalar::frac(1, 2);
        let c = &t1.pow(3) * &Scalar::frac(1, 6);
        &(&a - &b) + &c
    }

    /// σ₂(M) = (tr(M)² − tr(M²))/2.
    pub fn sigma2(&self, m: &JordanElement) -> Scalar {
        let t1 = self.trace(m);
        &(&t1.pow(2) - &self.trace(&self.square(m))) * &Scalar::frac(1, 2)
    }

    /// Gram matrix of the trace pairing on the coordinate basis.
    pub fn trace_gram(&self) -> Matrix {
        let d = self.dim();
        let mut g = Matrix::zeros(d, d);
        for i in 0..3 {
            g[(i, i)] = Scalar::one();
        }
        for k in 0..3 {
            for p in 0..self.a {
                for q in 0..self.a {
                    g[(3 + k * self.a + p, 3 + k * self.a + q)] = &self.alg.gram()[(p, q)] * &Scalar::from(2);
                }
            }
        }
        g
    }

    /// Gradient of Det at M, one entry per coordinate direction, by exact
    /// interpolation of t ↦ Det(M + tE) at t = −1, 0, 1, 2.
    pub fn det_gradient(&self, m: &JordanElement) -> Vec<Scalar> {
        let v = self.to_vector(m);
        let p0 = self.det(m);
        (0..self.dim())
            .map(|k| {
                let at = |t: i64| {
                    let mut w = v.clone();
                    w[k] += &Scalar::from(t);
                    self.det(&self.from_vector(&w))
                };
                let (pm, p1, p2) = (at(-1), at(1), at(2));
                derivative_at_zero([&pm, &p0, &p1, &p2])
            })
            .collect()
    }

    /// M# with T(M#, E) = ∂_E Det(M).
    pub fn adjugate(&self, m: &JordanElement) -> JordanElement {
        let g = self.det_gradient(m);
        // the trace Gram is block diagonal: 1 on the diagonal slots, 2·gram on the off slots
        let mut v = g[..3].to_vec();
        let inv = &self.gram_inv;
        for k in 0..3 {
            let block = &g[3 + k * self.a..3 + (k + 1) * self.a];
            let sol = inv.apply(block);
            v.extend(sol.iter().map(|x| x * &Scalar::frac(1, 2)));
        }
        self.from_vector(&v)
    }

    /// M² − tr(M)·M + σ₂(M)·Id, the adjugate read off from the cubic relation.
    pub fn adjugate_closed_form(&self, m: &JordanElement) -> JordanElement {
        let r = self.sub(&self.square(m), &self.scale(m, &self.trace(m)));
        self.add(&r, &self.scale(&self.identity(), &self.sigma2(m)))
    }

    pub fn is_zero(&self, m: &JordanElement) -> bool {
        self.to_vector(m).iter().all(Scalar::is_zero)
    }

    /// Rank: 3 if Det ≠ 0, else 2 if M# ≠ 0, else 1 if M ≠ 0, else 0.
    pub fn rank(&self, m: &JordanElement) -> usize {
        if !self.det(m).is_zero() {
            3
        } else if !self.is_zero(&self.adjugate(m)) {
            2
        } else if !self.is_zero(m) {
            1
        } else {
            0
        }
    }

    /// M³ − tr(M)M² + σ₂(M)M − Det(M)·Id.
    pub fn cayley_hamilton_residual(&self, m: &JordanElement) -> JordanElement {
        let m2 = self.square(m);
        let m3 = self.product(m, &m2);
        let t = self.trace(m);
        let r = self.sub(&m3, &self.scale(&m2, &t));
        let r = self.add(&r, &self.scale(m, &self.sigma2(m)));
        self.sub(&r, &self.scale(&self.identity(), &self.det(m)))
    }

    pub fn cubic_map(&self, m: &JordanElement) -> FreudenthalVector {
        FreudenthalVector { alpha: Scalar::one(), m: m.clone(), n: self.adjugate(m), beta: self.det(m) }
    }

    /// ω(p,q) = α_p β_q − β_p α_q − T(M_p, N_q) + T(N_p, M_q).
    pub fn symplectic_pairing(&self, p: &FreudenthalVector, q: &FreudenthalVector) -> Scalar {
        let s = &(&p.alpha * &q.beta) - &(&p.beta * &q.alpha);
        &(&s - &self.trace_form(&p.m, &q.n)) + &self.trace_form(&p.n, &q.m)
    }

    pub fn fvec_to_vector(&self, p: &FreudenthalVector) -> Vec<Scalar> {
        let mut v = vec![p.alpha.clone()];
        v.extend(self.to_vector(&p.m));
        v.extend(self.to_vector(&p.n));
        v.push(p.beta.clone());
        v
    }

    pub fn fvec_from_vector(&self, v: &[Scalar]) -> FreudenthalVector {
        let d = self.dim();
        FreudenthalVector {
            alpha: v[0].clone(),
            m: self.from_vector(&v[1..1 + d]),
            n: self.from_vector(&v[1 + d..1 + 2 * d]),
            beta: v[1 + 2 * d].clone(),
        }
    }

    /// Gram matrix of the symplectic pairing on the 6a+8 coordinate basis.
    pub fn symplectic_gram(&self) -> Matrix {
        let n = 2 * self.dim() + 2;
        let basis: Vec<FreudenthalVector> =
            (0..n).map(|k| self.fvec_from_vector(&crate::exactlinalg::unit_vector(n, k))).collect();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.symplectic_pairing(&basis[i], &basis[j]);
            }
        }
        g
    }

    /// Spanning set of the affine tangent space of the cone over the cubic
    /// image at cubic_map(M): the point and its derivatives along each basis
    /// direction X, namely (0, X, (M+X)# − M# − X#, T(M#, X)). The quadratic
    /// map # is polarized through its closed form, which callers compare
    /// against the interpolated adjugate.
    pub fn tangent_vectors(&self, m: &JordanElement) -> Vec<FreudenthalVector> {
        let ms = self.adjugate_closed_form(m);
        let mut out = vec![FreudenthalVector { alpha: Scalar::one(), m: m.clone(), n: ms.clone(), beta: self.det(m) }];
        for k in 0..self.dim() {
            let x = self.basis(k);
            let dn = self.sub(
                &self.sub(&self.adjugate_closed_form(&self.add(m, &x)), &ms),
                &self.adjugate_closed_form(&x),
            );
            out.push(FreudenthalVector { alpha: Scalar::zero(), m: x.clone(), n: dn, beta: self.trace_form(&ms, &x) });
        }
        out
    }

    /// Random element with small Gaussian-integer coordinates.
    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> JordanElement {
        let v: Vec<Scalar> = (0..self.dim()).map(|_| Scalar::gaussian(rng.gen_range(-2..=2), rng.gen_range(-1..=1))).collect();
        self.from_vector(&v)
    }

    /// The product table on the coordinate basis.
    pub fn product_table(&self) -> SCAlgebra {
        let d = self.dim();
        let basis: Vec<JordanElement> = (0..d).map(|k| self.basis(k)).collect();
        let mut entries = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let p = self.to_vector(&self.product(&basis[i], &basis[j]));
                let sp: Vec<(usize, Scalar)> = p.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                entries.push((i, j, sp));
            }
        }
        SCAlgebra::new(&format!("H3(a={})", self.a), d, entries)
    }

    pub fn element_to_json(&self, m: &JordanElement) -> serde_json::Value {
        serde_json::json!({ "a": self.a, "diag": m.diag, "off": m.off })
    }

    pub fn element_from_json(&self, v: &serde_json::Value) -> Result<JordanElement> {
        let bad = |s: &str| Error::Parse(format!("Jordan element: {s}"));
        let diag: Vec<Scalar> = serde_json::from_value(v.get("diag").cloned().ok_or_else(|| bad("missing diag"))?)
            .map_err(|e| bad(&e.to_string()))?;
        let off: Vec<Vec<Scalar>> = match v.get("off") {
            Some(o) => serde_json::from_value(o.clone()).map_err(|e| bad(&e.to_string()))?,
            None => vec![vec![]; 3],
        };
        if diag.len() != 3 || off.len() != 3 || off.iter().any(|o| o.len() != self.a) {
            return Err(bad(&format!("expected 3 diagonal entries and 3 off-diagonal vectors of length {}", self.a)));
        }
        Ok(JordanElement { diag: [diag[0].clone(), diag[1].clone(), diag[2].clone()], off: [off[0].clone(), off[1].clone(), off[2].clone()] })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LegendrianReport {
    pub a: usize,
    pub samples: usize,
    pub expected_dim: usize,
    pub dims: Vec<usize>,
    pub isotropic: bool,
    /// Interpolated and closed-form adjugates coincide at every sample.
    pub adjugates_agree: bool,
    pub passed: bool,
}

/// Isotropy and dimension of tangent spaces at cubic_map(M) for random M.
pub fn legendrian_check(a: usize, samples: usize, seed: u64) -> Result<LegendrianReport> {
    let j = JordanAlgebra::new(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dims = Vec::new();
    let mut isotropic = true;
    let mut adjugates_agree = true;
    for _ in 0..samples {
        let m = j.random_element(&mut rng);
        adjugates_agree &= j.adjugate(&m) == j.adjugate_closed_form(&m);
        let t = j.tangent_vectors(&m);
        let rows: Vec<Vec<Scalar>> = t.iter().map(|p| j.fvec_to_vector(p)).collect();
        dims.push(Matrix::from_rows(rows).rank());
        for p in 0..t.len() {
            for q in p + 1..t.len() {
                if !j.symplectic_pairing(&t[p], &t[q]).is_zero() {
                    isotropic = false;
                }
            }
        }
    }
    let expected = 3 * a + 4;
    let passed = isotropic && adjugates_agree && dims.iter().all(|&d| d == expected);
    Ok(LegendrianReport { a, samples, expected_dim: expected, dims, isotropic, adjugates_agree, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cremona_case() {
        let j = JordanAlgebra::new(0).unwrap();
        let m = j.diagonal(Scalar::from(2), Scalar::from(3), Scalar::from(5));
        assert_eq!(j.det(&m), Scalar::from(30));
        assert_eq!(j.adjugate(&m), j.diagonal(Scalar::from(15), Scalar::from(10), Scalar::from(6)));
        let f = j.cubic_map(&m);
        assert_eq!(f.beta, Scalar::from(30));
    }

    #[test]
    fn identity_facts() {
        for a in [0, 1, 2, 4, 8] {
            let j = JordanAlgebra::new(a).unwrap();
            let id = j.identity();
            assert_eq!(j.det(&id), Scalar::one());
            assert_eq!(j.adjugate(&id), id);
            assert_eq!(j.rank(&id), 3);
            assert_eq!(j.dim(), 3 + 3 * a);
            assert_eq!(j.symplectic_gram().rank(), 6 * a + 8);
        }
    }

    #[test]
    fn octonionic_samples() {
        let j = JordanAlgebra::new(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..3 {
            let m = j.random_element(&mut rng);
            assert!(j.is_zero(&j.cayley_hamilton_residual(&m)));
            let adj2 = j.adjugate(&j.adjugate(&m));
            assert_eq!(adj2, j.scale(&m, &j.det(&m)));
        }
    }

    #[test]
    fn rank_one_projectors() {
        let j = JordanAlgebra::new(0).unwrap();
        let p = j.diagonal(Scalar::one(), Scalar::zero(), Scalar::zero());
        assert_eq!(j.square(&p), p);
        assert_eq!(j.rank(&p), 1);
        assert_eq!(j.product(&p, &j.diagonal(Scalar::zero(), Scalar::one(), Scalar::zero())), j.zero());
    }

    #[test]
    fn small_legendrian() {
        assert!(legendrian_check(0, 2, 1).unwrap().passed);
        assert!(legendrian_check(1, 2, 1).unwrap().passed);
    }
}
