//! Algebras by structure constants: derivation algebras as exact kernels,
//! stabilizers in gl_n, Jacobi verification, Killing-form rank, weight
//! spaces and Cartan matrices read off from roots.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::composition::CompAlgebra;
use crate::error::{Error, Result};
use crate::exactlinalg::sparse::{rank_mod_p_i128, SparseSystem};
use crate::exactlinalg::{vec_add, vec_is_zero, vec_scale, Matrix, Scalar, Subspace};
use crate::forms::KForm;

/// Sparse coordinate vector.
pub type SparseVec = Vec<(usize, Scalar)>;

/// A bilinear product on a d-dimensional space, stored as the sparse images
/// of basis pairs; used both for Lie brackets and for the algebras whose
/// derivations are computed.
#[derive(Clone, Debug)]
pub struct SCAlgebra {
    name: String,
    dim: usize,
    table: Vec<SparseVec>,
    skew: bool,
    cartan: Option<Vec<Vec<Scalar>>>,
}

fn clean(v: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut m: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (k, c) in v {
        *m.entry(k).or_default() += &c;
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn dense(d: usize, v: &SparseVec) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); d];
    for (k, c) in v {
        out[*k] = c.clone();
    }
    out
}

fn sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

impl SCAlgebra {
    /// Build from the nonzero products e_i·e_j; the skew flag is detected.
    pub fn new(name: &str, dim: usize, entries: impl IntoIterator<Item = (usize, usize, SparseVec)>) -> Self {
        let mut table = vec![Vec::new(); dim * dim];
        for (i, j, v) in entries {
            let slot: &mut SparseVec = &mut table[i * dim + j];
            let merged = clean(slot.drain(..).chain(v));
            *slot = merged;
        }
        let mut a = SCAlgebra { name: name.to_string(), dim, table, skew: false, cartan: None };
        a.skew = a.check_skew();
        a
    }

    pub fn from_comp(alg: &CompAlgebra) -> Self {
        let d = alg.dim();
        let entries = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| (i, j, sparse(&alg.basis_product(i, j))));
        SCAlgebra::new(alg.name(), d, entries.collect::<Vec<_>>())
    }

    pub fn abelian(dim: usize) -> Self {
        SCAlgebra::new(&format!("abelian({dim})"), dim, Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_skew(&self) -> bool {
        self.skew
    }

    fn check_skew(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (i..d).all(|j| {
                let a = &self.table[i * d + j];
                let b = &self.table[j * d + i];
                a.len() == b.len() && a.iter().zip(b).all(|((k, x), (l, y))| k == l && *x == -y)
            })
        })
    }

    /// [e_i, e_j] as a sparse vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let mut out = vec![Scalar::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, t) in &self.table[i * d + j] {
                    out[*k] += &(&c * t);
                }
            }
        }
        out
    }

    /// Matrix of ad x = [x, ·].
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim;
        let cols: Vec<Vec<Scalar>> = (0..d).map(|j| self.bracket(x, &crate::exactlinalg::unit_vector(d, j))).collect();
        Matrix::from_cols(&cols, d)
    }

    pub fn nnz(&self) -> usize {
        self.table.iter().map(Vec::len).sum()
    }

    pub fn cartan(&self) -> Option<&[Vec<Scalar>]> {
        self.cartan.as_deref()
    }

    /// Designate a commuting family as Cartan subalgebra.
    pub fn with_cartan(mut self, h: Vec<Vec<Scalar>>) -> Result<Self> {
        for a in &h {
            for b in &h {
                if !vec_is_zero(&self.bracket(a, b)) {
                    return Err(Error::Invalid("designated Cartan elements do not commute".into()));
                }
            }
        }
        self.cartan = Some(h);
        Ok(self)
    }

    /// A copy whose bracket [e_i, e_j] (and [e_j, e_i]) is negated.
    pub fn sign_flipped(&self, i: usize, j: usize) -> SCAlgebra {
        let mut b = self.clone();
        let d = self.dim;
        for idx in [i * d + j, j * d + i] {
            b.table[idx] = b.table[idx].iter().map(|(k, c)| (*k, -c)).collect();
        }
        if i == j {
            b.table[i * d + i] = self.table[i * d + i].iter().map(|(k, c)| (*k, -c)).collect();
        }
        b.name = format!("{}(flipped {i},{j})", self.name);
        b
    }

    /// Direct sum with another algebra (second summand shifted after the first).
    pub fn direct_sum(&self, o: &SCAlgebra) -> SCAlgebra {
        let (d1, d2) = (self.dim, o.dim);
        let d = d1 + d2;
        let mut entries = Vec::new();
        for i in 0..d1 {
            for j in 0..d1 {
                entries.push((i, j, self.table[i * d1 + j].clone()));
            }
        }
        for i in 0..d2 {
            for j in 0..d2 {
                entries.push((d1 + i, d1 + j, o.table[i * d2 + j].iter().map(|(k, c)| (d1 + k, c.clone())).collect()));
            }
        }
        let mut s = SCAlgebra::new(&format!("{}+{}", self.name, o.name), d, entries);
        if let (Some(a), Some(b)) = (&self.cartan, &o.cartan) {
            let mut h: Vec<Vec<Scalar>> = a.iter().map(|v| [v.clone(), vec![Scalar::zero(); d2]].concat()).collect();
            h.extend(b.iter().map(|v| [vec![Scalar::zero(); d1], v.clone()].concat()));
            s.cartan = Some(h);
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = self.dim;
        let mut entries = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let v = &self.table[i * d + j];
                if !v.is_empty() {
                    entries.push(serde_json::json!([i, j, dense(d, v)]));
                }
            }
        }
        serde_json::json!({ "name": self.name, "dim": d, "entries": entries })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<SCAlgebra> {
        let bad = |m: &str| Error::Parse(format!("structure constants: {m}"));
        let d = v.get("dim").and_then(|x| x.as_u64()).ok_or_else(|| bad("missing dim"))? as usize;
        let name = v.get("name").and_then(|x| x.as_str()).unwrap_or("algebra");
        let arr = v.get("entries").and_then(|x| x.as_array()).ok_or_else(|| bad("missing entries"))?;
        let mut entries = Vec::new();
        for e in arr {
            let t = e.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("entry must be [i, j, coeffs]"))?;
            let i = t[0].as_u64().ok_or_else(|| bad("index"))? as usize;
            let j = t[1].as_u64().ok_or_else(|| bad("index"))? as usize;
            if i >= d || j >= d {
                return Err(bad("index out of range"));
            }
            let coeffs: Vec<Scalar> = serde_json::from_value(t[2].clone()).map_err(|e| bad(&e.to_string()))?;
            if coeffs.len() != d {
                return Err(bad("coefficient vector length must equal dim"));
            }
            entries.push((i, j, sparse(&coeffs)));
        }
        Ok(SCAlgebra::new(name, d, entries))
    }

    /// Structure constants scaled to integers, when they are rational and small.
    fn int_table(&self) -> Option<Vec<Vec<(u32, i128)>>> {
        let mut l = BigInt::one();
        for v in &self.table {
            for (_, c) in v {
                if !c.is_rational() {
                    return None;
                }
                l = l.lcm(c.re().denom());
            }
        }
        let mut out = Vec::with_capacity(self.table.len());
        for v in &self.table {
            let mut row = Vec::with_capacity(v.len());
            for (k, c) in v {
                let n = c.re().numer() * (&l / c.re().denom());
                let x = n.to_i64()?;
                if x.unsigned_abs() > 1 << 40 {
                    return None;
                }
                row.push((*k as u32, x as i128));
            }
            out.push(row);
        }
        Some(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiMode {
    Full,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub algebra: String,
    pub mode: String,
    pub skew: bool,
    pub checked: usize,
    pub passed: bool,
    pub witness: Option<(usize, usize, usize)>,
}

fn jacobi_int(t: &[Vec<(u32, i128)>], d: usize, i: usize, j: usize, k: usize, buf: &mut [i128]) -> bool {
    for b in buf.iter_mut() {
        *b = 0;
    }
    for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
        for &(m, c) in &t[x * d + y] {
            for &(n, c2) in &t[m as usize * d + z] {
                buf[n as usize] += c * c2;
            }
        }
    }
    buf.iter().all(|&v| v == 0)
}

fn jacobi_exact(g: &SCAlgebra, i: usize, j: usize, k: usize) -> bool {
    let d = g.dim;
    let mut acc = vec![Scalar::zero(); d];
    for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
        for (m, c) in &g.table[x * d + y] {
            for (n, c2) in &g.table[m * d + z] {
                acc[*n] += &(c * c2);
            }
        }
    }
    vec_is_zero(&acc)
}

/// Verify [[x,y],z] + [[y,z],x] + [[z,x],y] = 0 on all basis triples i<j<k
/// (enough for a skew bracket) or on seeded random basis triples.
pub fn jacobi_check(g: &SCAlgebra, mode: JacobiMode) -> JacobiReport {
    let d = g.dim;
    let triples: Vec<(usize, usize, usize)> = match mode {
        JacobiMode::Full => (0..d)
            .flat_map(|i| (i + 1..d).flat_map(move |j| (j + 1..d).map(move |k| (i, j, k))))
            .collect(),
        JacobiMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| (rng.gen_range(0..d.max(1)), rng.gen_range(0..d.max(1)), rng.gen_range(0..d.max(1)))).collect()
        }
    };
    let witness = if d == 0 {
        None
    } else if let Some(t) = g.int_table() {
        triples
            .par_iter()
            .map_init(|| vec![0i128; d], |buf, &(i, j, k)| (!jacobi_int(&t, d, i, j, k, buf)).then_some((i, j, k)))
            .find_first(|w| w.is_some())
            .flatten()
    } else {
        triples.par_iter().find_first(|&&(i, j, k)| !jacobi_exact(g, i, j, k)).copied()
    };
    let mode = match mode {
        JacobiMode::Full => "FULL".to_string(),
        JacobiMode::Sampled { count, seed } => format!("SAMPLED({count},{seed})"),
    };
    JacobiReport {
        algebra: g.name.clone(),
        mode,
        skew: g.skew,
        checked: triples.len(),
        passed: g.skew && witness.is_none(),
        witness,
    }
}

/// Killing form tr(ad e_i ∘ ad e_j), exact.
pub fn killing_matrix(g: &SCAlgebra) -> Matrix {
    let d = g.dim;
    let mut k = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let mut s = Scalar::zero();
            for m in 0..d {
                for (kk, c) in &g.table[i * d + m] {
                    for (mm, c2) in &g.table[j * d + kk] {
                        if *mm == m {
                            s += &(c * c2);
                        }
                    }
                }
            }
            k[(i, j)] = s.clone();
            k[(j, i)] = s;
        }
    }
    k
}

/// Rank of the Killing form. Integer structure constants go through a
/// modular rank (certifying full rank when it equals the dimension), with an
/// exact fallback otherwise.
pub fn killing_rank(g: &SCAlgebra) -> usize {
    let d = g.dim;
    if let Some(t) = g.int_table() {
        let rows: Vec<Vec<i128>> = (0..d)
            .into_par_iter()
            .map(|j| {
                // D[k*d + m] = c_{jk}^m
                let mut dj = vec![0i128; d * d];
                for kk in 0..d {
                    for &(m, c) in &t[j * d + kk] {
                        dj[kk * d + m as usize] = c;
                    }
                }
                (0..d)
                    .map(|i| {
                        let mut s = 0i128;
                        for m in 0..d {
                            for &(kk, c) in &t[i * d + m] {
                                s += c * dj[kk as usize * d + m];
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        let r = rank_mod_p_i128(&rows);
        if r == d {
            return r;
        }
    }
    killing_matrix(g).rank()
}

/// Dimension of the derived algebra [g, g].
pub fn derived_dim(g: &SCAlgebra) -> usize {
    let d = g.dim;
    if let Some(t) = g.int_table() {
        let rows: Vec<Vec<i128>> = t
            .iter()
            .filter(|v| !v.is_empty())
            .map(|v| {
                let mut r = vec![0i128; d];
                for &(k, c) in v {
                    r[k as usize] = c;
                }
                r
            })
            .collect();
        let r = rank_mod_p_i128(&rows);
        if r == d {
            return r;
        }
    }
    let mut sys = SparseSystem::new(d);
    for v in &g.table {
        if !v.is_empty() {
            sys.push(v.iter().cloned());
        }
    }
    sys.rank()
}

/// A Lie subalgebra of gl_n given by a basis of matrices, with its structure
/// constants in that basis.
#[derive(Clone, Debug)]
pub struct LinearLieAlgebra {
    pub n: usize,
    /// Basis in n² coordinates (row-major), reduced row-echelon.
    pub space: Subspace,
    pub sc: SCAlgebra,
}

fn sparse_matrix(n: usize, v: &[Scalar]) -> Vec<SparseVec> {
    (0..n).map(|r| (0..n).filter(|&c| !v[r * n + c].is_zero()).map(|c| (c, v[r * n + c].clone())).collect()).collect()
}

fn sparse_commutator(n: usize, x: &[SparseVec], y: &[SparseVec]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n * n];
    for (a, b, sign) in [(x, y, 1), (y, x, -1)] {
        for r in 0..n {
            for (m, c) in &a[r] {
                for (col, c2) in &b[*m] {
                    let p = c * c2;
                    if sign > 0 {
                        out[r * n + col] += &p;
                    } else {
                        out[r * n + col] -= &p;
                    }
                }
            }
        }
    }
    out
}

impl LinearLieAlgebra {
    /// Structure constants of a subspace of gl_n closed under commutators.
    pub fn from_space(name: &str, n: usize, space: Subspace) -> Self {
        let mats: Vec<Vec<SparseVec>> = space.basis().iter().map(|v| sparse_matrix(n, v)).collect();
        let piv = space.pivots();
        let d = space.dim();
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        let brackets: Vec<(usize, usize, SparseVec)> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let c = sparse_commutator(n, &mats[i], &mats[j]);
                let coords: SparseVec =
                    piv.iter().enumerate().filter(|(_, &p)| !c[p].is_zero()).map(|(k, &p)| (k, c[p].clone())).collect();
                (i, j, coords)
            })
            .collect();
        let mut entries = Vec::with_capacity(2 * brackets.len());
        for (i, j, v) in brackets {
            entries.push((j, i, v.iter().map(|(k, c)| (*k, -c)).collect()));
            entries.push((i, j, v));
        }
        LinearLieAlgebra { n, space, sc: SCAlgebra::new(name, d, entries) }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Basis element k as an n×n matrix.
    pub fn matrix(&self, k: usize) -> Matrix {
        Matrix::from_flat(self.n, self.n, self.space.basis()[k].clone())
    }

    /// Matrix of an element given in basis coordinates.
    pub fn element_matrix(&self, coords: &[Scalar]) -> Matrix {
        let mut v = vec![Scalar::zero(); self.n * self.n];
        for (c, b) in coords.iter().zip(self.space.basis()) {
            if !c.is_zero() {
                v = vec_add(&v, &vec_scale(b, c));
            }
        }
        Matrix::from_flat(self.n, self.n, v)
    }

    /// The subspace of gl_m obtained by restricting every basis matrix to
    /// the coordinates `idx` (which must be invariant).
    pub fn restricted_space(&self, idx: &[usize]) -> Subspace {
        let m = idx.len();
        let vecs = self
            .space
            .basis()
            .iter()
            .map(|v| {
                let mut w = Vec::with_capacity(m * m);
                for &r in idx {
                    for &c in idx {
                        w.push(v[r * self.n + c].clone());
                    }
                }
                w
            })
            .collect();
        Subspace::from_spanning(m * m, vecs)
    }
}

/// A finite-dimensional algebra by its product table, input to [`derivations`].
pub fn derivations(a: &SCAlgebra) -> LinearLieAlgebra {
    let d = a.dim;
    let var = |row: usize, col: usize| row * d + col;
    let mut sys = SparseSystem::new(d * d);
    for i in 0..d {
        for j in 0..d {
            // U(e_i e_j) − U(e_i) e_j − e_i U(e_j), component k
            let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
            for (m, c) in a.basis_bracket(i, j) {
                for k in 0..d {
                    rows.entry(k).or_default().push((var(k, *m), c.clone()));
                }
            }
            for m in 0..d {
                for (k, c) in a.basis_bracket(m, j) {
                    rows.entry(*k).or_default().push((var(m, i), -c));
                }
                for (k, c) in a.basis_bracket(i, m) {
                    rows.entry(*k).or_default().push((var(m, j), -c));
                }
            }
            for (_, r) in rows {
                sys.push(r);
            }
        }
    }
    LinearLieAlgebra::from_space(&format!("Der({})", a.name), d, sys.kernel())
}

/// {X ∈ gl_n : X·t = 0} for a linear action given on matrices.
pub fn stabilizer_in_gl(name: &str, n: usize, act: impl Fn(&Matrix) -> Vec<Scalar>) -> LinearLieAlgebra {
    let cols: Vec<Vec<Scalar>> = (0..n * n)
        .map(|e| {
            let mut x = Matrix::zeros(n, n);
            x[(e / n, e % n)] = Scalar::one();
            act(&x)
        })
        .collect();
    let len = cols.first().map_or(0, Vec::len);
    let mut sys = SparseSystem::new(n * n);
    for r in 0..len {
        sys.push((0..n * n).filter(|&c| !cols[c][r].is_zero()).map(|c| (c, cols[c][r].clone())));
    }
    LinearLieAlgebra::from_space(name, n, sys.kernel())
}

/// Stabilizer of a k-form under the linearized pullback action of gl_n.
pub fn form_stabilizer(omega: &KForm) -> LinearLieAlgebra {
    let w = omega.clone();
    stabilizer_in_gl("stab", omega.n(), move |x| w.infinitesimal_pullback(x).to_vector())
}

fn snap(x: f64) -> Option<BigInt> {
    let r = x.round();
    ((x - r).abs() < 1e-6).then(|| BigInt::from(r as i64))
}

/// Candidate eigenvalues of a square matrix in ℚ(i), from a floating-point
/// Schur form snapped to small denominators.
fn eigenvalue_candidates(m: &Matrix) -> Vec<Scalar> {
    let n = m.rows();
    if n == 0 {
        return Vec::new();
    }
    let f = |s: &Scalar| Complex::new(s.re().to_f64().unwrap_or(f64::NAN), s.im().to_f64().unwrap_or(f64::NAN));
    let a = DMatrix::from_fn(n, n, |r, c| f(&m[(r, c)]));
    let Some(eig) = a.schur().eigenvalues() else { return Vec::new() };
    let mut out: Vec<Scalar> = Vec::new();
    for z in eig.iter() {
        for q in 1..=12i64 {
            if let (Some(re), Some(im)) = (snap(z.re * q as f64), snap(z.im * q as f64)) {
                let s = Scalar::new(
                    num_rational::BigRational::new(re, BigInt::from(q)),
                    num_rational::BigRational::new(im, BigInt::from(q)),
                );
                if !out.contains(&s) {
                    out.push(s);
                }
                break;
            }
        }
    }
    out
}

/// Joint eigenspaces of commuting matrices, certified exactly: returns
/// (weight, eigenspace) pairs whose dimensions add up to the module dimension,
/// or NEEDS_EXTENSION.
pub fn weight_spaces(actions: &[Matrix]) -> Result<Vec<(Vec<Scalar>, Subspace)>> {
    let n = actions.first().map_or(0, Matrix::rows);
    let mut parts: Vec<(Vec<Scalar>, Subspace)> = vec![(Vec::new(), Subspace::full(n))];
    for a in actions {
        let mut next = Vec::new();
        for (w, s) in parts {
            let basis = s.basis().to_vec();
            let k = basis.len();
            // matrix of a restricted to s in the basis of s
            let cols: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|b| s.coordinates(&a.apply(b)).ok_or_else(|| Error::Invalid("action does not preserve a weight space".into())))
                .collect::<Result<_>>()?;
            let r = Matrix::from_cols(&cols, k);
            let mut found = 0;
            for lam in eigenvalue_candidates(&r) {
                let shifted = r.sub(&Matrix::identity(k).scale(&lam));
                let ker = shifted.kernel();
                if ker.dim() == 0 {
                    continue;
                }
                found += ker.dim();
                let vecs = ker
                    .basis()
                    .iter()
                    .map(|c| c.iter().zip(&basis).fold(vec![Scalar::zero(); n], |acc, (ci, bi)| vec_add(&acc, &vec_scale(bi, ci))))
                    .collect();
                let mut w2 = w.clone();
                w2.push(lam);
                next.push((w2, Subspace::from_spanning(n, vecs)));
            }
            if found != k {
                return Err(Error::NeedsExtension);
            }
        }
        parts = next;
    }
    parts.sort_by(|a, b| format!("{:?}", a.0).cmp(&format!("{:?}", b.0)));
    Ok(parts)
}

/// Weights with multiplicities.
pub fn weight_decomposition(actions: &[Matrix]) -> Result<Vec<(Vec<Scalar>, usize)>> {
    Ok(weight_spaces(actions)?.into_iter().map(|(w, s)| (w, s.dim())).collect())
}

/// Adjoint weights of an algebra with designated Cartan.
pub fn adjoint_weights(g: &SCAlgebra) -> Result<Vec<(Vec<Scalar>, usize)>> {
    let h = g.cartan().ok_or_else(|| Error::Invalid("no designated Cartan subalgebra".into()))?;
    let ads: Vec<Matrix> = h.iter().map(|x| g.ad(x)).collect();
    weight_decomposition(&ads)
}

/// The nonzero adjoint weights, one entry per root (with multiplicity).
pub fn roots_of(g: &SCAlgebra) -> Result<Vec<Vec<Scalar>>> {
    let mut out = Vec::new();
    for (w, m) in adjoint_weights(g)? {
        if w.iter().any(|x| !x.is_zero()) {
            for _ in 0..m {
                out.push(w.clone());
            }
        }
    }
    Ok(out)
}

/// Simple roots (in the coordinates of the input) and the Cartan matrix
/// A_ij = ⟨α_j, α_i^∨⟩ = −(length of the α_i-string above α_j).
pub fn simple_roots_and_cartan(roots: &[Vec<Scalar>]) -> Result<(Vec<Vec<Scalar>>, Matrix)> {
    let bad = |m: &str| Error::NotRootSystem(m.to_string());
    if roots.is_empty() {
        return Ok((Vec::new(), Matrix::zeros(0, 0)));
    }
    let dim = roots[0].len();
    if roots.iter().any(|r| r.len() != dim || vec_is_zero(r)) {
        return Err(bad("roots must be nonzero vectors of equal length"));
    }
    for r in roots {
        let neg: Vec<Scalar> = r.iter().map(|x| -x).collect();
        if !roots.contains(&neg) {
            return Err(bad("not closed under negation"));
        }
    }
    // basis among the roots
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for r in roots {
        let mut t = basis.clone();
        t.push(r.clone());
        if Matrix::from_rows_with_cols(t.clone(), dim).rank() == t.len() {
            basis = t;
        }
    }
    let rank = basis.len();
    let bm = Matrix::from_cols(&basis, dim);
    let coords: Vec<Vec<Scalar>> = roots
        .iter()
        .map(|r| bm.solve(r).filter(|c| c.iter().all(Scalar::is_rational)).ok_or_else(|| bad("roots do not have rational coordinates")))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let functional = loop {
        let f: Vec<Scalar> = (0..rank).map(|_| Scalar::from(rng.gen_range(1..=1000i64))).collect();
        if coords.iter().all(|c| !crate::exactlinalg::dot(c, &f).is_zero()) {
            break f;
        }
    };
    let positive = |c: &Vec<Scalar>| crate::exactlinalg::dot(c, &functional).re() > &num_rational::BigRational::zero();
    let key = |c: &[Scalar]| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let all: HashMap<String, usize> = coords.iter().enumerate().map(|(k, c)| (key(c), k)).collect();
    let pos: Vec<&Vec<Scalar>> = coords.iter().filter(|c| positive(c)).collect();
    let simple: Vec<Vec<Scalar>> = pos
        .iter()
        .filter(|c| !pos.iter().any(|a| all.contains_key(&key(&crate::exactlinalg::vec_sub(c, a))) && positive(&crate::exactlinalg::vec_sub(c, a))))
        .map(|c| (*c).clone())
        .collect();
    if simple.len() != rank {
        return Err(bad("number of simple roots differs from the rank"));
    }
    let sm = Matrix::from_cols(&simple, rank);
    for c in &pos {
        let x = sm.solve(c).ok_or_else(|| bad("positive root outside the simple span"))?;
        if !x.iter().all(|v| v.is_rational() && v.re().is_integer() && v.re() >= &num_rational::BigRational::zero()) {
            return Err(bad("positive root is not a nonnegative integer combination of simple roots"));
        }
    }
    let mut a = Matrix::zeros(rank, rank);
    for i in 0..rank {
        for j in 0..rank {
            if i == j {
                a[(i, i)] = Scalar::from(2);
                continue;
            }
            if all.contains_key(&key(&crate::exactlinalg::vec_sub(&simple[j], &simple[i]))) {
                return Err(bad("difference of simple roots is a root"));
            }
            let mut q = 0i64;
            let mut cur = simple[j].clone();
            loop {
                cur = vec_add(&cur, &simple[i]);
                if !all.contains_key(&key(&cur)) {
                    break;
                }
                q += 1;
            }
            a[(i, j)] = Scalar::from(-q);
        }
    }
    let simple_in_input: Vec<Vec<Scalar>> = simple.iter().map(|c| bm.apply(c)).collect();
    Ok((simple_in_input, a))
}

pub fn cartan_matrix_from_roots(roots: &[Vec<Scalar>]) -> Result<Matrix> {
    Ok(simple_roots_and_cartan(roots)?.1)
}

/// Whether two Cartan matrices agree after a simultaneous permutation of
/// rows and columns.
pub fn cartan_equal_up_to_relabeling(a: &Matrix, b: &Matrix) -> bool {
    let n = a.rows();
    if b.rows() != n {
        return false;
    }
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    perms(n).iter().any(|p| (0..n).all(|i| (0..n).all(|j| a[(p[i], p[j])] == b[(i, j)])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::{canonical_octonions, complex, quaternions, real};

    fn sl2() -> SCAlgebra {
        // h, e, f with [h,e]=2e, [h,f]=−2f, [e,f]=h
        let s = |k: usize, c: i64| vec![(k, Scalar::from(c))];
        SCAlgebra::new(
            "sl2",
            3,
            vec![(0, 1, s(1, 2)), (1, 0, s(1, -2)), (0, 2, s(2, -2)), (2, 0, s(2, 2)), (1, 2, s(0, 1)), (2, 1, s(0, -1))],
        )
    }

    #[test]
    fn sl2_basics() {
        let g = sl2();
        assert!(g.is_skew());
        assert!(jacobi_check(&g, JacobiMode::Full).passed);
        assert_eq!(killing_rank(&g), 3);
        assert_eq!(derived_dim(&g), 3);
        let g = g.with_cartan(vec![vec![Scalar::one(), Scalar::zero(), Scalar::zero()]]).unwrap();
        let roots = roots_of(&g).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(cartan_matrix_from_roots(&roots).unwrap(), Matrix::from_i64(&[&[2]]));
    }

    #[test]
    fn derivation_dims() {
        let dims: Vec<usize> =
            [real(), complex(), quaternions(), canonical_octonions()].iter().map(|a| derivations(&SCAlgebra::from_comp(a)).dim()).collect();
        assert_eq!(dims, vec![0, 0, 3, 14]);
    }

    #[test]
    fn g2_is_jacobi_and_flip_fails() {
        let g2 = derivations(&SCAlgebra::from_comp(&canonical_octonions()));
        assert!(jacobi_check(&g2.sc, JacobiMode::Full).passed);
        assert_eq!(killing_rank(&g2.sc), 14);
        let (i, j) = (0..14)
            .flat_map(|i| (i + 1..14).map(move |j| (i, j)))
            .find(|&(i, j)| !g2.sc.basis_bracket(i, j).is_empty())
            .unwrap();
        let bad = g2.sc.sign_flipped(i, j);
        let r = jacobi_check(&bad, JacobiMode::Full);
        assert!(!r.passed && r.witness.is_some());
    }

    #[test]
    fn json_round_trip() {
        let g = sl2();
        let back = SCAlgebra::from_json(&g.to_json()).unwrap();
        assert_eq!(back.to_json(), g.to_json());
    }

    #[test]
    fn abelian_weights_vanish() {
        let g = SCAlgebra::abelian(2)
            .with_cartan(vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::one()]])
            .unwrap();
        let w = adjoint_weights(&g).unwrap();
        assert_eq!(w.len(), 1);
        assert!(w[0].0.iter().all(Scalar::is_zero));
        assert_eq!(w[0].1, 2);
    }

    #[test]
    fn cartan_from_small_root_systems() {
        let v = |a: i64, b: i64| vec![Scalar::from(a), Scalar::from(b)];
        let a1a1 = vec![v(1, 0), v(-1, 0), v(0, 1), v(0, -1)];
        assert_eq!(cartan_matrix_from_roots(&a1a1).unwrap(), Matrix::from_i64(&[&[2, 0], &[0, 2]]));
        let a2 = vec![v(1, 0), v(0, 1), v(1, 1), v(-1, 0), v(0, -1), v(-1, -1)];
        assert_eq!(cartan_matrix_from_roots(&a2).unwrap(), Matrix::from_i64(&[&[2, -1], &[-1, 2]]));
        assert!(cartan_matrix_from_roots(&[v(1, 0)]).is_err());
    }

    #[test]
    fn non_diagonalizable_needs_extension() {
        let n = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(weight_decomposition(&[n]), Err(Error::NeedsExtension));
        let rot = Matrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert_eq!(weight_decomposition(&[rot]).unwrap().len(), 2);
    }
}
