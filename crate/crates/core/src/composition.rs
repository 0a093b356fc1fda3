//! Composition algebras: Cayley–Dickson doubling, the octonions from the Fano
//! plane, identity testers, cross products and pointwise octonionic geometry
//! (null-planes, kernels of left multiplication, four-dimensional
//! subalgebras, sextonions).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlinalg::{
    dot, random_vector, unit_vector, vec_add, vec_is_zero, vec_scale, vec_sub, Matrix, Scalar,
    Subspace,
};
use crate::forms::KForm;

/// Coordinates of an algebra element.
pub type AlgElement = Vec<Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoublingSign {
    Standard,
    Split,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    Alternative,
    Associative,
    Moufang,
    NormMult,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Oriented lines of the Fano plane: e_a·e_b = e_c.
pub const FANO_LINES: [[usize; 3]; 7] =
    [[1, 2, 3], [3, 6, 5], [5, 4, 1], [2, 6, 4], [1, 7, 6], [5, 7, 2], [3, 7, 4]];

/// A unital algebra given by its multiplication table, with a diagonal
/// conjugation and the induced symmetric bilinear form.
#[derive(Clone, Debug)]
pub struct CompAlgebra {
    name: String,
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    conj: Vec<i64>,
    gram: Matrix,
}

impl CompAlgebra {
    /// Build from a dense table; the bilinear form is ⟨x,y⟩ = Re(x·ȳ + y·x̄)/2.
    pub fn from_table(name: &str, table: Vec<Vec<AlgElement>>, conj: Vec<i64>) -> Self {
        let d = table.len();
        let sparse = table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
                    })
                    .collect()
            })
            .collect();
        let mut alg = CompAlgebra { name: name.to_string(), table: sparse, conj, gram: Matrix::zeros(d, d) };
        let mut gram = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let a = alg.mul(&unit_vector(d, i), &alg.conjugate(&unit_vector(d, j)));
                let b = alg.mul(&unit_vector(d, j), &alg.conjugate(&unit_vector(d, i)));
                gram[(i, j)] = &(&a[0] + &b[0]) * &Scalar::frac(1, 2);
            }
        }
        alg.gram = gram;
        alg
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn conj_signature(&self) -> &[i64] {
        &self.conj
    }

    pub fn one(&self) -> AlgElement {
        unit_vector(self.dim(), 0)
    }

    pub fn basis(&self, i: usize) -> AlgElement {
        unit_vector(self.dim(), i)
    }

    pub fn zero(&self) -> AlgElement {
        vec![Scalar::zero(); self.dim()]
    }

    /// Product of basis elements e_i·e_j as a dense vector.
    pub fn basis_product(&self, i: usize, j: usize) -> AlgElement {
        let mut v = self.zero();
        for (k, c) in &self.table[i][j] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> AlgElement {
        let d = self.dim();
        let mut r = vec![Scalar::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, t) in &self.table[i][j] {
                    r[*k] += &(&c * t);
                }
            }
        }
        r
    }

    pub fn conjugate(&self, x: &[Scalar]) -> AlgElement {
        x.iter().zip(&self.conj).map(|(a, &s)| if s < 0 { -a } else { a.clone() }).collect()
    }

    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(x, &self.gram.apply(y))
    }

    pub fn norm(&self, x: &[Scalar]) -> Scalar {
        self.bilinear(x, x)
    }

    /// Real part as a multiple of the unit.
    pub fn re(&self, x: &[Scalar]) -> AlgElement {
        let mut v = self.zero();
        v[0] = self.bilinear(x, &self.one());
        v
    }

    pub fn im(&self, x: &[Scalar]) -> AlgElement {
        vec_sub(x, &self.re(x))
    }

    pub fn is_imaginary(&self, x: &[Scalar]) -> bool {
        self.bilinear(x, &self.one()).is_zero()
    }

    /// Matrix of left multiplication by x.
    pub fn left_matrix(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        Matrix::from_cols(&(0..d).map(|j| self.mul(x, &self.basis(j))).collect::<Vec<_>>(), d)
    }

    pub fn right_matrix(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        Matrix::from_cols(&(0..d).map(|j| self.mul(&self.basis(j), x)).collect::<Vec<_>>(), d)
    }

    /// Dense table: entry (i,j) is the coordinate vector of e_i·e_j.
    pub fn table(&self) -> Vec<Vec<AlgElement>> {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| self.basis_product(i, j)).collect()).collect()
    }

    pub fn table_json(&self) -> serde_json::Value {
        serde_json::json!({
            "algebra": self.name,
            "dim": self.dim(),
            "table": self.table(),
        })
    }

    /// Structural checks: unit, conjugation anti-automorphism, x·x̄ = q(x).
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            let e = self.basis(i);
            if self.mul(&self.one(), &e) != e || self.mul(&e, &self.one()) != e {
                return Err(Error::Invalid(format!("e0 is not a unit on e{i}")));
            }
            let n = self.mul(&e, &self.conjugate(&e));
            if n != vec_scale(&self.one(), &self.norm(&e)) {
                return Err(Error::Invalid(format!("x·x̄ ≠ q(x) on e{i}")));
            }
            for j in 0..d {
                let f = self.basis(j);
                let lhs = self.conjugate(&self.mul(&e, &f));
                let rhs = self.mul(&self.conjugate(&f), &self.conjugate(&e));
                if lhs != rhs {
                    return Err(Error::Invalid(format!("conjugation not anti-multiplicative on e{i}, e{j}")));
                }
            }
        }
        Ok(())
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng, height: u32, gaussian: bool) -> AlgElement {
        random_vector(rng, self.dim(), height, gaussian)
    }
}

/// The one-dimensional algebra of scalars.
pub fn real() -> CompAlgebra {
    CompAlgebra::from_table("R", vec![vec![vec![Scalar::one()]]], vec![1])
}

/// Cayley–Dickson doubling: (a,b)(c,d) = (ac ∓ d̄b, bc̄ + da), − for STANDARD.
pub fn cayley_dickson(base: &CompAlgebra, sign: DoublingSign, name: &str) -> CompAlgebra {
    let n = base.dim();
    let split = |x: &[Scalar]| (x[..n].to_vec(), x[n..].to_vec());
    let mut table = Vec::with_capacity(2 * n);
    for i in 0..2 * n {
        let mut row = Vec::with_capacity(2 * n);
        for j in 0..2 * n {
            let (a, b) = split(&unit_vector(2 * n, i));
            let (c, d) = split(&unit_vector(2 * n, j));
            let db = base.mul(&base.conjugate(&d), &b);
            let first = match sign {
                DoublingSign::Standard => vec_sub(&base.mul(&a, &c), &db),
                DoublingSign::Split => vec_add(&base.mul(&a, &c), &db),
            };
            let second = vec_add(&base.mul(&b, &base.conjugate(&c)), &base.mul(&d, &a));
            row.push([first, second].concat());
        }
        table.push(row);
    }
    let mut conj = base.conj.clone();
    conj.extend(std::iter::repeat_n(-1, n));
    CompAlgebra::from_table(name, table, conj)
}

/// Octonions with e_a·e_b = e_c = −e_b·e_a along the oriented Fano lines.
pub fn canonical_octonions() -> CompAlgebra {
    let mut table = vec![vec![vec![Scalar::zero(); 8]; 8]; 8];
    for i in 0..8 {
        table[0][i][i] = Scalar::one();
        table[i][0][i] = Scalar::one();
    }
    for i in 1..8 {
        table[i][i][0] = Scalar::from(-1);
    }
    for [a, b, c] in FANO_LINES {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            table[x][y][z] = Scalar::one();
            table[y][x][z] = Scalar::from(-1);
        }
    }
    let mut conj = vec![-1; 8];
    conj[0] = 1;
    CompAlgebra::from_table("O", table, conj)
}

pub fn complex() -> CompAlgebra {
    cayley_dickson(&real(), DoublingSign::Standard, "C")
}

pub fn quaternions() -> CompAlgebra {
    cayley_dickson(&complex(), DoublingSign::Standard, "H")
}

/// Octonions obtained by doubling the quaternions.
pub fn doubled_octonions() -> CompAlgebra {
    cayley_dickson(&quaternions(), DoublingSign::Standard, "O(doubled)")
}

pub fn split_complex() -> CompAlgebra {
    cayley_dickson(&real(), DoublingSign::Split, "split-C")
}

pub fn split_quaternions() -> CompAlgebra {
    cayley_dickson(&complex(), DoublingSign::Split, "split-H")
}

pub fn split_octonions() -> CompAlgebra {
    cayley_dickson(&quaternions(), DoublingSign::Split, "split-O")
}

pub fn sedenions() -> CompAlgebra {
    cayley_dickson(&doubled_octonions(), DoublingSign::Standard, "sedenion")
}

/// Look up an algebra by CLI name.
pub fn by_name(name: &str) -> Result<CompAlgebra> {
    Ok(match name {
        "R" => real(),
        "C" => complex(),
        "H" => quaternions(),
        "O" => canonical_octonions(),
        "O-doubled" => doubled_octonions(),
        "split-C" => split_complex(),
        "split-H" => split_quaternions(),
        "split-O" => split_octonions(),
        "sedenion" => sedenions(),
        other => return Err(Error::Parse(format!("unknown algebra '{other}'"))),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub algebra: String,
    pub checked: usize,
    pub passed: bool,
    /// Elements (as coordinate strings) of the first failing instance.
    pub witness: Option<Vec<AlgElement>>,
}

fn identity_holds(alg: &CompAlgebra, which: Identity, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> bool {
    let m = |a: &[Scalar], b: &[Scalar]| alg.mul(a, b);
    match which {
        Identity::Alternative => {
            let xx = m(x, x);
            let yy = m(y, y);
            m(x, &m(x, y)) == m(&xx, y)
                && m(&m(y, x), x) == m(y, &xx)
                && m(&m(x, y), x) == m(x, &m(y, x))
                && m(y, &m(y, x)) == m(&yy, x)
        }
        Identity::Associative => m(&m(x, y), z) == m(x, &m(y, z)),
        Identity::Moufang => {
            m(z, &m(x, &m(z, y))) == m(&m(&m(z, x), z), y)
                && m(x, &m(z, &m(y, z))) == m(&m(&m(x, z), y), z)
                && m(&m(z, x), &m(y, z)) == m(&m(z, &m(x, y)), z)
        }
        Identity::NormMult => alg.norm(&m(x, y)) == &alg.norm(x) * &alg.norm(y),
    }
}

/// Check an identity on all basis pairs (or triples) and on `samples` random
/// elements with small Gaussian-rational coordinates.
pub fn check_identities(alg: &CompAlgebra, which: Identity, samples: usize, seed: u64) -> IdentityReport {
    let d = alg.dim();
    let triples = matches!(which, Identity::Associative | Identity::Moufang);
    let mut checked = 0;
    let mut fail = None;
    'basis: for i in 0..d {
        for j in 0..d {
            for k in 0..if triples { d } else { 1 } {
                let (x, y, z) = (alg.basis(i), alg.basis(j), alg.basis(k));
                checked += 1;
                if !identity_holds(alg, which, &x, &y, &z) {
                    fail = Some(vec![x, y, z]);
                    break 'basis;
                }
            }
        }
    }
    if fail.is_none() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x = alg.random_element(&mut rng, 3, true);
            let y = alg.random_element(&mut rng, 3, true);
            let z = alg.random_element(&mut rng, 3, true);
            checked += 1;
            if !identity_holds(alg, which, &x, &y, &z) {
                fail = Some(vec![x, y, z]);
                break;
            }
        }
    }
    IdentityReport {
        identity: format!("{which:?}").to_uppercase(),
        algebra: alg.name.clone(),
        checked,
        passed: fail.is_none(),
        witness: fail,
    }
}

/// u × v = Im(uv) for imaginary u, v.
pub fn cross_product(alg: &CompAlgebra, u: &[Scalar], v: &[Scalar]) -> Result<AlgElement> {
    if !alg.is_imaginary(u) || !alg.is_imaginary(v) {
        return Err(Error::NotImaginary);
    }
    Ok(alg.im(&alg.mul(u, v)))
}

/// A bilinear product on an m-dimensional quadratic space (the imaginary part).
#[derive(Clone, Debug)]
pub struct CrossTable {
    pub gram: Matrix,
    /// table[i][j] = e_i × e_j in imaginary coordinates.
    pub table: Vec<Vec<Vec<Scalar>>>,
}

/// Cross table of an algebra whose basis elements 1.. are imaginary.
pub fn cross_table(alg: &CompAlgebra) -> CrossTable {
    let m = alg.dim() - 1;
    let mut gram = Matrix::zeros(m, m);
    let mut table = vec![vec![vec![]; m]; m];
    for i in 0..m {
        for j in 0..m {
            gram[(i, j)] = alg.gram()[(i + 1, j + 1)].clone();
            let c = cross_product(alg, &alg.basis(i + 1), &alg.basis(j + 1)).expect("imaginary basis");
            table[i][j] = c[1..].to_vec();
        }
    }
    CrossTable { gram, table }
}

/// (s,u)(t,v) = (st − ⟨u,v⟩, sv + tu + u×v).
pub fn algebra_from_cross(cross: &CrossTable, name: &str) -> CompAlgebra {
    let m = cross.gram.rows();
    let d = m + 1;
    let mut table = vec![vec![vec![Scalar::zero(); d]; d]; d];
    for i in 0..d {
        table[0][i][i] = Scalar::one();
        table[i][0][i] = Scalar::one();
    }
    for i in 0..m {
        for j in 0..m {
            let e = &mut table[i + 1][j + 1];
            e[0] = -&cross.gram[(i, j)];
            e[1..=m].clone_from_slice(&cross.table[i][j][..m]);
        }
    }
    let mut conj = vec![-1; d];
    conj[0] = 1;
    CompAlgebra::from_table(name, table, conj)
}

/// The three-form ω(x,y,z) = ⟨xy, z⟩ on the imaginary part.
pub fn associative_form(alg: &CompAlgebra) -> KForm {
    let m = alg.dim() - 1;
    let mut w = KForm::zero(m, 3);
    for i in 1..=m {
        for j in i + 1..=m {
            let p = alg.mul(&alg.basis(i), &alg.basis(j));
            for k in j + 1..=m {
                let c = alg.bilinear(&p, &alg.basis(k));
                if !c.is_zero() {
                    w.add_term(&[i, j, k], c);
                }
            }
        }
    }
    w
}

/// ⋆ω for the standard metric and orientation.
pub fn coassociative_form(alg: &CompAlgebra) -> KForm {
    associative_form(alg).hodge_star()
}

fn require_isotropic(alg: &CompAlgebra, x: &[Scalar]) -> Result<()> {
    if vec_is_zero(x) || !alg.norm(x).is_zero() {
        return Err(Error::NonIsotropic);
    }
    Ok(())
}

/// The subspace of imaginary elements.
pub fn imaginary_subspace(alg: &CompAlgebra) -> Subspace {
    Matrix::from_rows(vec![alg.gram().row(0).to_vec()]).kernel()
}

/// Kernel of L_x, optionally intersected with Im.
pub fn left_mult_kernel(alg: &CompAlgebra, x: &[Scalar], restrict_to_imaginary: bool) -> Result<Subspace> {
    require_isotropic(alg, x)?;
    let k = alg.left_matrix(x).kernel();
    Ok(if restrict_to_imaginary { k.intersect(&imaginary_subspace(alg)) } else { k })
}

/// Kernel of the two-form x⌟ω, embedded in algebra coordinates.
pub fn contraction_kernel(alg: &CompAlgebra, x: &[Scalar]) -> Subspace {
    let w = associative_form(alg);
    let beta = w.contract(&x[1..]);
    let k = beta.to_skew_matrix().kernel();
    Subspace::from_spanning(
        alg.dim(),
        k.basis().iter().map(|v| [vec![Scalar::zero()], v.clone()].concat()).collect(),
    )
}

pub fn is_null_plane(alg: &CompAlgebra, n: &Subspace) -> Result<bool> {
    if n.dim() != 2 {
        return Err(Error::Dimension(format!("a null-plane candidate must be 2-dimensional, got {}", n.dim())));
    }
    let b = n.basis();
    Ok((0..2).all(|i| (0..2).all(|j| vec_is_zero(&alg.mul(&b[i], &b[j])))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FourClass {
    R4Quaternion,
    R2NullPlane,
    R1Line,
}

/// Gram matrix of the bilinear form on a subspace basis.
pub fn restricted_gram(alg: &CompAlgebra, s: &Subspace) -> Matrix {
    let b = s.basis();
    Matrix::from_rows_with_cols(
        b.iter().map(|x| b.iter().map(|y| alg.bilinear(x, y)).collect()).collect(),
        b.len(),
    )
}

fn is_closed(alg: &CompAlgebra, s: &Subspace) -> bool {
    let b = s.basis();
    b.iter().all(|x| b.iter().all(|y| s.contains(&alg.mul(x, y))))
}

/// Radical of the bilinear form restricted to s, in algebra coordinates.
pub fn restricted_radical(alg: &CompAlgebra, s: &Subspace) -> Subspace {
    let g = restricted_gram(alg, s);
    let k = g.kernel();
    let b = s.basis();
    Subspace::from_spanning(
        alg.dim(),
        k.basis()
            .iter()
            .map(|c| {
                let mut v = alg.zero();
                for (ci, bi) in c.iter().zip(b) {
                    v = vec_add(&v, &vec_scale(bi, ci));
                }
                v
            })
            .collect(),
    )
}

/// Classify a four-dimensional unital subalgebra by the rank of q on it.
pub fn classify_four_subalgebra(alg: &CompAlgebra, a: &Subspace) -> Result<(FourClass, Option<Subspace>)> {
    if a.dim() != 4 {
        return Err(Error::Dimension("expected a 4-dimensional subspace".into()));
    }
    if !a.contains(&alg.one()) || !is_closed(alg, a) {
        return Err(Error::NotSubalgebra);
    }
    let r = restricted_gram(alg, a).rank();
    match r {
        4 => Ok((FourClass::R4Quaternion, None)),
        2 => Ok((FourClass::R2NullPlane, Some(restricted_radical(alg, a)))),
        1 => {
            // ℓ = {x ∈ Im A : x·Im A = 0}
            let im = a.intersect(&imaginary_subspace(alg));
            let b = im.basis();
            let d = alg.dim();
            let mut rows = Vec::new();
            for z in b {
                let m = alg.right_matrix(z);
                let mut coeffs = Matrix::zeros(d, b.len());
                for (c, y) in b.iter().enumerate() {
                    let col = m.apply(y);
                    for r in 0..d {
                        coeffs[(r, c)] = col[r].clone();
                    }
                }
                rows.extend(coeffs.to_rows());
            }
            let k = Matrix::from_rows_with_cols(rows, b.len()).kernel();
            let line = Subspace::from_spanning(
                d,
                k.basis()
                    .iter()
                    .map(|c| c.iter().zip(b).fold(alg.zero(), |acc, (ci, bi)| vec_add(&acc, &vec_scale(bi, ci))))
                    .collect(),
            );
            Ok((FourClass::R1Line, Some(line)))
        }
        other => Err(Error::Invalid(format!("unexpected rank {other} of q on a four-dimensional subalgebra"))),
    }
}

/// Whether a 2-plane P ⊂ Im satisfies xy ∈ span{1, x, y}.
pub fn is_lie_two_plane(alg: &CompAlgebra, p: &Subspace) -> Result<bool> {
    if p.dim() != 2 {
        return Err(Error::Dimension("expected a 2-plane".into()));
    }
    let b = p.basis();
    if !b.iter().all(|x| alg.is_imaginary(x)) {
        return Err(Error::NotImaginary);
    }
    let span = Subspace::from_spanning(alg.dim(), vec![alg.one(), b[0].clone(), b[1].clone()]);
    Ok(span.contains(&alg.mul(&b[0], &b[1])))
}

/// Rank of the two-form y⌟(x⌟⋆ω) for a basis x, y of P ⊂ Im (on V/P).
pub fn coassociative_drop_rank(alg: &CompAlgebra, p: &Subspace) -> usize {
    let star = coassociative_form(alg);
    let b = p.basis();
    let beta = star.contract(&b[0][1..]).contract(&b[1][1..]);
    beta.to_skew_matrix().rank()
}

/// The six-dimensional subalgebra N^⊥ for a null-plane N, with its model.
#[derive(Clone, Debug)]
pub struct Sextonions {
    /// Basis of S = N^⊥ in algebra coordinates.
    pub basis: Vec<AlgElement>,
    /// table[i][j] = coordinates of s_i·s_j in the basis above.
    pub table: Vec<Vec<Vec<Scalar>>>,
    pub q_rank: usize,
    pub closed: bool,
    /// Model (A,v)(B,w) = (AB, tr(A)w − Aw + Bv) on M₂ ⊕ ℚ(i)², as the images of the basis.
    pub model_images: Vec<Vec<Scalar>>,
    pub isomorphic_to_model: bool,
}

/// The sextonion model product on 2×2 matrices ⊕ column vectors, packed as
/// [a11, a12, a21, a22, v1, v2].
pub fn sextonion_model_mul(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let a = Matrix::from_flat(2, 2, x[..4].to_vec());
    let b = Matrix::from_flat(2, 2, y[..4].to_vec());
    let v = &x[4..6];
    let w = &y[4..6];
    let ab = a.matmul(&b).flatten();
    let tr = a.trace();
    let aw = a.apply(w);
    let bv = b.apply(v);
    let n: Vec<Scalar> = (0..2).map(|k| &(&(&tr * &w[k]) - &aw[k]) + &bv[k]).collect();
    [ab, n].concat()
}

/// Quaternion-to-matrix images: 1, e1, e2, e3 ↦ I, diag(i,−i), [[0,1],[−1,0]], [[0,i],[i,0]].
fn quaternion_matrices() -> [Vec<Scalar>; 4] {
    let z = Scalar::zero;
    let o = Scalar::one;
    let i = Scalar::i;
    [
        vec![o(), z(), z(), o()],
        vec![i(), z(), z(), -i()],
        vec![z(), o(), -o(), z()],
        vec![z(), i(), i(), z()],
    ]
}

pub fn sextonions(alg: &CompAlgebra, n: &Subspace) -> Result<Sextonions> {
    if !is_null_plane(alg, n)? {
        return Err(Error::NotNullPlane);
    }
    let d = alg.dim();
    let perp = Matrix::from_rows_with_cols(n.basis().iter().map(|v| alg.gram().apply(v)).collect(), d).kernel();
    // basis: 1, e1, e2, e3 then the two null vectors
    let mut basis: Vec<AlgElement> = (0..4).map(|k| alg.basis(k)).collect();
    basis.extend(n.basis().iter().cloned());
    let s = Subspace::from_spanning(d, basis.clone());
    if s != perp {
        return Err(Error::Invalid("N^⊥ is not spanned by the quaternion unit basis and N".into()));
    }
    let coord_matrix = Matrix::from_cols(&basis, d);
    let mut closed = true;
    let mut table = vec![vec![vec![]; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            let p = alg.mul(&basis[i], &basis[j]);
            match coord_matrix.solve(&p) {
                Some(c) => table[i][j] = c,
                None => {
                    closed = false;
                    table[i][j] = vec![Scalar::zero(); 6];
                }
            }
        }
    }
    let q_rank = restricted_gram(alg, &s).rank();
    // images of the quaternion part are fixed; find ψ: N → ℚ(i)² making the map multiplicative
    let qm = quaternion_matrices();
    let mut images: Vec<Vec<Scalar>> =
        qm.iter().map(|m| [m.clone(), vec![Scalar::zero(); 2]].concat()).collect();
    let psi = solve_null_part(&table, &images);
    let mut iso = false;
    if let Some(psi) = psi {
        for k in 0..2 {
            let mut v = vec![Scalar::zero(); 4];
            v.extend(psi[k].clone());
            images.push(v);
        }
        iso = (0..6).all(|i| {
            (0..6).all(|j| {
                let lhs = sextonion_model_mul(&images[i], &images[j]);
                let rhs = table[i][j]
                    .iter()
                    .zip(&images)
                    .fold(vec![Scalar::zero(); 6], |acc, (c, im)| vec_add(&acc, &vec_scale(im, c)));
                lhs == rhs
            })
        });
    } else {
        images.extend(vec![vec![Scalar::zero(); 6]; 2]);
    }
    Ok(Sextonions { basis, table, q_rank, closed, model_images: images, isomorphic_to_model: iso })
}

/// Solve for the images of the two null basis vectors (4 unknowns) so that
/// products with the quaternion part match the model; returns a nonzero solution.
fn solve_null_part(table: &[Vec<Vec<Scalar>>], quat: &[Vec<Scalar>]) -> Option<[Vec<Scalar>; 2]> {
    // unknown vector u = (ψ(n1), ψ(n2)) ∈ ℚ(i)⁴
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let unknown = |k: usize, c: usize| 2 * k + c;
    for h in 0..4 {
        for k in 0..2 {
            // image(h·n_k) and image(n_k·h) expressed linearly in u
            for (left, pidx) in [(true, (h, 4 + k)), (false, (4 + k, h))] {
                let prod = &table[pidx.0][pidx.1];
                for comp in 0..2 {
                    let mut row = vec![Scalar::zero(); 4];
                    // rhs from the table: Σ_m prod[m]·ψ(n_m) (quaternion part of prod must vanish)
                    for m in 0..2 {
                        row[unknown(m, comp)] += &prod[4 + m];
                    }
                    // lhs from the model
                    let a = Matrix::from_flat(2, 2, quat[h][..4].to_vec());
                    if left {
                        // (A,0)(0,w) = (0, tr(A)w − Aw)
                        let t = a.trace();
                        for c2 in 0..2 {
                            let mut coef = -&a[(comp, c2)];
                            if c2 == comp {
                                coef += &t;
                            }
                            row[unknown(k, c2)] -= &coef;
                        }
                    } else {
                        // (0,v)(B,0) = (0, Bv)
                        for c2 in 0..2 {
                            row[unknown(k, c2)] -= &a[(comp, c2)];
                        }
                    }
                    rows.push(row);
                }
                if prod[..4].iter().any(|x| !x.is_zero()) {
                    return None;
                }
            }
        }
    }
    let ker = Matrix::from_rows_with_cols(rows, 4).kernel();
    ker.basis().iter().find_map(|u| {
        let p1 = u[0..2].to_vec();
        let p2 = u[2..4].to_vec();
        let det = &(&p1[0] * &p2[1]) - &(&p1[1] * &p2[0]);
        (!det.is_zero()).then_some([p1, p2])
    })
}

/// Image of L_p or R_p for an isotropic p.
pub fn maximal_isotropic_from_divisor(alg: &CompAlgebra, p: &[Scalar], side: Side) -> Result<Subspace> {
    require_isotropic(alg, p)?;
    let m = match side {
        Side::Left => alg.left_matrix(p),
        Side::Right => alg.right_matrix(p),
    };
    Ok(m.image())
}

/// An explicit isomorphism from `alg` (an octonion model over ℚ(i)) onto
/// the canonical octonions, built from a basic triple. Returns the 8×8
/// matrix whose columns are the images in `alg` of the canonical basis.
pub fn basic_triple_isomorphism(alg: &CompAlgebra) -> Result<Matrix> {
    if alg.dim() != 8 {
        return Err(Error::Dimension("basic triples need an 8-dimensional algebra".into()));
    }
    let unit = |x: &AlgElement| -> Option<AlgElement> {
        let q = alg.norm(x);
        if q == Scalar::one() {
            Some(x.clone())
        } else if q == Scalar::from(-1) {
            Some(vec_scale(x, &Scalar::i()))
        } else {
            None
        }
    };
    let imag: Vec<AlgElement> = (1..8).map(|k| alg.basis(k)).collect();
    let orth = |x: &AlgElement, ys: &[AlgElement]| ys.iter().all(|y| alg.bilinear(x, y).is_zero());
    for a in &imag {
        let Some(u1) = unit(a) else { continue };
        for b in &imag {
            if !orth(b, &[alg.one(), u1.clone()]) {
                continue;
            }
            let Some(u2) = unit(b) else { continue };
            let u12 = alg.mul(&u1, &u2);
            for c in &imag {
                if !orth(c, &[alg.one(), u1.clone(), u2.clone(), u12.clone()]) {
                    continue;
                }
                let Some(u3) = unit(c) else { continue };
                let imgs = vec![
                    alg.one(),
                    u1.clone(),
                    u2.clone(),
                    u12.clone(),
                    u3.clone(),
                    alg.mul(&u3, &u1),
                    alg.mul(&u3, &u2),
                    alg.mul(&u3, &u12),
                ];
                let phi = Matrix::from_cols(&imgs, 8);
                if is_isomorphism(&canonical_octonions(), alg, &phi) {
                    return Ok(phi);
                }
            }
        }
    }
    Err(Error::Invalid("no basic triple gives an isomorphism".into()))
}

/// Whether the linear map with matrix `phi` (columns = images of basis of
/// `src`) is an algebra isomorphism src → dst.
pub fn is_isomorphism(src: &CompAlgebra, dst: &CompAlgebra, phi: &Matrix) -> bool {
    if phi.rank() != src.dim() {
        return false;
    }
    let d = src.dim();
    let img: Vec<AlgElement> = (0..d).map(|k| phi.col(k)).collect();
    (0..d).all(|i| (0..d).all(|j| phi.apply(&src.basis_product(i, j)) == dst.mul(&img[i], &img[j])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(pairs: &[(usize, Scalar)]) -> AlgElement {
        let mut v = vec![Scalar::zero(); 8];
        for (k, c) in pairs {
            v[*k] = c.clone();
        }
        v
    }

    #[test]
    fn doubling_signs() {
        let c = complex();
        assert_eq!(c.mul(&c.basis(1), &c.basis(1)), vec_scale(&c.one(), &Scalar::from(-1)));
        let s = split_complex();
        assert_eq!(s.mul(&s.basis(1), &s.basis(1)), s.one());
    }

    #[test]
    fn fano_products() {
        let o = canonical_octonions();
        assert_eq!(o.mul(&o.basis(1), &o.basis(2)), o.basis(3));
        assert_eq!(o.mul(&o.basis(5), &o.basis(7)), o.basis(2));
        assert_eq!(o.mul(&o.basis(1), &o.basis(1)), vec_scale(&o.one(), &Scalar::from(-1)));
        o.validate().unwrap();
    }

    #[test]
    fn all_models_are_well_formed() {
        for a in [real(), complex(), quaternions(), doubled_octonions(), split_complex(), split_quaternions(), split_octonions(), sedenions()] {
            a.validate().unwrap();
        }
    }

    #[test]
    fn identity_reports() {
        let o = canonical_octonions();
        assert!(check_identities(&o, Identity::Moufang, 20, 1).passed);
        assert!(check_identities(&quaternions(), Identity::Associative, 20, 1).passed);
        assert!(!check_identities(&o, Identity::Associative, 0, 1).passed);
        let r = check_identities(&sedenions(), Identity::NormMult, 200, 3);
        assert!(!r.passed && r.witness.is_some());
    }

    #[test]
    fn cross_products() {
        let o = canonical_octonions();
        assert_eq!(cross_product(&o, &o.basis(1), &o.basis(2)).unwrap(), o.basis(3));
        assert!(vec_is_zero(&cross_product(&o, &o.basis(4), &o.basis(4)).unwrap()));
        assert_eq!(cross_product(&o, &o.one(), &o.basis(2)), Err(Error::NotImaginary));
        let u = o.basis(1);
        let v = o.basis(2);
        let c = cross_product(&o, &u, &v).unwrap();
        let lhs = o.norm(&c);
        let rhs = &(&o.norm(&u) * &o.norm(&v)) - &o.bilinear(&u, &v).pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cross_round_trips() {
        let o = canonical_octonions();
        assert_eq!(algebra_from_cross(&cross_table(&o), "O").table(), o.table());
        let h = quaternions();
        assert_eq!(algebra_from_cross(&cross_table(&h), "H").table(), h.table());
        let empty = CrossTable { gram: Matrix::zeros(0, 0), table: vec![] };
        assert_eq!(algebra_from_cross(&empty, "R").table(), real().table());
    }

    #[test]
    fn associative_form_matches_fano() {
        let o = canonical_octonions();
        let expected = KForm::parse(7, "e[1,2,3]+e[3,6,5]+e[5,4,1]+e[2,6,4]+e[1,7,6]+e[5,7,2]+e[3,7,4]").unwrap();
        assert_eq!(associative_form(&o), expected);
        let star = KForm::parse(7, "e[4,5,6,7]-e[1,2,4,7]-e[2,3,6,7]-e[1,3,5,7]-e[2,3,4,5]+e[1,3,4,6]-e[1,2,5,6]").unwrap();
        assert_eq!(coassociative_form(&o), star);
    }

    #[test]
    fn k_x_for_isotropic_x() {
        let o = canonical_octonions();
        let x = el(&[(4, Scalar::one()), (5, Scalar::i())]);
        let k = left_mult_kernel(&o, &x, true).unwrap();
        assert_eq!(k.dim(), 3);
        assert!(k.contains(&x));
        assert_eq!(restricted_gram(&o, &k).rank(), 0);
        assert_eq!(k, contraction_kernel(&o, &x));
        assert_eq!(left_mult_kernel(&o, &o.basis(1), true), Err(Error::NonIsotropic));
    }

    #[test]
    fn null_planes() {
        let o = canonical_octonions();
        let a = el(&[(4, Scalar::one()), (5, Scalar::i())]);
        let b = el(&[(6, Scalar::one()), (7, -Scalar::i())]);
        let n = Subspace::from_spanning(8, vec![a.clone(), b]);
        assert!(is_null_plane(&o, &n).unwrap());
        let wrong = Subspace::from_spanning(8, vec![a, el(&[(6, Scalar::one()), (7, Scalar::i())])]);
        assert!(!is_null_plane(&o, &wrong).unwrap());
        assert!(!is_null_plane(&o, &Subspace::from_spanning(8, vec![o.basis(1), o.basis(2)])).unwrap());
        assert!(is_null_plane(&o, &Subspace::from_spanning(8, vec![o.basis(1)])).is_err());
    }

    #[test]
    fn lie_planes() {
        let o = canonical_octonions();
        let p0 = Subspace::from_spanning(8, vec![o.basis(1), el(&[(2, Scalar::one()), (3, Scalar::i())])]);
        assert!(is_lie_two_plane(&o, &p0).unwrap());
        assert_eq!(coassociative_drop_rank(&o, &p0), 2);
        let p = Subspace::from_spanning(8, vec![o.basis(1), o.basis(2)]);
        assert!(!is_lie_two_plane(&o, &p).unwrap());
        assert_eq!(coassociative_drop_rank(&o, &p), 4);
    }

    #[test]
    fn sextonion_closure() {
        let o = canonical_octonions();
        let n = Subspace::from_spanning(
            8,
            vec![el(&[(4, Scalar::one()), (5, Scalar::i())]), el(&[(6, Scalar::one()), (7, -Scalar::i())])],
        );
        let s = sextonions(&o, &n).unwrap();
        assert!(s.closed);
        assert_eq!(s.q_rank, 4);
        assert!(s.isomorphic_to_model);
    }

    #[test]
    fn doubled_octonions_are_canonical() {
        let d = doubled_octonions();
        let phi = basic_triple_isomorphism(&d).unwrap();
        assert!(is_isomorphism(&canonical_octonions(), &d, &phi));
        let s = split_octonions();
        let psi = basic_triple_isomorphism(&s).unwrap();
        assert!(is_isomorphism(&canonical_octonions(), &s, &psi));
    }
}
