//! Spinors in dimension seven: Δ₇ ≅ Λ•F for a maximal isotropic F ⊂ V₇.
//!
//! V₇ has basis (u, f₁, e₁, f₂, e₂, f₃, e₃) with
//! q = 2u² − f₁e₁ − f₂e₂ − f₃e₃, so E = ⟨e_i⟩ and F = ⟨f_i⟩ are transverse
//! maximal isotropic subspaces. Spinor coordinates are indexed by bitmasks
//! of subsets of {1,2,3}: index 0 is 1, 1 is f₁, 2 is f₂, 3 is f₁₂, ..., 7 is f₁₂₃.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlinalg::{Matrix, Scalar, Subspace};
use crate::forms::{tuples, KForm};

pub const V7_DIM: usize = 7;
pub const SPINOR_DIM: usize = 8;

/// Positions of f₁,f₂,f₃ and e₁,e₂,e₃ in the V₇ basis (0-based).
pub const F_INDICES: [usize; 3] = [1, 3, 5];
pub const E_INDICES: [usize; 3] = [2, 4, 6];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spinor(pub Vec<Scalar>);

impl Spinor {
    pub fn zero() -> Self {
        Spinor(vec![Scalar::zero(); SPINOR_DIM])
    }

    pub fn basis(mask: usize) -> Self {
        let mut s = Spinor::zero();
        s.0[mask] = Scalar::one();
        s
    }

    /// The vacuum 1 ∈ Λ⁰F.
    pub fn vacuum() -> Self {
        Spinor::basis(0)
    }

    /// The dual vacuum f₁₂₃.
    pub fn dual_vacuum() -> Self {
        Spinor::basis(7)
    }

    pub fn from_coords(c: Vec<Scalar>) -> Result<Self> {
        if c.len() != SPINOR_DIM {
            return Err(Error::Dimension(format!("spinor needs {SPINOR_DIM} coordinates, got {}", c.len())));
        }
        Ok(Spinor(c))
    }

    /// Parse either eight whitespace/comma separated scalars or a sum like `1+f123-2f1`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.contains('f') {
            return parse_monomials(t);
        }
        let coords: Result<Vec<Scalar>> = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<Scalar>().map_err(|_| Error::Parse(format!("bad spinor coordinate '{p}'"))))
            .collect();
        Spinor::from_coords(coords?)
    }

    pub fn add(&self, o: &Spinor) -> Spinor {
        Spinor(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Spinor {
        Spinor(self.0.iter().map(|a| a * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }
}

fn parse_monomials(t: &str) -> Result<Spinor> {
    let mut s = Spinor::zero();
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for ch in t.chars().filter(|c| !c.is_whitespace()) {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('(') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    for term in terms {
        let (coef, mono) = match term.find('f') {
            Some(p) => (&term[..p], &term[p + 1..]),
            None => (term.as_str(), ""),
        };
        let coef = match coef.trim_end_matches('*') {
            "" | "+" => Scalar::one(),
            "-" => -Scalar::one(),
            c => c.parse::<Scalar>().map_err(|_| Error::Parse(format!("bad coefficient '{c}'")))?,
        };
        let mut mask = 0usize;
        for d in mono.chars() {
            let k = d.to_digit(10).filter(|k| (1..=3).contains(k)).ok_or_else(|| Error::Parse(format!("bad monomial 'f{mono}'")))?;
            let bit = 1 << (k - 1);
            if mask & bit != 0 {
                return Err(Error::Parse(format!("repeated index in 'f{mono}'")));
            }
            mask |= bit;
        }
        // reorder to increasing indices
        let digits: Vec<usize> = mono.chars().map(|d| d.to_digit(10).unwrap() as usize).collect();
        let inversions = (0..digits.len()).flat_map(|i| (i + 1..digits.len()).map(move |j| (i, j))).filter(|&(i, j)| digits[i] > digits[j]).count();
        let c = if inversions % 2 == 1 { -coef } else { coef };
        s.0[mask] += c;
    }
    Ok(s)
}

/// Quadratic form on V₇ as a Gram matrix B with B(v,v) = q(v).
pub fn v7_gram() -> Matrix {
    let mut g = Matrix::zeros(7, 7);
    g[(0, 0)] = Scalar::from(2);
    for k in 0..3 {
        let (f, e) = (F_INDICES[k], E_INDICES[k]);
        g[(f, e)] = Scalar::frac(-1, 2);
        g[(e, f)] = Scalar::frac(-1, 2);
    }
    g
}

fn bits_below(mask: usize, k: usize) -> u32 {
    (mask & ((1 << k) - 1)).count_ones()
}

fn parity(mask: usize) -> i64 {
    if mask.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Matrix of the action of the `v`-th basis vector, given the contraction
/// coefficient and the sign of the parity operator on u.
fn basis_action(v: usize, contraction: i64, u_sign: i64) -> Matrix {
    let mut m = Matrix::zeros(8, 8);
    for mask in 0..8usize {
        if v == 0 {
            m[(mask, mask)] = Scalar::from(2 * u_sign * parity(mask));
            continue;
        }
        let k = (v - 1) / 2;
        let bit = 1 << k;
        let sign = if bits_below(mask, k).is_multiple_of(2) { 1 } else { -1 };
        if F_INDICES.contains(&v) {
            if mask & bit == 0 {
                m[(mask | bit, mask)] = Scalar::from(sign);
            }
        } else if mask & bit != 0 {
            m[(mask & !bit, mask)] = Scalar::from(contraction * sign);
        }
    }
    m
}

fn clifford_relation_holds(acts: &[Matrix]) -> bool {
    let g = v7_gram();
    for (x, ax) in acts.iter().enumerate() {
        for (y, ay) in acts.iter().enumerate() {
            let lhs = ax.matmul(ay).add(&ay.matmul(ax));
            let rhs = Matrix::identity(8).scale(&(&Scalar::from(4) * &g[(x, y)]));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordCalibration {
    pub contraction: i64,
    pub u_sign: i64,
    /// β(v·s, t) = pairing_sign · β(s, v·t).
    pub pairing_sign: i64,
    pub pairing: Matrix,
}

struct Model {
    acts: Vec<Matrix>,
    cal: CliffordCalibration,
}

fn model() -> &'static Model {
    static M: OnceLock<Model> = OnceLock::new();
    M.get_or_init(|| {
        let mut found = None;
        'search: for contraction in [2, -2] {
            for u_sign in [1, -1] {
                let acts: Vec<Matrix> = (0..7).map(|v| basis_action(v, contraction, u_sign)).collect();
                if clifford_relation_holds(&acts) {
                    found = Some((contraction, u_sign, acts));
                    break 'search;
                }
            }
        }
        let (contraction, u_sign, acts) = found.expect("no sign choice satisfies the Clifford relation");
        let (pairing_sign, pairing) = [1i64, -1]
            .iter()
            .find_map(|&s| invariant_pairing(&acts, s).map(|p| (s, p)))
            .expect("no invariant pairing on the spinors");
        Model { acts, cal: CliffordCalibration { contraction, u_sign, pairing_sign, pairing } }
    })
}

/// The unique (up to scale) β with β(v·s,t) = sign·β(s,v·t), if one exists.
fn invariant_pairing(acts: &[Matrix], sign: i64) -> Option<Matrix> {
    // unknown β as 64 entries b[s*8+t]
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let sg = Scalar::from(sign);
    for a in acts {
        for s in 0..8 {
            for t in 0..8 {
                // Σ_r a[r][s] β(r,t) − sign Σ_r a[r][t] β(s,r)
                let mut row = vec![Scalar::zero(); 64];
                for r in 0..8 {
                    row[r * 8 + t] += a[(r, s)].clone();
                    row[s * 8 + r] -= &a[(r, t)] * &sg;
                }
                rows.push(row);
            }
        }
    }
    let ker = Matrix::from_rows(rows).kernel();
    if ker.dim() != 1 {
        return None;
    }
    let mut b = ker.basis()[0].clone();
    // normalize so the first nonzero entry is 1
    let lead = b.iter().find(|x| !x.is_zero()).cloned().unwrap();
    for x in b.iter_mut() {
        *x = &*x / &lead;
    }
    Some(Matrix::from_flat(8, 8, b))
}

pub fn calibration() -> &'static CliffordCalibration {
    &model().cal
}

/// Action matrix of v ∈ V₇ on Δ₇.
pub fn action_matrix(v: &[Scalar]) -> Matrix {
    let acts = &model().acts;
    let mut m = Matrix::zeros(8, 8);
    for (c, a) in v.iter().zip(acts) {
        if !c.is_zero() {
            m = m.add(&a.scale(c));
        }
    }
    m
}

/// Clifford multiplication v·s.
pub fn clifford_act(v: &[Scalar], s: &Spinor) -> Result<Spinor> {
    if v.len() != V7_DIM {
        return Err(Error::Dimension(format!("vector in V7 needs 7 coordinates, got {}", v.len())));
    }
    Ok(Spinor(action_matrix(v).apply(&s.0)))
}

fn basis_act(i: usize, s: &[Scalar]) -> Vec<Scalar> {
    model().acts[i].apply(s)
}

/// Number of basis identities x(ys) + y(xs) = 2q(x,y)s that hold (out of 392),
/// with q(x,y) = q(x+y) − q(x) − q(y) = 2B(x,y).
pub fn clifford_relation_count() -> (usize, usize) {
    let g = v7_gram();
    let mut ok = 0;
    let mut total = 0;
    for x in 0..7 {
        for y in 0..7 {
            for m in 0..8 {
                let s = Spinor::basis(m).0;
                let lhs: Vec<Scalar> = basis_act(x, &basis_act(y, &s)).iter().zip(basis_act(y, &basis_act(x, &s))).map(|(a, b)| a + &b).collect();
                let two_b = &Scalar::from(4) * &g[(x, y)];
                let rhs: Vec<Scalar> = s.iter().map(|c| c * &two_b).collect();
                total += 1;
                if lhs == rhs {
                    ok += 1;
                }
            }
        }
    }
    (ok, total)
}

/// {v ∈ V₇ : v·s = 0}.
pub fn pure_spinor_kernel(s: &Spinor) -> Result<Subspace> {
    if s.is_zero() {
        return Err(Error::Invalid("spinor must be nonzero".into()));
    }
    let cols: Vec<Vec<Scalar>> = (0..7).map(|i| basis_act(i, &s.0)).collect();
    Ok(Matrix::from_cols(&cols, 8).kernel())
}

pub fn is_isotropic(space: &Subspace) -> bool {
    let g = v7_gram();
    space.basis().iter().all(|a| space.basis().iter().all(|b| crate::exactlinalg::dot(a, &g.apply(b)).is_zero()))
}

/// The invariant pairing β(s,t).
pub fn spinor_pairing(s: &Spinor, t: &Spinor) -> Scalar {
    crate::exactlinalg::dot(&s.0, &calibration().pairing.apply(&t.0))
}

/// ω_χ(x,y,z) = alternating part of β(x·(y·(z·χ)), χ), as a three-form on V₇.
pub fn omega_chi(chi: &Spinor) -> KForm {
    let mut form = KForm::zero(7, 3);
    for t in tuples(7, 3) {
        let mut acc = Scalar::zero();
        for (p, sign) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)] {
            let (x, y, z) = (t[p[0]] - 1, t[p[1]] - 1, t[p[2]] - 1);
            let v = basis_act(x, &basis_act(y, &basis_act(z, &chi.0)));
            let val = spinor_pairing(&Spinor(v), chi);
            if sign > 0 {
                acc += val;
            } else {
                acc -= val;
            }
        }
        if !acc.is_zero() {
            form.add_term(&t, acc);
        }
    }
    form
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::unit_vector;
    use crate::threeform::{classify, stabilizer_dim, Label};

    #[test]
    fn relation_is_exhaustive() {
        assert_eq!(clifford_relation_count(), (392, 392));
    }

    #[test]
    fn wedge_and_contraction() {
        let f1 = unit_vector(7, F_INDICES[0]);
        assert_eq!(clifford_act(&f1, &Spinor::vacuum()).unwrap(), Spinor::basis(1));
        let e1 = unit_vector(7, E_INDICES[0]);
        let r = clifford_act(&e1, &Spinor::basis(1)).unwrap();
        assert_eq!(r, Spinor::vacuum().scale(&Scalar::from(calibration().contraction)));
    }

    #[test]
    fn vacua_kernels() {
        let e = Subspace::from_spanning(7, E_INDICES.iter().map(|&i| unit_vector(7, i)).collect());
        let f = Subspace::from_spanning(7, F_INDICES.iter().map(|&i| unit_vector(7, i)).collect());
        let k0 = pure_spinor_kernel(&Spinor::vacuum()).unwrap();
        let k1 = pure_spinor_kernel(&Spinor::dual_vacuum()).unwrap();
        assert_eq!(k0, e);
        assert_eq!(k1, f);
        assert!(is_isotropic(&k0) && is_isotropic(&k1));
        assert_eq!(k0.intersect(&k1).dim(), 0);
        let generic = Spinor::parse("1+f123").unwrap();
        assert_eq!(pure_spinor_kernel(&generic).unwrap().dim(), 0);
    }

    #[test]
    fn omega_chi_generic() {
        let chi = Spinor::parse("1+f123").unwrap();
        let w = omega_chi(&chi);
        assert_eq!(classify(&w).unwrap().label, Label::W5);
        assert_eq!(stabilizer_dim(&w), 14);
        assert_ne!(classify(&omega_chi(&Spinor::vacuum())).unwrap().label, Label::W5);
        let w3 = omega_chi(&chi.scale(&Scalar::from(3)));
        assert_eq!(w3, w.scale(&Scalar::from(9)));
    }

    #[test]
    fn parse_forms() {
        let a = Spinor::parse("1 0 0 0 0 0 0 1").unwrap();
        assert_eq!(a, Spinor::parse("1+f123").unwrap());
        assert_eq!(Spinor::parse("f21").unwrap(), Spinor::basis(3).scale(&Scalar::from(-1)));
        assert!(Spinor::parse("f4").is_err());
    }
}
