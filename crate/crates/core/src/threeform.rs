//! Invariants of three-forms and the GL-orbit classifier in at most seven
//! variables.
//!
//! Top-degree values are read through e^{12…n} ↦ 1, so q_ω, λ and I₇ come
//! out as plain scalars; under pullback by g they pick up powers of det g.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlinalg::{Matrix, Scalar, Subspace};
use crate::forms::{sort_sign, tuples, KForm};

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadForm {
    pub gram: Matrix,
}

impl QuadForm {
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn det(&self) -> Scalar {
        self.gram.det()
    }

    pub fn eval(&self, v: &[Scalar]) -> Scalar {
        crate::exactlinalg::dot(v, &self.gram.apply(v))
    }
}

fn require(omega: &KForm, n: usize) -> Result<()> {
    if omega.degree() != 3 {
        return Err(Error::Dimension(format!("expected a three-form, got degree {}", omega.degree())));
    }
    if omega.n() != n {
        return Err(Error::Dimension(format!("expected {n} variables, got {}", omega.n())));
    }
    Ok(())
}

/// Schouten's normal forms ω₁…ω₅ in seven variables.
pub fn schouten_form(k: usize) -> KForm {
    let text = match k {
        1 => "e[1,2,5]+e[1,3,6]+e[1,4,7]",
        2 => "e[1,2,5]+e[1,3,6]+e[1,4,7]+e[2,3,4]",
        3 => "e[1,2,5]+e[2,3,6]+e[3,4,7]",
        4 => "e[1,2,5]+e[1,4,7]+e[3,4,6]+e[3,2,7]",
        5 => "e[1,2,5]+e[1,3,6]+e[1,4,7]+e[2,3,4]+e[5,6,7]",
        _ => panic!("Schouten forms are numbered 1..5"),
    };
    KForm::parse(7, text).expect("static form")
}

/// The two orbit representatives of nondegenerate forms in six variables.
pub fn six_form(k: usize) -> KForm {
    let text = match k {
        1 => "e[1,2,3]+e[4,5,6]",
        2 => "e[1,2,4]+e[1,3,5]+e[2,3,6]",
        _ => panic!("six-variable forms are numbered 1..2"),
    };
    KForm::parse(6, text).expect("static form")
}

/// Gram matrix of v ↦ (v⌟ω)∧(v⌟ω)∧ω.
pub fn q_of(omega: &KForm) -> Result<QuadForm> {
    require(omega, 7)?;
    let c: Vec<KForm> = (1..=7).map(|i| omega.contract_basis(i)).collect();
    let mut gram = Matrix::zeros(7, 7);
    for i in 0..7 {
        let ci_w = c[i].wedge(omega)?;
        for j in i..7 {
            let v = c[j].wedge(&ci_w)?.top_value();
            gram[(i, j)] = v.clone();
            gram[(j, i)] = v;
        }
    }
    Ok(QuadForm { gram })
}

/// Matrix of v ↦ u with (v⌟ω)∧ω = u⌟e^{123456}.
pub fn psi(omega: &KForm) -> Result<Matrix> {
    require(omega, 6)?;
    let mut m = Matrix::zeros(6, 6);
    for i in 1..=6 {
        let f = omega.contract_basis(i).wedge(omega)?;
        for j in 1..=6 {
            let rest: Vec<usize> = (1..=6).filter(|&t| t != j).collect();
            let c = f.coeff(&rest);
            m[(j - 1, i - 1)] = if j % 2 == 1 { c } else { -c };
        }
    }
    Ok(m)
}

/// λ(ω) = tr(Ψ_ω∘Ψ_ω)/6.
pub fn lambda_quartic(omega: &KForm) -> Result<Scalar> {
    let p = psi(omega)?;
    Ok(&p.matmul(&p).trace() * &Scalar::frac(1, 6))
}

/// The trivector u with u⌟e^{1…7} = f for a four-form f (contracting the
/// trivector's indices in increasing order).
fn dual_trivector(f: &KForm) -> Vec<(Vec<usize>, Scalar)> {
    let n = f.n();
    let vol = KForm::basis(n, &(1..=n).collect::<Vec<_>>());
    f.terms()
        .iter()
        .map(|(s, c)| {
            let comp: Vec<usize> = (1..=n).filter(|i| !s.contains(i)).collect();
            let mut r = vol.clone();
            for &i in &comp {
                r = r.contract_basis(i);
            }
            (comp, c / &r.coeff(s))
        })
        .collect()
}

/// The degree-seven semi-invariant I₇ through the chain of equivariant maps:
/// ω ↦ (k ↦ ω∧e^k ∈ Λ⁴ ≅ Λ³V) ↦ T_k ∈ End(V) via ⟨ω, E_ab·u_k⟩ ↦ tr(T_k T_l) ↦
/// pairing with the polarization of q_ω.
pub fn degree7_invariant(omega: &KForm) -> Result<Scalar> {
    require(omega, 7)?;
    let n = 7;
    let mut ts = Vec::with_capacity(n);
    for k in 1..=n {
        let u = dual_trivector(&omega.wedge(&KForm::basis(n, &[k]))?);
        let mut m = Matrix::zeros(n, n);
        for (idx, c) in &u {
            for (p, &b) in idx.iter().enumerate() {
                for a in 1..=n {
                    let mut t = idx.clone();
                    t[p] = a;
                    let Some((sorted, sign)) = sort_sign(&t) else { continue };
                    let w = omega.coeff(&sorted);
                    if w.is_zero() {
                        continue;
                    }
                    let v = c * &w;
                    m[(a - 1, b - 1)] += &(if sign < 0 { -v } else { v });
                }
            }
        }
        ts.push(m);
    }
    let q = q_of(omega)?;
    let trace_prod = |x: &Matrix, y: &Matrix| -> Scalar {
        let mut t = Scalar::zero();
        for a in 0..n {
            for b in 0..n {
                if !x[(a, b)].is_zero() && !y[(b, a)].is_zero() {
                    t += &(&x[(a, b)] * &y[(b, a)]);
                }
            }
        }
        t
    };
    let mut total = Scalar::zero();
    for k in 0..n {
        for l in k..n {
            let qkl = &q.gram[(k, l)];
            if qkl.is_zero() {
                continue;
            }
            let term = &trace_prod(&ts[k], &ts[l]) * qkl;
            total += &(if k == l { term } else { &term * &Scalar::from(2) });
        }
    }
    Ok(total)
}

/// det(q_ω)/I₇(ω)³, a constant wherever I₇ ≠ 0.
pub fn det_cube_ratio(omega: &KForm) -> Result<Option<Scalar>> {
    let i7 = degree7_invariant(omega)?;
    if i7.is_zero() {
        return Ok(None);
    }
    Ok(Some(&q_of(omega)?.det() / &i7.pow(3)))
}

/// The matrix of X ↦ X·ω (linearized pullback) from gl_n to Λᵏ.
pub fn infinitesimal_action_matrix(omega: &KForm) -> Matrix {
    let n = omega.n();
    let cols: Vec<Vec<Scalar>> = (0..n * n)
        .map(|e| {
            let mut x = Matrix::zeros(n, n);
            x[(e / n, e % n)] = Scalar::one();
            omega.infinitesimal_pullback(&x).to_vector()
        })
        .collect();
    Matrix::from_cols(&cols, tuples(n, omega.degree()).len())
}

/// dim{X ∈ gl_n : X·ω = 0}.
pub fn stabilizer_dim(omega: &KForm) -> usize {
    let n = omega.n();
    n * n - infinitesimal_action_matrix(omega).rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Label {
    Zero,
    Rank3Decomposable,
    Rank5,
    Rank6Generic,
    Rank6Tangent,
    W1,
    W2,
    W3,
    W4,
    W5,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Zero => "ZERO",
            Label::Rank3Decomposable => "RANK3_DECOMPOSABLE",
            Label::Rank5 => "RANK5",
            Label::Rank6Generic => "RANK6_GENERIC",
            Label::Rank6Tangent => "RANK6_TANGENT",
            Label::W1 => "W1",
            Label::W2 => "W2",
            Label::W3 => "W3",
            Label::W4 => "W4",
            Label::W5 => "W5",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitLabel {
    pub n: usize,
    pub label: Label,
    pub support_rank: usize,
    /// Rank of q_ω (seven variables only).
    pub q_rank: Option<usize>,
    pub stab_dim: usize,
    /// Whether λ vanishes on the support (support rank six only).
    pub lambda_nonzero: Option<bool>,
    /// Whether I₇ vanishes (seven variables only).
    pub i7_nonzero: Option<bool>,
}

/// Rewrite ω in coordinates adapted to its support: returns the form in r
/// variables obtained by pulling back along a basis completing the support.
pub fn reduce_to_support(omega: &KForm) -> Result<KForm> {
    let n = omega.n();
    let s = omega.support();
    let r = s.dim();
    let mut rows: Vec<Vec<Scalar>> = s.basis().to_vec();
    for k in 0..n {
        if rows.len() == n {
            break;
        }
        let mut trial = rows.clone();
        trial.push(crate::exactlinalg::unit_vector(n, k));
        if Matrix::from_rows_with_cols(trial.clone(), n).rank() == trial.len() {
            rows = trial;
        }
    }
    let p = Matrix::from_rows_with_cols(rows, n);
    let pinv = p.inverse().ok_or(Error::Singular)?;
    omega.pullback(&pinv)?.restrict_to_first(r)
}

pub fn classify(omega: &KForm) -> Result<OrbitLabel> {
    if omega.degree() != 3 || omega.n() > 7 || omega.n() < 3 {
        return Err(Error::Dimension("classification covers three-forms in 3 to 7 variables".into()));
    }
    let n = omega.n();
    let stab_dim = stabilizer_dim(omega);
    let (q_rank, i7_nonzero) = if n == 7 {
        (Some(q_of(omega)?.rank()), Some(!degree7_invariant(omega)?.is_zero()))
    } else {
        (None, None)
    };
    let reduced = reduce_to_support(omega)?;
    let r = reduced.n();
    let mut lambda_nonzero = None;
    let label = match r {
        0 => Label::Zero,
        3 => Label::Rank3Decomposable,
        5 => Label::Rank5,
        6 => {
            let nz = !lambda_quartic(&reduced)?.is_zero();
            lambda_nonzero = Some(nz);
            if nz {
                Label::Rank6Generic
            } else {
                Label::Rank6Tangent
            }
        }
        7 => match q_rank.expect("seven variables") {
            7 => Label::W5,
            4 => Label::W4,
            2 => Label::W3,
            1 => match stab_dim {
                28 => Label::W1,
                21 => Label::W2,
                d => return Err(Error::Invalid(format!("q-rank 1 with stabilizer dimension {d}"))),
            },
            k => return Err(Error::Invalid(format!("unexpected q-rank {k} at full support"))),
        },
        other => return Err(Error::Invalid(format!("impossible support rank {other}"))),
    };
    Ok(OrbitLabel { n, label, support_rank: r, q_rank, stab_dim, lambda_nonzero, i7_nonzero })
}

#[derive(Clone, Debug, Serialize)]
pub struct HasseNode {
    pub label: Label,
    pub dim: usize,
    /// Orbit dimensions of the orbits whose closures this one covers.
    pub covers: Vec<usize>,
}

/// GL₇-orbits in Λ³ and the closure order between them.
pub fn hasse_data() -> Vec<HasseNode> {
    let node = |label, dim, covers: &[usize]| HasseNode { label, dim, covers: covers.to_vec() };
    vec![
        node(Label::W5, 35, &[34]),
        node(Label::W4, 34, &[31]),
        node(Label::W3, 31, &[28, 26]),
        node(Label::W2, 28, &[21, 25]),
        node(Label::Rank6Generic, 26, &[25]),
        node(Label::W1, 21, &[20]),
        node(Label::Rank6Tangent, 25, &[20]),
        node(Label::Rank5, 20, &[13]),
        node(Label::Rank3Decomposable, 13, &[0]),
        node(Label::Zero, 0, &[]),
    ]
}

/// Longest chain of covers from the top orbit to the zero orbit.
pub fn longest_chain(nodes: &[HasseNode]) -> Vec<usize> {
    fn go(nodes: &[HasseNode], d: usize) -> Vec<usize> {
        let node = nodes.iter().find(|n| n.dim == d).expect("node");
        let mut best = Vec::new();
        for &c in &node.covers {
            let chain = go(nodes, c);
            if chain.len() > best.len() {
                best = chain;
            }
        }
        let mut out = vec![d];
        out.extend(best);
        out
    }
    let top = nodes.iter().map(|n| n.dim).max().unwrap_or(0);
    go(nodes, top)
}

/// Among candidate vectors, those v with rank(v⌟ω) ≤ 2 grouped into the
/// spans they generate: for ω in the open orbit of Λ³V₆ this returns exactly
/// the two 3-planes P₁^⊥, P₂^⊥ of the splitting ω = a∧b∧c + d∧e∧f.
pub fn low_rank_contraction_spaces(omega: &KForm, candidates: &[Vec<Scalar>]) -> Vec<Subspace> {
    let n = omega.n();
    let hits: Vec<&Vec<Scalar>> = candidates
        .iter()
        .filter(|v| !crate::exactlinalg::vec_is_zero(v) && omega.contract(v).to_skew_matrix().rank() <= 2)
        .collect();
    let mut spaces: Vec<Subspace> = Vec::new();
    for v in hits {
        // merge into a space if v together with it still has only rank-≤2 contractions on a basis sum
        let mut placed = false;
        for s in spaces.iter_mut() {
            let t = s.sum(&Subspace::from_spanning(n, vec![v.clone()]));
            let ok = t.basis().iter().all(|a| {
                t.basis().iter().all(|b| {
                    let w = crate::exactlinalg::vec_add(a, b);
                    omega.contract(&w).to_skew_matrix().rank() <= 2
                })
            });
            if ok {
                *s = t;
                placed = true;
                break;
            }
        }
        if !placed {
            spaces.push(Subspace::from_spanning(n, vec![v.clone()]));
        }
    }
    spaces
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_ranks_of_schouten_forms() {
        let ranks: Vec<usize> = (1..=5).map(|k| q_of(&schouten_form(k)).unwrap().rank()).collect();
        assert_eq!(ranks, vec![1, 1, 2, 4, 7]);
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_quartic(&six_form(1)).unwrap(), Scalar::one());
        assert_eq!(lambda_quartic(&six_form(2)).unwrap(), Scalar::zero());
        assert_eq!(lambda_quartic(&six_form(1).scale(&Scalar::from(2))).unwrap(), Scalar::from(16));
        assert!(psi(&KForm::zero(6, 3)).unwrap().is_zero());
    }

    #[test]
    fn degree_seven_vanishing() {
        assert!(!degree7_invariant(&schouten_form(5)).unwrap().is_zero());
        for k in 1..=4 {
            assert!(degree7_invariant(&schouten_form(k)).unwrap().is_zero());
        }
    }

    #[test]
    fn stabilizers() {
        let dims: Vec<usize> = (1..=5).map(|k| stabilizer_dim(&schouten_form(k))).collect();
        assert_eq!(dims, vec![28, 21, 18, 15, 14]);
        assert_eq!(stabilizer_dim(&six_form(1)), 16);
    }

    #[test]
    fn labels() {
        for (k, l) in [(1, Label::W1), (2, Label::W2), (3, Label::W3), (4, Label::W4), (5, Label::W5)] {
            assert_eq!(classify(&schouten_form(k)).unwrap().label, l);
        }
        let f = KForm::parse(7, "e[1,2,3]+e[4,5,6]").unwrap();
        assert_eq!(classify(&f).unwrap().label, Label::Rank6Generic);
        let f = KForm::parse(5, "e[1,2,3]+e[1,4,5]").unwrap();
        assert_eq!(classify(&f).unwrap().label, Label::Rank5);
    }

    #[test]
    fn hasse_shape() {
        let h = hasse_data();
        assert_eq!(h.iter().map(|n| n.dim).max(), Some(35));
        assert_eq!(h.iter().find(|n| n.dim == 31).unwrap().covers, vec![28, 26]);
        assert_eq!(longest_chain(&h).len(), 8);
    }
}
