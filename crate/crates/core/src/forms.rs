//! Alternating k-forms on an n-dimensional space, stored sparsely over
//! strictly increasing 1-based index tuples.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::{Matrix, Scalar, Subspace};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KForm {
    n: usize,
    k: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

/// Sign of the permutation sorting `idx`, or None if an index repeats.
pub fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    if v.len() < 2 {
        return Some((v, sign));
    }
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// All strictly increasing k-tuples from 1..=n.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

impl KForm {
    pub fn zero(n: usize, k: usize) -> Self {
        KForm { n, k, terms: BTreeMap::new() }
    }

    /// The monomial e^{i₁…i_k}; indices may come in any order.
    pub fn basis(n: usize, idx: &[usize]) -> Self {
        let mut f = KForm::zero(n, idx.len());
        f.add_term(idx, Scalar::one());
        f
    }

    pub fn from_terms(n: usize, k: usize, terms: &[(&[usize], Scalar)]) -> Self {
        let mut f = KForm::zero(n, k);
        for (idx, c) in terms {
            f.add_term(idx, c.clone());
        }
        f
    }

    /// Add c·e^{idx}, reordering indices with the permutation sign.
    pub fn add_term(&mut self, idx: &[usize], c: Scalar) {
        assert_eq!(idx.len(), self.k, "term degree mismatch");
        assert!(idx.iter().all(|&i| i >= 1 && i <= self.n), "index out of range");
        let Some((sorted, sign)) = sort_sign(idx) else {
            return;
        };
        let c = if sign < 0 { -c } else { c };
        let e = self.terms.entry(sorted.clone()).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&sorted);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, idx: &[usize]) -> Scalar {
        match sort_sign(idx) {
            None => Scalar::zero(),
            Some((s, sign)) => {
                let c = self.terms.get(&s).cloned().unwrap_or_default();
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &KForm) -> KForm {
        assert_eq!((self.n, self.k), (o.n, o.k), "adding forms of different shape");
        let mut r = self.clone();
        for (idx, c) in &o.terms {
            r.add_term(idx, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &KForm) -> KForm {
        self.add(&o.scale(&Scalar::from(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> KForm {
        if s.is_zero() {
            return KForm::zero(self.n, self.k);
        }
        KForm { n: self.n, k: self.k, terms: self.terms.iter().map(|(i, c)| (i.clone(), c * s)).collect() }
    }

    /// Exterior product with shuffle signs.
    pub fn wedge(&self, o: &KForm) -> Result<KForm> {
        if self.n != o.n {
            return Err(Error::Dimension(format!("wedge of forms on {} and {} variables", self.n, o.n)));
        }
        if self.k + o.k > self.n {
            return Err(Error::DegreeOverflow(format!("{} + {} > {}", self.k, o.k, self.n)));
        }
        let mut r = KForm::zero(self.n, self.k + o.k);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                let idx: Vec<usize> = a.iter().chain(b).copied().collect();
                r.add_term(&idx, ca * cb);
            }
        }
        Ok(r)
    }

    /// Interior product v⌟a = a(v, ·, …, ·).
    pub fn contract(&self, v: &[Scalar]) -> KForm {
        assert_eq!(v.len(), self.n, "vector length must equal n");
        assert!(self.k >= 1, "cannot contract a 0-form");
        let mut r = KForm::zero(self.n, self.k - 1);
        for (idx, c) in &self.terms {
            for (p, &i) in idx.iter().enumerate() {
                let vi = &v[i - 1];
                if vi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(p);
                let s = if p % 2 == 0 { c * vi } else { -(c * vi) };
                r.add_term(&rest, s);
            }
        }
        r
    }

    /// Contraction by the basis vector e_i (1-based).
    pub fn contract_basis(&self, i: usize) -> KForm {
        let mut v = vec![Scalar::zero(); self.n];
        v[i - 1] = Scalar::one();
        self.contract(&v)
    }

    /// The form x ↦ a(gx, …, gx).
    pub fn pullback(&self, g: &Matrix) -> Result<KForm> {
        if g.rows() != self.n || g.cols() != self.n {
            return Err(Error::Dimension("pullback matrix must be n×n".into()));
        }
        if g.rank() < self.n {
            return Err(Error::Singular);
        }
        Ok(self.pullback_any(g))
    }

    /// Pullback by an arbitrary (possibly singular) n×n matrix.
    pub fn pullback_any(&self, g: &Matrix) -> KForm {
        let mut r = KForm::zero(self.n, self.k);
        if self.k == 0 {
            return self.clone();
        }
        let targets = tuples(self.n, self.k);
        for (idx, c) in &self.terms {
            for j in &targets {
                let d = minor(g, idx, j);
                if !d.is_zero() {
                    r.add_term(j, c * &d);
                }
            }
        }
        r
    }

    /// Derivative at t = 0 of the pullback by I + tX.
    pub fn infinitesimal_pullback(&self, x: &Matrix) -> KForm {
        let mut r = KForm::zero(self.n, self.k);
        for (idx, c) in &self.terms {
            for (p, &i) in idx.iter().enumerate() {
                for j in 1..=self.n {
                    let xij = &x[(i - 1, j - 1)];
                    if xij.is_zero() {
                        continue;
                    }
                    let mut t = idx.clone();
                    t[p] = j;
                    r.add_term(&t, c * xij);
                }
            }
        }
        r
    }

    /// The support S ⊂ V* spanned by all contractions with (k−1)-tuples of basis vectors.
    pub fn support(&self) -> Subspace {
        if self.k == 0 || self.is_zero() {
            return Subspace::zero(self.n);
        }
        let mut vecs = Vec::new();
        for t in tuples(self.n, self.k - 1) {
            let mut f = self.clone();
            for &i in t.iter().rev() {
                f = f.contract_basis(i);
            }
            if !f.is_zero() {
                vecs.push(f.to_covector());
            }
        }
        Subspace::from_spanning(self.n, vecs)
    }

    pub fn rank(&self) -> usize {
        self.support().dim()
    }

    /// Coefficient vector of a 1-form.
    pub fn to_covector(&self) -> Vec<Scalar> {
        assert_eq!(self.k, 1);
        let mut v = vec![Scalar::zero(); self.n];
        for (idx, c) in &self.terms {
            v[idx[0] - 1] = c.clone();
        }
        v
    }

    pub fn from_covector(v: &[Scalar]) -> KForm {
        let mut f = KForm::zero(v.len(), 1);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                f.add_term(&[i + 1], c.clone());
            }
        }
        f
    }

    /// Skew matrix of a 2-form: M[i][j] = a(e_i, e_j).
    pub fn to_skew_matrix(&self) -> Matrix {
        assert_eq!(self.k, 2, "skew matrix requires a 2-form");
        let mut m = Matrix::zeros(self.n, self.n);
        for (idx, c) in &self.terms {
            m[(idx[0] - 1, idx[1] - 1)] = c.clone();
            m[(idx[1] - 1, idx[0] - 1)] = -c;
        }
        m
    }

    pub fn from_skew_matrix(m: &Matrix) -> KForm {
        let n = m.rows();
        let mut f = KForm::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                if !m[(i, j)].is_zero() {
                    f.add_term(&[i + 1, j + 1], m[(i, j)].clone());
                }
            }
        }
        f
    }

    /// Value of a top-degree form under e^{12…n} ↦ 1.
    pub fn top_value(&self) -> Scalar {
        assert_eq!(self.k, self.n, "not a top-degree form");
        self.coeff(&(1..=self.n).collect::<Vec<_>>())
    }

    /// Hodge star for the standard metric and orientation e^{12…n}.
    pub fn hodge_star(&self) -> KForm {
        let mut r = KForm::zero(self.n, self.n - self.k);
        for (idx, c) in &self.terms {
            let comp: Vec<usize> = (1..=self.n).filter(|i| !idx.contains(i)).collect();
            let all: Vec<usize> = idx.iter().chain(&comp).copied().collect();
            let (_, sign) = sort_sign(&all).unwrap();
            r.add_term(&comp, if sign < 0 { -c.clone() } else { c.clone() });
        }
        r
    }

    /// Restrict to the first m variables (terms using others must be absent).
    pub fn restrict_to_first(&self, m: usize) -> Result<KForm> {
        if self.terms.keys().any(|idx| idx.iter().any(|&i| i > m)) {
            return Err(Error::Dimension("form involves variables beyond the restriction".into()));
        }
        Ok(KForm { n: m, k: self.k, terms: self.terms.clone() })
    }

    /// View the same form in more variables.
    pub fn extend_to(&self, m: usize) -> KForm {
        assert!(m >= self.n);
        KForm { n: m, k: self.k, terms: self.terms.clone() }
    }

    /// Coordinates in the basis of increasing tuples.
    pub fn to_vector(&self) -> Vec<Scalar> {
        tuples(self.n, self.k).iter().map(|t| self.coeff(t)).collect()
    }

    pub fn from_vector(n: usize, k: usize, v: &[Scalar]) -> KForm {
        let mut f = KForm::zero(n, k);
        for (t, c) in tuples(n, k).iter().zip(v) {
            if !c.is_zero() {
                f.add_term(t, c.clone());
            }
        }
        f
    }

    /// Parse `c*e[i,j,k] + …`; the ambient n is given, the degree is inferred.
    pub fn parse(n: usize, text: &str) -> Result<KForm> {
        let mut form: Option<KForm> = None;
        let mut rest = text;
        loop {
            let Some(start) = rest.find("e[") else {
                if !rest.trim().is_empty() {
                    return Err(Error::Parse(format!("trailing text '{}'", rest.trim())));
                }
                break;
            };
            let Some(close) = rest[start..].find(']') else {
                return Err(Error::Parse("unterminated e[".into()));
            };
            let prefix = rest[..start].trim();
            let inside = &rest[start + 2..start + close];
            rest = &rest[start + close + 1..];
            let idx: Vec<usize> = inside
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index list '{inside}'"))))
                .collect::<Result<_>>()?;
            if idx.iter().any(|&i| i == 0 || i > n) {
                return Err(Error::Parse(format!("index out of range 1..={n} in e[{inside}]")));
            }
            let coef = parse_coefficient(prefix, form.is_none())?;
            let f = form.get_or_insert_with(|| KForm::zero(n, idx.len()));
            if idx.len() != f.k {
                return Err(Error::Parse("terms of different degree".into()));
            }
            f.add_term(&idx, coef);
        }
        form.ok_or_else(|| Error::Parse("no terms".into()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FormJson::from(self)).unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<KForm> {
        let j: FormJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut f = KForm::zero(j.n, j.k);
        for (idx, c) in j.terms {
            if idx.len() != j.k || idx.iter().any(|&i| i == 0 || i > j.n) {
                return Err(Error::Parse(format!("bad term index {idx:?}")));
            }
            f.add_term(&idx, c);
        }
        Ok(f)
    }
}

fn parse_coefficient(prefix: &str, first: bool) -> Result<Scalar> {
    let mut s = prefix.trim();
    let mut sign = Scalar::one();
    if let Some(r) = s.strip_prefix('+') {
        s = r.trim();
    } else if let Some(r) = s.strip_prefix('-') {
        s = r.trim();
        sign = Scalar::from(-1);
    } else if !first && !s.is_empty() {
        return Err(Error::Parse(format!("missing '+' or '-' before '{s}'")));
    }
    let s = s.strip_suffix('*').map(str::trim).unwrap_or(s);
    if s.is_empty() {
        return Ok(sign);
    }
    let c: Scalar = s.parse()?;
    Ok(&sign * &c)
}

/// k×k minor of g with rows `rows` and columns `cols` (1-based).
fn minor(g: &Matrix, rows: &[usize], cols: &[usize]) -> Scalar {
    let k = rows.len();
    let e = |a: usize, b: usize| &g[(rows[a] - 1, cols[b] - 1)];
    match k {
        1 => e(0, 0).clone(),
        2 => e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0),
        3 => {
            let t1 = e(0, 0) * &(e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1));
            let t2 = e(0, 1) * &(e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0));
            let t3 = e(0, 2) * &(e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
            t1 - t2 + t3
        }
        _ => {
            let m = Matrix::from_rows(
                (0..k).map(|a| (0..k).map(|b| e(a, b).clone()).collect()).collect(),
            );
            m.det()
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    n: usize,
    k: usize,
    terms: Vec<(Vec<usize>, Scalar)>,
}

impl From<&KForm> for FormJson {
    fn from(f: &KForm) -> Self {
        FormJson { n: f.n, k: f.k, terms: f.terms.iter().map(|(i, c)| (i.clone(), c.clone())).collect() }
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            let list = idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
            let neg = c.is_rational() && c.re() < &num_rational::BigRational::default();
            let mag = if neg { -c } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "e[{list}]")?;
            } else if mag.is_rational() {
                write!(f, "{mag}*e[{list}]")?;
            } else {
                write!(f, "({mag})*e[{list}]")?;
            }
        }
        Ok(())
    }
}

/// Two-form rank (rank of the associated skew matrix).
pub fn two_form_rank(a: &KForm) -> usize {
    a.to_skew_matrix().rank()
}

pub fn wedge(a: &KForm, b: &KForm) -> Result<KForm> {
    a.wedge(b)
}

pub fn contract(v: &[Scalar], a: &KForm) -> KForm {
    a.contract(v)
}

pub fn pullback(g: &Matrix, a: &KForm) -> Result<KForm> {
    a.pullback(g)
}

pub fn support(a: &KForm) -> Subspace {
    a.support()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::unit_vector;

    fn e(n: usize, idx: &[usize]) -> KForm {
        KForm::basis(n, idx)
    }

    #[test]
    fn wedge_basics() {
        assert_eq!(e(3, &[1]).wedge(&e(3, &[2])).unwrap(), e(3, &[1, 2]));
        assert!(e(4, &[1, 2]).wedge(&e(4, &[1, 2])).unwrap().is_zero());
        assert!(matches!(e(3, &[1, 2]).wedge(&e(3, &[2, 3])), Err(Error::DegreeOverflow(_))));
        assert_eq!(e(3, &[2, 1]), e(3, &[1, 2]).scale(&Scalar::from(-1)));
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(e(7, &[1, 2, 3]).contract(&unit_vector(7, 0)), e(7, &[2, 3]));
        assert!(e(7, &[1, 2, 3]).contract(&unit_vector(7, 6)).is_zero());
    }

    #[test]
    fn transposition_pullback() {
        let mut g = Matrix::zeros(2, 2);
        g[(0, 1)] = Scalar::one();
        g[(1, 0)] = Scalar::one();
        assert_eq!(e(2, &[1, 2]).pullback(&g).unwrap(), e(2, &[1, 2]).scale(&Scalar::from(-1)));
        assert!(matches!(e(2, &[1, 2]).pullback(&Matrix::zeros(2, 2)), Err(Error::Singular)));
    }

    #[test]
    fn supports() {
        assert_eq!(e(7, &[1, 2, 3]).rank(), 3);
        let w = e(5, &[1, 2, 3]).add(&e(5, &[1, 4, 5]));
        assert_eq!(w.rank(), 5);
        let w1 = KForm::parse(7, "e[1,2,5]+e[1,3,6]+e[1,4,7]").unwrap();
        assert_eq!(w1.rank(), 7);
    }

    #[test]
    fn two_form_ranks() {
        assert_eq!(two_form_rank(&e(4, &[1, 2])), 2);
        assert_eq!(two_form_rank(&e(4, &[1, 2]).add(&e(4, &[3, 4]))), 4);
    }

    #[test]
    fn parsing_and_display() {
        let f = KForm::parse(7, "2*e[1,2,3] - e[3,6,5] + (1/2)*e[5,4,1] + ((0)+(1)i)*e[2,6,4]").unwrap();
        assert_eq!(f.coeff(&[1, 2, 3]), Scalar::from(2));
        assert_eq!(f.coeff(&[3, 5, 6]), Scalar::one());
        assert_eq!(f.coeff(&[1, 4, 5]), Scalar::frac(-1, 2));
        assert_eq!(f.coeff(&[2, 4, 6]), Scalar::from(-1) * Scalar::i());
        let g = KForm::parse(7, &f.to_string()).unwrap();
        assert_eq!(f, g);
        assert_eq!(KForm::from_json(&f.to_json()).unwrap(), f);
        assert!(KForm::parse(7, "e[1,2,8]").is_err());
        assert!(KForm::parse(7, "e[1,2] + e[1,2,3]").is_err());
        assert!(KForm::parse(7, "garbage").is_err());
    }

    #[test]
    fn hodge_star_of_top() {
        let vol = KForm::basis(4, &[1, 2, 3, 4]);
        assert_eq!(vol.hodge_star().coeff(&[]), Scalar::one());
        assert_eq!(e(4, &[1, 2]).hodge_star(), e(4, &[3, 4]));
        assert_eq!(e(4, &[1, 3]).hodge_star(), e(4, &[2, 4]).scale(&Scalar::from(-1)));
    }
}
