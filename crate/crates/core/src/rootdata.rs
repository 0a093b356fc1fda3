//! Root systems generated from Cartan matrices (Bourbaki numbering), affine
//! marks, gradings by a node, the magic-square dimension formulas and line
//! shadows.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

/// Cartan matrix entries a_ij = ⟨α_j, α_i^∨⟩.
pub type CartanMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    pub letter: char,
    pub rank: usize,
    pub cartan: CartanMatrix,
    /// All roots in simple-root coordinates.
    pub roots: Vec<Vec<i64>>,
    pub highest_root: Vec<i64>,
    /// Affine marks: 1 for the affine node (index 0), then the highest-root coefficients.
    pub marks: Vec<i64>,
}

/// Cartan matrix of a finite type.
pub fn cartan_matrix(letter: char, n: usize) -> Result<CartanMatrix> {
    let bad = || Error::InvalidType(format!("{letter}{n}"));
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i - 1][j - 1] = -1;
        a[j - 1][i - 1] = -1;
    };
    match (letter, n) {
        ('A', n) if n >= 1 => (1..n).for_each(|i| link(i, i + 1)),
        ('B', n) if n >= 2 => {
            (1..n).for_each(|i| link(i, i + 1));
            a[n - 1][n - 2] = -2;
        }
        ('C', n) if n >= 2 => {
            (1..n).for_each(|i| link(i, i + 1));
            a[n - 2][n - 1] = -2;
        }
        ('D', n) if n >= 4 => {
            (1..n - 1).for_each(|i| link(i, i + 1));
            link(n - 2, n);
        }
        ('E', n) if (6..=8).contains(&n) => {
            link(1, 3);
            link(2, 4);
            (3..n).for_each(|i| link(i, i + 1));
        }
        ('F', 4) => {
            link(1, 2);
            link(2, 3);
            link(3, 4);
            a[2][1] = -2;
        }
        ('G', 2) => {
            a[0][1] = -3;
            a[1][0] = -1;
        }
        _ => return Err(bad()),
    }
    Ok(a)
}

/// Parse names like "E8", "g2", "A7".
pub fn parse_type(s: &str) -> Result<(char, usize)> {
    let s = s.trim();
    let mut chars = s.chars();
    let letter = chars.next().ok_or_else(|| Error::InvalidType(s.into()))?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().map_err(|_| Error::InvalidType(s.into()))?;
    cartan_matrix(letter, n)?;
    Ok((letter, n))
}

fn reflect(a: &CartanMatrix, root: &[i64], i: usize) -> Vec<i64> {
    let pairing: i64 = (0..root.len()).map(|j| root[j] * a[i][j]).sum();
    let mut r = root.to_vec();
    r[i] -= pairing;
    r
}

/// All roots of a Cartan matrix, as the orbit of the simple roots under the
/// simple reflections.
pub fn roots_from_cartan(a: &CartanMatrix) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if seen.insert(e.clone()) {
            queue.push_back(e);
        }
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let s = reflect(a, &r, i);
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}

pub fn build_root_system(letter: char, rank: usize) -> Result<RootSystem> {
    let cartan = cartan_matrix(letter, rank)?;
    let roots = roots_from_cartan(&cartan);
    let highest = roots.iter().max_by_key(|r| r.iter().sum::<i64>()).cloned().unwrap_or_default();
    let mut marks = vec![1];
    marks.extend(highest.iter().copied());
    Ok(RootSystem { letter, rank, cartan, roots, highest_root: highest, marks })
}

impl RootSystem {
    pub fn name(&self) -> String {
        format!("{}{}", self.letter, self.rank)
    }

    pub fn dim(&self) -> usize {
        self.roots.len() + self.rank
    }

    pub fn positive_roots(&self) -> Vec<&Vec<i64>> {
        self.roots.iter().filter(|r| r.iter().all(|&c| c >= 0)).collect()
    }

    /// Squared root lengths of the simple roots, normalized so the shortest is 1.
    pub fn simple_lengths(&self) -> Vec<i64> {
        relative_lengths(&self.cartan)
    }
}

/// Relative squared lengths from a_ij/a_ji = |α_j|²/|α_i|² along the
/// diagram, per connected component, scaled to make the shortest 1.
fn relative_lengths(a: &CartanMatrix) -> Vec<i64> {
    let n = a.len();
    let mut len: Vec<Option<(i64, i64)>> = vec![None; n];
    for start in 0..n {
        if len[start].is_some() {
            continue;
        }
        len[start] = Some((1, 1));
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let (p, q) = len[i].unwrap();
            for j in 0..n {
                if i != j && a[i][j] != 0 && len[j].is_none() {
                    // |α_j|² = |α_i|² · a_ij / a_ji
                    len[j] = Some((p * a[i][j], q * a[j][i]));
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        // normalize this component
        let min = comp.iter().map(|&i| len[i].unwrap()).map(|(p, q)| p as f64 / q as f64).fold(f64::INFINITY, f64::min);
        for &i in &comp {
            let (p, q) = len[i].unwrap();
            len[i] = Some((((p as f64 / q as f64) / min).round() as i64, 1));
        }
    }
    len.into_iter().map(|x| x.unwrap().0).collect()
}

/// Dynkin type of a Cartan matrix, as a sum of connected components.
pub fn identify_type(a: &CartanMatrix) -> String {
    let n = a.len();
    if n == 0 {
        return "0".into();
    }
    let mut seen = vec![false; n];
    let mut parts: Vec<String> = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(i) = stack.pop() {
            comp.push(i);
            for j in 0..n {
                if i != j && a[i][j] != 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort();
        let sub: CartanMatrix = comp.iter().map(|&i| comp.iter().map(|&j| a[i][j]).collect()).collect();
        parts.push(identify_connected(&sub));
    }
    parts.sort();
    parts.join("+")
}

fn identify_connected(a: &CartanMatrix) -> String {
    let n = a.len();
    let maxprod = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| i != j).map(|(i, j)| a[i][j] * a[j][i]).max().unwrap_or(0);
    let degree = |i: usize| (0..n).filter(|&j| j != i && a[i][j] != 0).count();
    match maxprod {
        3 => "G2".into(),
        2 => {
            if n == 2 {
                return "B2".into();
            }
            if n == 4 && (0..n).all(|i| degree(i) <= 2) && roots_from_cartan(a).len() == 48 {
                return "F4".into();
            }
            // the short end of the double bond: a_ij = −2
            let short = (0..n).find(|&i| (0..n).any(|j| a[i][j] == -2)).unwrap();
            if degree(short) == 1 {
                format!("B{n}")
            } else {
                format!("C{n}")
            }
        }
        _ => {
            let Some(branch) = (0..n).find(|&i| degree(i) == 3) else { return format!("A{n}") };
            let mut arms: Vec<usize> = Vec::new();
            for j in 0..n {
                if j != branch && a[branch][j] != 0 {
                    let (mut prev, mut cur, mut len) = (branch, j, 1);
                    loop {
                        let next = (0..n).find(|&k| k != prev && k != cur && a[cur][k] != 0);
                        match next {
                            Some(k) => {
                                prev = cur;
                                cur = k;
                                len += 1;
                            }
                            None => break,
                        }
                    }
                    arms.push(len);
                }
            }
            arms.sort();
            if arms[0] == 1 && arms[1] == 1 {
                format!("D{n}")
            } else {
                format!("E{n}")
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingReport {
    pub kind: String,
    pub algebra: String,
    pub node: usize,
    /// (degree, dimension), degree 0 including the Cartan subalgebra.
    pub dims: Vec<(i64, usize)>,
    /// Dynkin type of the semisimple part of degree 0.
    pub degree_zero_type: String,
}

impl GradingReport {
    pub fn dim_of(&self, degree: i64) -> usize {
        self.dims.iter().find(|(d, _)| *d == degree).map_or(0, |x| x.1)
    }

    pub fn dims_only(&self) -> Vec<usize> {
        self.dims.iter().map(|x| x.1).collect()
    }
}

fn delete_node(a: &CartanMatrix, j: usize) -> CartanMatrix {
    let idx: Vec<usize> = (0..a.len()).filter(|&i| i != j).collect();
    idx.iter().map(|&i| idx.iter().map(|&k| a[i][k]).collect()).collect()
}

/// ℤ-grading by the coefficient of the simple root α_j (1-based).
pub fn z_grading(rs: &RootSystem, node: usize) -> Result<GradingReport> {
    if node == 0 || node > rs.rank {
        return Err(Error::Invalid(format!("node must be in 1..={}", rs.rank)));
    }
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    dims.insert(0, rs.rank);
    for r in &rs.roots {
        *dims.entry(r[node - 1]).or_default() += 1;
    }
    Ok(GradingReport {
        kind: "Z".into(),
        algebra: rs.name(),
        node,
        dims: dims.into_iter().collect(),
        degree_zero_type: identify_type(&delete_node(&rs.cartan, node - 1)),
    })
}

/// Extended Cartan matrix with the affine node first: α₀ = −θ.
pub fn affine_cartan(rs: &RootSystem) -> CartanMatrix {
    let n = rs.rank;
    let theta = &rs.highest_root;
    let lengths = rs.simple_lengths();
    // (α, β) in units where the shortest simple root has squared length 1
    let inner = |x: &[i64], y: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                // (α_i, α_j) = a_ij·|α_i|²/2, doubled to stay integral
                s += x[i] * y[j] * rs.cartan[i][j] * lengths[i];
            }
        }
        s
    };
    let mut roots: Vec<Vec<i64>> = vec![theta.iter().map(|c| -c).collect()];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        roots.push(e);
    }
    (0..=n)
        .map(|i| (0..=n).map(|j| 2 * inner(&roots[i], &roots[j]) / inner(&roots[i], &roots[i])).collect())
        .collect()
}

/// ℤ_m-grading by an affine node (0 = affine node), m its mark.
pub fn zm_grading(rs: &RootSystem, node: usize) -> Result<GradingReport> {
    if node > rs.rank {
        return Err(Error::Invalid(format!("affine node must be in 0..={}", rs.rank)));
    }
    let m = rs.marks[node];
    let mut dims: BTreeMap<i64, usize> = (0..m).map(|d| (d, 0)).collect();
    *dims.get_mut(&0).unwrap() += rs.rank;
    for r in &rs.roots {
        let deg = if node == 0 { 0 } else { r[node - 1].rem_euclid(m) };
        *dims.get_mut(&deg).unwrap() += 1;
    }
    Ok(GradingReport {
        kind: format!("Z{m}"),
        algebra: rs.name(),
        node,
        dims: dims.into_iter().collect(),
        degree_zero_type: identify_type(&delete_node(&affine_cartan(rs), node)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MagicDims {
    pub a: usize,
    pub x1: i64,
    pub v1: i64,
    pub x2: i64,
    pub v2: i64,
    pub x3: i64,
    pub v3: i64,
    pub x4: i64,
    pub v4: i64,
    /// a = 6 is allowed for the sextonion column but lies outside the square.
    pub flagged: bool,
}

pub fn magic_dimension_formulas(a: usize) -> Result<MagicDims> {
    if ![0, 1, 2, 4, 6, 8].contains(&a) {
        return Err(Error::Invalid(format!("a must be one of 0, 1, 2, 4, 6, 8; got {a}")));
    }
    let x = a as i64;
    let num = 2 * (3 * x + 7) * (5 * x + 8);
    if num % (x + 4) != 0 {
        return Err(Error::Invalid("dimension formula is not integral".into()));
    }
    Ok(MagicDims {
        a,
        x1: 2 * x - 1,
        v1: 3 * x + 2,
        x2: 2 * x,
        v2: 3 * x + 3,
        x3: 3 * x + 3,
        v3: 6 * x + 8,
        x4: 6 * x + 9,
        v4: num / (x + 4),
        flagged: a == 6,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShadowLines {
    pub node: usize,
    pub marked: BTreeSet<usize>,
    pub homogeneous: bool,
}

/// Lines on G/P_i are parametrized by G/P_J with J the neighbours of i;
/// the family fails to be homogeneous when α_i is short.
pub fn shadow_lines(rs: &RootSystem, node: usize) -> Result<ShadowLines> {
    if node == 0 || node > rs.rank {
        return Err(Error::Invalid(format!("node must be in 1..={}", rs.rank)));
    }
    let i = node - 1;
    let marked: BTreeSet<usize> = (0..rs.rank).filter(|&j| j != i && rs.cartan[i][j] != 0).map(|j| j + 1).collect();
    let lengths = rs.simple_lengths();
    let max = *lengths.iter().max().unwrap();
    Ok(ShadowLines { node, marked, homogeneous: lengths[i] == max })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (l, n, c) in [('A', 1, 2), ('G', 2, 12), ('F', 4, 48), ('E', 6, 72), ('E', 7, 126), ('E', 8, 240), ('B', 3, 18), ('C', 3, 18), ('D', 4, 24)] {
            assert_eq!(build_root_system(l, n).unwrap().roots.len(), c, "{l}{n}");
        }
    }

    #[test]
    fn marks() {
        assert_eq!(build_root_system('G', 2).unwrap().marks, vec![1, 3, 2]);
        assert_eq!(build_root_system('E', 8).unwrap().marks, vec![1, 2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(build_root_system('F', 4).unwrap().highest_root, vec![2, 3, 4, 2]);
    }

    #[test]
    fn gradings() {
        let f4 = build_root_system('F', 4).unwrap();
        assert_eq!(z_grading(&f4, 4).unwrap().dims_only(), vec![7, 8, 22, 8, 7]);
        let g2 = build_root_system('G', 2).unwrap();
        let z = zm_grading(&g2, 2).unwrap();
        assert_eq!(z.dims_only(), vec![6, 8]);
        assert_eq!(z.degree_zero_type, "A1+A1");
        let e8 = build_root_system('E', 8).unwrap();
        let z = zm_grading(&e8, 1).unwrap();
        assert_eq!(z.dims_only(), vec![120, 128]);
        assert_eq!(z.degree_zero_type, "D8");
    }

    #[test]
    fn types() {
        for (l, n) in [('A', 3), ('B', 4), ('C', 4), ('D', 5), ('E', 6), ('E', 7), ('E', 8), ('F', 4), ('G', 2)] {
            assert_eq!(identify_type(&cartan_matrix(l, n).unwrap()), format!("{l}{n}"));
        }
    }

    #[test]
    fn shadows() {
        let a7 = build_root_system('A', 7).unwrap();
        assert_eq!(shadow_lines(&a7, 3).unwrap().marked, BTreeSet::from([2, 4]));
        let g2 = build_root_system('G', 2).unwrap();
        let s = shadow_lines(&g2, 1).unwrap();
        assert_eq!(s.marked, BTreeSet::from([2]));
        assert!(!s.homogeneous);
        assert!(shadow_lines(&build_root_system('A', 1).unwrap(), 1).unwrap().marked.is_empty());
    }

    #[test]
    fn magic_formulas() {
        let v: Vec<i64> = [1, 2, 4, 8].iter().map(|&a| magic_dimension_formulas(a).unwrap().v4).collect();
        assert_eq!(v, vec![52, 78, 133, 248]);
        let r = magic_dimension_formulas(4).unwrap();
        assert_eq!((r.x3, r.v3), (15, 32));
    }
}
