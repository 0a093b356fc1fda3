//! Large sparse homogeneous systems.
//!
//! Kernels are found modulo a 62-bit prime, lifted back to ℚ(i) by rational
//! reconstruction and then checked exactly against every equation. Rank mod p
//! never exceeds the rank over ℚ(i), so a lifted basis that passes the exact
//! check is the whole kernel. Anything that does not lift cleanly falls back
//! to exact elimination.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::scalar::Scalar;
use super::subspace::Subspace;

pub const PRIME: u64 = 4_611_686_018_427_387_817;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp(pub u64);

impl Fp {
    pub fn new(x: i128) -> Fp {
        Fp(x.rem_euclid(PRIME as i128) as u64)
    }

    pub fn add(self, o: Fp) -> Fp {
        let s = self.0 as u128 + o.0 as u128;
        Fp((s % PRIME as u128) as u64)
    }

    pub fn sub(self, o: Fp) -> Fp {
        self.add(Fp::negate(o))
    }

    pub fn mul(self, o: Fp) -> Fp {
        Fp(((self.0 as u128 * o.0 as u128) % PRIME as u128) as u64)
    }

    pub fn negate(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(PRIME - self.0)
        }
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn invert(self) -> Fp {
        assert!(self.0 != 0, "inverse of zero mod p");
        self.pow(PRIME - 2)
    }
}

/// A square root of −1 modulo the prime (which is 1 mod 4).
pub fn sqrt_minus_one() -> Fp {
    static ROOT: OnceLock<Fp> = OnceLock::new();
    *ROOT.get_or_init(|| {
        let half = (PRIME - 1) / 2;
        let g = (2u64..)
            .map(Fp)
            .find(|g| g.pow(half).0 == PRIME - 1)
            .unwrap();
        let r = g.pow((PRIME - 1) / 4);
        debug_assert_eq!(r.mul(r).0, PRIME - 1);
        r
    })
}

fn bigint_mod(b: &BigInt) -> Fp {
    let p = BigInt::from(PRIME);
    Fp(b.mod_floor(&p).to_u64().unwrap())
}

fn rat_mod(r: &BigRational) -> Option<Fp> {
    let d = bigint_mod(r.denom());
    if d.0 == 0 {
        return None;
    }
    Some(bigint_mod(r.numer()).mul(d.invert()))
}

/// Image of a scalar under ℚ(i) → F_p sending i to `iota`.
pub fn scalar_mod(s: &Scalar, iota: Fp) -> Option<Fp> {
    let re = rat_mod(s.re())?;
    if s.im().is_zero() {
        return Some(re);
    }
    Some(re.add(rat_mod(s.im())?.mul(iota)))
}

/// Smallest n/d with n ≡ a·d (mod p), |n|, d ≤ √(p/2).
pub fn rational_reconstruct(a: Fp) -> Option<BigRational> {
    let bound = ((PRIME / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (PRIME as i128, a.0 as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    if n.gcd(&d) != 1 {
        return None;
    }
    Some(BigRational::new(n.into(), d.into()))
}

/// Minimal field interface for the incremental echelon.
pub trait EchelonField: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn times(&self, o: &Self) -> Self;
    fn sub_mul(&mut self, f: &Self, x: &Self);
    fn reciprocal(&self) -> Self;
    fn negated(&self) -> Self;
}

impl EchelonField for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(*o)
    }
    fn sub_mul(&mut self, f: &Self, x: &Self) {
        *self = self.sub(f.mul(*x));
    }
    fn reciprocal(&self) -> Self {
        self.invert()
    }
    fn negated(&self) -> Self {
        self.negate()
    }
}

impl EchelonField for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_mul(&mut self, f: &Self, x: &Self) {
        *self -= &(f * x);
    }
    fn reciprocal(&self) -> Self {
        self.inv().expect("zero pivot")
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// Reduced row-echelon form maintained under row insertion.
pub struct Echelon<F: EchelonField> {
    ncols: usize,
    rows: Vec<Vec<F>>,
    nz: Vec<Vec<usize>>,
    pivots: Vec<usize>,
}

impl<F: EchelonField> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), nz: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Insert a sparse row; returns true if it increased the rank.
    pub fn insert(&mut self, row: &[(usize, F)]) -> bool {
        if self.rank() == self.ncols {
            return false;
        }
        let mut w = vec![F::zero(); self.ncols];
        for (c, x) in row {
            w[*c] = x.clone();
        }
        for k in 0..self.rows.len() {
            let pc = self.pivots[k];
            if w[pc].is_zero() {
                continue;
            }
            let f = w[pc].clone();
            for &j in &self.nz[k] {
                w[j].sub_mul(&f, &self.rows[k][j]);
            }
        }
        let Some(lead) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[lead].reciprocal();
        let mut nz = Vec::new();
        for (j, x) in w.iter_mut().enumerate() {
            if !x.is_zero() {
                *x = x.times(&inv);
                nz.push(j);
            }
        }
        for k in 0..self.rows.len() {
            if self.rows[k][lead].is_zero() {
                continue;
            }
            let f = self.rows[k][lead].clone();
            for &j in &nz {
                self.rows[k][j].sub_mul(&f, &w[j]);
            }
            let row = &self.rows[k];
            self.nz[k].retain(|&j| !row[j].is_zero());
            let mut extra: Vec<usize> =
                nz.iter().copied().filter(|&j| !row[j].is_zero()).collect();
            self.nz[k].append(&mut extra);
            self.nz[k].sort_unstable();
            self.nz[k].dedup();
        }
        self.rows.push(w);
        self.nz.push(nz);
        self.pivots.push(lead);
        true
    }

    /// Kernel basis: one vector per free column, with 1 there and 0 at the
    /// other free columns.
    pub fn kernel_vectors(&self) -> Vec<Vec<F>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![F::zero(); self.ncols];
                v[f] = F::one();
                for (k, &p) in self.pivots.iter().enumerate() {
                    v[p] = self.rows[k][f].negated();
                }
                v
            })
            .collect()
    }
}

/// A homogeneous linear system with sparse rows.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    ncols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Add an equation Σ c·x_j = 0; duplicate columns are summed, zero rows dropped.
    pub fn push(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) {
        let mut row: Vec<(usize, Scalar)> = Vec::new();
        let mut sorted: Vec<(usize, Scalar)> = entries.into_iter().collect();
        sorted.sort_by_key(|e| e.0);
        for (c, x) in sorted {
            assert!(c < self.ncols, "column out of range");
            match row.last_mut() {
                Some((lc, lx)) if *lc == c => *lx += &x,
                _ => row.push((c, x)),
            }
        }
        row.retain(|(_, x)| !x.is_zero());
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    pub fn push_dense(&mut self, row: &[Scalar]) {
        self.push(row.iter().cloned().enumerate());
    }

    fn satisfies(&self, v: &[Scalar]) -> bool {
        self.rows.iter().all(|r| {
            let mut acc = Scalar::zero();
            for (c, x) in r {
                if !v[*c].is_zero() {
                    acc += &(x * &v[*c]);
                }
            }
            acc.is_zero()
        })
    }

    fn modular_kernel(&self, iota: Fp) -> Option<(Vec<usize>, Vec<Vec<Fp>>)> {
        let mut ech = Echelon::<Fp>::new(self.ncols);
        for r in &self.rows {
            let row: Option<Vec<(usize, Fp)>> =
                r.iter().map(|(c, x)| scalar_mod(x, iota).map(|y| (*c, y))).collect();
            ech.insert(&row?);
        }
        let mut piv = ech.pivots().to_vec();
        piv.sort_unstable();
        Some((piv, ech.kernel_vectors()))
    }

    fn lifted_kernel(&self) -> Option<Vec<Vec<Scalar>>> {
        let gaussian = self.rows.iter().flatten().any(|(_, x)| !x.is_rational());
        let iota = sqrt_minus_one();
        let (p1, k1) = self.modular_kernel(iota)?;
        let lifted: Option<Vec<Vec<Scalar>>> = if gaussian {
            let (p2, k2) = self.modular_kernel(iota.negate())?;
            if p1 != p2 {
                return None;
            }
            let half = Fp(2).invert();
            let half_iota = Fp(2).mul(iota).invert();
            k1.iter()
                .zip(&k2)
                .map(|(a, b)| {
                    a.iter()
                        .zip(b)
                        .map(|(&x, &y)| {
                            let re = rational_reconstruct(x.add(y).mul(half))?;
                            let im = rational_reconstruct(x.sub(y).mul(half_iota))?;
                            Some(Scalar::new(re, im))
                        })
                        .collect()
                })
                .collect()
        } else {
            k1.iter()
                .map(|a| a.iter().map(|&x| rational_reconstruct(x).map(Scalar::from_rational)).collect())
                .collect()
        };
        let lifted = lifted?;
        if lifted.iter().all(|v| self.satisfies(v)) {
            Some(lifted)
        } else {
            None
        }
    }

    fn exact_kernel(&self) -> Vec<Vec<Scalar>> {
        let mut ech = Echelon::<Scalar>::new(self.ncols);
        for r in &self.rows {
            ech.insert(r);
        }
        ech.kernel_vectors()
    }

    /// Exact kernel of the system.
    pub fn kernel(&self) -> Subspace {
        let vecs = if self.ncols <= 48 {
            self.exact_kernel()
        } else {
            self.lifted_kernel().unwrap_or_else(|| self.exact_kernel())
        };
        Subspace::from_spanning(self.ncols, vecs)
    }

    pub fn rank(&self) -> usize {
        self.ncols - self.kernel().dim()
    }
}

/// Rank of an integer matrix modulo the prime: a lower bound for its rank over ℚ.
pub fn rank_mod_p_i128(rows: &[Vec<i128>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut ech = Echelon::<Fp>::new(ncols);
    for r in rows {
        let row: Vec<(usize, Fp)> =
            r.iter().enumerate().filter(|(_, x)| **x != 0).map(|(c, &x)| (c, Fp::new(x))).collect();
        ech.insert(&row);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_minus_one() {
        let i = sqrt_minus_one();
        assert_eq!(i.mul(i), Fp(PRIME - 1));
    }

    #[test]
    fn reconstruct_small_fractions() {
        for (n, d) in [(3i64, 7i64), (-5, 2), (0, 1), (123456, 789)] {
            let a = Fp::new(n as i128).mul(Fp::new(d as i128).invert());
            assert_eq!(rational_reconstruct(a).unwrap(), BigRational::new(n.into(), d.into()));
        }
    }

    #[test]
    fn lifted_kernel_matches_exact() {
        let n = 60;
        let mut sys = SparseSystem::new(n);
        for k in 0..n - 3 {
            sys.push(vec![(k, Scalar::from(2)), (k + 1, Scalar::frac(-1, 3)), (k + 3, Scalar::gaussian(1, 1))]);
        }
        let fast = sys.kernel();
        let slow = Subspace::from_spanning(n, sys.exact_kernel());
        assert_eq!(fast, slow);
        assert_eq!(fast.dim(), 3);
    }
}
