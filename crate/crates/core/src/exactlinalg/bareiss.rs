//! Fraction-free elimination over ℤ[i]: entries stay bounded by minors, so
//! dense rank computations avoid the gcd cost of rational arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Matrix, Scalar};

#[derive(Clone, Debug, PartialEq)]
struct Gi(BigInt, BigInt);

impl Gi {
    fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }

    fn mul(&self, o: &Gi) -> Gi {
        Gi(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }

    fn sub(&self, o: &Gi) -> Gi {
        Gi(&self.0 - &o.0, &self.1 - &o.1)
    }

    /// Division known to be exact.
    fn div_exact(&self, d: &Gi) -> Gi {
        let n = &d.0 * &d.0 + &d.1 * &d.1;
        let re = &self.0 * &d.0 + &self.1 * &d.1;
        let im = &self.1 * &d.0 - &self.0 * &d.1;
        debug_assert!(re.is_multiple_of(&n) && im.is_multiple_of(&n));
        Gi(re / &n, im / n)
    }
}

/// Rows scaled by the lcm of their denominators.
fn integer_rows(m: &Matrix) -> Vec<Vec<Gi>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
            row.iter()
                .map(|x| {
                    let s = x * &Scalar::from_rational(l.clone().into());
                    Gi(s.re().to_integer(), s.im().to_integer())
                })
                .collect()
        })
        .collect()
}

pub(super) fn rank(m: &Matrix) -> usize {
    let mut a = integer_rows(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = Gi(BigInt::one(), BigInt::zero());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = a[r][c].mul(&a[i][j]).sub(&a[i][c].mul(&a[r][j]));
                a[i][j] = v.div_exact(&prev);
            }
            a[i][c] = Gi(BigInt::zero(), BigInt::zero());
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_rref_rank() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::frac(1, 2), Scalar::gaussian(1, 1), Scalar::from(3)],
            vec![Scalar::from(1), Scalar::gaussian(2, 2), Scalar::from(6)],
            vec![Scalar::from(0), Scalar::i(), Scalar::frac(1, 3)],
        ]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&Matrix::identity(4)), 4);
        assert_eq!(rank(&Matrix::zeros(3, 2)), 0);
    }
}
