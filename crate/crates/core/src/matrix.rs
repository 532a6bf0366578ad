//! Square matrices over exact rationals.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    n: usize,
    /// Row-major.
    entries: Vec<BigRational>,
}

/// Rational in the `p/q` string form used in documents.
pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(text: &str) -> Option<BigRational> {
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (text.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![BigRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for k in 0..n {
            m.entries[k * n + k] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.n + col]
    }

    fn get_mut(&mut self, row: usize, col: usize) -> &mut BigRational {
        &mut self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[BigRational] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn column(&self, col: usize) -> Vec<BigRational> {
        (0..self.n).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// True iff every leading principal minor of `-self` is positive.
    ///
    /// Runs Gaussian elimination on `-self` without row exchanges: the k-th
    /// pivot equals the ratio of consecutive leading minors, so all minors
    /// are positive exactly when every pivot is.
    pub fn is_negative_definite(&self) -> Result<bool> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.n;
        let mut a = -self.clone();
        for k in 0..n {
            let pivot = a.get(k, k).clone();
            if !pivot.is_positive() {
                return Ok(false);
            }
            for r in k + 1..n {
                if a.get(r, k).is_zero() {
                    continue;
                }
                let factor = a.get(r, k) / &pivot;
                for c in k..n {
                    let delta = &factor * a.get(k, c);
                    *a.get_mut(r, c) -= delta;
                }
            }
        }
        Ok(true)
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let pivot_row = (k..n).find(|&r| !a.get(r, k).is_zero()).ok_or(Error::Singular)?;
            if pivot_row != k {
                a.swap_rows(k, pivot_row);
                inv.swap_rows(k, pivot_row);
            }
            let pivot = a.get(k, k).clone();
            for c in 0..n {
                *a.get_mut(k, c) /= &pivot;
                *inv.get_mut(k, c) /= &pivot;
            }
            for r in 0..n {
                if r == k || a.get(r, k).is_zero() {
                    continue;
                }
                let factor = a.get(r, k).clone();
                for c in 0..n {
                    let da = &factor * a.get(k, c);
                    *a.get_mut(r, c) -= da;
                    let di = &factor * inv.get(k, c);
                    *inv.get_mut(r, c) -= di;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.n {
            self.entries.swap(a * self.n + c, b * self.n + c);
        }
    }

    pub fn mul_vector(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.n)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl Neg for RationalMatrix {
    type Output = RationalMatrix;

    fn neg(self) -> Self::Output {
        Self { n: self.n, entries: self.entries.into_iter().map(|x| -x).collect() }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        let n = self.n;
        let mut out = RationalMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = a * rhs.get(k, j);
                    *out.get_mut(i, j) += prod;
                }
            }
        }
        out
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.n))?;
        for r in 0..self.n {
            let row: Vec<String> = self.row(r).iter().map(rational_string).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    /// Determinant by Laplace expansion along the first row.
    fn laplace_det(m: &[Vec<i64>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0i128;
        for c in 0..n {
            if m[0][c] == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &x)| x).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            total += sign * m[0][c] as i128 * laplace_det(&minor);
        }
        total
    }

    fn minors_oracle(m: &[Vec<i64>]) -> bool {
        let neg: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        (1..=neg.len()).all(|k| {
            let lead: Vec<Vec<i64>> = neg[..k].iter().map(|r| r[..k].to_vec()).collect();
            laplace_det(&lead) > 0
        })
    }

    #[test]
    fn definiteness_small_cases() {
        let a2 = vec![vec![-2, 1], vec![1, -2]];
        assert!(minors_oracle(&a2));
        assert!(RationalMatrix::from_integers(&a2).unwrap().is_negative_definite().unwrap());
        assert!(RationalMatrix::from_integers(&[vec![-1]]).unwrap().is_negative_definite().unwrap());
        assert!(!RationalMatrix::from_integers(&[vec![0]]).unwrap().is_negative_definite().unwrap());
    }

    #[test]
    fn asymmetric_rejected() {
        let m = RationalMatrix::from_integers(&[vec![-2, 1], vec![0, -2]]).unwrap();
        assert_eq!(m.is_negative_definite(), Err(Error::NotSymmetric));
    }

    #[test]
    fn weighted_trees_against_minor_oracle() {
        // D_4 (definite) and the five-leaf all-2 star (indefinite), plus a
        // heavier-centered star that becomes definite again.
        let mut d4 = vec![vec![0i64; 4]; 4];
        let mut star5 = vec![vec![0i64; 6]; 6];
        let mut star5_heavy = vec![vec![0i64; 6]; 6];
        for k in 0..4 {
            d4[k][k] = -2;
        }
        for leaf in 1..4 {
            d4[0][leaf] = 1;
            d4[leaf][0] = 1;
        }
        for k in 0..6 {
            star5[k][k] = -2;
            star5_heavy[k][k] = -2;
        }
        star5_heavy[0][0] = -3;
        for leaf in 1..6 {
            star5[0][leaf] = 1;
            star5[leaf][0] = 1;
            star5_heavy[0][leaf] = 1;
            star5_heavy[leaf][0] = 1;
        }
        for (m, expected) in [(d4, true), (star5, false), (star5_heavy, true)] {
            assert_eq!(minors_oracle(&m), expected);
            let got = RationalMatrix::from_integers(&m).unwrap().is_negative_definite().unwrap();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn inverse_of_a2() {
        let m = RationalMatrix::from_integers(&[vec![2, -1], vec![-1, 2]]).unwrap();
        let inv = m.inverse().unwrap();
        let expected =
            RationalMatrix::from_rows(vec![vec![q(2, 3), q(1, 3)], vec![q(1, 3), q(2, 3)]]).unwrap();
        assert_eq!(inv, expected);
        assert_eq!(&m * &inv, RationalMatrix::identity(2));
    }

    #[test]
    fn inverse_needs_row_exchange() {
        let m = RationalMatrix::from_integers(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.inverse().unwrap(), m);
        let singular = RationalMatrix::from_integers(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(singular.inverse(), Err(Error::Singular));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational_string(&q(2, 3)), "2/3");
        assert_eq!(rational_string(&q(4, 2)), "2/1");
        assert_eq!(parse_rational("6/4"), Some(q(3, 2)));
        assert_eq!(parse_rational("-5"), Some(q(-5, 1)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
