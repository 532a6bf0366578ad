use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Power series in `t` known modulo `t^(precision+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn zero(precision: usize) -> Self {
        Self { coeffs: vec![BigRational::zero(); precision + 1] }
    }

    pub fn constant(c: BigRational, precision: usize) -> Self {
        let mut s = Self::zero(precision);
        s.coeffs[0] = c;
        s
    }

    /// Coefficients beyond `precision` are dropped; missing ones are zero.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, precision: usize) -> Self {
        coeffs.resize(precision + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Least exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    pub fn truncate(&self, precision: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), precision)
    }

    /// Divides by `t^k`; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs[..k.min(self.coeffs.len())].iter().all(Zero::is_zero));
        let precision = self.precision().saturating_sub(k);
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect(), precision)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::constant(BigRational::one(), self.precision());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Quotient by a series with nonzero constant term.
    pub fn div_unit(&self, unit: &Series) -> Option<Self> {
        let u0 = unit.coeff(0);
        if u0.is_zero() {
            return None;
        }
        let precision = self.precision().min(unit.precision());
        let mut q: Vec<BigRational> = Vec::with_capacity(precision + 1);
        for k in 0..=precision {
            let mut acc = self.coeff(k);
            for (l, ql) in q.iter().enumerate() {
                acc -= ql * &unit.coeffs[k - l];
            }
            q.push(acc / &u0);
        }
        Some(Self { coeffs: q })
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let precision = self.precision().min(rhs.precision());
        Series { coeffs: (0..=precision).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let precision = self.precision().min(rhs.precision());
        let mut out = vec![BigRational::zero(); precision + 1];
        for (a, ca) in self.coeffs.iter().enumerate().take(precision + 1) {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in rhs.coeffs.iter().enumerate().take(precision + 1 - a) {
                if !cb.is_zero() {
                    out[a + b] += ca * cb;
                }
            }
        }
        Series { coeffs: out }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.precision() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn s(c: &[i64], precision: usize) -> Series {
        Series::from_coeffs(c.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect(), precision)
    }

    #[test]
    fn products_truncate() {
        let one_plus_t = s(&[1, 1], 4);
        assert_eq!(one_plus_t.pow(3), s(&[1, 3, 3, 1], 4));
        assert_eq!(one_plus_t.pow(6), s(&[1, 6, 15, 20, 15], 4));
    }

    #[test]
    fn geometric_series() {
        let one = s(&[1], 5);
        let q = one.div_unit(&s(&[1, -1], 5)).unwrap();
        assert_eq!(q, s(&[1, 1, 1, 1, 1, 1], 5));
        assert!(one.div_unit(&s(&[0, 1], 5)).is_none());
    }

    #[test]
    fn orders_and_shifts() {
        let t3 = s(&[0, 0, 0, 2, 1], 6);
        assert_eq!(t3.order(), Some(3));
        assert_eq!(t3.shift_down(3), s(&[2, 1], 3));
        assert!(s(&[], 3).is_zero());
        assert_eq!(format!("{}", s(&[0, 1, 0, -2], 3)), "(1)t + (-2)t^3 + O(t^4)");
    }
}
