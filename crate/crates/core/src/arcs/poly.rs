use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::series::Series;

/// Polynomial in `x, y, z` with rational coefficients, keyed by exponent
/// triples.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<[u32; 3], BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(c)), [0, 0, 0])
    }

    pub fn monomial(c: BigRational, exponents: [u32; 3]) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), [1, 0, 0])
    }

    pub fn y() -> Self {
        Self::monomial(BigRational::one(), [0, 1, 0])
    }

    pub fn z() -> Self {
        Self::monomial(BigRational::one(), [0, 0, 1])
    }

    /// `z^(n+1) - xy`.
    pub fn a_n_equation(n: usize) -> Self {
        &Self::z().pow(n as u32 + 1) - &(&Self::x() * &Self::y())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigRational)> {
        self.terms.iter()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1), |acc, _| &acc * self)
    }

    /// Substitutes three series (sharing a precision) for `x, y, z`.
    pub fn evaluate(&self, x: &Series, y: &Series, z: &Series) -> Series {
        let precision = x.precision().min(y.precision()).min(z.precision());
        let mut powers: [Vec<Series>; 3] = [vec![], vec![], vec![]];
        for (axis, s) in [x, y, z].into_iter().enumerate() {
            let top = self.terms.keys().map(|e| e[axis]).max().unwrap_or(0);
            let mut p = vec![Series::constant(BigRational::one(), precision)];
            for k in 0..top as usize {
                p.push(&p[k] * s);
            }
            powers[axis] = p;
        }
        let mut acc = Series::zero(precision);
        for (e, c) in &self.terms {
            let mut m = powers[0][e[0] as usize].scale(c);
            for axis in 1..3 {
                if e[axis] > 0 {
                    m = &m * &powers[axis][e[axis] as usize];
                }
            }
            acc = &acc + &m;
        }
        acc
    }

    fn insert(&mut self, e: [u32; 3], c: BigRational) {
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(*e, c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.insert([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let vars: Vec<String> = ["x", "y", "z"]
                    .iter()
                    .zip(e)
                    .filter(|(_, &k)| k > 0)
                    .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
                    .collect();
                match (vars.is_empty(), c.is_one()) {
                    (true, _) => format!("{c}"),
                    (false, true) => vars.join("*"),
                    (false, false) => format!("{c}*{}", vars.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
