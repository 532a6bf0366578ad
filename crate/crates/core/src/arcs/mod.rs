//! Truncated arcs on the A_n surface `z^(n+1) = xy`.
//!
//! An arc in the family `N_i` has `ord_t x = i`, `ord_t y = n + 1 - i` and
//! `ord_t z = 1`. Arcs are sampled by drawing `x` and `z` and solving for
//! `y = z^(n+1) / x`, so the defining equation holds exactly through the
//! truncation.

mod poly;
mod series;

pub use poly::Polynomial;
pub use series::Series;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::generate::rng_from_seed;
use crate::matrix::rational_string;

/// Leading coefficients; never zero.
const LEADING: [(i64, i64); 6] = [(-2, 1), (-1, 1), (-1, 2), (1, 2), (1, 1), (2, 1)];
/// Remaining coefficients.
const TAIL: [(i64, i64); 7] = [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)];

pub fn default_truncation(n: usize) -> usize {
    4 * (n + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedArc {
    pub n: usize,
    pub family: usize,
    pub x: Series,
    pub y: Series,
    pub z: Series,
}

impl TruncatedArc {
    /// Builds the arc with the given `x` and `z` (coefficient lists starting
    /// at `t^0`), solving for `y`.
    pub fn from_x_z(n: usize, family: usize, x: &[BigRational], z: &[BigRational], trunc: usize) -> Result<Self> {
        check_family(n, family, trunc)?;
        let wide = trunc + family;
        let xs = Series::from_coeffs(x.to_vec(), wide);
        let zs = Series::from_coeffs(z.to_vec(), wide);
        if xs.order() != Some(family) || zs.order() != Some(1) {
            return Err(Error::PreconditionViolated(format!(
                "family {family} needs ord x = {family} and ord z = 1"
            )));
        }
        let y = zs
            .pow(n as u32 + 1)
            .shift_down(family)
            .div_unit(&xs.shift_down(family))
            .expect("x / t^i is a unit")
            .truncate(trunc);
        Ok(Self { n, family, x: xs.truncate(trunc), y, z: zs.truncate(trunc) })
    }

    pub fn trunc(&self) -> usize {
        self.x.precision()
    }

    /// `z^(n+1) - xy` modulo `t^(N+1)`.
    pub fn residual(&self) -> Series {
        Polynomial::a_n_equation(self.n).evaluate(&self.x, &self.y, &self.z)
    }

    pub fn orders(&self) -> [Option<usize>; 3] {
        [self.x.order(), self.y.order(), self.z.order()]
    }
}

impl Serialize for TruncatedArc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            n: usize,
            family: usize,
            trunc: usize,
            x: Vec<String>,
            y: Vec<String>,
            z: Vec<String>,
        }
        let strings = |s: &Series| s.coeffs().iter().map(rational_string).collect();
        Doc {
            n: self.n,
            family: self.family,
            trunc: self.trunc(),
            x: strings(&self.x),
            y: strings(&self.y),
            z: strings(&self.z),
        }
        .serialize(s)
    }
}

fn check_family(n: usize, family: usize, trunc: usize) -> Result<()> {
    if family == 0 || family > n {
        return Err(Error::BadFamilyIndex { n, family });
    }
    if trunc < n + 2 {
        return Err(Error::TruncationTooSmall { min: n + 2, got: trunc });
    }
    Ok(())
}

fn draw<R: Rng>(rng: &mut R, set: &[(i64, i64)]) -> BigRational {
    let (p, q) = set[rng.gen_range(0..set.len())];
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn draw_series<R: Rng>(rng: &mut R, order: usize, trunc: usize) -> Vec<BigRational> {
    (0..=trunc)
        .map(|k| match k.cmp(&order) {
            std::cmp::Ordering::Less => BigRational::zero(),
            std::cmp::Ordering::Equal => draw(rng, &LEADING),
            std::cmp::Ordering::Greater => draw(rng, &TAIL),
        })
        .collect()
}

pub fn sample_arc_with<R: Rng>(rng: &mut R, n: usize, family: usize, trunc: usize) -> Result<TruncatedArc> {
    check_family(n, family, trunc)?;
    let x = draw_series(rng, family, trunc);
    let z = draw_series(rng, 1, trunc);
    TruncatedArc::from_x_z(n, family, &x, &z, trunc)
}

/// Random arc of `N_family` on A_n, deterministic in `seed`.
pub fn sample_arc(n: usize, family: usize, trunc: usize, seed: u64) -> Result<TruncatedArc> {
    sample_arc_with(&mut rng_from_seed(seed), n, family, trunc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactOrder {
    Finite(usize),
    /// `f` vanishes through the truncation.
    Unbounded,
}

impl Serialize for ContactOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ContactOrder::Finite(k) => s.serialize_u64(*k as u64),
            ContactOrder::Unbounded => s.serialize_str("Unbounded"),
        }
    }
}

pub fn contact_order(arc: &TruncatedArc, f: &Polynomial) -> Result<ContactOrder> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(match f.evaluate(&arc.x, &arc.y, &arc.z).order() {
        Some(k) => ContactOrder::Finite(k),
        None => ContactOrder::Unbounded,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderMismatch {
    pub sample: usize,
    pub x: ContactOrder,
    pub y: ContactOrder,
    pub z: ContactOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub n: usize,
    pub family: usize,
    pub samples: usize,
    pub trunc: usize,
    pub seed: u64,
    /// Expected contact orders of `x, y, z`.
    pub expected: [usize; 3],
    pub mismatches: Vec<OrderMismatch>,
    /// Samples whose defining-equation residual is not identically zero.
    pub nonzero_residuals: Vec<usize>,
    pub pass: bool,
}

/// Contact orders of `x, y, z` over `samples` arcs of `N_family`.
pub fn family_check(n: usize, family: usize, samples: usize, trunc: usize, seed: u64) -> Result<FamilyReport> {
    check_family(n, family, trunc)?;
    let mut rng = rng_from_seed(seed);
    let expected = [family, n + 1 - family, 1];
    let (fx, fy, fz) = (Polynomial::x(), Polynomial::y(), Polynomial::z());
    let mut mismatches = Vec::new();
    let mut nonzero_residuals = Vec::new();
    for sample in 0..samples {
        let arc = sample_arc_with(&mut rng, n, family, trunc)?;
        let got = [contact_order(&arc, &fx)?, contact_order(&arc, &fy)?, contact_order(&arc, &fz)?];
        if got.iter().zip(expected).any(|(g, e)| *g != ContactOrder::Finite(e)) {
            mismatches.push(OrderMismatch { sample, x: got[0], y: got[1], z: got[2] });
        }
        if !arc.residual().is_zero() {
            nonzero_residuals.push(sample);
        }
    }
    let pass = mismatches.is_empty() && nonzero_residuals.is_empty();
    Ok(FamilyReport { n, family, samples, trunc, seed, expected, mismatches, nonzero_residuals, pass })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub samples: usize,
    pub trunc: usize,
    pub seed: u64,
    /// Samples of `N_i` whose `t^i` coefficient of `x` vanishes.
    pub counterexamples_i: Vec<usize>,
    /// Samples of `N_j` whose `t^i` coefficient of `x` does not vanish.
    pub counterexamples_j: Vec<usize>,
    pub pass: bool,
}

/// The open condition `a_i ≠ 0` holds on every sample of `N_i` and fails on
/// every sample of `N_j`, so `N_j` stays outside a neighborhood of `N_i`.
pub fn separation_check(n: usize, i: usize, j: usize, samples: usize, trunc: usize, seed: u64) -> Result<SeparationReport> {
    if i >= j {
        return Err(Error::PreconditionViolated(format!("separation needs i < j, got i = {i}, j = {j}")));
    }
    check_family(n, i, trunc)?;
    check_family(n, j, trunc)?;
    let mut rng = rng_from_seed(seed);
    let mut counterexamples_i = Vec::new();
    let mut counterexamples_j = Vec::new();
    for sample in 0..samples {
        if sample_arc_with(&mut rng, n, i, trunc)?.x.coeff(i).is_zero() {
            counterexamples_i.push(sample);
        }
    }
    for sample in 0..samples {
        if !sample_arc_with(&mut rng, n, j, trunc)?.x.coeff(i).is_zero() {
            counterexamples_j.push(sample);
        }
    }
    let pass = counterexamples_i.is_empty() && counterexamples_j.is_empty();
    Ok(SeparationReport { n, i, j, samples, trunc, seed, counterexamples_i, counterexamples_j, pass })
}
