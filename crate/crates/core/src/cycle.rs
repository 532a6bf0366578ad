//! Exceptional cycles and the anti-nef cone.
//!
//! A cycle `Σ m_i E_i` is stored as its coefficient vector in vertex order.
//! Because the intersection matrix `M` of a resolution is negative definite,
//! the cone `{Z : M·Z ≤ 0}` is simplicial: it is generated by the columns of
//! `(-M)^{-1}`, which this module calls the ray basis.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedDualGraph;
use crate::matrix::{rational_string, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle(pub Vec<i64>);

impl Cycle {
    pub fn reduced(n: usize) -> Self {
        Cycle(vec![1; n])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.iter().all(|&c| c == 1)
    }

    pub fn scaled(&self, factor: i64) -> Option<Cycle> {
        self.0.iter().map(|&c| c.checked_mul(factor)).collect::<Option<Vec<_>>>().map(Cycle)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn require_negative_definite(g: &WeightedDualGraph) -> Result<()> {
    if g.intersection_matrix().is_negative_definite()? {
        Ok(())
    } else {
        Err(Error::NotNegativeDefinite)
    }
}

pub fn is_negative_definite(g: &WeightedDualGraph) -> bool {
    g.intersection_matrix().is_negative_definite().expect("intersection matrices are symmetric")
}

fn check_effective(g: &WeightedDualGraph, z: &Cycle) -> Result<()> {
    if z.len() != g.len() {
        return Err(Error::DimensionMismatch { expected: g.len(), got: z.len() });
    }
    if z.0.iter().any(|&c| c < 0) {
        return Err(Error::NotEffective);
    }
    if z.0.iter().all(|&c| c == 0) {
        return Err(Error::ZeroCycle);
    }
    Ok(())
}

/// `Z·E_k ≤ 0` for every vertex `k`.
pub fn is_anti_nef(g: &WeightedDualGraph, z: &Cycle) -> Result<bool> {
    check_effective(g, z)?;
    Ok(g.apply_intersection(&z.0).iter().all(|&x| x <= 0))
}

/// Smallest anti-nef cycle with every coefficient at least 1.
///
/// Laufer's increment: start from the reduced cycle and, while some
/// `Z·E_k > 0`, add `E_k` for the smallest such `k`.
pub fn fundamental_cycle(g: &WeightedDualGraph) -> Result<Cycle> {
    require_negative_definite(g)?;
    Ok(laufer(g))
}

fn laufer(g: &WeightedDualGraph) -> Cycle {
    let n = g.len();
    let mut z = vec![1i64; n];
    loop {
        let image = g.apply_intersection(&z);
        match image.iter().position(|&x| x > 0) {
            Some(k) => z[k] += 1,
            None => return Cycle(z),
        }
    }
}

/// `p_a(Z) = 1 + (Z·Z + K·Z)/2` with `K·E_i = w(i) - 2`.
pub fn arithmetic_genus(g: &WeightedDualGraph, z: &Cycle) -> Result<i64> {
    if z.len() != g.len() {
        return Err(Error::DimensionMismatch { expected: g.len(), got: z.len() });
    }
    let image = g.apply_intersection(&z.0);
    let self_int: i128 = image.iter().zip(&z.0).map(|(a, &b)| a * b as i128).sum();
    let canonical: i128 = g
        .weights()
        .iter()
        .zip(&z.0)
        .map(|(&w, &c)| (w as i128 - 2) * c as i128)
        .sum();
    let twice = 2 + self_int + canonical;
    debug_assert!(twice % 2 == 0, "Z·Z + K·Z is always even");
    (twice / 2).to_i64().ok_or(Error::CoefficientOverflow)
}

/// Artin's criterion: the fundamental cycle has arithmetic genus zero.
pub fn is_rational(g: &WeightedDualGraph) -> Result<bool> {
    let z = fundamental_cycle(g)?;
    Ok(arithmetic_genus(g, &z)? == 0)
}

/// Columns of `(-M)^{-1}`: column `k` is the unique cycle `Z_k` with
/// `Z_k·E_l = -δ_kl`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayBasis {
    rays: RationalMatrix,
}

impl RayBasis {
    pub fn new(g: &WeightedDualGraph) -> Result<Self> {
        require_negative_definite(g)?;
        let rays = (-g.intersection_matrix()).inverse()?;
        Ok(Self { rays })
    }

    pub fn dim(&self) -> usize {
        self.rays.dim()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.rays
    }

    /// Coefficient of `E_vertex` in ray `Z_ray`.
    pub fn entry(&self, vertex: usize, ray: usize) -> &BigRational {
        self.rays.get(vertex, ray)
    }

    pub fn ray(&self, k: usize) -> Vec<BigRational> {
        self.rays.column(k)
    }

    /// Ray `k` scaled by the lcm of its denominators.
    pub fn integer_ray(&self, k: usize) -> Result<Cycle> {
        let column = self.ray(k);
        let lcm = column.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        column
            .iter()
            .map(|q| (q.numer() * (&lcm / q.denom())).to_i64().ok_or(Error::CoefficientOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Cycle)
    }

    /// First ray column on which the coefficient at `i` is below the one at
    /// `j`; the cone is generated by the rays, so one exists iff any
    /// anti-nef cycle has `m_i < m_j`.
    pub fn witness_column(&self, i: usize, j: usize) -> Result<Option<usize>> {
        self.check_pair(i, j)?;
        Ok((0..self.dim()).find(|&k| self.entry(i, k) < self.entry(j, k)))
    }

    pub fn witness(&self, i: usize, j: usize) -> Result<Option<Cycle>> {
        match self.witness_column(i, j)? {
            Some(k) => self.integer_ray(k).map(Some),
            None => Ok(None),
        }
    }

    pub fn rows_coincide(&self, i: usize, j: usize) -> bool {
        self.rays.row(i) == self.rays.row(j)
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        let n = self.dim();
        for v in [i, j] {
            if v >= n {
                return Err(Error::DimensionMismatch { expected: n, got: v + 1 });
            }
        }
        if i == j {
            return Err(Error::SameVertex(i));
        }
        Ok(())
    }

    /// `(-M)·rays = I`, checked row by row on the graph.
    pub fn verify(&self, g: &WeightedDualGraph) -> bool {
        self.dim() == g.len()
            && (0..self.dim()).all(|k| {
                let image = apply_negated(g, &self.ray(k));
                image.iter().enumerate().all(|(l, v)| {
                    if l == k {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Every entry positive; holds for connected negative-definite graphs.
    pub fn is_strictly_positive(&self) -> bool {
        (0..self.dim()).all(|r| self.rays.row(r).iter().all(|q| q.is_positive()))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.dim()).map(|k| self.ray(k).iter().map(rational_string).collect()).collect()
    }
}

impl Serialize for RayBasis {
    /// One array of `p/q` strings per ray.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

pub fn ray_basis(g: &WeightedDualGraph) -> Result<RayBasis> {
    RayBasis::new(g)
}

/// Integer anti-nef cycle with `m_i < m_j`, if any exists.
pub fn order_cycle_witness(g: &WeightedDualGraph, i: usize, j: usize) -> Result<Option<Cycle>> {
    if i == j {
        return Err(Error::SameVertex(i));
    }
    RayBasis::new(g)?.witness(i, j)
}

/// `(-M)·x` for a rational vector.
pub(crate) fn apply_negated(g: &WeightedDualGraph, x: &[BigRational]) -> Vec<BigRational> {
    (0..g.len())
        .map(|k| {
            let mut acc = x[k].clone() * BigRational::from_integer(g.weight(k).into());
            for &nb in g.neighbors(k) {
                acc -= &x[nb];
            }
            acc
        })
        .collect()
}
