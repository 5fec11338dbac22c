//! Finitely supported points of `l_p`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{domain, Result};

/// Default absolute tolerance for floating point comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// An `l_p` exponent, guaranteed to satisfy `1 < p < inf`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "f64", into = "f64"))]
pub struct Exponent(f64);

impl Exponent {
    /// Validates `p`.
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p > 1.0 {
            Ok(Exponent(p))
        } else {
            Err(domain!("exponent p must satisfy 1 < p < inf, got {p}"))
        }
    }

    /// The exponent as a float.
    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// The conjugate exponent `q` with `1/p + 1/q = 1`.
    #[inline]
    pub fn conjugate(self) -> f64 {
        self.0 / (self.0 - 1.0)
    }

    /// `2^{1/p}`, the distance between two distinct unit basis vectors.
    #[inline]
    pub fn basis_gap(self) -> f64 {
        libm::pow(2.0, 1.0 / self.0)
    }
}

impl TryFrom<f64> for Exponent {
    type Error = crate::Error;

    fn try_from(p: f64) -> Result<Self> {
        Exponent::new(p)
    }
}

impl From<Exponent> for f64 {
    fn from(p: Exponent) -> f64 {
        p.0
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The ambient space `l_p` together with the numeric settings shared by every
/// computation performed in it.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpaceSpec {
    /// The exponent.
    pub p: Exponent,
    /// Cap on the number of tail directions a finite realization may use.
    pub truncation_dim: usize,
    /// Absolute comparison tolerance.
    pub tol: f64,
}

impl SpaceSpec {
    /// `l_p` with the default tolerance.
    pub fn new(p: f64, truncation_dim: usize) -> Result<Self> {
        let p = Exponent::new(p)?;
        if truncation_dim < 2 {
            return Err(domain!(
                "truncation_dim must be at least 2, got {truncation_dim}"
            ));
        }
        Ok(SpaceSpec {
            p,
            truncation_dim,
            tol: DEFAULT_TOL,
        })
    }

    /// Replaces the comparison tolerance.
    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(domain!("tolerance must be positive, got {tol}"));
        }
        self.tol = tol;
        Ok(self)
    }

    /// Shorthand for `self.p.get()`.
    #[inline]
    pub fn exponent(&self) -> f64 {
        self.p.get()
    }

    /// Closed-form moduli are only available for `p >= 2`.
    pub fn require_closed_forms(&self) -> Result<()> {
        if self.p.get() >= 2.0 {
            Ok(())
        } else {
            Err(domain!("closed forms require p >= 2, got p = {}", self.p))
        }
    }
}

/// `(sum |x_i|^p)^{1/p}`, rescaled by the largest magnitude so that tiny or
/// huge coordinates do not under- or overflow.
pub(crate) fn lp_norm_of<I>(values: I, p: f64) -> f64
where
    I: Iterator<Item = f64> + Clone,
{
    let scale = values.clone().fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    let sum: f64 = values.map(|x| libm::pow(x.abs() / scale, p)).sum();
    scale * libm::pow(sum, 1.0 / p)
}

/// A point of `l_p` with finitely many nonzero coordinates.
///
/// Coordinates are indexed from 1. Zero entries are never stored, so two
/// vectors are equal exactly when their stored entries are.
#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SparseVector {
    entries: BTreeMap<usize, f64>,
}

impl SparseVector {
    /// The zero vector.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit vector `e_n`.
    ///
    /// # Panics
    ///
    /// If `n == 0`; coordinates start at 1.
    pub fn basis(n: usize) -> Self {
        let mut v = Self::zero();
        v.set(n, 1.0);
        v
    }

    /// Builds a vector from a dense coordinate list starting at index 1.
    pub fn from_dense(values: &[f64]) -> Self {
        let mut v = Self::zero();
        for (i, &x) in values.iter().enumerate() {
            v.set(i + 1, x);
        }
        v
    }

    /// Builds a vector from `(index, value)` pairs; repeated indices add up.
    pub fn from_entries<I: IntoIterator<Item = (usize, f64)>>(entries: I) -> Self {
        let mut v = Self::zero();
        for (i, x) in entries {
            let cur = v.get(i);
            v.set(i, cur + x);
        }
        v
    }

    /// Coordinate `i` (zero when not stored).
    pub fn get(&self, i: usize) -> f64 {
        self.entries.get(&i).copied().unwrap_or(0.0)
    }

    /// Sets coordinate `i`, dropping it when `x == 0`.
    ///
    /// # Panics
    ///
    /// If `i == 0`.
    pub fn set(&mut self, i: usize, x: f64) {
        assert!(i >= 1, "coordinates are indexed from 1");
        if x == 0.0 {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, x);
        }
    }

    /// Stored `(index, value)` pairs in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + Clone + '_ {
        self.entries.iter().map(|(&i, &x)| (i, x))
    }

    /// Number of stored entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// True for the zero vector.
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest stored index, or 0 for the zero vector.
    pub fn max_index(&self) -> usize {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    /// Dense coordinates `1..=max_index`.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.max_index()];
        for (i, x) in self.iter() {
            out[i - 1] = x;
        }
        out
    }

    /// The `l_p` norm.
    pub fn lp_norm(&self, p: Exponent) -> f64 {
        lp_norm_of(self.entries.values().copied(), p.get())
    }

    /// The `l_p` distance to `other`.
    pub fn lp_distance(&self, other: &SparseVector, p: Exponent) -> f64 {
        (self - other).lp_norm(p)
    }

    /// Duality pairing `sum_i self_i * other_i`.
    pub fn dot(&self, other: &SparseVector) -> f64 {
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().map(|(i, x)| x * large.get(i)).sum()
    }

    /// `k * self`.
    pub fn scaled(&self, k: f64) -> SparseVector {
        if k == 0.0 {
            return Self::zero();
        }
        SparseVector {
            entries: self
                .entries
                .iter()
                .map(|(&i, &x)| (i, x * k))
                .filter(|&(_, x)| x != 0.0)
                .collect(),
        }
    }

    /// Maximum absolute coordinate difference.
    pub fn sup_distance(&self, other: &SparseVector) -> f64 {
        let mut worst = 0.0_f64;
        for (i, x) in self.iter() {
            worst = worst.max((x - other.get(i)).abs());
        }
        for (i, y) in other.iter() {
            if !self.entries.contains_key(&i) {
                worst = worst.max(y.abs());
            }
        }
        worst
    }

    /// Coordinatewise equality within `tol`.
    pub fn approx_eq(&self, other: &SparseVector, tol: f64) -> bool {
        self.sup_distance(other) <= tol
    }

    fn combine(&self, other: &SparseVector, sign: f64) -> SparseVector {
        let mut out = self.clone();
        for (i, y) in other.iter() {
            let x = out.get(i);
            out.set(i, x + sign * y);
        }
        out
    }
}

impl Add for &SparseVector {
    type Output = SparseVector;

    fn add(self, rhs: &SparseVector) -> SparseVector {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &SparseVector {
    type Output = SparseVector;

    fn sub(self, rhs: &SparseVector) -> SparseVector {
        self.combine(rhs, -1.0)
    }
}

impl Neg for &SparseVector {
    type Output = SparseVector;

    fn neg(self) -> SparseVector {
        self.scaled(-1.0)
    }
}

impl Mul<&SparseVector> for f64 {
    type Output = SparseVector;

    fn mul(self, rhs: &SparseVector) -> SparseVector {
        rhs.scaled(self)
    }
}

impl FromIterator<(usize, f64)> for SparseVector {
    fn from_iter<I: IntoIterator<Item = (usize, f64)>>(iter: I) -> Self {
        Self::from_entries(iter)
    }
}

/// `||v||_p`, rejecting `p <= 1`.
pub fn norm(v: &SparseVector, p: f64) -> Result<f64> {
    Ok(v.lp_norm(Exponent::new(p)?))
}

/// `||u - v||_p`, rejecting `p <= 1`.
pub fn distance(u: &SparseVector, v: &SparseVector, p: f64) -> Result<f64> {
    Ok(u.lp_distance(v, Exponent::new(p)?))
}

/// Maps the union support of a family of sparse vectors onto dense columns.
///
/// The numeric solvers work on dense coordinates; coordinates outside every
/// point's support never matter for hull distances or Chebyshev centers.
#[derive(Debug, Clone)]
pub(crate) struct Frame {
    indices: Vec<usize>,
}

impl Frame {
    pub(crate) fn new<'a, I: IntoIterator<Item = &'a SparseVector>>(points: I) -> Self {
        let mut indices: Vec<usize> = points
            .into_iter()
            .flat_map(|v| v.entries.keys().copied())
            .collect();
        indices.sort_unstable();
        indices.dedup();
        Frame { indices }
    }

    pub(crate) fn dim(&self) -> usize {
        self.indices.len()
    }

    /// Sparse rows `(column, value)` for each point.
    pub(crate) fn sparse_rows(&self, points: &[SparseVector]) -> Vec<Vec<(usize, f64)>> {
        points
            .iter()
            .map(|v| {
                v.iter()
                    .map(|(i, x)| (self.column(i), x))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    pub(crate) fn dense_rows(&self, points: &[SparseVector]) -> Vec<Vec<f64>> {
        points
            .iter()
            .map(|v| {
                let mut row = alloc::vec![0.0; self.dim()];
                for (i, x) in v.iter() {
                    row[self.column(i)] = x;
                }
                row
            })
            .collect()
    }

    fn column(&self, index: usize) -> usize {
        self.indices
            .binary_search(&index)
            .expect("index belongs to the frame")
    }

    pub(crate) fn to_sparse(&self, dense: &[f64]) -> SparseVector {
        self.indices
            .iter()
            .zip(dense)
            .map(|(&i, &x)| (i, x))
            .collect()
    }
}
