//! Finite combinatorial analogues of the Kuratowski, Hausdorff and Istratescu
//! measures, computed exactly by exhaustive search with pruning.
//!
//! Every finite set has measure zero, so these are not the measures
//! themselves: `alpha_k` is the best `k`-part diameter cover, `chi_k` the best
//! `k`-ball cover and `beta_m` the best `m`-point separation. On truncations
//! of the structured witnesses they reproduce (or converge to) the symbolic
//! values from [`crate::sets::measure_exact`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::lp::{lp_norm_of, Frame, SpaceSpec, SparseVector};
use crate::sets::FinitePointSet;

/// Hard ceiling on [`OracleBudget::max_points`]; subset caches are indexed by
/// `u16`-sized bit masks.
pub const MAX_ORACLE_POINTS: usize = 16;

/// Size limits for the exhaustive oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OracleBudget {
    /// Largest point set accepted.
    pub max_points: usize,
    /// Largest number of cover parts enumerated.
    pub max_parts: usize,
    /// Target accuracy of each Chebyshev radius.
    pub solver_tolerance: f64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_points: 12,
            max_parts: 4,
            solver_tolerance: 1e-8,
        }
    }
}

impl OracleBudget {
    /// Checks the budget's own invariants.
    pub fn validate(&self) -> Result<()> {
        if self.max_points == 0 || self.max_parts == 0 || !(self.solver_tolerance > 0.0) {
            return Err(domain!("oracle budget fields must be positive"));
        }
        if self.max_points > MAX_ORACLE_POINTS {
            return Err(Error::Budget {
                what: "max_points",
                got: self.max_points,
                limit: MAX_ORACLE_POINTS,
            });
        }
        Ok(())
    }

    fn admit(&self, points: usize, parts: Option<usize>) -> Result<()> {
        self.validate()?;
        if points > self.max_points {
            return Err(Error::Budget {
                what: "point count",
                got: points,
                limit: self.max_points,
            });
        }
        if let Some(k) = parts {
            if k > self.max_parts {
                return Err(Error::Budget {
                    what: "part count",
                    got: k,
                    limit: self.max_parts,
                });
            }
        }
        Ok(())
    }
}

fn distance_matrix(p: &FinitePointSet, space: &SpaceSpec) -> Vec<Vec<f64>> {
    let pts = p.points();
    let n = pts.len();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = pts[i].lp_distance(&pts[j], space.p);
            d[i][j] = x;
            d[j][i] = x;
        }
    }
    d
}

/// Smallest achievable maximum part diameter over partitions of `p` into at
/// most `k` parts.
pub fn alpha_k(
    p: &FinitePointSet,
    k: usize,
    space: &SpaceSpec,
    budget: &OracleBudget,
) -> Result<f64> {
    if k == 0 {
        return Err(domain!("alpha_k needs at least one part"));
    }
    let n = p.len();
    if k >= n {
        return Ok(0.0);
    }
    budget.admit(n, Some(k))?;
    let d = distance_matrix(p, space);
    let whole = d.iter().flatten().copied().fold(0.0, f64::max);
    let mut search = DiameterSearch {
        d: &d,
        k,
        parts: Vec::with_capacity(k),
        best: whole,
    };
    search.assign(0, 0.0);
    Ok(search.best)
}

struct DiameterSearch<'a> {
    d: &'a [Vec<f64>],
    k: usize,
    parts: Vec<(Vec<usize>, f64)>,
    best: f64,
}

impl DiameterSearch<'_> {
    fn assign(&mut self, i: usize, worst: f64) {
        if i == self.d.len() {
            if worst < self.best {
                self.best = worst;
            }
            return;
        }
        for j in 0..self.parts.len() {
            let grown = self.parts[j]
                .0
                .iter()
                .map(|&q| self.d[i][q])
                .fold(self.parts[j].1, f64::max);
            let next = worst.max(grown);
            if next >= self.best {
                continue;
            }
            let old = self.parts[j].1;
            self.parts[j].0.push(i);
            self.parts[j].1 = grown;
            self.assign(i + 1, next);
            self.parts[j].0.pop();
            self.parts[j].1 = old;
        }
        if self.parts.len() < self.k {
            self.parts.push((vec![i], 0.0));
            self.assign(i + 1, worst);
            self.parts.pop();
        }
    }
}

/// Smallest achievable maximum Chebyshev radius over partitions of `p` into at
/// most `k` groups, with ball centers anywhere in the space.
pub fn chi_k(
    p: &FinitePointSet,
    k: usize,
    space: &SpaceSpec,
    budget: &OracleBudget,
) -> Result<f64> {
    if k == 0 {
        return Err(domain!("chi_k needs at least one ball"));
    }
    let n = p.len();
    if k >= n {
        return Ok(0.0);
    }
    budget.admit(n, Some(k))?;
    let d = distance_matrix(p, space);
    let frame = Frame::new(p.points());
    let rows = frame.dense_rows(p.points());
    let mut search = BallSearch {
        d: &d,
        rows: &rows,
        p: space.exponent(),
        tol: budget.solver_tolerance,
        k,
        cache: vec![f64::NAN; 1 << n],
        groups: Vec::with_capacity(k),
        best: f64::INFINITY,
    };
    search.best = search.radius((1u32 << n) - 1)?;
    search.assign(0, 0.0)?;
    Ok(search.best)
}

struct BallSearch<'a> {
    d: &'a [Vec<f64>],
    rows: &'a [Vec<f64>],
    p: f64,
    tol: f64,
    k: usize,
    cache: Vec<f64>,
    groups: Vec<(u32, f64)>,
    best: f64,
}

impl BallSearch<'_> {
    fn radius(&mut self, mask: u32) -> Result<f64> {
        let cached = self.cache[mask as usize];
        if !cached.is_nan() {
            return Ok(cached);
        }
        let members: Vec<&[f64]> = (0..self.rows.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.rows[i].as_slice())
            .collect();
        let r = chebyshev_dense(&members, self.p, self.tol)?.1;
        self.cache[mask as usize] = r;
        Ok(r)
    }

    fn assign(&mut self, i: usize, worst: f64) -> Result<()> {
        if i == self.d.len() {
            if worst < self.best {
                self.best = worst;
            }
            return Ok(());
        }
        for j in 0..self.groups.len() {
            let (mask, old) = self.groups[j];
            // Half the diameter is a free lower bound on the radius.
            let half_diam = (0..self.d.len())
                .filter(|q| mask & (1 << q) != 0)
                .map(|q| self.d[i][q] / 2.0)
                .fold(old, f64::max);
            if worst.max(half_diam) >= self.best {
                continue;
            }
            let grown = self.radius(mask | (1 << i))?;
            let next = worst.max(grown);
            if next >= self.best {
                continue;
            }
            self.groups[j] = (mask | (1 << i), grown);
            self.assign(i + 1, next)?;
            self.groups[j] = (mask, old);
        }
        if self.groups.len() < self.k {
            self.groups.push((1 << i, 0.0));
            self.assign(i + 1, worst)?;
            self.groups.pop();
        }
        Ok(())
    }
}

/// Largest achievable minimum pairwise distance over `m`-point subsets of `p`.
pub fn beta_m(
    p: &FinitePointSet,
    m: usize,
    space: &SpaceSpec,
    budget: &OracleBudget,
) -> Result<f64> {
    let n = p.len();
    if m < 2 || m > n {
        return Err(domain!("beta_m needs 2 <= m <= |P| = {n}, got m = {m}"));
    }
    budget.admit(n, None)?;
    let d = distance_matrix(p, space);
    let mut search = SeparationSearch {
        d: &d,
        m,
        chosen: Vec::with_capacity(m),
        best: f64::NEG_INFINITY,
    };
    search.extend(0, f64::INFINITY);
    Ok(search.best)
}

struct SeparationSearch<'a> {
    d: &'a [Vec<f64>],
    m: usize,
    chosen: Vec<usize>,
    best: f64,
}

impl SeparationSearch<'_> {
    fn extend(&mut self, from: usize, sep: f64) {
        if self.chosen.len() == self.m {
            if sep > self.best {
                self.best = sep;
            }
            return;
        }
        let n = self.d.len();
        let need = self.m - self.chosen.len();
        for i in from..=n - need {
            let next = self
                .chosen
                .iter()
                .map(|&q| self.d[i][q])
                .fold(sep, f64::min);
            if next <= self.best {
                continue;
            }
            self.chosen.push(i);
            self.extend(i + 1, next);
            self.chosen.pop();
        }
    }
}

/// Center and radius of the smallest `l_p` ball containing `p`.
///
/// The returned radius is attained by the returned center and lies within
/// `tol` of the optimum; the certificate is a dual lower bound, which is never
/// below half the diameter of `p`.
pub fn chebyshev_radius(
    p: &FinitePointSet,
    space: &SpaceSpec,
    tol: f64,
) -> Result<(SparseVector, f64)> {
    if !(tol > 0.0) {
        return Err(domain!("tolerance must be positive, got {tol}"));
    }
    let frame = Frame::new(p.points());
    let rows = frame.dense_rows(p.points());
    let members: Vec<&[f64]> = rows.iter().map(Vec::as_slice).collect();
    let (center, radius) = chebyshev_dense(&members, space.exponent(), tol)?;
    Ok((frame.to_sparse(&center), radius))
}

const CHEBYSHEV_MAX_ITER: usize = 20_000;

/// Pairwise Frank-Wolfe on the concave dual
/// `g(w) = min_c sum_i w_i ||x_i - c||_p^p` over the simplex.
///
/// For fixed weights the inner problem separates by coordinate. Its value is a
/// lower bound on `R^p` and its minimizer a feasible center, so every iterate
/// carries a certified bracket. The duality gap `max_i f_i - g` is exactly the
/// Frank-Wolfe gap.
pub(crate) fn chebyshev_dense(points: &[&[f64]], p: f64, tol: f64) -> Result<(Vec<f64>, f64)> {
    let n = points.len();
    if n == 0 {
        return Err(domain!("chebyshev_radius needs at least one point"));
    }
    if n == 1 {
        return Ok((points[0].to_vec(), 0.0));
    }
    let dim = points[0].len();
    let mut w = vec![1.0 / n as f64; n];
    let mut center = vec![0.0; dim];
    let mut f = vec![0.0; n];
    let mut best: (f64, f64, Vec<f64>) = (diameter(points, p) / 2.0, f64::INFINITY, Vec::new());

    for iter in 0..CHEBYSHEV_MAX_ITER {
        weighted_center(points, &w, p, &mut center);
        spread(points, &center, p, &mut f);
        let dual: f64 = w.iter().zip(&f).map(|(a, b)| a * b).sum();
        let (s, fmax) = argmax(&f);
        let upper = libm::pow(fmax, 1.0 / p);
        let lower = libm::pow(dual.max(0.0), 1.0 / p);
        if upper < best.1 {
            best = (best.0.max(lower), upper, center.clone());
        } else {
            best.0 = best.0.max(lower);
        }
        if best.1 - best.0 <= tol {
            return Ok((best.2, best.1));
        }
        let v = (0..n)
            .filter(|&i| w[i] > 0.0)
            .min_by(|&a, &b| f[a].total_cmp(&f[b]))
            .expect("weights sum to one");
        if s == v || f[s] <= f[v] {
            // No ascent direction left at floating point resolution.
            return Err(Error::NonConvergence {
                solver: "chebyshev_radius",
                iterations: iter,
                lower: best.0,
                upper: best.1,
            });
        }
        let step = line_search(points, &w, s, v, p, &mut center);
        w[s] += step;
        w[v] -= step;
        if w[v] < 1e-300 {
            w[v] = 0.0;
        }
    }
    Err(Error::NonConvergence {
        solver: "chebyshev_radius",
        iterations: CHEBYSHEV_MAX_ITER,
        lower: best.0,
        upper: best.1,
    })
}

fn argmax(f: &[f64]) -> (usize, f64) {
    f.iter().copied().enumerate().fold(
        (0, f64::NEG_INFINITY),
        |acc, (i, x)| if x > acc.1 { (i, x) } else { acc },
    )
}

/// `f_i = ||x_i - c||_p^p`.
fn spread(points: &[&[f64]], center: &[f64], p: f64, f: &mut [f64]) {
    for (fi, x) in f.iter_mut().zip(points) {
        *fi = x
            .iter()
            .zip(center)
            .map(|(a, c)| libm::pow((a - c).abs(), p))
            .sum();
    }
}

/// Per coordinate, the minimizer of `sum_i w_i |x_ij - c|^p`.
fn weighted_center(points: &[&[f64]], w: &[f64], p: f64, center: &mut [f64]) {
    for (j, c) in center.iter_mut().enumerate() {
        *c = weighted_p_mean(points.iter().zip(w).map(|(x, &wi)| (x[j], wi)), p);
    }
}

/// Minimizer of `sum_i w_i |a_i - c|^p`: the root of the increasing function
/// `c -> sum_i w_i sign(c - a_i) |c - a_i|^{p-1}`, found by safeguarded
/// Newton inside the bracket `[min a_i, max a_i]`.
fn weighted_p_mean<I>(terms: I, p: f64) -> f64
where
    I: Iterator<Item = (f64, f64)> + Clone,
{
    if p == 2.0 {
        return terms.map(|(a, wi)| a * wi).sum();
    }
    let (mut lo, mut hi) = terms
        .clone()
        .filter(|&(_, wi)| wi > 0.0)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), (a, _)| {
            (l.min(a), h.max(a))
        });
    if !(lo < hi) {
        return lo;
    }
    let slope = |c: f64| -> (f64, f64) {
        terms.clone().fold((0.0, 0.0), |(g, h), (a, wi)| {
            let d = c - a;
            let ad = d.abs();
            (
                g + wi * libm::copysign(libm::pow(ad, p - 1.0), d),
                h + wi * (p - 1.0) * libm::pow(ad, p - 2.0),
            )
        })
    };
    let mut c = terms
        .clone()
        .map(|(a, wi)| a * wi)
        .sum::<f64>()
        .clamp(lo, hi);
    for _ in 0..200 {
        let (g, h) = slope(c);
        if g == 0.0 {
            return c;
        }
        if g > 0.0 {
            hi = c;
        } else {
            lo = c;
        }
        let newton = c - g / h;
        let next = if h > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - c).abs() <= 1e-15 * (1.0 + c.abs()) || hi - lo <= 1e-15 * (1.0 + c.abs()) {
            return next;
        }
        c = next;
    }
    c
}

/// Step `t` in `[0, w_v]` maximizing `g(w + t (e_s - e_v))`.
///
/// The derivative is `f_s - f_v` evaluated at the inner minimizer, which is
/// decreasing in `t`; its root is found by the Illinois variant of regula
/// falsi.
fn line_search(
    points: &[&[f64]],
    w: &[f64],
    s: usize,
    v: usize,
    p: f64,
    center: &mut [f64],
) -> f64 {
    let cap = w[v];
    let mut trial = w.to_vec();
    let mut slope_at = |t: f64, center: &mut [f64]| -> f64 {
        trial[s] = w[s] + t;
        trial[v] = w[v] - t;
        weighted_center(points, &trial, p, center);
        let fs: f64 = points[s]
            .iter()
            .zip(center.iter())
            .map(|(a, c)| libm::pow((a - c).abs(), p))
            .sum();
        let fv: f64 = points[v]
            .iter()
            .zip(center.iter())
            .map(|(a, c)| libm::pow((a - c).abs(), p))
            .sum();
        fs - fv
    };
    let (mut a, mut fa) = (0.0, slope_at(0.0, center));
    let (mut b, mut fb) = (cap, slope_at(cap, center));
    if fb >= 0.0 {
        return cap;
    }
    if fa <= 0.0 {
        return 0.0;
    }
    let mut side = 0i8;
    for _ in 0..100 {
        let t = (a * fb - b * fa) / (fb - fa);
        let ft = slope_at(t, center);
        if ft == 0.0 || (b - a) <= 1e-16 * cap.max(1e-300) {
            return t;
        }
        if ft > 0.0 {
            a = t;
            fa = ft;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        } else {
            b = t;
            fb = ft;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        }
        if (b - a) <= 1e-15 * cap {
            break;
        }
    }
    0.5 * (a + b)
}

/// Largest pairwise distance of a dense point list.
fn diameter(points: &[&[f64]], p: f64) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = lp_norm_of(
                points[i].iter().zip(points[j].iter()).map(|(a, b)| a - b),
                p,
            );
            worst = worst.max(d);
        }
    }
    worst
}
