//! Distance from the origin to the convex hull of a finite set in `l_p`.
//!
//! The primal problem is `min ||sum_i w_i x_i||_p` over the simplex. It is
//! solved by away-step Frank-Wolfe on `||y||_p^p`, whose linear minimization
//! oracle over the simplex is a vertex pick. Any functional `f` in the dual
//! unit ball certifies `d(0, co P) >= min_i <f, x_i>`, and the normalized
//! gradient of the norm at the current primal point is such a functional.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::lp::{lp_norm_of, Frame, SpaceSpec, SparseVector};
use crate::sets::FinitePointSet;

/// Iteration cap of [`hull_distance`].
pub const HULL_MAX_ITER: usize = 50_000;

/// Primal value, primal point and dual certificate of a hull distance.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HullDistanceResult {
    /// `||primal_point||_p`, an upper bound on the distance.
    pub value: f64,
    /// Hull point attaining `value`.
    pub primal_point: SparseVector,
    /// Functional with `||f||_q <= 1` whose worst pairing bounds the distance
    /// from below.
    pub dual_functional: SparseVector,
    /// `max(0, min_i <dual_functional, x_i>)`; the zero functional is
    /// reported when nothing beats 0.
    pub dual_bound: f64,
    /// `value - dual_bound`.
    pub gap: f64,
    /// Frank-Wolfe iterations used.
    pub iterations: usize,
}

/// Distance from the origin to `co(P)`, certified to within `tol`.
///
/// When the origin is (numerically) in the hull, i.e. the primal norm drops
/// below `tol`, the value is reported with `gap` equal to that norm.
pub fn hull_distance(
    p: &FinitePointSet,
    space: &SpaceSpec,
    tol: f64,
) -> Result<HullDistanceResult> {
    if !(tol > 0.0) {
        return Err(domain!("tolerance must be positive, got {tol}"));
    }
    let frame = Frame::new(p.points());
    let rows = frame.sparse_rows(p.points());
    let mut solver = AwayStep::new(&rows, frame.dim(), space.exponent());
    if let Outcome::Stalled = solver.run(tol, HULL_MAX_ITER) {
        // Near the origin the p-objective is too flat for Frank-Wolfe, and
        // badly conditioned corners slow it down anywhere. Wolfe's active-set
        // method settles the Euclidean problem exactly; its minimizer has the
        // same zero set and seeds a restart on the p-objective.
        let Some(weights) = min_norm_weights(&rows, frame.dim()) else {
            return Err(stalled(&solver));
        };
        let mut restart = AwayStep::new(&rows, frame.dim(), space.exponent());
        restart.weights = weights;
        restart.iterations = solver.iterations;
        restart.recompute();
        restart.seed_dual(&restart.y.clone());
        if let Outcome::Stalled = restart.run(tol, HULL_MAX_ITER) {
            if restart.value() - restart.best_dual.max(0.0) > tol {
                return Err(stalled(&restart));
            }
        }
        solver = restart;
    }
    Ok(solver.finish(&frame))
}

fn stalled(s: &AwayStep<'_>) -> Error {
    Error::NonConvergence {
        solver: "hull_distance",
        iterations: s.iterations,
        lower: s.best_dual.max(0.0),
        upper: s.value(),
    }
}

/// `min_i <f, x_i>` after scaling `f` onto the dual unit sphere. Never exceeds
/// the true hull distance.
pub fn dual_bound(f: &SparseVector, p: &FinitePointSet, space: &SpaceSpec) -> Result<f64> {
    let q = space.p.conjugate();
    let fq = f.lp_norm(crate::lp::Exponent::new(q)?);
    if fq == 0.0 {
        return Err(domain!("dual functional must be nonzero"));
    }
    Ok(p.points()
        .iter()
        .map(|x| f.dot(x) / fq)
        .fold(f64::INFINITY, f64::min))
}

enum Outcome {
    Done,
    Stalled,
}

struct AwayStep<'a> {
    rows: &'a [Vec<(usize, f64)>],
    p: f64,
    weights: Vec<f64>,
    y: Vec<f64>,
    scores: Vec<f64>,
    functional: Vec<f64>,
    best_dual: f64,
    best_functional: Vec<f64>,
    iterations: usize,
}

impl<'a> AwayStep<'a> {
    fn new(rows: &'a [Vec<(usize, f64)>], dim: usize, p: f64) -> Self {
        let n = rows.len();
        let mut s = AwayStep {
            rows,
            p,
            weights: vec![1.0 / n as f64; n],
            y: vec![0.0; dim],
            scores: vec![0.0; n],
            functional: vec![0.0; dim],
            best_dual: f64::NEG_INFINITY,
            best_functional: vec![0.0; dim],
            iterations: 0,
        };
        s.recompute();
        s
    }

    fn recompute(&mut self) {
        self.y.iter_mut().for_each(|v| *v = 0.0);
        for (row, &w) in self.rows.iter().zip(&self.weights) {
            for &(j, x) in row {
                self.y[j] += w * x;
            }
        }
    }

    fn value(&self) -> f64 {
        lp_norm_of(self.y.iter().copied(), self.p)
    }

    /// Refreshes the normalized gradient and the pairings `<f, x_i>`; returns
    /// the current primal value.
    fn refresh(&mut self) -> f64 {
        let value = self.value();
        if value > 0.0 {
            let p = self.p;
            for (f, &y) in self.functional.iter_mut().zip(&self.y) {
                *f = libm::copysign(libm::pow(y.abs() / value, p - 1.0), y);
            }
        } else {
            self.functional.iter_mut().for_each(|f| *f = 0.0);
        }
        for (score, row) in self.scores.iter_mut().zip(self.rows) {
            *score = row.iter().map(|&(j, x)| self.functional[j] * x).sum();
        }
        let dual = self.scores.iter().copied().fold(f64::INFINITY, f64::min);
        if value > 0.0 && dual > self.best_dual {
            self.best_dual = dual;
            self.best_functional.clone_from(&self.functional);
        }
        value
    }

    fn run(&mut self, tol: f64, max_iter: usize) -> Outcome {
        let n = self.rows.len();
        for _ in 0..max_iter {
            let value = self.refresh();
            if value - self.best_dual.max(0.0) <= tol {
                return Outcome::Done;
            }
            let toward = argmin(&self.scores, |_| true);
            let away = argmax(&self.scores, |i| self.weights[i] > 0.0);
            let fw_gap = value - self.scores[toward];
            let away_gap = self.scores[away] - value;
            let mut direction = vec![0.0; self.y.len()];
            let (vertex, limit, forward) = if fw_gap >= away_gap || self.weights[away] >= 1.0 {
                for (d, &y) in direction.iter_mut().zip(&self.y) {
                    *d = -y;
                }
                for &(j, x) in &self.rows[toward] {
                    direction[j] += x;
                }
                (toward, 1.0, true)
            } else {
                direction.clone_from(&self.y);
                for &(j, x) in &self.rows[away] {
                    direction[j] -= x;
                }
                let w = self.weights[away];
                (away, w / (1.0 - w), false)
            };
            let step = line_search(&self.y, &direction, self.p, limit);
            if step <= 0.0 {
                return Outcome::Stalled;
            }
            if forward {
                self.weights.iter_mut().for_each(|w| *w *= 1.0 - step);
                self.weights[vertex] += step;
            } else {
                self.weights.iter_mut().for_each(|w| *w *= 1.0 + step);
                self.weights[vertex] -= step;
                if step >= limit || self.weights[vertex] < 1e-300 {
                    self.weights[vertex] = 0.0;
                }
            }
            self.iterations += 1;
            if self.iterations.is_multiple_of(64) || n <= 1 {
                let total: f64 = self.weights.iter().sum();
                self.weights.iter_mut().for_each(|w| *w /= total);
                self.recompute();
            } else {
                for (y, d) in self.y.iter_mut().zip(&direction) {
                    *y += step * d;
                }
            }
        }
        Outcome::Stalled
    }

    /// Offers `f` (any nonzero functional) as a dual candidate.
    fn seed_dual(&mut self, f: &[f64]) {
        let q = self.p / (self.p - 1.0);
        let fq = lp_norm_of(f.iter().copied(), q);
        if fq == 0.0 {
            return;
        }
        let dual = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&(j, x)| f[j] * x).sum::<f64>() / fq)
            .fold(f64::INFINITY, f64::min);
        if dual > self.best_dual {
            self.best_dual = dual;
            self.best_functional = f.iter().map(|v| v / fq).collect();
        }
    }

    fn finish(mut self, frame: &Frame) -> HullDistanceResult {
        let value = self.refresh();
        // The zero functional certifies d >= 0, so negative pairings (origin
        // inside the hull) never weaken the bound below 0. Weak duality holds
        // exactly in real arithmetic; clamp rounding.
        let (dual_functional, dual_bound) = if self.best_dual > 0.0 {
            (
                frame.to_sparse(&self.best_functional),
                self.best_dual.min(value),
            )
        } else {
            (SparseVector::zero(), 0.0)
        };
        HullDistanceResult {
            value,
            primal_point: frame.to_sparse(&self.y),
            dual_functional,
            dual_bound,
            gap: value - dual_bound,
            iterations: self.iterations,
        }
    }
}

/// Wolfe's minimum-norm-point method, Euclidean norm: convex weights of the
/// point of `co(rows)` closest to the origin. `None` if it fails to settle.
fn min_norm_weights(rows: &[Vec<(usize, f64)>], dim: usize) -> Option<Vec<f64>> {
    let n = rows.len();
    let dense: Vec<Vec<f64>> = rows
        .iter()
        .map(|row| {
            let mut v = vec![0.0; dim];
            row.iter().for_each(|&(j, x)| v[j] = x);
            v
        })
        .collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let scale = dense
        .iter()
        .map(|v| dot(v, v))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let eps = 1e-14 * scale;

    let first =
        (0..n).min_by(|&a, &b| dot(&dense[a], &dense[a]).total_cmp(&dot(&dense[b], &dense[b])))?;
    let mut corral = vec![first];
    let mut lambda = vec![1.0];
    let combine = |corral: &[usize], lambda: &[f64]| {
        let mut x = vec![0.0; dim];
        for (&i, &l) in corral.iter().zip(lambda) {
            x.iter_mut().zip(&dense[i]).for_each(|(xv, d)| *xv += l * d);
        }
        x
    };
    let mut x = dense[first].clone();
    for _ in 0..(50 * n + 100) {
        let xx = dot(&x, &x);
        if xx <= eps * 1e-8 {
            break;
        }
        let j = (0..n).min_by(|&a, &b| dot(&x, &dense[a]).total_cmp(&dot(&x, &dense[b])))?;
        if xx - dot(&x, &dense[j]) <= eps || corral.contains(&j) {
            break;
        }
        corral.push(j);
        lambda.push(0.0);
        loop {
            let alpha = affine_minimizer(&corral, &dense)?;
            if alpha.iter().all(|&a| a > 1e-15) {
                lambda = alpha;
                break;
            }
            let theta = lambda
                .iter()
                .zip(&alpha)
                .filter(|(_, &a)| a <= 1e-15)
                .map(|(&l, &a)| if l - a > 0.0 { l / (l - a) } else { 0.0 })
                .fold(1.0, f64::min);
            for (l, a) in lambda.iter_mut().zip(&alpha) {
                *l = theta * a + (1.0 - theta) * *l;
            }
            let mut k = 0;
            while k < corral.len() {
                if lambda[k] <= 1e-15 {
                    corral.remove(k);
                    lambda.remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = lambda.iter().sum();
            lambda.iter_mut().for_each(|l| *l /= total);
        }
        x = combine(&corral, &lambda);
    }
    let mut weights = vec![0.0; n];
    for (&i, &l) in corral.iter().zip(&lambda) {
        weights[i] = l;
    }
    Some(weights)
}

/// Weights `a` with `sum a = 1` minimizing `|sum a_i x_i|_2` over the affine
/// hull of the corral, from the bordered Gram system.
fn affine_minimizer(corral: &[usize], dense: &[Vec<f64>]) -> Option<Vec<f64>> {
    let m = corral.len();
    let mut a = vec![vec![0.0; m + 2]; m + 1];
    for r in 0..m {
        for c in 0..m {
            a[r][c] = dense[corral[r]]
                .iter()
                .zip(&dense[corral[c]])
                .map(|(x, y)| x * y)
                .sum();
        }
        a[r][m] = 1.0;
        a[m][r] = 1.0;
    }
    a[m][m + 1] = 1.0;
    let sol = solve(a)?;
    Some(sol[..m].to_vec())
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                let (top, bottom) = a.split_at_mut(r);
                for (x, &y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x -= f * y;
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (a[r][n] - s) / a[r][r];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn argmin(xs: &[f64], keep: impl Fn(usize) -> bool) -> usize {
    (0..xs.len())
        .filter(|&i| keep(i))
        .min_by(|&a, &b| xs[a].total_cmp(&xs[b]))
        .expect("nonempty")
}

fn argmax(xs: &[f64], keep: impl Fn(usize) -> bool) -> usize {
    (0..xs.len())
        .filter(|&i| keep(i))
        .max_by(|&a, &b| xs[a].total_cmp(&xs[b]).then(b.cmp(&a)))
        .expect("nonempty")
}

/// Minimizer over `[0, limit]` of the convex `t -> ||y + t d||_p^p`.
fn line_search(y: &[f64], d: &[f64], p: f64, limit: f64) -> f64 {
    if p == 2.0 {
        let yd: f64 = y.iter().zip(d).map(|(a, b)| a * b).sum();
        let dd: f64 = d.iter().map(|b| b * b).sum();
        if dd == 0.0 {
            return 0.0;
        }
        return (-yd / dd).clamp(0.0, limit);
    }
    let slope = |t: f64| -> f64 {
        y.iter()
            .zip(d)
            .map(|(&a, &b)| {
                let z = a + t * b;
                libm::copysign(libm::pow(z.abs(), p - 1.0), z) * b
            })
            .sum()
    };
    let (mut a, mut fa) = (0.0, slope(0.0));
    if fa >= 0.0 {
        return 0.0;
    }
    let (mut b, mut fb) = (limit, slope(limit));
    if fb <= 0.0 {
        return limit;
    }
    let mut side = 0i8;
    for _ in 0..200 {
        let t = (a * fb - b * fa) / (fb - fa);
        let ft = slope(t);
        if ft == 0.0 {
            return t;
        }
        if ft < 0.0 {
            a = t;
            fa = ft;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            b = t;
            fb = ft;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
        if b - a <= 1e-15 * limit {
            break;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn space(p: f64) -> SpaceSpec {
        SpaceSpec::new(p, 512).unwrap()
    }

    fn set(points: Vec<SparseVector>) -> FinitePointSet {
        FinitePointSet::new(points, 1e-12).unwrap()
    }

    /// Brute force over a simplex grid with `steps` subdivisions.
    fn simplex_grid_min(points: &[SparseVector], p: f64, steps: usize) -> f64 {
        fn rec(
            points: &[SparseVector],
            p: f64,
            steps: usize,
            left: usize,
            acc: &mut Vec<usize>,
            best: &mut f64,
        ) {
            if acc.len() + 1 == points.len() {
                acc.push(left);
                let y = acc
                    .iter()
                    .zip(points)
                    .fold(SparseVector::zero(), |y, (&k, x)| {
                        &y + &x.scaled(k as f64 / steps as f64)
                    });
                *best = best.min(y.lp_norm(crate::lp::Exponent::new(p).unwrap()));
                acc.pop();
                return;
            }
            for k in 0..=left {
                acc.push(k);
                rec(points, p, steps, left - k, acc, best);
                acc.pop();
            }
        }
        let mut best = f64::INFINITY;
        rec(points, p, steps, steps, &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn single_point() {
        let r = hull_distance(&set(vec![SparseVector::basis(1)]), &space(2.0), 1e-6).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.gap <= 1e-12);
    }

    #[test]
    fn two_basis_vectors() {
        let pts = vec![SparseVector::basis(1), SparseVector::basis(2)];
        let grid = simplex_grid_min(&pts, 2.0, 1000);
        let r = hull_distance(&set(pts), &space(2.0), 1e-6).unwrap();
        assert!((r.value - grid).abs() < 1e-6);
        assert!((r.value - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6);
        assert!(r.dual_bound <= r.value && r.gap <= 1e-6);
    }

    #[test]
    fn tilted_tail_family() {
        let pts: Vec<_> = (2..=5)
            .map(|n| SparseVector::from_entries([(1, 0.8), (n, 0.6)]))
            .collect();
        let grid = simplex_grid_min(&pts, 2.0, 40);
        let r = hull_distance(&set(pts), &space(2.0), 1e-6).unwrap();
        let want = (0.64_f64 + 0.36 / 4.0).sqrt();
        assert!((r.value - want).abs() < 1e-6, "{} vs {want}", r.value);
        assert!((grid - want).abs() < 1e-9);
    }

    #[test]
    fn origin_in_hull() {
        let e1 = SparseVector::basis(1);
        let r = hull_distance(&set(vec![e1.clone(), -&e1]), &space(2.0), 1e-6).unwrap();
        assert!(r.value <= 1e-6);
        assert!(r.dual_bound <= 0.0);
    }

    #[test]
    fn origin_in_hull_at_p3() {
        // The triangle (1,0), (-1,1), (-1,-1) contains the origin off-center.
        let pts = vec![
            SparseVector::from_dense(&[1.0, 0.0]),
            SparseVector::from_dense(&[-1.0, 1.0]),
            SparseVector::from_dense(&[-1.0, -1.0]),
            SparseVector::from_dense(&[0.3, 2.0]),
        ];
        let r = hull_distance(&set(pts), &space(3.0), 1e-6).unwrap();
        assert!(r.value <= 1e-6);
        assert!(r.dual_bound <= r.value);
    }

    #[test]
    fn interior_origin_has_a_zero_certificate() {
        let pts: Vec<_> = [[1.0, 0.1], [-0.7, 1.3], [-0.4, -1.1], [0.2, 0.9]]
            .iter()
            .map(|v| SparseVector::from_dense(v))
            .collect();
        for p in [2.0, 3.0, 4.0] {
            let r = hull_distance(&set(pts.clone()), &space(p), 1e-9).unwrap();
            assert!(
                r.value <= 1e-9 && r.dual_bound == 0.0 && r.gap <= 1e-9,
                "{r:?}"
            );
        }
    }

    #[test]
    fn wolfe_min_norm_point() {
        let rows = vec![vec![(0, 1.0)], vec![(1, 1.0)], vec![(0, 2.0), (1, 2.0)]];
        let w = min_norm_weights(&rows, 2).unwrap();
        assert!((w[0] - 0.5).abs() < 1e-12 && (w[1] - 0.5).abs() < 1e-12 && w[2] == 0.0);
        // Origin on an edge of the hull: (1,0) and (-1,0) with (0,1) above.
        let rows = vec![vec![(0, 1.0)], vec![(0, -1.0)], vec![(1, 1.0)]];
        let w = min_norm_weights(&rows, 2).unwrap();
        let y = [w[0] - w[1], w[2]];
        assert!(y[0].abs() < 1e-12 && y[1].abs() < 1e-12, "{w:?}");
    }

    #[test]
    fn dual_bound_examples() {
        let s = space(2.0);
        let p = set(vec![SparseVector::basis(1), SparseVector::basis(2)]);
        assert_eq!(dual_bound(&SparseVector::basis(1), &p, &s).unwrap(), 0.0);
        let f = SparseVector::from_dense(&[1.0, 1.0]);
        let b = dual_bound(&f, &p, &s).unwrap();
        assert!((b - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(dual_bound(&SparseVector::zero(), &p, &s).is_err());
        let with_origin = set(vec![SparseVector::zero(), SparseVector::basis(1)]);
        assert!(dual_bound(&f, &with_origin, &s).unwrap() <= 0.0);
    }

    #[test]
    fn tail_formula_general_p() {
        for &p in &[2.0, 2.5, 3.0, 4.0] {
            for &n in &[4usize, 16, 64] {
                let (a, b) = (0.6_f64, 0.7_f64);
                let pts: Vec<_> = (2..n + 2)
                    .map(|k| SparseVector::from_entries([(1, a), (k, b)]))
                    .collect();
                let want = (a.powf(p) + b.powf(p) * (n as f64).powf(1.0 - p)).powf(1.0 / p);
                let r = hull_distance(&set(pts), &space(p), 1e-9).unwrap();
                assert!((r.value - want).abs() < 1e-9, "p={p} n={n}");
            }
        }
    }
}
