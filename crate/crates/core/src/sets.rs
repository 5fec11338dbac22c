//! Symbolic infinite subsets of `l_p` and their measures of noncompactness.
//!
//! Every infinite set here lives in a translated copy of a *tail* coordinate
//! subspace: its center is supported on indices strictly below `tail_start`
//! and its moving part only on indices `>= tail_start`. That disjointness is
//! what makes the measures computable in closed form.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::lp::{lp_norm_of, SpaceSpec, SparseVector};

/// Maximum number of components of a [`StructuredSet::Union`].
pub const MAX_UNION_COMPONENTS: usize = 16;

/// Which measure of noncompactness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum MeasureKind {
    /// Kuratowski: finite covers by sets of small diameter.
    Alpha,
    /// Hausdorff: finite covers by balls of small radius.
    Chi,
    /// Istratescu: infinite separated subsets.
    Beta,
}

impl MeasureKind {
    /// All three kinds, in declaration order.
    pub const ALL: [MeasureKind; 3] = [MeasureKind::Alpha, MeasureKind::Chi, MeasureKind::Beta];

    /// Lower-case name.
    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Alpha => "alpha",
            MeasureKind::Chi => "chi",
            MeasureKind::Beta => "beta",
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "alpha" | "kuratowski" => Ok(MeasureKind::Alpha),
            "chi" | "hausdorff" => Ok(MeasureKind::Chi),
            "beta" | "istratescu" => Ok(MeasureKind::Beta),
            other => Err(domain!("unknown measure kind '{other}'")),
        }
    }
}

/// A nonempty list of pairwise distinct points.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FinitePointSet {
    points: Vec<SparseVector>,
}

impl FinitePointSet {
    /// Checks that `points` is nonempty and pairwise distinct under `tol`.
    pub fn new(points: Vec<SparseVector>, tol: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSet("finite point set is empty".to_string()));
        }
        for (i, a) in points.iter().enumerate() {
            if points[..i].iter().any(|b| a.approx_eq(b, tol)) {
                return Err(Error::InvalidSet(format!(
                    "point {i} repeats an earlier point"
                )));
            }
        }
        Ok(FinitePointSet { points })
    }

    /// The points, in insertion order.
    pub fn points(&self) -> &[SparseVector] {
        &self.points
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Consumes the set.
    pub fn into_points(self) -> Vec<SparseVector> {
        self.points
    }
}

/// Shared payload of the three tail variants: `center + radius * (something
/// supported on indices >= tail_start)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tail {
    /// Translation, supported strictly below `tail_start`.
    pub center: SparseVector,
    /// Positive scale.
    pub radius: f64,
    /// First tail coordinate.
    pub tail_start: usize,
}

impl Tail {
    fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidSet(format!(
                "radius must be positive, got {}",
                self.radius
            )));
        }
        if self.tail_start == 0 || self.tail_start <= self.center.max_index() {
            return Err(Error::InvalidSet(format!(
                "tail_start {} must exceed every center index (max {})",
                self.tail_start,
                self.center.max_index()
            )));
        }
        Ok(())
    }

    /// Norm of `center + radius * u` for any `u` of unit norm in the tail.
    fn outer_norm(&self, space: &SpaceSpec) -> f64 {
        let c = self.center.lp_norm(space.p);
        lp_norm_of([c, self.radius].into_iter(), space.exponent())
    }
}

/// Symbolic subsets of `l_p` with exactly known measures.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "type", rename_all = "snake_case"))]
pub enum StructuredSet {
    /// `{center + radius * e_n : n >= tail_start}`.
    TailFamily(Tail),
    /// `{center + radius * u}` over unit vectors `u` of the tail subspace.
    SphereTail(Tail),
    /// `{center + radius * u}` over `||u|| <= 1` in the tail subspace.
    BallTail(Tail),
    /// A finite set.
    Finite(FinitePointSet),
    /// A finite union.
    Union(Vec<StructuredSet>),
}

impl StructuredSet {
    /// Validated tail family.
    pub fn tail(center: SparseVector, radius: f64, tail_start: usize) -> Result<Self> {
        let t = Tail {
            center,
            radius,
            tail_start,
        };
        t.validate()?;
        Ok(StructuredSet::TailFamily(t))
    }

    /// Validated sphere tail.
    pub fn sphere(center: SparseVector, radius: f64, tail_start: usize) -> Result<Self> {
        let t = Tail {
            center,
            radius,
            tail_start,
        };
        t.validate()?;
        Ok(StructuredSet::SphereTail(t))
    }

    /// Validated ball tail.
    pub fn ball(center: SparseVector, radius: f64, tail_start: usize) -> Result<Self> {
        let t = Tail {
            center,
            radius,
            tail_start,
        };
        t.validate()?;
        Ok(StructuredSet::BallTail(t))
    }

    /// Finite set, checked for distinct points with the default tolerance.
    pub fn finite(points: Vec<SparseVector>) -> Result<Self> {
        Ok(StructuredSet::Finite(FinitePointSet::new(
            points,
            crate::lp::DEFAULT_TOL,
        )?))
    }

    /// Validated union.
    pub fn union(components: Vec<StructuredSet>) -> Result<Self> {
        let s = StructuredSet::Union(components);
        s.validate()?;
        Ok(s)
    }

    /// Checks every structural invariant, recursively.
    pub fn validate(&self) -> Result<()> {
        match self {
            StructuredSet::TailFamily(t)
            | StructuredSet::SphereTail(t)
            | StructuredSet::BallTail(t) => t.validate(),
            StructuredSet::Finite(f) => {
                if f.is_empty() {
                    Err(Error::InvalidSet("finite point set is empty".to_string()))
                } else {
                    Ok(())
                }
            }
            StructuredSet::Union(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidSet("union has no components".to_string()));
                }
                if parts.len() > MAX_UNION_COMPONENTS {
                    return Err(Error::InvalidSet(format!(
                        "union has {} components, limit {MAX_UNION_COMPONENTS}",
                        parts.len()
                    )));
                }
                parts.iter().try_for_each(StructuredSet::validate)
            }
        }
    }

    /// True when the set has infinitely many points.
    pub fn is_infinite(&self) -> bool {
        match self {
            StructuredSet::Finite(_) => false,
            StructuredSet::Union(parts) => parts.iter().any(StructuredSet::is_infinite),
            _ => true,
        }
    }

    /// Non-union leaves, depth first.
    pub fn leaves(&self) -> Vec<&StructuredSet> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a StructuredSet>) {
        match self {
            StructuredSet::Union(parts) => parts.iter().for_each(|p| p.collect_leaves(out)),
            leaf => out.push(leaf),
        }
    }
}

/// Exact measure of a structured set.
///
/// Finite sets measure 0; a tail family of radius `r` has `alpha = beta =
/// r 2^{1/p}` and `chi = r`; sphere and ball tails have `alpha = 2r`, `chi = r`
/// and `beta = r 2^{1/p}`; unions take the maximum over their components.
pub fn measure_exact(s: &StructuredSet, kind: MeasureKind, space: &SpaceSpec) -> f64 {
    let gap = space.p.basis_gap();
    match (s, kind) {
        (StructuredSet::Finite(_), _) => 0.0,
        (StructuredSet::TailFamily(t), MeasureKind::Alpha | MeasureKind::Beta) => t.radius * gap,
        (StructuredSet::TailFamily(t), MeasureKind::Chi) => t.radius,
        (StructuredSet::SphereTail(t) | StructuredSet::BallTail(t), MeasureKind::Alpha) => {
            2.0 * t.radius
        }
        (StructuredSet::SphereTail(t) | StructuredSet::BallTail(t), MeasureKind::Chi) => t.radius,
        (StructuredSet::SphereTail(t) | StructuredSet::BallTail(t), MeasureKind::Beta) => {
            t.radius * gap
        }
        (StructuredSet::Union(parts), _) => parts
            .iter()
            .map(|c| measure_exact(c, kind, space))
            .fold(0.0, f64::max),
    }
}

/// Decides whether every infinite subset of `s` has the measure of `s`.
///
/// Tail families are minimal; sphere and ball tails are not, since they
/// contain norm-convergent sequences. A union is minimal when all of its
/// infinite leaves are minimal and share one measure value.
pub fn is_minimal(s: &StructuredSet, kind: MeasureKind, space: &SpaceSpec) -> Result<bool> {
    if !s.is_infinite() {
        return Err(domain!("minimality is only defined for infinite sets"));
    }
    let mut value: Option<f64> = None;
    for leaf in s.leaves() {
        match leaf {
            StructuredSet::Finite(_) => {}
            StructuredSet::SphereTail(_) | StructuredSet::BallTail(_) => return Ok(false),
            StructuredSet::TailFamily(_) => {
                let m = measure_exact(leaf, kind, space);
                match value {
                    None => value = Some(m),
                    Some(v) if (v - m).abs() > space.tol * v.abs().max(1.0) => return Ok(false),
                    Some(_) => {}
                }
            }
            StructuredSet::Union(_) => unreachable!("leaves are never unions"),
        }
    }
    Ok(true)
}

/// `k * s`. Measures scale by `k`.
pub fn scale_set(s: &StructuredSet, k: f64) -> Result<StructuredSet> {
    if !(k.is_finite() && k > 0.0) {
        return Err(domain!("scale factor must be positive, got {k}"));
    }
    let scale_tail = |t: &Tail| Tail {
        center: t.center.scaled(k),
        radius: t.radius * k,
        tail_start: t.tail_start,
    };
    Ok(match s {
        StructuredSet::TailFamily(t) => StructuredSet::TailFamily(scale_tail(t)),
        StructuredSet::SphereTail(t) => StructuredSet::SphereTail(scale_tail(t)),
        StructuredSet::BallTail(t) => StructuredSet::BallTail(scale_tail(t)),
        StructuredSet::Finite(f) => StructuredSet::Finite(FinitePointSet {
            points: f.points.iter().map(|v| v.scaled(k)).collect(),
        }),
        StructuredSet::Union(parts) => StructuredSet::Union(
            parts
                .iter()
                .map(|c| scale_set(c, k))
                .collect::<Result<Vec<_>>>()?,
        ),
    })
}

/// True when every point of `s` has norm at most 1 (up to `space.tol`).
pub fn validate_in_unit_ball(s: &StructuredSet, space: &SpaceSpec) -> bool {
    let limit = 1.0 + space.tol;
    match s {
        StructuredSet::TailFamily(t) | StructuredSet::SphereTail(t) => t.outer_norm(space) <= limit,
        // The ball's points interpolate between the center and the sphere.
        StructuredSet::BallTail(t) => {
            t.outer_norm(space) <= limit && t.center.lp_norm(space.p) <= limit
        }
        StructuredSet::Finite(f) => f.points.iter().all(|v| v.lp_norm(space.p) <= limit),
        StructuredSet::Union(parts) => parts.iter().all(|c| validate_in_unit_ball(c, space)),
    }
}

/// Measure of the closed unit ball: the right end of every modulus domain.
pub fn unit_ball_measure(kind: MeasureKind, space: &SpaceSpec) -> f64 {
    match kind {
        MeasureKind::Alpha => 2.0,
        MeasureKind::Chi => 1.0,
        MeasureKind::Beta => space.p.basis_gap(),
    }
}

/// How sphere and ball tails are sampled by [`truncate_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SamplingScheme {
    /// Antipodal basis pairs `center +- radius e_i`.
    #[default]
    Axes,
    /// Seeded random unit directions in the first `truncation_dim` tail coordinates.
    Random {
        /// RNG seed.
        seed: u64,
    },
}

/// `count` distinct points of `s`, sampled with [`SamplingScheme::Axes`].
pub fn truncate(s: &StructuredSet, count: usize, space: &SpaceSpec) -> Result<FinitePointSet> {
    truncate_with(s, count, space, SamplingScheme::Axes)
}

/// `count` distinct points of `s`.
///
/// Tail families yield `center + radius e_{tail_start + i}` for `i = 0..count`.
/// Unions draw round-robin from their components and skip duplicates.
pub fn truncate_with(
    s: &StructuredSet,
    count: usize,
    space: &SpaceSpec,
    scheme: SamplingScheme,
) -> Result<FinitePointSet> {
    if count == 0 {
        return Err(domain!("truncation count must be positive"));
    }
    s.validate()?;
    let mut stream = PointStream::new(s, space, scheme, 0);
    // Tail and axis streams never repeat a point; skip the quadratic scan.
    let distinct = matches!(stream, PointStream::Tail { .. } | PointStream::Axes { .. });
    let mut points: Vec<SparseVector> = Vec::with_capacity(count);
    while points.len() < count {
        let Some(v) = stream.next() else {
            return Err(domain!(
                "set yields only {} distinct points within truncation_dim = {}, {count} requested",
                points.len(),
                space.truncation_dim
            ));
        };
        if distinct || !points.iter().any(|q| q.approx_eq(&v, space.tol)) {
            points.push(v);
        }
    }
    Ok(FinitePointSet { points })
}

// Short-lived and one per set; boxing the RNG would buy nothing.
#[allow(clippy::large_enum_variant)]
enum PointStream<'a> {
    Tail {
        tail: &'a Tail,
        next: usize,
        limit: usize,
    },
    Axes {
        tail: &'a Tail,
        next: usize,
        limit: usize,
        with_center: bool,
    },
    Random {
        tail: &'a Tail,
        rng: ChaCha8Rng,
        dims: usize,
        p: f64,
        remaining: usize,
        solid: bool,
    },
    Finite {
        points: &'a [SparseVector],
        next: usize,
    },
    Union {
        streams: Vec<PointStream<'a>>,
        turn: usize,
    },
}

impl<'a> PointStream<'a> {
    fn new(s: &'a StructuredSet, space: &SpaceSpec, scheme: SamplingScheme, salt: u64) -> Self {
        let dims = space.truncation_dim;
        match (s, scheme) {
            (StructuredSet::TailFamily(tail), _) => PointStream::Tail {
                tail,
                next: 0,
                limit: dims,
            },
            (StructuredSet::SphereTail(tail), SamplingScheme::Axes) => PointStream::Axes {
                tail,
                next: 0,
                limit: 2 * dims,
                with_center: false,
            },
            (StructuredSet::BallTail(tail), SamplingScheme::Axes) => PointStream::Axes {
                tail,
                next: 0,
                limit: 2 * dims + 1,
                with_center: true,
            },
            (
                StructuredSet::SphereTail(tail) | StructuredSet::BallTail(tail),
                SamplingScheme::Random { seed },
            ) => {
                PointStream::Random {
                    tail,
                    rng: ChaCha8Rng::seed_from_u64(seed.wrapping_add(salt)),
                    dims,
                    p: space.exponent(),
                    // Random directions are distinct with probability one; the
                    // cap only guards the caller's loop.
                    remaining: usize::MAX,
                    solid: matches!(s, StructuredSet::BallTail(_)),
                }
            }
            (StructuredSet::Finite(f), _) => PointStream::Finite {
                points: &f.points,
                next: 0,
            },
            (StructuredSet::Union(parts), _) => PointStream::Union {
                streams: parts
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        PointStream::new(
                            c,
                            space,
                            scheme,
                            salt.wrapping_mul(31).wrapping_add(i as u64 + 1),
                        )
                    })
                    .collect(),
                turn: 0,
            },
        }
    }
}

impl Iterator for PointStream<'_> {
    type Item = SparseVector;

    fn next(&mut self) -> Option<SparseVector> {
        match self {
            PointStream::Tail { tail, next, limit } => {
                if *next >= *limit {
                    return None;
                }
                let mut v = tail.center.clone();
                v.set(tail.tail_start + *next, tail.radius);
                *next += 1;
                Some(v)
            }
            PointStream::Axes {
                tail,
                next,
                limit,
                with_center,
            } => {
                if *next >= *limit {
                    return None;
                }
                let i = *next;
                *next += 1;
                let i = if *with_center {
                    if i == 0 {
                        return Some(tail.center.clone());
                    }
                    i - 1
                } else {
                    i
                };
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                let mut v = tail.center.clone();
                v.set(tail.tail_start + i / 2, sign * tail.radius);
                Some(v)
            }
            PointStream::Random {
                tail,
                rng,
                dims,
                p,
                remaining,
                solid,
            } => {
                if *remaining == 0 {
                    return None;
                }
                *remaining -= 1;
                let dir: Vec<f64> = (0..*dims).map(|_| rng.random_range(-1.0..1.0)).collect();
                let n = lp_norm_of(dir.iter().copied(), *p);
                if n == 0.0 {
                    return Some(tail.center.clone());
                }
                let shrink = if *solid {
                    rng.random_range(0.0..=1.0)
                } else {
                    1.0
                };
                let mut v = tail.center.clone();
                for (j, x) in dir.iter().enumerate() {
                    v.set(tail.tail_start + j, tail.radius * shrink * x / n);
                }
                Some(v)
            }
            PointStream::Finite { points, next } => {
                let v = points.get(*next)?.clone();
                *next += 1;
                Some(v)
            }
            PointStream::Union { streams, turn } => {
                for _ in 0..streams.len() {
                    let i = *turn % streams.len();
                    *turn += 1;
                    if let Some(v) = streams[i].next() {
                        return Some(v);
                    }
                }
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::Exponent;

    const SQRT2: f64 = core::f64::consts::SQRT_2;

    fn l2() -> SpaceSpec {
        SpaceSpec::new(2.0, 64).unwrap()
    }

    fn unit_tail(r: f64) -> StructuredSet {
        StructuredSet::tail(SparseVector::zero(), r, 1).unwrap()
    }

    #[test]
    fn finite_sets_measure_zero() {
        let s = StructuredSet::finite(alloc::vec![SparseVector::basis(1), SparseVector::zero()])
            .unwrap();
        for kind in MeasureKind::ALL {
            assert_eq!(measure_exact(&s, kind, &l2()), 0.0);
        }
        assert!(is_minimal(&s, MeasureKind::Alpha, &l2()).is_err());
    }

    #[test]
    fn tail_family_values() {
        let s = unit_tail(1.0);
        assert!((measure_exact(&s, MeasureKind::Alpha, &l2()) - SQRT2).abs() < 1e-15);
        assert!((measure_exact(&s, MeasureKind::Beta, &l2()) - SQRT2).abs() < 1e-15);
        assert_eq!(measure_exact(&s, MeasureKind::Chi, &l2()), 1.0);
    }

    #[test]
    fn union_takes_the_max() {
        let s = StructuredSet::union(alloc::vec![unit_tail(1.0), unit_tail(0.5)]).unwrap();
        assert!((measure_exact(&s, MeasureKind::Beta, &l2()) - SQRT2).abs() < 1e-15);
        assert!(!is_minimal(&s, MeasureKind::Alpha, &l2()).unwrap());
    }

    #[test]
    fn minimality_by_variant() {
        let space = l2();
        assert!(is_minimal(&unit_tail(0.3), MeasureKind::Chi, &space).unwrap());
        let ball = StructuredSet::ball(SparseVector::zero(), 0.5, 1).unwrap();
        let sphere = StructuredSet::sphere(SparseVector::zero(), 0.5, 1).unwrap();
        for kind in MeasureKind::ALL {
            assert!(!is_minimal(&ball, kind, &space).unwrap());
            assert!(!is_minimal(&sphere, kind, &space).unwrap());
        }
        let with_finite = StructuredSet::union(alloc::vec![
            unit_tail(0.5),
            StructuredSet::finite(alloc::vec![SparseVector::basis(1)]).unwrap(),
            StructuredSet::tail(SparseVector::basis(1), 0.5, 2).unwrap(),
        ])
        .unwrap();
        assert!(is_minimal(&with_finite, MeasureKind::Alpha, &space).unwrap());
    }

    #[test]
    fn scaling() {
        let s = unit_tail(1.0);
        let half = scale_set(&s, 0.5).unwrap();
        for kind in MeasureKind::ALL {
            let (a, b) = (
                measure_exact(&s, kind, &l2()),
                measure_exact(&half, kind, &l2()),
            );
            assert!((b - 0.5 * a).abs() < 1e-15);
        }
        assert_eq!(scale_set(&s, 1.0).unwrap(), s);
        assert!(scale_set(&s, 0.0).is_err());
        assert!(scale_set(&s, -1.0).is_err());
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(StructuredSet::tail(SparseVector::zero(), 0.0, 1).is_err());
        assert!(StructuredSet::tail(SparseVector::basis(3), 1.0, 3).is_err());
        assert!(StructuredSet::tail(SparseVector::basis(3), 1.0, 4).is_ok());
        assert!(StructuredSet::union(alloc::vec![]).is_err());
        let many = (0..17).map(|_| unit_tail(0.1)).collect();
        assert!(StructuredSet::union(many).is_err());
        assert!(
            StructuredSet::finite(alloc::vec![SparseVector::basis(1), SparseVector::basis(1)])
                .is_err()
        );
    }

    #[test]
    fn truncate_tail_family() {
        let pts = truncate(&unit_tail(1.0), 3, &l2()).unwrap();
        let want: Vec<_> = (1..=3).map(SparseVector::basis).collect();
        assert_eq!(pts.points(), &want[..]);
    }

    #[test]
    fn truncate_finite_is_identity() {
        let p = alloc::vec![
            SparseVector::basis(2),
            SparseVector::from_dense(&[0.1, 0.2])
        ];
        let s = StructuredSet::finite(p.clone()).unwrap();
        assert_eq!(truncate(&s, 2, &l2()).unwrap().points(), &p[..]);
        assert!(truncate(&s, 3, &l2()).is_err());
    }

    #[test]
    fn truncate_sphere_axes() {
        let c = SparseVector::from_dense(&[0.8]);
        let s = StructuredSet::sphere(c, 0.6, 2).unwrap();
        let pts = truncate(&s, 4, &l2()).unwrap();
        let want = [
            SparseVector::from_entries([(1, 0.8), (2, 0.6)]),
            SparseVector::from_entries([(1, 0.8), (2, -0.6)]),
            SparseVector::from_entries([(1, 0.8), (3, 0.6)]),
            SparseVector::from_entries([(1, 0.8), (3, -0.6)]),
        ];
        assert_eq!(pts.points(), &want[..]);
        for v in pts.points() {
            assert!((v.lp_norm(Exponent::new(2.0).unwrap()) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn truncate_random_scheme_stays_on_the_sphere() {
        let space = SpaceSpec::new(3.0, 6).unwrap();
        let s = StructuredSet::sphere(SparseVector::basis(1).scaled(0.5), 0.7, 2).unwrap();
        let a = truncate_with(&s, 10, &space, SamplingScheme::Random { seed: 7 }).unwrap();
        let b = truncate_with(&s, 10, &space, SamplingScheme::Random { seed: 7 }).unwrap();
        assert_eq!(a, b);
        let center = SparseVector::basis(1).scaled(0.5);
        for v in a.points() {
            assert!((v.lp_distance(&center, space.p) - 0.7).abs() < 1e-12);
            assert!(v.max_index() < 2 + 6);
        }
    }

    #[test]
    fn truncation_respects_dimension_cap() {
        let space = SpaceSpec::new(2.0, 4).unwrap();
        assert!(truncate(&unit_tail(1.0), 5, &space).is_err());
        let sphere = StructuredSet::sphere(SparseVector::zero(), 1.0, 1).unwrap();
        assert!(truncate(&sphere, 8, &space).is_ok());
        assert!(truncate(&sphere, 9, &space).is_err());
    }

    #[test]
    fn union_truncation_interleaves_and_dedups() {
        let s = StructuredSet::union(alloc::vec![unit_tail(1.0), unit_tail(1.0), unit_tail(0.5)])
            .unwrap();
        let pts = truncate(&s, 4, &l2()).unwrap();
        assert_eq!(
            pts.points(),
            &[
                SparseVector::basis(1),
                SparseVector::basis(1).scaled(0.5),
                SparseVector::basis(2),
                SparseVector::basis(2).scaled(0.5),
            ][..]
        );
    }

    #[test]
    fn unit_ball_checks() {
        let space = l2();
        let a = 0.75_f64.sqrt();
        let s = StructuredSet::tail(SparseVector::basis(1).scaled(a), 0.5, 2).unwrap();
        assert!(validate_in_unit_ball(&s, &space));
        let s = StructuredSet::tail(SparseVector::basis(1), 0.1, 2).unwrap();
        assert!(!validate_in_unit_ball(&s, &space));
        let origin = StructuredSet::finite(alloc::vec![SparseVector::zero()]).unwrap();
        assert!(validate_in_unit_ball(&origin, &space));
    }

    #[test]
    fn unit_ball_measures() {
        let space = l2();
        assert!((unit_ball_measure(MeasureKind::Beta, &space) - SQRT2).abs() < 1e-15);
        assert_eq!(unit_ball_measure(MeasureKind::Chi, &space), 1.0);
        assert_eq!(unit_ball_measure(MeasureKind::Alpha, &space), 2.0);
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in MeasureKind::ALL {
            assert_eq!(kind.name().parse::<MeasureKind>().unwrap(), kind);
        }
        assert!("gamma".parse::<MeasureKind>().is_err());
    }
}
