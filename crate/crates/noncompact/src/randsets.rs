//! Seeded random structured sets for property checks.

use noncompact_core::{FinitePointSet, SparseVector, StructuredSet, MAX_UNION_COMPONENTS};
use rand::Rng;

fn coord(rng: &mut impl Rng) -> f64 {
    // Three decimals keep printed expressions short.
    (rng.random_range(-0.5..0.5_f64) * 1000.0).round() / 1000.0
}

fn dense(rng: &mut impl Rng, lens: std::ops::RangeInclusive<usize>) -> SparseVector {
    let len = rng.random_range(lens);
    let v: Vec<f64> = (0..len).map(|_| coord(rng)).collect();
    SparseVector::from_dense(&v)
}

fn radius(rng: &mut impl Rng) -> f64 {
    (rng.random_range(0.05..1.0_f64) * 1000.0).round() / 1000.0
}

/// A finite set of 1 to 4 distinct points in the first three coordinates.
pub fn random_finite(rng: &mut impl Rng) -> StructuredSet {
    loop {
        let n = rng.random_range(1..=4);
        let pts = (0..n).map(|_| dense(rng, 1..=3)).collect();
        if let Ok(f) = FinitePointSet::new(pts, 1e-9) {
            return StructuredSet::Finite(f);
        }
    }
}

/// A tail, sphere or ball tail with a random short center.
pub fn random_tail_like(rng: &mut impl Rng) -> StructuredSet {
    let center = dense(rng, 0..=3);
    let start = center.max_index() + 1 + rng.random_range(0..3);
    let r = radius(rng);
    match rng.random_range(0..3) {
        0 => StructuredSet::tail(center, r, start),
        1 => StructuredSet::sphere(center, r, start),
        _ => StructuredSet::ball(center, r, start),
    }
    .expect("start lies past the center")
}

/// Any structured set; unions nest up to `depth` levels.
pub fn random_set(rng: &mut impl Rng, depth: usize) -> StructuredSet {
    if depth > 0 && rng.random_bool(0.3) {
        let n = rng.random_range(2..=4).min(MAX_UNION_COMPONENTS);
        let parts = (0..n).map(|_| random_set(rng, depth - 1)).collect();
        return StructuredSet::union(parts).expect("small union");
    }
    if rng.random_bool(0.25) {
        random_finite(rng)
    } else {
        random_tail_like(rng)
    }
}

/// Sets biased towards minimality: unions of tail families sharing a radius,
/// padded with finite pieces, plus the occasional sphere or ball.
pub fn random_minimal_candidate(rng: &mut impl Rng) -> StructuredSet {
    let r = radius(rng);
    let n = rng.random_range(1..=4);
    let mut parts: Vec<StructuredSet> = (0..n)
        .map(|_| {
            let center = dense(rng, 0..=2);
            let start = center.max_index() + 1 + rng.random_range(0..4);
            StructuredSet::tail(center, r, start).expect("valid tail")
        })
        .collect();
    if rng.random_bool(0.5) {
        parts.push(random_finite(rng));
    }
    if rng.random_bool(0.2) {
        parts.push(random_tail_like(rng));
    }
    if parts.len() == 1 {
        parts.pop().expect("one part")
    } else {
        StructuredSet::union(parts).expect("small union")
    }
}

/// A random subset of `s` that is again a structured set.
///
/// Uses only inclusions that hold exactly: a tail family lies in the sphere
/// tail with the same data, which lies in the matching ball tail; raising the
/// tail start or shrinking a ball's radius shrinks the set; unions lose
/// components; finite sets lose points.
pub fn random_subset(rng: &mut impl Rng, s: &StructuredSet) -> StructuredSet {
    match s {
        StructuredSet::TailFamily(t) => StructuredSet::tail(
            t.center.clone(),
            t.radius,
            t.tail_start + rng.random_range(0..3),
        )
        .expect("later start is valid"),
        StructuredSet::SphereTail(t) => if rng.random_bool(0.5) {
            StructuredSet::tail(t.center.clone(), t.radius, t.tail_start)
        } else {
            StructuredSet::sphere(
                t.center.clone(),
                t.radius,
                t.tail_start + rng.random_range(1..3),
            )
        }
        .expect("valid"),
        StructuredSet::BallTail(t) => match rng.random_range(0..3) {
            0 => StructuredSet::sphere(t.center.clone(), t.radius, t.tail_start),
            1 => StructuredSet::tail(t.center.clone(), t.radius, t.tail_start),
            _ => StructuredSet::ball(
                t.center.clone(),
                t.radius * rng.random_range(0.1..1.0),
                t.tail_start,
            ),
        }
        .expect("valid"),
        StructuredSet::Finite(f) => {
            let keep = rng.random_range(1..=f.len());
            StructuredSet::Finite(
                FinitePointSet::new(f.points()[..keep].to_vec(), 1e-9)
                    .expect("subset stays distinct"),
            )
        }
        StructuredSet::Union(parts) => {
            let mut parts = parts.clone();
            if parts.len() > 1 && rng.random_bool(0.5) {
                parts.remove(rng.random_range(0..parts.len()));
            } else {
                let i = rng.random_range(0..parts.len());
                parts[i] = random_subset(rng, &parts[i]);
            }
            if parts.len() == 1 {
                parts.pop().expect("one part")
            } else {
                StructuredSet::union(parts).expect("fewer components")
            }
        }
    }
}
