//! Moduli of noncompact convexity on `l_p`.
//!
//! The modulus for a measure `phi` is
//! `inf { 1 - d(0, co A) : A in the closed unit ball, phi(A) > eps }`; the
//! restricted modulus takes the same infimum over `phi`-minimal sets only.
//!
//! Estimates here are *upper* bounds: each one is the value of an explicit,
//! validated witness set. Witnesses are tilted tails
//! `{a e_1 + b u}` with `a^p + b^p = 1`, where `u` runs over the tail basis
//! (a minimal tail family) or over tail axes in both directions (a sphere
//! tail). No lower-bound certificate for the infimum is attempted; the
//! closed forms serve as the reference floor.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::hull::hull_distance;
use crate::lp::{SpaceSpec, SparseVector};
use crate::sets::{
    is_minimal, measure_exact, truncate, unit_ball_measure, validate_in_unit_ball, MeasureKind,
    StructuredSet,
};

/// Closed form of the modulus for `kind` on `l_p`, `p >= 2`.
///
/// * Beta: `1 - (1 - eps^p / 2)^{1/p}`
/// * Alpha: `1 - (1 - (eps / 2)^p)^{1/p}`
///
/// There is no closed form for Chi; see [`chi_reference`].
pub fn closed_form_modulus(kind: MeasureKind, space: &SpaceSpec, eps: f64) -> Result<f64> {
    space.require_closed_forms()?;
    let p = space.exponent();
    let scale = closed_form_scale(kind, p)?;
    check_domain(kind, space, eps, true)?;
    Ok(radical_modulus(scale * libm::pow(eps, p), p))
}

/// Derivative in `eps` of [`closed_form_modulus`].
pub fn closed_form_derivative(kind: MeasureKind, space: &SpaceSpec, eps: f64) -> Result<f64> {
    space.require_closed_forms()?;
    let p = space.exponent();
    let c = closed_form_scale(kind, p)?;
    check_domain(kind, space, eps, false)?;
    Ok(c * libm::pow(eps, p - 1.0) * libm::pow(1.0 - c * libm::pow(eps, p), 1.0 / p - 1.0))
}

/// `c` such that the closed form is `1 - (1 - c eps^p)^{1/p}`.
fn closed_form_scale(kind: MeasureKind, p: f64) -> Result<f64> {
    match kind {
        MeasureKind::Beta => Ok(0.5),
        MeasureKind::Alpha => Ok(libm::pow(2.0, -p)),
        MeasureKind::Chi => Err(Error::NoClosedForm("chi")),
    }
}

/// `1 - (1 - t)^{1/p}`, clamped so the domain endpoint gives exactly 1.
fn radical_modulus(t: f64, p: f64) -> f64 {
    1.0 - libm::pow((1.0 - t).max(0.0), 1.0 / p)
}

fn check_domain(kind: MeasureKind, space: &SpaceSpec, eps: f64, closed: bool) -> Result<()> {
    let end = unit_ball_measure(kind, space);
    let inside = if closed {
        eps <= end + space.tol
    } else {
        eps < end
    };
    if eps.is_finite() && eps >= 0.0 && inside {
        Ok(())
    } else {
        Err(domain!(
            "epsilon {eps} outside the {kind} modulus domain [0, {end}]"
        ))
    }
}

/// The Clarkson modulus of convexity of `l_p`, `p >= 2`:
/// `1 - (1 - (eps / 2)^p)^{1/p}` on `[0, 2]`.
pub fn clarkson_delta(space: &SpaceSpec, eps: f64) -> Result<f64> {
    space.require_closed_forms()?;
    if !(eps >= 0.0 && eps <= 2.0 + space.tol) {
        return Err(domain!("epsilon {eps} outside [0, 2]"));
    }
    let p = space.exponent();
    Ok(radical_modulus(libm::pow(eps / 2.0, p), p))
}

/// `1 - (1 - eps^p)^{1/p}`: the limit of the Chi estimator on tilted tail
/// witnesses. A numeric target only, not a closed form of the modulus.
pub fn chi_reference(space: &SpaceSpec, eps: f64) -> Result<f64> {
    check_domain(MeasureKind::Chi, space, eps, true)?;
    let p = space.exponent();
    Ok(radical_modulus(libm::pow(eps, p), p))
}

/// Shape of a witness set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum WitnessFamily {
    /// `{a e_1 + b e_n : n >= 2}`, minimal for every kind.
    MinimalTail,
    /// `{a e_1 + b u : u a unit vector on indices >= 2}`, never minimal.
    SphereTail,
}

impl WitnessFamily {
    /// Lower-case name.
    pub fn name(self) -> &'static str {
        match self {
            WitnessFamily::MinimalTail => "minimal_tail",
            WitnessFamily::SphereTail => "sphere_tail",
        }
    }
}

/// Witness in the closed unit ball whose `kind`-measure is `eps + margin`.
///
/// The tail radius `b` is chosen so the family's measure formula gives
/// `eps + margin`, and `a = (1 - b^p)^{1/p}` puts every point on the unit
/// sphere.
pub fn witness_make(
    kind: MeasureKind,
    family: WitnessFamily,
    eps: f64,
    margin: f64,
    space: &SpaceSpec,
) -> Result<StructuredSet> {
    if !(margin > 0.0 && margin.is_finite()) {
        return Err(domain!("witness margin must be positive, got {margin}"));
    }
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(domain!("epsilon must be nonnegative, got {eps}"));
    }
    let target = eps + margin;
    if target >= unit_ball_measure(kind, space) {
        return Err(domain!(
            "eps + margin = {target} reaches the {kind} measure of the unit ball"
        ));
    }
    let p = space.exponent();
    let inv_gap = 1.0 / space.p.basis_gap();
    let b = match (family, kind) {
        (WitnessFamily::MinimalTail, MeasureKind::Alpha | MeasureKind::Beta) => target * inv_gap,
        (WitnessFamily::MinimalTail, MeasureKind::Chi) => target,
        (WitnessFamily::SphereTail, MeasureKind::Alpha) => target / 2.0,
        (WitnessFamily::SphereTail, MeasureKind::Beta) => target * inv_gap,
        (WitnessFamily::SphereTail, MeasureKind::Chi) => target,
    };
    if b > 1.0 {
        return Err(domain!(
            "{} witness for {kind} at eps + margin = {target} needs tail radius {b} > 1",
            family.name()
        ));
    }
    let a = libm::pow((1.0 - libm::pow(b, p)).max(0.0), 1.0 / p);
    let center = SparseVector::basis(1).scaled(a);
    let set = match family {
        WitnessFamily::MinimalTail => StructuredSet::tail(center, b, 2)?,
        WitnessFamily::SphereTail => StructuredSet::sphere(center, b, 2)?,
    };
    debug_assert!(validate_in_unit_ball(&set, space));
    debug_assert!(measure_exact(&set, kind, space) > eps);
    Ok(set)
}

/// Settings shared by every estimate.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EstimatorConfig {
    /// Points per witness truncation.
    pub truncation: usize,
    /// Hull solver tolerance; also the smallest witness margin.
    pub tol: f64,
    /// Witness margins tried before extrapolating to margin 0. Must be
    /// decreasing; the last two drive the extrapolation.
    pub margins: Vec<f64>,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig::new(256, 1e-6)
    }
}

impl EstimatorConfig {
    /// The standard margin schedule `{1e-2, 1e-3, tol}`.
    pub fn new(truncation: usize, tol: f64) -> Self {
        EstimatorConfig {
            truncation,
            tol,
            margins: alloc::vec![1e-2, 1e-3, tol],
        }
    }

    fn validate(&self) -> Result<()> {
        if self.truncation < 8 {
            return Err(domain!(
                "truncation must be at least 8, got {}",
                self.truncation
            ));
        }
        if !(self.tol > 0.0) {
            return Err(domain!("tolerance must be positive"));
        }
        if self.margins.len() < 2 || self.margins.windows(2).any(|w| !(w[0] > w[1])) {
            return Err(domain!(
                "margins must be at least two strictly decreasing values"
            ));
        }
        if !(*self.margins.last().unwrap() > 0.0) {
            return Err(domain!("margins must be positive"));
        }
        Ok(())
    }

    /// Space wide enough to truncate witnesses at this size.
    fn space_for(&self, space: &SpaceSpec) -> SpaceSpec {
        SpaceSpec {
            truncation_dim: space.truncation_dim.max(self.truncation + 1),
            ..*space
        }
    }
}

/// One sample of a modulus curve.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModulusPoint {
    /// Where the modulus was sampled.
    pub epsilon: f64,
    /// Closed form, when one exists (Alpha, Beta with `p >= 2`).
    pub analytic_value: Option<f64>,
    /// Witness value extrapolated to margin 0 and infinite truncation; an
    /// upper bound on the modulus. Absent when estimation failed.
    pub numeric_estimate: Option<f64>,
    /// `1 - d(0, co(truncation))` for the chosen witness at the smallest
    /// margin, without extrapolation.
    pub truncated_estimate: Option<f64>,
    /// `numeric_estimate - truncated_estimate`: how much the finite
    /// truncation understates the witness value.
    pub convergence_slack: Option<f64>,
    /// Best witness, at the smallest margin.
    pub witness: Option<StructuredSet>,
    /// Family of the best witness.
    pub witness_family: Option<WitnessFamily>,
    /// Whether only minimal witnesses were admitted.
    pub restricted_minimal: bool,
    /// Why the estimate failed, if it did.
    pub error: Option<String>,
}

struct FamilyEstimate {
    extrapolated: f64,
    truncated: f64,
    witness: StructuredSet,
}

/// `1 - d(0, co A)` for the witness at `margin`, plus the value extrapolated
/// to infinite truncation.
///
/// Hull distances of tilted tails obey `d_N^p = a^p + C N^{1-p}`, so two
/// truncation sizes pin down the limit `a`. For sphere tails `C = 0`.
fn witness_value(
    kind: MeasureKind,
    family: WitnessFamily,
    eps: f64,
    margin: f64,
    space: &SpaceSpec,
    cfg: &EstimatorConfig,
) -> Result<FamilyEstimate> {
    let witness = witness_make(kind, family, eps, margin, space)?;
    let p = space.exponent();
    let (n_small, n_big) = (cfg.truncation / 2, cfg.truncation);
    let wide = cfg.space_for(space);
    let d_small = hull_distance(&truncate(&witness, n_small, &wide)?, &wide, cfg.tol)?.value;
    let d_big = hull_distance(&truncate(&witness, n_big, &wide)?, &wide, cfg.tol)?.value;
    let rate = |n: usize| libm::pow(n as f64, 1.0 - p);
    let (r_small, r_big) = match family {
        WitnessFamily::MinimalTail => (rate(n_small), rate(n_big)),
        // Axis pairs: N points use N/2 directions.
        WitnessFamily::SphereTail => (rate(n_small / 2), rate(n_big / 2)),
    };
    let c = (libm::pow(d_small, p) - libm::pow(d_big, p)) / (r_small - r_big);
    let limit_p = (libm::pow(d_big, p) - c * r_big).max(0.0);
    let limit = libm::pow(limit_p, 1.0 / p).min(d_big);
    Ok(FamilyEstimate {
        extrapolated: 1.0 - limit,
        truncated: 1.0 - d_big,
        witness,
    })
}

/// Upper-bound estimate of the modulus (or of the restricted modulus when
/// `restrict_minimal`) at `eps`.
///
/// For each admissible witness family, the witness value is computed at every
/// margin of the schedule and extrapolated linearly to margin 0 from the last
/// two; the smallest family value wins. Restricted estimates only use minimal
/// tail families.
pub fn estimate_modulus(
    kind: MeasureKind,
    space: &SpaceSpec,
    eps: f64,
    restrict_minimal: bool,
    cfg: &EstimatorConfig,
) -> Result<ModulusPoint> {
    cfg.validate()?;
    check_domain(kind, space, eps, false)?;
    let families: &[WitnessFamily] = if restrict_minimal {
        &[WitnessFamily::MinimalTail]
    } else {
        &[WitnessFamily::MinimalTail, WitnessFamily::SphereTail]
    };
    let mut best: Option<(f64, FamilyEstimate, WitnessFamily)> = None;
    let mut last_err = None;
    for &family in families {
        let run = || -> Result<(f64, FamilyEstimate)> {
            let mut samples = Vec::with_capacity(cfg.margins.len());
            let mut infeasible = None;
            for &m in &cfg.margins {
                // Near the right end of a family's range only the smaller
                // margins admit a witness.
                match witness_make(kind, family, eps, m, space) {
                    Ok(_) => samples.push((m, witness_value(kind, family, eps, m, space, cfg)?)),
                    Err(e) => infeasible = Some(e),
                }
            }
            let at_zero = match &samples[..] {
                [] => return Err(infeasible.expect("no margins were tried")),
                [(_, only)] => only.extrapolated,
                [.., (m1, v1), (m2, v2)] => {
                    let slope = (v1.extrapolated - v2.extrapolated) / (m1 - m2);
                    (v2.extrapolated - slope * m2).max(0.0)
                }
            };
            Ok((at_zero, samples.pop().expect("nonempty").1))
        };
        match run() {
            Ok((value, est)) => {
                if best.as_ref().is_none_or(|(b, _, _)| value < *b) {
                    best = Some((value, est, family));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    let Some((value, est, family)) = best else {
        return Err(last_err.unwrap_or_else(|| domain!("no witness family admitted")));
    };
    if restrict_minimal {
        debug_assert!(is_minimal(&est.witness, kind, space).unwrap_or(false));
    }
    let analytic_value = if kind != MeasureKind::Chi && space.require_closed_forms().is_ok() {
        closed_form_modulus(kind, space, eps).ok()
    } else {
        None
    };
    Ok(ModulusPoint {
        epsilon: eps,
        analytic_value,
        numeric_estimate: Some(value),
        truncated_estimate: Some(est.truncated),
        convergence_slack: Some(value - est.truncated),
        witness: Some(est.witness),
        witness_family: Some(family),
        restricted_minimal: restrict_minimal,
        error: None,
    })
}

/// An inclusive arithmetic grid `start, start + step, ..., <= stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Grid {
    /// First sample.
    pub start: f64,
    /// Last sample (inclusive, up to rounding).
    pub stop: f64,
    /// Spacing.
    pub step: f64,
}

impl Grid {
    /// Builds a grid.
    pub fn new(start: f64, stop: f64, step: f64) -> Self {
        Grid { start, stop, step }
    }

    /// The samples. Each is snapped to 12 decimals so that, e.g., the third
    /// sample of `0:1:0.1` prints as `0.3`.
    pub fn points(&self) -> Result<Vec<f64>> {
        let Grid { start, stop, step } = *self;
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(domain!("grid bounds must be finite"));
        }
        if stop < start {
            return Err(domain!("empty grid: stop {stop} < start {start}"));
        }
        if stop == start {
            return Ok(alloc::vec![start]);
        }
        if !(step > 0.0) {
            return Err(domain!("grid step must be positive, got {step}"));
        }
        let count = libm::floor((stop - start) / step + 1e-9) as usize + 1;
        Ok((0..count)
            .map(|i| libm::round((start + i as f64 * step) * 1e12) / 1e12)
            .collect())
    }
}

/// Samples of a modulus estimate along a grid.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModulusCurve {
    /// Ambient space.
    pub space: SpaceSpec,
    /// Measure.
    pub kind: MeasureKind,
    /// Restricted to minimal witnesses.
    pub restricted_minimal: bool,
    /// Samples in increasing `epsilon`; failed samples carry `error`.
    pub grid: Vec<ModulusPoint>,
    /// Estimator settings used.
    pub config: EstimatorConfig,
}

impl ModulusCurve {
    /// `(epsilon, numeric_estimate)` for the samples that succeeded.
    pub fn numeric_samples(&self) -> Vec<(f64, f64)> {
        self.grid
            .iter()
            .filter_map(|pt| Some((pt.epsilon, pt.numeric_estimate?)))
            .collect()
    }

    /// Samples that failed.
    pub fn failures(&self) -> impl Iterator<Item = &ModulusPoint> {
        self.grid.iter().filter(|pt| pt.error.is_some())
    }
}

/// Evaluates [`estimate_modulus`] along `grid`, in order. Per-point failures
/// are recorded in the curve rather than aborting it.
pub fn modulus_curve(
    kind: MeasureKind,
    space: &SpaceSpec,
    grid: &Grid,
    restrict_minimal: bool,
    cfg: &EstimatorConfig,
) -> Result<ModulusCurve> {
    cfg.validate()?;
    let eps = grid.points()?;
    let samples = eps
        .into_iter()
        .map(
            |e| match estimate_modulus(kind, space, e, restrict_minimal, cfg) {
                Ok(pt) => pt,
                Err(err) => ModulusPoint {
                    epsilon: e,
                    analytic_value: if kind == MeasureKind::Chi {
                        None
                    } else {
                        closed_form_modulus(kind, space, e).ok()
                    },
                    numeric_estimate: None,
                    truncated_estimate: None,
                    convergence_slack: None,
                    witness: None,
                    witness_family: None,
                    restricted_minimal: restrict_minimal,
                    error: Some(format!("{err}")),
                },
            },
        )
        .collect();
    Ok(ModulusCurve {
        space: *space,
        kind,
        restricted_minimal: restrict_minimal,
        grid: samples,
        config: cfg.clone(),
    })
}

/// Estimated characteristic `sup { eps : modulus(eps) = 0 }`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CharacteristicEstimate {
    /// Largest grid epsilon at which the curve is numerically zero.
    pub value: f64,
    /// Measure.
    pub kind: MeasureKind,
    /// Whether the curve was restricted to minimal witnesses.
    pub restricted_minimal: bool,
}

/// Characteristic of a curve's numeric estimates: the largest grid epsilon
/// whose value is at most `zero_tol`, or 0 when there is none.
pub fn characteristic(curve: &ModulusCurve, zero_tol: f64) -> CharacteristicEstimate {
    CharacteristicEstimate {
        value: characteristic_of(&curve.numeric_samples(), zero_tol),
        kind: curve.kind,
        restricted_minimal: curve.restricted_minimal,
    }
}

/// Characteristic of raw `(epsilon, value)` samples.
pub fn characteristic_of(samples: &[(f64, f64)], zero_tol: f64) -> f64 {
    samples
        .iter()
        .filter(|&&(_, v)| v <= zero_tol)
        .map(|&(e, _)| e)
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(p: f64) -> SpaceSpec {
        SpaceSpec::new(p, 1024).unwrap()
    }

    #[test]
    fn closed_forms_at_one() {
        let s = space(2.0);
        let beta = closed_form_modulus(MeasureKind::Beta, &s, 1.0).unwrap();
        let alpha = closed_form_modulus(MeasureKind::Alpha, &s, 1.0).unwrap();
        assert!((beta - (1.0 - 0.5_f64.sqrt())).abs() < 1e-15);
        assert!((beta - 0.292_893).abs() < 1e-6);
        assert!((alpha - (1.0 - 0.75_f64.sqrt())).abs() < 1e-15);
        assert!((alpha - 0.133_975).abs() < 1e-6);
        for kind in [MeasureKind::Alpha, MeasureKind::Beta] {
            assert_eq!(closed_form_modulus(kind, &s, 0.0).unwrap(), 0.0);
        }
        let end = closed_form_modulus(MeasureKind::Beta, &s, 2.0_f64.sqrt()).unwrap();
        assert!((end - 1.0).abs() < 1e-7);
    }

    #[test]
    fn closed_form_errors() {
        assert!(matches!(
            closed_form_modulus(MeasureKind::Chi, &space(2.0), 0.5),
            Err(Error::NoClosedForm(_))
        ));
        assert!(closed_form_modulus(MeasureKind::Beta, &space(1.5), 0.5).is_err());
        assert!(closed_form_modulus(MeasureKind::Beta, &space(2.0), 1.5).is_err());
        assert!(clarkson_delta(&space(1.5), 0.5).is_err());
    }

    #[test]
    fn clarkson_planar_midpoint() {
        // Two unit vectors at distance 1 in the Euclidean plane: the midpoint
        // has norm sqrt(1 - 1/4), so the modulus is 1 minus that.
        let (x, y) = ([1.0_f64, 0.0], [0.5_f64, 0.75_f64.sqrt()]);
        let dist = ((x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2)).sqrt();
        assert!((dist - 1.0).abs() < 1e-12);
        let mid = (((x[0] + y[0]) / 2.0).powi(2) + ((x[1] + y[1]) / 2.0).powi(2)).sqrt();
        let got = clarkson_delta(&space(2.0), 1.0).unwrap();
        assert!((got - (1.0 - mid)).abs() < 1e-12);
        assert_eq!(clarkson_delta(&space(3.0), 0.0).unwrap(), 0.0);
        assert!((clarkson_delta(&space(2.0), 2.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let s = space(2.0);
        for kind in [MeasureKind::Alpha, MeasureKind::Beta] {
            for &e in &[0.3, 1.0, 1.3] {
                let h = 1e-6;
                let fd = (closed_form_modulus(kind, &s, e + h).unwrap()
                    - closed_form_modulus(kind, &s, e - h).unwrap())
                    / (2.0 * h);
                let d = closed_form_derivative(kind, &s, e).unwrap();
                assert!((fd - d).abs() < 1e-6, "{kind} at {e}: {fd} vs {d}");
            }
        }
        let d = closed_form_derivative(MeasureKind::Beta, &s, 1.3).unwrap();
        assert!((d - 1.651).abs() < 1e-3);
    }

    #[test]
    fn witnesses() {
        let s = space(2.0);
        let w = witness_make(
            MeasureKind::Beta,
            WitnessFamily::MinimalTail,
            1.0,
            1e-12,
            &s,
        )
        .unwrap();
        let StructuredSet::TailFamily(t) = &w else {
            panic!("expected a tail family")
        };
        assert!((t.radius - 0.5_f64.sqrt()).abs() < 1e-9);
        assert!((t.center.get(1) - 0.5_f64.sqrt()).abs() < 1e-9);
        assert!((measure_exact(&w, MeasureKind::Beta, &s) - 1.0).abs() < 1e-9);
        assert!(validate_in_unit_ball(&w, &s));
        assert!(is_minimal(&w, MeasureKind::Beta, &s).unwrap());

        let w = witness_make(
            MeasureKind::Alpha,
            WitnessFamily::SphereTail,
            1.0,
            1e-12,
            &s,
        )
        .unwrap();
        let StructuredSet::SphereTail(t) = &w else {
            panic!("expected a sphere tail")
        };
        assert!((t.radius - 0.5).abs() < 1e-9);
        assert!((t.center.get(1) - 0.75_f64.sqrt()).abs() < 1e-9);
        assert!((measure_exact(&w, MeasureKind::Alpha, &s) - 1.0).abs() < 1e-9);

        assert!(witness_make(
            MeasureKind::Alpha,
            WitnessFamily::MinimalTail,
            1.5,
            1e-3,
            &s
        )
        .is_err());
        assert!(witness_make(MeasureKind::Chi, WitnessFamily::MinimalTail, 0.5, 0.0, &s).is_err());
    }

    #[test]
    fn beta_estimate_matches_closed_form() {
        let s = space(2.0);
        let pt = estimate_modulus(
            MeasureKind::Beta,
            &s,
            1.0,
            true,
            &EstimatorConfig::default(),
        )
        .unwrap();
        let v = pt.numeric_estimate.unwrap();
        let want = 1.0 - 0.5_f64.sqrt();
        assert!(v >= want - 1e-6 && v <= want + 5e-3, "{v}");
        assert!(pt.convergence_slack.unwrap() >= 0.0);
        assert_eq!(pt.witness_family, Some(WitnessFamily::MinimalTail));
    }

    #[test]
    fn alpha_unrestricted_uses_sphere_tails() {
        let s = space(2.0);
        let pt = estimate_modulus(
            MeasureKind::Alpha,
            &s,
            1.0,
            false,
            &EstimatorConfig::default(),
        )
        .unwrap();
        assert_eq!(pt.witness_family, Some(WitnessFamily::SphereTail));
        assert!((pt.numeric_estimate.unwrap() - 0.133_975).abs() < 5e-3);
    }

    #[test]
    fn chi_estimate_tracks_reference() {
        let s = space(2.0);
        let pt = estimate_modulus(
            MeasureKind::Chi,
            &s,
            0.5,
            false,
            &EstimatorConfig::default(),
        )
        .unwrap();
        assert!(pt.analytic_value.is_none());
        let want = chi_reference(&s, 0.5).unwrap();
        assert!((pt.numeric_estimate.unwrap() - want).abs() < 1e-5);
    }

    #[test]
    fn zero_epsilon_gives_zero() {
        let s = space(3.0);
        for kind in MeasureKind::ALL {
            let pt = estimate_modulus(kind, &s, 0.0, true, &EstimatorConfig::default()).unwrap();
            assert!(pt.numeric_estimate.unwrap() <= 1e-6);
        }
    }

    #[test]
    fn grids() {
        assert_eq!(Grid::new(0.0, 1.3, 0.1).points().unwrap().len(), 14);
        assert_eq!(Grid::new(0.0, 1.0, 0.1).points().unwrap()[3], 0.3);
        assert_eq!(Grid::new(0.0, 0.0, 0.1).points().unwrap(), alloc::vec![0.0]);
        assert!(Grid::new(1.0, 0.0, 0.1).points().is_err());
        assert!(Grid::new(0.0, 1.0, 0.0).points().is_err());
    }

    #[test]
    fn curve_records_failures() {
        let s = space(2.0);
        let cfg = EstimatorConfig::new(16, 1e-6);
        let curve = modulus_curve(
            MeasureKind::Alpha,
            &s,
            &Grid::new(1.3, 1.5, 0.1),
            true,
            &cfg,
        )
        .unwrap();
        assert_eq!(curve.grid.len(), 3);
        assert!(curve.grid[0].numeric_estimate.is_some());
        assert!(curve.grid[1].numeric_estimate.is_some());
        assert_eq!(curve.failures().count(), 1);
        let single = modulus_curve(
            MeasureKind::Beta,
            &s,
            &Grid::new(0.0, 0.0, 0.1),
            false,
            &cfg,
        )
        .unwrap();
        assert_eq!(single.grid.len(), 1);
        assert!(single.grid[0].numeric_estimate.unwrap() <= 1e-6);
    }

    #[test]
    fn characteristics() {
        let s = space(2.0);
        let closed: Vec<(f64, f64)> = Grid::new(0.0, 1.3, 0.05)
            .points()
            .unwrap()
            .into_iter()
            .map(|e| (e, closed_form_modulus(MeasureKind::Beta, &s, e).unwrap()))
            .collect();
        assert_eq!(characteristic_of(&closed, 1e-4), 0.0);
        let zeros: Vec<(f64, f64)> = (0..5).map(|i| (i as f64 * 0.25, 0.0)).collect();
        assert_eq!(characteristic_of(&zeros, 1e-4), 1.0);
        let step: Vec<(f64, f64)> = (0..11)
            .map(|i| {
                let e = i as f64 / 10.0;
                (e, if e <= 0.5 { 0.0 } else { e - 0.5 })
            })
            .collect();
        assert_eq!(characteristic_of(&step, 1e-4), 0.5);
    }
}
