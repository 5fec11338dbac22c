//! Measures of noncompactness on structured subsets of `l_p` and the moduli of
//! noncompact convexity they induce.
//!
//! The crate is `no_std` and only needs `alloc`. It is organised bottom-up:
//!
//! * [`lp`] holds finitely supported points of `l_p` and their norms.
//! * [`sets`] describes the symbolic infinite sets used as witnesses, together
//!   with their exact Kuratowski, Hausdorff and Istratescu measures.
//! * [`oracles`] computes finite combinatorial analogues of those measures by
//!   exhaustive search; these are the independent check on [`sets`].
//! * [`hull`] solves for the distance from the origin to a convex hull.
//! * [`moduli`] turns witnesses and hull distances into modulus estimates.
//! * [`expr`] is the canonical text form of [`sets::StructuredSet`].
#![no_std]
#![deny(missing_docs)]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod expr;
pub mod hull;
pub mod lp;
pub mod moduli;
pub mod oracles;
pub mod sets;

pub use error::{Error, Result};
pub use expr::parse_set;
pub use hull::{dual_bound, hull_distance, HullDistanceResult};
pub use lp::{distance, norm, Exponent, SpaceSpec, SparseVector, DEFAULT_TOL};
pub use moduli::{
    characteristic, characteristic_of, chi_reference, clarkson_delta, closed_form_derivative,
    closed_form_modulus, estimate_modulus, modulus_curve, witness_make, CharacteristicEstimate,
    EstimatorConfig, Grid, ModulusCurve, ModulusPoint, WitnessFamily,
};
pub use oracles::{alpha_k, beta_m, chebyshev_radius, chi_k, OracleBudget, MAX_ORACLE_POINTS};
pub use sets::{
    is_minimal, measure_exact, scale_set, truncate, truncate_with, unit_ball_measure,
    validate_in_unit_ball, FinitePointSet, MeasureKind, SamplingScheme, StructuredSet, Tail,
    MAX_UNION_COMPONENTS,
};
