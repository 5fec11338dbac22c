//! The `verify` suite: numerical checks of the structural results, each
//! returning a [`CheckResult`] with a signed margin.

use std::time::Instant;

use noncompact_core::closed_form_derivative;
use noncompact_core::{
    alpha_k, beta_m, chi_k, clarkson_delta, closed_form_modulus, estimate_modulus, hull_distance,
    is_minimal, measure_exact, scale_set, truncate, EstimatorConfig, FinitePointSet, MeasureKind,
    OracleBudget, Result, SpaceSpec, SparseVector, StructuredSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Config;
use crate::randsets::{random_minimal_candidate, random_set, random_subset};
use crate::report::{CheckResult, VerificationReport};

use MeasureKind::{Alpha, Beta, Chi};

/// Everything a check reads.
#[derive(Debug, Clone)]
pub struct VerifyContext {
    pub space: SpaceSpec,
    pub estimator: EstimatorConfig,
    pub budget: OracleBudget,
    pub seed: u64,
    pub trials: usize,
    /// Base grid step of the modulus sweeps.
    pub step: f64,
}

impl VerifyContext {
    pub fn from_config(cfg: &Config) -> Result<Self> {
        let space = cfg.space()?;
        space.require_closed_forms()?;
        cfg.budget.validate()?;
        Ok(VerifyContext {
            space,
            estimator: cfg.estimator(),
            budget: cfg.budget,
            seed: cfg.seed,
            trials: cfg.trials,
            step: cfg.verify_step,
        })
    }

    fn p(&self) -> f64 {
        self.space.exponent()
    }

    fn gap(&self) -> f64 {
        self.space.p.basis_gap()
    }

    fn tol(&self) -> f64 {
        self.estimator.tol
    }

    fn estimate(&self, kind: MeasureKind, eps: f64, restricted: bool) -> Result<f64> {
        let pt = estimate_modulus(kind, &self.space, eps, restricted, &self.estimator)?;
        Ok(pt
            .numeric_estimate
            .expect("successful estimates carry a value"))
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// `0, step, ...` up to the last multiple of `step` not beyond `end`.
fn sweep(start: f64, end: f64, step: f64) -> Vec<f64> {
    let n = ((end - start) / step + 1e-9).floor() as i64;
    (0..=n.max(-1)).map(|i| start + i as f64 * step).collect()
}

/// Tracks the smallest margin seen and where it occurred.
struct Worst {
    margin: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Worst {
            margin: f64::INFINITY,
            at: String::from("no samples"),
        }
    }

    fn see(&mut self, margin: f64, at: impl FnOnce() -> String) {
        if margin < self.margin || margin.is_nan() {
            self.margin = margin;
            self.at = at();
        }
    }
}

type CheckFn = fn(&VerifyContext) -> CheckResult;

/// Every check, in report order.
pub const REGISTRY: &[(&str, CheckFn)] = &[
    ("axioms", check_axioms),
    ("minimality", check_minimality_lemmas),
    ("oracles", check_oracle_convergence),
    ("hull", check_hull_certificates),
    ("chain", check_chain),
    ("strict_gap", check_strict_gap),
    ("rescaling", check_rescaling_identity),
    ("nonminimalizability", check_nonminimalizability_alpha),
    ("coincidence", check_beta_coincidence),
    ("continuity", check_continuity),
    ("continuity_estimators", check_continuity_estimators),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    REGISTRY.iter().map(|(n, _)| *n)
}

fn timed(f: CheckFn, ctx: &VerifyContext) -> CheckResult {
    let t = Instant::now();
    f(ctx).with_runtime(t.elapsed())
}

/// Runs every registered check.
pub fn run_all(ctx: &VerifyContext) -> VerificationReport {
    let checks = REGISTRY.iter().map(|&(_, f)| timed(f, ctx)).collect();
    VerificationReport::new(ctx.p(), ctx.seed, checks)
}

/// Runs the named check, or all of them for `"all"`. `None` for unknown names.
pub fn run_suite(ctx: &VerifyContext, suite: &str) -> Option<VerificationReport> {
    if suite == "all" {
        return Some(run_all(ctx));
    }
    let &(_, f) = REGISTRY.iter().find(|(n, _)| *n == suite)?;
    Some(VerificationReport::new(
        ctx.p(),
        ctx.seed,
        vec![timed(f, ctx)],
    ))
}

const AXIOMS: &str = "each measure is zero exactly on finite sets, equals the max over a union, \
                      is positively homogeneous and is monotone under inclusion";

pub fn check_axioms(ctx: &VerifyContext) -> CheckResult {
    let space = &ctx.space;
    let mut rng = ctx.rng(1);
    let mut violations: Vec<String> = Vec::new();
    let mut worst_rel = 0.0_f64;
    for trial in 0..ctx.trials {
        let a = random_set(&mut rng, 2);
        let b = random_set(&mut rng, 1);
        let k = rng.random_range(0.1..3.0);
        let sub = random_subset(&mut rng, &a);
        let union = StructuredSet::union(vec![a.clone(), b.clone()]).expect("two components");
        let scaled = match scale_set(&a, k) {
            Ok(s) => s,
            Err(e) => return CheckResult::errored("axioms", AXIOMS, e),
        };
        for kind in MeasureKind::ALL {
            let m = |s: &StructuredSet| measure_exact(s, kind, space);
            let (ma, mb) = (m(&a), m(&b));
            let mut fail =
                |what: &str| violations.push(format!("trial {trial} {kind}: {what} for {a}"));
            if (ma == 0.0) == a.is_infinite() {
                fail("zero iff finite");
            }
            if m(&union) != ma.max(mb) {
                fail("union max");
            }
            let rel = (m(&scaled) - k * ma).abs() / ma.max(1.0);
            worst_rel = worst_rel.max(rel);
            if rel > 1e-12 {
                fail("homogeneity");
            }
            if m(&sub) > ma + 1e-15 {
                fail("monotonicity");
            }
        }
    }

    // Adversarial case: the largest union allowed, cross-checked against a
    // finite-truncation oracle on its dominant component.
    let radii: Vec<f64> = (1..=16).map(|i| 0.05 * i as f64).collect();
    let tails: Vec<StructuredSet> = radii
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            StructuredSet::tail(SparseVector::basis(1).scaled(0.01 * i as f64), r, 2)
                .expect("valid")
        })
        .collect();
    let big = StructuredSet::union(tails.clone()).expect("16 components");
    let exact = measure_exact(&big, Alpha, space);
    let oracle = truncate(&tails[15], 8, space).and_then(|f| alpha_k(&f, 3, space, &ctx.budget));
    match oracle {
        Ok(o) if (o - exact).abs() <= 1e-9 => {}
        Ok(o) => violations.push(format!("16-tail union: exact {exact} vs oracle {o}")),
        Err(e) => return CheckResult::errored("axioms", AXIOMS, e),
    }

    let margin = 0.0 - violations.len() as f64;
    let details = if violations.is_empty() {
        format!(
            "{} random sets x 3 measures; worst relative homogeneity error {worst_rel:.1e}; \
             16-tail union alpha = {exact:.8} matches the oracle; closure axiom holds vacuously \
             (every structured set is closed)",
            ctx.trials
        )
    } else {
        format!("{} violations, first: {}", violations.len(), violations[0])
    };
    CheckResult::from_margin("axioms", AXIOMS, margin, details)
}

const MINIMALITY: &str =
    "alpha-minimal sets are beta- and chi-minimal, and alpha = 2^(1/p) chi on them";

pub fn check_minimality_lemmas(ctx: &VerifyContext) -> CheckResult {
    let space = &ctx.space;
    let mut rng = ctx.rng(2);
    let (mut seen, mut bad) = (0usize, Vec::new());
    let mut worst = Worst::new();
    for _ in 0..ctx.trials {
        let s = if rng.random_bool(0.5) {
            random_minimal_candidate(&mut rng)
        } else {
            random_set(&mut rng, 2)
        };
        if !s.is_infinite() {
            continue;
        }
        let minimal = |kind| is_minimal(&s, kind, space);
        let (Ok(a), Ok(b), Ok(c)) = (minimal(Alpha), minimal(Beta), minimal(Chi)) else {
            return CheckResult::errored(
                "minimality",
                MINIMALITY,
                "minimality test failed on an infinite set",
            );
        };
        if !a {
            continue;
        }
        seen += 1;
        if !(b && c) {
            bad.push(s.to_string());
        }
        let alpha = measure_exact(&s, Alpha, space);
        let chi = measure_exact(&s, Chi, space);
        worst.see(1e-12 - (alpha - ctx.gap() * chi).abs(), || s.to_string());
    }
    if seen == 0 {
        return CheckResult::from_margin(
            "minimality",
            MINIMALITY,
            -1.0,
            "no alpha-minimal sets drawn".into(),
        );
    }
    let margin = if bad.is_empty() {
        worst.margin
    } else {
        -(bad.len() as f64)
    };
    let details = match bad.first() {
        None => format!(
            "{seen} alpha-minimal sets; identity slack {:.1e}",
            worst.margin
        ),
        Some(s) => format!(
            "{} alpha-minimal sets not beta/chi-minimal, first: {s}",
            bad.len()
        ),
    };
    CheckResult::from_margin("minimality", MINIMALITY, margin, details)
}

const ORACLES: &str = "finite-truncation oracles converge to the exact measures of a tail family";

pub fn check_oracle_convergence(ctx: &VerifyContext) -> CheckResult {
    match oracle_convergence(ctx) {
        Ok((margin, details)) => CheckResult::from_margin("oracles", ORACLES, margin, details),
        Err(e) => CheckResult::errored("oracles", ORACLES, e),
    }
}

fn oracle_convergence(ctx: &VerifyContext) -> Result<(f64, String)> {
    let space = &ctx.space;
    let p = ctx.p();
    let unit_tail = StructuredSet::tail(SparseVector::zero(), 1.0, 1)?;
    let gap = ctx.gap();
    let mut worst = Worst::new();

    let t8 = truncate(&unit_tail, 8, space)?;
    let a = alpha_k(&t8, 3, space, &ctx.budget)?;
    worst.see(1e-9 - (a - gap).abs(), || format!("alpha_3 = {a}"));
    for m in 2..=8 {
        let b = beta_m(&t8, m, space, &ctx.budget)?;
        worst.see(1e-9 - (b - gap).abs(), || format!("beta_{m} = {b}"));
    }

    let mut chis = Vec::new();
    for n in [4, 8, 12] {
        let f = truncate(&unit_tail, n, space)?;
        chis.push(chi_k(&f, 2, space, &ctx.budget)?);
    }
    for w in chis.windows(2) {
        worst.see(w[1] - w[0] + 1e-9, || format!("chi_2 decreased: {chis:?}"));
    }
    let last = *chis.last().expect("three sizes");
    worst.see(1.0 + 1e-9 - last, || {
        format!("chi_2 = {last} exceeds the radius")
    });

    let (ta, tb) = (0.8_f64, 0.6_f64);
    let tilted = StructuredSet::tail(SparseVector::basis(1).scaled(ta), tb, 2)?;
    for n in [4usize, 16, 64] {
        let f = truncate(&tilted, n, space)?;
        let d = hull_distance(&f, space, 1e-10)?.value;
        let want = (ta.powf(p) + tb.powf(p) * (n as f64).powf(1.0 - p)).powf(1.0 / p);
        worst.see(1e-6 - (d - want).abs(), || {
            format!("hull distance N={n}: {d} vs {want}")
        });
    }
    let details = format!(
        "alpha_3 and beta_2..8 on 8 tail points = {gap:.8}; chi_2 over N=4,8,12: {:.4}, {:.4}, {:.4}; \
         tilted-tail hull distances match; worst: {} ({:.1e})",
        chis[0], chis[1], chis[2], worst.at, worst.margin
    );
    Ok((worst.margin, details))
}

const HULL: &str = "the hull-distance solver returns a primal point and dual functional \
                    whose bounds agree to 1e-6, with weak duality";

/// Random 20-point sets in 16 coordinates, coordinates uniform in `[-0.5, 1]`.
pub fn random_hull_instance(rng: &mut impl Rng) -> FinitePointSet {
    let pts = (0..20)
        .map(|_| {
            let v: Vec<f64> = (0..16).map(|_| rng.random_range(-0.5..1.0)).collect();
            SparseVector::from_dense(&v)
        })
        .collect();
    FinitePointSet::new(pts, 1e-12).expect("continuous draws are distinct")
}

pub fn check_hull_certificates(ctx: &VerifyContext) -> CheckResult {
    let mut rng = ctx.rng(4);
    let mut worst = Worst::new();
    let mut max_iter = 0;
    for i in 0..50 {
        let set = random_hull_instance(&mut rng);
        let r = match hull_distance(&set, &ctx.space, 1e-8) {
            Ok(r) => r,
            Err(e) => return CheckResult::errored("hull", HULL, format!("instance {i}: {e}")),
        };
        max_iter = max_iter.max(r.iterations);
        worst.see(1e-6 - r.gap, || format!("instance {i}: gap {:.2e}", r.gap));
        worst.see(r.value - r.dual_bound + 1e-12, || {
            format!("instance {i}: dual above primal")
        });
    }
    let details = format!(
        "50 instances; worst {} (margin {:.2e}); at most {max_iter} iterations",
        worst.at, worst.margin
    );
    CheckResult::from_margin("hull", HULL, worst.margin, details)
}

const CHAIN: &str = "Clarkson modulus <= alpha modulus <= beta modulus, and the estimates respect \
                     beta <= alpha <= chi (restricted) and alpha <= beta <= chi (unrestricted)";

pub fn check_chain(ctx: &VerifyContext) -> CheckResult {
    match chain(ctx) {
        Ok((margin, details)) => CheckResult::from_margin("chain", CHAIN, margin, details),
        Err(e) => CheckResult::errored("chain", CHAIN, e),
    }
}

fn chain(ctx: &VerifyContext) -> Result<(f64, String)> {
    let space = &ctx.space;
    let mut closed = Worst::new();
    for eps in sweep(0.0, ctx.gap(), ctx.step) {
        let d = clarkson_delta(space, eps)?;
        let a = closed_form_modulus(Alpha, space, eps)?;
        let b = closed_form_modulus(Beta, space, eps)?;
        closed.see((a - d).min(b - a) + 1e-12, || format!("eps = {eps}"));
    }
    let slack = 2.0 * ctx.tol();
    let mut est = Worst::new();
    let mut count = 0;
    for eps in sweep(0.0, 1.0 - ctx.step, ctx.step) {
        let rb = ctx.estimate(Beta, eps, true)?;
        let ra = ctx.estimate(Alpha, eps, true)?;
        let rc = ctx.estimate(Chi, eps, true)?;
        let ua = ctx.estimate(Alpha, eps, false)?;
        let ub = ctx.estimate(Beta, eps, false)?;
        let uc = ctx.estimate(Chi, eps, false)?;
        let d = clarkson_delta(space, eps)?;
        let m = [ra - rb, rc - ra, ub - ua, uc - ub, ua - d]
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        est.see(m + slack, || format!("eps = {eps}"));
        count += 1;
    }
    let margin = closed.margin.min(est.margin);
    Ok((
        margin,
        format!(
            "closed forms: worst slack {:.2e} at {}; estimates at {count} points: worst slack {:.2e} at {}",
            closed.margin, closed.at, est.margin, est.at
        ),
    ))
}

const STRICT_GAP: &str = "the alpha modulus over minimal sets exceeds the alpha modulus by at \
                          least the gap between the beta and alpha moduli";

pub fn check_strict_gap(ctx: &VerifyContext) -> CheckResult {
    let run = || -> Result<(f64, String)> {
        let space = &ctx.space;
        let mut worst = Worst::new();
        let end = ((ctx.gap() - 0.05) / ctx.step).floor() * ctx.step;
        for eps in sweep(ctx.step, end, ctx.step) {
            let restricted = ctx.estimate(Alpha, eps, true)?;
            let a = closed_form_modulus(Alpha, space, eps)?;
            let b = closed_form_modulus(Beta, space, eps)?;
            worst.see((restricted - a) - (b - a) + 2.0 * ctx.tol(), || {
                format!("eps = {eps}")
            });
        }
        let at_one = ctx.estimate(Alpha, 1.0, true)? - closed_form_modulus(Alpha, space, 1.0)?;
        Ok((
            worst.margin,
            format!(
                "gap at eps = 1: {at_one:.6}; worst slack {:.2e} at {}",
                worst.margin, worst.at
            ),
        ))
    };
    match run() {
        Ok((m, d)) => CheckResult::from_margin("strict_gap", STRICT_GAP, m, d),
        Err(e) => CheckResult::errored("strict_gap", STRICT_GAP, e),
    }
}

const RESCALING: &str = "the alpha modulus over minimal sets at eps equals the chi modulus over \
                         minimal sets at 2^(-1/p) eps, and the chi modulus is subhomogeneous";

/// Largest deviation in the rescaling identity over the check's grid.
pub fn rescaling_deviation(ctx: &VerifyContext) -> Result<f64> {
    let mut dev = 0.0_f64;
    let end = ((ctx.gap() - 0.05) / ctx.step).floor() * ctx.step;
    for eps in sweep(0.0, end, ctx.step) {
        let a = ctx.estimate(Alpha, eps, true)?;
        let c = ctx.estimate(Chi, eps / ctx.gap(), true)?;
        dev = dev.max((a - c).abs());
    }
    Ok(dev)
}

pub fn check_rescaling_identity(ctx: &VerifyContext) -> CheckResult {
    let run = || -> Result<(f64, String)> {
        let dev = rescaling_deviation(ctx)?;
        let slack = 2.0 * ctx.tol();
        let mut sub = Worst::new();
        let shrink = 1.0 / ctx.gap();
        for eps in sweep(0.0, 1.0 - ctx.step, ctx.step) {
            let lhs = ctx.estimate(Chi, shrink * eps, true)?;
            let rhs = shrink * ctx.estimate(Chi, eps, true)?;
            sub.see(rhs - lhs + slack, || format!("eps = {eps}"));
        }
        Ok((
            (slack - dev).min(sub.margin),
            format!(
                "max |alpha'(eps) - chi'(2^(-1/p) eps)| = {dev:.2e}; subhomogeneity worst slack {:.2e} at {}",
                sub.margin, sub.at
            ),
        ))
    };
    match run() {
        Ok((m, d)) => CheckResult::from_margin("rescaling", RESCALING, m, d),
        Err(e) => CheckResult::errored("rescaling", RESCALING, e),
    }
}

const NONMINIMALIZABLE: &str = "alpha is not minimalizable: the beta and alpha moduli differ by \
                                at least 0.05 somewhere on [0.8, 2^(1/p)]";

pub fn check_nonminimalizability_alpha(ctx: &VerifyContext) -> CheckResult {
    let space = &ctx.space;
    let mut best = (f64::NEG_INFINITY, 0.0);
    for eps in sweep(0.8, ctx.gap(), ctx.step / 4.0) {
        let diff = match (
            closed_form_modulus(Beta, space, eps),
            closed_form_modulus(Alpha, space, eps),
        ) {
            (Ok(b), Ok(a)) => b - a,
            (Err(e), _) | (_, Err(e)) => {
                return CheckResult::errored("nonminimalizability", NONMINIMALIZABLE, e)
            }
        };
        if diff > best.0 {
            best = (diff, eps);
        }
    }
    // A minimalizable alpha would make its modulus equal its restriction to
    // minimal sets, which equals the beta modulus; any positive difference
    // rules that out.
    CheckResult::from_margin(
        "nonminimalizability",
        NONMINIMALIZABLE,
        best.0 - 0.05,
        format!(
            "max beta - alpha modulus = {:.6} at eps = {:.4}",
            best.0, best.1
        ),
    )
}

const COINCIDENCE: &str = "the beta and chi moduli agree with their restrictions to minimal sets";

pub fn check_beta_coincidence(ctx: &VerifyContext) -> CheckResult {
    let run = || -> Result<(f64, String)> {
        let mut worst = Worst::new();
        for (kind, end) in [(Beta, ctx.gap()), (Chi, 1.0)] {
            let last = ((end - 0.05) / ctx.step).floor() * ctx.step;
            for eps in sweep(0.0, last, ctx.step) {
                let r = ctx.estimate(kind, eps, true)?;
                let u = ctx.estimate(kind, eps, false)?;
                worst.see(2.0 * ctx.tol() - (r - u).abs(), || {
                    format!("{kind} at eps = {eps}")
                });
            }
        }
        Ok((
            worst.margin,
            format!("worst slack {:.2e} at {}", worst.margin, worst.at),
        ))
    };
    match run() {
        Ok((m, d)) => CheckResult::from_margin("coincidence", COINCIDENCE, m, d),
        Err(e) => CheckResult::errored("coincidence", COINCIDENCE, e),
    }
}

/// Ratios of successive max-jumps under step halving; for a continuous,
/// piecewise-smooth curve each is about 1/2.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpStudy {
    pub end: f64,
    pub steps: Vec<f64>,
    pub jumps: Vec<f64>,
}

impl JumpStudy {
    pub fn ratios(&self) -> Vec<f64> {
        self.jumps.windows(2).map(|w| w[1] / w[0]).collect()
    }

    pub fn worst_ratio(&self) -> f64 {
        self.ratios().into_iter().fold(0.0, f64::max)
    }
}

/// Max jump of `f` on `[0, end]` at `step`, `step / 2`, `step / 4`, with `end`
/// snapped down to a multiple of `step` so every grid shares its endpoints.
pub fn jump_study(f: impl Fn(f64) -> Result<f64>, right_end: f64, step: f64) -> Result<JumpStudy> {
    let end = ((right_end - 0.1) / step + 1e-9).floor() * step;
    let steps: Vec<f64> = (0..3).map(|j| step / f64::powi(2.0, j)).collect();
    let mut jumps = Vec::new();
    for &h in &steps {
        let values = sweep(0.0, end, h)
            .into_iter()
            .map(&f)
            .collect::<Result<Vec<f64>>>()?;
        jumps.push(
            values
                .windows(2)
                .map(|w| (w[1] - w[0]).abs())
                .fold(0.0, f64::max),
        );
    }
    Ok(JumpStudy { end, steps, jumps })
}

const RATIO_LIMIT: f64 = 0.6;

const CONTINUITY: &str = "the beta and alpha closed-form moduli are continuous: halving the step \
                          at most ~halves the largest jump, which stays within derivative x step";

pub fn check_continuity(ctx: &VerifyContext) -> CheckResult {
    let space = ctx.space;
    let mut worst = Worst::new();
    let mut parts = Vec::new();
    for (kind, right) in [(Beta, ctx.gap()), (Alpha, 2.0)] {
        let study = match jump_study(|e| closed_form_modulus(kind, &space, e), right, ctx.step) {
            Ok(s) => s,
            Err(e) => return CheckResult::errored("continuity", CONTINUITY, e),
        };
        let bound = closed_form_derivative(kind, &space, study.end).expect("inside the domain");
        worst.see(RATIO_LIMIT - study.worst_ratio(), || {
            format!("{kind} ratio")
        });
        for (&h, &j) in study.steps.iter().zip(&study.jumps) {
            worst.see(bound * h * (1.0 + 1e-9) - j, || {
                format!("{kind} jump at step {h}")
            });
        }
        parts.push(format!(
            "{kind} on [0, {:.2}]: ratios {:.3?}",
            study.end,
            study.ratios()
        ));
    }
    CheckResult::from_margin(
        "continuity",
        CONTINUITY,
        worst.margin,
        format!("{}; worst at {}", parts.join("; "), worst.at),
    )
}

const CONTINUITY_EST: &str = "estimated moduli are continuous: halving the step at most ~halves \
                              the largest jump";

/// Estimator curves studied by the continuity check: kind, restricted, right end.
pub fn estimator_curves(ctx: &VerifyContext) -> [(MeasureKind, bool, f64); 4] {
    [
        (Beta, true, ctx.gap()),
        (Alpha, true, ctx.gap()),
        (Alpha, false, 2.0),
        (Chi, true, 1.0),
    ]
}

pub fn check_continuity_estimators(ctx: &VerifyContext) -> CheckResult {
    let mut worst = Worst::new();
    let mut parts = Vec::new();
    for (kind, restricted, right) in estimator_curves(ctx) {
        let study = match jump_study(|e| ctx.estimate(kind, e, restricted), right, ctx.step) {
            Ok(s) => s,
            Err(e) => return CheckResult::errored("continuity_estimators", CONTINUITY_EST, e),
        };
        let label = format!("{kind}{}", if restricted { " (minimal)" } else { "" });
        worst.see(RATIO_LIMIT - study.worst_ratio(), || label.clone());
        parts.push(format!(
            "{label} on [0, {:.2}]: ratios {:.3?}",
            study.end,
            study.ratios()
        ));
    }
    CheckResult::from_margin(
        "continuity_estimators",
        CONTINUITY_EST,
        worst.margin,
        format!("{}; worst {}", parts.join("; "), worst.at),
    )
}
