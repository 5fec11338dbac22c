//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines always show under `cargo test`.

use std::process::{Command, ExitCode};
use std::time::Instant;

use noncompact::verify::{
    check_axioms, check_chain, check_minimality_lemmas, estimator_curves, jump_study,
    random_hull_instance, rescaling_deviation,
};
use noncompact::{Config, VerifyContext};
use noncompact_core::{
    alpha_k, beta_m, chi_k, closed_form_modulus, estimate_modulus, hull_distance, truncate,
    EstimatorConfig, MeasureKind, OracleBudget, SpaceSpec, SparseVector, StructuredSet,
    WitnessFamily,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ctx(p: f64) -> VerifyContext {
    let cfg = Config {
        p,
        ..Config::default()
    };
    VerifyContext::from_config(&cfg).expect("valid config")
}

fn space(p: f64) -> SpaceSpec {
    SpaceSpec::new(p, 1024).unwrap()
}

fn estimate(
    kind: MeasureKind,
    p: f64,
    eps: f64,
    restricted: bool,
) -> noncompact_core::ModulusPoint {
    estimate_modulus(
        kind,
        &space(p),
        eps,
        restricted,
        &EstimatorConfig::new(256, 1e-6),
    )
    .unwrap()
}

fn verdict(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn closed_form_beta() -> Outcome {
    let t = Instant::now();
    let v = estimate(MeasureKind::Beta, 2.0, 1.0, true)
        .numeric_estimate
        .unwrap();
    let secs = t.elapsed().as_secs_f64();
    let err = (v - 0.292893).abs();
    verdict(
        err <= 5e-3 && secs < 10.0,
        format!("estimate {v:.6}, |err| {err:.1e} <= 5e-3, {secs:.2}s < 10s"),
    )
}

fn closed_form_alpha() -> Outcome {
    let pt = estimate(MeasureKind::Alpha, 2.0, 1.0, false);
    let v = pt.numeric_estimate.unwrap();
    let err = (v - 0.133975).abs();
    verdict(
        err <= 5e-3 && pt.witness_family == Some(WitnessFamily::SphereTail),
        format!(
            "estimate {v:.6} via {:?}, |err| {err:.1e} <= 5e-3",
            pt.witness_family
        ),
    )
}

fn strict_gap() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for p in [2.0, 3.0] {
        let restricted = estimate(MeasureKind::Alpha, p, 1.0, true)
            .numeric_estimate
            .unwrap();
        let gap = restricted - closed_form_modulus(MeasureKind::Alpha, &space(p), 1.0).unwrap();
        ok &= gap >= 0.15;
        parts.push(format!("p={p}: {gap:.4}"));
    }
    verdict(ok, format!("gaps {} >= 0.15", parts.join(", ")))
}

fn oracle_exactness() -> Outcome {
    let s = space(2.0);
    let budget = OracleBudget::default();
    let tail = StructuredSet::tail(SparseVector::zero(), 1.0, 1).unwrap();
    let t8 = truncate(&tail, 8, &s).unwrap();
    let root2 = std::f64::consts::SQRT_2;
    let a = alpha_k(&t8, 3, &s, &budget).unwrap();
    let mut ok = (a - root2).abs() <= 1e-9;
    let mut worst_beta = 0.0_f64;
    for m in 2..=8 {
        worst_beta = worst_beta.max((beta_m(&t8, m, &s, &budget).unwrap() - root2).abs());
    }
    ok &= worst_beta <= 1e-9;
    let chis: Vec<f64> = [4, 8, 12]
        .iter()
        .map(|&n| chi_k(&truncate(&tail, n, &s).unwrap(), 2, &s, &budget).unwrap())
        .collect();
    ok &= chis.windows(2).all(|w| w[1] >= w[0]) && chis[2] >= 0.8;
    verdict(
        ok,
        format!(
            "alpha_3 err {:.1e}, beta_m err {worst_beta:.1e}, chi_2 {:.4} <= {:.4} <= {:.4} (>= 0.8)",
            (a - root2).abs(),
            chis[0],
            chis[1],
            chis[2]
        ),
    )
}

fn hull_solver() -> Outcome {
    let mut worst_gap = 0.0_f64;
    let mut worst_formula = 0.0_f64;
    for p in [2.0, 3.0] {
        let s = space(p);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..50 {
            let r = hull_distance(&random_hull_instance(&mut rng), &s, 1e-8)
                .map_err(|e| e.to_string())?;
            worst_gap = worst_gap.max(r.gap);
        }
        for (a, b) in [
            (0.8_f64, 0.6_f64),
            (0.5, (1.0 - 0.5_f64.powf(p)).powf(1.0 / p)),
        ] {
            let center = SparseVector::basis(1).scaled(a);
            for n in [4usize, 16, 64] {
                let tilted = StructuredSet::tail(center.clone(), b, 2).unwrap();
                let d = hull_distance(&truncate(&tilted, n, &s).unwrap(), &s, 1e-10)
                    .unwrap()
                    .value;
                let want = (a.powf(p) + b.powf(p) * (n as f64).powf(1.0 - p)).powf(1.0 / p);
                worst_formula = worst_formula.max((d - want).abs());
                // Both signs of every axis: the hull reaches the center.
                let sphere = StructuredSet::sphere(center.clone(), b, 2).unwrap();
                let d = hull_distance(&truncate(&sphere, 2 * n, &s).unwrap(), &s, 1e-10)
                    .unwrap()
                    .value;
                worst_formula = worst_formula.max((d - a).abs());
            }
        }
    }
    verdict(
        worst_gap <= 1e-6 && worst_formula <= 1e-6,
        format!("max gap {worst_gap:.1e} <= 1e-6, max formula error {worst_formula:.1e} <= 1e-6"),
    )
}

fn chain() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [2.0, 3.0, 4.0] {
        let r = check_chain(&ctx(p));
        ok &= r.pass;
        parts.push(format!("p={p}: margin {:.1e}", r.margin));
    }
    verdict(ok, parts.join(", "))
}

fn rescaling() -> Outcome {
    let c = ctx(2.0);
    let dev = rescaling_deviation(&c).map_err(|e| e.to_string())?;
    let shrink = 2f64.powf(-0.5);
    let s = space(2.0);
    let cfg = EstimatorConfig::new(256, 1e-6);
    let chi = |e: f64| {
        estimate_modulus(MeasureKind::Chi, &s, e, true, &cfg)
            .unwrap()
            .numeric_estimate
            .unwrap()
    };
    let mut worst_sub = f64::NEG_INFINITY;
    for i in 0..50 {
        let eps = i as f64 * 0.02;
        worst_sub = worst_sub.max(chi(shrink * eps) - shrink * chi(eps));
    }
    verdict(
        dev <= 5e-3 && worst_sub <= 5e-3,
        format!("max identity deviation {dev:.1e}, max subhomogeneity excess {worst_sub:.1e} (both <= 5e-3)"),
    )
}

fn continuity() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0_f64;
    for p in [2.0, 3.0] {
        let c = ctx(p);
        let s = space(p);
        let cfg = EstimatorConfig::new(256, 1e-6);
        for (kind, restricted, right) in estimator_curves(&c) {
            let study = jump_study(
                |e| {
                    Ok(estimate_modulus(kind, &s, e, restricted, &cfg)?
                        .numeric_estimate
                        .unwrap())
                },
                right,
                0.02,
            )
            .map_err(|e| e.to_string())?;
            worst = worst.max(study.worst_ratio());
            ok &= study.worst_ratio() <= 0.6;
        }
    }
    verdict(
        ok,
        format!("4 estimator curves at p=2,3: worst jump ratio {worst:.3} <= 0.6"),
    )
}

fn properties() -> Outcome {
    let cfg = Config {
        trials: 1000,
        ..Config::default()
    };
    let c = VerifyContext::from_config(&cfg).unwrap();
    let axioms = check_axioms(&c);
    let minimal = check_minimality_lemmas(&c);
    verdict(
        axioms.pass && minimal.pass,
        format!(
            "1000 trials: axioms [{}]; minimality [{}]",
            axioms.details, minimal.details
        ),
    )
}

fn determinism() -> Outcome {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_noncompact"))
            .args([
                "verify",
                "--suite",
                "all",
                "--no-runtime",
                "--format",
                "json",
            ])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("verify exited with {}", out.status));
        }
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    verdict(
        a == b,
        format!("two runs, {} bytes each, identical: {}", a.len(), a == b),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closed-form beta modulus", closed_form_beta),
        ("closed-form alpha modulus", closed_form_alpha),
        ("strict gap of the restricted alpha modulus", strict_gap),
        ("oracle exactness", oracle_exactness),
        ("hull solver certificates", hull_solver),
        ("chain orderings", chain),
        ("rescaling identity", rescaling),
        ("continuity probes", continuity),
        ("axiom and minimality properties", properties),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, msg) = match f() {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!(
            "{tag} {:>2} {name}: {msg} [{:.2}s]",
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
