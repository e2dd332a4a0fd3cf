//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use mobius_core::construction::{assemble_psi, trusted_annulus};
use mobius_core::immersion::harmonic_centers;
use mobius_core::pipeline::{self, prepare, Setup};
use mobius_core::quad::parse_rational;
use mobius_core::sampling::annulus_samples;
use mobius_core::*;
use num_complex::Complex64;
use serde_json::Value;

type Outcome = Result<String, String>;
type Entry<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

struct Fixture {
    setup: Setup,
    base: Triple<FormOnAnnulus>,
    psi: Triple<FormOnAnnulus>,
    x: ImmersionData,
}

fn fixture() -> Fixture {
    let setup = prepare(&RunConfig::standard()).expect("standard config");
    let base = setup.voss.restrict_to_annulus(1.5, 48, 4096).expect("restriction");
    let psi = build_psi(&base, &setup.multiplier, setup.params.k).expect("psi");
    let x = integrate(&psi).expect("immersion");
    Fixture {
        setup,
        base,
        psi,
        x,
    }
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_mobius")
}

fn run_cli(dir: &Path, args: &[&str]) -> (i32, Duration) {
    let start = Instant::now();
    let status = Command::new(bin())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run mobius");
    (status.status.code().unwrap_or(-1), start.elapsed())
}

fn multiplier_exact() -> Outcome {
    let start = Instant::now();
    let m1 = QuadExact::from_integer(2);
    let plus = QuadExact::new(parse_rational("2/3").unwrap(), parse_rational("1/3").unwrap(), 13);
    let minus = plus.conjugate();
    ensure(residue_invariant(&m1, &plus).is_zero(), "residue_invariant(2, m2) != 0")?;
    let roots = solve_m2(&parse_rational("2").unwrap(), Some(13)).map_err(|e| e.to_string())?;
    ensure(roots == vec![plus.clone(), minus], format!("roots {roots:?}"))?;
    let report = pipeline::run_multiplier("2", Some(13)).map_err(|e| e.to_string())?;
    ensure(report.passed && report.checks.len() == 5, report.summary())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("m2 = {plus}, 4 items exact, {elapsed:.2?}"))
}

fn coefficient_oracle(fx: &Fixture) -> Outcome {
    let analytic = fx.setup.voss.analytic_coefficients(48).map_err(|e| e.to_string())?;
    let gap = (0..3)
        .flat_map(|j| (-48..=48).map(move |n| (j, n)))
        .map(|(j, n)| (fx.base[j].phi.coeff(n) - analytic[j].coeff(n)).norm())
        .fold(0.0, f64::max);
    ensure(gap < 1e-10, format!("max difference {gap:e}"))?;
    Ok(format!("max |DFT - analytic| = {gap:.2e} < 1e-10"))
}

fn form_symmetry(fx: &Fixture) -> Outcome {
    let defect = |forms: &Triple<FormOnAnnulus>| {
        forms
            .iter()
            .map(|f| f.phi.symmetry_defect(SymmetryMode::Form).unwrap())
            .fold(0.0, f64::max)
    };
    let (b, p) = (defect(&fx.base), defect(&fx.psi));
    let f = fx
        .setup
        .multiplier
        .series()
        .symmetry_defect(SymmetryMode::Function)
        .map_err(|e| e.to_string())?;
    ensure(b < 1e-10 && p < 1e-10 && f == 0.0, format!("base {b:e}, psi {p:e}, f {f:e}"))?;
    Ok(format!("Φ {b:.2e}, Ψ {p:.2e}, f exactly 0"))
}

fn exactness(fx: &Fixture) -> Outcome {
    let worst = fx.psi.iter().map(|f| f.relative_residue()).fold(0.0, f64::max);
    ensure(worst < 1e-12, format!("relative residue {worst:e}"))?;
    let k1 = assemble_psi(&fx.base, &fx.setup.multiplier, 1).map_err(|e| e.to_string())?;
    let control = k1.iter().map(|f| f.relative_residue()).fold(0.0, f64::max);
    ensure(control > 1e-3, format!("k = 1 control only {control:e}"))?;
    Ok(format!("relative residue {worst:.2e}; k = 1 control {control:.2e}"))
}

fn conformality(fx: &Fixture) -> Outcome {
    let psi_annulus = fx.psi[0].annulus();
    let trusted = trusted_annulus(&psi_annulus, 2.0, 48, fx.setup.params.k, 1e-10)
        .map_err(|e| e.to_string())?;
    let samples = annulus_samples(&trusted, 1000, 0.0);
    let triple = WeierstrassTriple::Laurent(fx.psi.clone());
    let d = triple.conformality_defect(&samples).map_err(|e| e.to_string())?;
    let bent = triple
        .with_scaled_component(0, Complex64::new(1.01, 0.0))
        .map_err(|e| e.to_string())?;
    let control = bent.conformality_defect(&samples).map_err(|e| e.to_string())?;
    ensure(d < 1e-10, format!("defect {d:e}"))?;
    ensure(control > 1e-3, format!("control {control:e}"))?;
    Ok(format!(
        "defect {d:.2e} on A({:.4}); 1.01·Φ1 control {control:.2e}",
        trusted.outer
    ))
}

fn metric(fx: &Fixture) -> Outcome {
    let samples = annulus_samples(&fx.psi[0].annulus(), 1000, 1e-3);
    let mc = metric_comparison(&fx.psi, &fx.base, &fx.setup.multiplier, &fx.setup.params, &samples)
        .map_err(|e| e.to_string())?;
    ensure(mc.max_f_deviation < 1e-9, format!("|ratio - |f|| = {:e}", mc.max_f_deviation))?;
    ensure(
        mc.min_ratio > 1.0 / mc.c && mc.max_ratio < mc.c && mc.excluded == 0,
        format!("ratios [{}, {}], c = {}", mc.min_ratio, mc.max_ratio, mc.c),
    )?;
    Ok(format!(
        "|ratio - |f|| <= {:.2e}; ratios in [{:.3}, {:.3}] ⊂ (1/c, c), c = {:.3}",
        mc.max_f_deviation, mc.min_ratio, mc.max_ratio, mc.c
    ))
}

fn compat(fx: &Fixture) -> Outcome {
    let samples = annulus_samples(&fx.x.annulus(), 500, 1e-3);
    let d = fx.x.involution_compat_defect(&samples).map_err(|e| e.to_string())?;
    ensure(d < 1e-8, format!("defect {d:e}"))?;
    Ok(format!("max ‖X∘I - X‖ = {d:.2e} over 500 pairs"))
}

fn harmonicity(fx: &Fixture) -> Outcome {
    let centers = harmonic_centers(&fx.x.annulus());
    let d1 = fx.x.harmonicity_defect(2e-3, &centers).map_err(|e| e.to_string())?;
    let d2 = fx.x.harmonicity_defect(1e-3, &centers).map_err(|e| e.to_string())?;
    let ratio = d1 / d2;
    ensure((3.0..=5.0).contains(&ratio), format!("ratio {ratio}"))?;
    Ok(format!("defect ratio {ratio:.4} (h = 2e-3 → 1e-3)"))
}

fn gauss_clearance(fx: &Fixture) -> Outcome {
    let samples = annulus_samples(&fx.psi[0].annulus(), 10_000, 0.0);
    let triple = WeierstrassTriple::Laurent(fx.psi.clone());
    let values: Vec<Complex64> = samples
        .iter()
        .map(|&z| triple.gauss_map(z).unwrap().finite().expect("finite Gauss value"))
        .collect();
    let rep = gauss_report(fx.setup.voss.config(), fx.setup.params.k, 1.5, &values);
    ensure(rep.clearance[0] == 0.5, format!("clearance to α {}", rep.clearance[0]))?;
    ensure(rep.clearance[2] == 1.0 / 6.0, format!("clearance to -1/ᾱ {}", rep.clearance[2]))?;
    let (lo, hi) = rep.sampled_modulus_range;
    ensure(lo >= 1.0 / 1.5 - 1e-9 && hi <= 1.5 + 1e-9, format!("moduli [{lo}, {hi}]"))?;
    for i in 0..4 {
        ensure(
            rep.sampled_min_distance[i] >= rep.clearance[i] - 1e-9,
            format!("point {i}: {} < {}", rep.sampled_min_distance[i], rep.clearance[i]),
        )?;
    }
    ensure(rep.projective_classes.len() == 2, format!("{:?}", rep.projective_classes))?;
    Ok(format!(
        "clearances 0.5 and 1/6 exact; |g| ∈ [{lo:.6}, {hi:.6}]; classes {:?}",
        rep.projective_classes
    ))
}

fn completeness() -> Outcome {
    let report = pipeline::run_probe(
        &RunConfig::standard(),
        pipeline::ProbeTarget::Alpha,
        &[1e-2, 1e-3, 1e-4, 1e-5],
    )
    .map_err(|e| e.to_string())?;
    let spread = report
        .get("probe.log_divergence")
        .ok_or("missing probe verdict")?
        .measured;
    ensure(report.passed && spread < 0.10, format!("spread {spread}"))?;
    Ok(format!("decade differences within {:.3}%", spread * 100.0))
}

fn nonorientability() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    for (name, args) in [
        ("a", vec!["mesh", "--mesh", "a.obj", "--out", "a.json"]),
        ("b", vec!["mesh", "--mesh", "b.obj", "--out", "b.json"]),
        ("full", vec!["mesh", "--quotient", "false", "--mesh", "full.obj", "--out", "full.json"]),
    ] {
        let (code, _) = run_cli(d, &args);
        ensure(code == 0, format!("mesh {name} exited {code}"))?;
    }
    let read = |f: &str| std::fs::read_to_string(d.join(f)).unwrap();
    let (a, b, full) = (read("a.obj"), read("b.obj"), read("full.obj"));
    ensure(a == b, "repeated runs differ")?;
    let qa = parse_obj(&a).map_err(|e| e.to_string())?;
    let qf = parse_obj(&full).map_err(|e| e.to_string())?;
    ensure(qa.to_obj() == a && qf.to_obj() == full, "OBJ does not round-trip")?;
    let (oq, of) = (
        mobius_core::mesh::orientability(&qa.faces),
        mobius_core::mesh::orientability(&qf.faces),
    );
    ensure(
        oq == Orientability::Nonorientable && of == Orientability::Orientable,
        format!("quotient {oq:?}, full {of:?}"),
    )?;
    Ok(format!(
        "quotient {oq:?}, full {of:?}; {} vertices, byte-identical reruns",
        qa.vertices.len()
    ))
}

fn full_pipeline() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (code, elapsed) = run_cli(dir.path(), &["verify", "--out", "r.json"]);
    ensure(code == 0, format!("verify exited {code}"))?;
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    let text = std::fs::read_to_string(dir.path().join("r.json")).map_err(|e| e.to_string())?;
    let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let checks = v["checks"].as_array().ok_or("no checks")?;
    ensure(
        checks.iter().all(|c| c["anchor"].as_str().is_some_and(|a| !a.is_empty())),
        "a record has no anchor",
    )?;
    ensure(v["passed"] == Value::Bool(true), "report verdict false")?;
    Ok(format!("exit 0 in {elapsed:.2?}; {} anchored records", checks.len()))
}

fn main() {
    let fx = fixture();
    let criteria: Vec<Entry<'_>> = vec![
        ("1 exact multiplier identities", Box::new(multiplier_exact)),
        ("2 coefficient oracle", Box::new(|| coefficient_oracle(&fx))),
        ("3 form symmetry", Box::new(|| form_symmetry(&fx))),
        ("4 exactness", Box::new(|| exactness(&fx))),
        ("5 conformality", Box::new(|| conformality(&fx))),
        ("6 metric comparison", Box::new(|| metric(&fx))),
        ("7 quotient compatibility", Box::new(|| compat(&fx))),
        ("8 harmonicity", Box::new(|| harmonicity(&fx))),
        ("9 Gauss clearance", Box::new(|| gauss_clearance(&fx))),
        ("10 completeness diagnostic", Box::new(completeness)),
        ("11 nonorientability", Box::new(nonorientability)),
        ("12 full pipeline", Box::new(full_pipeline)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
