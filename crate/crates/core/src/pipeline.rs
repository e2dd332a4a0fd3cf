//! End-to-end runs behind the command-line interface.
//!
//! Configuration problems surface as `Err`; mathematical checks never do.
//! They are recorded in the returned [`RunReport`], whose `passed` flag is
//! the conjunction of all checks.

use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::config::{config_hash, RunConfig};
use crate::construction::{
    build_psi, metric_comparison, trusted_annulus, verify_psi, ConstructionParams,
    VerifyTolerances,
};
use crate::error::{Error, Result};
use crate::immersion::{gauss_report, harmonic_centers, integrate_with_tolerance, ImmersionData};
use crate::laurent::{Annulus, FormOnAnnulus, LaurentCoefficients, SymmetryMode};
use crate::mesh::{build_mesh, Mesh, MeshSpec, Orientability};
use crate::multiplier::{check_radicand, coefficients, residue_invariant, solve_m2, MultiplierParams};
use crate::quad::{parse_rational, QuadExact};
use crate::report::{Criterion, RunReport};
use crate::sampling::{annulus_samples, circle_samples};
use crate::voss::{involution, validate_punctures, Triple, VossData};
use crate::weierstrass::{forms_from_pair, GaussValue, WeierstrassTriple};

/// Sample counts used by `verify`.
pub const PSI_SAMPLES: usize = 1000;
pub const COMPAT_SAMPLES: usize = 500;
pub const GAUSS_SAMPLES: usize = 10_000;
pub const PERIOD_SAMPLES: usize = 4096;
/// Stencil widths for the harmonicity convergence check.
pub const HARMONIC_STEPS: (f64, f64) = (2e-3, 1e-3);

/// A validated configuration with the exact multiplier and `k` resolved.
#[derive(Clone, Debug)]
pub struct Setup {
    pub config: RunConfig,
    pub voss: VossData,
    pub multiplier: MultiplierParams,
    pub params: ConstructionParams,
    pub mesh: MeshSpec,
}

fn multiplier_from(m1: &str, d: Option<u64>) -> Result<(BigRational, Vec<QuadExact>)> {
    let m1 = parse_rational(m1)?;
    if let Some(d) = d {
        check_radicand(d)?;
    }
    let roots = solve_m2(&m1, d)?;
    Ok((m1, roots))
}

/// Validates every cross-constraint of a config before any heavy work.
pub fn prepare(config: &RunConfig) -> Result<Setup> {
    let voss = VossData::new(validate_punctures(
        config.punctures.alpha(),
        config.punctures.beta(),
    )?);
    let r = config.annulus.r;
    let limit = config.punctures.alpha().norm().min(config.punctures.beta().norm());
    if !(r > 1.0 && r < limit) {
        return Err(Error::Config(format!("annulus R = {r} must lie in (1, {limit})")));
    }
    let t = &config.truncation;
    if t.n == 0 || !t.samples.is_power_of_two() || t.samples < 4 * t.n {
        return Err(Error::Config(format!(
            "truncation needs N >= 1 and samples a power of two >= 4N, got N = {}, samples = {}",
            t.n, t.samples
        )));
    }
    let (m1, roots) = multiplier_from(&config.multiplier.m1, config.multiplier.d)?;
    let multiplier = coefficients(&QuadExact::rational(m1), &roots[0])?;
    if !multiplier.b(0).is_zero() {
        return Err(Error::Config("multiplier residue does not vanish".into()));
    }
    let margin = config.construction.margin;
    if !(0.0..1.0).contains(&margin) {
        return Err(Error::Config(format!("margin {margin} out of [0, 1)")));
    }
    let params = match config.construction.k.fixed() {
        Some(k) => ConstructionParams::new(k, r, margin, &multiplier)?,
        None => ConstructionParams::auto(r, margin, &multiplier)?,
    };
    let m = &config.mesh;
    if m.n_r < 2 || m.n_theta < 8 || !m.n_theta.is_multiple_of(2) || !(0.0..1.0).contains(&m.boundary_inset) {
        return Err(Error::Config(format!(
            "mesh needs n_r >= 2, even n_theta >= 8 and inset in [0, 1), got {} x {}, {}",
            m.n_r, m.n_theta, m.boundary_inset
        )));
    }
    let tol = &config.tolerances;
    if [tol.res, tol.symmetry, tol.conformality, tol.compat]
        .iter()
        .any(|&x| !(x > 0.0))
    {
        return Err(Error::Config("tolerances must be positive".into()));
    }
    Ok(Setup {
        config: config.clone(),
        voss,
        multiplier,
        params,
        mesh: MeshSpec {
            n_r: m.n_r,
            n_theta: m.n_theta,
            boundary_inset: m.boundary_inset,
            quotient: m.quotient,
        },
    })
}

/// Everything `verify` computed, for reuse by `mesh`.
#[derive(Clone, Debug)]
pub struct Verification {
    pub setup: Setup,
    pub base: Option<Triple<FormOnAnnulus>>,
    pub psi: Option<Triple<FormOnAnnulus>>,
    pub immersion: Option<ImmersionData>,
    pub report: RunReport,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn exact_multiplier_checks(report: &mut RunReport, f: &MultiplierParams) {
    report.exact(
        "multiplier.poles",
        "f is holomorphic on ℂ* with poles of order m at 0 and ∞",
        !f.b(f.degree() as i64).is_zero() && !f.b(-(f.degree() as i64)).is_zero(),
        format!("b_(±{}) = {}", f.degree(), f.b(f.degree() as i64)),
    );
    let symmetric = (0..=2i64).all(|n| {
        let b = f.b(n);
        let image = if n % 2 == 0 { b } else { -b };
        f.b(-n) == image
    });
    report.exact(
        "multiplier.function_symmetry",
        "f ∘ I = f̄, i.e. b_(-n) = (-1)^n conj(b_n)",
        symmetric,
        format!("b_2 = {}, b_1 = {}", f.b(2), f.b(1)),
    );
    report.exact(
        "multiplier.unit_circle_nonvanishing",
        "f(z) ≠ 0 for |z| = 1",
        f.nonvanishing_on_unit_circle(),
        format!(
            "zeros {{{}}}",
            f.zeros.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(", ")
        ),
    );
    let inv = residue_invariant(&f.m1, &f.m2);
    report.exact(
        "multiplier.residue",
        "Res(f(z) dz/z, 0) = (1-m1²)(1-m2²) - 2 m1 m2 = 0",
        inv.is_zero() && f.b(0).is_zero(),
        format!("residue invariant = {inv}"),
    );
}

/// Solves for `m₂` exactly and checks the four multiplier properties.
pub fn run_multiplier(m1: &str, d: Option<u64>) -> Result<RunReport> {
    let m1 = parse_rational(m1)?;
    if let Some(d) = d {
        check_radicand(d)?;
    }
    let mut report = RunReport::new("lemma2");
    report.value("m1", m1.to_string());
    let roots = match solve_m2(&m1, d) {
        Ok(r) => r,
        Err(e @ Error::NoValidRoot(_)) => {
            report.failure(
                "multiplier.solve_m2",
                "(m1²-1) m2² - 2 m1 m2 + (1-m1²) = 0",
                e.to_string(),
            );
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.value("m2_roots", roots.iter().map(|r| r.to_string()).collect::<Vec<_>>());
    let m1q = QuadExact::rational(m1);
    let all_zero = roots.iter().all(|r| residue_invariant(&m1q, r).is_zero());
    report.exact(
        "multiplier.solve_m2",
        "(m1²-1) m2² - 2 m1 m2 + (1-m1²) = 0",
        all_zero,
        format!("m2 ∈ {{{}}}", roots.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")),
    );
    match coefficients(&m1q, &roots[0]) {
        Ok(f) => {
            report.value("m2", f.m2.to_string());
            report.value(
                "b",
                (-2..=2).map(|n| (n, f.b(n).to_string())).collect::<Vec<_>>(),
            );
            report.value("zeros", f.zeros.iter().map(|z| z.to_string()).collect::<Vec<_>>());
            exact_multiplier_checks(&mut report, &f);
        }
        Err(e) => report.failure("multiplier.coefficients", "m1, m2 nonzero", e.to_string()),
    }
    Ok(report)
}

/// Runs the whole construction and every check on it.
pub fn run_verify(config: &RunConfig, config_text: &str) -> Result<Verification> {
    let setup = prepare(config)?;
    let mut report =
        RunReport::new("verify").with_config(config_text, &config_hash(config_text.as_bytes()));
    let mut out = Verification {
        setup: setup.clone(),
        base: None,
        psi: None,
        immersion: None,
        report: RunReport::new("verify"),
    };
    let result = verify_steps(&setup, &mut report, &mut out);
    if let Err(e) = result {
        report.failure("pipeline", "every stage completes", e.to_string());
    }
    out.report = report;
    Ok(out)
}

fn verify_steps(setup: &Setup, report: &mut RunReport, out: &mut Verification) -> Result<()> {
    let cfg = &setup.config;
    let tol = &cfg.tolerances;
    let voss = &setup.voss;
    let r = cfg.annulus.r;
    let base_annulus = Annulus::symmetric(r)?;

    // punctured-sphere data
    let ps = voss.config().punctures();
    let closure = ps
        .iter()
        .map(|&p| ps.iter().map(|&q| (q - involution(p)).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    report.check(
        "voss.puncture_symmetry",
        "{α, β, -1/ᾱ, -1/β̄} is invariant under I(z) = -1/z̄",
        closure,
        Criterion::Below(1e-12),
    );
    let base_samples = annulus_samples(&base_annulus, 100, 0.0);
    report.check(
        "voss.involution_relations",
        "ĝ∘Î = -1/conj(ĝ) and Î*(η̂) = -conj(η̂ ĝ²)",
        voss.involution_defect(&base_samples)?,
        Criterion::Below(1e-12),
    );
    let v = *voss;
    let pair = forms_from_pair(
        std::sync::Arc::new(move |z| Ok(v.gauss(z))),
        std::sync::Arc::new(move |z| v.eta_density(z)),
    );
    let sphere_grid: Vec<Complex64> = annulus_samples(&Annulus::new(0.05, 20.0)?, 200, 0.0)
        .into_iter()
        .filter(|z| ps.iter().all(|p| (z - p).norm() > 1e-3))
        .collect();
    report.check(
        "voss.conformality",
        "Φ̂1² + Φ̂2² + Φ̂3² ≡ 0",
        pair.conformality_defect(&sphere_grid)?,
        Criterion::Below(1e-14),
    );
    let finite_min = pair.regularity_min(&sphere_grid)?;
    let at_infinity = voss.metric_density_at_infinity(c(0.0, 0.0));
    report.check(
        "voss.regularity",
        "|Φ̂1|² + |Φ̂2|² + |Φ̂3|² ≠ 0, including the chart at ∞",
        finite_min.min(at_infinity * at_infinity),
        Criterion::Above(0.0),
    );

    // restriction to A(R)
    let n = cfg.truncation.n;
    let base = voss.restrict_to_annulus(r, n, cfg.truncation.samples)?;
    let analytic = voss.analytic_coefficients(n)?;
    let oracle_gap = (0..3)
        .flat_map(|j| {
            let (b, a) = (&base[j].phi, &analytic[j]);
            (-(n as i64)..=n as i64).map(move |i| (b.coeff(i) - a.coeff(i)).norm())
        })
        .fold(0.0, f64::max);
    report.check(
        "base.coefficient_oracle",
        "DFT coefficients agree with partial-fraction expansion",
        oracle_gap,
        Criterion::Below(1e-10),
    );
    let mut base_sym: f64 = 0.0;
    for f in &base {
        base_sym = base_sym.max(f.phi.symmetry_defect(SymmetryMode::Form)?);
    }
    report.check(
        "base.form_symmetry",
        "I*(Φ_j) = conj(Φ_j): a_(-n) = (-1)^(n+1) conj(a_n), a_0 ∈ iℝ",
        base_sym,
        Criterion::Below(tol.symmetry),
    );
    let mut circle_gap: f64 = 0.0;
    for z in circle_samples(1.2, 256) {
        let direct = voss.phi(z)?;
        for j in 0..3 {
            circle_gap = circle_gap.max((base[j].phi.evaluate(z)? - direct[j]).norm());
        }
    }
    report.check(
        "base.restriction_accuracy",
        "restricted series reproduce φ_j = z·Φ̂_j on |z| = 1.2",
        circle_gap,
        Criterion::Below(1e-9),
    );

    // multiplier
    let f = &setup.multiplier;
    report.value("m1", f.m1.to_string());
    report.value("m2", f.m2.to_string());
    exact_multiplier_checks(report, f);

    // construction
    let params = &setup.params;
    report.value("k", params.k);
    report.value("rho", params.rho);
    report.value("c", params.c);
    report.exact(
        "construction.k",
        "k odd, k > m",
        params.k % 2 == 1 && params.k > f.degree(),
        format!("k = {}, m = {}", params.k, f.degree()),
    );
    let zero_gap = f
        .zero_moduli()
        .iter()
        .map(|&m| if m > 1.0 { m / params.rho } else { 1.0 / (m * params.rho) })
        .fold(f64::INFINITY, f64::min);
    report.check(
        "construction.zero_clearance",
        "f never vanishes on the closure of A(R^(1/k))",
        zero_gap,
        Criterion::Above(1.0 + params.margin),
    );

    let psi = build_psi(&base, f, params.k)?;
    let psi_annulus = psi[0].annulus();
    let samples = annulus_samples(&psi_annulus, PSI_SAMPLES, 1e-3);
    let vt = VerifyTolerances {
        res: tol.res,
        symmetry: tol.symmetry,
        conformality: tol.conformality,
    };
    let mu = cfg.punctures.alpha().norm().min(cfg.punctures.beta().norm());
    let trusted = trusted_annulus(&psi_annulus, mu, n, params.k, tol.conformality)?;
    report.value("trusted_radius", trusted.outer);
    let trusted_samples = annulus_samples(&trusted, PSI_SAMPLES, 0.0);
    let pr = verify_psi(&psi, &trusted_samples, &vt)?;
    for j in 0..3 {
        report.check(
            &format!("psi.residue_{}", j + 1),
            "Ψ_j is exact: Res(Ψ_j, 0) = 0",
            pr.relative_residues[j],
            Criterion::AtMost(tol.res),
        );
    }
    report.check(
        "psi.form_symmetry",
        "I*(Ψ1, Ψ2, Ψ3) = (conj Ψ1, conj Ψ2, conj Ψ3)",
        pr.symmetry_defect,
        Criterion::Below(tol.symmetry),
    );
    report.check(
        "psi.conformality",
        "Ψ1² + Ψ2² + Ψ3² ≡ 0",
        pr.conformality_defect,
        Criterion::Below(tol.conformality),
    );
    let psi_triple = WeierstrassTriple::Laurent(psi.clone());
    report.value("conformality_defect_full_annulus", psi_triple.conformality_defect(&samples)?);
    report.check(
        "psi.regularity",
        "|Ψ1|² + |Ψ2|² + |Ψ3|² ≠ 0",
        pr.regularity_min.min(psi_triple.regularity_min(&samples)?),
        Criterion::Above(0.0),
    );

    let mc = metric_comparison(&psi, &base, f, params, &samples)?;
    report.check(
        "metric.ratio_equals_abs_f",
        "ds0 / T_k*(ds) = |f|",
        mc.max_f_deviation,
        Criterion::Below(1e-9),
    );
    report.check(
        "metric.comparison_bounds",
        "(1/c²) T_k*(ds²) <= ds0² <= c² T_k*(ds²)",
        mc.max_ratio.max(1.0 / mc.min_ratio),
        Criterion::Below(params.c),
    );

    let base_triple = WeierstrassTriple::Laurent(base.clone());
    let mut gauss_gap: f64 = 0.0;
    let mut gauss_values = Vec::with_capacity(samples.len());
    for &z in &samples {
        match (psi_triple.gauss_map(z)?, base_triple.gauss_map(z.powi(params.k as i32))?) {
            (GaussValue::Finite(g), GaussValue::Finite(h)) => {
                gauss_gap = gauss_gap.max((g - h).norm() / h.norm().max(1.0));
                gauss_values.push(g);
            }
            (GaussValue::Infinity, GaussValue::Infinity) => {}
            _ => gauss_gap = f64::INFINITY,
        }
    }
    report.check(
        "gauss.factorization",
        "the Gauss map of Ψ is g ∘ T_k",
        gauss_gap,
        Criterion::Below(1e-9),
    );

    // immersion
    let x = integrate_with_tolerance(&psi, tol.res)?;
    let origin = x.position(x.base_point())?;
    report.check(
        "immersion.base_point",
        "X(z) = Re ∫_1^z Ψ, so X(1) = 0",
        origin.iter().map(|v| v.abs()).fold(0.0, f64::max),
        Criterion::AtMost(0.0),
    );
    let periods = x.unit_circle_periods(PERIOD_SAMPLES)?;
    report.check(
        "immersion.no_real_periods",
        "∮_(|z|=1) Ψ_j = 0",
        periods.iter().map(|p| p.norm()).fold(0.0, f64::max),
        Criterion::Below(1e-10),
    );
    let compat_samples = annulus_samples(&psi_annulus, COMPAT_SAMPLES, 1e-3);
    report.check(
        "immersion.involution_compat",
        "X ∘ I = X, so X descends to A(ρ)/<I>",
        x.involution_compat_defect(&compat_samples)?,
        Criterion::Below(tol.compat),
    );
    let centers = harmonic_centers(&psi_annulus);
    let (h1, h2) = HARMONIC_STEPS;
    let d1 = x.harmonicity_defect(h1, &centers)?;
    let d2 = x.harmonicity_defect(h2, &centers)?;
    report.value("harmonicity_defects", [d1, d2]);
    report.check(
        "immersion.harmonicity_order",
        "X harmonic in isothermal coordinates: Δ_h X = O(h²)",
        d1 / d2,
        Criterion::Within(3.0, 5.0),
    );

    // Gauss image against the omitted points
    let gauss_samples: Vec<Complex64> = annulus_samples(&psi_annulus, GAUSS_SAMPLES, 1e-3)
        .into_iter()
        .map(|z| psi_triple.gauss_map(z).map(|g| g.finite().unwrap_or(c(f64::INFINITY, 0.0))))
        .collect::<Result<_>>()?;
    gauss_values.extend(gauss_samples);
    gauss_checks(report, setup, &gauss_values);

    out.base = Some(base);
    out.psi = Some(psi);
    out.immersion = Some(x);
    Ok(())
}

fn gauss_checks(report: &mut RunReport, setup: &Setup, gauss_values: &[Complex64]) {
    let r = setup.config.annulus.r;
    let gr = gauss_report(setup.voss.config(), setup.params.k, r, gauss_values);
    report.check(
        "gauss.projective_classes",
        "omitted {α, β, -1/ᾱ, -1/β̄} pair into 2 points of ℝP²",
        gr.projective_classes.len() as f64,
        Criterion::Within(2.0, 2.0),
    );
    let (lo, hi) = gr.sampled_modulus_range;
    let spill = (1.0 / r - lo).max(hi - r);
    report.check(
        "gauss.image_containment",
        "the Gauss image lies in the closed annulus A(R)",
        spill,
        Criterion::AtMost(1e-9),
    );
    let slack = (0..4)
        .map(|i| gr.sampled_min_distance[i] - gr.clearance[i])
        .fold(f64::INFINITY, f64::min);
    report.check(
        "gauss.omits_punctures",
        "the Gauss map omits four points of the sphere",
        slack,
        Criterion::Above(-1e-9),
    );
    report.value("gauss", &gr);
}

/// Result of the `mesh` command.
#[derive(Clone, Debug)]
pub struct MeshOutcome {
    pub report: RunReport,
    /// `None` when verification failed.
    pub mesh: Option<Mesh>,
}

/// Verifies, then meshes the quotient or the full annulus.
pub fn run_mesh(config: &RunConfig, config_text: &str) -> Result<MeshOutcome> {
    let v = run_verify(config, config_text)?;
    let mut report = v.report;
    report.command = "mesh".into();
    let x = match (&v.immersion, report.passed) {
        (Some(x), true) => x,
        _ => return Ok(MeshOutcome { report, mesh: None }),
    };
    let setup = &v.setup;
    let mut mesh = match build_mesh(x, &setup.mesh) {
        Ok(m) => m,
        Err(e) => {
            report.failure("mesh.build", "grid triangulation of the annulus", e.to_string());
            return Ok(MeshOutcome { report, mesh: None });
        }
    };
    let hash = config_hash(config_text.as_bytes());
    let tol = &setup.config.tolerances;
    mesh.metadata.insert("config_hash".into(), hash);
    mesh.metadata.insert("k".into(), setup.params.k.to_string());
    mesh.metadata.insert("R".into(), setup.config.annulus.r.to_string());
    mesh.metadata.insert(
        "tolerances".into(),
        format!(
            "res:{:e},symmetry:{:e},conformality:{:e},compat:{:e}",
            tol.res, tol.symmetry, tol.conformality, tol.compat
        ),
    );

    let orientation = mesh.orientability();
    let expected = if setup.mesh.quotient {
        Orientability::Nonorientable
    } else {
        Orientability::Orientable
    };
    report.value("orientability", format!("{orientation:?}"));
    report.exact(
        "mesh.orientability",
        if setup.mesh.quotient {
            "A(ρ)/<I> is a Möbius strip: nonorientable"
        } else {
            "A(ρ) is orientable"
        },
        orientation == expected,
        format!("{orientation:?}"),
    );
    if setup.mesh.quotient {
        report.check(
            "mesh.quotient_gap",
            "X(z) = X(-z) on |z| = 1",
            mesh.quotient_gap(),
            Criterion::Below(tol.compat),
        );
    }
    let psi = WeierstrassTriple::Laurent(v.psi.clone().expect("psi after verify"));
    let gauss_values: Result<Vec<Complex64>> = mesh
        .params
        .iter()
        .map(|&z| psi.gauss_map(z).map(|g| g.finite().unwrap_or(c(f64::INFINITY, 0.0))))
        .collect();
    match gauss_values {
        Ok(g) => {
            let before = report.checks.len();
            gauss_checks(&mut report, setup, &g);
            for chk in &mut report.checks[before..] {
                chk.name = format!("mesh.{}", chk.name);
            }
        }
        Err(e) => report.failure("mesh.gauss", "Gauss map on mesh vertices", e.to_string()),
    }
    report.value("mesh_vertices", mesh.vertices.len());
    report.value("mesh_faces", mesh.faces.len());
    let mesh = report.passed.then_some(mesh);
    Ok(MeshOutcome { report, mesh })
}

/// Which point a completeness probe heads toward.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProbeTarget {
    Alpha,
    Beta,
    AlphaImage,
    BetaImage,
    Point(Complex64),
}

impl std::str::FromStr for ProbeTarget {
    type Err = Error;

    /// `alpha`, `beta`, `alpha-image`, `beta-image`, or `re,im`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "alpha" => Ok(Self::Alpha),
            "beta" => Ok(Self::Beta),
            "alpha-image" => Ok(Self::AlphaImage),
            "beta-image" => Ok(Self::BetaImage),
            other => {
                let (re, im) = other
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("unknown probe target {other:?}")))?;
                let parse = |x: &str| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad probe target {other:?}")))
                };
                Ok(Self::Point(c(parse(re)?, parse(im)?)))
            }
        }
    }
}

/// Decade differences of `L(ε)` are treated as constant when their spread is
/// below this fraction.
pub const PROBE_SPREAD: f64 = 0.10;

/// Metric lengths toward a target and whether they diverge like `log(1/ε)`
/// (punctures) or converge (regular points).
pub fn run_probe(config: &RunConfig, target: ProbeTarget, epsilons: &[f64]) -> Result<RunReport> {
    let voss = VossData::new(validate_punctures(
        config.punctures.alpha(),
        config.punctures.beta(),
    )?);
    let [a, b, ai, bi] = voss.config().punctures();
    let point = match target {
        ProbeTarget::Alpha => a,
        ProbeTarget::Beta => b,
        ProbeTarget::AlphaImage => ai,
        ProbeTarget::BetaImage => bi,
        ProbeTarget::Point(z) => z,
    };
    let is_puncture = voss
        .config()
        .punctures()
        .iter()
        .any(|&p| (p - point).norm() <= 1e-12 * (1.0 + p.norm()));
    if epsilons.len() < 3 {
        return Err(Error::Domain("probe needs at least three epsilons".into()));
    }
    let lengths = voss.completeness_probe(point, epsilons)?;
    let diffs: Vec<f64> = lengths.windows(2).map(|w| w[1] - w[0]).collect();
    let mut report = RunReport::new("probe");
    report.value("target", (point.re, point.im));
    report.value("epsilons", epsilons);
    report.value("lengths", &lengths);
    report.value("differences", &diffs);
    let increasing = diffs.iter().all(|&d| d > 0.0);
    report.exact(
        "probe.monotone",
        "L(ε) increases as ε decreases",
        increasing,
        format!("{} differences", diffs.len()),
    );
    if is_puncture {
        let lo = diffs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = diffs.iter().cloned().fold(0.0, f64::max);
        report.value("verdict", "diverges");
        report.check(
            "probe.log_divergence",
            "dŝ² is complete: length to a puncture diverges like log(1/ε)",
            (hi - lo) / lo,
            Criterion::Below(PROBE_SPREAD),
        );
    } else {
        let first = diffs[0];
        let last = diffs[diffs.len() - 1];
        report.value("verdict", "converges");
        report.check(
            "probe.convergence",
            "length to a regular point stays finite",
            last / first,
            Criterion::Below(PROBE_SPREAD),
        );
    }
    Ok(report)
}

fn dump_series(s: &LaurentCoefficients) -> Value {
    json!({
        "band": s.band(),
        "annulus": [s.annulus().inner, s.annulus().outer],
        "coefficients": s.iter().map(|(n, a)| json!([n, a.re, a.im])).collect::<Vec<_>>(),
    })
}

/// Laurent coefficients of the restricted base forms, the multiplier and `Ψ`.
pub fn coefficient_dump(config: &RunConfig) -> Result<Value> {
    let setup = prepare(config)?;
    let t = &config.truncation;
    let base = setup.voss.restrict_to_annulus(config.annulus.r, t.n, t.samples)?;
    let psi = build_psi(&base, &setup.multiplier, setup.params.k)?;
    Ok(json!({
        "k": setup.params.k,
        "R": config.annulus.r,
        "base": base.iter().map(|f| dump_series(&f.phi)).collect::<Vec<_>>(),
        "multiplier": dump_series(&setup.multiplier.series()),
        "psi": psi.iter().map(|f| dump_series(&f.phi)).collect::<Vec<_>>(),
    }))
}
