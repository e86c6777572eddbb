//! Runs the engines on a spec and collects claims.
//!
//! Algebraic stages run in order on the calling thread while the curvature
//! stage runs beside them; inside the curvature stage the per-`d` annulus
//! scans are spread over worker threads. Results are merged in a fixed order,
//! so the report does not depend on scheduling.

use std::thread;

use serde_json::{json, Value};

use kummer_core::clifford::{spin_obstruction, Signature, Verdict};
use kummer_core::cohomology::{
    averaging_projector, burnside_dimension, invariant_forms, orbifold_betti, resolved_betti, BettiTable,
};
use kummer_core::curvature::chart::{euler_chart, sphere_chart};
use kummer_core::curvature::cohomo::LAMBDA_CANDIDATES;
use kummer_core::curvature::{
    annulus_sup, calibrate_coframe, cohomo_curvature, decay_scan, eh_profile, geometric_grid, glued_profile,
    mu_report, sup_over, AnnulusSup, Euclidean, Fit, GlueScan, MuReport, COFRAME_LAMBDA,
};
use kummer_core::fstructure::{verify_f_structure, Check, FStructureVerdict, MIN_VOL_NOTE};
use kummer_core::lattice::{
    fixed_locus, generate_group_with_cap, pi1_certificate, singular_census, Certificate, FixedComponent, GroupTable,
    SingularCensus, DEFAULT_CLOSURE_CAP,
};
use kummer_core::Rat;

use crate::error::KummerError;
use crate::report::{num, Claim, ModuleBlock, Report, SpecEcho, Status};
use crate::spec::{ConstructionSpec, Expected, GluingSpec};

/// Environment variable overriding the worker-thread count.
pub const THREADS_ENV: &str = "KUMMER_THREADS";

#[derive(Clone, Debug)]
pub struct Options {
    /// Multiplies every numeric tolerance; exact checks are unaffected.
    pub tolerance_scale: f64,
    pub max_group_order: usize,
    /// `None` reads [`THREADS_ENV`], falling back to the available parallelism.
    pub threads: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options { tolerance_scale: 1.0, max_group_order: DEFAULT_CLOSURE_CAP, threads: None }
    }
}

impl Options {
    pub fn thread_count(&self) -> usize {
        self.threads
            .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()))
            .filter(|&t| t > 0)
            .unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stages {
    pub lattice: bool,
    pub census: bool,
    pub spin: bool,
    pub cohomology: bool,
    pub curvature: bool,
    pub f_structure: bool,
}

impl Stages {
    pub const ALL: Stages =
        Stages { lattice: true, census: true, spin: true, cohomology: true, curvature: true, f_structure: true };
    pub const NONE: Stages =
        Stages { lattice: false, census: false, spin: false, cohomology: false, curvature: false, f_structure: false };
}

/// Numbers the CSV writers and callers need besides the report.
#[derive(Clone, Debug)]
pub struct CurvatureOutcome {
    pub glue: GlueScan,
    pub mu: MuReport,
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub report: Report,
    pub group: Option<GroupTable>,
    pub curvature: Option<CurvatureOutcome>,
}

pub fn run_all(spec: &ConstructionSpec, opts: &Options) -> Result<Report, KummerError> {
    run_stages(spec, Stages::ALL, opts).map(|o| o.report)
}

pub fn run_stages(spec: &ConstructionSpec, stages: Stages, opts: &Options) -> Result<PipelineOutput, KummerError> {
    let gluing = spec.gluing.as_ref().filter(|_| stages.curvature);
    let (algebra, curvature) = thread::scope(|s| {
        let handle = gluing.map(|g| s.spawn(move || curvature_stage(g, opts)));
        let algebra = algebra_stages(spec, stages, opts);
        let curvature = handle.map(|h| h.join().expect("curvature stage panicked"));
        (algebra, curvature)
    });
    let mut acc = algebra?;
    let curvature = match curvature.transpose()? {
        Some((block, claims, notes, outcome)) => {
            acc.push_block("curvature", block, claims);
            acc.notes.extend(notes);
            Some(outcome)
        }
        None => None,
    };

    if stages.f_structure {
        if let (Some(atlas), Some(group)) = (&spec.atlas, &acc.group) {
            let verdict = verify_f_structure(&atlas.charts, &atlas.rules, group)
                .map_err(KummerError::engine("f_structure"))?;
            let (block, claims) = f_structure_block(&verdict, spec.expected.as_ref());
            acc.push_block("f_structure", block, claims);
            if let Some(n) = verdict.min_vol_note {
                acc.notes.push(n.to_string());
            }
        }
    }

    let overall = if acc.claims.iter().any(|c| c.status == Status::Fail) { Status::Fail } else { Status::Pass };
    let report = Report {
        spec: SpecEcho {
            name: spec.name.clone(),
            version: spec.version,
            dimension: spec.dimension,
            generators: spec.generators.iter().map(|g| format!("{} = {:?}", g.name, g.isometry)).collect(),
            source: spec.source.clone(),
        },
        modules: acc.modules,
        claims: acc.claims,
        notes: acc.notes,
        overall,
    };
    Ok(PipelineOutput { report, group: acc.group, curvature })
}

#[derive(Default)]
struct Accumulator {
    modules: Vec<ModuleBlock>,
    claims: Vec<Claim>,
    notes: Vec<String>,
    group: Option<GroupTable>,
}

impl Accumulator {
    fn push_block(&mut self, module: &'static str, data: Value, claims: Vec<Claim>) {
        self.modules.push(ModuleBlock { module, data });
        self.claims.extend(claims);
    }
}

fn needs_group(stages: Stages) -> bool {
    stages.lattice || stages.census || stages.cohomology || stages.f_structure
}

fn algebra_stages(spec: &ConstructionSpec, stages: Stages, opts: &Options) -> Result<Accumulator, KummerError> {
    let mut acc = Accumulator::default();
    let expected = spec.expected.as_ref();
    let mut spin = stages.spin.then(|| spin_block(spec, expected));
    if needs_group(stages) {
        let group = generate_group_with_cap(&spec.named_generators(), opts.max_group_order)
            .map_err(KummerError::engine("lattice"))?;
        if stages.lattice {
            let (block, claims) = lattice_block(&group, expected);
            acc.push_block("lattice", block, claims);
        }
        if stages.census || stages.cohomology {
            let census = singular_census(&group, false).map_err(KummerError::engine("census"))?;
            let cert = pi1_certificate(&group);
            if stages.census {
                let (block, claims) = census_block(&group, &census, expected);
                acc.push_block("census", block, claims);
                let (block, claims) = certificate_block(&group, &cert);
                acc.push_block("certificate", block, claims);
            }
            if let Some((block, claims)) = spin.take() {
                acc.push_block("spin", block, claims);
            }
            if stages.cohomology {
                let (block, claims) = cohomology_block(&group, &census, &cert, expected);
                acc.push_block("cohomology", block, claims);
            }
        }
        acc.group = Some(group);
    }
    if let Some((block, claims)) = spin {
        acc.push_block("spin", block, claims);
    }
    Ok(acc)
}

fn component_json(c: &FixedComponent) -> Value {
    json!({
        "basepoint": c.basepoint().iter().map(Rat::to_string).collect::<Vec<_>>(),
        "directions": c.directions(),
        "dimension": c.dimension(),
    })
}

/// Fixed components of the named element, or of every element.
pub fn fixed_locus_listing(group: &GroupTable, element: Option<&str>) -> Result<Vec<(String, Vec<FixedComponent>)>, KummerError> {
    let indices: Vec<usize> = match element {
        Some(name) => vec![group
            .index_of_name(name)
            .ok_or_else(|| KummerError::Usage(format!("no group element named {name:?}")))?],
        None => (0..group.order()).collect(),
    };
    Ok(indices.into_iter().map(|i| (group.name(i), fixed_locus(group.element(i)))).collect())
}

fn circle_count(comps: &[FixedComponent]) -> usize {
    comps.iter().filter(|c| c.dimension() == 1).count()
}

fn lattice_block(group: &GroupTable, expected: Option<&Expected>) -> (Value, Vec<Claim>) {
    const M: &str = "lattice";
    let loci: Vec<Vec<FixedComponent>> = group.elements().iter().map(fixed_locus).collect();
    let elements: Vec<Value> = (0..group.order())
        .map(|i| {
            json!({
                "name": group.name(i),
                "map": format!("{:?}", group.element(i)),
                "order": group.element_order(i),
                "fixed_components": loci[i].len(),
                "fixed_circles": circle_count(&loci[i]),
            })
        })
        .collect();
    let free: Vec<String> = (1..group.order()).filter(|&i| loci[i].is_empty()).map(|i| group.name(i)).collect();

    let mut claims = vec![
        Claim::info(M, "group.order", group.order()),
        Claim::info(M, "group.abelian", group.is_abelian()),
        Claim::info(M, "group.exponent", group.exponent()),
        Claim::info(M, "fixed_point_free", if free.is_empty() { String::from("none") } else { free.join(", ") }),
    ];
    for (k, name) in group.generator_names().iter().enumerate() {
        let idx = group.generator_index(k);
        let count = circle_count(&loci[idx]);
        let want = expected
            .and_then(|e| e.fixed_circles.as_ref())
            .and_then(|v| v.iter().find(|(n, _)| n == name))
            .map(|(_, c)| *c);
        let id = format!("fixed_circles.{name}");
        claims.push(match want {
            Some(w) => Claim::expect(M, &id, &count, &w),
            None => Claim::info(M, &id, count),
        });
    }
    if let Some(names) = expected.and_then(|e| e.fixed_circles.as_ref()) {
        for (n, _) in names {
            if !group.generator_names().contains(n) {
                claims.push(Claim::check(M, &format!("fixed_circles.{n}"), false, "no such generator"));
            }
        }
    }
    let block = json!({
        "order": group.order(),
        "abelian": group.is_abelian(),
        "exponent": group.exponent(),
        "elements": elements,
        "fixed_point_free": free,
    });
    (block, claims)
}

fn census_block(group: &GroupTable, census: &SingularCensus, expected: Option<&Expected>) -> (Value, Vec<Claim>) {
    const M: &str = "census";
    let half = census.orbits.iter().filter(|o| o.quotient_length_factor == Rat::half()).count();
    let orbits: Vec<Value> = census
        .orbits
        .iter()
        .map(|o| {
            json!({
                "representative": component_json(&o.representative),
                "size": o.orbit_size(),
                "setwise_stabilizer": o.setwise_stabilizer.iter().map(|&i| group.name(i)).collect::<Vec<_>>(),
                "pointwise_stabilizer": o.pointwise_stabilizer.iter().map(|&i| group.name(i)).collect::<Vec<_>>(),
                "translation_elements": o.translation_elements.iter()
                    .map(|(i, t)| json!({"element": group.name(*i), "shift": t.to_string()}))
                    .collect::<Vec<_>>(),
                "quotient_length_factor": o.quotient_length_factor.to_string(),
                "local_model": o.local_model.label(),
            })
        })
        .collect();
    let mut models: Vec<&str> = census.orbits.iter().map(|o| o.local_model.label()).collect();
    models.sort_unstable();
    models.dedup();

    let pick = |f: fn(&Expected) -> Option<usize>| expected.and_then(f);
    let mut claims = Vec::new();
    for (id, actual, want) in [
        ("components", census.component_count(), pick(|e| e.components)),
        ("orbits", census.orbit_count(), pick(|e| e.orbits)),
        ("half_length_orbits", half, pick(|e| e.half_length_orbits)),
    ] {
        claims.push(match want {
            Some(w) => Claim::expect(M, id, &actual, &w),
            None => Claim::info(M, id, actual),
        });
    }
    claims.push(Claim::info(M, "circles_only", census.is_circles_only()));
    claims.push(Claim::info(M, "local_models", if models.is_empty() { String::from("none") } else { models.join(", ") }));
    let block = json!({
        "components": census.component_count(),
        "orbit_count": census.orbit_count(),
        "half_length_orbits": half,
        "circles_only": census.is_circles_only(),
        "orbits": orbits,
    });
    (block, claims)
}

fn certificate_block(group: &GroupTable, cert: &Certificate) -> (Value, Vec<Claim>) {
    let status = if cert.passed() { "PASS" } else { "FAIL" };
    let claims = vec![Claim::info("certificate", "pi1_heuristic", format!("{status} ({})", cert.note))];
    let block = json!({
        "status": status,
        "note": cert.note,
        "directions": cert.directions.iter().map(|d| json!({
            "direction": d.direction + 1,
            "witness": d.witness.map(|w| group.name(w)),
            "reversers": d.reversers.iter().map(|&i| group.name(i)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "elements_with_fixed_points": cert.elements_with_fixed_points.iter().map(|&i| group.name(i)).collect::<Vec<_>>(),
        "generation_gap": cert.generation_gap.iter().map(|&i| group.name(i)).collect::<Vec<_>>(),
    });
    (block, claims)
}

fn spin_block(spec: &ConstructionSpec, expected: Option<&Expected>) -> (Value, Vec<Claim>) {
    const M: &str = "spin";
    let linear: Vec<_> = spec.generators.iter().map(|g| g.isometry.linear().clone()).collect();
    let want = expected.and_then(|e| e.spin.clone());
    match spin_obstruction(&linear, Signature::default()) {
        Ok(r) => {
            let verdict = match r.verdict {
                Verdict::Liftable => "liftable",
                Verdict::Obstructed(_) => "obstructed",
            };
            let verdict = verdict.to_string();
            let claim = match &want {
                Some(w) => Claim::expect(M, "verdict", &verdict, w),
                None => Claim::info(M, "verdict", &verdict),
            };
            let block = json!({
                "verdict": verdict,
                "witness": format!("{:?}", r.verdict),
                "signature": r.signature.label(),
                "lifts": r.lifts.iter().zip(&spec.generators)
                    .map(|(l, g)| json!({"generator": g.name, "lift": l.lifts[0].to_string()}))
                    .collect::<Vec<_>>(),
                "commutator_signs": r.commutator_signs,
                "squares": r.squares,
            });
            (block, vec![claim])
        }
        Err(e) => {
            let value = format!("not applicable: {e}");
            let claim = match want {
                Some(w) => Claim { expected: Some(w), ..Claim::check(M, "verdict", false, &value) },
                None => Claim::info(M, "verdict", &value),
            };
            (json!({ "verdict": Value::Null, "reason": e.to_string() }), vec![claim])
        }
    }
}

fn cohomology_block(
    group: &GroupTable,
    census: &SingularCensus,
    cert: &Certificate,
    expected: Option<&Expected>,
) -> (Value, Vec<Claim>) {
    const M: &str = "cohomology";
    let n = group.dim();
    let mut idempotent = true;
    let mut burnside = true;
    for k in 0..=n {
        let p = averaging_projector(group, k);
        let sq: Vec<Vec<Rat>> = p
            .iter()
            .map(|row| {
                (0..p.len())
                    .map(|j| row.iter().zip(&p).fold(Rat::zero(), |s, (x, r)| &s + &(x * &r[j])))
                    .collect()
            })
            .collect();
        idempotent &= sq == p;
        burnside &= burnside_dimension(group, k) == Rat::from_int(invariant_forms(group, k).dimension as i64);
    }
    let table = orbifold_betti(group);
    let two = invariant_forms(group, 2.min(n));
    let labels = two.basis_labels();

    let mut claims = vec![
        Claim::check(M, "projector_idempotent", idempotent, idempotent),
        Claim::check(M, "burnside_trace", burnside, burnside),
        Claim::check(M, "poincare_duality", table.is_self_dual(), format!("{:?}", table.orbifold)),
        Claim::info(M, "orbifold_euler", table.orbifold_euler),
    ];
    let shown = labels.join(" ");
    claims.push(match expected.and_then(|e| e.invariant_2forms.as_ref()) {
        Some(w) => Claim::expect(M, "invariant_2forms", &shown, &w.join(" ")),
        None => Claim::info(M, "invariant_2forms", &shown),
    });

    let resolved: Result<BettiTable, _> = resolved_betti(&table, census, cert);
    let mut block = json!({
        "orbifold_betti": table.orbifold,
        "orbifold_euler": table.orbifold_euler,
        "invariant_2forms": labels,
        "projector_idempotent": idempotent,
        "burnside_trace": burnside,
    });
    match resolved.as_ref().map(|t| t.resolved.clone().expect("resolved table present")) {
        Ok(r) => {
            claims.push(match expected.and_then(|e| e.b2) {
                Some(w) => Claim::expect(M, "b2", &r.b2, &w),
                None => Claim::info(M, "b2", r.b2),
            });
            claims.push(match expected.and_then(|e| e.euler) {
                Some(w) => Claim::expect(M, "euler", &r.euler, &w),
                None => Claim::info(M, "euler", r.euler),
            });
            block["resolved"] = json!({ "b2": r.b2, "b3": r.b3, "betti": r.table, "euler": r.euler });
        }
        Err(e) => {
            let value = format!("not computed: {e}");
            claims.push(match expected.and_then(|e| e.b2) {
                Some(w) => Claim { expected: Some(w.to_string()), ..Claim::check(M, "b2", false, &value) },
                None => Claim::info(M, "b2", &value),
            });
            block["resolved"] = json!({ "reason": e.to_string() });
        }
    }
    (block, claims)
}

fn fit_json(f: &Fit) -> Value {
    json!({ "slope": num(f.slope), "intercept": num(f.intercept), "residual": num(f.residual), "points": f.points })
}

fn annulus_json(r: &AnnulusSup) -> Value {
    json!({
        "d": num(r.d), "r_sup": num(r.r_sup), "sup_ric": num(r.sup_ric),
        "sup_rm": num(r.sup_rm), "symmetry_residual": num(r.symmetry_residual),
    })
}

/// Evaluates `f` on every item using up to `threads` scoped workers; output
/// order follows input order.
pub fn parallel_map<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = threads.clamp(1, items.len().max(1));
    let chunk = items.len().div_ceil(threads).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

type CurvatureResult = (Value, Vec<Claim>, Vec<String>, CurvatureOutcome);

fn curvature_stage(g: &GluingSpec, opts: &Options) -> Result<CurvatureResult, KummerError> {
    const M: &str = "curvature";
    let scale = opts.tolerance_scale;
    let tol = g.tolerance * scale;
    let mut claims = Vec::new();
    let mut notes = Vec::new();
    let mut residual: f64 = 0.0;

    // coframe normalization
    let calibration = calibrate_coframe(&g.eh_radii, tol);
    let calib_json = match &calibration {
        Ok(c) => {
            claims.push(Claim::check(M, "coframe_calibration", c.lambda == COFRAME_LAMBDA, format!("lambda = {}", c.lambda)));
            notes.push(format!(
                "coframe: d sigma_i = {} sigma_j ^ sigma_k (ordered summation), selected among {:?} by flatness of the Euclidean profile and Ricci-flatness of Eguchi-Hanson",
                c.lambda, LAMBDA_CANDIDATES
            ));
            json!({
                "lambda": c.lambda,
                "candidates": c.candidates.iter().map(|k| json!({
                    "lambda": k.lambda, "euclidean_rm": num(k.euclidean_rm), "eh_ric": num(k.eh_ric),
                })).collect::<Vec<_>>(),
            })
        }
        Err(e) => {
            claims.push(Claim::check(M, "coframe_calibration", false, e));
            Value::Null
        }
    };

    // Ricci-flatness of Eguchi–Hanson
    let mut eh_rows = Vec::new();
    let mut sup_ric: f64 = 0.0;
    for &r in &g.eh_radii {
        let s = cohomo_curvature(&eh_profile(), r).map_err(KummerError::engine(M))?;
        sup_ric = sup_ric.max(s.ric_norm);
        residual = residual.max(s.symmetry_residual());
        eh_rows.push(json!({ "r": num(r), "ric_norm": num(s.ric_norm), "rm_norm": num(s.rm_norm) }));
    }
    claims.push(Claim::within(M, "eh_ricci_flat", sup_ric < tol, sup_ric, tol));

    // round-sphere oracle and contraction sign
    let a = 2.0;
    let sphere = sphere_chart(a);
    let mut k_err: f64 = 0.0;
    let mut ric_positive = true;
    for theta in [0.4, 0.9, 1.3, 2.0, 2.7] {
        let s = sphere.riemann(&[theta, 1.1]).map_err(KummerError::engine(M))?.sample;
        k_err = k_err.max((s.sectional(0, 1) - 1.0 / (a * a)).abs());
        ric_positive &= s.ricci[0] > 0.0 && s.ricci[3] > 0.0;
        residual = residual.max(s.symmetry_residual());
    }
    let k_tol = 1e-8 * scale;
    claims.push(Claim::within(M, "sphere_oracle", k_err < k_tol, k_err, k_tol));
    claims.push(Claim::check(M, "ricci_contraction_sign", ric_positive, "positive on the round sphere"));
    notes.push(String::from("Ricci contraction R_jk = R^i_ijk; positive on the round-sphere oracle, no sign flip applied"));

    // generic chart engine against the cohomogeneity-one engine
    let chart = euler_chart(eh_profile());
    let mut cross_rows = Vec::new();
    let mut worst: f64 = 0.0;
    for &r in &g.cross_radii {
        let generic = chart.riemann(&[r, 1.1, 0.3, 0.7]).map_err(KummerError::engine(M))?.sample;
        let special = cohomo_curvature(&eh_profile(), r).map_err(KummerError::engine(M))?;
        let rel = special.relative_difference(&generic);
        worst = worst.max(rel);
        residual = residual.max(generic.symmetry_residual()).max(special.symmetry_residual());
        cross_rows.push(json!({ "r": num(r), "relative_difference": num(rel) }));
    }
    claims.push(Claim::within(M, "cross_engine", worst < tol, worst, tol));

    // decay rates of Eguchi–Hanson
    let decay = decay_scan(&eh_profile(), &g.decay_radii).map_err(KummerError::engine(M))?;
    residual = decay.rows.iter().fold(residual, |m, r| m.max(r.symmetry_residual));
    let slope_claim = |id: &str, fit: Option<&Fit>, target: f64, width: f64| {
        let t = width * scale;
        match fit {
            Some(f) => Claim::within(M, id, (f.slope - target).abs() < t, f.slope, t),
            None => Claim::check(M, id, false, "no fit (all values zero)"),
        }
    };
    claims.push(slope_claim("deviation_slope", decay.deviation_fit.as_ref(), -4.0, 0.1));
    claims.push(slope_claim("rm_slope", decay.rm_fit.as_ref(), -6.0, 0.1));
    let flat = decay_scan(&Euclidean, &g.decay_radii).map_err(KummerError::engine(M))?;
    claims.push(Claim::check(
        M,
        "euclidean_fit_skipped",
        flat.deviation_fit.is_none() && flat.rm_fit.is_none(),
        "NULL",
    ));

    // gluing scan, doubled grid for the stability check
    let threads = opts.thread_count();
    let jobs: Vec<(f64, usize)> =
        g.d_values.iter().flat_map(|&d| [(d, g.grid), (d, 2 * g.grid)]).collect();
    let sups = parallel_map(&jobs, threads, |&(d, n)| annulus_sup(d, n));
    let sups: Vec<AnnulusSup> = sups.into_iter().collect::<Result<_, _>>().map_err(KummerError::engine(M))?;
    let (base, fine): (Vec<_>, Vec<_>) = sups.chunks(2).map(|p| (p[0].clone(), p[1].clone())).unzip();
    let stability = base
        .iter()
        .zip(&fine)
        .map(|(a, b)| if b.sup_ric > 0.0 { (a.sup_ric / b.sup_ric - 1.0).abs() } else { 0.0 })
        .fold(0.0, f64::max);
    residual = base.iter().chain(&fine).fold(residual, |m, r| m.max(r.symmetry_residual));
    let glue = GlueScan::from_rows(base).map_err(KummerError::engine(M))?;
    claims.push(slope_claim("glue_ricci_slope", Some(&glue.ric_fit), -6.0, 0.2));
    let mid = &glue.rows[glue.rows.len() / 2];
    // strictly positive: the threshold is zero
    claims.push(Claim::within(M, "glue_not_ricci_flat", mid.sup_ric > 0.0, mid.sup_ric, 0.0));
    claims.push(Claim::within(M, "grid_stability", stability < 0.01, stability, 0.01));

    let d0 = glue.rows[0].d;
    let outer = sup_over(&glued_profile(d0).map_err(KummerError::engine(M))?, &geometric_grid(2.5 * d0, 3.0 * d0, 64), d0)
        .map_err(KummerError::engine(M))?;
    let flat_tol = 1e-9 * scale;
    claims.push(Claim::within(M, "euclidean_region", outer.sup_ric < flat_tol, outer.sup_ric, flat_tol));

    let mu = mu_report(&glue).map_err(KummerError::engine(M))?;
    claims.push(slope_claim("rescaled_ricci_slope", Some(&mu.rescaled_fit), -4.0, 0.2));
    claims.push(Claim::check(M, "mu_monotone", mu.monotone, mu.monotone));
    notes.push(format!("cap diameter constant: {}", mu.kappa_formula));

    claims.push(Claim::within(M, "symmetry_residuals", residual < tol, residual, tol));

    let block = json!({
        "tolerance": num(tol),
        "calibration": calib_json,
        "eh_samples": eh_rows,
        "sphere": { "radius": a, "max_k_error": num(k_err) },
        "cross_engine": cross_rows,
        "decay": {
            "rows": decay.rows.iter().map(|r| json!({
                "r": num(r.r), "deviation": num(r.deviation), "rm_norm": num(r.rm_norm), "ric_norm": num(r.ric_norm),
            })).collect::<Vec<_>>(),
            "deviation_fit": decay.deviation_fit.as_ref().map(fit_json),
            "rm_fit": decay.rm_fit.as_ref().map(fit_json),
        },
        "glue": {
            "grid": g.grid,
            "rows": glue.rows.iter().map(annulus_json).collect::<Vec<_>>(),
            "ric_fit": fit_json(&glue.ric_fit),
            "rm_fit": fit_json(&glue.rm_fit),
            "grid_stability": num(stability),
        },
        "mu": {
            "rows": mu.rows.iter().map(|r| json!({
                "d": num(r.d), "rescaled_sup_ric": num(r.rescaled_sup_ric),
                "diam_bound": num(r.diam_bound), "mu_proxy": num(r.mu_proxy),
            })).collect::<Vec<_>>(),
            "rescaled_fit": fit_json(&mu.rescaled_fit),
            "mu_fit": fit_json(&mu.mu_fit),
            "monotone": mu.monotone,
            "kappa_formula": mu.kappa_formula,
        },
        "max_symmetry_residual": num(residual),
    });
    Ok((block, claims, notes, CurvatureOutcome { glue, mu }))
}

fn check_json(c: &Check) -> Value {
    json!({ "passed": c.passed, "detail": c.detail })
}

fn f_structure_block(v: &FStructureVerdict, expected: Option<&Expected>) -> (Value, Vec<Claim>) {
    const M: &str = "f_structure";
    let mut claims = Vec::new();
    let mut charts = Vec::new();
    for c in &v.charts {
        let mut checks = vec![
            &c.invariance,
            &c.action_invariance,
            &c.covariance.homomorphism,
            &c.covariance.identities,
            &c.locally_free,
        ];
        if let Some(f) = &c.free_action {
            checks.push(f);
        }
        for k in &checks {
            claims.push(Claim::check(M, &format!("{}.{}", c.name, k.name), k.passed, &k.detail));
        }
        charts.push(json!({
            "name": c.name,
            "orbit_dimension": c.orbit_dimension,
            "surgery_compatible": c.surgery_compatible,
            "checks": checks.iter().map(|k| (k.name.clone(), check_json(k))).collect::<serde_json::Map<_, _>>(),
        }));
    }
    for k in [&v.radius, &v.disjointness, &v.cover, &v.overlaps] {
        claims.push(Claim::check(M, &k.name, k.passed, &k.detail));
    }
    claims.push(match expected.and_then(|e| e.polarized) {
        Some(w) => Claim::expect(M, "polarized", &v.polarized, &w),
        None => Claim::info(M, "polarized", v.polarized),
    });
    claims.push(match expected.and_then(|e| e.rank) {
        Some(w) => Claim::expect(M, "rank", &v.rank, &w),
        None => Claim::info(M, "rank", v.rank),
    });
    let block = json!({
        "charts": charts,
        "radius": check_json(&v.radius),
        "disjointness": check_json(&v.disjointness),
        "cover": check_json(&v.cover),
        "overlaps": check_json(&v.overlaps),
        "polarized": v.polarized,
        "rank": v.rank,
        "passed": v.passed,
        "min_vol_note": v.min_vol_note.map(|_| MIN_VOL_NOTE),
    });
    (block, claims)
}
