use kummer_core::curvature::cohomo::cohomo_sample;
use kummer_core::curvature::scan::AnnulusSup;
use kummer_core::curvature::chart::DEFAULT_STEP_FRACTION;
use kummer_core::curvature::*;

const EH_RADII: [f64; 5] = [1.2, 2.0, 3.0, 5.0, 10.0];

fn sphere_oracle_christoffel(theta: f64) -> (f64, f64) {
    // metric diag(a², a² sin²θ): Γ^θ_φφ = -sinθ cosθ, Γ^φ_θφ = cot θ, independent of a
    (-theta.sin() * theta.cos(), theta.cos() / theta.sin())
}

#[test]
fn flat_chart_has_zero_connection_and_curvature() {
    let c = euclidean_chart(3);
    let x = [0.3, -1.2, 4.0];
    assert!(c.christoffel(&x).unwrap().iter().all(|g| g.abs() < 1e-12));
    let r = c.riemann(&x).unwrap();
    assert!(r.sample.rm_norm < 1e-9);
}

#[test]
fn round_sphere_christoffel_and_curvature() {
    let a = 2.0;
    let c = sphere_chart(a);
    let gamma = c.christoffel(&[1.0, 0.4]).unwrap();
    let (g_t_pp, g_p_tp) = sphere_oracle_christoffel(1.0);
    // index [(k * 2 + i) * 2 + j]
    assert!((gamma[0b011] - g_t_pp).abs() < 1e-8, "{} vs {g_t_pp}", gamma[3]);
    assert!((gamma[0b101] - g_p_tp).abs() < 1e-8);
    assert!((gamma[0b110] - g_p_tp).abs() < 1e-8);

    for theta in [0.4, 0.9, 1.3, 2.0, 2.7] {
        let s = c.riemann(&[theta, 1.1]).unwrap().sample;
        assert!((s.sectional(0, 1) - 1.0 / (a * a)).abs() < 1e-8, "K = {}", s.sectional(0, 1));
        // Ricci = (1/a²) g, i.e. the identity / a² in the orthonormal frame
        for j in 0..2 {
            for k in 0..2 {
                let e = if j == k { 1.0 / (a * a) } else { 0.0 };
                assert!((s.ricci[j * 2 + k] - e).abs() < 1e-8);
            }
        }
        assert!(s.symmetry_residual() < 1e-6);
    }
}

#[test]
fn euclidean_profile_is_flat_in_both_engines() {
    for r in [0.7, 3.0, 25.0] {
        assert!(cohomo_curvature(&Euclidean, r).unwrap().rm_norm < 1e-9);
        let s = euler_chart(Euclidean).riemann(&[r, 1.1, 0.3, 0.7]).unwrap().sample;
        assert!(s.rm_norm < 1e-9 * (1.0 + r * r), "r = {r}: {}", s.rm_norm);
    }
}

#[test]
fn eguchi_hanson_is_ricci_flat() {
    for r in [1.2, 2.0, 5.0, 20.0, 50.0] {
        let s = cohomo_curvature(&eh_profile(), r).unwrap();
        assert!(s.ric_norm < 1e-6, "r = {r}: |Ric| = {}", s.ric_norm);
        assert!(s.rm_norm > 0.0);
        assert!(s.symmetry_residual() < 1e-6);
    }
}

#[test]
fn cross_engine_agreement_on_eguchi_hanson() {
    let chart = euler_chart(eh_profile());
    for r in EH_RADII {
        let generic = chart.riemann(&[r, 1.1, 0.3, 0.7]).unwrap().sample;
        let special = cohomo_curvature(&eh_profile(), r).unwrap();
        let rel = special.relative_difference(&generic);
        assert!(rel < 1e-6, "r = {r}: relative difference {rel:e}");
        assert!(generic.symmetry_residual() < 1e-6 * special.rm_norm.max(1.0));
    }
}

#[test]
fn eh_connection_matches_between_engines() {
    // ⟨∇_{e_i} e_i, e₀⟩ = -h_i, the principal curvatures of the r-spheres
    let r = 3.0;
    let s = cohomo_sample(&eh_profile(), r, COFRAME_LAMBDA).unwrap();
    let a = 1.0 / (1.0 - r.powi(-4));
    // h_i = (ln a_i)' / √A with a₁ = r and a₃ = r √(1 - r⁻⁴)
    let h3 = derivative(|x| (x * x * (1.0 - x.powi(-4))).sqrt().ln(), r) / a.sqrt();
    let h1 = 1.0 / (r * a.sqrt());
    let conn = |x: usize, y: usize, z: usize| s.connection[(x * 4 + y) * 4 + z];
    assert!((conn(1, 1, 0) + h1).abs() < 1e-9);
    assert!((conn(3, 3, 0) + h3).abs() < 1e-7);
}

fn derivative(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-4;
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

#[test]
fn chart_curvature_decays_like_r_minus_six() {
    let chart = euler_chart(eh_profile());
    let radii = [5.0, 10.0, 20.0, 40.0];
    let rm: Vec<f64> = radii
        .iter()
        .map(|&r| chart.riemann(&[r, 1.1, 0.3, 0.7]).unwrap().sample.rm_norm)
        .collect();
    let fit = loglog_fit(&radii, &rm).unwrap();
    assert!((fit.slope + 6.0).abs() < 0.1, "slope {}", fit.slope);
}

#[test]
fn profile_decay_rates() {
    let radii = [10.0, 20.0, 40.0, 80.0, 160.0];
    let scan = decay_scan(&eh_profile(), &radii).unwrap();
    let dev = scan.deviation_fit.unwrap();
    let rm = scan.rm_fit.unwrap();
    assert!((dev.slope + 4.0).abs() < 0.1, "deviation slope {}", dev.slope);
    assert!((rm.slope + 6.0).abs() < 0.1, "|Rm| slope {}", rm.slope);
    let flat = decay_scan(&Euclidean, &radii).unwrap();
    assert!(flat.deviation_fit.is_none() && flat.rm_fit.is_none());
}

#[test]
fn ricci_scales_inversely_with_the_metric() {
    for c in [0.5, 3.0] {
        for r in [1.5, 4.0, 9.0] {
            // a Ricci-flat metric is uninformative, so use a glued profile inside its annulus
            let g = glued_profile(4.0).unwrap();
            let base = cohomo_curvature(&g, r + 3.0).unwrap();
            let scaled = cohomo_curvature(&Scaled { inner: g, factor: c }, r + 3.0).unwrap();
            let expect = base.ric_norm / (c * c);
            assert!((scaled.ric_norm - expect).abs() <= 1e-8 * expect.max(1e-300));
        }
    }
}

#[test]
fn finite_difference_steps_converge() {
    let coarse = euler_chart(eh_profile()).riemann(&[3.0, 1.1, 0.3, 0.7]).unwrap().sample;
    let fine = euler_chart(eh_profile())
        .with_step_fractions(vec![DEFAULT_STEP_FRACTION / 2.0; 4])
        .riemann(&[3.0, 1.1, 0.3, 0.7])
        .unwrap()
        .sample;
    assert!(coarse.relative_difference(&fine) < 1e-6);
}

#[test]
fn chart_rejects_points_without_margin() {
    let c = sphere_chart(1.0);
    assert!(matches!(c.riemann(&[-0.1, 0.0]), Err(kummer_core::Error::Domain(_))));
    assert!(matches!(c.riemann(&[1.0]), Err(kummer_core::Error::DimensionMismatch { .. })));
    let c = sphere_chart(1.0).with_step_fractions(vec![0.0, 0.0]);
    assert!(matches!(c.riemann(&[1.0, 0.0]), Err(kummer_core::Error::StepUnderflow(_))));
    // the plateau-adapted step keeps points close to the boundary usable
    assert!(sphere_chart(1.0).riemann(&[1e-2, 0.0]).is_ok());
}

#[test]
fn cutoff_properties() {
    for d in [10.0, 40.0, 160.0] {
        let c = make_cutoff(d);
        assert_eq!(c.value(0.5 * d), 1.0);
        assert_eq!(c.value(3.0 * d), 0.0);
        let vals: Vec<f64> = (0..100).map(|i| c.value(d * (1.0 + i as f64 / 99.0))).collect();
        assert!(vals.windows(2).all(|w| w[1] <= w[0]));
    }
    let c1: Vec<f64> = [10.0, 40.0, 160.0].iter().map(|&d| make_cutoff(d).derivative_sup(1, 2000) * d).collect();
    for c in &c1 {
        assert!((c / c1[0] - 1.0).abs() < 0.01);
    }
    let consts = make_cutoff(10.0).bound_constants(2000);
    assert_eq!(consts.len(), 4);
    assert!(consts.iter().all(|c| c.is_finite() && *c > 0.0));
}

#[test]
fn glued_profile_positivity_and_plateaus() {
    let g = glued_profile(10.0).unwrap();
    for r in geometric_grid(1.05, 40.0, 400) {
        let [a, b, c] = g.values(r).unwrap();
        assert!(a > 0.0 && b > 0.0 && c > 0.0);
    }
    // pure Euclidean region beyond 2d
    let outer: AnnulusSup = sup_over(&g, &geometric_grid(25.0, 30.0, 64), 10.0).unwrap();
    assert!(outer.sup_ric < 1e-9);
}

#[test]
fn gluing_decay_and_mu_proxy() {
    let ds = [10.0, 20.0, 40.0, 80.0, 160.0];
    let scan = glue_ricci_scan(&ds, 512).unwrap();
    assert!((scan.ric_fit.slope + 6.0).abs() < 0.2, "slope {}", scan.ric_fit.slope);
    assert!(scan.rows[2].sup_ric > 0.0);
    assert!(scan.rows.iter().all(|r| r.symmetry_residual < 1e-6));
    let mu = mu_report(&scan).unwrap();
    assert!((mu.rescaled_fit.slope + 4.0).abs() < 0.2);
    assert!(mu.monotone);
}

#[test]
fn annulus_sup_is_grid_stable() {
    for d in [10.0, 80.0] {
        let a = annulus_sup(d, 512).unwrap().sup_ric;
        let b = annulus_sup(d, 1024).unwrap().sup_ric;
        assert!((a / b - 1.0).abs() < 0.01);
    }
}
