use proptest::prelude::*;

use pdmosc::bethe::{bethe_residual, solve_roots, solve_roots_numeric, v2_states, BetheProblem, Sector, Variant};
use pdmosc::classical::{first_integral, higgs_trajectory, v2_trajectory, v2_trajectory_landen};
use pdmosc::oracle::SymTridiagonal;
use pdmosc::quantum_higgs::{higgs1d_energy, OrderingParameters};
use pdmosc::semiclassical::{higgs3d_semiclassical_energy, higgs_semiclassical_energy};
use pdmosc::specfn::{jacobi_elliptic, jacobi_polynomial};
use pdmosc::SystemParams;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() }
}

fn binom(x: f64, j: usize) -> f64 {
    (0..j).map(|i| (x - i as f64) / (i + 1) as f64).product()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn elliptic_identities(u in -60.0f64..60.0, m in 0.0f64..=1.0) {
        let e = jacobi_elliptic(u, m).unwrap();
        prop_assert!((e.sn * e.sn + e.cn * e.cn - 1.0).abs() < 1e-12);
        prop_assert!((e.dn * e.dn + m * e.sn * e.sn - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_recurrence_matches_direct_sum(n in 0usize..=20, a in -0.9f64..4.0, b in -0.9f64..4.0, x in -1.0f64..1.0) {
        let terms: Vec<f64> = (0..=n)
            .map(|s| {
                binom(n as f64 + a, n - s)
                    * binom(n as f64 + b, s)
                    * ((x - 1.0) / 2.0).powi(s as i32)
                    * ((x + 1.0) / 2.0).powi((n - s) as i32)
            })
            .collect();
        let direct: f64 = terms.iter().sum();
        // The alternating direct sum carries its own rounding of order ε·Σ|terms|.
        let oracle_noise = 8.0 * f64::EPSILON * terms.iter().map(|t| t.abs()).sum::<f64>();
        let rec = jacobi_polynomial(n, a, b, x).unwrap();
        prop_assert!((rec - direct).abs() < 1e-10 * direct.abs().max(1.0) + oracle_noise);
    }

    #[test]
    fn higgs_first_integral_is_constant(k in -1.0f64..1.0, frac in 0.05f64..0.95, phase in -3.0f64..3.0, t in 0.0f64..50.0) {
        let a = if k > 0.0 { frac / k.sqrt() } else { 3.0 * frac };
        let p = SystemParams::higgs(k);
        let (x0, v0) = higgs_trajectory(a, phase, &p, 0.0).unwrap();
        let (x, v) = higgs_trajectory(a, phase, &p, t).unwrap();
        let (e0, e) = (first_integral(&p, x0, v0), first_integral(&p, x, v));
        prop_assert!((e - e0).abs() < 1e-12 * e0.abs().max(1.0));
    }

    #[test]
    fn nonpolynomial_orbit_forms_agree(k in 0.01f64..2.0, m in 0.01f64..0.99, t in -40.0f64..40.0) {
        let a = (m / k).sqrt();
        let p = SystemParams::nonpolynomial(k);
        let (x1, v1) = v2_trajectory(a, &p, t).unwrap();
        let (x2, v2) = v2_trajectory_landen(a, &p, t).unwrap();
        prop_assert!((x1 - x2).abs() < 1e-10);
        prop_assert!((v1 - v2).abs() < 1e-9);
    }

    #[test]
    fn semiclassical_higgs_spacing(k in -1.0f64..1.0, w in 0.2f64..3.0, n in 0usize..50) {
        let p = SystemParams::higgs(k).with_omega0(w);
        let gap = higgs_semiclassical_energy(n + 1, &p) - higgs_semiclassical_energy(n, &p);
        prop_assert!((gap - (w + (n as f64 + 1.0) * k)).abs() < 1e-12 * (1.0 + n as f64 * n as f64));
        let flat = SystemParams::higgs(0.0).with_omega0(w);
        prop_assert_eq!(higgs_semiclassical_energy(n, &flat), (n as f64 + 0.5) * w);
        prop_assert_eq!(higgs3d_semiclassical_energy(n, 2, &flat), (2.0 * n as f64 + 3.5) * w);
    }

    #[test]
    fn ordering_sum_shifts_higgs_levels_linearly(k in 0.05f64..0.5, ab in -0.5f64..0.5, gb in -0.5f64..0.5, n in 0usize..6) {
        // Moving ᾱ+γ̄ by δ with ᾱγ̄ by −3δ/8 keeps η₁ and hence μ̃ fixed.
        let p = SystemParams::higgs(k);
        let base = OrderingParameters { alpha_bar: ab, gamma_bar: gb, alphagamma_bar: 0.0 };
        let delta = 1e-3;
        let moved = OrderingParameters { alpha_bar: ab + delta / 2.0, gamma_bar: gb + delta / 2.0, alphagamma_bar: -3.0 * delta / 8.0 };
        let d = (higgs1d_energy(n, &moved, &p).unwrap() - higgs1d_energy(n, &base, &p).unwrap()) / delta;
        prop_assert!((d - k).abs() < 1e-8);
    }

    #[test]
    fn n1_roots_satisfy_root_equation(mu in prop_oneof![12.0f64..200.0, -200.0f64..-0.5], half in 0usize..2) {
        let l = half as f64 / 2.0;
        let kappa = 2.0 * l + 0.5;
        let closed = solve_roots(1, l, mu, Variant::Nonhermitian1d).unwrap();
        let numeric = solve_roots_numeric(1, kappa, mu).unwrap();
        let problem = BetheProblem::v2_form(1, kappa, mu, [0.0; 3]).unwrap();
        for set in &closed {
            prop_assert!(bethe_residual(&problem, set).unwrap()[0].abs() < 1e-10);
            prop_assert!(numeric.iter().any(|s| (s[0] - set[0]).abs() < 1e-12 * set[0].abs().max(1.0)));
        }
    }

    #[test]
    fn bethe_states_close_their_constraints(k in prop_oneof![-0.3f64..-0.01, 0.005f64..0.07], gamma_bar in -0.5f64..0.5) {
        let params = SystemParams::nonpolynomial(k);
        for (n, sector) in [(0, Sector::Line { odd: false }), (1, Sector::Line { odd: true }), (1, Sector::Radial { l: 1 })] {
            for st in v2_states(n, sector, gamma_bar, &params).unwrap() {
                let c = &st.solution.constraints;
                prop_assert!(c.residuals.iter().all(|r| r.abs() < 1e-10));
                prop_assert!(c.c0.abs().max(c.c1.abs()).max(c.c2.abs()) < 1e-10);
            }
        }
    }

    #[test]
    fn tridiagonal_eigenvalues_increase(diag in prop::collection::vec(-5.0f64..5.0, 3..40), seed in 0.1f64..2.0) {
        let off: Vec<f64> = (1..diag.len()).map(|i| seed * (1.0 + (i as f64).sin())).collect();
        let m = SymTridiagonal::new(diag.clone(), off).unwrap();
        let eig = m.eigenvalues(diag.len()).unwrap();
        prop_assert!(eig.windows(2).all(|w| w[0] < w[1]));
        let trace: f64 = diag.iter().sum();
        prop_assert!((eig.iter().sum::<f64>() - trace).abs() < 1e-9 * (1.0 + trace.abs()));
        prop_assert_eq!(m.sturm_count(eig[0] - 1e-6), 0);
    }
}

#[test]
fn nan_inputs_are_rejected() {
    assert!(jacobi_elliptic(f64::NAN, 0.5).is_err());
    assert!(jacobi_polynomial(3, 0.5, 0.5, f64::NAN).is_err());
    assert!(higgs_trajectory(1.0, 0.0, &SystemParams::higgs(0.1), f64::NAN).is_err());
}
