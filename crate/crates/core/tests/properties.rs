use num_complex::Complex64;
use proptest::prelude::*;

use jacobi_scattering::circle::{self, CircleFunction};
use jacobi_scattering::inverse::inverse;
use jacobi_scattering::jacobi::{self, JacobiParams};
use jacobi_scattering::reconstruct::{christoffel_kernel, geronimus, nevai_insert, VerblunskySeq};
use jacobi_scattering::scattering::{self, forward};
use jacobi_scattering::spectral::{MassPoint, SpectralMeasure};

const GRID: u32 = 10;

fn cosine_series(coeffs: &[f64]) -> CircleFunction {
    CircleFunction::from_real_fn(GRID, |th| {
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * ((k + 1) as f64 * th).cos())
            .sum()
    })
    .unwrap()
}

fn params_strategy() -> impl Strategy<Value = JacobiParams> {
    (1usize..10)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0.4..1.6f64, n),
                prop::collection::vec(-1.0..1.0f64, n),
            )
        })
        .prop_map(|(a, b)| JacobiParams::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn conjugation_is_inverted(coeffs in prop::collection::vec(-1.0..1.0f64, 1..30)) {
        let u = cosine_series(&coeffs);
        let v = circle::conjugate(&u).unwrap();
        prop_assert!(v.is_antisymmetric());
        let back = circle::inverse_conjugate(&v).unwrap();
        prop_assert!(back.max_deviation(&u).unwrap() < 1e-12);
        let (a, b) = (circle::besov_seminorm(&u), circle::besov_seminorm(&v));
        prop_assert!((a - b).abs() <= 1e-13 * a.max(1.0));
    }

    #[test]
    fn recurrence_residuals_are_small(p in params_strategy(), r in 0.05..0.95f64, th in -3.1..3.1f64) {
        let z = Complex64::from_polar(r, th);
        let s = jacobi::sine_solution(&p, z, 40).unwrap();
        let phi = jacobi::jost_solution(&p, z, 40).unwrap();
        prop_assert!(s.recurrence_residual(&p) < 1e-9);
        prop_assert!(phi.recurrence_residual(&p) < 1e-9);
        // φ₀(z̄) = conj φ₀(z) for real parameters
        let phi_conj = jacobi::jost_solution(&p, z.conj(), 40).unwrap();
        prop_assert!((phi_conj.values[0] - phi.values[0].conj()).norm() < 1e-9 * phi.values[0].norm().max(1.0));
    }

    #[test]
    fn geronimus_gives_positive_a(alphas in prop::collection::vec(-0.95..0.95f64, 0..20)) {
        let p = geronimus(&VerblunskySeq { alphas: alphas.clone() }).unwrap();
        for n in 1..=alphas.len() / 2 + 2 {
            prop_assert!(p.a(n) > 0.0);
        }
    }

    #[test]
    fn kernels_increase(p in params_strategy(), lambda in 2.05..6.0f64, sign in prop::bool::ANY) {
        let lambda = if sign { lambda } else { -lambda };
        let mut prev = 0.0;
        for n in 1..30 {
            let k = christoffel_kernel(&p, lambda, n).unwrap();
            prop_assert!(k > prev);
            prev = k;
        }
    }

    #[test]
    fn insertions_commute(
        z1 in 0.2..0.8f64,
        z2 in -0.8..-0.2f64,
        e1 in 0.05..2.0f64,
        e2 in 0.05..2.0f64,
        p in params_strategy(),
    ) {
        // σ₀ + e1 δ₁ + e2 δ₂ reached in either order
        let (l1, l2) = (z1 + 1.0 / z1, z2 + 1.0 / z2);
        let one = nevai_insert(&nevai_insert(&p, l1, e1, 80).unwrap(), l2, e2 / (1.0 + e1), 80).unwrap();
        let two = nevai_insert(&nevai_insert(&p, l2, e2, 80).unwrap(), l1, e1 / (1.0 + e2), 80).unwrap();
        for n in 1..=30 {
            prop_assert!((one.a(n) - two.a(n)).abs() < 1e-8);
            prop_assert!((one.b(n) - two.b(n)).abs() < 1e-8);
        }
    }

    #[test]
    fn forward_is_blind_to_scale(coeffs in prop::collection::vec(-0.5..0.5f64, 1..10), c in 0.1..10.0f64) {
        let m = SpectralMeasure::new(0, 1, cosine_series(&coeffs), vec![MassPoint { z: -0.4, sigma: 0.3 }]).unwrap();
        let s1 = scattering::scattering_function(&m).unwrap();
        let s2 = scattering::scattering_function(&m.rescaled(c)).unwrap();
        prop_assert!(s1.max_deviation(&s2).unwrap() < 1e-12);
        for (s, t) in s1.samples().iter().zip(circle::grid_points(GRID)) {
            let reflected = s1.eval(t.conj());
            prop_assert!((reflected * s - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_after_forward(
        coeffs in prop::collection::vec(-0.5..0.5f64, 1..10),
        gammas in (0u8..2, 0u8..2),
        sigma in 0.01..1.0f64,
        z in 0.15..0.85f64,
    ) {
        let m = SpectralMeasure::new(gammas.0, gammas.1, cosine_series(&coeffs), vec![MassPoint { z, sigma }])
            .unwrap()
            .normalize();
        let back = inverse(&forward(&m).unwrap()).unwrap();
        prop_assert!((back.total_mass() - 1.0).abs() < 1e-10);
        prop_assert!(back.log_rho0().max_deviation(m.log_rho0()).unwrap() < 1e-9);
        prop_assert!((back.masses()[0].sigma - m.masses()[0].sigma).abs() < 1e-10);
    }
}
