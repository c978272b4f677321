//! Closed-form test cases: Bernstein–Szegő weights with and without one
//! eigenvalue, with their scattering data and Jacobi parameters.

use std::sync::Arc;

use num_complex::Complex64;

use crate::circle::CircleFunction;
use crate::error::{domain, Result};
use crate::jacobi::JacobiParams;
use crate::scattering::ScatteringData;
use crate::spectral::{MassPoint, SpectralMeasure};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Example {
    /// `s = (1-at)/(1-at̄)`, weight `c/|1-at|²`.
    One { a: f64 },
    /// `s = (1-at̄)/(1-at)`, weight `c|1-at|²`.
    Two { a: f64 },
    /// `s = (1-at)(1-bt)/((1-at̄)(1-bt̄))`.
    Three { a: f64, b: f64 },
    /// `s = t²` with one eigenvalue at `z₁ + 1/z₁`.
    Four { z1: f64, mu1: f64 },
}

fn log_abs2(t: Complex64, a: f64) -> f64 {
    (1.0 - a * t).norm_sqr().ln()
}

impl Example {
    pub fn id(&self) -> u8 {
        match self {
            Example::One { .. } => 1,
            Example::Two { .. } => 2,
            Example::Three { .. } => 3,
            Example::Four { .. } => 4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| {
            if (0.0..1.0).contains(&v) {
                Ok(())
            } else {
                domain(format!("{name} = {v} must lie in [0, 1)"))
            }
        };
        match *self {
            Example::One { a } | Example::Two { a } => unit("a", a),
            Example::Three { a, b } => unit("a", a).and(unit("b", b)),
            Example::Four { z1, mu1 } => {
                if !(z1 > 0.0 && z1 < 1.0) {
                    return domain(format!("z1 = {z1} must lie in (0, 1)"));
                }
                if !(mu1 > 0.0 && mu1.is_finite()) {
                    return domain(format!("mu1 = {mu1} must be positive"));
                }
                Ok(())
            }
        }
    }

    /// Number of eigenvalues.
    pub fn n(&self) -> usize {
        matches!(self, Example::Four { .. }) as usize
    }

    /// Unnormalized `log ρ̂₀` (the constant is fixed by [`Example::measure`]).
    fn log_weight(&self, t: Complex64) -> f64 {
        match *self {
            Example::One { a } => -log_abs2(t, a),
            Example::Two { a } => log_abs2(t, a),
            Example::Three { a, b } => -log_abs2(t, a) - log_abs2(t, b),
            Example::Four { z1, .. } => -2.0 * log_abs2(t, z1),
        }
    }

    /// Normalized spectral measure.
    pub fn measure(&self, grid_log2: u32) -> Result<SpectralMeasure> {
        self.validate()?;
        let ex = *self;
        let log_rho0 = CircleFunction::from_fn(grid_log2, move |t| ex.log_weight(t).into())?;
        match *self {
            Example::Four { z1, mu1 } => {
                let c0sq = example4::c0_sq(z1, mu1);
                let masses = vec![MassPoint {
                    z: z1,
                    sigma: example4::sigma1(z1, mu1),
                }];
                SpectralMeasure::new(0, 0, log_rho0.shifted(c0sq.ln()), masses)
            }
            _ => Ok(SpectralMeasure::new(0, 0, log_rho0, Vec::new())?.normalize()),
        }
    }

    /// `s(t)` in closed form.
    pub fn s(&self, t: Complex64) -> Complex64 {
        let r = |a: f64| (1.0 - a * t) / (1.0 - a * t.conj());
        match *self {
            Example::One { a } => r(a),
            Example::Two { a } => r(a).inv(),
            Example::Three { a, b } => r(a) * r(b),
            Example::Four { .. } => t * t,
        }
    }

    pub fn scattering_data(&self, grid_log2: u32) -> Result<ScatteringData> {
        self.validate()?;
        let ex = *self;
        let (zeros, mus) = match *self {
            Example::Four { z1, mu1 } => (vec![z1], vec![mu1]),
            _ => (Vec::new(), Vec::new()),
        };
        Ok(ScatteringData {
            gamma1: 0,
            gamma2: 0,
            zeros,
            mus,
            s: CircleFunction::from_fn(grid_log2, move |t| ex.s(t))?,
        })
    }

    /// Jacobi parameters in closed form.
    pub fn params(&self) -> Result<JacobiParams> {
        self.validate()?;
        match *self {
            Example::One { a } => JacobiParams::new(vec![1.0], vec![a]),
            Example::Three { a, b } => JacobiParams::new(vec![(1.0 - a * b).sqrt()], vec![a + b]),
            Example::Two { a } => {
                let rule = move |n: usize| example2::params(a, n);
                JacobiParams::with_generator(Vec::new(), Vec::new(), Arc::new(rule))
            }
            Example::Four { z1, mu1 } => {
                let head = (1..=2).map(|n| example4::params(z1, mu1, n));
                let (a, b) = head.unzip();
                let rule = move |n: usize| example4::params(z1, mu1, n);
                JacobiParams::with_generator(a, b, Arc::new(rule))
            }
        }
    }

    /// Closed-form Verblunsky coefficients of the circle weight, where the
    /// `Sz^(o)` route applies.
    pub fn alpha(&self, n: usize) -> Option<f64> {
        match *self {
            Example::One { a } => Some(if n == 0 { a } else { 0.0 }),
            Example::Two { a } => Some(example2::alpha(a, n)),
            Example::Three { a, b } => Some(match n {
                0 => (a + b) / (1.0 + a * b),
                1 => -a * b,
                _ => 0.0,
            }),
            Example::Four { .. } => None,
        }
    }
}

pub mod example2 {
    /// `α_n = -(a⁻¹ - a)/(a^{-n-2} - a^{n+2})`, written to stay finite at `a = 0`.
    pub fn alpha(a: f64, n: usize) -> f64 {
        let q = a.powi(n as i32 + 1);
        -(1.0 - a * a) * q / (1.0 - q * q * a * a)
    }

    /// `(a_n, b_n)` for `n ≥ 1`.
    pub fn params(a: f64, n: usize) -> (f64, f64) {
        let k = n as i32 - 1;
        let g = (1.0 - a * a).powi(2);
        let b = -a.powi(2 * k + 1) * g / ((1.0 - a.powi(2 * k + 2)) * (1.0 - a.powi(2 * k + 4)));
        let a2 = 1.0 - a.powi(2 * k + 2) * g / (1.0 - a.powi(2 * k + 4)).powi(2);
        (a2.sqrt(), b)
    }
}

/// Constants of the one-eigenvalue case. The base measure `σ₀` is the
/// normalized absolutely continuous part, and `σ = (σ₀ + ε δ_{λ₁})/(1 + ε)`.
pub mod example4 {
    pub fn lambda1(z1: f64) -> f64 {
        z1 + 1.0 / z1
    }

    /// `c₀²` from unit total mass.
    pub fn c0_sq(z1: f64, mu1: f64) -> f64 {
        1.0 / (1.0 / (1.0 - z1 * z1) + mu1 / z1.powi(4))
    }

    /// `c₁²` normalizing the absolutely continuous part alone.
    pub fn c1_sq(z1: f64) -> f64 {
        1.0 - z1 * z1
    }

    pub fn sigma1(z1: f64, mu1: f64) -> f64 {
        c0_sq(z1, mu1) * mu1 / z1.powi(4)
    }

    pub fn epsilon(z1: f64, mu1: f64) -> f64 {
        mu1 / z1.powi(4) * (1.0 - z1 * z1)
    }

    /// Parameters of `σ₀`: `b₁ = 2z₁`, `a₁² = 1 - z₁²`, free afterwards.
    pub fn base_params(z1: f64) -> (Vec<f64>, Vec<f64>) {
        (vec![(1.0 - z1 * z1).sqrt()], vec![2.0 * z1])
    }

    /// `K_n(σ₀, λ₁)`: `K₀ = 0`, `K_{n+1} = z₁^{-2n}`.
    pub fn kernel(z1: f64, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            z1.powi(-2 * (n as i32 - 1))
        }
    }

    /// `V_n` for `n ≥ 0`.
    pub fn v(z1: f64, mu1: f64, n: usize) -> f64 {
        let e = epsilon(z1, mu1);
        match n {
            0 => 0.0,
            1 => e * (1.0 - z1 * z1).sqrt() / (z1 * (1.0 + e)),
            _ => e * (1.0 - z1 * z1) / (z1 * (z1.powi(2 * n as i32 - 2) + e)),
        }
    }

    /// `a₁²(σ)` from the insertion formula with `K₀ = 0`, `K₁ = 1`, `K₂ = z₁⁻²`.
    pub fn a1_sq(z1: f64, mu1: f64) -> f64 {
        let e = epsilon(z1, mu1);
        (1.0 - z1 * z1) * (1.0 + e / (z1 * z1)) / (1.0 + e).powi(2)
    }

    /// The closed form for `a₁²(σ)` as it is usually displayed; it does not
    /// agree with [`a1_sq`] and is kept for comparison tables only.
    pub fn a1_sq_displayed(z1: f64, mu1: f64) -> f64 {
        let z2 = z1 * z1;
        (1.0 - z2).powi(2) * (1.0 + mu1 * (1.0 + 1.0 / z2))
            / (1.0 + mu1 / (z2 * z2) * (1.0 - z2)).powi(2)
    }

    /// `a_n²(σ)` for `n ≥ 2`.
    pub fn a_sq(z1: f64, mu1: f64, n: usize) -> f64 {
        let e = epsilon(z1, mu1);
        let z2n = z1.powi(2 * n as i32);
        1.0 + e * (1.0 - z1 * z1).powi(2) / (z2n + e * z1 * z1).powi(2) * z2n
    }

    /// `b_n(σ)` for `n ≥ 3`.
    pub fn b(z1: f64, mu1: f64, n: usize) -> f64 {
        let e = epsilon(z1, mu1);
        let n = n as i32;
        e * (1.0 - z1 * z1).powi(2) * z1.powi(2 * n - 5)
            / ((e + z1.powi(2 * n - 2)) * (e + z1.powi(2 * n - 4)))
    }

    /// `(a_n, b_n)` of `σ` for `n ≥ 1`; `b₁` and `b₂` come from `V₁`, `V₂`.
    pub fn params(z1: f64, mu1: f64, n: usize) -> (f64, f64) {
        let a1_0 = (1.0 - z1 * z1).sqrt();
        match n {
            1 => (a1_sq(z1, mu1).sqrt(), 2.0 * z1 + a1_0 * v(z1, mu1, 1)),
            2 => (
                a_sq(z1, mu1, 2).sqrt(),
                -a1_0 * v(z1, mu1, 1) + v(z1, mu1, 2),
            ),
            _ => (a_sq(z1, mu1, n).sqrt(), b(z1, mu1, n)),
        }
    }

    /// Jost function `φ₀(z) = (z₁/c₀)(1 - z₁z)(1 - z/z₁)`.
    pub fn jost_function(z1: f64, mu1: f64, z: f64) -> f64 {
        z1 / c0_sq(z1, mu1).sqrt() * (1.0 - z1 * z) * (1.0 - z / z1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn measures_are_normalized() {
        for ex in [
            Example::One { a: 0.5 },
            Example::Two { a: 0.5 },
            Example::Three { a: 0.3, b: 0.6 },
            Example::Four { z1: 0.5, mu1: 1.0 },
        ] {
            let m = ex.measure(12).unwrap();
            assert_abs_diff_eq!(m.total_mass(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn parameter_ranges() {
        assert!(Example::One { a: 1.0 }.validate().is_err());
        assert!(Example::Three { a: 0.2, b: -0.1 }.validate().is_err());
        assert!(Example::Four { z1: 0.0, mu1: 1.0 }.validate().is_err());
        assert!(Example::Four { z1: 0.5, mu1: 0.0 }.validate().is_err());
        assert!(Example::Two { a: 0.0 }.validate().is_ok());
    }

    #[test]
    fn example4_constants() {
        let (z1, mu1) = (0.5, 1.0);
        assert_abs_diff_eq!(example4::epsilon(z1, mu1), 12.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            example4::c1_sq(z1) / example4::c0_sq(z1, mu1) - 1.0,
            12.0,
            epsilon = 1e-13
        );
        for n in 1..10 {
            assert_abs_diff_eq!(
                example4::kernel(z1, n + 1) - example4::kernel(z1, n),
                (1.0 - z1 * z1) * z1.powi(-2 * n as i32),
                epsilon = 1e-12 * example4::kernel(z1, n + 1)
            );
        }
        assert!((example4::a1_sq(z1, mu1) - example4::a1_sq_displayed(z1, mu1)).abs() > 0.1);
        assert_abs_diff_eq!(example4::jost_function(z1, mu1, z1), 0.0);
    }

    #[test]
    fn example2_at_zero_is_free() {
        let p = Example::Two { a: 0.0 }.params().unwrap();
        assert_eq!((p.a(3), p.b(3)), (1.0, 0.0));
        assert_eq!(Example::Two { a: 0.0 }.alpha(4), Some(0.0));
    }
}
