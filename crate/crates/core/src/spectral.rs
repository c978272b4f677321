//! Spectral measures of Ryckman class: outer functions, Blaschke products,
//! the Joukowski parametrization and the normalizing constants.
//!
//! A measure is `f(x) dx + Σ σ_k δ(λ_k)` with
//! `f(x) = ρ(x) √(4 - x²) / 2π`, `ρ = ρ₀ / ((2-x)^γ₁ (2+x)^γ₂)`. The
//! density is stored through `log ρ̂₀(t) = log ρ₀(t + 1/t)` on the circle
//! and mass points through their disk parameters `z_k`, `λ_k = z_k + 1/z_k`.
//! Integrals over `[-2, 2]` are done in `θ` via `x = 2cos θ`, where
//! `2 - x = |1-t|²` and `2 + x = |1+t|²` remove the endpoint singularities.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::{self, CircleFunction};
use crate::error::{domain, Error, Result};

/// Mass tolerance for the `normalized` flag.
pub const MASS_TOL: f64 = 1e-10;

/// `λ = z + 1/z`.
pub fn joukowski(z: Complex64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return domain("joukowski map is singular at z = 0");
    }
    Ok(z + z.inv())
}

/// Preimage of `λ` in `(-1, 1) \ {0}`; `sign(z) = sign(λ)`.
pub fn inverse_joukowski(lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda.abs() <= 2.0 {
        return domain(format!(
            "inverse joukowski needs |lambda| > 2, got {lambda}"
        ));
    }
    // z = 2 / (λ + sgn(λ)√(λ²-4)) avoids cancellation for large |λ|
    let root = (lambda * lambda - 4.0).sqrt();
    Ok(2.0 / (lambda + lambda.signum() * root))
}

fn check_zero(z: f64) -> Result<()> {
    if z.is_nan() || z.abs() >= 1.0 || z == 0.0 {
        return domain(format!("disk parameter {z} is not in (-1, 1) \\ {{0}}"));
    }
    Ok(())
}

fn check_distinct(zeros: &[f64]) -> Result<()> {
    for (i, a) in zeros.iter().enumerate() {
        if zeros[..i].contains(a) {
            return domain(format!("zero {a} appears twice"));
        }
    }
    Ok(())
}

/// Finite Blaschke product `B(z) = Π (z_k/|z_k|) (z - z_k)/(1 - z_k z)` with real zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    zeros: Vec<f64>,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<f64>) -> Result<Self> {
        zeros.iter().try_for_each(|&z| check_zero(z))?;
        check_distinct(&zeros)?;
        Ok(Self { zeros })
    }

    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    fn factor(zk: f64, z: Complex64) -> Complex64 {
        zk.signum() * (z - zk) / (1.0 - zk * z)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &zk| {
                acc * Self::factor(zk, z)
            })
    }

    /// `(-1)^N B(z)`, the normalization that is positive at the origin.
    pub fn eval_positive_at_origin(&self, z: Complex64) -> Complex64 {
        if self.degree().is_multiple_of(2) {
            self.eval(z)
        } else {
            -self.eval(z)
        }
    }

    /// `B'(z_k)` at one of the zeros.
    pub fn derivative_at_zero(&self, zk: f64) -> Result<f64> {
        let k =
            self.zeros.iter().position(|&z| z == zk).ok_or_else(|| {
                Error::Domain(format!("{zk} is not a zero of the Blaschke product"))
            })?;
        let zc = Complex64::new(zk, 0.0);
        let others = self
            .zeros
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .fold(Complex64::new(1.0, 0.0), |acc, (_, &zj)| {
                acc * Self::factor(zj, zc)
            });
        Ok(zk.signum() / (1.0 - zk * zk) * others.re)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassPoint {
    pub z: f64,
    pub sigma: f64,
}

impl MassPoint {
    pub fn lambda(&self) -> f64 {
        self.z + 1.0 / self.z
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "MeasureRepr", into = "MeasureRepr")]
pub struct SpectralMeasure {
    gamma1: u8,
    gamma2: u8,
    log_rho0: CircleFunction,
    masses: Vec<MassPoint>,
}

#[derive(Serialize, Deserialize)]
struct MeasureRepr {
    gamma1: u8,
    gamma2: u8,
    log_rho0: CircleFunction,
    #[serde(default)]
    masses: Vec<MassPoint>,
    #[serde(default)]
    normalized: bool,
}

impl TryFrom<MeasureRepr> for SpectralMeasure {
    type Error = Error;

    fn try_from(r: MeasureRepr) -> Result<Self> {
        let m = SpectralMeasure::new(r.gamma1, r.gamma2, r.log_rho0, r.masses)?;
        if r.normalized && !m.is_normalized() {
            return domain(format!(
                "measure is flagged normalized but has total mass {}",
                m.total_mass()
            ));
        }
        Ok(m)
    }
}

impl From<SpectralMeasure> for MeasureRepr {
    fn from(m: SpectralMeasure) -> Self {
        let normalized = m.is_normalized();
        MeasureRepr {
            gamma1: m.gamma1,
            gamma2: m.gamma2,
            log_rho0: m.log_rho0,
            masses: m.masses,
            normalized,
        }
    }
}

pub(crate) fn check_gamma(gamma1: u8, gamma2: u8) -> Result<()> {
    if gamma1 > 1 || gamma2 > 1 {
        return domain(format!(
            "gamma exponents must be 0 or 1, got ({gamma1}, {gamma2})"
        ));
    }
    Ok(())
}

impl SpectralMeasure {
    pub fn new(
        gamma1: u8,
        gamma2: u8,
        log_rho0: CircleFunction,
        masses: Vec<MassPoint>,
    ) -> Result<Self> {
        check_gamma(gamma1, gamma2)?;
        if !log_rho0.is_real() || !log_rho0.is_symmetric() {
            return domain("log rho0 must be real and symmetric on the circle");
        }
        if !circle::is_besov_admissible(&log_rho0) {
            return Err(Error::Class(circle::besov_tail_ratio(&log_rho0)));
        }
        for m in &masses {
            check_zero(m.z)?;
            if m.sigma <= 0.0 || !m.sigma.is_finite() {
                return domain(format!(
                    "mass at z = {} must be positive, got {}",
                    m.z, m.sigma
                ));
            }
        }
        check_distinct(&masses.iter().map(|m| m.z).collect::<Vec<_>>())?;
        Ok(Self {
            gamma1,
            gamma2,
            log_rho0,
            masses,
        })
    }

    /// The semicircle law `√(4-x²)/2π dx`, spectral measure of the free Jacobi matrix.
    pub fn semicircle(grid_log2: u32) -> Result<Self> {
        Self::new(0, 0, CircleFunction::constant(grid_log2, 0.0)?, Vec::new())
    }

    pub fn gamma1(&self) -> u8 {
        self.gamma1
    }

    pub fn gamma2(&self) -> u8 {
        self.gamma2
    }

    pub fn log_rho0(&self) -> &CircleFunction {
        &self.log_rho0
    }

    pub fn masses(&self) -> &[MassPoint] {
        &self.masses
    }

    pub fn grid_log2(&self) -> u32 {
        self.log_rho0.grid_log2()
    }

    pub fn zeros(&self) -> Vec<f64> {
        self.masses.iter().map(|m| m.z).collect()
    }

    pub fn blaschke(&self) -> BlaschkeProduct {
        BlaschkeProduct {
            zeros: self.zeros(),
        }
    }

    /// Same measure with the point masses removed (not renormalized).
    pub fn absolutely_continuous_part(&self) -> Self {
        Self {
            masses: Vec::new(),
            ..self.clone()
        }
    }

    /// Outer function with boundary modulus `|D₀(t)|² = ρ̂₀(t)`.
    pub fn outer_d0(&self, z: Complex64) -> Result<Complex64> {
        circle::herglotz_outer_eval(&self.log_rho0, z)
    }

    /// `D = D₀ / ((1-z)^γ₁ (1+z)^γ₂)`.
    pub fn outer_d(&self, z: Complex64) -> Result<Complex64> {
        let mut d = self.outer_d0(z)?;
        if self.gamma1 == 1 {
            d /= 1.0 - z;
        }
        if self.gamma2 == 1 {
            d /= 1.0 + z;
        }
        Ok(d)
    }

    /// Boundary values of `D₀` on the grid.
    pub fn d0_boundary(&self) -> Result<CircleFunction> {
        circle::outer_boundary(&self.log_rho0)
    }

    /// `ρ̂₀(e^{iθ})`.
    pub fn rho0_hat(&self, theta: f64) -> f64 {
        self.log_rho0.eval_angle(theta).re.exp()
    }

    /// Density `f(x)` of the absolutely continuous part, `|x| < 2`.
    pub fn density_f(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x.abs() >= 2.0 {
            return domain(format!("density is defined on (-2, 2), got x = {x}"));
        }
        let theta = (0.5 * x).acos();
        let mut rho = self.rho0_hat(theta);
        if self.gamma1 == 1 {
            rho /= 2.0 - x;
        }
        if self.gamma2 == 1 {
            rho /= 2.0 + x;
        }
        Ok(rho * (4.0 - x * x).sqrt() / (2.0 * PI))
    }

    /// `∫ f(x) dx` by the trapezoid rule in `θ`:
    /// `f dx = ρ̂₀ |1-t|^{2(1-γ₁)} |1+t|^{2(1-γ₂)} / 2 · m(dt)`.
    pub fn ac_mass(&self) -> f64 {
        let pts = circle::grid_points(self.grid_log2());
        let sum: f64 = pts
            .iter()
            .zip(self.log_rho0.samples())
            .map(|(t, u)| {
                let mut w = 0.5 * u.re.exp();
                if self.gamma1 == 0 {
                    w *= (1.0 - t).norm_sqr();
                }
                if self.gamma2 == 0 {
                    w *= (1.0 + t).norm_sqr();
                }
                w
            })
            .sum();
        sum / pts.len() as f64
    }

    pub fn total_mass(&self) -> f64 {
        self.ac_mass() + self.masses.iter().map(|m| m.sigma).sum::<f64>()
    }

    pub fn is_normalized(&self) -> bool {
        (self.total_mass() - 1.0).abs() <= MASS_TOL
    }

    /// Rescales `ρ₀` and every `σ_k` by the same factor so the total mass is 1.
    pub fn normalize(&self) -> Self {
        self.rescaled(1.0 / self.total_mass())
    }

    /// Multiplies the whole measure by `c > 0`.
    pub fn rescaled(&self, c: f64) -> Self {
        Self {
            gamma1: self.gamma1,
            gamma2: self.gamma2,
            log_rho0: self.log_rho0.shifted(c.ln()),
            masses: self
                .masses
                .iter()
                .map(|m| MassPoint {
                    z: m.z,
                    sigma: m.sigma * c,
                })
                .collect(),
        }
    }

    /// Jost function `φ₀ = B/D`, with `B` normalized positive at the origin.
    pub fn jost_function(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.blaschke().eval_positive_at_origin(z) / self.outer_d(z)?)
    }

    /// `μ_k = σ_k |B'(z_k)/D(z_k)|² |1 - z_k⁻²|⁻²`.
    pub fn masses_to_mus(&self) -> Result<Vec<f64>> {
        let b = self.blaschke();
        self.masses
            .iter()
            .map(|m| {
                let d = self.outer_d(Complex64::new(m.z, 0.0))?;
                Ok(m.sigma * normalizing_factor(&b, m.z, d)?)
            })
            .collect()
    }
}

/// `|B'(z_k)/D(z_k)|² |1 - z_k⁻²|⁻²`, the ratio `μ_k / σ_k`.
pub fn normalizing_factor(b: &BlaschkeProduct, zk: f64, d_at_zk: Complex64) -> Result<f64> {
    let bp = b.derivative_at_zero(zk)?;
    let inv = 1.0 - 1.0 / (zk * zk);
    Ok(bp * bp / d_at_zk.norm_sqr() / (inv * inv))
}

/// Inverse of [`SpectralMeasure::masses_to_mus`]:
/// `σ_k = μ_k |D(z_k)/B'(z_k)|² |1 - z_k⁻²|²`, with `D` supplied by the caller.
pub fn mus_to_masses(
    zeros: &[f64],
    mus: &[f64],
    d: impl Fn(Complex64) -> Result<Complex64>,
) -> Result<Vec<f64>> {
    if zeros.len() != mus.len() {
        return domain(format!("{} zeros but {} constants", zeros.len(), mus.len()));
    }
    let b = BlaschkeProduct::new(zeros.to_vec())?;
    zeros
        .iter()
        .zip(mus)
        .map(|(&zk, &mu)| {
            if mu.is_nan() || mu <= 0.0 {
                return domain(format!("normalizing constant must be positive, got {mu}"));
            }
            Ok(mu / normalizing_factor(&b, zk, d(Complex64::new(zk, 0.0))?)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bernstein_szego(a: f64, grid: u32) -> SpectralMeasure {
        let log_rho0 =
            CircleFunction::from_fn(grid, |t| c(-(1.0 - a * t).norm_sqr().ln(), 0.0)).unwrap();
        SpectralMeasure::new(0, 0, log_rho0, vec![]).unwrap()
    }

    #[test]
    fn joukowski_examples() {
        assert_abs_diff_eq!(joukowski(c(0.5, 0.0)).unwrap().re, 2.5, epsilon = 1e-15);
        assert_abs_diff_eq!(inverse_joukowski(2.5).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(inverse_joukowski(-2.5).unwrap(), -0.5, epsilon = 1e-15);
        let z = c(0.3, -0.2);
        assert!((joukowski(z).unwrap() - joukowski(z.inv()).unwrap()).norm() < 1e-14);
        assert!(inverse_joukowski(2.0).is_err());
        assert!(inverse_joukowski(-1.0).is_err());
        assert!(joukowski(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn blaschke_examples() {
        let b = BlaschkeProduct::new(vec![0.5]).unwrap();
        assert_abs_diff_eq!(b.eval(c(0.0, 0.0)).re, -0.5, epsilon = 1e-15);
        assert_eq!(b.eval(c(0.5, 0.0)).norm(), 0.0);
        let b2 = BlaschkeProduct::new(vec![0.5, -0.3, 0.8]).unwrap();
        for t in circle::grid_points(6) {
            assert_abs_diff_eq!(b2.eval(t).norm(), 1.0, epsilon = 1e-14);
            assert!((b2.eval(t.conj()) - b2.eval(t).inv()).norm() < 1e-13);
        }
        let z = c(0.2, 0.4);
        assert!((b2.eval(z.conj()) - b2.eval(z).conj()).norm() < 1e-15);
        assert!(BlaschkeProduct::new(vec![0.5, 0.5]).is_err());
        assert!(BlaschkeProduct::new(vec![0.0]).is_err());
        assert!(BlaschkeProduct::new(vec![1.0]).is_err());
    }

    #[test]
    fn blaschke_derivative_matches_difference_quotient() {
        let b = BlaschkeProduct::new(vec![0.5, -0.3, 0.8]).unwrap();
        for &zk in b.zeros() {
            let h = 1e-6;
            let fd = (b.eval(c(zk + h, 0.0)) - b.eval(c(zk - h, 0.0))) / (2.0 * h);
            assert_abs_diff_eq!(b.derivative_at_zero(zk).unwrap(), fd.re, epsilon = 1e-8);
        }
        // single zero: B'(z1) = 1/(1 - z1²)
        let single = BlaschkeProduct::new(vec![0.5]).unwrap();
        assert_abs_diff_eq!(
            single.derivative_at_zero(0.5).unwrap(),
            1.0 / 0.75,
            epsilon = 1e-15
        );
        assert!(single.derivative_at_zero(0.4).is_err());
    }

    #[test]
    fn outer_functions() {
        let free = SpectralMeasure::semicircle(8).unwrap();
        assert_abs_diff_eq!(free.outer_d(c(0.3, 0.2)).unwrap().re, 1.0, epsilon = 1e-15);

        let m = bernstein_szego(0.5, 12);
        // D(z) (1 - 0.5 z) is constant
        let k0 = m.outer_d(c(0.0, 0.0)).unwrap();
        for z in [c(0.4, 0.0), c(-0.2, 0.7), c(0.0, -0.5)] {
            let k = m.outer_d(z).unwrap() * (1.0 - 0.5 * z);
            assert!((k - k0).norm() < 1e-12);
        }

        let log_rho0 =
            CircleFunction::from_fn(12, |t| c((1.0 - 0.5 * t).norm_sqr().ln(), 0.0)).unwrap();
        let m2 = SpectralMeasure::new(0, 0, log_rho0, vec![]).unwrap();
        let k0 = m2.outer_d(c(0.0, 0.0)).unwrap();
        for z in [c(0.4, 0.0), c(-0.2, 0.7)] {
            let k = m2.outer_d(z).unwrap() / (1.0 - 0.5 * z);
            assert!((k - k0).norm() < 1e-12);
        }

        let bd = m.d0_boundary().unwrap();
        for (j, t) in circle::grid_points(12).iter().enumerate().step_by(97) {
            assert_abs_diff_eq!(
                bd.samples()[j].norm_sqr(),
                1.0 / (1.0 - 0.5 * t).norm_sqr(),
                epsilon = 1e-8
            );
        }
        assert!(m.outer_d(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn d0_conjugate_symmetry_and_zero_free() {
        let log_rho0 =
            CircleFunction::from_real_fn(10, |th| 0.3 * th.cos() - 0.2 * (2.0 * th).cos()).unwrap();
        let m = SpectralMeasure::new(1, 0, log_rho0, vec![]).unwrap();
        for z in [c(0.1, 0.3), c(-0.7, 0.1), c(0.5, -0.5)] {
            let a = m.outer_d0(z).unwrap();
            let b = m.outer_d0(z.conj()).unwrap();
            assert!((a.conj() - b).norm() < 1e-13);
            assert!(a.norm() > 0.0);
        }
    }

    #[test]
    fn density_examples() {
        let free = SpectralMeasure::semicircle(8).unwrap();
        assert_abs_diff_eq!(free.density_f(0.0).unwrap(), 1.0 / PI, epsilon = 1e-15);
        assert!(free.density_f(2.0).is_err());

        let a = 0.5;
        let m = bernstein_szego(a, 12);
        for x in [-1.7f64, -0.3, 0.0, 1.1, 1.95] {
            let want = (4.0 - x * x).sqrt() / (2.0 * PI * (1.0 - a * x + a * a));
            assert_abs_diff_eq!(m.density_f(x).unwrap(), want, epsilon = 1e-12);
        }
    }

    #[test]
    fn density_reflection() {
        let grid = 10;
        let log_rho0 =
            CircleFunction::from_real_fn(grid, |th| 0.3 * th.cos() + 0.1 * (2.0 * th).cos())
                .unwrap();
        let reflected =
            CircleFunction::from_real_fn(grid, |th| -0.3 * th.cos() + 0.1 * (2.0 * th).cos())
                .unwrap();
        let m = SpectralMeasure::new(1, 0, log_rho0, vec![]).unwrap();
        let r = SpectralMeasure::new(0, 1, reflected, vec![]).unwrap();
        for x in [-1.5, -0.2, 0.7, 1.9] {
            assert_abs_diff_eq!(
                m.density_f(x).unwrap(),
                r.density_f(-x).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn semicircle_has_unit_mass() {
        let m = SpectralMeasure::semicircle(12).unwrap();
        assert_abs_diff_eq!(m.total_mass(), 1.0, epsilon = 1e-14);
        assert!(m.is_normalized());
    }

    #[test]
    fn gamma_masses_match_quadrature() {
        // ∫ √(4-x²)/(2π(2-x)) dx = 1 and the same for 2+x; both = 1 by x = 2cos θ
        let zero = CircleFunction::constant(12, 0.0).unwrap();
        for (g1, g2, want) in [(1, 0, 1.0), (0, 1, 1.0), (1, 1, f64::INFINITY)] {
            let m = SpectralMeasure::new(g1, g2, zero.clone(), vec![]).unwrap();
            if want.is_finite() {
                assert_abs_diff_eq!(m.ac_mass(), want, epsilon = 1e-13);
            } else {
                // ∫ √(4-x²)/(2π(4-x²)) dx = 1/2
                assert_abs_diff_eq!(m.ac_mass(), 0.5, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn normalize_is_idempotent_and_grid_stable() {
        let log_rho0 = CircleFunction::from_real_fn(12, |th| 0.8 + 0.4 * th.cos()).unwrap();
        let m = SpectralMeasure::new(
            0,
            1,
            log_rho0,
            vec![MassPoint {
                z: -0.4,
                sigma: 0.3,
            }],
        )
        .unwrap();
        let n = m.normalize();
        assert_abs_diff_eq!(n.total_mass(), 1.0, epsilon = 1e-14);
        let nn = n.normalize();
        assert!(nn.log_rho0().max_deviation(n.log_rho0()).unwrap() < 1e-14);
        assert_abs_diff_eq!(nn.masses()[0].sigma, n.masses()[0].sigma, epsilon = 1e-15);

        let coarse =
            SpectralMeasure::new(0, 1, m.log_rho0().resample(9).unwrap(), m.masses().to_vec())
                .unwrap();
        assert_abs_diff_eq!(coarse.total_mass(), m.total_mass(), epsilon = 1e-10);
    }

    #[test]
    fn mus_and_masses_are_inverse() {
        let log_rho0 = CircleFunction::from_real_fn(11, |th| 0.2 * th.cos()).unwrap();
        let masses = vec![
            MassPoint { z: 0.5, sigma: 0.2 },
            MassPoint {
                z: -0.7,
                sigma: 0.05,
            },
        ];
        let m = SpectralMeasure::new(0, 1, log_rho0, masses).unwrap();
        let mus = m.masses_to_mus().unwrap();
        assert!(mus.iter().all(|&mu| mu > 0.0));
        let sig = mus_to_masses(&m.zeros(), &mus, |z| m.outer_d(z)).unwrap();
        for (s, p) in sig.iter().zip(m.masses()) {
            assert_abs_diff_eq!(*s, p.sigma, epsilon = 1e-10 * p.sigma);
        }
    }

    #[test]
    fn single_mass_unit_outer() {
        // D ≡ 1, z1 = 0.5: |B'|² = (1-z1²)⁻², |1 - z1⁻²|² = (1-z1²)²/z1⁴, so σ = μ (1-z1²)⁴/z1⁴
        let z1: f64 = 0.5;
        let sig = mus_to_masses(&[z1], &[1.0], |_| Ok(c(1.0, 0.0))).unwrap();
        assert_abs_diff_eq!(
            sig[0],
            (1.0 - z1 * z1).powi(4) / z1.powi(4),
            epsilon = 1e-14
        );
        assert!(mus_to_masses(&[z1], &[-1.0], |_| Ok(c(1.0, 0.0))).is_err());
    }

    #[test]
    fn constructor_validation() {
        let zero = CircleFunction::constant(6, 0.0).unwrap();
        assert!(SpectralMeasure::new(2, 0, zero.clone(), vec![]).is_err());
        assert!(
            SpectralMeasure::new(0, 0, zero.clone(), vec![MassPoint { z: 0.5, sigma: 0.0 }])
                .is_err()
        );
        assert!(
            SpectralMeasure::new(0, 0, zero.clone(), vec![MassPoint { z: 1.5, sigma: 1.0 }])
                .is_err()
        );
        let odd = CircleFunction::from_real_fn(6, |th| th.sin()).unwrap();
        assert!(SpectralMeasure::new(0, 0, odd, vec![]).is_err());
        let rough =
            CircleFunction::from_coeffs(6, [(30, c(1.0, 0.0)), (-30, c(1.0, 0.0))]).unwrap();
        assert!(matches!(
            SpectralMeasure::new(0, 0, rough, vec![]),
            Err(Error::Class(_))
        ));
    }

    #[test]
    fn json_normalized_flag_is_checked() {
        let m = SpectralMeasure::semicircle(4).unwrap().rescaled(2.0);
        let mut v = serde_json::to_value(&m).unwrap();
        assert_eq!(v["normalized"], false);
        v["normalized"] = true.into();
        assert!(serde_json::from_value::<SpectralMeasure>(v).is_err());
        let n: SpectralMeasure =
            serde_json::from_value(serde_json::to_value(m.normalize()).unwrap()).unwrap();
        assert!(n.is_normalized());
    }
}
