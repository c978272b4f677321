//! Forward map from a spectral measure to scattering data, the index
//! decomposition `s = (-1)^γ₁ t^M e^{-iv}`, and numerical cross-checks
//! between the spectral side and the Jost solution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::{self, CircleFunction};
use crate::error::{domain, Error, Result};
use crate::jacobi::{self, JacobiParams};
use crate::spectral::{normalizing_factor, SpectralMeasure};

/// `{γ₁, γ₂; Z; μ_1..μ_N; s}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScatteringData {
    pub gamma1: u8,
    pub gamma2: u8,
    pub zeros: Vec<f64>,
    pub mus: Vec<f64>,
    pub s: CircleFunction,
}

impl ScatteringData {
    pub fn n(&self) -> usize {
        self.zeros.len()
    }

    /// Expected winding number `2N + γ₁ + γ₂`.
    pub fn expected_index(&self) -> i64 {
        2 * self.n() as i64 + self.gamma1 as i64 + self.gamma2 as i64
    }
}

/// `(-1)^γ₁ t^{γ₁+γ₂}`, which equals `(1-t)^γ₁(1+t)^γ₂ / ((1-t̄)^γ₁(1+t̄)^γ₂)` on the circle.
pub fn gamma_factor(gamma1: u8, gamma2: u8, t: Complex64) -> Complex64 {
    let sign = if gamma1 == 1 { -1.0 } else { 1.0 };
    sign * t.powu((gamma1 + gamma2) as u32)
}

/// Blaschke phase `v₁ = 4 Σ_k arg(1 - z_k t)`, so that `B²(t) = t^{2N} e^{-iv₁(t)}`.
pub fn blaschke_phase(zeros: &[f64], grid_log2: u32) -> Result<CircleFunction> {
    CircleFunction::from_fn(grid_log2, |t| {
        let phase: f64 = zeros.iter().map(|&zk| 4.0 * (1.0 - zk * t).arg()).sum();
        Complex64::new(phase, 0.0)
    })
}

/// `s(t) = (-1)^γ₁ t^{γ₁+γ₂} e^{-iv₀(t)} B²(t)` with `v₀` the conjugate of `log ρ̂₀`.
///
/// Does not require the measure to be normalized: the constant cancels in `D₀(t̄)/D₀(t)`.
pub fn scattering_function(measure: &SpectralMeasure) -> Result<CircleFunction> {
    let grid = measure.grid_log2();
    let v0 = circle::conjugate(measure.log_rho0())?;
    let zeros = measure.zeros();
    let v1 = blaschke_phase(&zeros, grid)?;
    let winding = 2 * zeros.len() as u32 + (measure.gamma1() + measure.gamma2()) as u32;
    let sign = if measure.gamma1() == 1 { -1.0 } else { 1.0 };
    let samples = circle::grid_points(grid)
        .iter()
        .zip(v0.samples().iter().zip(v1.samples()))
        .map(|(t, (a, b))| sign * t.powu(winding) * Complex64::from_polar(1.0, -(a.re + b.re)))
        .collect();
    CircleFunction::analyze(samples, grid)
}

pub fn forward(measure: &SpectralMeasure) -> Result<ScatteringData> {
    if !measure.is_normalized() {
        return domain(format!(
            "forward map needs a normalized measure, total mass is {}",
            measure.total_mass()
        ));
    }
    Ok(ScatteringData {
        gamma1: measure.gamma1(),
        gamma2: measure.gamma2(),
        zeros: measure.zeros(),
        mus: measure.masses_to_mus()?,
        s: scattering_function(measure)?,
    })
}

#[derive(Debug, Clone)]
pub struct IndexDecomposition {
    pub gamma1: u8,
    pub gamma2: u8,
    /// Winding number `M = 2N + γ₁ + γ₂`.
    pub m: i64,
    /// Real antisymmetric phase with `s = (-1)^γ₁ t^M e^{-iv}`.
    pub v: CircleFunction,
}

/// Splits a unimodular `s` into `(γ₁, M, v)` and checks it against `N` mass points.
pub fn decompose_index(s: &CircleFunction, n: usize) -> Result<IndexDecomposition> {
    let m = circle::winding_number(s)?;
    let remainder = s.map(|t, g| g * t.powi(-(m as i32)))?;
    // at t = 1: t^M = 1 and v(1) = 0 by antisymmetry, so the remainder is ±1
    let at_one = remainder.samples()[0];
    let gamma1: u8 = if at_one.re > 0.0 { 0 } else { 1 };
    let gamma2 = m - 2 * n as i64 - gamma1 as i64;
    if !(0..=1).contains(&gamma2) {
        return Err(Error::Inconsistent(format!(
            "winding number {m} with N = {n} and gamma1 = {gamma1} leaves gamma2 = {gamma2}"
        )));
    }
    let sign = if gamma1 == 1 { -1.0 } else { 1.0 };
    let v = circle::unwrap_phase(&remainder.scaled(sign))?.scaled(-1.0);
    if !v.is_real() || !v.is_antisymmetric() {
        return Err(Error::Inconsistent(
            "phase of s is not antisymmetric; s(conj t) != conj s(t)".into(),
        ));
    }
    if !circle::is_besov_admissible(&v) {
        return Err(Error::Class(circle::besov_tail_ratio(&v)));
    }
    Ok(IndexDecomposition {
        gamma1,
        gamma2: gamma2 as u8,
        m,
        v,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct NormalizingCheck {
    /// `μ_k` from the spectral side
    pub mu: f64,
    /// `m_k = Σ |φ_n(z_k)|²` from the Jost solution
    pub m: f64,
    pub gap: f64,
}

fn mass_index(measure: &SpectralMeasure, k: usize) -> Result<usize> {
    if k >= measure.masses().len() {
        return domain(format!(
            "mass index {k} out of range ({} masses)",
            measure.masses().len()
        ));
    }
    Ok(k)
}

/// Compares `μ_k` with Guseinov's `m_k` for a parameter/measure pair describing the same operator.
pub fn compare_normalizing_constants(
    params: &JacobiParams,
    measure: &SpectralMeasure,
    k: usize,
    n_max: usize,
) -> Result<NormalizingCheck> {
    let k = mass_index(measure, k)?;
    let zk = measure.masses()[k].z;
    let d = measure.outer_d(Complex64::new(zk, 0.0))?;
    let mu = measure.masses()[k].sigma * normalizing_factor(&measure.blaschke(), zk, d)?;
    let m = jacobi::guseinov_constant(params, zk, n_max)?;
    Ok(NormalizingCheck {
        mu,
        m,
        gap: (mu - m).abs(),
    })
}

/// `σ_k Σ_{n≥1} s_n(z_k)²`, which equals 1 when `params` and `measure` agree.
///
/// The eigenvector decays like `z_k^n`; the forward recurrence picks up a
/// growing component, so the sum stops at the smallest `|s_n|` and the rest
/// is a geometric tail.
pub fn mass_identity(
    params: &JacobiParams,
    measure: &SpectralMeasure,
    k: usize,
    n_max: usize,
) -> Result<f64> {
    let k = mass_index(measure, k)?;
    let mass = measure.masses()[k];
    let s = jacobi::sine_solution(params, Complex64::new(mass.z, 0.0), n_max)?;
    let (stop, smallest) = s.values[1..]
        .iter()
        .enumerate()
        .map(|(i, v)| (i + 1, v.norm()))
        .fold(
            (1, f64::INFINITY),
            |best, cur| if cur.1 < best.1 { cur } else { best },
        );
    let head: f64 = s.values[1..=stop].iter().map(|v| v.norm_sqr()).sum();
    let z2 = mass.z * mass.z;
    Ok(mass.sigma * (head + smallest * smallest * z2 / (1.0 - z2)))
}

/// `φ_1(z_k)` from the Jost solution next to `σ_k (1 - z_k⁻²)⁻¹ B'(z_k)/D(z_k)`,
/// with `B` normalized positive at the origin.
pub fn jost_phi1_check(
    params: &JacobiParams,
    measure: &SpectralMeasure,
    k: usize,
    n_max: usize,
) -> Result<(f64, f64)> {
    let k = mass_index(measure, k)?;
    let mass = measure.masses()[k];
    let phi = jacobi::jost_solution(params, Complex64::new(mass.z, 0.0), n_max)?;
    let b = measure.blaschke();
    let sign = if b.degree().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let d = measure.outer_d(Complex64::new(mass.z, 0.0))?;
    let predicted =
        sign * mass.sigma / (1.0 - 1.0 / (mass.z * mass.z)) * b.derivative_at_zero(mass.z)? / d.re;
    Ok((phi.values[1].re, predicted))
}
