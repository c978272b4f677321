//! Inverse scattering: admissible scattering data to the normalized spectral measure.
//!
//! The pipeline runs in a fixed order, each stage with its own contract:
//! index and `γ` extraction, Blaschke removal, phase unwrapping, inverse
//! conjugation, exponentiation, masses from `μ_k`, normalization.

use num_complex::Complex64;
use serde::Serialize;

use crate::circle::{self, CircleFunction};
use crate::error::{Admissibility, Error, Result};
use crate::scattering::{self, gamma_factor, ScatteringData};
use crate::spectral::{self, BlaschkeProduct, MassPoint, SpectralMeasure};

/// Tolerance for the unimodularity and reflection checks on `s`.
pub const ADMISSIBILITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityReport {
    pub n: usize,
    pub gamma1: u8,
    pub gamma2: u8,
    pub index: i64,
    pub unimodular_deviation: f64,
    pub reflection_deviation: f64,
    pub omega_seminorm: f64,
    pub omega_tail_ratio: f64,
}

/// Checks the four admissibility items; the first violated item is returned as the error.
pub fn validate_data(data: &ScatteringData) -> Result<AdmissibilityReport> {
    if data.gamma1 > 1 || data.gamma2 > 1 {
        return Err(Admissibility::Gamma(data.gamma1, data.gamma2).into());
    }
    for (i, &z) in data.zeros.iter().enumerate() {
        if z.is_nan() || z.abs() >= 1.0 || z == 0.0 {
            return Err(Admissibility::ZeroOutOfRange(z).into());
        }
        if data.zeros[..i].contains(&z) {
            return Err(Admissibility::ZerosNotDistinct(z).into());
        }
    }
    if data.mus.len() != data.zeros.len() {
        return Err(Admissibility::LengthMismatch {
            zeros: data.zeros.len(),
            mus: data.mus.len(),
        }
        .into());
    }
    if let Some((index, &value)) = data
        .mus
        .iter()
        .enumerate()
        .find(|(_, &mu)| !(mu > 0.0 && mu.is_finite()))
    {
        return Err(Admissibility::NonPositiveMu {
            index: index + 1,
            value,
        }
        .into());
    }
    let unimodular_deviation = data.s.unimodular_deviation();
    if unimodular_deviation > ADMISSIBILITY_TOL {
        return Err(Admissibility::NotUnimodular(unimodular_deviation).into());
    }
    let reflection_deviation = data.s.reflection_deviation();
    if reflection_deviation > ADMISSIBILITY_TOL {
        return Err(Admissibility::NotReflectionSymmetric(reflection_deviation).into());
    }
    let index = circle::winding_number(&data.s)?;
    let expected = data.expected_index();
    if index != expected {
        return Err(Admissibility::IndexMismatch {
            expected,
            found: index,
        }
        .into());
    }
    let decomposition = scattering::decompose_index(&data.s, data.n()).map_err(|e| match e {
        Error::Class(r) => Error::from(Admissibility::Phase(format!(
            "not in B^1/2_2, tail ratio {r:e}"
        ))),
        Error::Inconsistent(msg) => Error::from(Admissibility::Phase(msg)),
        other => other,
    })?;
    if decomposition.gamma1 != data.gamma1 {
        return Err(Admissibility::Gamma1Mismatch {
            declared: data.gamma1,
            found: decomposition.gamma1,
        }
        .into());
    }
    Ok(AdmissibilityReport {
        n: data.n(),
        gamma1: data.gamma1,
        gamma2: data.gamma2,
        index,
        unimodular_deviation,
        reflection_deviation,
        omega_seminorm: circle::besov_seminorm(&decomposition.v),
        omega_tail_ratio: circle::besov_tail_ratio(&decomposition.v),
    })
}

/// Removes `(-1)^γ₁ t^{γ₁+γ₂} B²(t)` from `s` and returns `v₀` with the rest equal to `e^{-iv₀}`.
pub fn extract_v0(data: &ScatteringData) -> Result<CircleFunction> {
    let b = BlaschkeProduct::new(data.zeros.clone())?;
    let remainder = data
        .s
        .map(|t, s| s / (gamma_factor(data.gamma1, data.gamma2, t) * b.eval(t).powi(2)))?;
    let winding = circle::winding_number(&remainder)?;
    if winding != 0 {
        return Err(Error::Inconsistent(format!(
            "after removing the gamma factor and B^2 the winding number is {winding}"
        )));
    }
    Ok(circle::unwrap_phase(&remainder)?.scaled(-1.0))
}

/// Rebuilds the normalized spectral measure from admissible scattering data.
pub fn inverse(data: &ScatteringData) -> Result<SpectralMeasure> {
    validate_data(data)?;
    let v0 = extract_v0(data)?;
    // û₀(0) = 0 for now; the constant is fixed by the unit-mass condition below
    let u0 = circle::inverse_conjugate(&v0)?;
    let ac = SpectralMeasure::new(data.gamma1, data.gamma2, u0, Vec::new())?;
    let sigmas = spectral::mus_to_masses(&data.zeros, &data.mus, |z: Complex64| ac.outer_d(z))?;
    let masses = data
        .zeros
        .iter()
        .zip(sigmas)
        .map(|(&z, sigma)| MassPoint { z, sigma })
        .collect();
    let unnormalized =
        SpectralMeasure::new(data.gamma1, data.gamma2, ac.log_rho0().clone(), masses)?;
    // f scales with C and D with √C, so every σ_k scales with C too
    Ok(unnormalized.normalize())
}
