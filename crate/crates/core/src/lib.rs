//! Direct and inverse scattering for Jacobi matrices in Ryckman's class.
//!
//! The forward map takes a spectral measure (an absolutely continuous part
//! on `[-2, 2]` with `log ρ₀ ∈ B^{1/2}_2` plus finitely many mass points) to
//! its scattering data `{γ₁, γ₂; Z; μ_k; s}`. The inverse map rebuilds the
//! normalized measure from admissible data, and the reconstruction module
//! turns a measure back into Jacobi parameters.

pub mod circle;
pub mod closed_form;
pub mod error;
pub mod inverse;
pub mod jacobi;
pub mod reconstruct;
pub mod scattering;
pub mod spectral;

pub use error::{Admissibility, Error, Result};
