//! From a spectral measure back to Jacobi parameters: Szegő transform to the
//! circle, Verblunsky coefficients, Geronimus relations, and point-mass
//! insertion through Christoffel kernels.

use serde::{Deserialize, Serialize};

use crate::circle::CircleFunction;
use crate::error::{domain, Error, Result};
use crate::jacobi::JacobiParams;
use crate::spectral::SpectralMeasure;

/// `|α_n|` at or above `1 - DEGENERACY_TOL` is reported as a degenerate moment problem.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Symmetric measure `w(t) m(dt)` on the unit circle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircleMeasure {
    pub weight: CircleFunction,
    pub normalized: bool,
}

impl CircleMeasure {
    pub fn new(weight: CircleFunction) -> Result<Self> {
        if !weight.is_real() || !weight.is_symmetric() {
            return domain("circle weight must be real and symmetric under t -> conj t");
        }
        if let Some(w) = weight
            .real_samples()
            .into_iter()
            .find(|w| w.is_nan() || *w <= 0.0)
        {
            return domain(format!(
                "circle weight must be positive on the grid, found {w}"
            ));
        }
        let normalized = (weight.mean().re - 1.0).abs() < 1e-12;
        Ok(Self { weight, normalized })
    }

    pub fn normalize(&self) -> Self {
        Self {
            weight: self.weight.scaled(1.0 / self.weight.mean().re),
            normalized: true,
        }
    }

    /// Real trigonometric moments `c_m = ∫ t^{-m} w dm` for `m = 0..=count-1`.
    pub fn moments(&self, count: usize) -> Vec<f64> {
        (0..count).map(|m| self.weight.coeff(m as i64).re).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerblunskySeq {
    pub alphas: Vec<f64>,
}

impl VerblunskySeq {
    /// `α_n`, zero beyond the stored list.
    pub fn alpha(&self, n: usize) -> f64 {
        self.alphas.get(n).copied().unwrap_or(0.0)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,alpha_n\n");
        for (n, a) in self.alphas.iter().enumerate() {
            out.push_str(&format!("{n},{a:.17e}\n"));
        }
        out
    }
}

/// `Sz^(o)`: weight `c ρ̂(t)` on the circle, for `γ = (0, 0)` and no point masses.
///
/// With `γ = (0, 0)` the factor `√(4-x²)` equals `|1-t²|` on the circle, so
/// the quotient `f̂/|1-t²|` is `ρ̂/(2π)` without any division.
pub fn szego_transform_o(measure: &SpectralMeasure) -> Result<CircleMeasure> {
    if measure.gamma1() != 0 || measure.gamma2() != 0 {
        return domain(format!(
            "Sz^(o) needs gamma = (0, 0), got ({}, {})",
            measure.gamma1(),
            measure.gamma2()
        ));
    }
    if !measure.masses().is_empty() {
        return domain("Sz^(o) applies to absolutely continuous measures; strip the masses first");
    }
    let rho = measure.log_rho0().map(|_, u| u.re.exp().into())?;
    Ok(CircleMeasure::new(rho)?.normalize())
}

/// Verblunsky coefficients `α_0..=α_{n_max}` by the Szegő recursion on the
/// moments of `mu`, with `Φ_{n+1} = zΦ_n - ᾱ_n Φ_n^*`.
pub fn verblunsky(mu: &CircleMeasure, n_max: usize) -> Result<VerblunskySeq> {
    let len = mu.weight.len();
    if n_max + 2 > len / 2 {
        return Err(Error::Size(format!(
            "n_max = {n_max} needs moments beyond the {len}-point grid"
        )));
    }
    let c = mu.moments(n_max + 2);
    let mut phi = vec![1.0];
    let mut norm = c[0];
    let mut alphas = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        // ∫ z Φ_n dμ for a real symmetric weight
        let num: f64 = phi.iter().enumerate().map(|(k, p)| p * c[k + 1]).sum();
        let alpha = num / norm;
        if alpha.is_nan() || alpha.abs() >= 1.0 - DEGENERACY_TOL {
            return Err(Error::Degenerate {
                index: n,
                value: alpha.abs(),
            });
        }
        alphas.push(alpha);
        let mut next = vec![0.0; n + 2];
        for (k, p) in phi.iter().enumerate() {
            next[k + 1] += p;
            next[n - k] -= alpha * p;
        }
        phi = next;
        norm *= 1.0 - alpha * alpha;
    }
    Ok(VerblunskySeq { alphas })
}

/// Geronimus relations:
/// `b_{n+1} = α_{2n}(1-α_{2n+1}) - α_{2n+2}(1+α_{2n+1})`,
/// `a²_{n+1} = (1-α_{2n+3})(1-α²_{2n+2})(1+α_{2n+1})`.
pub fn geronimus(seq: &VerblunskySeq) -> Result<JacobiParams> {
    if let Some((n, a)) = seq
        .alphas
        .iter()
        .enumerate()
        .find(|(_, a)| a.is_nan() || a.abs() >= 1.0)
    {
        return Err(Error::Degenerate {
            index: n,
            value: a.abs(),
        });
    }
    let count = seq.alphas.len() / 2 + 1;
    let (mut a, mut b) = (Vec::with_capacity(count), Vec::with_capacity(count));
    for n in 0..count {
        let al = |k: usize| seq.alpha(k);
        b.push(al(2 * n) * (1.0 - al(2 * n + 1)) - al(2 * n + 2) * (1.0 + al(2 * n + 1)));
        let a2 = (1.0 - al(2 * n + 3)) * (1.0 - al(2 * n + 2).powi(2)) * (1.0 + al(2 * n + 1));
        a.push(a2.sqrt());
    }
    let mut p = JacobiParams::new(a, b)?;
    p.trim();
    Ok(p)
}

/// `ln|p_k(λ)|` and signs for `k = 0..=n`, with rescaling so that large
/// `|λ|` and long runs stay finite.
fn log_orthonormal(params: &JacobiParams, lambda: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut logs = Vec::with_capacity(n + 1);
    let mut signs = Vec::with_capacity(n + 1);
    let (mut prev, mut cur, mut scale) = (0.0_f64, 1.0_f64, 0.0_f64);
    logs.push(0.0);
    signs.push(1.0);
    for k in 1..=n {
        // a_k p_k = (λ - b_k) p_{k-1} - a_{k-1} p_{k-2}
        let next = ((lambda - params.b(k)) * cur - params.a(k - 1) * prev) / params.a(k);
        prev = cur;
        cur = next;
        let m = cur.abs().max(prev.abs());
        if m > 1e100 || (m < 1e-100 && m > 0.0) {
            prev /= m;
            cur /= m;
            scale += m.ln();
        }
        logs.push(cur.abs().ln() + scale);
        signs.push(cur.signum());
    }
    (logs, signs)
}

/// `ln(1 + e^x)` without overflow.
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// `ln(e^x + e^y)`.
fn log_add(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    if hi == f64::NEG_INFINITY {
        hi
    } else {
        hi + (lo - hi).exp().ln_1p()
    }
}

/// `ln K_m` for `m = 0..=n+1`, where `K_m = Σ_{k<m} p_k²`.
fn log_kernels(logs: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(logs.len() + 1);
    let mut acc = f64::NEG_INFINITY;
    out.push(acc);
    for l in logs {
        acc = log_add(acc, 2.0 * l);
        out.push(acc);
    }
    out
}

fn check_outside(lambda: f64) -> Result<()> {
    if lambda.abs() <= 2.0 || !lambda.is_finite() {
        return domain(format!("lambda = {lambda} must lie outside [-2, 2]"));
    }
    Ok(())
}

/// Christoffel kernel `K_n(λ) = Σ_{k=0}^{n-1} p_k(λ)²`, with `K_0 = 0`.
pub fn christoffel_kernel(params: &JacobiParams, lambda: f64, n: usize) -> Result<f64> {
    check_outside(lambda)?;
    if n == 0 {
        return Ok(0.0);
    }
    let (logs, _) = log_orthonormal(params, lambda, n - 1);
    Ok(log_kernels(&logs)[n].exp())
}

/// Parameters of `(σ₀ + ε δ_λ)/(1 + ε)` from those of `σ₀`, for `n = 1..=n_max`.
///
/// Beyond `n_max` the base tail is kept; the corrections decay like `z^{2n}`.
pub fn nevai_insert(
    params0: &JacobiParams,
    lambda: f64,
    epsilon: f64,
    n_max: usize,
) -> Result<JacobiParams> {
    check_outside(lambda)?;
    if epsilon == 0.0 {
        return Ok(params0.clone());
    }
    if epsilon < 0.0 || !epsilon.is_finite() {
        return domain(format!("mass ratio epsilon = {epsilon} must be positive"));
    }
    let n = n_max.max(params0.head_len() + 1);
    let (logs, signs) = log_orthonormal(params0, lambda, n);
    let log_k = log_kernels(&logs);
    let le = epsilon.ln();
    // ln(1 + εK_m)
    let damp: Vec<f64> = log_k.iter().map(|lk| softplus(le + lk)).collect();
    // V_m = ε p_{m-1} p_m / (1 + εK_m), V_0 = 0
    let v = |m: usize| -> f64 {
        if m == 0 {
            0.0
        } else {
            signs[m - 1] * signs[m] * (le + logs[m - 1] + logs[m] - damp[m]).exp()
        }
    };
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for m in 1..=n {
        let ratio = (damp[m - 1] + damp[m + 1] - 2.0 * damp[m]).exp();
        a.push(params0.a(m) * ratio.sqrt());
        b.push(params0.b(m) - params0.a(m - 1) * v(m - 1) + params0.a(m) * v(m));
    }
    let mut p = JacobiParams::new(a, b)?;
    p.trim();
    Ok(p)
}

/// Jacobi parameters of a spectral measure with `γ = (0, 0)`.
///
/// The absolutely continuous part goes through `Sz^(o)`, Verblunsky and
/// Geronimus; point masses are then inserted one at a time in order of
/// decreasing `|λ|`, each with `ε = σ_j / (mass inserted so far)`.
pub fn jacobi_from_spectral(measure: &SpectralMeasure, n_max: usize) -> Result<JacobiParams> {
    if measure.gamma1() != 0 || measure.gamma2() != 0 {
        return Err(Error::UnsupportedGamma(measure.gamma1(), measure.gamma2()));
    }
    let ac = measure.absolutely_continuous_part();
    let circle = szego_transform_o(&ac)?;
    let max_alpha = (2 * n_max + 3).min(circle.weight.len() / 2 - 2);
    let mut params = geronimus(&verblunsky(&circle, max_alpha)?)?;
    let mut masses = measure.masses().to_vec();
    masses.sort_by(|x, y| y.lambda().abs().total_cmp(&x.lambda().abs()));
    let mut total = ac.ac_mass();
    for m in masses {
        params = nevai_insert(&params, m.lambda(), m.sigma / total, n_max)?;
        total += m.sigma;
    }
    Ok(params)
}
