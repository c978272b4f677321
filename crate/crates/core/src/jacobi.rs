//! Jacobi matrices, their three-term recurrence and the distinguished solutions.
//!
//! Indices follow the matrix: `a_n`, `b_n` for `n ≥ 1`, `a_0 = 1`, and the
//! recurrence `a_{n-1} y_{n-1} + b_n y_n + a_n y_{n+1} = (z + 1/z) y_n`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::spectral::SpectralMeasure;

pub const DEFAULT_N_MAX: usize = 256;
/// Below this size `|a_n - 1| + |b_n|` a generator tail is treated as free.
pub const FREE_TAIL_TOL: f64 = 1e-14;
/// Relative residual accepted for a computed solution of the recurrence.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// Closed-form rule `n ↦ (a_n, b_n)` for the indices beyond the stored head.
pub type TailRule = Arc<dyn Fn(usize) -> (f64, f64) + Send + Sync>;

#[derive(Clone)]
pub enum Tail {
    Free,
    Generator(TailRule),
}

impl fmt::Debug for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tail::Free => f.write_str("Free"),
            Tail::Generator(_) => f.write_str("Generator(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct JacobiParams {
    a: Vec<f64>,
    b: Vec<f64>,
    tail: Tail,
}

#[derive(Serialize, Deserialize)]
struct ParamsRepr {
    a: Vec<f64>,
    b: Vec<f64>,
    #[serde(default = "free_tag")]
    tail: String,
}

fn free_tag() -> String {
    "free".to_owned()
}

impl Serialize for JacobiParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !matches!(self.tail, Tail::Free) {
            return Err(serde::ser::Error::custom(
                "generator tails have no JSON form; materialize the head first",
            ));
        }
        ParamsRepr {
            a: self.a.clone(),
            b: self.b.clone(),
            tail: free_tag(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for JacobiParams {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ParamsRepr::deserialize(d)?;
        if r.tail != "free" {
            return Err(serde::de::Error::custom(format!(
                "unsupported tail {:?}, only \"free\" is accepted",
                r.tail
            )));
        }
        JacobiParams::new(r.a, r.b).map_err(serde::de::Error::custom)
    }
}

impl JacobiParams {
    /// Finite head with a free tail; the shorter head is padded with free values.
    pub fn new(mut a: Vec<f64>, mut b: Vec<f64>) -> Result<Self> {
        let len = a.len().max(b.len());
        a.resize(len, 1.0);
        b.resize(len, 0.0);
        if let Some((i, v)) = a
            .iter()
            .enumerate()
            .find(|(_, v)| **v <= 0.0 || !v.is_finite())
        {
            return domain(format!("a_{} = {v} must be positive", i + 1));
        }
        if let Some((i, v)) = b.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return domain(format!("b_{} = {v} must be finite", i + 1));
        }
        Ok(Self {
            a,
            b,
            tail: Tail::Free,
        })
    }

    pub fn free() -> Self {
        Self {
            a: Vec::new(),
            b: Vec::new(),
            tail: Tail::Free,
        }
    }

    /// Parameters given entirely (or beyond a head) by a closed-form rule.
    pub fn with_generator(a: Vec<f64>, b: Vec<f64>, rule: TailRule) -> Result<Self> {
        let mut p = Self::new(a, b)?;
        p.tail = Tail::Generator(rule);
        Ok(p)
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn head_len(&self) -> usize {
        self.a.len()
    }

    /// `a_n` for `n ≥ 1`; `a_0 = 1`.
    pub fn a(&self, n: usize) -> f64 {
        if n == 0 {
            return 1.0;
        }
        match (self.a.get(n - 1), &self.tail) {
            (Some(&v), _) => v,
            (None, Tail::Free) => 1.0,
            (None, Tail::Generator(rule)) => rule(n).0,
        }
    }

    /// `b_n` for `n ≥ 1`.
    pub fn b(&self, n: usize) -> f64 {
        assert!(n >= 1, "b is indexed from 1");
        match (self.b.get(n - 1), &self.tail) {
            (Some(&v), _) => v,
            (None, Tail::Free) => 0.0,
            (None, Tail::Generator(rule)) => rule(n).1,
        }
    }

    fn deviation(&self, n: usize) -> f64 {
        (self.a(n) - 1.0).abs() + self.b(n).abs()
    }

    /// Head of length `n` with a free tail.
    pub fn materialize(&self, n: usize) -> Self {
        let (a, b) = (1..=n).map(|k| (self.a(k), self.b(k))).unzip();
        let mut p = Self {
            a,
            b,
            tail: Tail::Free,
        };
        p.trim();
        p
    }

    /// Drops trailing entries equal to the free values.
    pub fn trim(&mut self) {
        while let (Some(&a), Some(&b)) = (self.a.last(), self.b.last()) {
            if a == 1.0 && b == 0.0 {
                self.a.pop();
                self.b.pop();
            } else {
                break;
            }
        }
    }

    /// Index `n₀` beyond which the parameters are treated as free, plus the
    /// size of what was discarded.
    pub fn free_index(&self, n_max: usize) -> Result<(usize, f64)> {
        match self.tail {
            Tail::Free => {
                let n0 = (1..=self.a.len())
                    .rev()
                    .find(|&n| self.deviation(n) != 0.0)
                    .unwrap_or(0);
                Ok((n0, 0.0))
            }
            Tail::Generator(_) => {
                let top = n_max.max(self.a.len() + 2);
                let mut n0 = top;
                let mut discarded = 0.0;
                while n0 > 0 {
                    let d = self.deviation(n0);
                    if d >= FREE_TAIL_TOL {
                        break;
                    }
                    discarded += d;
                    n0 -= 1;
                }
                if n0 + 2 > top {
                    return Err(Error::Truncation {
                        n_max: top,
                        tail_bound: self.deviation(top),
                    });
                }
                Ok((n0, discarded))
            }
        }
    }

    /// CSV rows `n,a_n,b_n` for `n = 1..=n_max`.
    pub fn to_csv(&self, n_max: usize) -> String {
        let mut out = String::from("n,a_n,b_n\n");
        for n in 1..=n_max {
            out.push_str(&format!("{n},{:.17e},{:.17e}\n", self.a(n), self.b(n)));
        }
        out
    }
}

/// Tail sums `ξ_n = -Σ_{k>n} b_k`, `η_n = -Σ_{k>n} (a_k - 1)` and their `ℓ²₁` norms.
#[derive(Debug, Clone)]
pub struct RyckmanTails {
    pub xi: Vec<f64>,
    pub eta: Vec<f64>,
    /// `Σ_{n ≤ n_max} n ξ_n²`
    pub xi_norm: f64,
    /// `Σ_{n ≤ n_max} n η_n²`
    pub eta_norm: f64,
    /// Size of the first omitted term at the summation cutoff; bounds the
    /// remainder of an alternating tail.
    pub tail_bound: f64,
}

/// Summation cutoff used for generator tails.
fn tail_cutoff(n_max: usize) -> usize {
    (16 * n_max).max(1 << 17)
}

pub fn ryckman_tails(params: &JacobiParams, n_max: usize) -> Result<RyckmanTails> {
    let (cutoff, tail_bound) = match params.tail {
        Tail::Free => (params.head_len().max(n_max), 0.0),
        Tail::Generator(_) => {
            let l = tail_cutoff(n_max);
            for (name, term) in [
                ("b", &(|k| params.b(k)) as &dyn Fn(usize) -> f64),
                ("a - 1", &|k| params.a(k) - 1.0),
            ] {
                let block = |lo: usize, hi: usize| (lo + 1..=hi).map(term).sum::<f64>();
                let (t1, t2) = (block(l / 4, l / 2), block(l / 2, l));
                if t2.abs() > 1e-6 && t2.abs() >= 0.9 * t1.abs() {
                    return domain(format!(
                        "series of {name} does not appear summable: block sums {t1:e}, {t2:e} at cutoff {l}"
                    ));
                }
            }
            (l, params.deviation(l + 1))
        }
    };
    // backward accumulation; half the next term as the tail estimate (exact
    // midpoint for alternating tails)
    let (mut xi_acc, mut eta_acc) = match params.tail {
        Tail::Free => (0.0, 0.0),
        Tail::Generator(_) => (
            -0.5 * params.b(cutoff + 1),
            -0.5 * (params.a(cutoff + 1) - 1.0),
        ),
    };
    let mut xi = vec![0.0; n_max + 1];
    let mut eta = vec![0.0; n_max + 1];
    for n in (0..cutoff).rev() {
        xi_acc -= params.b(n + 1);
        eta_acc -= params.a(n + 1) - 1.0;
        if n <= n_max {
            xi[n] = xi_acc;
            eta[n] = eta_acc;
        }
    }
    let xi_norm = xi.iter().enumerate().map(|(n, x)| n as f64 * x * x).sum();
    let eta_norm = eta.iter().enumerate().map(|(n, x)| n as f64 * x * x).sum();
    Ok(RyckmanTails {
        xi,
        eta,
        xi_norm,
        eta_norm,
        tail_bound,
    })
}

/// First moment `Σ n (|a_n - 1| + |b_n|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstMoment {
    pub partial_sum: f64,
    /// Set when the block sums of the terms do not decay (generator tails only).
    pub divergent: bool,
}

pub fn guseinov_moment(params: &JacobiParams, n_max: usize) -> FirstMoment {
    let term = |n: usize| n as f64 * params.deviation(n);
    let partial_sum = (1..=n_max).map(term).sum();
    let divergent = match params.tail {
        Tail::Free => false,
        Tail::Generator(_) => {
            let b0: f64 = (n_max / 4 + 1..=n_max / 2).map(term).sum();
            let b1: f64 = (n_max / 2 + 1..=n_max).map(term).sum();
            b1 > 1e-12 && b1 > 0.75 * b0
        }
    };
    FirstMoment {
        partial_sum,
        divergent,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolutionKind {
    Sine,
    Jost,
}

#[derive(Debug, Clone)]
pub struct SolutionSequence {
    /// `y_0, ..., y_{n_max}`
    pub values: Vec<Complex64>,
    pub z: Complex64,
    pub kind: SolutionKind,
    /// Discarded generator tail when the Jost solution was seeded (0 for free tails).
    pub tail_residual: f64,
}

impl SolutionSequence {
    /// Largest relative residual of the recurrence over interior indices.
    pub fn recurrence_residual(&self, params: &JacobiParams) -> f64 {
        let lambda = self.z + self.z.inv();
        let y = &self.values;
        (1..y.len().saturating_sub(1))
            .map(|n| {
                let terms = [
                    params.a(n - 1) * y[n - 1],
                    params.b(n) * y[n],
                    params.a(n) * y[n + 1],
                    -lambda * y[n],
                ];
                let sum: Complex64 = terms.iter().sum();
                let scale: f64 = terms.iter().map(|t| t.norm()).sum();
                if scale == 0.0 {
                    0.0
                } else {
                    sum.norm() / scale
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Sine-type solution `s_0 = 0`, `s_1 = 1`; `s_{n+1}(z) = p_n(z + 1/z)`.
pub fn sine_solution(
    params: &JacobiParams,
    z: Complex64,
    n_max: usize,
) -> Result<SolutionSequence> {
    if z.norm() == 0.0 {
        return domain("sine solution needs z != 0");
    }
    let lambda = z + z.inv();
    let mut s = Vec::with_capacity(n_max + 1);
    s.push(Complex64::new(0.0, 0.0));
    if n_max >= 1 {
        s.push(Complex64::new(1.0, 0.0));
    }
    for n in 1..n_max {
        let next = ((lambda - params.b(n)) * s[n] - params.a(n - 1) * s[n - 1]) / params.a(n);
        s.push(next);
    }
    Ok(SolutionSequence {
        values: s,
        z,
        kind: SolutionKind::Sine,
        tail_residual: 0.0,
    })
}

/// Jost solution with `z^{-n} φ_n → 1`, by backward recursion from the free region.
///
/// The returned sequence covers at least `0..=n_max`, longer when the free
/// region starts later.
pub fn jost_solution(
    params: &JacobiParams,
    z: Complex64,
    n_max: usize,
) -> Result<SolutionSequence> {
    let r = z.norm();
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("Jost solution needs 0 < |z| < 1, got |z| = {r}"));
    }
    let (n0, discarded) = params.free_index(n_max)?;
    let lambda = z + z.inv();
    let top = n_max.max(n0 + 1);
    let mut phi = vec![Complex64::new(0.0, 0.0); top + 2];
    for (n, p) in phi.iter_mut().enumerate().skip(n0 + 1) {
        *p = z.powu(n as u32);
    }
    for n in (1..=n0 + 1).rev() {
        phi[n - 1] = ((lambda - params.b(n)) * phi[n] - params.a(n) * phi[n + 1]) / params.a(n - 1);
    }
    phi.truncate(top + 1);
    Ok(SolutionSequence {
        values: phi,
        z,
        kind: SolutionKind::Jost,
        tail_residual: discarded,
    })
}

/// Discrete Wronskian `a_n (φ_n s_{n+1} - φ_{n+1} s_n)` for every available `n`.
pub fn wronskian(
    params: &JacobiParams,
    phi: &SolutionSequence,
    s: &SolutionSequence,
) -> Vec<Complex64> {
    let len = phi.values.len().min(s.values.len());
    (0..len.saturating_sub(1))
        .map(|n| params.a(n) * (phi.values[n] * s.values[n + 1] - phi.values[n + 1] * s.values[n]))
        .collect()
}

/// Guseinov normalizing constant `m_k = Σ_{n≥1} |φ_n(z_k)|²` at an eigenvalue parameter.
pub fn guseinov_constant(params: &JacobiParams, zk: f64, n_max: usize) -> Result<f64> {
    if zk.is_nan() || zk.abs() >= 1.0 || zk == 0.0 {
        return domain(format!("z_k = {zk} is not in (-1, 1) \\ {{0}}"));
    }
    let z = Complex64::new(zk, 0.0);
    let phi = jost_solution(params, z, n_max)?;
    let phi0 = phi.values[0].norm();
    let radius = 0.01_f64.min(0.5 * (1.0 - zk.abs())).min(0.5 * zk.abs());
    let mut ring_max: f64 = 0.0;
    for j in 0..16 {
        let w = z + Complex64::from_polar(radius, std::f64::consts::TAU * j as f64 / 16.0);
        ring_max = ring_max.max(jost_solution(params, w, n_max)?.values[0].norm());
    }
    if phi0 >= 1e-7 * (1.0 + ring_max) {
        return domain(format!(
            "z = {zk} is not an eigenvalue parameter: |phi_0| = {phi0:e}"
        ));
    }
    let top = phi.values.len() - 1;
    let head: f64 = phi.values[1..].iter().map(|p| p.norm_sqr()).sum();
    let tail = zk.abs().powi(2 * top as i32 + 2) / (1.0 - zk * zk);
    Ok(head + tail)
}

/// Weyl function `M(z) = ((z + 1/z - J)^{-1} e_1, e_1)` by the finite continued
/// fraction that ends in the free Weyl function `z`.
pub fn weyl_function(params: &JacobiParams, z: Complex64, n_max: usize) -> Result<Complex64> {
    let r = z.norm();
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("Weyl function needs 0 < |z| < 1, got |z| = {r}"));
    }
    let (n0, _) = params.free_index(n_max)?;
    let lambda = z + z.inv();
    let mut m = z;
    for k in (1..=n0).rev() {
        let a = params.a(k);
        let den = lambda - params.b(k) - a * a * m;
        if den.norm() <= 1e-14 * (lambda.norm() + 1.0) {
            return Err(Error::Pole {
                z,
                residue: pole_residue(params, z, n_max)?,
            });
        }
        m = den.inv();
    }
    Ok(m)
}

/// `φ_1(z)/φ_0'(z)`, the residue of `M` at a zero of the Jost function.
fn pole_residue(params: &JacobiParams, z: Complex64, n_max: usize) -> Result<Complex64> {
    let h = 1e-6;
    let plus = jost_solution(params, z + h, n_max)?.values[0];
    let minus = jost_solution(params, z - h, n_max)?.values[0];
    let phi1 = jost_solution(params, z, n_max)?.values[1];
    Ok(phi1 / ((plus - minus) / (2.0 * h)))
}

#[derive(Debug, Clone, Copy)]
pub struct SzegoCheck {
    /// `z^n p_n(z + 1/z)`, or the leading coefficient of `p_n` at `z = 0`
    pub computed: Complex64,
    /// `B(z)/((1 - z²) D(z))`
    pub predicted: Complex64,
    pub gap: f64,
}

/// Compares `z^n p_n(z + 1/z)` at `n = n_max` with its limit computed from the measure.
pub fn szego_limit_check(
    params: &JacobiParams,
    measure: &SpectralMeasure,
    z: Complex64,
    n_max: usize,
) -> Result<SzegoCheck> {
    if z.norm() >= 1.0 {
        return domain(format!("Szego limit needs |z| < 1, got |z| = {}", z.norm()));
    }
    let computed = if z.norm() == 0.0 {
        let kappa: f64 = (1..=n_max).map(|k| params.a(k)).product::<f64>().recip();
        Complex64::new(kappa, 0.0)
    } else {
        let s = sine_solution(params, z, n_max + 1)?;
        z.powu(n_max as u32) * s.values[n_max + 1]
    };
    let predicted = measure.jost_function(z)? / (1.0 - z * z);
    Ok(SzegoCheck {
        computed,
        predicted,
        gap: (computed - predicted).norm(),
    })
}
