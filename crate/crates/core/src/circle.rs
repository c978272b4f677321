//! Fourier analysis on the unit circle.
//!
//! A [`CircleFunction`] is held both as samples on the uniform grid
//! `t_j = exp(2πij/M)`, `M = 2^grid_log2`, and as its discrete Fourier
//! coefficients `ĝ(n) = (1/M) Σ_j g(t_j) t_j^{-n}` for `|n| ≤ M/2 - 1`.
//! The Nyquist mode `n = M/2` has no sign and is projected out on
//! construction, so samples and coefficients agree to rounding.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub const DEFAULT_GRID_LOG2: u32 = 12;
pub const MIN_GRID_LOG2: u32 = 3;

/// Tolerance for the symmetry and realness flags, relative to the largest coefficient.
pub const FLAG_TOL: f64 = 1e-10;
/// Maximum deviation of `|s|` from 1 accepted as unimodular.
pub const UNIMODULAR_TOL: f64 = 1e-8;
/// Besov truncation test: tail energy above `M/4` must be below this fraction of the total.
pub const BESOV_TAIL_TOL: f64 = 1e-8;
const BESOV_NOISE_FLOOR: f64 = 1e-16;
/// Largest phase increment between adjacent samples before the grid is declared too coarse.
pub const MAX_PHASE_STEP: f64 = PI / 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    None,
    Symmetric,
    Antisymmetric,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "CircleFunctionRepr", into = "CircleFunctionRepr")]
pub struct CircleFunction {
    grid_log2: u32,
    samples: Vec<Complex64>,
    /// FFT ordering: index `k < M/2` holds `n = k`, index `k > M/2` holds `n = k - M`.
    coeffs: Vec<Complex64>,
    real_valued: bool,
    symmetric: bool,
    antisymmetric: bool,
}

#[derive(Serialize, Deserialize)]
struct CircleFunctionRepr {
    grid_log2: u32,
    samples: Vec<[f64; 2]>,
}

impl TryFrom<CircleFunctionRepr> for CircleFunction {
    type Error = Error;

    fn try_from(repr: CircleFunctionRepr) -> Result<Self> {
        let samples = repr
            .samples
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        CircleFunction::analyze(samples, repr.grid_log2)
    }
}

impl From<CircleFunction> for CircleFunctionRepr {
    fn from(f: CircleFunction) -> Self {
        CircleFunctionRepr {
            grid_log2: f.grid_log2,
            samples: f.samples.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl fmt::Debug for CircleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CircleFunction")
            .field("grid_log2", &self.grid_log2)
            .field("symmetry", &self.symmetry())
            .field("real_valued", &self.real_valued)
            .field("mean", &self.mean())
            .finish_non_exhaustive()
    }
}

fn fft_in_place(buf: &mut [Complex64], inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse {
        planner.plan_fft_inverse(buf.len())
    } else {
        planner.plan_fft_forward(buf.len())
    };
    fft.process(buf);
}

/// Grid points `t_j = exp(2πij/M)`.
pub fn grid_points(grid_log2: u32) -> Vec<Complex64> {
    let m = 1usize << grid_log2;
    (0..m)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64))
        .collect()
}

impl CircleFunction {
    /// Builds a circle function from grid samples.
    pub fn analyze(mut samples: Vec<Complex64>, grid_log2: u32) -> Result<Self> {
        if !(MIN_GRID_LOG2..=24).contains(&grid_log2) {
            return Err(Error::Size(format!(
                "grid_log2 must be in [{MIN_GRID_LOG2}, 24], got {grid_log2}"
            )));
        }
        let m = 1usize << grid_log2;
        if samples.len() != m {
            return Err(Error::Size(format!(
                "expected {m} samples for grid_log2 = {grid_log2}, got {}",
                samples.len()
            )));
        }
        if samples
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return domain("samples must be finite");
        }
        let mut coeffs = samples.clone();
        fft_in_place(&mut coeffs, false);
        let inv_m = 1.0 / m as f64;
        coeffs.iter_mut().for_each(|c| *c *= inv_m);

        let nyquist = coeffs[m / 2];
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if nyquist.norm() > 1e-14 * scale {
            for (j, s) in samples.iter_mut().enumerate() {
                if j % 2 == 0 {
                    *s -= nyquist;
                } else {
                    *s += nyquist;
                }
            }
        }
        coeffs[m / 2] = Complex64::new(0.0, 0.0);
        Ok(Self::with_flags(grid_log2, samples, coeffs))
    }

    /// Builds a circle function from Fourier coefficients `(n, ĝ(n))`; modes with `|n| ≥ M/2` are dropped.
    pub fn from_coeffs(
        grid_log2: u32,
        modes: impl IntoIterator<Item = (i64, Complex64)>,
    ) -> Result<Self> {
        if !(MIN_GRID_LOG2..=24).contains(&grid_log2) {
            return Err(Error::Size(format!("grid_log2 {grid_log2} out of range")));
        }
        let m = 1usize << grid_log2;
        let half = (m / 2) as i64;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
        for (n, c) in modes {
            if n.abs() < half {
                coeffs[n.rem_euclid(m as i64) as usize] += c;
            }
        }
        let mut samples = coeffs.clone();
        fft_in_place(&mut samples, true);
        Ok(Self::with_flags(grid_log2, samples, coeffs))
    }

    /// Samples `f` at the grid points.
    pub fn from_fn(grid_log2: u32, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        if !(MIN_GRID_LOG2..=24).contains(&grid_log2) {
            return Err(Error::Size(format!("grid_log2 {grid_log2} out of range")));
        }
        Self::analyze(
            grid_points(grid_log2).into_iter().map(f).collect(),
            grid_log2,
        )
    }

    /// Samples a real function of the angle `θ` at `θ_j = 2πj/M`.
    pub fn from_real_fn(grid_log2: u32, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(grid_log2, |t| Complex64::new(f(t.arg()), 0.0))
    }

    pub fn constant(grid_log2: u32, value: f64) -> Result<Self> {
        Self::from_coeffs(grid_log2, [(0, Complex64::new(value, 0.0))])
    }

    fn with_flags(grid_log2: u32, samples: Vec<Complex64>, coeffs: Vec<Complex64>) -> Self {
        let m = coeffs.len();
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let tol = FLAG_TOL * scale.max(1.0);
        let mut real_valued = true;
        let mut symmetric = true;
        let mut antisymmetric = true;
        for k in 0..m / 2 {
            let pos = coeffs[k];
            let neg = coeffs[(m - k) % m];
            real_valued &= (neg - pos.conj()).norm() <= tol;
            symmetric &= (neg - pos).norm() <= tol;
            antisymmetric &= (neg + pos).norm() <= tol;
        }
        Self {
            grid_log2,
            samples,
            coeffs,
            real_valued,
            symmetric,
            antisymmetric,
        }
    }

    pub fn grid_log2(&self) -> u32 {
        self.grid_log2
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Largest representable mode, `M/2 - 1`.
    pub fn max_mode(&self) -> i64 {
        (self.len() / 2) as i64 - 1
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn real_samples(&self) -> Vec<f64> {
        self.samples.iter().map(|c| c.re).collect()
    }

    /// Fourier coefficient `ĝ(n)`; zero outside `|n| ≤ M/2 - 1`.
    pub fn coeff(&self, n: i64) -> Complex64 {
        if n.abs() > self.max_mode() {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[n.rem_euclid(self.len() as i64) as usize]
    }

    /// All modes `(n, ĝ(n))` for `|n| ≤ M/2 - 1`, in increasing `n`.
    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let top = self.max_mode();
        (-top..=top).map(move |n| (n, self.coeff(n)))
    }

    pub fn mean(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn is_real(&self) -> bool {
        self.real_valued
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetric
    }

    /// Symmetry flag; the zero function reports `Symmetric`.
    pub fn symmetry(&self) -> Symmetry {
        if self.symmetric {
            Symmetry::Symmetric
        } else if self.antisymmetric {
            Symmetry::Antisymmetric
        } else {
            Symmetry::None
        }
    }

    /// Evaluates the Fourier series at a point `t` (normally on the circle).
    pub fn eval(&self, t: Complex64) -> Complex64 {
        let top = self.max_mode();
        let mut pos = Complex64::new(0.0, 0.0);
        for n in (1..=top).rev() {
            pos = (pos + self.coeff(n)) * t;
        }
        let inv = t.inv();
        let mut neg = Complex64::new(0.0, 0.0);
        for n in (1..=top).rev() {
            neg = (neg + self.coeff(-n)) * inv;
        }
        self.coeff(0) + pos + neg
    }

    /// Evaluates at `t = e^{iθ}`.
    pub fn eval_angle(&self, theta: f64) -> Complex64 {
        self.eval(Complex64::from_polar(1.0, theta))
    }

    /// Applies `f` to every sample (grid point, value) and re-analyzes.
    pub fn map(&self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        let pts = grid_points(self.grid_log2);
        let samples = pts
            .iter()
            .zip(&self.samples)
            .map(|(&t, &g)| f(t, g))
            .collect();
        Self::analyze(samples, self.grid_log2)
    }

    /// Pointwise product of two functions on the same grid.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_grid(other)?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a * b)
            .collect();
        Self::analyze(samples, self.grid_log2)
    }

    /// Adds a real constant (shifts `ĝ(0)`).
    pub fn shifted(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.samples.iter_mut().for_each(|s| s.re += c);
        out.coeffs[0].re += c;
        Self::with_flags(out.grid_log2, out.samples, out.coeffs)
    }

    pub fn scaled(&self, c: f64) -> Self {
        let samples = self.samples.iter().map(|s| s * c).collect();
        let coeffs = self.coeffs.iter().map(|s| s * c).collect();
        Self::with_flags(self.grid_log2, samples, coeffs)
    }

    /// Maximum absolute sample difference.
    pub fn max_deviation(&self, other: &Self) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Maximum of `| |g(t_j)| - 1 |` over the grid.
    pub fn unimodular_deviation(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| (s.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Maximum of `|g(conj t) - conj g(t)|` over the grid.
    pub fn reflection_deviation(&self) -> f64 {
        let m = self.len();
        (0..m)
            .map(|j| (self.samples[(m - j) % m] - self.samples[j].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Re-samples onto a grid of a different size through the coefficients.
    pub fn resample(&self, grid_log2: u32) -> Result<Self> {
        Self::from_coeffs(grid_log2, self.modes())
    }

    fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid_log2 != other.grid_log2 {
            return Err(Error::Size(format!(
                "grid mismatch: 2^{} vs 2^{}",
                self.grid_log2, other.grid_log2
            )));
        }
        Ok(())
    }
}

/// `sqrt(Σ |n| |ĝ(n)|²)`, the `B^{1/2}_2` seminorm.
pub fn besov_seminorm(f: &CircleFunction) -> f64 {
    f.modes()
        .map(|(n, c)| n.unsigned_abs() as f64 * c.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Fraction of the seminorm energy carried by modes `|n| > M/4`.
pub fn besov_tail_ratio(f: &CircleFunction) -> f64 {
    let cut = (f.len() / 4) as i64;
    let (mut tail, mut total) = (0.0, 0.0);
    for (n, c) in f.modes() {
        let e = n.unsigned_abs() as f64 * c.norm_sqr();
        total += e;
        if n.abs() > cut {
            tail += e;
        }
    }
    // absolute floor so that a phase made of rounding noise counts as resolved
    tail / total.max(BESOV_NOISE_FLOOR)
}

/// Truncation criterion for membership in `B^{1/2}_2` on a finite grid.
pub fn is_besov_admissible(f: &CircleFunction) -> bool {
    besov_tail_ratio(f) < BESOV_TAIL_TOL
}

/// Harmonic conjugate: `v̂(n) = -i sgn(n) û(n)`.
pub fn conjugate(u: &CircleFunction) -> Result<CircleFunction> {
    if !u.is_real() {
        return domain("harmonic conjugate needs a real-valued function");
    }
    let i = Complex64::new(0.0, 1.0);
    CircleFunction::from_coeffs(
        u.grid_log2(),
        u.modes()
            .filter(|&(n, _)| n != 0)
            .map(|(n, c)| (n, -i * n.signum() as f64 * c)),
    )
}

/// Inverse of [`conjugate`] on mean-zero functions: `û(n) = i sgn(n) v̂(n)`, `û(0) = 0`.
///
/// The additive constant is left to the caller.
pub fn inverse_conjugate(v: &CircleFunction) -> Result<CircleFunction> {
    if !v.is_real() {
        return domain("inverse conjugate needs a real-valued function");
    }
    if !v.is_antisymmetric() {
        return domain("inverse conjugate needs an antisymmetric function");
    }
    let scale = v
        .modes()
        .map(|(_, c)| c.norm())
        .fold(0.0, f64::max)
        .max(1.0);
    if v.mean().norm() > FLAG_TOL * scale {
        return domain(format!("mean of v must vanish, got {}", v.mean().re));
    }
    let i = Complex64::new(0.0, 1.0);
    CircleFunction::from_coeffs(
        v.grid_log2(),
        v.modes()
            .filter(|&(n, _)| n != 0)
            .map(|(n, c)| (n, i * n.signum() as f64 * c)),
    )
}

/// `exp{ ½ ∫ (t+z)/(t-z) h(t) m(dt) }` for `|z| < 1`, with the Herglotz integral
/// taken from the coefficients: `ĥ(0) + 2 Σ_{n≥1} ĥ(n) zⁿ`.
pub fn herglotz_outer_eval(log_modulus: &CircleFunction, z: Complex64) -> Result<Complex64> {
    if !log_modulus.is_real() {
        return domain("log-modulus must be real-valued");
    }
    if z.norm() >= 1.0 {
        return domain(format!(
            "outer function evaluated at |z| = {} >= 1",
            z.norm()
        ));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for n in (1..=log_modulus.max_mode()).rev() {
        acc = (acc + log_modulus.coeff(n)) * z;
    }
    Ok((0.5 * (log_modulus.coeff(0) + 2.0 * acc)).exp())
}

/// Boundary values `exp((h + i h̃)/2)` of the outer function with log-modulus `h`.
pub fn outer_boundary(log_modulus: &CircleFunction) -> Result<CircleFunction> {
    let v = conjugate(log_modulus)?;
    let samples = log_modulus
        .samples()
        .iter()
        .zip(v.samples())
        .map(|(u, v)| (0.5 * Complex64::new(u.re, v.re)).exp())
        .collect();
    CircleFunction::analyze(samples, log_modulus.grid_log2())
}

fn phase_increments(s: &CircleFunction) -> Result<Vec<f64>> {
    let dev = s.unimodular_deviation();
    if dev > UNIMODULAR_TOL {
        return domain(format!(
            "function is not unimodular (max ||s|-1| = {dev:e})"
        ));
    }
    let samples = s.samples();
    let m = samples.len();
    (0..m)
        .map(|j| {
            let inc = (samples[(j + 1) % m] * samples[j].conj()).arg();
            if inc.abs() >= MAX_PHASE_STEP {
                Err(Error::Resolution {
                    index: j,
                    increment: inc,
                })
            } else {
                Ok(inc)
            }
        })
        .collect()
}

/// Winding number of a unimodular function around the origin.
pub fn winding_number(s: &CircleFunction) -> Result<i64> {
    let total: f64 = phase_increments(s)?.iter().sum();
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Continuous phase `φ` with `s = exp(iφ)` on the grid; mean of `φ` in `(-π, π]`.
pub fn unwrap_phase(s: &CircleFunction) -> Result<CircleFunction> {
    let incs = phase_increments(s)?;
    let total: f64 = incs.iter().sum();
    let winding = (total / (2.0 * PI)).round() as i64;
    if winding != 0 {
        return domain(format!("cannot unwrap phase with winding number {winding}"));
    }
    let m = incs.len();
    let mut phase = Vec::with_capacity(m);
    let mut acc = s.samples()[0].arg();
    for inc in incs.iter().take(m) {
        phase.push(acc);
        acc += inc;
    }
    let mean = phase.iter().sum::<f64>() / m as f64;
    // shift by a multiple of 2π so the mean lands in (-π, π]
    let k = ((PI - mean) / (2.0 * PI)).floor();
    let shift = 2.0 * PI * k;
    CircleFunction::analyze(
        phase
            .into_iter()
            .map(|p| Complex64::new(p + shift, 0.0))
            .collect(),
        s.grid_log2(),
    )
}
