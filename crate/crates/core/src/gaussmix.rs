//! Differential entropy and mutual information of zero-mean Gaussian mixtures.
//!
//! Every received signal in the superposition schemes is, conditioned on the
//! first-layer symbol, a zero-mean Gaussian. Unconditionally it is a mixture
//! `Σ δᵢ N(0, σᵢ²)`, and the mutual informations that bound the rates are
//! differences between the mixture entropy and the component entropies.
//!
//! Two routes are provided: [`entropy_quadrature`] integrates `−f log₂ f`
//! numerically, [`entropy_taylor`] is the first-order expansion around a
//! dominant component, valid when the remaining weights are small.

use std::f64::consts::{LN_2, PI};

use crate::error::{RelayError, Result};
use crate::quad::adaptive_simpson;

/// Relative tolerance used when callers do not ask for one.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Integration half-width in units of the widest component's standard deviation.
const TRUNCATION_SIGMAS: f64 = 10.0;
const INITIAL_PANELS: usize = 64;
const MAX_DEPTH: u32 = 40;

/// A weighted mixture of zero-mean Gaussians.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMixture {
    weights: Vec<f64>,
    variances: Vec<f64>,
}

impl GaussianMixture {
    pub fn new(weights: Vec<f64>, variances: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.len() != variances.len() {
            return Err(RelayError::domain(format!(
                "mixture needs matching non-empty weights ({}) and variances ({})",
                weights.len(),
                variances.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(RelayError::domain("mixture weights must be finite and non-negative"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(RelayError::domain(format!("mixture weights sum to {total}, not 1")));
        }
        if variances.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(RelayError::domain("mixture variances must be finite and positive"));
        }
        Ok(GaussianMixture { weights, variances })
    }

    /// A single Gaussian.
    pub fn gaussian(variance: f64) -> Result<Self> {
        Self::new(vec![1.0], vec![variance])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn variances(&self) -> &[f64] {
        &self.variances
    }

    /// `Σ δᵢ σᵢ²`.
    pub fn variance(&self) -> f64 {
        self.weights.iter().zip(&self.variances).map(|(w, v)| w * v).sum()
    }

    /// Natural log of the density at `y`, evaluated with log-sum-exp so the
    /// far tails do not underflow to `ln 0`.
    pub fn ln_density(&self, y: f64) -> f64 {
        let mut terms = self
            .weights
            .iter()
            .zip(&self.variances)
            .filter(|(w, _)| **w > 0.0)
            .map(|(w, v)| w.ln() - 0.5 * (2.0 * PI * v).ln() - y * y / (2.0 * v));
        let first = terms.next().unwrap_or(f64::NEG_INFINITY);
        let rest: Vec<f64> = terms.collect();
        let max = rest.iter().copied().fold(first, f64::max);
        if max == f64::NEG_INFINITY {
            return max;
        }
        let sum: f64 = std::iter::once(first).chain(rest).map(|t| (t - max).exp()).sum();
        max + sum.ln()
    }

    pub fn density(&self, y: f64) -> f64 {
        self.ln_density(y).exp()
    }

    fn max_variance(&self) -> f64 {
        self.active().map(|(_, v)| v).fold(0.0, f64::max)
    }

    fn active(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.weights
            .iter()
            .zip(&self.variances)
            .filter(|(w, _)| **w > 0.0)
            .map(|(w, v)| (*w, *v))
    }
}

/// Differential entropy in bits of `N(0, variance)`.
pub fn gaussian_entropy_bits(variance: f64) -> f64 {
    0.5 * (2.0 * PI * std::f64::consts::E * variance).log2()
}

/// `−∫ f log₂ f` by adaptive Simpson on `[−L, L]`, `L = 10·max σᵢ`.
///
/// The truncated tails are bounded analytically and that bound is counted
/// against the tolerance. The absolute error target is `tol · max(1, |h|)`.
pub fn entropy_quadrature(mix: &GaussianMixture, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(RelayError::domain(format!("tolerance {tol} outside (0, 1e-3]")));
    }
    // a mixture whose active components all share one variance is a single Gaussian
    let v0 = mix.max_variance();
    if mix.active().all(|(_, v)| v == v0) {
        return Ok(gaussian_entropy_bits(v0));
    }

    let half_width = TRUNCATION_SIGMAS * v0.sqrt();
    let integrand = |y: f64| {
        let lf = mix.ln_density(y);
        if lf < -700.0 {
            // f·ln f → 0
            0.0
        } else {
            -lf.exp() * lf
        }
    };
    // rough magnitude for the relative target, from the closed-form bracket
    let scale = gaussian_entropy_bits(mix.variance()).abs().max(1.0);
    let tail = tail_bound_nats(mix, half_width);
    let budget = tol * scale * LN_2;
    if tail >= 0.5 * budget {
        return Err(RelayError::Convergence {
            message: format!("tail bound {tail:e} exceeds tolerance budget"),
            best: f64::NAN,
        });
    }
    // the integrand is even
    let r = adaptive_simpson(
        integrand,
        0.0,
        half_width,
        0.5 * (budget - tail),
        INITIAL_PANELS,
        MAX_DEPTH,
    );
    let value = 2.0 * r.value / LN_2;
    if !r.converged {
        return Err(RelayError::Convergence {
            message: format!("adaptive Simpson hit depth cap after {} evaluations", r.evals),
            best: value,
        });
    }
    Ok(value)
}

/// Upper bound on `∫_{|y|>L} −f ln f` in nats.
///
/// Uses `f ≥ δₖ N(y; σₖ²)` for the widest component `k`, so
/// `−ln f ≤ a + y²/(2σₖ²)`, and integrates against each component's tail.
fn tail_bound_nats(mix: &GaussianMixture, half_width: f64) -> f64 {
    let (wk, vk) = mix
        .active()
        .fold((0.0, 0.0), |acc, (w, v)| if v > acc.1 { (w, v) } else { acc });
    let a = (-(wk.ln()) + 0.5 * (2.0 * PI * vk).ln()).max(0.0);
    let std_pdf = |t: f64| (-0.5 * t * t).exp() / (2.0 * PI).sqrt();
    mix.active()
        .map(|(w, v)| {
            let s = v.sqrt();
            let t = half_width / s;
            // Mills-ratio bound on the Gaussian upper tail
            let q = std_pdf(t) / t;
            let second_moment = v * (t * std_pdf(t) + q);
            2.0 * w * (a * q + second_moment / (2.0 * vk))
        })
        .sum()
}

/// First-order expansion of the mixture entropy around component 0.
pub fn entropy_taylor(mix: &GaussianMixture) -> Result<f64> {
    let v0 = mix.variances[0];
    if v0 <= 0.0 {
        return Err(RelayError::domain("reference variance must be positive"));
    }
    let correction: f64 = mix
        .weights
        .iter()
        .zip(&mix.variances)
        .skip(1)
        .map(|(d, v)| d * (v / v0 - 1.0))
        .sum();
    Ok(gaussian_entropy_bits(v0) + correction / (2.0 * LN_2))
}

/// How [`mi_label`] evaluates the mixture entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MiMethod {
    /// Quadrature at [`DEFAULT_TOL`].
    Exact,
    /// First-order expansion around component 0.
    Taylor,
}

/// `I(Q; W + Z)` where `Pr{Q = i} = δᵢ`, `W | Q=i ~ N(0, σᵢ²)` and
/// `Z ~ N(0, noise_var)` independent.
///
/// Signal variances may be zero as long as the noise keeps every
/// component non-degenerate. The exact route clamps tiny negative
/// round-off to zero.
pub fn mi_label(weights: &[f64], signal_variances: &[f64], noise_var: f64, method: MiMethod) -> Result<f64> {
    mi_label_tol(weights, signal_variances, noise_var, method, DEFAULT_TOL)
}

/// [`mi_label`] with an explicit quadrature tolerance for the exact route.
pub fn mi_label_tol(
    weights: &[f64],
    signal_variances: &[f64],
    noise_var: f64,
    method: MiMethod,
    tol: f64,
) -> Result<f64> {
    if !(noise_var >= 0.0) || !noise_var.is_finite() {
        return Err(RelayError::domain(format!(
            "noise variance {noise_var} must be finite and non-negative"
        )));
    }
    let inflated: Vec<f64> = signal_variances.iter().map(|v| v + noise_var).collect();
    let mix = GaussianMixture::new(weights.to_vec(), inflated)?;
    match method {
        MiMethod::Exact => {
            let conditional: f64 = mix.active().map(|(w, v)| w * gaussian_entropy_bits(v)).sum();
            Ok((entropy_quadrature(&mix, tol)? - conditional).max(0.0))
        }
        MiMethod::Taylor => {
            let v0 = mix.variances[0];
            let sum: f64 = mix
                .weights
                .iter()
                .zip(&mix.variances)
                .skip(1)
                .map(|(d, v)| {
                    let ratio = v / v0;
                    d * ((ratio - 1.0) - ratio.ln())
                })
                .sum();
            Ok(sum / (2.0 * LN_2))
        }
    }
}

/// `I(W; W + Z | Q) = Σ δᵢ · ½ log₂(1 + σᵢ²/σ_Z²)`.
///
/// A noiseless channel carrying a non-zero signal returns `+∞`.
pub fn mi_conditional_gaussian(weights: &[f64], signal_variances: &[f64], noise_var: f64) -> f64 {
    weights
        .iter()
        .zip(signal_variances)
        .filter(|(w, v)| **w > 0.0 && **v > 0.0)
        .map(|(w, v)| {
            if noise_var == 0.0 {
                f64::INFINITY
            } else {
                w * 0.5 * (v / noise_var).ln_1p() / LN_2
            }
        })
        .sum()
}
