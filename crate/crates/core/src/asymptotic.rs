//! Low-SNR rate curves.
//!
//! As `g, h → 0` at a fixed ratio, every scheme's rate is `h·R(g/h)` to
//! first order. Curves here are functions of `x = h/g`:
//!
//! * symmetric families report `rate/g = x·R(1/x)`;
//! * the asymmetric diamond (`g₁ = h₂ = g`, `g₂ = h₁ = h`) reports
//!   `rate/√(gh) = √x·R(1/x)` for `x ≥ 1`, and uses `1/x` otherwise since
//!   swapping `g` and `h` relabels the same network.
//!
//! Inside each program `r = g/h` and `s = √r`. For fixed parameters the sum
//! rate is the smallest `R₁` cap plus the `R₂` cap; only the outer parameters
//! are searched.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::bounds::{cutset_asym_normalized, cutset_asymptotic_normalized, maximize_rho, RHO_OPEN_END};
use crate::error::{RelayError, Result};
use crate::optimizer::{maximize, Dim, OptResult, SearchSpec};

const TWO_LN2: f64 = 2.0 * LN_2;
const BETA_MIN: f64 = 1e-9;
const BETA_MAX: f64 = 1e4;
/// Multi-start count for programs with at most three parameters.
pub const STARTS_SMALL: usize = 64;
/// Multi-start count for the ternary program.
pub const STARTS_TERNARY: usize = 512;

/// Maximizing parameters of whichever program produced a curve point.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AsymptoticParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa2: Option<f64>,
    /// Normalized `(R₁, R₂)` for two-layer schemes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<(f64, f64)>,
    /// Timesharing: the two operating points and the weight of the first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chord: Option<(f64, f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub x: f64,
    pub y: f64,
    pub scheme: String,
    pub params: AsymptoticParams,
    /// The supremum was approached on a face of the search box.
    pub boundary: bool,
}

fn check_ratio(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(RelayError::domain(format!(
            "ratio h/g = {x} must be finite and positive"
        )));
    }
    Ok(())
}

fn point(x: f64, y: f64, scheme: &str, params: AsymptoticParams, boundary: bool) -> CurvePoint {
    CurvePoint {
        x,
        y,
        scheme: scheme.to_string(),
        params,
        boundary,
    }
}

/// `A − ln(1 + A)`, accurate for small `A`.
fn excess(a: f64) -> f64 {
    if a.abs() < 1e-4 {
        a * a / 2.0 - a * a * a / 3.0 + a.powi(4) / 4.0
    } else {
        a - a.ln_1p()
    }
}

fn search_beta(objective: impl Fn(f64) -> f64 + Sync, seeds: &[f64], seed: u64) -> Result<OptResult> {
    let mut spec = SearchSpec::new(vec![Dim::log(BETA_MIN, BETA_MAX)])
        .starts(STARTS_SMALL)
        .seed(seed);
    for &b in seeds {
        spec = spec.with_seed_point(vec![b]);
    }
    maximize(|p| objective(p[0]), &spec)
}

/// Decode-and-forward: `min(1, N²x)/(2 ln 2)`.
pub fn adf(x: f64, n: usize) -> Result<CurvePoint> {
    check_ratio(x)?;
    let y = (1.0f64).min((n * n) as f64 * x) / TWO_LN2;
    Ok(point(x, y, "df", AsymptoticParams::default(), false))
}

/// The `N`-relay BSPDF caps `(R₁ cap at the relays, R₁ cap at the destination, R₂ cap)`
/// in units of `h`, at `r = g/h`.
pub fn symn_caps(r: f64, beta: f64, n: usize) -> [f64; 3] {
    let s = r.sqrt();
    let bs = beta * s;
    let nf = n as f64;
    let c1 = (r - bs * (s / beta).ln_1p()) / TWO_LN2;
    let a = nf * (nf * s + beta) / (beta * (r + bs));
    let c2 = bs * excess(a) / TWO_LN2;
    let r2 = bs * (nf * nf * s / (beta * (nf + r + bs))).ln_1p() / TWO_LN2;
    [c1, c2, r2]
}

/// The two-relay caps, written out for `N = 2`.
pub fn sym2_caps(r: f64, beta: f64) -> [f64; 3] {
    let s = r.sqrt();
    let bs = beta * s;
    let c1 = (r - bs * (1.0 + s / beta).ln()) / TWO_LN2;
    let a = 2.0 * (2.0 * s + beta) / (beta * (r + bs));
    let c2 = (2.0 * (2.0 * s + beta) / (s + beta) - bs * (1.0 + a).ln()) / TWO_LN2;
    let r2 = bs * (1.0 + 4.0 * s / (beta * (2.0 + r + bs))).ln() / TWO_LN2;
    [c1, c2, r2]
}

/// Bursty AF on the symmetric `N`-relay network (the `R₁ = 0` face of BSPDF).
pub fn abaf(x: f64, n: usize, seed: u64) -> Result<CurvePoint> {
    check_ratio(x)?;
    let r = 1.0 / x;
    let opt = search_beta(|b| symn_caps(r, b, n)[2], &[], seed)?;
    let params = AsymptoticParams {
        beta: Some(opt.argmax[0]),
        ..Default::default()
    };
    Ok(point(x, x * opt.value, "baf", params, opt.on_boundary()))
}

fn bspdf_from_caps(
    x: f64,
    caps: impl Fn(f64) -> [f64; 3] + Sync,
    n: usize,
    seed: u64,
    label: &str,
) -> Result<CurvePoint> {
    check_ratio(x)?;
    let baf = abaf(x, n, seed)?;
    let seeds = [baf.params.beta.unwrap(), BETA_MIN];
    let opt = search_beta(
        |b| {
            let c = caps(b);
            c[0].min(c[1]) + c[2]
        },
        &seeds,
        seed,
    )?;
    let beta = opt.argmax[0];
    let c = caps(beta);
    let params = AsymptoticParams {
        beta: Some(beta),
        split: Some((x * c[0].min(c[1]), x * c[2])),
        ..Default::default()
    };
    Ok(point(x, x * opt.value, label, params, opt.on_boundary()))
}

/// BSPDF on the symmetric diamond network.
pub fn abspdf_sym2(x: f64, seed: u64) -> Result<CurvePoint> {
    let r = 1.0 / x;
    bspdf_from_caps(x, |b| sym2_caps(r, b), 2, seed, "bspdf")
}

/// BSPDF on the symmetric `N`-relay network.
pub fn abspdf_symn(x: f64, n: usize, seed: u64) -> Result<CurvePoint> {
    if n < 2 {
        return Err(RelayError::domain("symmetric network needs N ≥ 2"));
    }
    let r = 1.0 / x;
    bspdf_from_caps(x, |b| symn_caps(r, b, n), n, seed, "bspdf")
}

/// Ternary SPDF caps `(R₁ relay cap, R₁ destination cap, R₂ cap)` at `r = g/h`,
/// or `None` when a power constraint fails.
pub fn ternary_caps(r: f64, beta: [f64; 2], gamma: [f64; 2], kappa: [f64; 2]) -> Option<[f64; 3]> {
    let s = r.sqrt();
    let source = s * (beta[0] * gamma[0] + beta[1] * gamma[1]);
    let relay = s * (0..2).map(|j| beta[j] * (1.0 + gamma[j] * r) * kappa[j]).sum::<f64>();
    if source > 1.0 + 1e-12 || relay > 1.0 + 1e-12 {
        return None;
    }
    let mut c = [0.0; 3];
    for j in 0..2 {
        let gr = gamma[j] * r;
        c[0] += beta[j] * excess(gr);
        c[1] += beta[j] * excess(4.0 * gr * kappa[j] + 2.0 * kappa[j]);
        c[2] += beta[j] * (4.0 * gr * kappa[j] / (1.0 + 2.0 * kappa[j])).ln_1p();
    }
    Some(c.map(|v| s * v / TWO_LN2))
}

/// Full-power ternary parameters from `(β₁, β₂, θ, φ)`: `θ` and `φ` split the
/// source and relay power between the two burst symbols.
fn ternary_params(r: f64, p: &[f64]) -> ([f64; 2], [f64; 2], [f64; 2]) {
    let s = r.sqrt();
    let beta = [p[0], p[1]];
    let src = [p[2], 1.0 - p[2]];
    let rel = [p[3], 1.0 - p[3]];
    let gamma = [src[0] / (s * beta[0]), src[1] / (s * beta[1])];
    let kappa = [
        rel[0] / (s * beta[0] * (1.0 + gamma[0] * r)),
        rel[1] / (s * beta[1] * (1.0 + gamma[1] * r)),
    ];
    (beta, gamma, kappa)
}

/// Ternary SPDF on the symmetric diamond network: the best local optimum
/// over [`STARTS_TERNARY`] starts, one of which is the BSPDF optimum split in
/// two identical halves.
pub fn atspdf_sym2(x: f64, seed: u64) -> Result<CurvePoint> {
    check_ratio(x)?;
    let r = 1.0 / x;
    let binary = abspdf_sym2(x, seed)?;
    let b = binary.params.beta.unwrap();
    let objective = |p: &[f64]| -> f64 {
        let (beta, gamma, kappa) = ternary_params(r, p);
        match ternary_caps(r, beta, gamma, kappa) {
            Some(c) => c[0].min(c[1]) + c[2],
            None => f64::NEG_INFINITY,
        }
    };
    let spec = SearchSpec::new(vec![
        Dim::log(BETA_MIN, BETA_MAX),
        Dim::log(BETA_MIN, BETA_MAX),
        Dim::linear(0.0, 1.0),
        Dim::linear(0.0, 1.0),
    ])
    .starts(STARTS_TERNARY)
    .seed(seed)
    .with_seed_point(vec![b / 2.0, b / 2.0, 0.5, 0.5]);
    let opt = maximize(objective, &spec)?;
    let (beta, gamma, kappa) = ternary_params(r, &opt.argmax);
    let c = ternary_caps(r, beta, gamma, kappa).expect("feasible optimum");
    let params = AsymptoticParams {
        beta1: Some(beta[0]),
        beta2: Some(beta[1]),
        gamma1: Some(gamma[0]),
        gamma2: Some(gamma[1]),
        kappa1: Some(kappa[0]),
        kappa2: Some(kappa[1]),
        split: Some((x * c[0].min(c[1]), x * c[2])),
        ..Default::default()
    };
    Ok(point(x, x * opt.value, "tspdf", params, opt.on_boundary()))
}

/// `x ≥ 1` after folding, and the `√x` factor converting `R(1/x)` to `rate/√(gh)`.
fn fold(x: f64) -> (f64, f64) {
    let xe = if x < 1.0 { 1.0 / x } else { x };
    (1.0 / xe, xe.sqrt())
}

/// BSPDF(1, 1) caps on the asymmetric diamond, `None` when infeasible.
pub fn asym11_caps(r: f64, beta: f64, kappa1: f64, kappa2: f64) -> Option<[f64; 3]> {
    let s = r.sqrt();
    let bs = beta * s;
    if kappa1 * (r + bs) > 1.0 + 1e-12 || kappa2 * (1.0 + bs) > 1.0 + 1e-12 {
        return None;
    }
    let beam = s * (kappa1.sqrt() + kappa2.sqrt()).powi(2) / beta;
    let c1 = (r + bs * (beta / (s + beta)).ln()) / TWO_LN2;
    let c2 = bs * excess(kappa1 + kappa2 * r + beam) / TWO_LN2;
    let r2 = bs * (beam / (1.0 + kappa1 + kappa2 * r)).ln_1p() / TWO_LN2;
    Some([c1, c2, r2])
}

fn asym11_params(r: f64, p: &[f64]) -> (f64, f64, f64) {
    let bs = p[0] * r.sqrt();
    (p[0], p[1] / (r + bs), p[2] / (1.0 + bs))
}

fn asym11_search(x: f64, seed: u64, r1: bool, seeds: &[Vec<f64>]) -> Result<(OptResult, f64)> {
    let (r, scale) = fold(x);
    let objective = |p: &[f64]| -> f64 {
        let (b, k1, k2) = asym11_params(r, p);
        match asym11_caps(r, b, k1, k2) {
            Some(c) if r1 => c[0].min(c[1]) + c[2],
            Some(c) => c[2],
            None => f64::NEG_INFINITY,
        }
    };
    let mut spec = SearchSpec::new(vec![
        Dim::log(BETA_MIN, BETA_MAX),
        Dim::linear(0.0, 1.0),
        Dim::linear(0.0, 1.0),
    ])
    .starts(STARTS_SMALL)
    .seed(seed);
    for s in seeds {
        spec = spec.with_seed_point(s.clone());
    }
    Ok((maximize(objective, &spec)?, scale))
}

fn asym11_point(x: f64, opt: &OptResult, scale: f64, label: &str, r1: bool) -> CurvePoint {
    let (r, _) = fold(x);
    let (b, k1, k2) = asym11_params(r, &opt.argmax);
    let c = asym11_caps(r, b, k1, k2).expect("feasible optimum");
    let params = AsymptoticParams {
        beta: Some(b),
        kappa1: Some(k1),
        kappa2: Some(k2),
        split: r1.then(|| (scale * c[0].min(c[1]), scale * c[2])),
        ..Default::default()
    };
    point(x, scale * opt.value, label, params, opt.on_boundary())
}

/// Bursty AF on the asymmetric diamond (the `R₁ = 0` face of BSPDF(1, 1)).
pub fn abaf_asym(x: f64, seed: u64) -> Result<CurvePoint> {
    check_ratio(x)?;
    let (opt, scale) = asym11_search(x, seed, false, &[])?;
    Ok(asym11_point(x, &opt, scale, "baf", false))
}

/// BSPDF with both relays decoding the burst pattern, asymmetric diamond.
pub fn abspdf_asym11(x: f64, seed: u64) -> Result<CurvePoint> {
    check_ratio(x)?;
    let baf = abaf_asym(x, seed)?;
    let (r, _) = fold(x);
    let bs = baf.params.beta.unwrap() * r.sqrt();
    let from_baf = vec![
        baf.params.beta.unwrap(),
        baf.params.kappa1.unwrap() * (r + bs),
        baf.params.kappa2.unwrap() * (1.0 + bs),
    ];
    let (opt, scale) = asym11_search(x, seed, true, &[from_baf, vec![BETA_MIN, 1.0, 1.0]])?;
    Ok(asym11_point(x, &opt, scale, "bspdf11", true))
}

/// Decode-and-forward on the asymmetric diamond: `min(√x, 1/√x)/(2 ln 2)`.
pub fn adf_asym(x: f64) -> Result<CurvePoint> {
    check_ratio(x)?;
    let y = x.sqrt().min(1.0 / x.sqrt()) / TWO_LN2;
    Ok(point(x, y, "df", AsymptoticParams::default(), false))
}

/// The two BAF+DF caps, `None` when infeasible.
pub fn bafdf_caps(r: f64, beta: f64, kappa: f64) -> Option<[f64; 2]> {
    let bs = beta * r.sqrt();
    if kappa * (bs + r) > 1.0 + 1e-12 {
        return None;
    }
    Some([
        bs * (1.0 / bs).ln_1p() / TWO_LN2,
        bs * (r * (1.0 + kappa.sqrt()).powi(2) / (bs * (1.0 + kappa))).ln_1p() / TWO_LN2,
    ])
}

fn two_param_search(
    x: f64,
    seed: u64,
    seeds: &[Vec<f64>],
    objective: impl Fn(f64, f64, f64) -> f64 + Sync,
) -> Result<(OptResult, f64, f64)> {
    let (r, scale) = fold(x);
    let mut spec = SearchSpec::new(vec![Dim::log(BETA_MIN, BETA_MAX), Dim::linear(0.0, 1.0)])
        .starts(STARTS_SMALL)
        .seed(seed);
    for s in seeds {
        spec = spec.with_seed_point(s.clone());
    }
    let opt = maximize(
        |p| {
            let kappa = p[1] / (p[0] * r.sqrt() + r);
            objective(r, p[0], kappa)
        },
        &spec,
    )?;
    Ok((opt, r, scale))
}

/// BAF at the weak relay with decode-and-forward at the strong relay.
pub fn abafdf(x: f64, seed: u64) -> Result<CurvePoint> {
    check_ratio(x)?;
    let (opt, r, scale) = two_param_search(x, seed, &[], |r, b, k| match bafdf_caps(r, b, k) {
        Some(c) => c[0].min(c[1]),
        None => f64::NEG_INFINITY,
    })?;
    let beta = opt.argmax[0];
    let params = AsymptoticParams {
        beta: Some(beta),
        kappa: Some(opt.argmax[1] / (beta * r.sqrt() + r)),
        ..Default::default()
    };
    Ok(point(x, scale * opt.value, "bafdf", params, opt.on_boundary()))
}

/// BSPDF(1, 2) caps `(R₁ relay cap, R₁ destination cap, R₂ strong-relay cap, R₂ destination cap)`.
pub fn asym12_caps(r: f64, beta: f64, kappa: f64) -> Option<[f64; 4]> {
    let s = r.sqrt();
    let bs = beta * s;
    let [d1, d2] = bafdf_caps(r, beta, kappa)?;
    let c1 = (r + bs * (beta / (s + beta)).ln()) / TWO_LN2;
    let c2 = bs * excess(kappa + s * (1.0 + kappa.sqrt()).powi(2) / beta) / TWO_LN2;
    Some([c1, c2, d1, d2])
}

/// BSPDF with the weak relay decoding the burst pattern and the strong relay
/// decoding everything.
pub fn abspdf_asym12(x: f64, seed: u64) -> Result<CurvePoint> {
    check_ratio(x)?;
    let bafdf = abafdf(x, seed)?;
    let (r0, _) = fold(x);
    let b0 = bafdf.params.beta.unwrap();
    let seeds = [
        vec![b0, bafdf.params.kappa.unwrap() * (b0 * r0.sqrt() + r0)],
        vec![BETA_MIN, 1.0],
    ];
    let sum = |c: [f64; 4]| c[0].min(c[1]) + c[2].min(c[3]);
    let (opt, r, scale) = two_param_search(x, seed, &seeds, |r, b, k| {
        asym12_caps(r, b, k).map_or(f64::NEG_INFINITY, sum)
    })?;
    let beta = opt.argmax[0];
    let kappa = opt.argmax[1] / (beta * r.sqrt() + r);
    let c = asym12_caps(r, beta, kappa).expect("feasible optimum");
    let params = AsymptoticParams {
        beta: Some(beta),
        kappa: Some(kappa),
        split: Some((scale * c[0].min(c[1]), scale * c[2].min(c[3]))),
        ..Default::default()
    };
    Ok(point(x, scale * opt.value, "bspdf12", params, opt.on_boundary()))
}

/// Leading-order cut-set bound of the symmetric diamond as a curve point.
pub fn acutset_sym2(x: f64) -> Result<CurvePoint> {
    check_ratio(x)?;
    Ok(point(
        x,
        cutset_asymptotic_normalized(x),
        "cutset",
        AsymptoticParams::default(),
        false,
    ))
}

/// Leading-order cut-set bound of the asymmetric diamond family.
pub fn acutset_asym(x: f64) -> Result<CurvePoint> {
    check_ratio(x)?;
    Ok(point(
        x,
        cutset_asym_normalized(x),
        "cutset",
        AsymptoticParams::default(),
        false,
    ))
}

/// Leading-order symmetric `N`-relay cut-set bound, `rate/g`.
pub fn acutset_symn(x: f64, n: usize) -> Result<CurvePoint> {
    check_ratio(x)?;
    if n < 2 {
        return Err(RelayError::domain("symmetric network needs N ≥ 2"));
    }
    let nf = n as f64;
    let term = |k: usize, rho: f64| -> f64 {
        let k = k as f64;
        let coupling = 1.0 + (k - 1.0) * rho - k * (nf - k) * rho * rho / (1.0 + (nf - k - 1.0) * rho);
        ((nf - k) + k * coupling * x) / TWO_LN2
    };
    let (y, _) = maximize_rho(
        |rho| (0..=n).map(|k| term(k, rho)).fold(f64::INFINITY, f64::min),
        RHO_OPEN_END,
    );
    Ok(point(x, y, "cutset", AsymptoticParams::default(), false))
}

/// A curve sampled on an increasing grid, for chord searches.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedCurve {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl TabulatedCurve {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.is_empty() {
            return Err(RelayError::domain("tabulated curve needs matching, non-empty x and y"));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(RelayError::domain("tabulated curve needs strictly increasing x"));
        }
        Ok(TabulatedCurve { xs, ys })
    }

    /// Samples `f` at every `x` of `xs` (sorted and deduplicated).
    pub fn sample(mut xs: Vec<f64>, f: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let ys = xs.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
        Self::new(xs, ys)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }
}

/// Best timesharing of two schemes at ratio `x`, `rate/g`.
///
/// Scheme A takes a share `a` of the source power and `b` of the relay
/// power, scheme B the rest. At leading order the time split cancels and
///
/// ```text
/// rate/g = a·c_A(x·b/a) + (1 − a)·c_B(x·(1 − b)/(1 − a)),
/// ```
///
/// i.e. a chord between `(x_A, c_A(x_A))` and `(x_B, c_B(x_B))` whose
/// weighted abscissa `a·x_A + (1 − a)·x_B` equals `x`. Chord endpoints are
/// taken from the tabulated grids; `a ∈ {0, 1}` gives the pure curves.
pub fn timeshare_envelope(a: &TabulatedCurve, b: &TabulatedCurve, x: f64) -> Result<(f64, (f64, f64, f64))> {
    check_ratio(x)?;
    let covers = |c: &TabulatedCurve| c.xs[0] <= x && x <= *c.xs.last().unwrap();
    if !covers(a) || !covers(b) {
        return Err(RelayError::domain(format!(
            "ratio {x} lies outside the tabulated range"
        )));
    }
    let mut best = (f64::NEG_INFINITY, (x, x, 1.0));
    for (&xa, &ya) in a.xs.iter().zip(&a.ys) {
        for (&xb, &yb) in b.xs.iter().zip(&b.ys) {
            let (lo, hi) = if xa <= xb { (xa, xb) } else { (xb, xa) };
            if x < lo || x > hi {
                continue;
            }
            let w = if hi == lo {
                if ya >= yb {
                    1.0
                } else {
                    0.0
                }
            } else {
                (xb - x) / (xb - xa)
            };
            let y = w * ya + (1.0 - w) * yb;
            if y > best.0 {
                best = (y, (xa, xb, w));
            }
        }
    }
    Ok(best)
}

/// Log-spaced grid of `points` values on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == points - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}
