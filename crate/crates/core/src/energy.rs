//! Minimum energy-per-bit of the symmetric diamond network.
//!
//! With source power `P` and relay powers `γP`, the low-power rate is
//! `g·c(γx)` where `c` is a scheme's `rate/g` curve and `x = h/g`, so
//!
//! ```text
//! ℰ_b ≤ N₀/g · inf_{γ>0} (2γ + 1)/c(γx).
//! ```
//!
//! The lower bound is the same infimum over the cut-set curve, which has a
//! closed form. All bounds scale as `N₀/g` at a fixed ratio, so the ratio
//! curves depend on `x` only.

use std::f64::consts::LN_2;

use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotic::{abaf, abspdf_sym2, adf, log_grid, AsymptoticParams, CurvePoint, TabulatedCurve};
use crate::bounds::{cutset_asymptotic_normalized, golden_max};
use crate::error::{RelayError, Result};

/// Range of the relay-to-source power ratio `γ`.
pub const GAMMA_RANGE: (f64, f64) = (1e-4, 1e4);
const LATTICE_PER_DECADE: f64 = 20.0;
const LOG_XTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyScheme {
    Df,
    Baf,
    Bspdf,
}

impl EnergyScheme {
    pub fn label(self) -> &'static str {
        match self {
            EnergyScheme::Df => "df",
            EnergyScheme::Baf => "baf",
            EnergyScheme::Bspdf => "bspdf",
        }
    }

    fn rate_curve(self, y: f64, seed: u64) -> Result<f64> {
        Ok(match self {
            EnergyScheme::Df => adf(y, 2)?.y,
            EnergyScheme::Baf => abaf(y, 2, seed)?.y,
            EnergyScheme::Bspdf => abspdf_sym2(y, seed)?.y,
        })
    }
}

fn check_inputs(g: f64, h: f64, n0: f64) -> Result<()> {
    for (name, v) in [("g", g), ("h", h), ("N₀", n0)] {
        if !v.is_finite() || v <= 0.0 {
            return Err(RelayError::domain(format!("{name} = {v} must be finite and positive")));
        }
    }
    Ok(())
}

/// Lower bound from the cut-set curve, in joules per bit.
pub fn ebit_lower(g: f64, h: f64, n0: f64) -> Result<f64> {
    check_inputs(g, h, n0)?;
    let x = h / g;
    let v = if x <= 0.5 {
        (g + 2.0 * h) / (g * h)
    } else if x <= 2.0 {
        8f64.sqrt() / (g * h).sqrt()
    } else {
        (h + 2.0 * g) / (g * h)
    };
    Ok(v * n0 * LN_2)
}

/// Decode-and-forward upper bound `(g + 2h)N₀ ln 2/(gh)`.
pub fn ebit_upper_df(g: f64, h: f64, n0: f64) -> Result<f64> {
    check_inputs(g, h, n0)?;
    Ok((g + 2.0 * h) / (g * h) * n0 * LN_2)
}

/// Outcome of the `γ` search at one ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaSearch {
    /// `g·ℰ_b/N₀`.
    pub normalized: f64,
    pub gamma: f64,
    /// The minimizer sits at an end of [`GAMMA_RANGE`].
    pub at_range_end: bool,
}

/// `γ` search for one scheme, with the rate curve tabulated once on a log
/// lattice covering every ratio it will be asked about.
#[derive(Debug, Clone)]
pub struct UpperBound {
    scheme: EnergyScheme,
    seed: u64,
    table: TabulatedCurve,
}

impl UpperBound {
    /// Prepares the search for ratios in `[x_min, x_max]`.
    pub fn new(scheme: EnergyScheme, seed: u64, x_min: f64, x_max: f64) -> Result<Self> {
        if !(x_min > 0.0 && x_min <= x_max && x_max.is_finite()) {
            return Err(RelayError::domain(format!("bad ratio range [{x_min}, {x_max}]")));
        }
        let (lo, hi) = (x_min * GAMMA_RANGE.0, x_max * GAMMA_RANGE.1);
        let points = ((hi / lo).log10() * LATTICE_PER_DECADE).ceil() as usize + 1;
        let ys = log_grid(lo, hi, points.max(2));
        let values: Vec<f64> = ys
            .par_iter()
            .map(|&y| scheme.rate_curve(y, seed))
            .collect::<Result<Vec<_>>>()?;
        Ok(UpperBound {
            scheme,
            seed,
            table: TabulatedCurve::new(ys, values)?,
        })
    }

    pub fn scheme(&self) -> EnergyScheme {
        self.scheme
    }

    /// `inf_γ (2γ + 1)/c(γx)` at ratio `x`.
    pub fn search(&self, x: f64) -> Result<GammaSearch> {
        let (lo, hi) = (x * GAMMA_RANGE.0, x * GAMMA_RANGE.1);
        let ys = self.table.xs();
        if lo < ys[0] * (1.0 - 1e-12) || hi > ys[ys.len() - 1] * (1.0 + 1e-12) {
            return Err(RelayError::domain(format!("ratio {x} lies outside the prepared range")));
        }
        let cost = |y: f64, c: f64| {
            if c > 0.0 {
                (2.0 * y / x + 1.0) / c
            } else {
                f64::INFINITY
            }
        };
        let window: Vec<usize> = (0..ys.len())
            .filter(|&i| ys[i] >= lo * (1.0 - 1e-12) && ys[i] <= hi * (1.0 + 1e-12))
            .collect();
        let &first = window.first().ok_or_else(|| RelayError::domain("empty γ window"))?;
        let last = *window.last().unwrap();
        let mut best = first;
        for &i in &window {
            if cost(ys[i], self.table.ys()[i]) < cost(ys[best], self.table.ys()[best]) {
                best = i;
            }
        }
        let a = ys[best.saturating_sub(1).max(first)];
        let b = ys[(best + 1).min(last)];
        let f = |t: f64| -> f64 {
            let y = t.exp();
            self.scheme
                .rate_curve(y, self.seed)
                .map_or(f64::NEG_INFINITY, |c| -cost(y, c))
        };
        let (t, v) = golden_max(&f, a.ln(), b.ln(), LOG_XTOL);
        let grid_value = cost(ys[best], self.table.ys()[best]);
        let (y, value) = if -v < grid_value {
            (t.exp(), -v)
        } else {
            (ys[best], grid_value)
        };
        if !value.is_finite() {
            return Err(RelayError::Infeasible(format!(
                "no positive rate for any γ at ratio {x}"
            )));
        }
        Ok(GammaSearch {
            normalized: value,
            gamma: y / x,
            at_range_end: best == first || best == last,
        })
    }

    /// Upper bound in joules per bit.
    pub fn ebit(&self, g: f64, h: f64, n0: f64) -> Result<f64> {
        check_inputs(g, h, n0)?;
        Ok(self.search(h / g)?.normalized * n0 / g)
    }

    /// Upper over lower bound at ratio `x`.
    pub fn ratio(&self, x: f64) -> Result<f64> {
        Ok(self.search(x)?.normalized / ebit_lower(1.0, x, 1.0)?)
    }
}

/// Generic `inf_γ (2γ+1)/c(γx)` for an arbitrary `rate/g` curve, by a log
/// grid over [`GAMMA_RANGE`] and golden refinement. Used to cross-check
/// the closed forms.
pub fn gamma_infimum(curve: impl Fn(f64) -> f64, x: f64, grid_points: usize) -> (f64, f64) {
    let cost = |y: f64| {
        let c = curve(y);
        if c > 0.0 {
            (2.0 * y / x + 1.0) / c
        } else {
            f64::INFINITY
        }
    };
    let ys = log_grid(x * GAMMA_RANGE.0, x * GAMMA_RANGE.1, grid_points);
    let best = (0..ys.len())
        .min_by(|&i, &j| cost(ys[i]).total_cmp(&cost(ys[j])))
        .unwrap();
    let a = ys[best.saturating_sub(1)];
    let b = ys[(best + 1).min(ys.len() - 1)];
    let (t, v) = golden_max(&|t: f64| -cost(t.exp()), a.ln(), b.ln(), LOG_XTOL);
    if -v < cost(ys[best]) {
        (-v, t.exp() / x)
    } else {
        (cost(ys[best]), ys[best] / x)
    }
}

/// BAF upper bound in joules per bit.
pub fn ebit_upper_baf(g: f64, h: f64, n0: f64, seed: u64) -> Result<f64> {
    check_inputs(g, h, n0)?;
    UpperBound::new(EnergyScheme::Baf, seed, h / g, h / g)?.ebit(g, h, n0)
}

/// BSPDF upper bound in joules per bit.
pub fn ebit_upper_bspdf(g: f64, h: f64, n0: f64, seed: u64) -> Result<f64> {
    check_inputs(g, h, n0)?;
    UpperBound::new(EnergyScheme::Bspdf, seed, h / g, h / g)?.ebit(g, h, n0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EbitResult {
    pub lower: f64,
    pub upper_df: f64,
    pub upper_baf: f64,
    pub upper_bspdf: f64,
    /// Upper over lower, ordered DF, BAF, BSPDF.
    pub ratios: [f64; 3],
    /// Minimizing relay-to-source power ratio, ordered DF, BAF, BSPDF.
    pub gamma_star: [f64; 3],
}

/// All bounds at one network.
pub fn ebit(g: f64, h: f64, n0: f64, seed: u64) -> Result<EbitResult> {
    let lower = ebit_lower(g, h, n0)?;
    let x = h / g;
    let upper_df = ebit_upper_df(g, h, n0)?;
    let baf = UpperBound::new(EnergyScheme::Baf, seed, x, x)?.search(x)?;
    let bspdf = UpperBound::new(EnergyScheme::Bspdf, seed, x, x)?.search(x)?;
    let upper_baf = baf.normalized * n0 / g;
    let upper_bspdf = bspdf.normalized * n0 / g;
    Ok(EbitResult {
        lower,
        upper_df,
        upper_baf,
        upper_bspdf,
        ratios: [upper_df / lower, upper_baf / lower, upper_bspdf / lower],
        gamma_star: [1.0 / (4.0 * x), baf.gamma, bspdf.gamma],
    })
}

/// Closed-form ratio for DF.
fn df_ratio(x: f64) -> Result<f64> {
    Ok(ebit_upper_df(1.0, x, 1.0)? / ebit_lower(1.0, x, 1.0)?)
}

/// Upper-to-lower ratio of `scheme` at every `x` of `xs`.
pub fn ebit_ratio_curve(scheme: EnergyScheme, xs: &[f64], seed: u64) -> Result<Vec<CurvePoint>> {
    let (lo, hi) = range(xs)?;
    let solver = match scheme {
        EnergyScheme::Df => None,
        _ => Some(UpperBound::new(scheme, seed, lo, hi)?),
    };
    xs.par_iter()
        .map(|&x| {
            let (y, gamma, edge) = match &solver {
                None => (df_ratio(x)?, 1.0 / (4.0 * x), false),
                Some(s) => {
                    let r = s.search(x)?;
                    (r.normalized / ebit_lower(1.0, x, 1.0)?, r.gamma, r.at_range_end)
                }
            };
            Ok(CurvePoint {
                x,
                y,
                scheme: scheme.label().to_string(),
                params: AsymptoticParams {
                    gamma1: Some(gamma),
                    ..Default::default()
                },
                boundary: edge,
            })
        })
        .collect()
}

fn range(xs: &[f64]) -> Result<(f64, f64)> {
    if xs.is_empty() {
        return Err(RelayError::domain("empty ratio grid"));
    }
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((lo, hi))
}

/// Largest ratio over `xs`, refined by golden section around the grid maximum.
/// Returns `(x, ratio)`.
pub fn worst_case_ratio(scheme: EnergyScheme, xs: &[f64], seed: u64) -> Result<(f64, f64)> {
    let mut xs = xs.to_vec();
    xs.sort_by(f64::total_cmp);
    let curve = ebit_ratio_curve(scheme, &xs, seed)?;
    let best = (0..curve.len())
        .max_by(|&i, &j| curve[i].y.total_cmp(&curve[j].y).then(j.cmp(&i)))
        .unwrap();
    let a = xs[best.saturating_sub(1)];
    let b = xs[(best + 1).min(xs.len() - 1)];
    if a == b {
        return Ok((xs[best], curve[best].y));
    }
    let ratio: Box<dyn Fn(f64) -> f64> = match scheme {
        EnergyScheme::Df => Box::new(|x| df_ratio(x).unwrap_or(f64::NEG_INFINITY)),
        _ => {
            let solver = UpperBound::new(scheme, seed, a, b)?;
            Box::new(move |x| solver.ratio(x).unwrap_or(f64::NEG_INFINITY))
        }
    };
    let (t, v) = golden_max(&|t: f64| ratio(t.exp()), a.ln(), b.ln(), 1e-6);
    Ok(if v > curve[best].y {
        (t.exp(), v)
    } else {
        (xs[best], curve[best].y)
    })
}

/// Leading-order cut-set curve, exposed for the lower-bound cross-check.
pub fn cutset_curve(y: f64) -> f64 {
    cutset_asymptotic_normalized(y)
}
