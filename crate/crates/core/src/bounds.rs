//! Cut-set upper bounds on capacity.
//!
//! * [`cutset_diamond`]: the four cuts of a two-relay diamond network, maximized
//!   over the relay correlation `ρ ∈ [0, 1]`.
//! * [`cutset_symmetric_n`]: the `N + 1` cut family of a symmetric parallel network,
//!   maximized over `ρ ∈ [0, 1)`.
//! * Leading-order (low-SNR) versions of the diamond bound, used to normalize
//!   the asymptotic rate curves.

use std::f64::consts::LN_2;
use std::fmt;

use serde::Serialize;

use crate::error::{RelayError, Result};
use crate::network::NormalizedNetwork;

/// Which cut attains the minimum at the maximizing correlation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ActiveCut {
    /// Broadcast cut around the source.
    S,
    /// Source and relay 1 on the source side.
    SR1,
    /// Source and relay 2 on the source side.
    SR2,
    /// Multiple-access cut around the destination.
    D,
    /// Symmetric family: `n` relays on the destination side.
    Relays(usize),
}

impl fmt::Display for ActiveCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActiveCut::S => write!(f, "S"),
            ActiveCut::SR1 => write!(f, "SR1"),
            ActiveCut::SR2 => write!(f, "SR2"),
            ActiveCut::D => write!(f, "D"),
            ActiveCut::Relays(n) => write!(f, "n={n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutsetResult {
    pub bound_bits: f64,
    pub rho_star: f64,
    pub active_cut: ActiveCut,
}

const RHO_GRID: usize = 1000;
/// Upper end of the correlation search when the supremum runs over `[0, 1)`.
pub const RHO_OPEN_END: f64 = 1.0 - 1e-12;

fn half_log2_1p(x: f64) -> f64 {
    0.5 * x.ln_1p() / LN_2
}

/// The four diamond cuts at correlation `rho`, in the order S, SR1, SR2, D.
pub fn diamond_cuts(g: [f64; 2], h: [f64; 2], rho: f64) -> [f64; 4] {
    let one_minus = 1.0 - rho * rho;
    [
        half_log2_1p(g[0] + g[1]),
        half_log2_1p(g[1]) + half_log2_1p(h[0] * one_minus),
        half_log2_1p(g[0]) + half_log2_1p(h[1] * one_minus),
        half_log2_1p(h[0] + h[1] + 2.0 * rho * (h[0] * h[1]).sqrt()),
    ]
}

/// First-order terms of [`diamond_cuts`] as all gains go to zero, in bits.
pub fn diamond_cuts_leading(g: [f64; 2], h: [f64; 2], rho: f64) -> [f64; 4] {
    let one_minus = 1.0 - rho * rho;
    let k = 1.0 / (2.0 * LN_2);
    [
        k * (g[0] + g[1]),
        k * (g[1] + h[0] * one_minus),
        k * (g[0] + h[1] * one_minus),
        k * (h[0] + h[1] + 2.0 * rho * (h[0] * h[1]).sqrt()),
    ]
}

fn argmin(v: &[f64]) -> (usize, f64) {
    v.iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, x)| if x < acc.1 { (i, x) } else { acc })
}

/// Maximizes a quasi-concave function of `ρ` over `[0, upper]`.
///
/// A uniform grid picks the first best node; golden-section then refines
/// inside the two neighbouring cells and is kept only if it improves.
pub(crate) fn maximize_rho<F: Fn(f64) -> f64>(f: F, upper: f64) -> (f64, f64) {
    let step = upper / RHO_GRID as f64;
    let mut best = (f(0.0), 0.0);
    let mut best_i = 0;
    for i in 1..=RHO_GRID {
        let rho = if i == RHO_GRID { upper } else { step * i as f64 };
        let v = f(rho);
        if v > best.0 {
            best = (v, rho);
            best_i = i;
        }
    }
    let a = step * best_i.saturating_sub(1) as f64;
    let b = (step * (best_i + 1) as f64).min(upper);
    let (rho, v) = golden_max(&f, a, b, 1e-13);
    if v > best.0 {
        best = (v, rho);
    }
    best
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub(crate) fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a) > xtol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

fn diamond_pair(net: &NormalizedNetwork) -> Result<([f64; 2], [f64; 2])> {
    if net.n_relays() != 2 {
        return Err(RelayError::domain(format!(
            "diamond bound needs 2 relays, got {}",
            net.n_relays()
        )));
    }
    Ok(([net.g()[0], net.g()[1]], [net.h()[0], net.h()[1]]))
}

fn diamond_result(cuts: impl Fn(f64) -> [f64; 4]) -> CutsetResult {
    let (bound, rho) = maximize_rho(|r| argmin(&cuts(r)).1, 1.0);
    let labels = [ActiveCut::S, ActiveCut::SR1, ActiveCut::SR2, ActiveCut::D];
    CutsetResult {
        bound_bits: bound.max(0.0),
        rho_star: rho,
        active_cut: labels[argmin(&cuts(rho)).0],
    }
}

/// Cut-set bound of a two-relay diamond network.
///
/// Relay labels follow the network's internal (sorted by `g`) order.
pub fn cutset_diamond(net: &NormalizedNetwork) -> Result<CutsetResult> {
    let (g, h) = diamond_pair(net)?;
    Ok(diamond_result(|r| diamond_cuts(g, h, r)))
}

/// Leading-order diamond bound in bits: the limit of `cutset(s·g, s·h)/s` as
/// `s → 0`, evaluated at scale one.
pub fn cutset_diamond_leading(g: [f64; 2], h: [f64; 2]) -> CutsetResult {
    diamond_result(|r| diamond_cuts_leading(g, h, r))
}

fn symmetric_term(n_relays: usize, n: usize, g: f64, h: f64, rho: f64) -> f64 {
    let (big, n) = (n_relays as f64, n as f64);
    let coupling = 1.0 + (n - 1.0) * rho - n * (big - n) * rho * rho / (1.0 + (big - n - 1.0) * rho);
    half_log2_1p((big - n) * g) + half_log2_1p(n * coupling * h)
}

/// Cut-set bound of the symmetric `N`-relay parallel network.
pub fn cutset_symmetric_n(n_relays: usize, g: f64, h: f64) -> Result<CutsetResult> {
    if n_relays < 2 {
        return Err(RelayError::domain("symmetric bound needs N ≥ 2"));
    }
    for (name, x) in [("g", g), ("h", h)] {
        if !x.is_finite() || x < 0.0 {
            return Err(RelayError::domain(format!(
                "{name} = {x} must be finite and non-negative"
            )));
        }
    }
    let terms = |rho: f64| -> Vec<f64> { (0..=n_relays).map(|n| symmetric_term(n_relays, n, g, h, rho)).collect() };
    let (bound, rho) = maximize_rho(|r| argmin(&terms(r)).1, RHO_OPEN_END);
    Ok(CutsetResult {
        bound_bits: bound.max(0.0),
        rho_star: rho,
        active_cut: ActiveCut::Relays(argmin(&terms(rho)).0),
    })
}

/// `max_ρ min{g, (g + h(1−ρ²))/2, h(1+ρ)}`: the leading-order symmetric diamond
/// bound before conversion to bits.
pub fn symmetric_leading_nats(g: f64, h: f64) -> f64 {
    if g <= 0.0 || h <= 0.0 {
        return 0.0;
    }
    let x = h / g;
    if x < 0.25 {
        2.0 * h
    } else if x <= 1.0 {
        (g * h).sqrt()
    } else {
        g
    }
}

/// Leading-order cut-set bound (bits) of the symmetric diamond network.
pub fn cutset_asymptotic(g: f64, h: f64) -> f64 {
    symmetric_leading_nats(g, h) / LN_2
}

/// [`cutset_asymptotic`] divided by `g`, as a function of `x = h/g`.
pub fn cutset_asymptotic_normalized(x: f64) -> f64 {
    symmetric_leading_nats(1.0, x) / LN_2
}

/// Leading-order cut-set bound of the asymmetric diamond family
/// (`g₁ = h₂ = g`, `g₂ = h₁ = h`) normalized by `√(gh)`, at `x = h/g`.
pub fn cutset_asym_normalized(x: f64) -> f64 {
    let r = cutset_diamond_leading([1.0, x], [x, 1.0]);
    r.bound_bits / x.sqrt()
}
