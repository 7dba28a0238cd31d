//! Superposition partially decode-and-forward with binary (BSPDF) and
//! ternary (TSPDF) first-layer alphabets.
//!
//! For fixed parameters the best sum rate takes `R₂` at its conditional
//! mutual-information cap and gives `R₁` whatever the remaining caps allow.

use serde::Serialize;

use super::{half_log2_1p, rate_baf, RateResult, SchemeParams};
use crate::error::{RelayError, Result};
use crate::gaussmix::{mi_conditional_gaussian, mi_label_tol, MiMethod, DEFAULT_TOL};
use crate::network::NormalizedNetwork;
use crate::optimizer::{maximize, Dim, SearchSpec};

/// Quadrature tolerance used inside parameter searches; the reported rate is
/// always re-evaluated at [`DEFAULT_TOL`].
const SEARCH_TOL: f64 = 1e-8;

/// Parameters of BSPDF(f).
///
/// `f[i]` is the decode level of relay `i`: 0 amplifies every symbol, 1
/// decodes the burst pattern and amplifies inside bursts, 2 decodes and
/// re-encodes the source symbols.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BspdfParams {
    pub delta: f64,
    pub sigma2: f64,
    pub kappa: Vec<f64>,
    pub f: Vec<u8>,
}

impl BspdfParams {
    /// All relays at decode level 1.
    pub fn binary(delta: f64, sigma2: f64, kappa: Vec<f64>) -> Self {
        let f = vec![1; kappa.len()];
        BspdfParams {
            delta,
            sigma2,
            kappa,
            f,
        }
    }

    pub fn validate(&self, net: &NormalizedNetwork) -> Result<()> {
        let n = net.n_relays();
        if self.kappa.len() != n || self.f.len() != n {
            return Err(RelayError::domain("κ and f need one entry per relay"));
        }
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(RelayError::domain(format!("δ = {} must lie in (0, 1]", self.delta)));
        }
        if !self.sigma2.is_finite() || self.sigma2 < 0.0 {
            return Err(RelayError::domain(format!(
                "σ² = {} must be finite and non-negative",
                self.sigma2
            )));
        }
        if self.delta * self.sigma2 >= 1.0 {
            return Err(RelayError::domain("violated δσ² < 1"));
        }
        if self.f.iter().any(|&l| l > 2) || self.f.windows(2).any(|w| w[0] > w[1]) {
            return Err(RelayError::domain(format!(
                "decode map {:?} must be non-decreasing with levels 0, 1, 2",
                self.f
            )));
        }
        if self.f.iter().all(|&l| l == 0) {
            return Err(RelayError::domain("decode map with every relay at level 0 is plain AF"));
        }
        if self.f.contains(&0) && !self.f.contains(&1) {
            return Err(RelayError::domain(format!(
                "decode map {:?} has level-0 relays but no level-1 relay",
                self.f
            )));
        }
        for (i, ((&k, &g), &l)) in self.kappa.iter().zip(net.g()).zip(&self.f).enumerate() {
            if !k.is_finite() || k < 0.0 {
                return Err(RelayError::domain(format!(
                    "κ[{i}] = {k} must be finite and non-negative"
                )));
            }
            match l {
                0 if k * (self.delta * g * self.sigma2 + 1.0) >= 1.0 => {
                    return Err(RelayError::domain(format!("violated κ[{i}](δg[{i}]σ² + 1) < 1")));
                }
                1 if self.delta * k * (g * self.sigma2 + 1.0) >= 1.0 => {
                    return Err(RelayError::domain(format!("violated δκ[{i}](g[{i}]σ² + 1) < 1")));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Mutual-information terms entering the BSPDF(f) rate constraints, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BspdfTerms {
    /// `I(B; Yᵢ)` at the weakest relay that decodes the burst pattern.
    pub i_b_relay: f64,
    /// `I(X_S; Yᵢ | B)` at the weakest level-2 relay, if any.
    pub i_xs_relay: Option<f64>,
    /// `I(X_S; Y_D | B)`.
    pub i_xs_dest: f64,
    /// `I(B; Y_D)`, so that `I(B, X_S; Y_D) = i_b_dest + i_xs_dest`.
    pub i_b_dest: f64,
}

impl BspdfTerms {
    /// `(R₁, R₂)` maximizing the sum rate.
    pub fn split(&self) -> (f64, f64) {
        let r2 = self.i_xs_relay.map_or(self.i_xs_dest, |b| b.min(self.i_xs_dest));
        let sum = (self.i_b_relay + r2).min(self.i_b_dest + self.i_xs_dest);
        (sum - r2, r2)
    }

    fn active(&self) -> Vec<String> {
        let mut out = Vec::new();
        match self.i_xs_relay {
            Some(b) if b < self.i_xs_dest => out.push("R2<I(XS;Yi|B)".to_string()),
            _ => out.push("R2<I(XS;YD|B)".to_string()),
        }
        let (r1, r2) = self.split();
        if r1 + r2 >= self.i_b_dest + self.i_xs_dest {
            out.push("R1+R2<I(B,XS;YD)".to_string());
        }
        if r1 >= self.i_b_relay {
            out.push("R1<I(B;Yi)".to_string());
        }
        out
    }
}

fn bspdf_terms_tol(net: &NormalizedNetwork, p: &BspdfParams, tol: f64) -> Result<BspdfTerms> {
    p.validate(net)?;
    let w = [1.0 - p.delta, p.delta];
    let mut amp = 0.0;
    let mut noise_off = 1.0;
    let mut noise_on = 1.0;
    for (((&k, &g), &h), &l) in p.kappa.iter().zip(net.g()).zip(net.h()).zip(&p.f) {
        match l {
            0 => {
                amp += (k * h * g).sqrt();
                noise_off += k * h;
                noise_on += k * h;
            }
            1 => {
                amp += (k * h * g).sqrt();
                noise_on += k * h;
            }
            _ => amp += h.sqrt(),
        }
    }
    let signal = amp * amp * p.sigma2;
    let first_decoder = p.f.iter().position(|&l| l >= 1).expect("validated");
    let g_b = net.g()[first_decoder];
    let i_b_relay = mi_label_tol(&w, &[0.0, g_b * p.sigma2], 1.0, MiMethod::Exact, tol)?;
    let i_xs_relay =
        p.f.iter()
            .position(|&l| l == 2)
            .map(|i| p.delta * half_log2_1p(net.g()[i] * p.sigma2));
    let i_xs_dest = mi_conditional_gaussian(&w, &[0.0, signal], noise_on);
    let i_b_dest = mi_label_tol(
        &w,
        &[0.0, signal + noise_on - noise_off],
        noise_off,
        MiMethod::Exact,
        tol,
    )?;
    Ok(BspdfTerms {
        i_b_relay,
        i_xs_relay,
        i_xs_dest,
        i_b_dest,
    })
}

/// The mutual-information terms of BSPDF(f) at fixed parameters.
pub fn bspdf_terms(net: &NormalizedNetwork, params: &BspdfParams) -> Result<BspdfTerms> {
    bspdf_terms_tol(net, params, DEFAULT_TOL)
}

fn bspdf_result(net: &NormalizedNetwork, params: BspdfParams, on_boundary: bool) -> Result<RateResult> {
    let terms = bspdf_terms(net, &params)?;
    let (r1, r2) = terms.split();
    Ok(RateResult {
        rate_bits: r1 + r2,
        rate_split: Some((r1, r2)),
        active_constraints: terms.active(),
        params: SchemeParams::Bspdf(params),
        supremum_on_boundary: on_boundary,
    })
}

/// BSPDF rate at fixed parameters; every relay must be at decode level 1.
pub fn rate_bspdf(net: &NormalizedNetwork, params: &BspdfParams) -> Result<RateResult> {
    if params.f.iter().any(|&l| l != 1) {
        return Err(RelayError::domain(
            "BSPDF requires every relay at decode level 1; use rate_bspdf_f",
        ));
    }
    bspdf_result(net, params.clone(), false)
}

/// BSPDF(f) rate at fixed parameters and decode map.
pub fn rate_bspdf_f(net: &NormalizedNetwork, params: &BspdfParams) -> Result<RateResult> {
    bspdf_result(net, params.clone(), false)
}

/// BSPDF maximized over `δ`, `σ²` and `κ`.
///
/// Searches `δ`, the used source power `u = δσ²` and per-relay power
/// fractions `tᵢ = δκᵢ(gᵢσ² + 1)`, starting from the bursty-AF optimum.
pub fn rate_bspdf_opt(net: &NormalizedNetwork) -> Result<RateResult> {
    let shared = net.is_symmetric();
    let kd = if shared { 1 } else { net.n_relays() };
    let params_of = |x: &[f64]| -> BspdfParams {
        let (delta, sigma2) = (x[0], x[1] / x[0]);
        let kappa = (0..net.n_relays())
            .map(|i| x[2 + if shared { 0 } else { i }] / (delta * (net.g()[i] * sigma2 + 1.0)))
            .collect();
        BspdfParams::binary(delta, sigma2, kappa)
    };
    let objective = |x: &[f64]| -> f64 {
        bspdf_terms_tol(net, &params_of(x), SEARCH_TOL)
            .map(|t| {
                let (r1, r2) = t.split();
                r1 + r2
            })
            .unwrap_or(f64::NEG_INFINITY)
    };

    let baf = rate_baf(net)?;
    let SchemeParams::Baf(bp) = &baf.params else {
        unreachable!()
    };
    let baf_t: Vec<f64> = bp.kappa.iter().zip(net.g()).map(|(k, g)| k * (bp.delta + g)).collect();
    let mut seed = vec![bp.delta, 1.0];
    seed.extend(if shared { vec![baf_t[0]] } else { baf_t });

    let mut dims = vec![Dim::log(1e-6, 1.0), Dim::linear(0.0, 1.0)];
    dims.extend(vec![Dim::linear(0.0, 1.0); kd]);
    let spec = SearchSpec::new(dims).starts(8).max_evals(600).with_seed_point(seed);
    let opt = maximize(objective, &spec)?;
    bspdf_result(net, params_of(&opt.argmax), opt.on_boundary())
}

/// Parameters of TSPDF: burst probabilities, variances and per-relay
/// amplification powers for the two non-zero first-layer symbols.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TspdfParams {
    pub delta1: f64,
    pub delta2: f64,
    pub sigma2_1: f64,
    pub sigma2_2: f64,
    pub kappa1: Vec<f64>,
    pub kappa2: Vec<f64>,
}

impl TspdfParams {
    pub fn validate(&self, net: &NormalizedNetwork) -> Result<()> {
        let n = net.n_relays();
        if self.kappa1.len() != n || self.kappa2.len() != n {
            return Err(RelayError::domain("κ₁ and κ₂ need one entry per relay"));
        }
        if !(self.delta1 > 0.0 && self.delta2 > 0.0 && self.delta1 + self.delta2 <= 1.0) {
            return Err(RelayError::domain("need δ₁, δ₂ > 0 with δ₁ + δ₂ ≤ 1"));
        }
        for (name, v) in [("σ₁²", self.sigma2_1), ("σ₂²", self.sigma2_2)] {
            if !v.is_finite() || v < 0.0 {
                return Err(RelayError::domain(format!(
                    "{name} = {v} must be finite and non-negative"
                )));
            }
        }
        if self.delta1 * self.sigma2_1 + self.delta2 * self.sigma2_2 >= 1.0 {
            return Err(RelayError::domain("violated δ₁σ₁² + δ₂σ₂² < 1"));
        }
        for i in 0..n {
            let (k1, k2, g) = (self.kappa1[i], self.kappa2[i], net.g()[i]);
            if !k1.is_finite() || !k2.is_finite() || k1 < 0.0 || k2 < 0.0 {
                return Err(RelayError::domain(format!(
                    "κ[{i}] entries must be finite and non-negative"
                )));
            }
            if self.delta1 * k1 * (g * self.sigma2_1 + 1.0) + self.delta2 * k2 * (g * self.sigma2_2 + 1.0) >= 1.0 {
                return Err(RelayError::domain(format!(
                    "violated δ₁κ₁[{i}](g[{i}]σ₁² + 1) + δ₂κ₂[{i}](g[{i}]σ₂² + 1) < 1"
                )));
            }
        }
        Ok(())
    }
}

/// Mutual-information terms of TSPDF, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TspdfTerms {
    /// `I(T; Y₁)` at the weakest relay.
    pub i_t_relay: f64,
    /// `I(X_S; Y_D | T)`.
    pub i_xs_dest: f64,
    /// `I(T; Y_D)`.
    pub i_t_dest: f64,
}

impl TspdfTerms {
    pub fn split(&self) -> (f64, f64) {
        (self.i_t_relay.min(self.i_t_dest), self.i_xs_dest)
    }
}

fn tspdf_terms_tol(net: &NormalizedNetwork, p: &TspdfParams, tol: f64) -> Result<TspdfTerms> {
    p.validate(net)?;
    let w = [1.0 - p.delta1 - p.delta2, p.delta1, p.delta2];
    let branch = |kappa: &[f64], sigma2: f64| -> (f64, f64) {
        let mut amp = 0.0;
        let mut noise = 1.0;
        for ((&k, &g), &h) in kappa.iter().zip(net.g()).zip(net.h()) {
            amp += (k * h * g).sqrt();
            noise += k * h;
        }
        (amp * amp * sigma2, noise)
    };
    let (s1, n1) = branch(&p.kappa1, p.sigma2_1);
    let (s2, n2) = branch(&p.kappa2, p.sigma2_2);
    let g1 = net.g_min();
    let i_t_relay = mi_label_tol(&w, &[0.0, g1 * p.sigma2_1, g1 * p.sigma2_2], 1.0, MiMethod::Exact, tol)?;
    let i_xs_dest = mi_conditional_gaussian(&w, &[0.0, s1 / n1, s2 / n2], 1.0);
    let i_t_dest = mi_label_tol(&w, &[0.0, s1 + n1 - 1.0, s2 + n2 - 1.0], 1.0, MiMethod::Exact, tol)?;
    Ok(TspdfTerms {
        i_t_relay,
        i_xs_dest,
        i_t_dest,
    })
}

/// The mutual-information terms of TSPDF at fixed parameters.
pub fn tspdf_terms(net: &NormalizedNetwork, params: &TspdfParams) -> Result<TspdfTerms> {
    tspdf_terms_tol(net, params, DEFAULT_TOL)
}

fn tspdf_result(net: &NormalizedNetwork, params: TspdfParams, on_boundary: bool) -> Result<RateResult> {
    let t = tspdf_terms(net, &params)?;
    let (r1, r2) = t.split();
    let mut active = vec!["R2<I(XS;YD|T)".to_string()];
    active.push(
        if t.i_t_relay <= t.i_t_dest {
            "R1<I(T;Y1)"
        } else {
            "R1+R2<I(T,XS;YD)"
        }
        .to_string(),
    );
    Ok(RateResult {
        rate_bits: r1 + r2,
        rate_split: Some((r1, r2)),
        params: SchemeParams::Tspdf(params),
        active_constraints: active,
        supremum_on_boundary: on_boundary,
    })
}

/// TSPDF rate at fixed parameters.
pub fn rate_tspdf(net: &NormalizedNetwork, params: &TspdfParams) -> Result<RateResult> {
    tspdf_result(net, params.clone(), false)
}

/// TSPDF maximized over all parameters, starting from the BSPDF optimum split
/// into two identical halves.
///
/// Searches `δ₁, δ₂`, the used source power `u` and its split `p`, and per
/// relay the used power `t` and its split `w`.
pub fn rate_tspdf_opt(net: &NormalizedNetwork) -> Result<RateResult> {
    let shared = net.is_symmetric();
    let n = net.n_relays();
    let kd = if shared { 1 } else { n };
    let params_of = |x: &[f64]| -> Option<TspdfParams> {
        let (d1, d2, u, p) = (x[0], x[1], x[2], x[3]);
        if d1 + d2 > 1.0 {
            return None;
        }
        let (s1, s2) = (u * p / d1, u * (1.0 - p) / d2);
        let mut kappa1 = Vec::with_capacity(n);
        let mut kappa2 = Vec::with_capacity(n);
        for i in 0..n {
            let j = if shared { 0 } else { i };
            let (t, w) = (x[4 + 2 * j], x[5 + 2 * j]);
            let g = net.g()[i];
            kappa1.push(t * w / (d1 * (g * s1 + 1.0)));
            kappa2.push(t * (1.0 - w) / (d2 * (g * s2 + 1.0)));
        }
        Some(TspdfParams {
            delta1: d1,
            delta2: d2,
            sigma2_1: s1,
            sigma2_2: s2,
            kappa1,
            kappa2,
        })
    };
    let objective = |x: &[f64]| -> f64 {
        params_of(x)
            .and_then(|p| tspdf_terms_tol(net, &p, SEARCH_TOL).ok())
            .map(|t| {
                let (r1, r2) = t.split();
                r1 + r2
            })
            .unwrap_or(f64::NEG_INFINITY)
    };

    let bspdf = rate_bspdf_opt(net)?;
    let SchemeParams::Bspdf(bp) = &bspdf.params else {
        unreachable!()
    };
    let mut seed = vec![bp.delta / 2.0, bp.delta / 2.0, bp.delta * bp.sigma2, 0.5];
    for i in 0..kd {
        let t = bp.delta * bp.kappa[i] * (net.g()[i] * bp.sigma2 + 1.0);
        seed.extend([t, 0.5]);
    }

    let mut dims = vec![
        Dim::log(1e-6, 1.0),
        Dim::log(1e-6, 1.0),
        Dim::linear(0.0, 1.0),
        Dim::linear(0.0, 1.0),
    ];
    for _ in 0..kd {
        dims.extend([Dim::linear(0.0, 1.0), Dim::linear(0.0, 1.0)]);
    }
    let spec = SearchSpec::new(dims).starts(8).max_evals(800).with_seed_point(seed);
    let opt = maximize(objective, &spec)?;
    let params =
        params_of(&opt.argmax).ok_or_else(|| RelayError::Infeasible("TSPDF search left the simplex".into()))?;
    let result = tspdf_result(net, params, opt.on_boundary())?;
    if result.rate_bits < bspdf.rate_bits {
        // the seed collapses onto the BSPDF optimum only up to search tolerance
        let d = bp.delta / 2.0;
        let half = TspdfParams {
            delta1: d,
            delta2: d,
            sigma2_1: bp.sigma2,
            sigma2_2: bp.sigma2,
            kappa1: bp.kappa.clone(),
            kappa2: bp.kappa.clone(),
        };
        return tspdf_result(net, half, bspdf.supremum_on_boundary);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussmix::{entropy_quadrature, gaussian_entropy_bits, GaussianMixture};

    fn unit() -> NormalizedNetwork {
        NormalizedNetwork::symmetric(2, 1.0, 1.0).unwrap()
    }

    fn oracle_mi(weights: &[f64], total_variances: &[f64]) -> f64 {
        let mix = GaussianMixture::new(weights.to_vec(), total_variances.to_vec()).unwrap();
        let cond: f64 = weights
            .iter()
            .zip(total_variances)
            .map(|(w, v)| w * gaussian_entropy_bits(*v))
            .sum();
        entropy_quadrature(&mix, 1e-12).unwrap() - cond
    }

    #[test]
    fn spec_point_matches_oracle() {
        let net = unit();
        let p = BspdfParams::binary(0.5, 1.9, vec![0.6, 0.6]);
        let t = bspdf_terms(&net, &p).unwrap();
        assert!((t.i_b_relay - oracle_mi(&[0.5, 0.5], &[1.0, 2.9])).abs() < 1e-8);
        // destination: on-burst variance (2·√0.6)²·1.9 + 2·0.6 + 1
        let on = 4.0 * 0.6 * 1.9 + 1.2 + 1.0;
        assert!((t.i_b_dest - oracle_mi(&[0.5, 0.5], &[1.0, on])).abs() < 1e-8);
        let cond = 0.5 * half_log2_1p(4.0 * 0.6 * 1.9 / 2.2);
        assert!((t.i_xs_dest - cond).abs() < 1e-14);
    }

    #[test]
    fn silent_relays_give_zero() {
        let net = unit();
        let r = rate_bspdf(&net, &BspdfParams::binary(0.5, 1.0, vec![0.0, 0.0])).unwrap();
        assert!(r.rate_bits.abs() < 1e-9);
        let r = rate_bspdf(&net, &BspdfParams::binary(0.5, 0.0, vec![0.5, 0.5])).unwrap();
        assert!(r.rate_bits.abs() < 1e-9);
    }

    #[test]
    fn power_constraints_are_named() {
        let net = unit();
        let e = rate_bspdf(&net, &BspdfParams::binary(0.5, 2.0, vec![0.1, 0.1])).unwrap_err();
        assert!(e.to_string().contains("δσ² < 1"));
        let e = rate_bspdf(&net, &BspdfParams::binary(0.5, 1.0, vec![0.1, 1.0])).unwrap_err();
        assert!(e.to_string().contains("δκ[1](g[1]σ² + 1) < 1"), "{e}");
    }

    #[test]
    fn near_power_boundary_is_finite() {
        let net = unit();
        let r = rate_bspdf(&net, &BspdfParams::binary(0.5, 2.0 - 1e-12, vec![0.4, 0.4])).unwrap();
        assert!(r.rate_bits.is_finite());
    }

    #[test]
    fn decode_maps() {
        let net = unit();
        let p = |f: Vec<u8>| BspdfParams {
            delta: 0.5,
            sigma2: 1.0,
            kappa: vec![0.3, 0.3],
            f,
        };
        assert!(rate_bspdf_f(&net, &p(vec![0, 0])).is_err());
        assert!(rate_bspdf_f(&net, &p(vec![0, 2])).is_err());
        assert!(rate_bspdf_f(&net, &p(vec![2, 1])).is_err());
        assert!(rate_bspdf_f(&net, &p(vec![0, 1])).is_ok());
        assert!(rate_bspdf(&net, &p(vec![1, 2])).is_err());
        let same = rate_bspdf_f(&net, &p(vec![1, 1])).unwrap();
        let direct = rate_bspdf(&net, &p(vec![1, 1])).unwrap();
        assert_eq!(same.rate_bits, direct.rate_bits);
    }

    #[test]
    fn all_retransmitting_with_full_duty_is_df_like() {
        let net = NormalizedNetwork::symmetric(2, 3.0, 1.0).unwrap();
        let p = BspdfParams {
            delta: 1.0,
            sigma2: 1.0 - 1e-12,
            kappa: vec![0.0, 0.0],
            f: vec![2, 2],
        };
        let t = bspdf_terms(&net, &p).unwrap();
        assert!(t.i_b_relay.abs() < 1e-12);
        let (r1, r2) = t.split();
        assert!(r1.abs() < 1e-12);
        // weakest relay ½log₂(1+3) against beamformed ½log₂(1+4)
        assert!((r2 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mixed_map_terms_match_oracle() {
        let net = NormalizedNetwork::new(vec![0.01, 0.04], vec![0.04, 0.01]).unwrap();
        let p = BspdfParams {
            delta: 0.1,
            sigma2: 9.0,
            kappa: vec![0.9, 0.0],
            f: vec![1, 2],
        };
        let t = bspdf_terms(&net, &p).unwrap();
        assert!((t.i_b_relay - oracle_mi(&[0.9, 0.1], &[1.0, 1.0 + 0.01 * 9.0])).abs() < 1e-8);
        let amp = (0.9f64 * 0.04 * 0.01).sqrt() + 0.01f64.sqrt();
        let noise_on = 1.0 + 0.9 * 0.04;
        assert!((t.i_b_dest - oracle_mi(&[0.9, 0.1], &[1.0, amp * amp * 9.0 + noise_on])).abs() < 1e-8);
        assert!((t.i_xs_relay.unwrap() - 0.1 * half_log2_1p(0.04 * 9.0)).abs() < 1e-15);
    }

    #[test]
    fn ternary_degenerates_to_binary() {
        let net = NormalizedNetwork::new(vec![0.5, 1.5], vec![1.0, 0.7]).unwrap();
        let b = rate_bspdf(&net, &BspdfParams::binary(0.4, 2.0, vec![0.5, 0.3])).unwrap();
        let t = rate_tspdf(
            &net,
            &TspdfParams {
                delta1: 0.4 - 1e-13,
                delta2: 1e-13,
                sigma2_1: 2.0,
                sigma2_2: 2.0,
                kappa1: vec![0.5, 0.3],
                kappa2: vec![0.5, 0.3],
            },
        )
        .unwrap();
        assert!(
            (b.rate_bits - t.rate_bits).abs() < 1e-9,
            "{} vs {}",
            b.rate_bits,
            t.rate_bits
        );
    }

    #[test]
    fn ternary_silent_source() {
        let net = unit();
        let p = TspdfParams {
            delta1: 0.2,
            delta2: 0.3,
            sigma2_1: 0.0,
            sigma2_2: 0.0,
            kappa1: vec![0.5, 0.5],
            kappa2: vec![0.5, 0.5],
        };
        assert!(rate_tspdf(&net, &p).unwrap().rate_bits.abs() < 1e-9);
    }

    #[test]
    fn optimized_bspdf_beats_baf() {
        let net = NormalizedNetwork::symmetric(2, 0.05, 0.05).unwrap();
        let baf = rate_baf(&net).unwrap().rate_bits;
        let r = rate_bspdf_opt(&net).unwrap();
        assert!(r.rate_bits >= baf - 1e-9);
        let cut = crate::bounds::cutset_diamond(&net).unwrap().bound_bits;
        assert!(r.rate_bits <= cut);
    }
}
