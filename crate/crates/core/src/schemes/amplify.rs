//! Amplify-and-forward and its bursty variant.

use serde::Serialize;

use super::{half_log2_1p, RateResult, SchemeParams};
use crate::error::{RelayError, Result};
use crate::network::NormalizedNetwork;
use crate::optimizer::{maximize, Dim, SearchSpec};

/// Duty cycle and amplification powers of bursty AF.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BafParams {
    pub delta: f64,
    pub kappa: Vec<f64>,
}

impl BafParams {
    /// Checks `0 < δ ≤ 1` and `0 ≤ κᵢ < 1/(δ + gᵢ)`.
    pub fn validate(&self, net: &NormalizedNetwork) -> Result<()> {
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(RelayError::domain(format!(
                "duty cycle δ = {} must lie in (0, 1]",
                self.delta
            )));
        }
        if self.kappa.len() != net.n_relays() {
            return Err(RelayError::domain("one amplification power per relay is required"));
        }
        for (i, (&k, &g)) in self.kappa.iter().zip(net.g()).enumerate() {
            if !k.is_finite() || k < 0.0 {
                return Err(RelayError::domain(format!(
                    "κ[{i}] = {k} must be finite and non-negative"
                )));
            }
            if k * (self.delta + g) >= 1.0 {
                return Err(RelayError::domain(format!("violated κ[{i}](δ + g[{i}]) < 1")));
            }
        }
        Ok(())
    }
}

fn baf_value(net: &NormalizedNetwork, delta: f64, kappa: &[f64]) -> f64 {
    let mut amp = 0.0;
    let mut noise = 1.0;
    for ((&k, &g), &h) in kappa.iter().zip(net.g()).zip(net.h()) {
        amp += (k * g * h / delta).sqrt();
        noise += k * h;
    }
    delta * half_log2_1p(amp * amp / noise)
}

/// AF rate at fixed amplification powers.
pub fn af_rate_at(net: &NormalizedNetwork, kappa: &[f64]) -> Result<f64> {
    baf_rate_at(
        net,
        &BafParams {
            delta: 1.0,
            kappa: kappa.to_vec(),
        },
    )
}

/// BAF rate at fixed parameters.
pub fn baf_rate_at(net: &NormalizedNetwork, params: &BafParams) -> Result<f64> {
    params.validate(net)?;
    Ok(baf_value(net, params.delta, &params.kappa))
}

/// Free amplification variables: one shared `t` on symmetric nets, else one per relay.
fn kappa_dims(net: &NormalizedNetwork) -> usize {
    if net.is_symmetric() {
        1
    } else {
        net.n_relays()
    }
}

fn expand(net: &NormalizedNetwork, t: &[f64]) -> Vec<f64> {
    (0..net.n_relays())
        .map(|i| t[if t.len() == 1 { 0 } else { i }])
        .collect()
}

/// Amplify-and-forward, maximized over `κᵢ ∈ [0, 1/(1+gᵢ))`.
pub fn rate_af(net: &NormalizedNetwork) -> Result<RateResult> {
    let dims = kappa_dims(net);
    let kappa_of = |t: &[f64]| -> Vec<f64> { expand(net, t).iter().zip(net.g()).map(|(t, g)| t / (1.0 + g)).collect() };
    let spec = SearchSpec::new(vec![Dim::linear(0.0, 1.0); dims])
        .starts(16)
        .with_seed_point(vec![1.0; dims]);
    let opt = maximize(|t| baf_value(net, 1.0, &kappa_of(t)), &spec)?;
    let kappa = kappa_of(&opt.argmax);
    Ok(RateResult {
        rate_bits: baf_value(net, 1.0, &kappa),
        rate_split: None,
        params: SchemeParams::Af { kappa },
        active_constraints: vec!["R<I(XS;YD)".to_string()],
        supremum_on_boundary: opt.on_boundary(),
    })
}

/// Bursty AF, maximized over `δ ∈ (0, 1]` and `κᵢ ∈ [0, 1/(δ+gᵢ))`.
pub fn rate_baf(net: &NormalizedNetwork) -> Result<RateResult> {
    let dims = kappa_dims(net);
    let params_of = |x: &[f64]| -> BafParams {
        let delta = x[0];
        let kappa = expand(net, &x[1..])
            .iter()
            .zip(net.g())
            .map(|(t, g)| t / (delta + g))
            .collect();
        BafParams { delta, kappa }
    };
    let mut box_dims = vec![Dim::log(1e-8, 1.0)];
    box_dims.extend(vec![Dim::linear(0.0, 1.0); dims]);
    let spec = SearchSpec::new(box_dims)
        .starts(16)
        .with_seed_point(vec![1.0; dims + 1]);
    let opt = maximize(
        |x| {
            let p = params_of(x);
            baf_value(net, p.delta, &p.kappa)
        },
        &spec,
    )?;
    let mut params = params_of(&opt.argmax);
    let mut on_boundary = opt.on_boundary();
    // δ = 1 is a closed face of the box; the shrunk search cannot reach it
    let af = rate_af(net)?;
    if af.rate_bits > baf_value(net, params.delta, &params.kappa) {
        let SchemeParams::Af { kappa } = af.params else {
            unreachable!()
        };
        params = BafParams { delta: 1.0, kappa };
        on_boundary = af.supremum_on_boundary;
    }
    Ok(RateResult {
        rate_bits: baf_value(net, params.delta, &params.kappa),
        rate_split: None,
        params: SchemeParams::Baf(params),
        active_constraints: vec!["R<δ·I(XS;YD|on)".to_string()],
        supremum_on_boundary: on_boundary,
    })
}
