//! Exact (finite-SNR) achievable rates on a [`NormalizedNetwork`].
//!
//! Parameter vectors (`kappa`, decode levels) are indexed in the network's
//! internal order, i.e. relays sorted by ascending `g`.

mod amplify;
mod superposition;

pub use amplify::{af_rate_at, baf_rate_at, rate_af, rate_baf, BafParams};
pub use superposition::{
    bspdf_terms, rate_bspdf, rate_bspdf_f, rate_bspdf_opt, rate_tspdf, rate_tspdf_opt, tspdf_terms, BspdfParams,
    BspdfTerms, TspdfParams, TspdfTerms,
};

use serde::Serialize;

use crate::network::NormalizedNetwork;

/// Maximizing (or evaluated) parameters of a scheme.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "scheme", rename_all = "lowercase")]
pub enum SchemeParams {
    Df,
    Af { kappa: Vec<f64> },
    Baf(BafParams),
    Bspdf(BspdfParams),
    Tspdf(TspdfParams),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateResult {
    pub rate_bits: f64,
    /// `(R₁, R₂)` for two-layer schemes.
    pub rate_split: Option<(f64, f64)>,
    pub params: SchemeParams,
    /// Rate inequalities that hold with equality at the reported point.
    pub active_constraints: Vec<String>,
    /// The supremum was approached on a (margin-shrunk) face of the search box.
    pub supremum_on_boundary: bool,
}

pub(crate) fn half_log2_1p(x: f64) -> f64 {
    0.5 * x.ln_1p() / std::f64::consts::LN_2
}

/// Decode-and-forward: `½ log₂(1 + min{min gᵢ, (Σ √hᵢ)²})`.
pub fn rate_df(net: &NormalizedNetwork) -> RateResult {
    let g_min = net.g_min();
    let miso: f64 = net.h().iter().map(|h| h.sqrt()).sum::<f64>().powi(2);
    let label = if g_min <= miso {
        "R<½log₂(1+min g)"
    } else {
        "R<½log₂(1+(Σ√h)²)"
    };
    RateResult {
        rate_bits: half_log2_1p(g_min.min(miso)),
        rate_split: None,
        params: SchemeParams::Df,
        active_constraints: vec![label.to_string()],
        supremum_on_boundary: false,
    }
}
