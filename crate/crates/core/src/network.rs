//! Physical network description and the normalization that folds powers and
//! noise into the channel gains.
//!
//! A parallel relay network has one source, `N` relays and one destination.
//! Relay `i` hears the source through power gain `g[i]` and reaches the
//! destination with power gain `h[i]`. After normalization every node has unit
//! power and unit noise, so all rate formulas take only `g̃` and `h̃`.

use crate::error::{RelayError, Result};

/// Gains, power limits and noise level of an `N`-relay parallel network.
///
/// Relays are kept sorted by ascending source-to-relay gain; `permutation[k]`
/// is the user-facing (zero-based) index of the relay stored at position `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    g: Vec<f64>,
    h: Vec<f64>,
    p_source: f64,
    p_relay: Vec<f64>,
    n0: f64,
    permutation: Vec<usize>,
}

impl NetworkConfig {
    pub fn new(g: Vec<f64>, h: Vec<f64>, p_source: f64, p_relay: Vec<f64>, n0: f64) -> Result<Self> {
        let n = g.len();
        if n == 0 {
            return Err(RelayError::domain("network needs at least one relay"));
        }
        if h.len() != n || p_relay.len() != n {
            return Err(RelayError::domain(format!(
                "length mismatch: g has {n} entries, h has {}, relay powers {}",
                h.len(),
                p_relay.len()
            )));
        }
        check_gains("g", &g)?;
        check_gains("h", &h)?;
        check_positive("source power", p_source)?;
        check_positive("noise variance", n0)?;
        for (i, &p) in p_relay.iter().enumerate() {
            check_positive(&format!("relay {} power", i + 1), p)?;
        }

        let mut permutation: Vec<usize> = (0..n).collect();
        // stable, so equal gains keep the user order
        permutation.sort_by(|&a, &b| g[a].total_cmp(&g[b]));
        let pick = |v: &[f64]| permutation.iter().map(|&k| v[k]).collect::<Vec<_>>();
        Ok(NetworkConfig {
            g: pick(&g),
            h: pick(&h),
            p_source,
            p_relay: pick(&p_relay),
            n0,
            permutation,
        })
    }

    /// Unit powers and unit noise.
    pub fn unit(g: Vec<f64>, h: Vec<f64>) -> Result<Self> {
        let n = g.len();
        Self::new(g, h, 1.0, vec![1.0; n], 1.0)
    }

    /// Symmetric network with `n` identical relays and unit powers and noise.
    pub fn symmetric(n: usize, g: f64, h: f64) -> Result<Self> {
        Self::unit(vec![g; n], vec![h; n])
    }

    pub fn n_relays(&self) -> usize {
        self.g.len()
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn p_source(&self) -> f64 {
        self.p_source
    }

    pub fn p_relay(&self) -> &[f64] {
        &self.p_relay
    }

    pub fn n0(&self) -> f64 {
        self.n0
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }
}

/// Channel gains of a network with unit powers and unit noise.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedNetwork {
    g_tilde: Vec<f64>,
    h_tilde: Vec<f64>,
    permutation: Vec<usize>,
}

impl NormalizedNetwork {
    /// Builds a normalized network directly; relays are sorted by `g`.
    pub fn new(g: Vec<f64>, h: Vec<f64>) -> Result<Self> {
        normalize(&NetworkConfig::unit(g, h)?)
    }

    pub fn symmetric(n: usize, g: f64, h: f64) -> Result<Self> {
        Self::new(vec![g; n], vec![h; n])
    }

    pub fn n_relays(&self) -> usize {
        self.g_tilde.len()
    }

    pub fn g(&self) -> &[f64] {
        &self.g_tilde
    }

    pub fn h(&self) -> &[f64] {
        &self.h_tilde
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// True when all relays share the same `g` and the same `h`.
    pub fn is_symmetric(&self) -> bool {
        let same = |v: &[f64]| v.iter().all(|&x| x == v[0]);
        same(&self.g_tilde) && same(&self.h_tilde)
    }

    /// Weakest source-to-relay gain.
    pub fn g_min(&self) -> f64 {
        self.g_tilde[0]
    }
}

/// Folds powers and noise into the gains: `g̃ᵢ = gᵢ·P_S/N₀`, `h̃ᵢ = hᵢ·Pᵢ/N₀`.
pub fn normalize(config: &NetworkConfig) -> Result<NormalizedNetwork> {
    let g_tilde: Vec<f64> = config.g.iter().map(|&g| g * config.p_source / config.n0).collect();
    let h_tilde: Vec<f64> = config
        .h
        .iter()
        .zip(&config.p_relay)
        .map(|(&h, &p)| h * p / config.n0)
        .collect();
    check_gains("normalized g", &g_tilde)?;
    check_gains("normalized h", &h_tilde)?;
    Ok(NormalizedNetwork {
        g_tilde,
        h_tilde,
        permutation: config.permutation.clone(),
    })
}

fn check_gains(name: &str, v: &[f64]) -> Result<()> {
    for (i, &x) in v.iter().enumerate() {
        if !x.is_finite() || x < 0.0 {
            return Err(RelayError::domain(format!(
                "{name}[{i}] = {x} must be finite and non-negative"
            )));
        }
    }
    Ok(())
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(RelayError::domain(format!("{name} = {x} must be finite and positive")));
    }
    Ok(())
}
