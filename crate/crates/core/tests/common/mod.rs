//! Dense trapezoid oracle for the mutual-information terms of the
//! superposition schemes. Shares no code with the library's quadrature.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relaylab::schemes::{bspdf_terms, tspdf_terms, BspdfParams, TspdfParams};
use relaylab::NormalizedNetwork;

pub fn gaussian_entropy(v: f64) -> f64 {
    0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * v).log2()
}

/// Entropy in bits of `Σ wⱼ N(0, vⱼ)` by the trapezoid rule on a uniform grid.
pub fn mixture_entropy(w: &[f64], v: &[f64]) -> f64 {
    let s_min = v.iter().copied().fold(f64::INFINITY, f64::min).sqrt();
    let s_max = v.iter().copied().fold(0.0, f64::max).sqrt();
    let step = s_min / 16.0;
    let n = (40.0 * s_max / step).ceil() as usize;
    let ln_f = |y: f64| -> f64 {
        let terms: Vec<f64> = w
            .iter()
            .zip(v)
            .filter(|(&wj, _)| wj > 0.0)
            .map(|(&wj, &vj)| wj.ln() - 0.5 * (2.0 * std::f64::consts::PI * vj).ln() - y * y / (2.0 * vj))
            .collect();
        let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
    };
    let mut sum = 0.0;
    for k in 0..=n {
        let y = k as f64 * step;
        let lf = ln_f(y);
        let weight = if k == 0 { 1.0 } else { 2.0 };
        sum -= weight * lf.exp() * lf;
    }
    sum * step / std::f64::consts::LN_2
}

pub fn label_mi(w: &[f64], v: &[f64]) -> f64 {
    mixture_entropy(w, v) - w.iter().zip(v).map(|(&wj, &vj)| wj * gaussian_entropy(vj)).sum::<f64>()
}

fn half_log2_1p(x: f64) -> f64 {
    0.5 * (1.0 + x).log2()
}

fn random_net(rng: &mut ChaCha8Rng) -> NormalizedNetwork {
    let mut gain = || 10f64.powf(rng.gen_range(-1.0..0.7));
    let g = vec![gain(), gain()];
    let h = vec![gain(), gain()];
    NormalizedNetwork::new(g, h).unwrap()
}

/// One library term next to its oracle value.
#[derive(Debug)]
pub struct Comparison {
    pub case: usize,
    pub term: &'static str,
    pub library: f64,
    pub oracle: f64,
}

impl Comparison {
    pub fn diff(&self) -> f64 {
        (self.library - self.oracle).abs()
    }
}

/// `cases` random feasible BSPDF(f) points on random diamonds.
pub fn bspdf_comparisons(seed: u64, cases: usize) -> Vec<Comparison> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps: [[u8; 2]; 4] = [[1, 1], [1, 2], [0, 1], [2, 2]];
    let mut out = Vec::new();
    for case in 0..cases {
        let net = random_net(&mut rng);
        let delta = rng.gen_range(0.05..0.95);
        let sigma2 = rng.gen_range(0.05..0.95) / delta;
        let f = maps[case % maps.len()].to_vec();
        let kappa: Vec<f64> = net
            .g()
            .iter()
            .map(|&g| {
                let cap = (1.0 / (delta * (g * sigma2 + 1.0))).min(1.0 / (delta * g * sigma2 + 1.0));
                rng.gen_range(0.05..0.95) * cap
            })
            .collect();
        let p = BspdfParams {
            delta,
            sigma2,
            kappa: kappa.clone(),
            f: f.clone(),
        };
        let t = bspdf_terms(&net, &p).unwrap_or_else(|e| panic!("case {case}: {e}"));

        let (g, h) = (net.g(), net.h());
        let mut amp = 0.0;
        let (mut n_off, mut n_on) = (1.0, 1.0);
        for i in 0..2 {
            match f[i] {
                0 => {
                    amp += (kappa[i] * g[i] * h[i]).sqrt();
                    n_off += kappa[i] * h[i];
                    n_on += kappa[i] * h[i];
                }
                1 => {
                    amp += (kappa[i] * g[i] * h[i]).sqrt();
                    n_on += kappa[i] * h[i];
                }
                _ => amp += h[i].sqrt(),
            }
        }
        let signal = amp * amp * sigma2;
        let w = [1.0 - delta, delta];
        let decoder = f.iter().position(|&l| l >= 1).unwrap();
        let mut push = |term, library, oracle| {
            out.push(Comparison {
                case,
                term,
                library,
                oracle,
            })
        };
        push("I(B;Yi)", t.i_b_relay, label_mi(&w, &[1.0, 1.0 + g[decoder] * sigma2]));
        push("I(XS;YD|B)", t.i_xs_dest, delta * half_log2_1p(signal / n_on));
        push("I(B;YD)", t.i_b_dest, label_mi(&w, &[n_off, signal + n_on]));
        match f.iter().position(|&l| l == 2) {
            Some(i) => push("I(XS;Yi|B)", t.i_xs_relay.unwrap(), delta * half_log2_1p(g[i] * sigma2)),
            None => assert!(t.i_xs_relay.is_none()),
        }
    }
    out
}

/// `cases` random feasible TSPDF points on random diamonds.
pub fn tspdf_comparisons(seed: u64, cases: usize) -> Vec<Comparison> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for case in 0..cases {
        let net = random_net(&mut rng);
        let delta1 = rng.gen_range(0.05..0.45);
        let delta2 = rng.gen_range(0.05..0.45);
        let split = rng.gen_range(0.1..0.9);
        let used = rng.gen_range(0.05..0.95);
        let sigma2_1 = used * split / delta1;
        let sigma2_2 = used * (1.0 - split) / delta2;
        let mut kappa1 = Vec::new();
        let mut kappa2 = Vec::new();
        for &g in net.g() {
            let share = rng.gen_range(0.1..0.9);
            let t = rng.gen_range(0.05..0.95);
            kappa1.push(t * share / (delta1 * (g * sigma2_1 + 1.0)));
            kappa2.push(t * (1.0 - share) / (delta2 * (g * sigma2_2 + 1.0)));
        }
        let p = TspdfParams {
            delta1,
            delta2,
            sigma2_1,
            sigma2_2,
            kappa1: kappa1.clone(),
            kappa2: kappa2.clone(),
        };
        let t = tspdf_terms(&net, &p).unwrap_or_else(|e| panic!("case {case}: {e}"));

        let (g, h) = (net.g(), net.h());
        let branch = |kappa: &[f64], sigma2: f64| {
            let amp: f64 = (0..2).map(|i| (kappa[i] * g[i] * h[i]).sqrt()).sum();
            let noise: f64 = 1.0 + (0..2).map(|i| kappa[i] * h[i]).sum::<f64>();
            (amp * amp * sigma2, noise)
        };
        let (s1, n1) = branch(&kappa1, sigma2_1);
        let (s2, n2) = branch(&kappa2, sigma2_2);
        let w = [1.0 - delta1 - delta2, delta1, delta2];
        let mut push = |term, library, oracle| {
            out.push(Comparison {
                case,
                term,
                library,
                oracle,
            })
        };
        push(
            "I(T;Y1)",
            t.i_t_relay,
            label_mi(&w, &[1.0, 1.0 + g[0] * sigma2_1, 1.0 + g[0] * sigma2_2]),
        );
        push(
            "I(XS;YD|T)",
            t.i_xs_dest,
            delta1 * half_log2_1p(s1 / n1) + delta2 * half_log2_1p(s2 / n2),
        );
        push("I(T;YD)", t.i_t_dest, label_mi(&w, &[1.0, s1 + n1, s2 + n2]));
    }
    out
}
