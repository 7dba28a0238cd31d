//! Bounded derivative-free maximization.
//!
//! Every free parameter lives in a box, optionally log-scaled. The box is
//! mapped to the unit cube, shrunk by a margin so strict inequalities hold,
//! and searched by Nelder–Mead from many starting points. Starts come from a
//! seeded, randomly rotated Halton sequence so that the first `k` starts of a
//! run with `2k` starts are the same points.
//!
//! Infeasible points are signalled by the objective returning `-∞`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{RelayError, Result};

/// How a parameter's interval is traversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Scale {
    Linear,
    /// Uniform in `ln x`; both bounds must be positive.
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dim {
    pub lower: f64,
    pub upper: f64,
    pub scale: Scale,
}

impl Dim {
    pub fn linear(lower: f64, upper: f64) -> Self {
        Dim {
            lower,
            upper,
            scale: Scale::Linear,
        }
    }

    pub fn log(lower: f64, upper: f64) -> Self {
        Dim {
            lower,
            upper,
            scale: Scale::Log,
        }
    }

    fn to_natural(self, u: f64) -> f64 {
        match self.scale {
            Scale::Linear => self.lower + u * (self.upper - self.lower),
            Scale::Log => (self.lower.ln() + u * (self.upper.ln() - self.lower.ln())).exp(),
        }
    }

    fn to_unit(self, x: f64) -> f64 {
        let u = match self.scale {
            Scale::Linear => (x - self.lower) / (self.upper - self.lower),
            Scale::Log => (x.ln() - self.lower.ln()) / (self.upper.ln() - self.lower.ln()),
        };
        u.clamp(0.0, 1.0)
    }
}

/// Search box and budget for [`maximize`].
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpec {
    pub dims: Vec<Dim>,
    /// Fraction of each (transformed) side trimmed from both ends.
    pub margin: f64,
    pub starts: usize,
    pub seed: u64,
    /// Relative objective spread at which a simplex counts as converged.
    pub tol: f64,
    pub max_evals: usize,
    /// Extra starting points in natural coordinates, tried before the sequence.
    pub seeds: Vec<Vec<f64>>,
}

impl SearchSpec {
    pub fn new(dims: Vec<Dim>) -> Self {
        SearchSpec {
            dims,
            margin: 1e-9,
            starts: 64,
            seed: 0,
            tol: 1e-10,
            max_evals: 2000,
            seeds: Vec::new(),
        }
    }

    pub fn starts(mut self, starts: usize) -> Self {
        self.starts = starts;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn max_evals(mut self, n: usize) -> Self {
        self.max_evals = n;
        self
    }

    pub fn with_seed_point(mut self, point: Vec<f64>) -> Self {
        self.seeds.push(point);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(RelayError::domain("search space has no dimensions"));
        }
        if self.starts == 0 && self.seeds.is_empty() {
            return Err(RelayError::domain("at least one start is required"));
        }
        for (i, d) in self.dims.iter().enumerate() {
            if !(d.lower < d.upper) || !d.lower.is_finite() || !d.upper.is_finite() {
                return Err(RelayError::domain(format!(
                    "dimension {i}: need lower < upper, got [{}, {}]",
                    d.lower, d.upper
                )));
            }
            if d.scale == Scale::Log && d.lower <= 0.0 {
                return Err(RelayError::domain(format!(
                    "dimension {i}: log scale needs a positive lower bound"
                )));
            }
        }
        for s in &self.seeds {
            if s.len() != self.dims.len() {
                return Err(RelayError::domain("seed point has the wrong dimension"));
            }
        }
        if !(0.0..0.5).contains(&self.margin) {
            return Err(RelayError::domain("margin must lie in [0, 0.5)"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptResult {
    pub value: f64,
    pub argmax: Vec<f64>,
    /// Per dimension: the maximizer sits on a (shrunk) face of the box.
    pub boundary_flags: Vec<bool>,
    pub evals: usize,
}

impl OptResult {
    pub fn on_boundary(&self) -> bool {
        self.boundary_flags.iter().any(|&b| b)
    }
}

/// Maximizes `objective` over the box described by `spec`.
pub fn maximize<F>(objective: F, spec: &SearchSpec) -> Result<OptResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    spec.validate()?;
    let dim = spec.dims.len();
    let lo = spec.margin;
    let hi = 1.0 - spec.margin;

    let mut starts: Vec<Vec<f64>> = spec
        .seeds
        .iter()
        .map(|p| {
            p.iter()
                .zip(&spec.dims)
                .map(|(&x, d)| d.to_unit(x).clamp(lo, hi))
                .collect()
        })
        .collect();
    starts.extend(
        halton_points(dim, spec.starts, spec.seed)
            .into_iter()
            .map(|p| p.into_iter().map(|u| lo + u * (hi - lo)).collect::<Vec<_>>()),
    );

    let cost = |u: &[f64]| -> f64 {
        let x: Vec<f64> = u.iter().zip(&spec.dims).map(|(&v, d)| d.to_natural(v)).collect();
        let v = objective(&x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            -v
        }
    };

    let runs: Vec<(f64, Vec<f64>, usize)> = starts
        .par_iter()
        .map(|s| nelder_mead(&cost, s, lo, hi, spec.tol, spec.max_evals))
        .collect();

    let evals = runs.iter().map(|r| r.2).sum();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for (c, u, _) in runs {
        let better = match &best {
            None => true,
            Some((bc, bu)) => c < *bc || (c == *bc && lexicographic_less(&u, bu)),
        };
        if better {
            best = Some((c, u));
        }
    }
    let (c, u) = best.expect("at least one start");
    if c == f64::INFINITY {
        return Err(RelayError::Infeasible(format!(
            "all {} starts were infeasible",
            starts.len()
        )));
    }
    let pin = 1e-6;
    Ok(OptResult {
        value: -c,
        argmax: u.iter().zip(&spec.dims).map(|(&v, d)| d.to_natural(v)).collect(),
        boundary_flags: u.iter().map(|&v| v - lo <= pin || hi - v <= pin).collect(),
        evals,
    })
}

fn lexicographic_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// First `count` points of a Halton sequence in `[0,1)^dim`, rotated by a
/// seeded random shift (Cranley–Patterson).
pub fn halton_points(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    assert!(
        dim <= PRIMES.len(),
        "Halton sequence supports up to {} dimensions",
        PRIMES.len()
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
    (1..=count as u64)
        .map(|i| {
            (0..dim)
                .map(|d| {
                    let v = radical_inverse(i, PRIMES[d]) + shift[d];
                    v - v.floor()
                })
                .collect()
        })
        .collect()
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

/// Minimizes `cost` from `start`, keeping every vertex inside `[lo, hi]^d`.
/// Restarts from the best vertex with a fresh simplex until a restart stops helping.
fn nelder_mead<C>(cost: &C, start: &[f64], lo: f64, hi: f64, tol: f64, max_evals: usize) -> (f64, Vec<f64>, usize)
where
    C: Fn(&[f64]) -> f64,
{
    let mut evals = 0usize;
    let mut best_x = start.to_vec();
    let mut best_c = cost(&best_x);
    evals += 1;
    let mut step = 0.1;
    loop {
        let (c, x, used) = nm_run(
            cost,
            &best_x,
            best_c,
            step,
            lo,
            hi,
            tol,
            max_evals.saturating_sub(evals),
        );
        evals += used;
        let improved = c < best_c - tol * (1.0 + best_c.abs()) || (best_c == f64::INFINITY && c < f64::INFINITY);
        if c <= best_c {
            best_c = c;
            best_x = x;
        }
        if !improved || evals >= max_evals {
            break;
        }
        step = (step * 0.5).max(1e-3);
    }
    (best_c, best_x, evals)
}

#[allow(clippy::too_many_arguments)]
fn nm_run<C>(
    cost: &C,
    x0: &[f64],
    c0: f64,
    step: f64,
    lo: f64,
    hi: f64,
    tol: f64,
    budget: usize,
) -> (f64, Vec<f64>, usize)
where
    C: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let clamp = |v: &mut Vec<f64>| v.iter_mut().for_each(|x| *x = x.clamp(lo, hi));
    let mut evals = 0usize;
    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(x0.to_vec(), c0)];
    for i in 0..n {
        let mut v = x0.to_vec();
        // step away from the nearer wall
        v[i] += if x0[i] + step <= hi { step } else { -step };
        clamp(&mut v);
        let c = cost(&v);
        evals += 1;
        simplex.push((v, c));
    }

    while evals < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[n].1;
        let spread_ok = best.is_finite() && (worst - best).abs() <= tol * (1.0 + best.abs());
        let diameter = simplex
            .iter()
            .skip(1)
            .map(|(v, _)| {
                v.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if (spread_ok && diameter < 1e-6) || diameter < 1e-13 {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(v, _)| v[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            let mut v: Vec<f64> = centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (c - w))
                .collect();
            clamp(&mut v);
            v
        };

        let xr = along(1.0);
        let cr = cost(&xr);
        evals += 1;
        if cr < simplex[0].1 {
            let xe = along(2.0);
            let ce = cost(&xe);
            evals += 1;
            simplex[n] = if ce < cr { (xe, ce) } else { (xr, cr) };
            continue;
        }
        if cr < simplex[n - 1].1 {
            simplex[n] = (xr, cr);
            continue;
        }
        let (xc, cc) = if cr < simplex[n].1 {
            let x = along(0.5);
            let c = cost(&x);
            (x, c)
        } else {
            let x = along(-0.5);
            let c = cost(&x);
            (x, c)
        };
        evals += 1;
        if cc < simplex[n].1.min(cr) {
            simplex[n] = (xc, cc);
            continue;
        }
        // shrink toward the best vertex
        let x_best = simplex[0].0.clone();
        for k in 1..=n {
            let v: Vec<f64> = simplex[k]
                .0
                .iter()
                .zip(&x_best)
                .map(|(a, b)| b + 0.5 * (a - b))
                .collect();
            let c = cost(&v);
            evals += 1;
            simplex[k] = (v, c);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, c) = simplex.swap_remove(0);
    (c, x, evals)
}
