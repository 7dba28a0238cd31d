//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

mod common;

use std::f64::consts::LN_2;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relaylab::asymptotic::{abaf, abspdf_sym2, abspdf_symn, acutset_sym2, adf, atspdf_sym2, log_grid};
use relaylab::bounds::cutset_diamond;
use relaylab::energy::{ebit_lower, ebit_ratio_curve, ebit_upper_df, worst_case_ratio, EnergyScheme};
use relaylab::gaussmix::{entropy_quadrature, entropy_taylor, GaussianMixture};
use relaylab::schemes::{rate_af, rate_baf, rate_bspdf_opt, rate_df, rate_tspdf_opt};
use relaylab::NormalizedNetwork;

const SEED: u64 = 7;

const REGIME_REL_TOL: f64 = 1e-3;
const REGIME_BUDGET: Duration = Duration::from_secs(10);
const ANCHOR_TOL: f64 = 1e-9;
const ORDER_REL_TOL: f64 = 1e-6;
const TREND_BUDGET: Duration = Duration::from_secs(60);
const SPECIALIZE_TOL: f64 = 1e-9;
const BAF_WORST: (f64, f64) = (2.85, 0.05);
const DF_LIMIT: (f64, f64) = (2.00, 0.01);
const BSPDF_WORST: (f64, f64) = (1.87, 0.05);
const RATIO_ONE_TOL: f64 = 1e-6;
const ENERGY_BUDGET: Duration = Duration::from_secs(300);
const SLOPE: (f64, f64) = (2.0, 0.2);
const ORACLE_TOL: f64 = 1e-8;
const EXACT_REL_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

fn grid() -> Vec<f64> {
    log_grid(1e-2, 1e2, 81)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn budget(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    if t <= limit {
        Ok(format!("{:.1}s", t.as_secs_f64()))
    } else {
        Err(format!("took {:.1}s, budget {}s", t.as_secs_f64(), limit.as_secs()))
    }
}

fn cutset_regime() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for x in [0.05, 0.1, 0.2, 0.25] {
        let target = 2.0 * x;
        let b = abspdf_sym2(x, SEED).map_err(|e| e.to_string())?.y * LN_2;
        let d = adf(x, 2).map_err(|e| e.to_string())?.y * LN_2;
        for (name, v) in [("bspdf", b), ("df", d)] {
            let e = rel(v, target);
            worst = worst.max(e);
            if e > REGIME_REL_TOL {
                return Err(format!("{name} at x={x}: {v} vs {target}"));
            }
        }
    }
    let t = budget(start, REGIME_BUDGET)?;
    Ok(format!("max rel err {worst:.2e}, {t}"))
}

fn anchor() -> Outcome {
    let v = adf(0.25, 2).map_err(|e| e.to_string())?.y;
    let want = 1.0 / (2.0 * LN_2);
    if (v - want).abs() <= ANCHOR_TOL {
        Ok(format!("{v:.9}"))
    } else {
        Err(format!("{v} vs {want}"))
    }
}

fn ordering() -> Outcome {
    let mut checks = 0;
    for x in grid() {
        let cut = acutset_sym2(x).map_err(|e| e.to_string())?.y;
        let bspdf = abspdf_sym2(x, SEED).map_err(|e| e.to_string())?.y;
        let baf = abaf(x, 2, SEED).map_err(|e| e.to_string())?.y;
        let df = adf(x, 2).map_err(|e| e.to_string())?.y;
        let tspdf = atspdf_sym2(x, SEED).map_err(|e| e.to_string())?.y;
        let slack = |v: f64| v * (1.0 + ORDER_REL_TOL);
        let pairs = [
            ("baf<=bspdf", baf, bspdf),
            ("bspdf<=cutset", bspdf, cut),
            ("df<=bspdf", df, bspdf),
            ("bspdf<=tspdf", bspdf, tspdf),
        ];
        for (name, lo, hi) in pairs {
            checks += 1;
            if lo > slack(hi) {
                return Err(format!("{name} at x={x}: {lo} > {hi}"));
            }
        }
    }
    Ok(format!("{checks} comparisons"))
}

fn n_trend() -> Outcome {
    let start = Instant::now();
    let mut gaps = Vec::new();
    for n in [2, 4, 8] {
        let b = abspdf_symn(1.0, n, SEED).map_err(|e| e.to_string())?.y;
        let a = abaf(1.0, n, SEED).map_err(|e| e.to_string())?.y;
        gaps.push((b - a) / a);
    }
    let t = budget(start, TREND_BUDGET)?;
    let detail = format!("gaps {:.4} {:.4} {:.4}, {t}", gaps[0], gaps[1], gaps[2]);
    if gaps[0] > gaps[1] && gaps[1] > gaps[2] {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn specialization() -> Outcome {
    let mut worst: f64 = 0.0;
    for x in grid() {
        let a = abspdf_symn(x, 2, SEED).map_err(|e| e.to_string())?.y;
        let b = abspdf_sym2(x, SEED).map_err(|e| e.to_string())?.y;
        worst = worst.max((a - b).abs());
    }
    if worst <= SPECIALIZE_TOL {
        Ok(format!("max diff {worst:.2e}"))
    } else {
        Err(format!("max diff {worst:.2e}"))
    }
}

fn energy() -> Outcome {
    let start = Instant::now();
    let xs = grid();
    let (x_baf, baf) = worst_case_ratio(EnergyScheme::Baf, &xs, SEED).map_err(|e| e.to_string())?;
    let (x_bspdf, bspdf) = worst_case_ratio(EnergyScheme::Bspdf, &xs, SEED).map_err(|e| e.to_string())?;
    let df = ebit_upper_df(1.0, 1e3, 1.0).map_err(|e| e.to_string())?
        / ebit_lower(1.0, 1e3, 1.0).map_err(|e| e.to_string())?;
    let detail = format!("baf {baf:.4} at x={x_baf:.3}, df(1e3) {df:.4}, bspdf {bspdf:.4} at x={x_bspdf:.3}");
    for (name, v, (want, tol)) in [
        ("baf", baf, BAF_WORST),
        ("df", df, DF_LIMIT),
        ("bspdf", bspdf, BSPDF_WORST),
    ] {
        if (v - want).abs() > tol {
            return Err(format!("{name} {v} outside {want}±{tol}; {detail}"));
        }
    }
    let low: Vec<f64> = xs.iter().copied().filter(|&x| x <= 0.5).collect();
    for scheme in [EnergyScheme::Df, EnergyScheme::Bspdf] {
        for p in ebit_ratio_curve(scheme, &low, SEED).map_err(|e| e.to_string())? {
            if (p.y - 1.0).abs() > RATIO_ONE_TOL {
                return Err(format!("{} ratio {} at x={}", scheme.label(), p.y, p.x));
            }
        }
    }
    let t = budget(start, ENERGY_BUDGET)?;
    Ok(format!("{detail}, {t}"))
}

fn remainder_slope() -> Outcome {
    let deltas = [1e-2, 1e-3, 1e-4];
    let mut pts = Vec::new();
    for &d in &deltas {
        let m = GaussianMixture::new(vec![1.0 - d, d], vec![1.0, 1.5]).map_err(|e| e.to_string())?;
        let q = entropy_quadrature(&m, 1e-14).map_err(|e| e.to_string())?;
        let t = entropy_taylor(&m).map_err(|e| e.to_string())?;
        pts.push((d.ln(), (q - t).abs().ln()));
    }
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / n, sy / n);
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = num / den;
    if (slope - SLOPE.0).abs() <= SLOPE.1 {
        Ok(format!("slope {slope:.3}"))
    } else {
        Err(format!("slope {slope:.3}"))
    }
}

fn oracle() -> Outcome {
    let mut rows = common::bspdf_comparisons(20, 20);
    rows.extend(common::tspdf_comparisons(21, 20));
    let worst = rows.iter().max_by(|a, b| a.diff().total_cmp(&b.diff())).unwrap();
    if worst.diff() <= ORACLE_TOL {
        Ok(format!("{} terms, max diff {:.2e}", rows.len(), worst.diff()))
    } else {
        Err(format!("{worst:?}"))
    }
}

fn exact_regime() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut gain = || 10f64.powf(rng.gen_range(-3.0..1.0));
    for case in 0..50 {
        let net = NormalizedNetwork::new(vec![gain(), gain()], vec![gain(), gain()]).map_err(|e| e.to_string())?;
        let bound = cutset_diamond(&net).map_err(|e| e.to_string())?.bound_bits;
        let af = rate_af(&net).map_err(|e| e.to_string())?.rate_bits;
        let baf = rate_baf(&net).map_err(|e| e.to_string())?.rate_bits;
        if !(af >= 0.0 && baf >= af) {
            return Err(format!("case {case}: af {af}, baf {baf}"));
        }
        let rates = [
            ("df", rate_df(&net).rate_bits),
            ("af", af),
            ("baf", baf),
            ("bspdf", rate_bspdf_opt(&net).map_err(|e| e.to_string())?.rate_bits),
            ("tspdf", rate_tspdf_opt(&net).map_err(|e| e.to_string())?.rate_bits),
        ];
        for (name, r) in rates {
            if r > bound * (1.0 + EXACT_REL_TOL) {
                return Err(format!("case {case}: {name} {r} > cutset {bound}"));
            }
        }
    }
    Ok("50 networks".to_string())
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("relaylab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("fig3-{run}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_relaylab"))
            .args(["figure", "fig3", "--seed", "7", "--out"])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("figure fig3 exited with {status}"));
        }
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    if outputs[0] == outputs[1] {
        Ok(format!("{} bytes", outputs[0].len()))
    } else {
        Err("outputs differ".to_string())
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("cut-set/DF optimality regime", cutset_regime),
        ("anchor point adf(1/4)", anchor),
        ("scheme ordering on 81-point grid", ordering),
        ("N-relay gap trend", n_trend),
        ("N-relay curve specializes to N=2", specialization),
        ("energy-per-bit constants", energy),
        ("entropy expansion remainder slope", remainder_slope),
        ("oracle equivalence", oracle),
        ("exact-regime properties", exact_regime),
        ("determinism of figure fig3", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
