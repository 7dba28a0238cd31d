//! Curve sweeps over `x = h/g`, figure presets, and the CSV format shared
//! with plotting tools.
//!
//! Every CSV has the header `x,scheme,y,params_json,boundary_flag`, one row
//! per `(x, scheme)`, rows sorted by `x` then `scheme`, floats printed with
//! 17 significant digits and LF line endings.

use std::io::{Read, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::asymptotic::{
    abaf, abaf_asym, abafdf, abspdf_asym11, abspdf_asym12, abspdf_sym2, abspdf_symn, acutset_asym, acutset_sym2,
    acutset_symn, adf, adf_asym, atspdf_sym2, log_grid, timeshare_envelope, AsymptoticParams, CurvePoint,
    TabulatedCurve,
};
use crate::energy::{ebit_ratio_curve, EnergyScheme};
use crate::error::{RelayError, Result};

/// Column header of every sweep CSV.
pub const CSV_HEADER: [&str; 5] = ["x", "scheme", "y", "params_json", "boundary_flag"];

/// Network family a sweep runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Symmetric diamond; `y = rate/g`.
    Sym2,
    /// Symmetric `N`-relay network; `y = rate/g`.
    SymN,
    /// Asymmetric diamond; `y = rate/√(gh)`.
    Asym2,
    /// Energy-per-bit upper/lower ratio of the symmetric diamond.
    Energy,
}

impl FromStr for Family {
    type Err = RelayError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym2" => Ok(Family::Sym2),
            "symN" | "symn" => Ok(Family::SymN),
            "asym2" => Ok(Family::Asym2),
            "energy" => Ok(Family::Energy),
            _ => Err(RelayError::usage(format!(
                "unknown family '{s}' (expected sym2, symN, asym2 or energy)"
            ))),
        }
    }
}

impl Family {
    pub fn schemes(self) -> &'static [&'static str] {
        match self {
            Family::Sym2 => &[
                "cutset",
                "df",
                "baf",
                "bspdf",
                "bspdf_r1",
                "bspdf_r2",
                "tspdf",
                "ts_df_baf",
                "ts_bspdf",
            ],
            Family::SymN => &["cutset", "df", "baf", "bspdf"],
            Family::Asym2 => &["cutset", "df", "baf", "bspdf11", "bafdf", "bspdf12"],
            Family::Energy => &["df", "baf", "bspdf"],
        }
    }
}

/// A sweep request.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepJob {
    pub family: Family,
    pub schemes: Vec<String>,
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub log_spaced: bool,
    pub n: usize,
    pub seed: u64,
}

impl SweepJob {
    pub fn new(family: Family, schemes: &[&str]) -> Self {
        SweepJob {
            family,
            schemes: schemes.iter().map(|s| s.to_string()).collect(),
            x_min: 1e-2,
            x_max: 1e2,
            points: 81,
            log_spaced: true,
            n: 2,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_min > 0.0 && self.x_min < self.x_max && self.x_max.is_finite()) {
            return Err(RelayError::usage(format!(
                "need 0 < x-min < x-max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.points < 2 {
            return Err(RelayError::usage("need at least 2 points"));
        }
        if self.n < 2 {
            return Err(RelayError::usage("need N ≥ 2"));
        }
        if self.schemes.is_empty() {
            return Err(RelayError::usage("no schemes requested"));
        }
        for s in &self.schemes {
            if !self.family.schemes().contains(&s.as_str()) {
                return Err(RelayError::usage(format!(
                    "unknown scheme '{s}' for this family (expected one of {})",
                    self.family.schemes().join(", ")
                )));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        if self.log_spaced {
            log_grid(self.x_min, self.x_max, self.points)
        } else {
            let step = (self.x_max - self.x_min) / (self.points - 1) as f64;
            (0..self.points)
                .map(|i| {
                    if i == self.points - 1 {
                        self.x_max
                    } else {
                        self.x_min + step * i as f64
                    }
                })
                .collect()
        }
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub x: f64,
    pub scheme: String,
    pub y: f64,
    pub params_json: String,
    pub boundary_flag: bool,
}

impl Row {
    pub fn from_point(p: &CurvePoint) -> Result<Self> {
        Ok(Row {
            x: p.x,
            scheme: p.scheme.clone(),
            y: p.y,
            params_json: serde_json::to_string(&p.params).map_err(|e| RelayError::Io(e.to_string()))?,
            boundary_flag: p.boundary,
        })
    }
}

fn point_for(family: Family, scheme: &str, x: f64, n: usize, seed: u64) -> Result<CurvePoint> {
    let relabel = |mut p: CurvePoint, y: f64| {
        p.scheme = scheme.to_string();
        p.y = y;
        p
    };
    match (family, scheme) {
        (Family::Sym2, "cutset") => acutset_sym2(x),
        (Family::Sym2, "df") => adf(x, 2),
        (Family::Sym2, "baf") => abaf(x, 2, seed),
        (Family::Sym2, "bspdf") => abspdf_sym2(x, seed),
        (Family::Sym2, "bspdf_r1") => {
            let p = abspdf_sym2(x, seed)?;
            let y = p.params.split.unwrap().0;
            Ok(relabel(p, y))
        }
        (Family::Sym2, "bspdf_r2") => {
            let p = abspdf_sym2(x, seed)?;
            let y = p.params.split.unwrap().1;
            Ok(relabel(p, y))
        }
        (Family::Sym2, "tspdf") => atspdf_sym2(x, seed),
        (Family::SymN, "cutset") => acutset_symn(x, n),
        (Family::SymN, "df") => adf(x, n),
        (Family::SymN, "baf") => abaf(x, n, seed),
        (Family::SymN, "bspdf") => abspdf_symn(x, n, seed),
        (Family::Asym2, "cutset") => acutset_asym(x),
        (Family::Asym2, "df") => adf_asym(x),
        (Family::Asym2, "baf") => abaf_asym(x, seed),
        (Family::Asym2, "bspdf11") => abspdf_asym11(x, seed),
        (Family::Asym2, "bafdf") => abafdf(x, seed),
        (Family::Asym2, "bspdf12") => abspdf_asym12(x, seed),
        _ => Err(RelayError::usage(format!(
            "scheme '{scheme}' is not a pure curve of this family"
        ))),
    }
}

/// Lattice on which the pure curves are tabulated for chord searches. It is
/// fixed so that a timeshared value does not depend on the sweep range.
pub const CHORD_LATTICE: (f64, f64, usize) = (1e-4, 1e4, 481);

fn timeshared(scheme: &str, xs: &[f64], seed: u64) -> Result<Vec<CurvePoint>> {
    let (lo, hi, points) = CHORD_LATTICE;
    let mut lattice = log_grid(lo, hi, points);
    lattice.push(0.25);
    lattice.sort_by(f64::total_cmp);
    lattice.dedup();
    let pure = |name: &str, x: f64| point_for(Family::Sym2, name, x, 2, seed).map(|p| p.y);
    let tab = |name: &str| -> Result<TabulatedCurve> {
        let ys = lattice.par_iter().map(|&x| pure(name, x)).collect::<Result<Vec<_>>>()?;
        TabulatedCurve::new(lattice.clone(), ys)
    };
    let names = match scheme {
        "ts_df_baf" => ["df", "baf"],
        _ => ["bspdf", "bspdf"],
    };
    let a = tab(names[0])?;
    let b = if names[0] == names[1] {
        a.clone()
    } else {
        tab(names[1])?
    };
    xs.par_iter()
        .map(|&x| {
            let (mut y, mut chord) = timeshare_envelope(&a, &b, x)?;
            // the query point itself is a degenerate chord
            for (name, w) in [(names[0], 1.0), (names[1], 0.0)] {
                let v = pure(name, x)?;
                if v > y {
                    (y, chord) = (v, (x, x, w));
                }
            }
            Ok(CurvePoint {
                x,
                y,
                scheme: scheme.to_string(),
                params: AsymptoticParams {
                    chord: Some(chord),
                    ..Default::default()
                },
                boundary: false,
            })
        })
        .collect()
}

/// Computes every `(x, scheme)` point of a job, sorted by `x` then scheme.
pub fn run_job(job: &SweepJob) -> Result<Vec<CurvePoint>> {
    job.validate()?;
    let xs = job.grid();
    let mut out = Vec::with_capacity(xs.len() * job.schemes.len());
    for scheme in &job.schemes {
        let pts = match (job.family, scheme.as_str()) {
            (Family::Energy, s) => {
                let e = match s {
                    "df" => EnergyScheme::Df,
                    "baf" => EnergyScheme::Baf,
                    _ => EnergyScheme::Bspdf,
                };
                ebit_ratio_curve(e, &xs, job.seed)?
            }
            (_, s @ ("ts_df_baf" | "ts_bspdf")) => timeshared(s, &xs, job.seed)?,
            (family, s) => xs
                .par_iter()
                .map(|&x| point_for(family, s, x, job.n, job.seed))
                .collect::<Result<Vec<_>>>()?,
        };
        out.extend(pts);
    }
    sort_points(&mut out);
    Ok(out)
}

fn sort_points(points: &mut [CurvePoint]) {
    points.sort_by(|a, b| a.x.total_cmp(&b.x).then_with(|| a.scheme.cmp(&b.scheme)));
}

/// Figure identifiers understood by [`figure_points`].
pub const FIGURES: [&str; 6] = ["fig3", "fig4", "fig5", "fig6", "fig7", "fig8"];

/// Computes the data behind one figure on the standard 81-point grid (or the
/// grid of `base`, whose family and schemes are replaced).
pub fn figure_points(id: &str, base: &SweepJob) -> Result<Vec<CurvePoint>> {
    let with = |family: Family, schemes: &[&str], n: usize| SweepJob {
        family,
        schemes: schemes.iter().map(|s| s.to_string()).collect(),
        n,
        ..base.clone()
    };
    let mut points = match id {
        "fig3" => run_job(&with(
            Family::Sym2,
            &["cutset", "df", "baf", "bspdf", "ts_df_baf", "ts_bspdf"],
            2,
        ))?,
        "fig4" => run_job(&with(Family::Sym2, &["bspdf", "bspdf_r1", "bspdf_r2"], 2))?,
        "fig5" => run_job(&with(
            Family::Sym2,
            &["cutset", "df", "baf", "bspdf", "ts_bspdf", "tspdf"],
            2,
        ))?,
        "fig6" => {
            let mut all = Vec::new();
            for n in [2, 4, 8] {
                for mut p in run_job(&with(Family::SymN, &["cutset", "baf", "bspdf"], n))? {
                    p.scheme = format!("{}_n{n}", p.scheme);
                    all.push(p);
                }
            }
            all
        }
        "fig7" => run_job(&with(
            Family::Asym2,
            &["cutset", "df", "baf", "bspdf11", "bafdf", "bspdf12"],
            2,
        ))?,
        "fig8" => run_job(&with(Family::Energy, &["baf", "df", "bspdf"], 2))?,
        _ => {
            return Err(RelayError::usage(format!(
                "unknown figure '{id}' (expected one of {})",
                FIGURES.join(", ")
            )));
        }
    };
    sort_points(&mut points);
    Ok(points)
}

/// Formats a float with 17 significant digits.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes rows as CSV.
pub fn write_csv<W: Write>(points: &[CurvePoint], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let io = |e: csv::Error| RelayError::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for p in points {
        let row = Row::from_point(p)?;
        w.write_record([
            format_float(row.x),
            row.scheme,
            format_float(row.y),
            row.params_json,
            row.boundary_flag.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads rows written by [`write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<Row>> {
    let mut r = csv::Reader::from_reader(input);
    let io = |e: csv::Error| RelayError::Io(e.to_string());
    let headers = r.headers().map_err(io)?.clone();
    for name in CSV_HEADER {
        if !headers.iter().any(|h| h == name) {
            return Err(RelayError::Io(format!("missing column '{name}'")));
        }
    }
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let (cx, cs, cy, cp, cb) = (
        col("x"),
        col("scheme"),
        col("y"),
        col("params_json"),
        col("boundary_flag"),
    );
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|e| RelayError::Io(format!("bad number '{s}': {e}")))
    };
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(io)?;
        rows.push(Row {
            x: num(&rec[cx])?,
            scheme: rec[cs].to_string(),
            y: num(&rec[cy])?,
            params_json: rec[cp].to_string(),
            boundary_flag: &rec[cb] == "true",
        });
    }
    Ok(rows)
}

/// Energy-ratio rows carry the minimizing power ratio.
fn is_energy_row(r: &Row) -> bool {
    serde_json::from_str::<serde_json::Value>(&r.params_json)
        .map(|v| v.get("gamma1").is_some())
        .unwrap_or(false)
}

/// Checks every achievable-rate row against the cut-set row at the same `x`
/// (and suffix, for multi-network figures). In files without cut-set rows,
/// energy-ratio rows are checked against 1 and other rows are skipped.
/// Returns the number of comparisons made.
pub fn verify_rows(rows: &[Row], rel_tol: f64) -> Result<usize> {
    let mut checked = 0;
    let mut problems = Vec::new();
    let suffix = |s: &str| s.find("_n").map(|i| s[i..].to_string()).unwrap_or_default();
    let has_cutset = rows.iter().any(|r| r.scheme.starts_with("cutset"));
    for r in rows {
        if r.scheme.starts_with("cutset") {
            continue;
        }
        if !has_cutset {
            if !is_energy_row(r) {
                continue;
            }
            checked += 1;
            if r.y < 1.0 - rel_tol {
                problems.push(format!("x={} {}: ratio {} below 1", r.x, r.scheme, r.y));
            }
            continue;
        }
        let tag = format!("cutset{}", suffix(&r.scheme));
        let Some(bound) = rows.iter().find(|c| c.x == r.x && c.scheme == tag) else {
            continue;
        };
        checked += 1;
        if r.y > bound.y * (1.0 + rel_tol) {
            problems.push(format!("x={} {}: {} exceeds cut-set {}", r.x, r.scheme, r.y, bound.y));
        }
    }
    if problems.is_empty() {
        Ok(checked)
    } else {
        Err(RelayError::Check(problems.join("; ")))
    }
}
