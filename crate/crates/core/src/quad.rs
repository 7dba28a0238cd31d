//! Adaptive Simpson quadrature on a finite interval.

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Sum of the local `|S₂ − S₁| / 15` estimates over accepted panels.
    pub error_estimate: f64,
    /// False when some panel hit the depth cap before meeting its share of the tolerance.
    pub converged: bool,
    pub evals: usize,
}

/// Integrates `f` over `[a, b]` to absolute tolerance `abs_tol`.
///
/// The interval is first split into `initial_panels` equal pieces, each
/// receiving an equal share of the tolerance; each piece is then bisected
/// recursively with Richardson-corrected Simpson estimates.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, abs_tol: f64, initial_panels: usize, max_depth: u32) -> QuadResult
where
    F: Fn(f64) -> f64,
{
    let panels = initial_panels.max(1);
    let width = (b - a) / panels as f64;
    let mut state = State {
        error: 0.0,
        converged: true,
        evals: 0,
    };
    let mut total = 0.0;
    // left endpoint evaluation is shared between neighbouring panels
    let mut fa = f(a);
    state.evals += 1;
    for k in 0..panels {
        let lo = a + width * k as f64;
        let hi = if k + 1 == panels { b } else { lo + width };
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        let fb = f(hi);
        state.evals += 2;
        let whole = simpson(lo, hi, fa, fm, fb);
        total += refine(
            &f,
            lo,
            hi,
            fa,
            fm,
            fb,
            whole,
            abs_tol / panels as f64,
            max_depth,
            &mut state,
        );
        fa = fb;
    }
    QuadResult {
        value: total,
        error_estimate: state.error,
        converged: state.converged,
        evals: state.evals,
    }
}

struct State {
    error: f64,
    converged: bool,
    evals: usize,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32, st: &mut State) -> f64
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    st.evals += 2;
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let diff = left + right - whole;
    if diff.abs() <= 15.0 * tol {
        st.error += diff.abs() / 15.0;
        return left + right + diff / 15.0;
    }
    if depth == 0 || m <= a || m >= b {
        st.converged = false;
        st.error += diff.abs() / 15.0;
        return left + right + diff / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, st)
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, st)
}
