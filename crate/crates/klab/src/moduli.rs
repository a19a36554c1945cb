//! Moduli of smoothness, least concave majorants, and sup-norms.
//!
//! Grid-based moduli are lower estimates of a supremum (the bias flag records
//! this); corpus members with declared closed forms bypass the grid so the
//! acceptance-critical right-hand sides are not silently underestimated.

use serde::Serialize;

use crate::corpus::CorpusFunction;
use crate::error::{Error, Result};

/// Number of geometrically spaced step sizes per modulus evaluation.
const H_STEPS: usize = 128;

/// Node count for the concave-majorant t-grid.
const HULL_NODES: usize = 129;

#[derive(Clone, Copy, Debug, Serialize)]
pub enum Bias {
    /// Grid sup underestimates the true sup.
    Lower,
    /// Declared closed form; no grid bias.
    Exact,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ModulusEstimate {
    pub order: u32,
    pub t: f64,
    pub value: f64,
    pub grid_points: usize,
    pub bias: Bias,
}

fn check_modulus_args(k: u32, t: f64) -> Result<()> {
    if !(1..=3).contains(&k) {
        return Err(Error::Domain(format!("modulus order k must be in 1..3, got {k}")));
    }
    if t <= 0.0 || t > 1.0 {
        return Err(Error::Domain(format!("modulus argument t must be in (0,1], got {t}")));
    }
    Ok(())
}

/// k-th forward difference Δ_h^k f(x).
fn forward_diff<F: Fn(f64) -> f64 + ?Sized>(f: &F, k: u32, x: f64, h: f64) -> f64 {
    match k {
        1 => f(x + h) - f(x),
        2 => f(x + 2.0 * h) - 2.0 * f(x + h) + f(x),
        3 => f(x + 3.0 * h) - 3.0 * f(x + 2.0 * h) + 3.0 * f(x + h) - f(x),
        _ => unreachable!(),
    }
}

/// Largest |Δ_h^k f(x)| over the x-grid for one fixed step h. The grid is
/// augmented with breakpoint-aligned points b - j·h so kinks are hit exactly
/// rather than straddled.
fn sup_diff_at_h<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    breakpoints: &[f64],
    k: u32,
    h: f64,
    grid: usize,
) -> f64 {
    let xmax = 1.0 - k as f64 * h;
    if xmax < 0.0 {
        return 0.0;
    }
    let mut best = 0.0f64;
    let points = grid.max(2);
    for i in 0..points {
        let x = xmax * i as f64 / (points - 1) as f64;
        best = best.max(forward_diff(f, k, x, h).abs());
    }
    for &b in breakpoints {
        for j in 0..=k {
            let x = b - j as f64 * h;
            if (0.0..=xmax).contains(&x) {
                best = best.max(forward_diff(f, k, x, h).abs());
            }
        }
    }
    best
}

/// Grid estimate of ω_k(f; t): running max over a geometric ladder of step
/// sizes h ∈ (t/1000, t] (t itself included) of the x-grid sup of |Δ_h^k f|.
pub fn modulus_grid(f: &CorpusFunction, k: u32, t: f64, grid: usize) -> Result<ModulusEstimate> {
    let eval = f.eval_fn();
    modulus_grid_fn(&*eval, &f.breakpoints, k, t, grid)
}

/// Same as [`modulus_grid`] but for a raw evaluator (used for moduli of
/// derivative functions on theorem right-hand sides).
pub fn modulus_grid_fn(
    f: &dyn Fn(f64) -> f64,
    breakpoints: &[f64],
    k: u32,
    t: f64,
    grid: usize,
) -> Result<ModulusEstimate> {
    check_modulus_args(k, t)?;
    // Steps past 1/k admit no x with x + k·h <= 1; the true modulus is
    // constant there, so the ladder clamps there. The ladder rungs are
    // anchored at 1/k (not at t) so the rung sets for two arguments t1 < t2
    // are nested; together with the h = top endpoint this keeps the estimate
    // monotone in t.
    let cap = 1.0 / k as f64;
    let top = t.min(cap);
    let ratio = (1.0f64 / 1000.0).powf(1.0 / (H_STEPS as f64 - 1.0));
    let mut value = sup_diff_at_h(f, breakpoints, k, top, grid);
    let mut h = cap;
    for _ in 0..H_STEPS {
        if h <= top {
            value = value.max(sup_diff_at_h(f, breakpoints, k, h, grid));
        }
        h *= ratio;
    }
    Ok(ModulusEstimate { order: k, t, value, grid_points: grid, bias: Bias::Lower })
}

/// ω_k(f; t): the declared closed form when the corpus member has one,
/// otherwise the grid estimate.
pub fn modulus(f: &CorpusFunction, k: u32, t: f64, grid: usize) -> Result<ModulusEstimate> {
    check_modulus_args(k, t)?;
    if let Some(value) = f.known_modulus(k, t) {
        return Ok(ModulusEstimate { order: k, t, value, grid_points: 0, bias: Bias::Exact });
    }
    modulus_grid(f, k, t, grid)
}

/// Piecewise-linear upper concave hull of a node set; evaluation realizes the
/// two-point interpolation formula for the least concave majorant restricted
/// to the nodes. Beyond the last node the hull plateaus at its last value.
#[derive(Clone, Debug)]
pub struct ConcaveMajorant {
    hull: Vec<(f64, f64)>,
}

pub fn concave_majorant(nodes: &[(f64, f64)]) -> Result<ConcaveMajorant> {
    if nodes.is_empty() {
        return Err(Error::Domain("majorant needs at least one node".into()));
    }
    if nodes[0] != (0.0, 0.0) {
        return Err(Error::Domain("majorant nodes must start at (0, 0)".into()));
    }
    for w in nodes.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(Error::Domain(format!(
                "majorant t-values must be strictly increasing ({} then {})",
                w[0].0, w[1].0
            )));
        }
    }
    if let Some(bad) = nodes.iter().find(|(_, v)| *v < 0.0) {
        return Err(Error::Domain(format!("negative majorant value at t = {}", bad.0)));
    }
    // Monotone-chain upper hull: keep slopes strictly decreasing.
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(nodes.len());
    for &p in nodes {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // pop b if it lies on or below chord a--p
            if (b.1 - a.1) * (p.0 - a.0) <= (p.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    Ok(ConcaveMajorant { hull })
}

impl ConcaveMajorant {
    pub fn eval(&self, t: f64) -> f64 {
        assert!(t >= 0.0, "majorant argument must be nonnegative");
        let hull = &self.hull;
        if t >= hull[hull.len() - 1].0 {
            return hull[hull.len() - 1].1;
        }
        let j = hull.partition_point(|&(x, _)| x <= t);
        let (x0, v0) = hull[j - 1];
        let (x1, v1) = hull[j];
        v0 + (v1 - v0) * (t - x0) / (x1 - x0)
    }

    pub fn hull_nodes(&self) -> &[(f64, f64)] {
        &self.hull
    }
}

/// ω̃(f; t): sample ω_1(f; ·) on an equispaced node ladder over
/// [0, max(t, 1)], take the upper concave hull, evaluate at t. For arguments
/// past 1 the first modulus is constant (the interval has length 1), equal to
/// max f - min f over the grid.
pub fn majorant_of_modulus(f: &CorpusFunction, t: f64, grid: usize) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::Domain(format!("majorant argument t must be positive, got {t}")));
    }
    let tmax = t.max(1.0);
    let eval = f.eval_fn();

    let mut range = 0.0;
    {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..grid.max(2) {
            let v = eval(i as f64 / (grid.max(2) - 1) as f64);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        range = f64::max(range, hi - lo);
    }

    let mut nodes = Vec::with_capacity(HULL_NODES);
    nodes.push((0.0, 0.0));
    let mut running = 0.0f64;
    for i in 1..HULL_NODES {
        let s = tmax * i as f64 / (HULL_NODES - 1) as f64;
        let v = if let Some(w) = f.known_modulus(1, s.min(tmax)) {
            w
        } else if s >= 1.0 {
            range
        } else {
            // One pass per node: the node ladder doubles as the h-grid, and
            // the running max makes the profile a nondecreasing ω1 sample.
            running = running.max(sup_diff_at_h(&*eval, &f.breakpoints, 1, s, grid));
            running
        };
        nodes.push((s, v));
    }
    Ok(concave_majorant(&nodes)?.eval(t))
}

/// Max of |g| over the equispaced grid, with the maximizing point.
pub fn sup_norm<F: Fn(f64) -> f64>(g: F, grid: usize) -> (f64, f64) {
    let points = grid.max(2);
    let mut best = f64::NEG_INFINITY;
    let mut at = 0.0;
    for i in 0..points {
        let x = i as f64 / (points - 1) as f64;
        let v = g(x).abs();
        if v > best {
            best = v;
            at = x;
        }
    }
    (best, at)
}
