//! Each theorem as an executable LHS/RHS comparison or rate assertion.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::CorpusFunction;
use crate::error::{Error, Result};
use crate::kantorovich::{moment1_f64, moment2_f64, KantorovichOp};
use crate::moduli::{majorant_of_modulus, modulus, modulus_grid_fn, sup_norm};
use crate::BOUND_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "PALTANEA")]
    Paltanea,
    #[serde(rename = "UNIFORM_T24")]
    UniformT24,
    #[serde(rename = "SIMULTANEOUS_T25")]
    SimultaneousT25,
    #[serde(rename = "VORONOVSKAYA_T31")]
    VoronovskayaT31,
    #[serde(rename = "GRUSS_T42")]
    GrussT42,
    #[serde(rename = "GV_RATE_T52")]
    GvRateT52,
    #[serde(rename = "GV_RATE_T53")]
    GvRateT53,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::Paltanea,
        TheoremId::UniformT24,
        TheoremId::SimultaneousT25,
        TheoremId::VoronovskayaT31,
        TheoremId::GrussT42,
        TheoremId::GvRateT52,
        TheoremId::GvRateT53,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::Paltanea => "PALTANEA",
            TheoremId::UniformT24 => "UNIFORM_T24",
            TheoremId::SimultaneousT25 => "SIMULTANEOUS_T25",
            TheoremId::VoronovskayaT31 => "VORONOVSKAYA_T31",
            TheoremId::GrussT42 => "GRUSS_T42",
            TheoremId::GvRateT52 => "GV_RATE_T52",
            TheoremId::GvRateT53 => "GV_RATE_T53",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Passed,
    Failed,
    /// The cell violates the theorem's hypotheses; not a failure.
    Skipped,
}

/// Per-(theorem, function, n) comparison record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub theorem: TheoremId,
    pub function: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_function: Option<String>,
    /// Derivative order for the simultaneous-approximation check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    pub n: usize,
    pub lhs: f64,
    /// Absent for rate-only checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_worst: Option<f64>,
    pub grid_points: usize,
}

impl BoundReport {
    fn comparison(
        theorem: TheoremId,
        function: &str,
        n: usize,
        lhs: f64,
        rhs: f64,
        x_worst: f64,
        grid: usize,
    ) -> Self {
        let status = if lhs <= rhs + BOUND_TOL { CheckStatus::Passed } else { CheckStatus::Failed };
        BoundReport {
            theorem,
            function: function.to_string(),
            g_function: None,
            r: None,
            n,
            lhs,
            rhs: Some(rhs),
            margin: Some(rhs - lhs),
            status,
            x_worst: Some(x_worst),
            grid_points: grid,
        }
    }

    pub fn skipped(theorem: TheoremId, function: &str, n: usize, grid: usize) -> Self {
        BoundReport {
            theorem,
            function: function.to_string(),
            g_function: None,
            r: None,
            n,
            lhs: f64::NAN,
            rhs: None,
            margin: None,
            status: CheckStatus::Skipped,
            x_worst: None,
            grid_points: grid,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Passed
    }
}

/// Least-squares line through (log n, log error); the slope measures the
/// convergence rate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RateFit {
    pub samples: Vec<(usize, f64)>,
    /// Samples discarded as numerically zero (error < 1e-13).
    pub dropped: usize,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn rate_fit(samples: &[(usize, f64)]) -> Result<RateFit> {
    let kept: Vec<(usize, f64)> = samples.iter().copied().filter(|&(_, e)| e >= 1e-13).collect();
    let dropped = samples.len() - kept.len();
    if kept.len() < 3 {
        return Err(Error::Domain(format!(
            "rate fit needs at least 3 positive samples, got {} (dropped {dropped})",
            kept.len()
        )));
    }
    let pts: Vec<(f64, f64)> = kept.iter().map(|&(n, e)| ((n as f64).ln(), e.ln())).collect();
    let m = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    let intercept = (sy - slope * sx) / m;
    let mean_y = sy / m;
    let ss_res: f64 = pts.iter().map(|&(x, y)| (y - slope * x - intercept).powi(2)).sum();
    let ss_tot: f64 = pts.iter().map(|&(_, y)| (y - mean_y).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) };
    Ok(RateFit { samples: kept, dropped, slope, intercept, r_squared })
}

/// Păltănea's pointwise estimate for a positive linear operator with moments
/// `Le0`, `M1 = L(e_1 - x; x)`, `M2 = L((e_1 - x)^2; x)` supplied by the
/// caller:
/// `|L(f;x) - f(x)| <= |Le0-1||f(x)| + |M1| ω1(f;h)/h + [Le0 + M2/(2h²)] ω2(f;h)`.
pub fn paltanea_bound(
    le0: f64,
    m1: f64,
    m2: f64,
    f: &CorpusFunction,
    x: f64,
    h: f64,
    grid: usize,
) -> Result<f64> {
    if !(h > 0.0 && h <= 0.5) {
        return Err(Error::Domain(format!(
            "paltanea step h must lie in (0, 1/2] (K_n does not reproduce linear functions), got {h}"
        )));
    }
    if m2 < 0.0 {
        return Err(Error::Domain("second moment must be nonnegative".into()));
    }
    let w1 = modulus(f, 1, h, grid)?.value;
    let w2 = modulus(f, 2, h, grid)?.value;
    Ok(paltanea_bound_with_moduli(le0, m1, m2, f.eval(x), w1, w2, h))
}

/// Same formula with the moduli precomputed; used by sweeps that vary x while
/// f and h stay fixed.
pub fn paltanea_bound_with_moduli(
    le0: f64,
    m1: f64,
    m2: f64,
    f_at_x: f64,
    w1: f64,
    w2: f64,
    h: f64,
) -> f64 {
    (le0 - 1.0).abs() * f_at_x.abs() + m1.abs() * w1 / h + (le0 + m2 / (2.0 * h * h)) * w2
}

/// Uniform bound (UNIFORM_T24):
/// `||K_n f - f|| <= ω1(f;1/√n)/(2√n) + (9/8) ω2(f;1/√n)` for n >= 4.
pub fn uniform_bound_t24(op: &KantorovichOp, f: &CorpusFunction, grid: usize) -> Result<BoundReport> {
    let n = op.n();
    if n < 4 {
        return Err(Error::Domain(format!("the uniform bound requires n >= 4, got {n}")));
    }
    let p = op.coefficients(f);
    let (lhs, x_worst) = sup_norm(|x| p.eval(x) - f.eval(x), grid);
    let h = 1.0 / (n as f64).sqrt();
    let w1 = modulus(f, 1, h, grid)?.value;
    let w2 = modulus(f, 2, h, grid)?.value;
    let rhs = w1 / (2.0 * (n as f64).sqrt()) + 9.0 / 8.0 * w2;
    Ok(BoundReport::comparison(TheoremId::UniformT24, &f.id, n, lhs, rhs, x_worst, grid))
}

/// Simultaneous approximation:
/// `||D^r K_n f - D^r f|| <= r(r+1)/(2n) ||D^r f|| + (r+1)/(2√n) ω1(D^r f;1/√n)
///  + (9/8) ω2(D^r f;1/√n)` for n >= 4 and f in C^r.
pub fn simultaneous_bound_t25(
    op: &KantorovichOp,
    r: u32,
    f: &CorpusFunction,
    grid: usize,
) -> Result<BoundReport> {
    let n = op.n();
    if n < 4 {
        return Err(Error::Domain(format!("the simultaneous bound requires n >= 4, got {n}")));
    }
    let fr = f.deriv_fn(r).ok_or_else(|| {
        Error::Domain(format!("`{}` declares no analytic derivative of order {r}", f.id))
    })?;
    let dp = op.coefficients(f).derivative_n(r);
    let (lhs, x_worst) = sup_norm(|x| dp.eval(x) - fr(x), grid);

    let h = 1.0 / (n as f64).sqrt();
    let (w1, w2) = if r == 0 {
        (modulus(f, 1, h, grid)?.value, modulus(f, 2, h, grid)?.value)
    } else {
        (
            modulus_grid_fn(&*fr, &f.breakpoints, 1, h, grid)?.value,
            modulus_grid_fn(&*fr, &f.breakpoints, 2, h, grid)?.value,
        )
    };
    let (norm_fr, _) = sup_norm(|x| fr(x), grid);
    let rf = r as f64;
    let rhs = rf * (rf + 1.0) / (2.0 * n as f64) * norm_fr
        + (rf + 1.0) / (2.0 * (n as f64).sqrt()) * w1
        + 9.0 / 8.0 * w2;

    let mut report = BoundReport::comparison(TheoremId::SimultaneousT25, &f.id, n, lhs, rhs, x_worst, grid);
    report.r = Some(r);
    Ok(report)
}

/// Quantitative Voronovskaya residual:
/// `||n(K_n f - f) - ½(X f')'|| <= 2/(3(n+1)) (¾||f'|| + ||f''||)
///  + 9/32 { 2/√(n+1) ω1(f'';1/√(n+1)) + ω2(f'';1/√(n+1)) }`,
/// where `½(X f')' = ½(1-2x) f' + ½ x(1-x) f''`.
pub fn voronovskaya_bound_t31(
    op: &KantorovichOp,
    f: &CorpusFunction,
    grid: usize,
) -> Result<BoundReport> {
    let n = op.n();
    let f1 = f.deriv_fn(1).ok_or_else(|| {
        Error::Domain(format!("`{}` declares no first derivative", f.id))
    })?;
    let f2 = f.deriv_fn(2).ok_or_else(|| {
        Error::Domain(format!("`{}` declares no second derivative", f.id))
    })?;

    let p = op.coefficients(f);
    let nf = n as f64;
    let (lhs, x_worst) = sup_norm(
        |x| nf * (p.eval(x) - f.eval(x)) - 0.5 * ((1.0 - 2.0 * x) * f1(x) + x * (1.0 - x) * f2(x)),
        grid,
    );

    let s = 1.0 / (nf + 1.0).sqrt();
    let w1 = modulus_grid_fn(&*f2, &f.breakpoints, 1, s, grid)?.value;
    let w2 = modulus_grid_fn(&*f2, &f.breakpoints, 2, s, grid)?.value;
    let (norm_f1, _) = sup_norm(|x| f1(x), grid);
    let (norm_f2, _) = sup_norm(|x| f2(x), grid);
    let rhs = 2.0 / (3.0 * (nf + 1.0)) * (0.75 * norm_f1 + norm_f2)
        + 9.0 / 32.0 * (2.0 * s * w1 + w2);

    Ok(BoundReport::comparison(TheoremId::VoronovskayaT31, &f.id, n, lhs, rhs, x_worst, grid))
}

/// Chebyshev-Grüss bound on non-multiplicativity:
/// `||K_n(fg) - K_nf·K_ng|| <= ¼ ω̃(f; 2√(1/(2(n+1)))) ω̃(g; 2√(1/(2(n+1))))`.
pub fn gruss_bound_t42(
    op: &KantorovichOp,
    f: &CorpusFunction,
    g: &CorpusFunction,
    grid: usize,
) -> Result<BoundReport> {
    let n = op.n();
    let fg = f.product(g);
    let pfg = op.coefficients(&fg);
    let pf = op.coefficients(f);
    let pg = op.coefficients(g);
    let (lhs, x_worst) = sup_norm(|x| pfg.eval(x) - pf.eval(x) * pg.eval(x), grid);

    let t = 2.0 * (1.0 / (2.0 * (n as f64 + 1.0))).sqrt();
    let rhs = 0.25 * majorant_of_modulus(f, t, grid)? * majorant_of_modulus(g, t, grid)?;

    let mut report = BoundReport::comparison(TheoremId::GrussT42, &f.id, n, lhs, rhs, x_worst, grid);
    report.g_function = Some(g.id.clone());
    Ok(report)
}

/// Grüss-Voronovskaya residual `||n(K_n(fg) - K_nf·K_ng) - X f'g'||`, whose
/// decay rate in n is classified by smoothness.
pub fn gv_residual(op: &KantorovichOp, f: &CorpusFunction, g: &CorpusFunction, grid: usize) -> Result<f64> {
    let f1 = f.deriv_fn(1).ok_or_else(|| {
        Error::Domain(format!("`{}` declares no first derivative", f.id))
    })?;
    let g1 = g.deriv_fn(1).ok_or_else(|| {
        Error::Domain(format!("`{}` declares no first derivative", g.id))
    })?;
    let fg = f.product(g);
    let pfg = op.coefficients(&fg);
    let pf = op.coefficients(f);
    let pg = op.coefficients(g);
    let nf = op.n() as f64;
    let (value, _) = sup_norm(
        |x| nf * (pfg.eval(x) - pf.eval(x) * pg.eval(x)) - x * (1.0 - x) * f1(x) * g1(x),
        grid,
    );
    Ok(value)
}

/// Pointwise Păltănea bound with the operator's own moments, sup'd over the
/// grid. Dominates the true uniform error by construction; the suite checks
/// that it indeed dominates the UNIFORM_T24 LHS.
pub fn paltanea_sup(op: &KantorovichOp, f: &CorpusFunction, grid: usize) -> Result<(f64, f64)> {
    let n = op.n();
    if n < 4 {
        return Err(Error::Domain(format!("paltanea sweep uses h = 1/sqrt(n) <= 1/2, so n >= 4; got {n}")));
    }
    let h = 1.0 / (n as f64).sqrt();
    let w1 = modulus(f, 1, h, grid)?.value;
    let w2 = modulus(f, 2, h, grid)?.value;
    let points = grid.max(2);
    let mut best = f64::NEG_INFINITY;
    let mut at = 0.0;
    for i in 0..points {
        let x = i as f64 / (points - 1) as f64;
        let b = paltanea_bound_with_moduli(
            1.0,
            moment1_f64(n, x),
            moment2_f64(n, x),
            f.eval(x),
            w1,
            w2,
            h,
        );
        if b > best {
            best = b;
            at = x;
        }
    }
    Ok((best, at))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{builtin_corpus, find};
    use crate::kantorovich::{central_moment_closed, variance_e1};
    use crate::rat::{rat, rint, to_f64};
    use crate::DEFAULT_GRID;
    use approx::assert_abs_diff_eq;

    fn corpus_fn(id: &str) -> CorpusFunction {
        find(&builtin_corpus(), id).unwrap().clone()
    }

    fn op(n: usize) -> KantorovichOp {
        KantorovichOp::new(n).unwrap()
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert!("NOPE".parse::<TheoremId>().is_err());
    }

    #[test]
    fn paltanea_with_vanishing_moments_reduces_to_w2() {
        // Le0 = 1 and M1 = M2 = 0 kill all terms except 1·ω2(f; h).
        let f = corpus_fn("sin_pi");
        let b = paltanea_bound(1.0, 0.0, 0.0, &f, 0.3, 0.25, DEFAULT_GRID).unwrap();
        let w2 = modulus(&f, 2, 0.25, DEFAULT_GRID).unwrap().value;
        assert_abs_diff_eq!(b, w2, epsilon = 1e-15);
    }

    #[test]
    fn paltanea_collapses_for_the_identity() {
        // With f = e_1 both moduli terms collapse: ω1(e1;h) = h, ω2 = 0, so
        // the bound equals |M1| = 1/(2(n+1)) and matches the true error at 0.
        let n = 9;
        let h = 1.0 / (2.0 * (n as f64 + 1.0));
        let f = corpus_fn("e1");
        let m1 = moment1_f64(n, 0.0);
        let b = paltanea_bound(1.0, m1, 0.0, &f, 0.0, h, DEFAULT_GRID).unwrap();
        assert_abs_diff_eq!(b, m1.abs(), epsilon = 1e-13);
        let true_err = (op(n).apply(&f, 0.0).unwrap() - 0.0).abs();
        assert_abs_diff_eq!(b, true_err, epsilon = 1e-13);
    }

    #[test]
    fn paltanea_dominates_the_pointwise_error_at_endpoint() {
        // K_4, f = e_2, x = 1, h = 1/2: bound >= |K_4(e_2;1) - 1| = 14/75.
        let n = 4;
        let f = corpus_fn("e2");
        let m1 = moment1_f64(n, 1.0);
        let m2 = moment2_f64(n, 1.0);
        let b = paltanea_bound(1.0, m1, m2, &f, 1.0, 0.5, DEFAULT_GRID).unwrap();
        assert!(b >= 14.0 / 75.0 - 1e-12, "bound {b}");
    }

    #[test]
    fn paltanea_rejects_h_outside_range() {
        let f = corpus_fn("e1");
        assert!(paltanea_bound(1.0, 0.0, 0.0, &f, 0.3, 0.75, DEFAULT_GRID).is_err());
        assert!(paltanea_bound(1.0, 0.0, 0.0, &f, 0.3, 0.0, DEFAULT_GRID).is_err());
    }

    #[test]
    fn t24_constant_is_trivially_tight() {
        let rep = uniform_bound_t24(&op(4), &corpus_fn("e0"), DEFAULT_GRID).unwrap();
        assert!(rep.passed());
        assert_abs_diff_eq!(rep.lhs, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rep.rhs.unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn t24_square_at_n4_matches_the_derived_values() {
        let rep = uniform_bound_t24(&op(4), &corpus_fn("e2"), DEFAULT_GRID).unwrap();
        assert!(rep.passed());
        // residual (-13x^2+8x+1/3)/25 is maximized at x = 1
        assert_abs_diff_eq!(rep.lhs, 14.0 / 75.0, epsilon = 1e-10);
        assert_abs_diff_eq!(rep.rhs.unwrap(), 0.75, epsilon = 1e-10);
        assert_abs_diff_eq!(rep.x_worst.unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn t24_kink_function_at_n100() {
        let rep = uniform_bound_t24(&op(100), &corpus_fn("abs_half"), DEFAULT_GRID).unwrap();
        assert!(rep.passed(), "lhs {} rhs {:?}", rep.lhs, rep.rhs);
    }

    #[test]
    fn t24_rejects_small_n() {
        assert!(uniform_bound_t24(&op(3), &corpus_fn("e1"), DEFAULT_GRID).is_err());
    }

    #[test]
    fn t25_r0_reduces_to_t24() {
        let f = corpus_fn("e2");
        let a = simultaneous_bound_t25(&op(8), 0, &f, DEFAULT_GRID).unwrap();
        let b = uniform_bound_t24(&op(8), &f, DEFAULT_GRID).unwrap();
        assert_abs_diff_eq!(a.lhs, b.lhs, epsilon = 1e-14);
        assert_abs_diff_eq!(a.rhs.unwrap(), b.rhs.unwrap(), epsilon = 1e-14);
    }

    #[test]
    fn t25_first_derivative_of_square_at_n16() {
        let rep = simultaneous_bound_t25(&op(16), 1, &corpus_fn("e2"), DEFAULT_GRID).unwrap();
        assert!(rep.passed());
        // rhs = (1/16)·2 + (1/4)·ω1(2x;1/4) + (9/8)·0 = 1/4
        assert_abs_diff_eq!(rep.rhs.unwrap(), 0.25, epsilon = 1e-12);
    }

    #[test]
    fn t25_second_derivative_of_exp_at_n64() {
        let rep = simultaneous_bound_t25(&op(64), 2, &corpus_fn("exp_scaled"), DEFAULT_GRID).unwrap();
        assert!(rep.passed(), "lhs {} rhs {:?}", rep.lhs, rep.rhs);
    }

    #[test]
    fn t25_missing_derivative_is_an_error() {
        assert!(simultaneous_bound_t25(&op(8), 1, &corpus_fn("abs_half"), DEFAULT_GRID).is_err());
    }

    #[test]
    fn t31_equality_case_for_the_identity() {
        // f = e_1: both sides collapse to 1/(2(n+1)).
        for n in [1usize, 2, 10, 100] {
            let rep = voronovskaya_bound_t31(&op(n), &corpus_fn("e1"), DEFAULT_GRID).unwrap();
            let expected = 1.0 / (2.0 * (n as f64 + 1.0));
            assert_abs_diff_eq!(rep.lhs, expected, epsilon = 1e-12);
            assert_abs_diff_eq!(rep.rhs.unwrap(), expected, epsilon = 1e-12);
            assert!(rep.passed());
        }
    }

    #[test]
    fn t31_square_at_n10() {
        let rep = voronovskaya_bound_t31(&op(10), &corpus_fn("e2"), DEFAULT_GRID).unwrap();
        assert!(rep.passed(), "lhs {} rhs {:?}", rep.lhs, rep.rhs);
        // Voronovskaya limit of e_2 is ½(X·2x)' = 2x - 3x^2; the lhs is the
        // sup of |n(M2 + 2xM1) - (2x-3x^2)| which stays well under the rhs.
    }

    #[test]
    fn t31_constant_is_zero_on_both_sides() {
        let rep = voronovskaya_bound_t31(&op(5), &corpus_fn("e0"), DEFAULT_GRID).unwrap();
        assert_abs_diff_eq!(rep.lhs, 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(rep.rhs.unwrap(), 0.0, epsilon = 1e-13);
        assert!(rep.passed());
    }

    #[test]
    fn gruss_n1_identity_pair_matches_derived_values() {
        let f = corpus_fn("e1");
        let rep = gruss_bound_t42(&op(1), &f, &f, DEFAULT_GRID).unwrap();
        assert!(rep.passed());
        assert_abs_diff_eq!(rep.lhs, 1.0 / 12.0, epsilon = 1e-10);
        assert_abs_diff_eq!(rep.rhs.unwrap(), 0.25, epsilon = 1e-10);
    }

    #[test]
    fn gruss_lhs_for_identity_pair_is_the_variance() {
        // cross-module consistency with variance_e1
        for n in [1usize, 5, 40] {
            let f = corpus_fn("e1");
            let rep = gruss_bound_t42(&op(n), &f, &f, DEFAULT_GRID).unwrap();
            let (expected, _) = sup_norm(
                |x| {
                    // variance at the nearest grid rational; evaluate exactly
                    x * (1.0 - x) * n as f64 / ((n as f64 + 1.0) * (n as f64 + 1.0))
                        + 1.0 / (12.0 * (n as f64 + 1.0) * (n as f64 + 1.0))
                },
                DEFAULT_GRID,
            );
            assert_abs_diff_eq!(rep.lhs, expected, epsilon = 1e-12);
        }
        // and the exact value at x = 1/2 agrees with the rational closed form
        assert_abs_diff_eq!(
            to_f64(&variance_e1(1, &rat(1, 2)).unwrap()),
            1.0 / 12.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn gruss_constant_factor_gives_zero_lhs() {
        let rep = gruss_bound_t42(&op(6), &corpus_fn("e0"), &corpus_fn("sin_pi"), DEFAULT_GRID).unwrap();
        assert_abs_diff_eq!(rep.lhs, 0.0, epsilon = 1e-13);
        assert!(rep.passed());
    }

    #[test]
    fn gruss_smooth_pair_at_n50() {
        let rep = gruss_bound_t42(&op(50), &corpus_fn("e2"), &corpus_fn("exp_scaled"), DEFAULT_GRID).unwrap();
        assert!(rep.passed(), "lhs {} rhs {:?}", rep.lhs, rep.rhs);
    }

    #[test]
    fn gv_residual_with_constant_factor_vanishes() {
        let v = gv_residual(&op(9), &corpus_fn("e0"), &corpus_fn("e2"), DEFAULT_GRID).unwrap();
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn gv_residual_n1_identity_pair_is_one_sixth() {
        // |n·variance - X| = |-(3/4)x(1-x) + 1/48| peaks at x = 1/2 with 1/6.
        let f = corpus_fn("e1");
        let v = gv_residual(&op(1), &f, &f, DEFAULT_GRID).unwrap();
        assert_abs_diff_eq!(v, 1.0 / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn gv_residual_smooth_pair_decays_like_one_over_n() {
        let f = corpus_fn("e2");
        let samples: Vec<(usize, f64)> = [64usize, 128, 256, 512]
            .iter()
            .map(|&n| (n, gv_residual(&op(n), &f, &f, DEFAULT_GRID).unwrap()))
            .collect();
        let fit = rate_fit(&samples).unwrap();
        assert!((fit.slope + 1.0).abs() <= 0.1, "slope {}", fit.slope);
    }

    #[test]
    fn rate_fit_synthetic_slopes() {
        let fit = rate_fit(&[(10, 0.1), (100, 0.01), (1000, 0.001)]).unwrap();
        assert_abs_diff_eq!(fit.slope, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.r_squared, 1.0, epsilon = 1e-12);
        let fit = rate_fit(&[(16, 0.25), (64, 0.125), (256, 0.0625)]).unwrap();
        assert_abs_diff_eq!(fit.slope, -0.5, epsilon = 1e-12);
    }

    #[test]
    fn rate_fit_drops_numerical_zeros() {
        assert!(rate_fit(&[(10, 1e-15), (100, 0.01), (1000, 0.001)]).is_err());
        let fit = rate_fit(&[(10, 1e-15), (20, 0.05), (100, 0.01), (1000, 0.001)]).unwrap();
        assert_eq!(fit.dropped, 1);
        assert_eq!(fit.samples.len(), 3);
    }

    #[test]
    fn paltanea_sup_dominates_t24_lhs() {
        for id in ["e1", "e2", "abs_half", "sin_pi"] {
            for n in [4usize, 16, 64] {
                let f = corpus_fn(id);
                let (bound, _) = paltanea_sup(&op(n), &f, DEFAULT_GRID).unwrap();
                let rep = uniform_bound_t24(&op(n), &f, DEFAULT_GRID).unwrap();
                assert!(bound + 1e-12 >= rep.lhs, "{id} n={n}: {bound} < {}", rep.lhs);
            }
        }
    }

    #[test]
    fn moment_ratio_bounds_hold_exactly() {
        // |M3|/M2 <= 5/(2(n+1)) and M4/M2 <= 3(n+2)/(n+1)^2, checked as
        // rational cross-multiplications.
        for n in [1usize, 2, 5, 17, 50] {
            for j in 0..=8 {
                let x = rat(j, 8);
                let m2 = central_moment_closed(n, 2, &x).unwrap();
                let m3 = central_moment_closed(n, 3, &x).unwrap();
                let m4 = central_moment_closed(n, 4, &x).unwrap();
                let m3_abs = if m3 < rint(0) { -m3 } else { m3 };
                assert!(m3_abs * rint(2) * rint(n as i64 + 1) <= rint(5) * &m2);
                assert!(
                    m4 * rint(n as i64 + 1) * rint(n as i64 + 1)
                        <= rint(3) * rint(n as i64 + 2) * &m2
                );
            }
        }
    }
}
