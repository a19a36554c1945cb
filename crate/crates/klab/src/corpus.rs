//! The built-in function corpus.
//!
//! Each corpus member is a named function on [0,1] with an evaluator,
//! optional analytic derivatives (orders 1..4), optional closed-form moduli
//! of smoothness, declared kink locations, and a declared smoothness class.
//! The members are chosen to hit every smoothness hypothesis appearing in the
//! theorems (C^0 through C^4 plus exact-polynomial paths) and to include a
//! function with a known closed-form modulus for every modulus order that
//! shows up on a right-hand side.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{rint, to_f64, Rat};

pub type EvalFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Smoothness {
    C0,
    C1,
    C2,
    C3,
    C4,
    /// Polynomial of the given degree (infinitely smooth, exact-integration path).
    Poly(u32),
}

impl Smoothness {
    /// Number of continuous derivatives usable by theorem hypotheses
    /// (capped at 4; polynomials count as fully smooth).
    pub fn continuity(&self) -> u32 {
        match self {
            Smoothness::C0 => 0,
            Smoothness::C1 => 1,
            Smoothness::C2 => 2,
            Smoothness::C3 => 3,
            Smoothness::C4 | Smoothness::Poly(_) => 4,
        }
    }

    fn from_continuity(c: u32) -> Smoothness {
        match c {
            0 => Smoothness::C0,
            1 => Smoothness::C1,
            2 => Smoothness::C2,
            3 => Smoothness::C3,
            _ => Smoothness::C4,
        }
    }
}

impl fmt::Display for Smoothness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Smoothness::Poly(d) => write!(f, "POLY({d})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone)]
pub struct CorpusFunction {
    pub id: String,
    pub smoothness: Smoothness,
    eval: EvalFn,
    /// Analytic derivatives, orders 1..=derivs.len().
    derivs: Vec<EvalFn>,
    pub breakpoints: Vec<f64>,
    known_w1: Option<EvalFn>,
    known_w2: Option<EvalFn>,
    /// Power-basis coefficients (constant term first) when the function is a
    /// declared polynomial; routes through exact integration.
    poly: Option<Vec<Rat>>,
}

impl fmt::Debug for CorpusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CorpusFunction")
            .field("id", &self.id)
            .field("smoothness", &self.smoothness)
            .field("breakpoints", &self.breakpoints)
            .field("deriv_orders", &self.derivs.len())
            .finish()
    }
}

impl CorpusFunction {
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn eval_fn(&self) -> EvalFn {
        self.eval.clone()
    }

    /// Highest declared analytic derivative order.
    pub fn deriv_order(&self) -> u32 {
        self.derivs.len() as u32
    }

    /// Evaluator of the r-th derivative; `r = 0` is the function itself.
    pub fn deriv_fn(&self, r: u32) -> Option<EvalFn> {
        if r == 0 {
            Some(self.eval.clone())
        } else {
            self.derivs.get(r as usize - 1).cloned()
        }
    }

    pub fn deriv(&self, r: u32, x: f64) -> Option<f64> {
        self.deriv_fn(r).map(|f| f(x))
    }

    /// Closed-form modulus of smoothness ω_k(f; t), when declared.
    pub fn known_modulus(&self, k: u32, t: f64) -> Option<f64> {
        match k {
            1 => self.known_w1.as_ref().map(|f| f(t)),
            2 => self.known_w2.as_ref().map(|f| f(t)),
            _ => None,
        }
    }

    pub fn poly_coeffs(&self) -> Option<&[Rat]> {
        self.poly.as_deref()
    }

    /// Drop the declared-polynomial flag so evaluation is forced through the
    /// quadrature path. Used to cross-check the two integration routes.
    #[doc(hidden)]
    pub fn without_exact_path(mut self) -> CorpusFunction {
        self.poly = None;
        self
    }

    /// Pointwise product. Polynomial factors multiply exactly; first and
    /// second derivatives come from the product rule when both factors
    /// declare enough orders; breakpoints are merged.
    pub fn product(&self, other: &CorpusFunction) -> CorpusFunction {
        let id = format!("{}*{}", self.id, other.id);
        let f = self.eval.clone();
        let g = other.eval.clone();
        let eval: EvalFn = {
            let (f, g) = (f.clone(), g.clone());
            Arc::new(move |x| f(x) * g(x))
        };

        let mut derivs: Vec<EvalFn> = Vec::new();
        if let (Some(f1), Some(g1)) = (self.deriv_fn(1), other.deriv_fn(1)) {
            let (f0, g0) = (f.clone(), g.clone());
            let (f1c, g1c) = (f1.clone(), g1.clone());
            derivs.push(Arc::new(move |x| f1c(x) * g0(x) + f0(x) * g1c(x)));
            if let (Some(f2), Some(g2)) = (self.deriv_fn(2), other.deriv_fn(2)) {
                let (f0, g0) = (f.clone(), g.clone());
                derivs.push(Arc::new(move |x| {
                    f2(x) * g0(x) + 2.0 * f1(x) * g1(x) + f0(x) * g2(x)
                }));
            }
        }

        let mut breakpoints = self.breakpoints.clone();
        for &b in &other.breakpoints {
            if !breakpoints.iter().any(|&a| (a - b).abs() < 1e-12) {
                breakpoints.push(b);
            }
        }
        breakpoints.sort_by(f64::total_cmp);

        let (smoothness, poly) = match (&self.poly, &other.poly) {
            (Some(p), Some(q)) => {
                let prod = poly_mul(p, q);
                (Smoothness::Poly(prod.len() as u32 - 1), Some(prod))
            }
            _ => (
                Smoothness::from_continuity(
                    self.smoothness.continuity().min(other.smoothness.continuity()),
                ),
                None,
            ),
        };

        CorpusFunction {
            id,
            smoothness,
            eval,
            derivs,
            breakpoints,
            known_w1: None,
            known_w2: None,
            poly,
        }
    }

    /// Load-time sanity check: every declared derivative of order r must
    /// match a central finite difference of the order r-1 evaluator at 33
    /// interior points (points too close to a kink are skipped, the
    /// difference quotient is ill-conditioned there).
    pub fn self_check(&self) -> Result<()> {
        let step = 1e-5;
        for r in 1..=self.derivs.len() {
            let lower = self.deriv_fn(r as u32 - 1).unwrap();
            let upper = self.deriv_fn(r as u32).unwrap();
            for j in 1..=33 {
                let x = j as f64 / 34.0;
                if x - step <= 0.0 || x + step >= 1.0 {
                    continue;
                }
                if self.breakpoints.iter().any(|&b| (x - b).abs() < 1e-3) {
                    continue;
                }
                let fd = (lower(x + step) - lower(x - step)) / (2.0 * step);
                let exact = upper(x);
                if (fd - exact).abs() > 1e-6 * (1.0 + exact.abs()) {
                    return Err(Error::SelfCheck {
                        id: self.id.clone(),
                        reason: format!(
                            "derivative order {r} at x={x}: analytic {exact}, finite difference {fd}"
                        ),
                    });
                }
            }
        }
        if let Some(coeffs) = &self.poly {
            // The evaluator must be the declared polynomial.
            for j in 0..=16 {
                let x = j as f64 / 16.0;
                let horner = coeffs
                    .iter()
                    .rev()
                    .fold(0.0, |acc, c| acc * x + to_f64(c));
                if (horner - self.eval(x)).abs() > 1e-12 {
                    return Err(Error::SelfCheck {
                        id: self.id.clone(),
                        reason: format!("evaluator disagrees with declared coefficients at x={x}"),
                    });
                }
            }
        }
        Ok(())
    }
}

fn poly_mul(p: &[Rat], q: &[Rat]) -> Vec<Rat> {
    let mut out = vec![rint(0); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Monomial e_d(x) = x^d with analytic derivatives to order 4.
fn monomial(d: u32) -> CorpusFunction {
    let id = format!("e{d}");
    let eval: EvalFn = Arc::new(move |x| x.powi(d as i32));
    let mut derivs: Vec<EvalFn> = Vec::new();
    for r in 1..=4u32 {
        if r > d {
            derivs.push(Arc::new(|_| 0.0));
        } else {
            let factor: f64 = (d - r + 1..=d).map(|k| k as f64).product();
            let e = (d - r) as i32;
            derivs.push(Arc::new(move |x| factor * x.powi(e)));
        }
    }
    let mut coeffs = vec![rint(0); d as usize + 1];
    coeffs[d as usize] = rint(1);
    let (known_w1, known_w2): (Option<EvalFn>, Option<EvalFn>) = match d {
        1 => (
            Some(Arc::new(|t: f64| t.min(1.0))),
            Some(Arc::new(|_| 0.0)),
        ),
        2 => (
            // ω1(e2;t) = t(2-t) for t <= 1, plateau 1 beyond.
            Some(Arc::new(|t: f64| if t >= 1.0 { 1.0 } else { t * (2.0 - t) })),
            // ω2(e2;t) = 2 min(t, 1/2)^2 (the step 2h must fit in [0,1]).
            Some(Arc::new(|t: f64| {
                let h = t.min(0.5);
                2.0 * h * h
            })),
        ),
        _ => (None, None),
    };
    CorpusFunction {
        id,
        smoothness: Smoothness::Poly(d),
        eval,
        derivs,
        breakpoints: vec![],
        known_w1,
        known_w2,
        poly: Some(coeffs),
    }
}

/// Signed powers of u = x - 1/2 with a kink at 1/2:
/// |u| (C0), u|u| (C1), |u|^3 (C2), u^3|u| (C3).
fn kink_family(power: u32) -> CorpusFunction {
    let u = |x: f64| x - 0.5;
    match power {
        1 => CorpusFunction {
            id: "abs_half".into(),
            smoothness: Smoothness::C0,
            eval: Arc::new(move |x| u(x).abs()),
            derivs: vec![],
            breakpoints: vec![0.5],
            known_w1: Some(Arc::new(|t: f64| t.min(0.5))),
            known_w2: None,
            poly: None,
        },
        2 => CorpusFunction {
            id: "cusp".into(),
            smoothness: Smoothness::C1,
            eval: Arc::new(move |x| u(x) * u(x).abs()),
            derivs: vec![Arc::new(move |x| 2.0 * u(x).abs())],
            breakpoints: vec![0.5],
            known_w1: None,
            known_w2: None,
            poly: None,
        },
        3 => CorpusFunction {
            id: "cubic_cusp".into(),
            smoothness: Smoothness::C2,
            eval: Arc::new(move |x| u(x).abs().powi(3)),
            derivs: vec![
                Arc::new(move |x| 3.0 * u(x) * u(x).abs()),
                Arc::new(move |x| 6.0 * u(x).abs()),
            ],
            breakpoints: vec![0.5],
            known_w1: None,
            known_w2: None,
            poly: None,
        },
        4 => CorpusFunction {
            id: "quartic_cusp".into(),
            smoothness: Smoothness::C3,
            eval: Arc::new(move |x| u(x).powi(3) * u(x).abs()),
            derivs: vec![
                Arc::new(move |x| 4.0 * u(x) * u(x) * u(x).abs()),
                Arc::new(move |x| 12.0 * u(x) * u(x).abs()),
                Arc::new(move |x| 24.0 * u(x).abs()),
            ],
            breakpoints: vec![0.5],
            known_w1: None,
            known_w2: None,
            poly: None,
        },
        _ => unreachable!(),
    }
}

/// The built-in corpus. Ids: e0..e4, abs_half, cusp, cubic_cusp,
/// quartic_cusp, exp_scaled, sin_pi.
pub fn builtin_corpus() -> Vec<CorpusFunction> {
    let mut corpus: Vec<CorpusFunction> = (0..=4).map(monomial).collect();
    corpus.extend((1..=4).map(kink_family));

    // exp(x-1): C4 transcendental, all derivatives equal the function.
    let e: EvalFn = Arc::new(|x: f64| (x - 1.0).exp());
    corpus.push(CorpusFunction {
        id: "exp_scaled".into(),
        smoothness: Smoothness::C4,
        eval: e.clone(),
        derivs: vec![e.clone(), e.clone(), e.clone(), e],
        breakpoints: vec![],
        known_w1: None,
        known_w2: None,
        poly: None,
    });

    // sin(pi x): C4, derivatives pick up factors of pi.
    corpus.push(CorpusFunction {
        id: "sin_pi".into(),
        smoothness: Smoothness::C4,
        eval: Arc::new(|x: f64| (PI * x).sin()),
        derivs: vec![
            Arc::new(|x: f64| PI * (PI * x).cos()),
            Arc::new(|x: f64| -PI.powi(2) * (PI * x).sin()),
            Arc::new(|x: f64| -PI.powi(3) * (PI * x).cos()),
            Arc::new(|x: f64| PI.powi(4) * (PI * x).sin()),
        ],
        breakpoints: vec![],
        known_w1: None,
        known_w2: None,
        poly: None,
    });

    corpus
}

pub fn find<'a>(corpus: &'a [CorpusFunction], id: &str) -> Result<&'a CorpusFunction> {
    corpus
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownFunction(id.to_string()))
}

/// Helper kept around for tests and exact cross-checks: evaluate a declared
/// polynomial exactly at a rational point.
pub fn poly_eval_rat(coeffs: &[Rat], x: &Rat) -> Rat {
    coeffs.iter().rev().fold(rint(0), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn corpus_contains_the_advertised_members() {
        let corpus = builtin_corpus();
        let ids: Vec<&str> = corpus.iter().map(|f| f.id.as_str()).collect();
        for id in [
            "e0", "e1", "e2", "e3", "e4", "abs_half", "cusp", "cubic_cusp", "quartic_cusp",
            "exp_scaled", "sin_pi",
        ] {
            assert!(ids.contains(&id), "missing {id}");
        }
        assert_eq!(find(&corpus, "e0").unwrap().smoothness, Smoothness::Poly(0));
        assert!(find(&corpus, "nope").is_err());
    }

    #[test]
    fn every_member_passes_self_check() {
        for f in builtin_corpus() {
            f.self_check().unwrap_or_else(|e| panic!("{e}"));
        }
    }

    #[test]
    fn product_derivatives_follow_the_product_rule() {
        let corpus = builtin_corpus();
        let f = find(&corpus, "e2").unwrap();
        let g = find(&corpus, "sin_pi").unwrap();
        let fg = f.product(g);
        assert_eq!(fg.id, "e2*sin_pi");
        fg.self_check().unwrap();
        // min smoothness of C4 and Poly(2) is C4.
        assert_eq!(fg.smoothness, Smoothness::C4);
    }

    #[test]
    fn polynomial_products_stay_polynomial() {
        let corpus = builtin_corpus();
        let f = find(&corpus, "e2").unwrap();
        let g = find(&corpus, "e3").unwrap();
        let fg = f.product(g);
        assert_eq!(fg.smoothness, Smoothness::Poly(5));
        let coeffs = fg.poly_coeffs().unwrap();
        assert_eq!(coeffs.len(), 6);
        assert_eq!(coeffs[5], rint(1));
        assert_eq!(poly_eval_rat(coeffs, &rat(1, 2)), rat(1, 32));
    }

    #[test]
    fn kink_breakpoints_merge_in_products() {
        let corpus = builtin_corpus();
        let f = find(&corpus, "cusp").unwrap();
        let fg = f.product(f);
        assert_eq!(fg.breakpoints, vec![0.5]);
        assert_eq!(fg.smoothness, Smoothness::C1);
    }

    #[test]
    fn self_check_catches_a_wrong_derivative() {
        let corpus = builtin_corpus();
        let mut f = find(&corpus, "e2").unwrap().clone();
        f.derivs[0] = Arc::new(|x| 3.0 * x);
        assert!(f.self_check().is_err());
    }
}
