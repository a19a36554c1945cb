//! The Kantorovich operator, its Bernstein-coefficient representation,
//! derivatives, and central moments.
//!
//! `K_n(f;x) = (n+1) Σ_{k=0}^n p_{n,k}(x) ∫_{k/(n+1)}^{(k+1)/(n+1)} f(t) dt`,
//! so `K_n f` is the degree-n Bernstein polynomial with coefficients
//! `c_k = (n+1) ∫ f` over the k-th subinterval. Declared polynomials route
//! through the closed-form antiderivative (exactly in rationals, and through
//! a cancellation-free factored form in floats); everything else goes through
//! composite Gauss-Legendre quadrature, split at declared breakpoints.

use num::{One, Zero};

use crate::bernstein::{bernstein_basis, BernsteinPoly};
use crate::corpus::CorpusFunction;
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::rat::{in_unit_interval, pow_rat, rat, rint, to_f64, Rat};
use crate::DEFAULT_QUADRATURE_ORDER;

#[derive(Clone, Copy, Debug)]
pub struct KantorovichOp {
    n: usize,
    quadrature_order: usize,
}

impl KantorovichOp {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("operator index n must be >= 1".into()));
        }
        Ok(Self { n, quadrature_order: DEFAULT_QUADRATURE_ORDER })
    }

    pub fn with_quadrature_order(n: usize, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("quadrature order must be >= 1".into()));
        }
        let mut op = Self::new(n)?;
        op.quadrature_order = order;
        Ok(op)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Bernstein coefficients of `K_n f` in float mode.
    pub fn coefficients(&self, f: &CorpusFunction) -> BernsteinPoly<f64> {
        if let Some(coeffs) = f.poly_coeffs() {
            return poly_coefficients_f64(self.n, coeffs);
        }
        let gl = GaussLegendre::new(self.quadrature_order).expect("order validated at construction");
        let np1 = (self.n + 1) as f64;
        let coeffs = (0..=self.n)
            .map(|k| {
                let a = k as f64 / np1;
                let b = (k + 1) as f64 / np1;
                np1 * integrate_with_breakpoints(&gl, a, b, &f.breakpoints, |t| f.eval(t))
            })
            .collect();
        BernsteinPoly::new(coeffs)
    }

    /// Exact rational coefficients; available for declared polynomials only.
    pub fn coefficients_exact(&self, f: &CorpusFunction) -> Option<BernsteinPoly<Rat>> {
        let coeffs = f.poly_coeffs()?;
        let np1 = rint(self.n as i64 + 1);
        let out = (0..=self.n)
            .map(|k| {
                let a = rat(k as i64, self.n as i64 + 1);
                let b = rat(k as i64 + 1, self.n as i64 + 1);
                let mut acc = Rat::zero();
                for (j, c) in coeffs.iter().enumerate() {
                    let e = j as u32 + 1;
                    acc += c * (pow_rat(&b, e) - pow_rat(&a, e)) / rint(e as i64);
                }
                acc * &np1
            })
            .collect();
        Some(BernsteinPoly::new(out))
    }

    /// `K_n(f; x)`.
    pub fn apply(&self, f: &CorpusFunction, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("x = {x} outside [0,1]")));
        }
        Ok(self.coefficients(f).eval(x))
    }

    /// Exact `K_n(f; x)` for declared polynomials at rational x.
    pub fn apply_exact(&self, f: &CorpusFunction, x: &Rat) -> Result<Option<Rat>> {
        if !in_unit_interval(x) {
            return Err(Error::Domain(format!("x = {x} outside [0,1]")));
        }
        Ok(self.coefficients_exact(f).map(|p| p.eval_with_basis(x)))
    }

    /// `(K_n f)^(r)(x)` via the Bernstein derivative rule (r-fold forward
    /// differencing of coefficients). For `r > n` the derivative is
    /// identically zero; `Ok(0.0)` is returned and the caller can flag the
    /// degenerate case by comparing `r` against `n`.
    pub fn derivative(&self, f: &CorpusFunction, r: u32, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("x = {x} outside [0,1]")));
        }
        if r as usize > self.n {
            return Ok(0.0);
        }
        Ok(self.coefficients(f).derivative_n(r).eval(x))
    }
}

fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    gl: &GaussLegendre,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    f: F,
) -> f64 {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&p| p > a + 1e-15 && p < b - 1e-15)
        .collect();
    cuts.sort_by(f64::total_cmp);
    let mut acc = 0.0;
    let mut lo = a;
    for p in cuts {
        acc += gl.integrate(lo, p, &f);
        lo = p;
    }
    acc + gl.integrate(lo, b, &f)
}

/// Float coefficients of K_n applied to a declared polynomial. The
/// antiderivative differences b^e - a^e are computed in the factored form
/// (b-a)·Σ a^i b^(e-1-i), which has no cancellation; (n+1)(b-a) = 1.
fn poly_coefficients_f64(n: usize, coeffs: &[Rat]) -> BernsteinPoly<f64> {
    let np1 = (n + 1) as f64;
    let cf: Vec<f64> = coeffs.iter().map(to_f64).collect();
    let d = cf.len();
    let out = (0..=n)
        .map(|k| {
            let a = k as f64 / np1;
            let b = (k + 1) as f64 / np1;
            // powers a^i, b^i for i in 0..d
            let mut pa = vec![1.0; d];
            let mut pb = vec![1.0; d];
            for i in 1..d {
                pa[i] = pa[i - 1] * a;
                pb[i] = pb[i - 1] * b;
            }
            let mut acc = 0.0;
            for (j, &c) in cf.iter().enumerate() {
                // (b^{j+1} - a^{j+1})/((j+1)(b-a)) = Σ_{i=0}^{j} a^i b^{j-i} / (j+1)
                let mut s = 0.0;
                for i in 0..=j {
                    s += pa[i] * pb[j - i];
                }
                acc += c * s / (j + 1) as f64;
            }
            acc
        })
        .collect();
    BernsteinPoly::new(out)
}

/// Closed-form central moment `M_m(x) = K_n((t-x)^m; x)` for `m <= 4`.
pub fn central_moment_closed(n: usize, m: u32, x: &Rat) -> Result<Rat> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    if !in_unit_interval(x) {
        return Err(Error::Domain(format!("x = {x} outside [0,1]")));
    }
    let nn = rint(n as i64);
    let np1 = rint(n as i64 + 1);
    let one = Rat::one();
    let xx = x * (&one - x); // X = x(1-x)
    let xp = &one - rint(2) * x; // X' = 1-2x
    let value = match m {
        0 => one,
        1 => xp / (rint(2) * &np1),
        2 => (&xx * (&nn - &one) + rat(1, 3)) / pow_rat(&np1, 2),
        3 => {
            let inner = rint(10) * &xx * &nn + rint(2) * pow_rat(x, 2) - rint(2) * x + &one;
            xp * inner / (rint(4) * pow_rat(&np1, 3))
        }
        4 => {
            let inner = rint(3) * pow_rat(&xx, 2) * pow_rat(&nn, 2)
                + rint(5) * &xx * pow_rat(&xp, 2) * &nn
                + pow_rat(x, 4)
                - rint(2) * pow_rat(x, 3)
                + rint(2) * pow_rat(x, 2)
                - x
                + rat(1, 5);
            inner / pow_rat(&np1, 4)
        }
        _ => return Err(Error::Domain(format!("closed-form moments cover m in 0..4, got {m}"))),
    };
    Ok(value)
}

/// Central moment by the exact definition: `(n+1) Σ_k p_{n,k}(x) ·
/// [(b-x)^{m+1} - (a-x)^{m+1}]/(m+1)` with `a = k/(n+1)`, `b = (k+1)/(n+1)`,
/// entirely in rationals. Ground truth for the closed forms and for
/// `variance_e1`.
pub fn central_moment_exact(n: usize, m: u32, x: &Rat) -> Result<Rat> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    if !in_unit_interval(x) {
        return Err(Error::Domain(format!("x = {x} outside [0,1]")));
    }
    let basis = bernstein_basis(n, x);
    let mp1 = rint(m as i64 + 1);
    let mut sum = Rat::zero();
    for (k, p) in basis.iter().enumerate() {
        let a = rat(k as i64, n as i64 + 1) - x;
        let b = rat(k as i64 + 1, n as i64 + 1) - x;
        sum += p * (pow_rat(&b, m + 1) - pow_rat(&a, m + 1)) / &mp1;
    }
    Ok(sum * rint(n as i64 + 1))
}

/// Exact variance `K_n(e_1^2;x) - (K_n(e_1;x))^2` via its closed form
/// `x(1-x)·n/(n+1)^2 + 1/(12(n+1)^2)`.
pub fn variance_e1(n: usize, x: &Rat) -> Result<Rat> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    if !in_unit_interval(x) {
        return Err(Error::Domain(format!("x = {x} outside [0,1]")));
    }
    let np1_sq = pow_rat(&rint(n as i64 + 1), 2);
    Ok(x * (Rat::one() - x) * rint(n as i64) / &np1_sq + rint(1) / (rint(12) * np1_sq))
}

/// Float first moment `M_1(x) = (1-2x)/(2(n+1))`.
pub fn moment1_f64(n: usize, x: f64) -> f64 {
    (1.0 - 2.0 * x) / (2.0 * (n as f64 + 1.0))
}

/// Float second moment `M_2(x) = (x(1-x)(n-1) + 1/3)/(n+1)^2`.
pub fn moment2_f64(n: usize, x: f64) -> f64 {
    let np1 = n as f64 + 1.0;
    (x * (1.0 - x) * (n as f64 - 1.0) + 1.0 / 3.0) / (np1 * np1)
}
