//! Bernstein basis and polynomials in Bernstein coefficient form.
//!
//! The basis `p_{n,k}(x) = C(n,k) x^k (1-x)^{n-k}` is computed by the
//! triangular degree-recursion (raise the degree one step at a time), not by
//! binomial coefficients and raw powers, so it stays stable for large `n`.
//! The same generic routine serves `f64` and exact rationals.

use num::traits::Num;

use crate::error::{Error, Result};
use crate::rat::{in_unit_interval, Rat};

/// All `n+1` basis values at `x` by the triangular degree-recursion.
///
/// Works over any commutative ring with 0/1 (used with `f64` and `Rat`).
/// Callers are responsible for `0 <= x <= 1`; the checked wrappers below
/// enforce it.
pub fn bernstein_basis<T: Clone + Num>(n: usize, x: &T) -> Vec<T> {
    let omx = T::one() - x.clone();
    let mut b = vec![T::zero(); n + 1];
    b[0] = T::one();
    for j in 1..=n {
        b[j] = b[j - 1].clone() * x.clone();
        for k in (1..j).rev() {
            b[k] = b[k - 1].clone() * x.clone() + b[k].clone() * omx.clone();
        }
        b[0] = b[0].clone() * omx.clone();
    }
    b
}

pub fn bernstein_basis_f64(n: usize, x: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [0,1]")));
    }
    Ok(bernstein_basis(n, &x))
}

pub fn bernstein_basis_rat(n: usize, x: &Rat) -> Result<Vec<Rat>> {
    if !in_unit_interval(x) {
        return Err(Error::Domain(format!("x = {x} outside [0,1]")));
    }
    Ok(bernstein_basis(n, x))
}

/// A polynomial of degree `n` in Bernstein coefficient form:
/// `p(x) = Σ_k c_k p_{n,k}(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BernsteinPoly<T> {
    coeffs: Vec<T>,
}

impl<T> BernsteinPoly<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a Bernstein polynomial needs at least one coefficient");
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }
}

impl<T: Clone + Num> BernsteinPoly<T> {
    /// Evaluation through the full basis. Exact for rational coefficients and
    /// rational `x`; O(n^2).
    pub fn eval_with_basis(&self, x: &T) -> T {
        let basis = bernstein_basis(self.degree(), x);
        let mut acc = T::zero();
        for (c, b) in self.coeffs.iter().zip(basis) {
            acc = acc + c.clone() * b;
        }
        acc
    }
}

impl BernsteinPoly<f64> {
    /// Fast evaluation: mode-centered ratio recursion with normalization by
    /// the partition of unity. O(n), no underflow of the relevant weights for
    /// n up to several thousand, and exact for constant coefficients.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.degree();
        if n == 0 || x <= 0.0 {
            return self.coeffs[0];
        }
        if x >= 1.0 {
            return self.coeffs[n];
        }
        // Start at the mode of the binomial weights, where p_{n,k}(x) is
        // largest, and walk outward. The unnormalized weights decrease
        // monotonically in both directions from there.
        let k0 = (((n + 1) as f64) * x).floor().min(n as f64) as usize;
        let mut sw = 1.0;
        let mut swc = self.coeffs[k0];
        let up = x / (1.0 - x);
        let mut w = 1.0;
        for k in k0..n {
            w *= up * (n - k) as f64 / (k + 1) as f64;
            sw += w;
            swc += w * self.coeffs[k + 1];
            if w < 1e-300 {
                break;
            }
        }
        let down = (1.0 - x) / x;
        w = 1.0;
        for k in (1..=k0).rev() {
            w *= down * k as f64 / (n - k + 1) as f64;
            sw += w;
            swc += w * self.coeffs[k - 1];
            if w < 1e-300 {
                break;
            }
        }
        swc / sw
    }

    /// First derivative: degree drops by one, coefficients are scaled forward
    /// differences `n (c_{k+1} - c_k)`.
    pub fn derivative(&self) -> BernsteinPoly<f64> {
        let n = self.degree();
        if n == 0 {
            return BernsteinPoly::new(vec![0.0]);
        }
        let coeffs = self
            .coeffs
            .windows(2)
            .map(|w| n as f64 * (w[1] - w[0]))
            .collect();
        BernsteinPoly::new(coeffs)
    }

    /// `r`-fold derivative. For `r > degree` the result is the zero
    /// polynomial (the caller can detect this case by comparing `r` with
    /// `degree()`).
    pub fn derivative_n(&self, r: u32) -> BernsteinPoly<f64> {
        let mut p = self.clone();
        for _ in 0..r {
            p = p.derivative();
        }
        p
    }
}

impl BernsteinPoly<Rat> {
    pub fn to_f64(&self) -> BernsteinPoly<f64> {
        BernsteinPoly::new(self.coeffs.iter().map(crate::rat::to_f64).collect())
    }
}
