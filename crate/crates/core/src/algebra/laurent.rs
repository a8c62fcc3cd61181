//! Truncated Laurent expansions of rational functions.

use std::fmt;

use super::field::Field;
use super::frac::Frac;
use super::poly::Poly;

/// Coefficients of a Laurent series on the index window `[start, start + len)`.
/// Every index below `start` is zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentWindow<K> {
    pub start: i64,
    pub coeffs: Vec<K>,
}

impl<K: Field> LaurentWindow<K> {
    pub fn new(start: i64, coeffs: Vec<K>) -> Self {
        LaurentWindow { start, coeffs }
    }

    pub fn zeros(start: i64, len: usize) -> Self {
        LaurentWindow::new(start, vec![K::zero(); len])
    }

    pub fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// Coefficient at index `i`; zero outside the window.
    pub fn at(&self, i: i64) -> K {
        if i < self.start {
            return K::zero();
        }
        self.coeffs
            .get((i - self.start) as usize)
            .cloned()
            .unwrap_or_else(K::zero)
    }
}

impl<K: Field> fmt::Display for LaurentWindow<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}): [", self.start, self.end())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Power-series inverse of `s(0) + s(1)x + …` with `s(0) ≠ 0`, first `len` terms.
///
/// This is the inverse recurrence specialised to degree zero:
/// `inv(0) = s(0)⁻¹` and `inv(n) = −s(0)⁻¹ · Σ_{i=1..n} s(i)·inv(n−i)`.
fn series_inverse<K: Field>(s: &Poly<K>, len: usize) -> Vec<K> {
    let s0_inv = s.coeff(0).inv().expect("constant term is nonzero");
    let neg_s0_inv = -s0_inv.clone();
    let mut inv: Vec<K> = Vec::with_capacity(len);
    for n in 0..len {
        if n == 0 {
            inv.push(s0_inv.clone());
            continue;
        }
        let top = n.min(s.degree().unwrap_or(0));
        let mut acc = K::zero();
        for i in 1..=top {
            acc = acc + s.coeff(i) * inv[n - i].clone();
        }
        inv.push(acc * neg_s0_inv.clone());
    }
    inv
}

/// Coefficients of the Laurent expansion of `p` on `[lo, hi)`.
///
/// With `den = x^k · d` and `d(0) ≠ 0`, the expansion is
/// `x^{-k} · num · d⁻¹`, where `d⁻¹` is the power-series inverse.
pub fn laurent_expand<K: Field>(p: &Frac<K>, lo: i64, hi: i64) -> LaurentWindow<K> {
    assert!(lo <= hi, "empty window must satisfy lo <= hi");
    let len = (hi - lo) as usize;
    let mut out = LaurentWindow::zeros(lo, len);
    if p.num().is_zero() || len == 0 {
        return out;
    }
    let (k, d) = p.den().split_x_power();
    let k = k as i64;
    // Power-series coefficient n of num·d⁻¹ sits at Laurent index n − k.
    if hi + k <= 0 {
        return out;
    }
    let need = (hi + k) as usize;
    let d_inv = series_inverse(&d, need);
    let num = p.num();
    for idx in lo.max(-k)..hi {
        let n = (idx + k) as usize;
        let top = n.min(num.degree().unwrap_or(0));
        let mut acc = K::zero();
        for i in 0..=top {
            let a = num.coeff(i);
            if !a.is_zero() {
                acc = acc + a * d_inv[n - i].clone();
            }
        }
        out.coeffs[(idx - lo) as usize] = acc;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{RatFunc, Rational};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| Rational::from(c)).collect()
    }

    #[test]
    fn one_over_x() {
        let w = laurent_expand(&"1/x".parse::<RatFunc>().unwrap(), -2, 2);
        assert_eq!(w.coeffs, q(&[0, 1, 0, 0]));
        assert_eq!(w.at(-1), Rational::from(1));
    }

    #[test]
    fn polynomial_coefficients() {
        let w = laurent_expand(&"3 + 2*x".parse::<RatFunc>().unwrap(), 0, 3);
        assert_eq!(w.coeffs, q(&[3, 2, 0]));
    }

    #[test]
    fn geometric_series() {
        let w = laurent_expand(&"1/(1-x)".parse::<RatFunc>().unwrap(), 0, 4);
        assert_eq!(w.coeffs, q(&[1, 1, 1, 1]));
    }

    #[test]
    fn zero_is_all_zeros() {
        let w = laurent_expand(&RatFunc::zero(), -3, 3);
        assert!(w.coeffs.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn window_entirely_before_degree() {
        let w = laurent_expand(&"x^5".parse::<RatFunc>().unwrap(), -4, 2);
        assert!(w.coeffs.iter().all(|c| c.is_zero()));
        let w = laurent_expand(&"1/x^3".parse::<RatFunc>().unwrap(), -10, -5);
        assert!(w.coeffs.iter().all(|c| c.is_zero()));
    }
}
