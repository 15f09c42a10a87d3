use crate::error::{Error, Result};

/// Generalized Laguerre polynomial `L_n^{(alpha)}(x)` by upward recurrence
///
/// `(k + 1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}`.
///
/// The upper index may be any real `alpha > -1`.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(Error::Domain(format!(
            "Laguerre upper index must exceed -1, got {alpha}"
        )));
    }
    Ok(laguerre_unchecked(n, alpha, x))
}

pub(crate) fn laguerre_unchecked(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_n^{(alpha)}(0) = (alpha + 1)_n / n!`.
pub fn laguerre_at_zero(n: u32, alpha: f64) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * (alpha + k as f64) / k as f64)
}

/// Explicit monomial sum
/// `sum_k (-1)^k binom(n + alpha, n - k) x^k / k!`.
///
/// Independent of the recurrence; used to cross-check it.
pub fn laguerre_series(n: u32, alpha: f64, x: f64) -> f64 {
    // binom(n + alpha, n - k) / k!, built from k = n downward
    let mut total = 0.0;
    for k in 0..=n {
        let mut binom = 1.0;
        for i in 1..=(n - k) {
            binom *= (alpha + k as f64 + i as f64) / i as f64;
        }
        let mut term = binom;
        for i in 1..=k {
            term *= x / i as f64;
        }
        if k % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    total
}
