use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::quadrature::{gauss_legendre_rule, integrate_interval, SemilineIntegrator};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatoryResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    /// Truncation point of the `r` integral.
    pub cutoff: f64,
}

fn legendre16() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(16))
}

/// `(2 pi)^{-1/2} int_0^inf g(r) e^{-i p r} dr`.
///
/// The `r` range is truncated once a tail bound on `int |g|` falls below
/// `tol / 10`; the remainder is split into panels of at most one period and
/// each panel is integrated adaptively.
pub fn fourier_transform_semiline<G: Fn(f64) -> f64>(
    g: G,
    p: f64,
    tol: f64,
) -> Result<OscillatoryResult> {
    if !p.is_finite() || !(tol > 0.0) {
        return Err(Error::Domain("momentum must be finite and tolerance positive".into()));
    }
    let mut evaluations = 0;
    let mut cutoff = 1.0;
    let tail = loop {
        let shift = cutoff;
        let t = SemilineIntegrator::new(tol)
            .with_fast_path(false)
            .with_scale(cutoff)
            .integrate(|x| g(shift + x).abs())?;
        evaluations += t.evaluations;
        if t.value + t.abs_error_estimate < 0.1 * tol {
            break t.value + t.abs_error_estimate;
        }
        cutoff *= 2.0;
        if cutoff > 1e8 {
            return Err(Error::ConvergenceFailure {
                estimate: t.value,
                tol,
                evaluations,
            });
        }
    };
    let period = if p == 0.0 { cutoff } else { 2.0 * PI / p.abs() };
    let panels = (cutoff / period).ceil().max(1.0) as usize;
    let width = cutoff / panels as f64;
    let panel_tol = tol / panels as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    let mut error = tail;
    for k in 0..panels {
        let (a, b) = (k as f64 * width, (k + 1) as f64 * width);
        let c = integrate_interval(|r| g(r) * (p * r).cos(), a, b, panel_tol)?;
        let s = integrate_interval(|r| -g(r) * (p * r).sin(), a, b, panel_tol)?;
        re += c.value;
        im += s.value;
        error += c.abs_error_estimate + s.abs_error_estimate;
        evaluations += c.evaluations + s.evaluations;
    }
    let norm = 1.0 / (2.0 * PI).sqrt();
    Ok(OscillatoryResult {
        value: Complex64::new(re * norm, im * norm),
        abs_error_estimate: error * norm,
        evaluations,
        cutoff,
    })
}

/// Fixed Gauss-Legendre mesh on `[0, r_max]` for transforming one function
/// at many momenta.
///
/// Panels grow geometrically (ratio 2) from `inner` up to the uniform
/// width `min(10 / p_max, r_max / 64)`, so that both a power-law origin and
/// oscillations up to `p_max` are resolved with 16 nodes per panel.
#[derive(Debug, Clone)]
pub struct FourierMesh {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    panel_starts: Vec<usize>,
}

impl FourierMesh {
    pub fn new(r_max: f64, p_max: f64, inner: f64) -> Self {
        Self::with_panel_width(r_max, inner, (10.0 / p_max).min(r_max / 64.0))
    }

    pub fn with_panel_width(r_max: f64, inner: f64, width: f64) -> Self {
        let mut edges = vec![0.0];
        let mut x = inner.min(width);
        while x < width {
            edges.push(x);
            x *= 2.0;
        }
        let start = *edges.last().expect("edges start at zero");
        let remaining = r_max - start;
        let uniform = (remaining / width).ceil().max(1.0) as usize;
        let step = remaining / uniform as f64;
        for k in 1..=uniform {
            edges.push(start + step * k as f64);
        }
        let rule = legendre16();
        let mut nodes = Vec::with_capacity(edges.len() * 16);
        let mut weights = Vec::with_capacity(edges.len() * 16);
        let mut panel_starts = Vec::with_capacity(edges.len());
        for w in edges.windows(2) {
            let (c, h) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
            panel_starts.push(nodes.len());
            for &(t, wt) in rule {
                nodes.push(c + h * t);
                weights.push(h * wt);
            }
        }
        Self { nodes, weights, panel_starts }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn panels(&self) -> usize {
        self.panel_starts.len()
    }

    pub fn integrate(&self, values: &[f64]) -> f64 {
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }

    /// `(2 pi)^{-1/2} sum_k w_k g_k e^{-i p r_k}` with `weighted[k] = w_k g_k`.
    pub fn transform_weighted(&self, weighted: &[f64], p: f64) -> Complex64 {
        let mut re = 0.0;
        let mut im = 0.0;
        for (r, wg) in self.nodes.iter().zip(weighted) {
            let (s, c) = (p * r).sin_cos();
            re += wg * c;
            im -= wg * s;
        }
        Complex64::new(re, im) / (2.0 * PI).sqrt()
    }

    pub fn weighted(&self, values: &[f64]) -> Vec<f64> {
        self.weights.iter().zip(values).map(|(w, v)| w * v).collect()
    }
}
