//! Position and momentum densities of a bound state and their entropies.

use std::f64::consts::PI;

use serde::Serialize;

use super::convention::{DensityConvention, MomentumRule, PositionMeasure};
use crate::error::{Error, Result};
use crate::specialfn::gamma::log_gamma_unchecked;
use crate::specialfn::laguerre::laguerre_at_zero;
use crate::specialfn::quadrature::kronrod21;
use crate::specialfn::{integrate_interval, xlogx, FourierMesh};
use crate::spectrum::RadialState;

/// Normalized position density `rho(r)` of a state under one measure.
#[derive(Debug, Clone, Copy)]
pub struct PositionDensity {
    state: RadialState,
    measure: PositionMeasure,
    /// `ln int |psi|^2 w dr`.
    ln_norm: f64,
    /// Relative quadrature error of the normalization integral.
    norm_error: f64,
}

impl PositionDensity {
    pub fn new(state: &RadialState, measure: PositionMeasure, tol: f64) -> Result<Self> {
        let mut d = PositionDensity { state: *state, measure, ln_norm: 0.0, norm_error: 0.0 };
        let mut total = 0.0;
        let mut error = 0.0;
        for (a, b) in d.pieces() {
            let q = integrate_interval(|r| d.raw(r), a, b, 0.01 * tol)?;
            total += q.value;
            error += q.abs_error_estimate;
        }
        d.ln_norm = total.ln();
        d.norm_error = error / total;
        Ok(d)
    }

    pub fn measure(&self) -> PositionMeasure {
        self.measure
    }

    /// `int |psi|^2 w dr` before renormalization.
    pub fn raw_normalization(&self) -> f64 {
        self.ln_norm.exp()
    }

    fn ln_weight(&self, r: f64) -> f64 {
        match self.measure {
            PositionMeasure::PlainDr => 0.0,
            PositionMeasure::RadialRDr => r.ln(),
            PositionMeasure::ConicalAlphaRDr => (self.state.config.alpha * r).ln(),
        }
    }

    fn raw(&self, r: f64) -> f64 {
        let (ln, _) = self.state.ln_abs(r);
        (2.0 * ln + self.ln_weight(r)).exp()
    }

    /// `ln rho(r)`.
    pub fn ln_density(&self, r: f64) -> f64 {
        let (ln, _) = self.state.ln_abs(r);
        2.0 * ln + self.ln_weight(r) - self.ln_norm
    }

    pub fn density(&self, r: f64) -> f64 {
        self.ln_density(r).exp()
    }

    /// `sign(psi) sqrt(rho)`.
    pub fn amplitude(&self, r: f64) -> f64 {
        let (ln, sign) = self.state.ln_abs(r);
        sign * (ln + 0.5 * (self.ln_weight(r) - self.ln_norm)).exp()
    }

    /// `(g0, mu, c1)` with `rho = g0 r^mu (1 + c1 r^2 + ...)` near the origin.
    pub fn origin_series(&self) -> (f64, f64, f64) {
        let p = &self.state.params;
        let n = self.state.qn.n as f64;
        let j = p.j;
        let om = p.omega_big;
        let (m, w0) = match self.measure {
            PositionMeasure::PlainDr => (0.0, 1.0),
            PositionMeasure::RadialRDr => (1.0, 1.0),
            PositionMeasure::ConicalAlphaRDr => (1.0, self.state.config.alpha),
        };
        let l0 = laguerre_at_zero(self.state.qn.n, j);
        let ln_g0 =
            2.0 * self.state.norm_log + j * om.ln() + 2.0 * l0.ln() + w0.ln() - self.ln_norm;
        let c1 = -om * (1.0 + 2.0 * n / (j + 1.0));
        (ln_g0.exp(), 2.0 * j + m, c1)
    }

    /// Integration pieces `[0, node_1], ..., [node_k, R]`.
    fn pieces(&self) -> Vec<(f64, f64)> {
        let mut edges = vec![0.0];
        edges.extend(self.state.nodes());
        edges.push(self.support_radius());
        edges.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Radius beyond which the density is below `e^-40` of its peak.
    pub fn support_radius(&self) -> f64 {
        self.state.outer_radius()
    }

    pub fn length_scale(&self) -> f64 {
        1.0 / self.state.omega().sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositionEntropy {
    pub value: f64,
    pub abs_error_estimate: f64,
    /// `int |psi|^2 w dr` before renormalization.
    pub normalization: f64,
}

/// `S_r = -int_0^inf rho ln rho dr` with `rho` renormalized under `measure`.
pub fn position_entropy(
    state: &RadialState,
    measure: PositionMeasure,
    tol: f64,
) -> Result<PositionEntropy> {
    let rho = PositionDensity::new(state, measure, tol)?;
    let mut value = 0.0;
    let mut error = 0.0;
    for (a, b) in rho.pieces() {
        let q = integrate_interval(|r| -xlogx(rho.density(r)), a, b, tol)?;
        value += q.value;
        error += q.abs_error_estimate;
    }
    // normalization error feeds through as -delta (1 + S)
    error += rho.norm_error * (1.0 + value.abs());
    Ok(PositionEntropy { value, abs_error_estimate: error, normalization: rho.raw_normalization() })
}

/// Momentum cutoff and grid refinement for [`momentum_entropy`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumGrid {
    /// Fixed cutoff; `None` picks it from the asymptotic tail.
    pub p_max: Option<f64>,
    /// Refinement factor applied to both the `r` mesh and the `p` panels.
    pub resolution: u32,
}

impl Default for MomentumGrid {
    fn default() -> Self {
        MomentumGrid { p_max: None, resolution: 1 }
    }
}

impl MomentumGrid {
    pub fn refined(self) -> Self {
        MomentumGrid { p_max: self.p_max.map(|p| 2.0 * p), resolution: 2 * self.resolution }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumEntropy {
    pub value: f64,
    pub abs_error_estimate: f64,
    /// Mass of `sigma` over the full `p` line before renormalization
    /// (over `p >= 0` for the half-line rule, which is not renormalized).
    pub normalization: f64,
    /// Part of that mass beyond the cutoff, from the asymptotic tail.
    pub tail_mass: f64,
    pub p_max: f64,
}

/// `sigma(p) ~ A p^-kappa (1 + d p^-2)` for large `p`.
#[derive(Debug, Clone, Copy)]
struct PowerTail {
    amplitude: f64,
    kappa: f64,
    d: f64,
}

impl PowerTail {
    /// Modulus of the transform of `g0 r^mu (1 + c1 r^2)`.
    fn of_transform(g0: f64, mu: f64, c1: f64) -> Self {
        let amplitude = g0.abs() * (log_gamma_unchecked(mu + 1.0)).exp() / (2.0 * PI).sqrt();
        PowerTail { amplitude, kappa: mu + 1.0, d: -c1 * (mu + 1.0) * (mu + 2.0) }
    }

    fn squared(self) -> Self {
        PowerTail { amplitude: self.amplitude.powi(2), kappa: 2.0 * self.kappa, d: 2.0 * self.d }
    }

    fn eval(&self, p: f64) -> f64 {
        self.amplitude * p.powf(-self.kappa) * (1.0 + self.d / (p * p))
    }

    /// `int_P^inf p^-a dp`.
    fn i(p: f64, a: f64) -> f64 {
        p.powf(1.0 - a) / (a - 1.0)
    }

    /// `int_P^inf p^-a ln p dp`.
    fn j(p: f64, a: f64) -> f64 {
        p.powf(1.0 - a) * (p.ln() / (a - 1.0) + 1.0 / ((a - 1.0) * (a - 1.0)))
    }

    fn mass(&self, p: f64) -> f64 {
        self.amplitude * (Self::i(p, self.kappa) + self.d * Self::i(p, self.kappa + 2.0))
    }

    /// `-int_P^inf sigma ln sigma dp` to first order in `d`.
    fn entropy(&self, p: f64) -> f64 {
        let (a, k, d) = (self.amplitude, self.kappa, self.d);
        let la = a.ln();
        -a * (la * Self::i(p, k) - k * Self::j(p, k)
            + d * (la * Self::i(p, k + 2.0) - k * Self::j(p, k + 2.0))
            + d * Self::i(p, k + 2.0))
    }
}

/// `S_p` under `rule` for the position density built with `measure`.
///
/// The transform is sampled on Gauss-Kronrod panels up to a cutoff `P`; the
/// remainder comes from the power-law tail fixed by the origin behaviour of
/// the transformed function. `P` is raised until the sampled transform
/// agrees with that tail.
pub fn momentum_entropy(
    state: &RadialState,
    conv: DensityConvention,
    grid: MomentumGrid,
    tol: f64,
) -> Result<MomentumEntropy> {
    if grid.resolution == 0 {
        return Err(Error::invalid("resolution", 0.0, "must be at least 1"));
    }
    let rho = PositionDensity::new(state, conv.position_measure, tol)?;
    let (g0, mu, c1) = rho.origin_series();
    let tail = match conv.momentum_rule {
        MomentumRule::FtOfWavefunction => {
            PowerTail::of_transform(g0.sqrt(), 0.5 * mu, 0.5 * c1).squared()
        }
        _ => PowerTail::of_transform(g0, mu, c1),
    };
    if tail.kappa <= 1.0 {
        return Err(Error::DivergentMomentumDensity { exponent: tail.kappa });
    }
    let scale = state.omega().sqrt();
    let cap = 400.0 * scale;
    let mut p_max = match grid.p_max {
        Some(p) if p > 0.0 => p,
        Some(p) => return Err(Error::invalid("p_max", p, "must be positive")),
        None => (40.0 * scale).max((1000.0 * tail.d.abs()).sqrt()).min(cap),
    };
    loop {
        let sampled = SampledMomentum::new(&rho, conv.momentum_rule, p_max, grid.resolution, scale);
        let model = tail.eval(p_max);
        let mismatch = ((sampled.end_value - model) / model).abs();
        let negligible = tail.mass(p_max) < 1e-2 * tol;
        if grid.p_max.is_some() || negligible || mismatch <= 1e-3 {
            return Ok(sampled.finish(&tail));
        }
        if p_max >= cap {
            return Err(Error::TailMassExceeded { p_max, mismatch });
        }
        p_max = (2.0 * p_max).min(cap);
    }
}

/// `sigma` sampled on the `p` panels.
struct SampledMomentum {
    rule: MomentumRule,
    p_max: f64,
    /// `(kronrod, gauss)` estimates of `int sigma` and `-int sigma ln sigma`.
    mass: (f64, f64),
    entropy: (f64, f64),
    end_value: f64,
}

impl SampledMomentum {
    fn new(rho: &PositionDensity, rule: MomentumRule, p_max: f64, res: u32, scale: f64) -> Self {
        let res_f = res as f64;
        let inner = 1e-12 / scale;
        let mesh = FourierMesh::new(rho.support_radius(), p_max * res_f, inner);
        let g: Vec<f64> = mesh
            .nodes()
            .iter()
            .map(|&r| match rule {
                MomentumRule::FtOfWavefunction => rho.amplitude(r),
                _ => rho.density(r),
            })
            .collect();
        let weighted = mesh.weighted(&g);
        let sigma = |p: f64| {
            let f = mesh.transform_weighted(&weighted, p);
            match rule {
                MomentumRule::FtOfWavefunction => f.norm_sqr(),
                _ => f.norm(),
            }
        };
        let edges = p_edges(p_max, res_f, scale);
        let rule21 = kronrod21();
        let mut mass = (0.0, 0.0);
        let mut entropy = (0.0, 0.0);
        for w in edges.windows(2) {
            let (c, h) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
            for &(x, wk, wg) in &rule21 {
                let s = sigma(c + h * x);
                let e = -xlogx(s);
                mass.0 += h * wk * s;
                mass.1 += h * wg * s;
                entropy.0 += h * wk * e;
                entropy.1 += h * wg * e;
            }
        }
        SampledMomentum { rule, p_max, mass, entropy, end_value: sigma(p_max) }
    }

    fn finish(self, tail: &PowerTail) -> MomentumEntropy {
        let tail_mass = tail.mass(self.p_max);
        let m = self.mass.0 + tail_mass;
        let e = self.entropy.0 + tail.entropy(self.p_max);
        let dm = (self.mass.0 - self.mass.1).abs();
        let de = (self.entropy.0 - self.entropy.1).abs();
        match self.rule {
            MomentumRule::FtOfDensityModulusHalfLine => MomentumEntropy {
                value: e,
                abs_error_estimate: de,
                normalization: m,
                tail_mass,
                p_max: self.p_max,
            },
            _ => MomentumEntropy {
                // sigma / (2m) on the whole line
                value: e / m + (2.0 * m).ln(),
                abs_error_estimate: de / m + dm * (e.abs() / (m * m) + 1.0 / m),
                normalization: 2.0 * m,
                tail_mass: 2.0 * tail_mass,
                p_max: self.p_max,
            },
        }
    }
}

/// Uniform panels of width `0.1 sqrt(Omega) / res` up to `10 sqrt(Omega)`,
/// then geometric panels up to `p_max`.
fn p_edges(p_max: f64, res: f64, scale: f64) -> Vec<f64> {
    let knee = (10.0 * scale).min(p_max);
    let uniform = (100.0 * res * knee / (10.0 * scale)).ceil().max(1.0) as usize;
    let mut edges: Vec<f64> = (0..=uniform).map(|k| knee * k as f64 / uniform as f64).collect();
    let ratio = 1.1f64.powf(1.0 / res);
    let mut p = knee;
    while p < p_max {
        p = (p * ratio).min(p_max);
        if p_max - p < 1e-3 * (ratio - 1.0) * p {
            p = p_max;
        }
        edges.push(p);
    }
    edges
}
