//! Numerov shooting solver for the radial equation, used to check the
//! closed-form spectrum.
//!
//! With `x = ln r` the radial equation
//! `psi'' + psi'/r + [2M(E - V_eff(r))] psi = 0` becomes
//! `psi_xx = [nu^2 - (2ME - C0) r^2 + A r^4] psi`, free of first
//! derivatives, where `A r^2 + nu^2 / r^2 + C0` is `2M V_eff`. The grid is
//! uniform in `x`. Coefficients are assembled from the raw physical
//! parameters, not from the closed-form parameter bundle.

use crate::error::{Error, Result};
use crate::model::{PotentialSpec, QuantumNumbers, SystemConfig};
use crate::spectrum::CrossTermReading;

pub const DEFAULT_POINTS: usize = 8000;
pub const DEFAULT_TOL: f64 = 1e-8;

/// `2M V_eff(r) = a2 r^2 + nu2 / r^2 + c0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialProblem {
    pub a2: f64,
    pub nu2: f64,
    pub c0: f64,
    pub mass: f64,
}

impl RadialProblem {
    pub fn new(
        config: &SystemConfig,
        potential: &PotentialSpec,
        ell: i32,
        reading: CrossTermReading,
    ) -> Result<Self> {
        config.validate()?;
        potential.validate()?;
        let m = config.mass;
        let k = potential.coefficients(m);
        let a2sq = config.alpha * config.alpha;
        let eb = config.charge * config.b_field;
        let shift = ell as f64 - config.phi;
        let cross = match reading {
            CrossTermReading::Absolute => shift.abs(),
            CrossTermReading::Signed => shift,
        };
        let a2 = 2.0 * m * k.a + eb * eb / (4.0 * a2sq);
        if a2 <= 0.0 {
            if matches!(potential, PotentialSpec::InverseSquare { .. }) {
                return Err(Error::CaseDNeedsField);
            }
            return Err(Error::DegenerateConfinement);
        }
        Ok(RadialProblem {
            a2,
            nu2: 2.0 * m * k.b + shift * shift / a2sq,
            c0: 2.0 * m * k.c + 2.0 * m * (eb / (2.0 * m)) * cross / a2sq,
            mass: m,
        })
    }

    /// `V_eff(r)` reassembled from the coefficients.
    pub fn potential(&self, r: f64) -> f64 {
        (self.a2 * r * r + self.nu2 / (r * r) + self.c0) / (2.0 * self.mass)
    }

    /// Rough ceiling on the level `n`: the harmonic estimate plus margin.
    fn energy_scale(&self, n: u32) -> f64 {
        let om = self.a2.sqrt();
        (om * (2.0 * n as f64 + self.nu2.sqrt() + 1.0) + self.c0.abs()) / self.mass
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub num_points: usize,
}

impl RadialGrid {
    /// `Omega r_max^2 = 80 + 4 (2n + nu + 1)` and `r_min = 1e-6 r_max`.
    pub fn for_level(problem: &RadialProblem, n: u32, num_points: usize) -> Self {
        let om = problem.a2.sqrt();
        let r_max = ((80.0 + 4.0 * (2.0 * n as f64 + problem.nu2.sqrt() + 1.0)) / om).sqrt();
        RadialGrid { r_min: 1e-6 * r_max, r_max, num_points }
    }

    pub fn refined(&self) -> Self {
        RadialGrid { num_points: 2 * self.num_points - 1, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_min < self.r_max) || !self.r_max.is_finite() {
            return Err(Error::Domain(format!(
                "grid needs 0 < r_min < r_max, got [{}, {}]",
                self.r_min, self.r_max
            )));
        }
        if self.num_points < 1000 {
            return Err(Error::Domain(format!(
                "grid needs at least 1000 points, got {}",
                self.num_points
            )));
        }
        Ok(())
    }

    fn step(&self) -> f64 {
        (self.r_max / self.r_min).ln() / (self.num_points - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumerovSolution {
    /// Eigenvalue on the refined grid.
    pub energy: f64,
    /// Eigenvalue on the base grid.
    pub coarse_energy: f64,
    pub grid: RadialGrid,
}

/// Sign changes of the outward solution at energy `e` on `grid`.
fn count_nodes(problem: &RadialProblem, grid: &RadialGrid, e: f64) -> usize {
    let h = grid.step();
    let h12 = h * h / 12.0;
    let x0 = grid.r_min.ln();
    let nu = problem.nu2.sqrt();
    let q0 = 2.0 * problem.mass * e - problem.c0;
    let f = |x: f64| {
        let r2 = (2.0 * x).exp();
        problem.nu2 - q0 * r2 + problem.a2 * r2 * r2
    };
    // regular series start: psi = r^nu (1 + c1 r^2)
    let c1 = -q0 / (4.0 * nu + 4.0);
    let start = |x: f64| {
        let r = x.exp();
        (nu * (x - x0)).exp() * (1.0 + c1 * r * r)
    };
    let mut y_prev = start(x0);
    let mut y = start(x0 + h);
    let mut f_prev = f(x0);
    let mut f_cur = f(x0 + h);
    let mut nodes = 0;
    for i in 2..grid.num_points {
        let x = x0 + h * i as f64;
        let f_next = f(x);
        let y_next =
            (2.0 * y * (1.0 + 5.0 * h12 * f_cur) - y_prev * (1.0 - h12 * f_prev)) / (1.0 - h12 * f_next);
        if (y_next < 0.0) != (y < 0.0) && y != 0.0 {
            nodes += 1;
        }
        y_prev = y;
        y = y_next;
        f_prev = f_cur;
        f_cur = f_next;
        if y.abs() > 1e200 {
            y *= 1e-200;
            y_prev *= 1e-200;
        }
    }
    nodes
}

/// Level `n` on a single grid, by node-count bisection to `bisect_tol`.
pub fn eigenvalue_on_grid(
    problem: &RadialProblem,
    n: u32,
    grid: &RadialGrid,
    bisect_tol: f64,
) -> Result<f64> {
    grid.validate()?;
    let target = n as usize + 1;
    // V_eff is bounded below by its minimum; no level lies beneath it
    let mut lo = {
        let samples = 2000;
        (0..=samples)
            .map(|k| {
                let r = grid.r_min * (grid.r_max / grid.r_min).powf(k as f64 / samples as f64);
                problem.potential(r)
            })
            .fold(f64::INFINITY, f64::min)
    };
    if count_nodes(problem, grid, lo) >= target {
        lo -= problem.energy_scale(n) + 1.0;
        if count_nodes(problem, grid, lo) >= target {
            return Err(Error::BracketingFailure {
                n,
                reason: "levels found below the potential minimum".into(),
            });
        }
    }
    let mut step = problem.energy_scale(n).max(1e-3);
    let mut hi = lo + step;
    let mut tries = 0;
    while count_nodes(problem, grid, hi) < target {
        lo = hi;
        step *= 2.0;
        hi = lo + step;
        tries += 1;
        if tries > 60 {
            return Err(Error::BracketingFailure { n, reason: "no upper bracket found".into() });
        }
    }
    while hi - lo > bisect_tol * (1.0 + hi.abs()) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_nodes(problem, grid, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let e = 0.5 * (lo + hi);
    // the boundary condition at r_max is only meaningful in the forbidden region
    if problem.potential(grid.r_max) <= e {
        return Err(Error::BracketingFailure {
            n,
            reason: format!("r_max = {} is not classically forbidden at E = {e}", grid.r_max),
        });
    }
    Ok(e)
}

/// Level `n` of the radial problem for `(config, potential, ell)`.
///
/// Solves on `grid` and on the grid with twice the resolution; fails with
/// `GridTooCoarse` when they differ by more than `10 tol`.
pub fn numerov_solve(
    config: &SystemConfig,
    potential: &PotentialSpec,
    qn: QuantumNumbers,
    grid: Option<RadialGrid>,
    reading: CrossTermReading,
    tol: f64,
) -> Result<NumerovSolution> {
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let problem = RadialProblem::new(config, potential, qn.ell, reading)?;
    let grid = grid.unwrap_or_else(|| RadialGrid::for_level(&problem, qn.n, DEFAULT_POINTS));
    let bisect_tol = 1e-3 * tol;
    let coarse = eigenvalue_on_grid(&problem, qn.n, &grid, bisect_tol)?;
    let fine = eigenvalue_on_grid(&problem, qn.n, &grid.refined(), bisect_tol)?;
    let difference = (fine - coarse).abs();
    let limit = 10.0 * tol * (1.0 + fine.abs());
    if difference > limit {
        return Err(Error::GridTooCoarse { difference, limit });
    }
    Ok(NumerovSolution { energy: fine, coarse_energy: coarse, grid })
}

/// Level `n` with default grid, absolute cross-term reading.
pub fn numerov_eigenvalue(
    config: &SystemConfig,
    potential: &PotentialSpec,
    ell: i32,
    n: u32,
    grid: Option<RadialGrid>,
    tol: f64,
) -> Result<f64> {
    numerov_solve(
        config,
        potential,
        QuantumNumbers::new(n, ell),
        grid,
        CrossTermReading::Absolute,
        tol,
    )
    .map(|s| s.energy)
}

/// Observed convergence order from three successive grid doublings.
pub fn convergence_order(problem: &RadialProblem, n: u32, base_points: usize) -> Result<f64> {
    let g1 = RadialGrid::for_level(problem, n, base_points);
    let g2 = g1.refined();
    let g3 = g2.refined();
    let e1 = eigenvalue_on_grid(problem, n, &g1, 1e-15)?;
    let e2 = eigenvalue_on_grid(problem, n, &g2, 1e-15)?;
    let e3 = eigenvalue_on_grid(problem, n, &g3, 1e-15)?;
    Ok(((e1 - e2).abs() / (e2 - e3).abs()).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{effective_potential_with, energy_for_reading};
    use approx::assert_relative_eq;

    #[test]
    fn flat_oscillator() {
        let cfg = SystemConfig::natural(1.0, 0.0, 0.0).unwrap();
        let pot = PotentialSpec::Harmonic { omega: 1.0 };
        let e = numerov_eigenvalue(&cfg, &pot, 0, 0, None, DEFAULT_TOL).unwrap();
        assert_relative_eq!(e, 1.0, epsilon = 1e-6);
        let e = numerov_eigenvalue(&cfg, &pot, 2, 1, None, DEFAULT_TOL).unwrap();
        assert_relative_eq!(e, 5.0, epsilon = 1e-6);
    }

    #[test]
    fn worked_point() {
        let cfg = SystemConfig::natural(0.75, 1.0, 0.75).unwrap();
        let pot = PotentialSpec::Anharmonic { a: 1.0, b: 1.0, c: 0.0 };
        let e = numerov_eigenvalue(&cfg, &pot, 1, 0, None, DEFAULT_TOL).unwrap();
        assert_relative_eq!(e, 4.057_366_175_525_685, epsilon = 1e-7);
    }

    #[test]
    fn coefficients_reproduce_effective_potential() {
        let cfg = SystemConfig::natural(0.6, 1.7, -0.4).unwrap();
        let pot = PotentialSpec::Pseudoharmonic { dissociation: 1.2, r0: 0.9 };
        for reading in [CrossTermReading::Absolute, CrossTermReading::Signed] {
            let p = RadialProblem::new(&cfg, &pot, -2, reading).unwrap();
            for r in [0.2, 1.0, 3.3] {
                let v = effective_potential_with(&cfg, &pot, r, -2, reading).unwrap();
                assert_relative_eq!(p.potential(r), v, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn signed_reading_matches_its_own_spectrum() {
        let cfg = SystemConfig::natural(0.75, 2.0, 0.75).unwrap();
        let pot = PotentialSpec::Anharmonic { a: 0.5, b: 0.3, c: 0.0 };
        let qn = QuantumNumbers::new(1, 0);
        for reading in [CrossTermReading::Absolute, CrossTermReading::Signed] {
            let e = numerov_solve(&cfg, &pot, qn, None, reading, DEFAULT_TOL).unwrap().energy;
            let closed = energy_for_reading(&cfg, &pot, qn, reading).unwrap();
            assert_relative_eq!(e, closed, epsilon = 1e-7);
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let cfg = SystemConfig::natural(0.8, 1.0, 0.3).unwrap();
        let pot = PotentialSpec::Anharmonic { a: 1.0, b: 0.5, c: 0.0 };
        let p = RadialProblem::new(&cfg, &pot, 1, CrossTermReading::Absolute).unwrap();
        let order = convergence_order(&p, 1, 1000).unwrap();
        assert!(order >= 3.8, "observed order {order}");
    }

    #[test]
    fn coarse_grid_is_flagged() {
        let cfg = SystemConfig::natural(0.5, 1.0, 0.0).unwrap();
        let pot = PotentialSpec::Anharmonic { a: 1.0, b: 0.5, c: 0.0 };
        let p = RadialProblem::new(&cfg, &pot, 2, CrossTermReading::Absolute).unwrap();
        let grid = RadialGrid::for_level(&p, 2, 1000);
        let err = numerov_solve(&cfg, &pot, QuantumNumbers::new(2, 2), Some(grid), CrossTermReading::Absolute, 1e-12)
            .unwrap_err();
        assert!(matches!(err, Error::GridTooCoarse { .. }), "{err:?}");
    }

    #[test]
    fn short_domain_is_rejected() {
        let cfg = SystemConfig::natural(1.0, 0.0, 0.0).unwrap();
        let pot = PotentialSpec::Harmonic { omega: 1.0 };
        let grid = RadialGrid { r_min: 1e-6, r_max: 1.5, num_points: 4000 };
        assert!(numerov_eigenvalue(&cfg, &pot, 0, 1, Some(grid), 1e-6).is_err());
    }

    #[test]
    fn unconfined_problem_is_rejected() {
        let cfg = SystemConfig::natural(0.5, 0.0, 0.0).unwrap();
        assert_eq!(
            RadialProblem::new(&cfg, &PotentialSpec::InverseSquare { b: 1.0 }, 0, CrossTermReading::Absolute)
                .unwrap_err(),
            Error::CaseDNeedsField
        );
    }
}
