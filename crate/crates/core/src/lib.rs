//! Charged particle on a conical (disclination) background with a uniform
//! magnetic field, an Aharonov-Bohm flux line and a pseudoharmonic-type
//! potential `V(r) = a r^2 + b / r^2 + c`.
//!
//! The crate evaluates the closed-form bound-state spectrum and radial
//! wavefunctions, checks them against an independent Numerov shooting
//! solver, and derives thermodynamic functions, persistent currents,
//! magnetization, susceptibility and position/momentum Shannon entropies.
//!
//! Units are natural (`hbar = c = 1`, Boltzmann constant 1); the axial
//! wavenumber is fixed to zero.

pub mod error;
pub mod infoentropy;
pub mod magnetics;
pub mod model;
pub mod oracle;
pub mod specialfn;
pub mod spectrum;
pub mod thermo;

pub use error::{Error, Result};
pub use model::{
    derive_params, AnharmonicCoefficients, CaseTag, ChargeSign, DerivedParams, PotentialSpec,
    QuantumNumbers, SystemConfig,
};
pub use spectrum::{energy, wavefunction, EnergyLevel, RadialState};
