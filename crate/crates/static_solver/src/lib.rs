//! Static phase structure of the mean-field Widom-Rowlinson model.
//!
//! Two independent routes to the pressure are provided: direct maximization
//! of the free energy over the simplex in `(nu(1), nu(-1))`, and maximization
//! of the equivalent functional in occupation/magnetization coordinates.
//! Stationary points are enumerated from the closed-form curve
//! `m -> (beta(m), x(m))` together with the symmetric fixed points.

pub mod antiferro;
pub mod closed;
pub mod exponents;
pub mod free_energy;
pub mod stationary;
pub mod symmetric;

pub use antiferro::{
    antiferro_diagram, antiferro_maximizers, bifurcation_l, bifurcation_point, maxwell_alpha0, maxwell_l,
    v_potential, AntiferroDiagram,
};
pub use closed::{beta_of_m, closed_point, critical_curve, x_of_m, CriticalCurve, CurveSample};
pub use exponents::{exponent_beta, exponent_field, m_of_beta, m_of_field, BetaExponent};
pub use free_energy::{
    free_energy, hessian, pressure, pressure_reparam, reparam_functional, stationarity_residual,
    PressureResult,
};
pub use stationary::{
    critical_beta, detect_split_beta, hessian_classify, maximizers, stationary_points, symmetric_alpha,
    StationaryKind, StationaryPoint,
};
pub use symmetric::{symmetric_fixed_point, symmetric_fixed_points};
