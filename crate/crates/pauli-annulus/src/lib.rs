//! Dirichlet-Pauli operator on an annulus with a radial magnetic field:
//! scalar potential, gauge invariants, fibered 1D eigenvalue problems, the
//! semiclassical prefactor law and the assembled low-lying spectrum.
//!
//! Everything is dimensionless. The spin-down eigenvalues are exponentially
//! small in the semiclassical parameter h, so they are carried in a
//! log-scaled representation throughout.

pub mod annulus;
pub mod asymptotics;
pub mod config;
pub mod error;
pub mod output;
pub mod fiber;

pub mod gauge;
pub mod potential;
pub mod quad;
pub mod scaled;
pub mod spectrum;
pub mod tridiag;

pub use annulus::{AnnulusGeometry, RadialField};
pub use asymptotics::{alpha_k, c_m_bound, f_eval, predicted_lambda, AlphaK, PrefactorLaw};
pub use error::{Error, Result};
pub use fiber::{m_tilde, FiberProblem, FiberSpectrum, Formulation, Spin};
pub use gauge::{
    compute_c0, flux_at_scale, theta_gradient_magnitude, theta_inner_circulation, FluxAtScale,
    GaugeData,
};
pub use potential::{solve_scalar_potential, PotentialFeatures, ScalarPotential};
pub use scaled::{spectral_log_scale, LogScaled};
pub use spectrum::{
    ab_sweep, assemble, convergence_study, AbPoint, ConvergenceRow, ConvergenceStudy,
    FiberRecord, SpectralLevel, SpectrumAtScale, SpectrumRequest,
};
pub use tridiag::{smallest_eigenvalues, TridiagonalSym};
