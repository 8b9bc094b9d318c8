//! Derivative weights for discretized continuous spectra.
//!
//! A finite `N x N` tridiagonal Hamiltonian has a discrete spectrum
//! `eps_0 < ... < eps_{N-1}` standing in for a continuum. The derivative
//! weights `w_mu` turn sums over that spectrum into energy integrals,
//! `integral F(e) de ~= sum_mu w_mu F(eps_mu)`. This crate computes them four
//! ways:
//!
//! * Heller's rule: interpolate `zeta(mu) = eps_mu` and differentiate;
//! * Broad's extension: add knots at the zeros of `g_00`, placed at
//!   fractional indices from the exact Green's function phase;
//! * the J-matrix extension: add knots at the zeros of `g_{N-1,N-1}`,
//!   placed using the reference-problem ratio `R_N^+`;
//! * the J-matrix closed form, which needs no interpolation at all;
//!
//! and checks them against the Gauss-quadrature oracle `w_mu / rho(eps_mu)`.
//!
//! Two reference problems are built in ([`models`]): a Chebyshev chain with
//! a modified leading block, and the partial-wave kinetic energy in a
//! Laguerre basis.

pub mod cli;
pub mod error;
pub mod models;
pub mod quad;
pub mod rational_fit;
pub mod special;
pub mod tridiag;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use models::{ModelKind, ModelProblem, ReferenceWave};
pub use rational_fit::{KnotSet, RationalFit};
pub use tridiag::{interlace_check, EigenSystem, SymTridiag};
pub use weights::{
    g_matrix_element, heller_weights, integrate, Discretized, ExtraKnots, GreenPieces, Method,
    WeightTable,
};
