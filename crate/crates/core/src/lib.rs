//! Stationary states of a free-boundary model of vascular tumor growth with
//! a necrotic core, and the symmetry-breaking bifurcation spectrum around
//! the radially symmetric state.
//!
//! The crate is organized bottom-up:
//!
//! * [`specfun`]: scaled modified spherical Bessel functions and `Y_{n,0}`.
//! * [`radial`]: the radially symmetric stationary solution `(R, σ̃, σ_s, p_s)`.
//! * [`spectrum`]: the mode functions `Q_n`, `P_n`, the coefficients
//!   `A_n`, `B_n`, bifurcation values `μ_n = A_n / B_n` and the thresholds
//!   `n*`, `n**`.
//! * [`branch`]: first-order geometry of the bifurcating non-radial states.
//! * [`verify`]: the executable property suite behind `necrotica verify`.
//! * [`export`]: CSV/JSON writers with deterministic formatting.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` deliberately rejects NaN

pub mod branch;
pub mod error;
pub mod export;
pub mod extfloat;
pub mod radial;
pub mod specfun;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use extfloat::ExpFloat;
pub use radial::{solve_radius, ModelParams, RadialSolution};
pub use spectrum::{bifurcation_report, spectrum_coeffs, BifurcationReport, ModeData};
