//! Linearized modes and the bifurcation spectrum around the radial state.

mod mode;
pub mod proof;
mod report;

pub use mode::{p_n, p_n_prime, q_n, q_n_prime, qn_oracle, ModeBasis, OracleGrid, PressureMode};
pub use report::{
    a_coeff, bifurcation_report, lemma_checks, m10_closed_form, m10_closed_form_tolerance, m20_closed_form,
    m20_closed_form_tolerance, m_decomposition, mu_cubic_limit, spectral_scale, spectrum_coeffs, spectrum_table,
    BifurcationReport, ModeData,
};
