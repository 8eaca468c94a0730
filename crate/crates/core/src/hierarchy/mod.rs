//! Quantities of the fractional Volterra hierarchy built on the operator
//! calculus: normal-form residues, flows, two-point functions.

mod constants;
mod flow;
mod omega;
mod residue;
mod tau;

pub use constants::{c_mu, c_mu_sym, elementary_identity, leading_res_coeff};
pub use flow::{
    dispersionless_coeff, flow_coeff_cj, flow_coeff_cj_sym, flow_commutator, flow_commutator_on_branch,
    flow_rhs, flow_tau, flow_two_route, FlowRoute,
};
pub use omega::{omega, omega_branch, orproperty_residual, OmegaBranch};
pub use residue::{residue_normal_form, residue_on_branch, NormalFormResidue};
pub use tau::{m_coeffs_via_tau_symmetry, seed_coefficients, seed_series, tau_scalars_numeric, TauScalars};
