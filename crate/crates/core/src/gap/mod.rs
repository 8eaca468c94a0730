//! Gap coefficients: `C_k`, the genus expansion `P_g` of the
//! string-equation solution `V(x; ε)`, and `R_g` as values and as
//! polynomials in `(σ₁, σ₃)`.

mod ck;
mod record;
mod rg;
mod vsolve;

pub use ck::{c_k_closed, c_k_series};
pub use record::{CoeffWire, QWire};
pub use rg::{
    ansatz_indices, coprime_pairs, gap_record, r_g_from, r_g_polynomial, r_g_value, sigma_pair, FitDiagnostics,
    GapRecord, RgPolynomial,
};
pub use vsolve::{solve_v, solve_v_with, verify_difference_equation, ResidualReport};

/// Sizes the global worker pool used for per-pair record generation.
/// Only the first call has an effect.
pub fn configure_workers(workers: usize) -> crate::Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| crate::Error::InvalidParams(format!("worker pool: {e}")))
}
