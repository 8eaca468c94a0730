use super::constants::c_mu;
use crate::algebra::{Field, Ring, Q};
use crate::diffpoly::{DiffPoly, EpsDiff};
use crate::error::{Error, Result};
use crate::shift::{frac_power, half_shift_apply, Branch, Lambda, LaxParams, ShiftOp};

/// `Λ₁^{-1/2} res L^{λh} = c_λ e^{λmu} (1 + Σ_g ε^{2g} M^{[g]})`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormResidue {
    pub lambda: Lambda,
    pub c: Q,
    /// `M^{[1]}, …, M^{[G]}`: ε-free, κ = 0, jet weight `2g`.
    pub m: Vec<DiffPoly<Q>>,
}

impl NormalFormResidue {
    /// `1 + Σ ε^{2g} M^{[g]}` as an even ε-series.
    pub fn series(&self) -> EpsDiff<Q> {
        let order = 2 * self.m.len();
        let mut c = vec![DiffPoly::zero(); order + 1];
        c[0] = DiffPoly::one();
        for (g, mg) in self.m.iter().enumerate() {
            c[2 * g + 2] = mg.clone();
        }
        EpsDiff::from_coeffs(c)
    }
}

/// `L^{λh}` on a branch; integral `λ` uses the exact power of `L`.
pub(crate) fn lh_power<S: Field>(
    params: &LaxParams,
    lambda: &Lambda,
    branch: Branch,
    extra: u32,
    order: usize,
) -> Result<ShiftOp<S>> {
    if lambda.value().is_integer() {
        let e = u32::try_from(lambda.value().to_integer()).expect("small") * params.h() as u32;
        return ShiftOp::lax(params, order).power(e);
    }
    frac_power(params, lambda, branch, extra, order)
}

/// Splits `f` into `c · e^{κu} · N` with `N` even and `N_0 = 1`.
pub(crate) fn normalize_even(
    f: &EpsDiff<Q>,
    kappa: &Q,
    c: &Q,
) -> Result<Vec<DiffPoly<Q>>> {
    if let Some(e) = f.first_odd_nonzero() {
        return Err(Error::EvennessViolated(e));
    }
    let inv = Field::inv(c).ok_or(Error::DivisionByZero)?;
    let mut out = Vec::new();
    for (e, coeff) in f.coeffs().iter().enumerate() {
        let stripped = coeff
            .strip_exp(kappa)
            .ok_or_else(|| Error::Internal(format!("mixed exponential weights at eps^{e}")))?
            .scale(&inv);
        if e == 0 {
            if stripped != DiffPoly::one() {
                return Err(Error::Internal("leading coefficient differs from c_λ e^{λmu}".into()));
            }
        } else if e % 2 == 0 {
            if stripped.weights().iter().any(|&w| w as usize != e) {
                return Err(Error::Internal(format!("inhomogeneous weight at eps^{e}")));
            }
            out.push(stripped);
        }
    }
    Ok(out)
}

/// Direct route: `Λ₁^{-1/2} res L^{λh}` on the given branch, evenness
/// checked before the odd orders are dropped.
pub fn residue_on_branch(
    params: &LaxParams,
    lambda: &Lambda,
    branch: Branch,
    genus: usize,
) -> Result<NormalFormResidue> {
    let order = 2 * genus;
    let res = lh_power::<Q>(params, lambda, branch, 0, order)?.res()?;
    let shifted = half_shift_apply(&res, &-(params.nq() / Q::from_integer(2.into())));
    let c = c_mu(params, lambda);
    let kappa = lambda.value() * params.mq();
    let m = normalize_even(&shifted, &kappa, &c)?;
    Ok(NormalFormResidue {
        lambda: lambda.clone(),
        c,
        m,
    })
}

pub fn residue_normal_form(
    params: &LaxParams,
    lambda: &Lambda,
    genus: usize,
) -> Result<NormalFormResidue> {
    residue_on_branch(params, lambda, lambda.branch(params), genus)
}
