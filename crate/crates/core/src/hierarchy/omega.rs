use super::flow::flow_tau;
use super::residue::lh_power;
use super::tau::chain;
use crate::algebra::{EpsSeries, Q};
use crate::diffpoly::{shift_series, EpsDiff};
use crate::error::{Error, Result};
use crate::shift::{Branch, Lambda, LaxParams, ShiftOp};

/// Which half of the defining sum for `Ω_{λ,μ}` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaBranch {
    /// `λ ∈ 𝓘₁`: pairs `Λ₃^{-j}L^{λh}` with `L^{μh}Λ₃^j`.
    I1,
    /// `λ ∈ 𝓘₂`: pairs `L^{λh}Λ₃^j` with `Λ₃^{-j}L^{μh}`.
    I2,
}

fn half(q: Q) -> Q {
    q / Q::from_integer(2.into())
}

/// `res(Λ₃^{-j} A) = Λ^{-jh}(A_{jh})`.
fn res_left(a: &ShiftOp<Q>, jh: &Q) -> Result<EpsDiff<Q>> {
    Ok(shift_series(&a.coefficient(jh)?, &-jh.clone()))
}

/// `res(A Λ₃^j) = A_{-jh}`.
fn res_right(a: &ShiftOp<Q>, jh: &Q) -> Result<EpsDiff<Q>> {
    a.coefficient(&-jh.clone())
}

/// `Ω_{λ,μ}` through `ε^{2G}` using the chosen half of its definition.
pub fn omega_branch(
    params: &LaxParams,
    lambda: &Lambda,
    mu: &Lambda,
    branch: OmegaBranch,
    genus: usize,
) -> Result<EpsDiff<Q>> {
    let order = 2 * genus;
    let h = params.hq();
    let mu_branch = mu.branch(params);
    let (k, a_branch, needs_extra) = match branch {
        OmegaBranch::I1 => (lambda.k_m(params), Branch::Positive, mu_branch == Branch::Positive),
        OmegaBranch::I2 => (lambda.k_n(params), Branch::Negative, mu_branch == Branch::Negative),
    };
    let k = k.ok_or_else(|| Error::NotInIndexSet(format!("{lambda} for {branch:?}")))?;
    let a = lh_power::<Q>(params, lambda, a_branch, 0, order)?;
    let b = lh_power::<Q>(params, mu, mu_branch, if needs_extra { k } else { 0 }, order)?;
    let mut acc: EpsDiff<Q> = EpsSeries::zero(order);
    for j in 1..=k {
        let jh = &h * Q::from_integer(j.into());
        let term = match branch {
            OmegaBranch::I1 => res_left(&a, &jh)?.times(&res_right(&b, &jh)?),
            OmegaBranch::I2 => res_right(&a, &jh)?.times(&res_left(&b, &jh)?),
        };
        for i in 0..j {
            acc = acc.plus(&shift_series(&term, &(&h * Q::from_integer(i.into()))));
        }
    }
    Ok(shift_series(&acc, &half(params.mq())))
}

/// `Ω_{λ,μ}`; for `λ` in both index sets the two halves must coincide.
pub fn omega(params: &LaxParams, lambda: &Lambda, mu: &Lambda, genus: usize) -> Result<EpsDiff<Q>> {
    match (lambda.k_m(params), lambda.k_n(params)) {
        (Some(_), Some(_)) => {
            let a = omega_branch(params, lambda, mu, OmegaBranch::I1, genus)?;
            let b = omega_branch(params, lambda, mu, OmegaBranch::I2, genus)?;
            if let Some(e) = super::flow::first_difference(&a, &b) {
                return Err(Error::Inconsistent(format!(
                    "the two definitions of Ω_{{{lambda},{mu}}} differ at eps^{e}"
                )));
            }
            Ok(a)
        }
        (Some(_), None) => omega_branch(params, lambda, mu, OmegaBranch::I1, genus),
        _ => omega_branch(params, lambda, mu, OmegaBranch::I2, genus),
    }
}

/// `(Λ₃ − 1)Λ₂^{-1/2} Ω_{λ,μ} − ε ∂_{T_λ} res L^{μh}`, which vanishes.
pub fn orproperty_residual(params: &LaxParams, lambda: &Lambda, mu: &Lambda, genus: usize) -> Result<EpsDiff<Q>> {
    let order = 2 * genus;
    let om = omega(params, lambda, mu, genus)?;
    let w = shift_series(&om, &-half(params.mq()));
    let lhs = shift_series(&w, &params.hq()).minus(&w);
    let res = lh_power::<Q>(params, mu, mu.branch(params), 0, order)?.res()?;
    let flow = flow_tau(params, lambda, genus)?;
    let dx = |g: &crate::diffpoly::DiffPoly<Q>| g.dx();
    let rhs = chain(&flow, &res, &dx).shift_up(1).truncate(order);
    Ok(lhs.minus(&rhs))
}
