use super::constants::c_mu;
use super::residue::{lh_power, residue_normal_form};
use super::tau::{conj_dx, m_coeffs_via_tau_symmetry, sinh_op, TauScalars};
use crate::algebra::{EpsSeries, Field, RatFunc, Ring, Q};
use crate::diffpoly::{DiffPoly, EpsDiff, JetKey};
use crate::error::{Error, Result};
use crate::shift::{Branch, Lambda, LaxParams, ShiftOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowRoute {
    /// `∂u/∂T_λ = ε^{-1}(Λ₁^{1/2} − Λ₁^{-1/2}) Λ₁^{-1/2} res L^{λh}`.
    TauSymmetric,
    /// `ε ∂L/∂T_λ = ±[(L^{λh})_±, L]`, read off at `Λ^{-n}`.
    LaxCommutator,
}

/// `λmn c_λ`: `∂u/∂T_λ = λmn c_λ e^{λmu} u' + O(ε²)`.
pub fn dispersionless_coeff(params: &LaxParams, lambda: &Lambda) -> Q {
    lambda.value() * params.mq() * params.nq() * c_mu(params, lambda)
}

/// `∂u/∂T_λ` through `ε^{2G}` from the normal-form residue.
pub fn flow_tau(params: &LaxParams, lambda: &Lambda, genus: usize) -> Result<EpsDiff<Q>> {
    let nf = residue_normal_form(params, lambda, genus)?;
    let lm = lambda.value() * params.mq();
    let core = sinh_op(&nf.series(), &params.nq(), &conj_dx(&lm));
    Ok(core.map(|c| c.scale(&nf.c).mul_exp(&lm)))
}

/// `∂u/∂T_λ` through `ε^{2G}` from the Lax commutator on the given branch.
/// Every coefficient of the commutator other than `Λ^{-n}` must vanish.
pub fn flow_commutator_on_branch(
    params: &LaxParams,
    lambda: &Lambda,
    branch: Branch,
    genus: usize,
) -> Result<EpsDiff<Q>> {
    let order = 2 * genus + 1;
    let a = lh_power::<Q>(params, lambda, branch, 0, order)?;
    let l = ShiftOp::<Q>::lax(params, order);
    let (plus, minus) = a.split_pm()?;
    let comm = match branch {
        Branch::Positive => plus.mul(&l)?.minus(&l.mul(&plus)?),
        Branch::Negative => l.mul(&minus)?.minus(&minus.mul(&l)?),
    };
    let target = -params.nq();
    for (s, c) in comm.terms() {
        if *s != target && !c.is_zero() {
            return Err(Error::Inconsistent(format!(
                "Lax commutator has a nonzero Λ^{} coefficient",
                crate::algebra::fmt_q(s)
            )));
        }
    }
    let minus_one = -Q::from_integer(1.into());
    comm.coefficient(&target)?.map(|c| c.mul_exp(&minus_one)).shift_down(1)
}

pub fn flow_commutator(params: &LaxParams, lambda: &Lambda, genus: usize) -> Result<EpsDiff<Q>> {
    flow_commutator_on_branch(params, lambda, lambda.branch(params), genus)
}

pub fn flow_rhs(params: &LaxParams, lambda: &Lambda, genus: usize, route: FlowRoute) -> Result<EpsDiff<Q>> {
    match route {
        FlowRoute::TauSymmetric => flow_tau(params, lambda, genus),
        FlowRoute::LaxCommutator => flow_commutator(params, lambda, genus),
    }
}

/// Both routes; fails with the first ε-order where they differ.
pub fn flow_two_route(params: &LaxParams, lambda: &Lambda, genus: usize) -> Result<EpsDiff<Q>> {
    let a = flow_tau(params, lambda, genus)?;
    let b = flow_commutator(params, lambda, genus)?;
    first_difference(&a, &b).map_or(Ok(a), |e| Err(Error::FlowRouteDisagreement(e)))
}

pub(crate) fn first_difference<S: Field>(a: &EpsDiff<S>, b: &EpsDiff<S>) -> Option<usize> {
    let d = a.minus(b);
    d.coeffs().iter().position(|c| !c.is_zero())
}

/// `C̄_J`: the coefficient of `e^{λmu} u^{(J)}` at `ε^{|J|-1}` in a flow,
/// divided by `λmn c_λ`. Zero when absent.
pub fn flow_coeff_cj(params: &LaxParams, lambda: &Lambda, flow: &EpsDiff<Q>, jets: &[u32]) -> Q {
    let w: u32 = jets.iter().sum();
    let key = JetKey::new(lambda.value() * params.mq(), jets.to_vec());
    let e = w as usize - 1;
    match flow.get(e) {
        Some(c) => c.coeff(&key) / dispersionless_coeff(params, lambda),
        None => Q::from_integer(0.into()),
    }
}

/// `C̄_J` as a rational function of `m, n, λ`, from the tau-symmetry
/// recursion with symbolic scalars.
pub fn flow_coeff_cj_sym(sc: &TauScalars<RatFunc>, jets: &[u32]) -> Result<RatFunc> {
    let w: u32 = jets.iter().sum();
    if w % 2 == 0 {
        return Ok(RatFunc::zero());
    }
    let genus = (w as usize - 1) / 2;
    let ms = m_coeffs_via_tau_symmetry(sc, genus)?;
    let mut c = vec![DiffPoly::zero(); 2 * genus + 1];
    c[0] = DiffPoly::one();
    for (g, mg) in ms.into_iter().enumerate() {
        c[2 * g + 2] = mg;
    }
    let lm = sc.lm();
    let core = sinh_op(&EpsSeries::from_coeffs(c), &sc.n, &conj_dx(&lm));
    let coeff = core.coeff(2 * genus).coeff(&JetKey::plain(jets.to_vec()));
    let denom = lm.times(&sc.n);
    coeff.div(&denom).ok_or(Error::DivisionByZero)
}
