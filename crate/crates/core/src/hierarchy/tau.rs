//! The recursion for `M_λ^{[g]}` from tau-symmetry, seeded by the closed
//! form of `Λ₁^{-1/2} res L^{h/m}`. Everything is generic in the scalar
//! field, so `m`, `n` and `λ` may be symbols.

use crate::algebra::{partitions, solve_rational_rhs, EpsSeries, Field, RatFunc, Ring, Solution, Var, Q};
use crate::diffpoly::{bell, DiffPoly, EpsDiff, JetKey};
use crate::error::{Error, Result};
use crate::shift::{Lambda, LaxParams};
use num_bigint::BigInt;

/// The scalars entering the recursion.
#[derive(Clone, Debug, PartialEq)]
pub struct TauScalars<S> {
    pub m: S,
    pub n: S,
    pub lambda: S,
}

impl<S: Field> TauScalars<S> {
    pub fn h(&self) -> S {
        self.m.plus(&self.n)
    }

    /// `λm`, the exponential weight of the residue.
    pub fn lm(&self) -> S {
        self.lambda.times(&self.m)
    }
}

pub fn tau_scalars_numeric(params: &LaxParams, lambda: &Lambda) -> TauScalars<Q> {
    TauScalars {
        m: params.mq(),
        n: params.nq(),
        lambda: lambda.value().clone(),
    }
}

impl TauScalars<RatFunc> {
    /// `m`, `n` symbolic; `λ` any rational function (often the symbol `λ`).
    pub fn symbolic(lambda: RatFunc) -> Self {
        TauScalars {
            m: RatFunc::var(Var::M),
            n: RatFunc::var(Var::N),
            lambda,
        }
    }
}

fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// `Σ_j (a/2)^{2j} z^{2j}/(2j+1)!`, i.e. `sinh(az/2)/(az/2)`, to `z^order`.
fn sinhc<S: Field>(a: &S, order: usize) -> EpsSeries<S> {
    let half = a.scale(&Q::new(1.into(), 2.into()));
    let mut c = vec![S::zero(); order + 1];
    let mut fact = BigInt::from(1);
    for k in 0..=order {
        if k > 0 {
            fact *= BigInt::from(k as i64 + 1);
        } 
        if k % 2 == 0 {
            c[k] = half.pow(k as u32).scale(&Q::new(1.into(), fact.clone()));
        }
    }
    EpsSeries::from_coeffs(c)
}

/// `a_0, …, a_G`: the `z^{2g}` coefficients of
/// `[sinh(hz/2)/(hz/2)] / [sinh(mz/2)/(mz/2)]`.
pub fn seed_coefficients<S: Field>(sc: &TauScalars<S>, genus: usize) -> Vec<S> {
    let order = 2 * genus;
    let den = sinhc(&sc.m, order);
    let ratio = sinhc(&sc.h(), order).times(&den.inverse_with(&S::one()).expect("unit constant term"));
    (0..=genus).map(|g| ratio.coeff(2 * g).clone()).collect()
}

/// `e^{-0}·Λ₁^{-1/2} res L^{h/m} / c_{1/m} = e^u Σ_g ε^{2g} a_g B_{2g}`.
pub fn seed_series<S: Field>(sc: &TauScalars<S>, genus: usize) -> EpsDiff<S> {
    let a = seed_coefficients(sc, genus);
    let mut c = vec![DiffPoly::zero(); 2 * genus + 1];
    for (g, ag) in a.iter().enumerate() {
        c[2 * g] = bell::<S>(2 * g).scale_s(ag).mul_exp(&qi(1));
    }
    EpsSeries::from_coeffs(c)
}

/// `Σ_j d_j ε^{2j} δ^{2j+1} f` with `d_j = 2(n/2)^{2j+1}/(2j+1)!`: the
/// operator `ε^{-1}(Λ₁^{1/2} − Λ₁^{-1/2})` written through a derivation `δ`.
pub(crate) fn sinh_op<S: Field>(
    f: &EpsDiff<S>,
    n: &S,
    delta: &dyn Fn(&DiffPoly<S>) -> DiffPoly<S>,
) -> EpsDiff<S> {
    let order = f.order();
    let half = n.scale(&Q::new(1.into(), 2.into()));
    let mut out = vec![DiffPoly::zero(); order + 1];
    let mut fact = BigInt::from(1);
    let mut d = Vec::new();
    for k in 1..=order + 1 {
        fact *= BigInt::from(k as i64);
        if k % 2 == 1 {
            d.push(half.pow(k as u32).scale(&Q::new(2.into(), fact.clone())));
        }
    }
    for (e, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut g = c.clone();
        for (j, dj) in d.iter().enumerate() {
            if e + 2 * j > order {
                break;
            }
            g = delta(&g);
            if j > 0 {
                g = delta(&g);
            }
            out[e + 2 * j] = out[e + 2 * j].plus(&g.scale_s(dj));
        }
    }
    EpsSeries::from_coeffs(out)
}

/// `∂ + λm u'`: the total derivative conjugated by `e^{λmu}`.
pub(crate) fn conj_dx<S: Field>(lm: &S) -> impl Fn(&DiffPoly<S>) -> DiffPoly<S> + '_ {
    move |g: &DiffPoly<S>| g.dx().plus(&g.times(&DiffPoly::jet(1)).scale_s(lm))
}

/// `Σ_{k≥0} δ^k(flow) · ∂target/∂u^{(k)}`, the chain rule for a time
/// derivative whose velocity is `flow`.
pub(crate) fn chain<S: Field>(
    flow: &EpsDiff<S>,
    target: &EpsDiff<S>,
    delta: &dyn Fn(&DiffPoly<S>) -> DiffPoly<S>,
) -> EpsDiff<S> {
    let max = target.coeffs().iter().map(|c| c.max_jet()).max().unwrap_or(0);
    let mut acc = flow.times(&target.map(|c| c.partial_jet(0)));
    let mut fk = flow.clone();
    for k in 1..=max {
        fk = fk.map(|c| delta(c));
        acc = acc.plus(&fk.times(&target.map(|c| c.partial_jet(k))));
    }
    acc
}

/// `∂_{T_{1/m}}(e^{λmu}N) − ∂_{T_λ}(R̂)`, with `e^{λmu}` and the constants
/// `c_{1/m} c_λ` divided out.
fn tau_residual<S: Field>(sc: &TauScalars<S>, seed: &EpsDiff<S>, nser: &EpsDiff<S>) -> EpsDiff<S> {
    let dx = |g: &DiffPoly<S>| g.dx();
    let lm = sc.lm();
    let dl = conj_dx(&lm);
    let flow_seed = sinh_op(seed, &sc.n, &dx);
    let lhs = flow_seed.times(nser).map(|c| c.scale_s(&lm)).plus(&chain(&flow_seed, nser, &dx));
    let flow_l = sinh_op(nser, &sc.n, &dl);
    let rhs = chain(&flow_l, seed, &dl);
    lhs.minus(&rhs)
}

/// `X(M) = Σ_{k≥1} (B_{k+1} − u^{(k+1)}) ∂M/∂u^{(k)}`: the part of the
/// order-`ε^{2g}` residual linear in the unknown, up to the factor `n e^u`.
fn x_operator(m: &DiffPoly<Q>) -> DiffPoly<Q> {
    let mut acc = DiffPoly::zero();
    for k in 1..=m.max_jet() {
        let p = m.partial_jet(k);
        if p.is_zero() {
            continue;
        }
        let b = bell::<Q>(k as usize + 1).minus(&DiffPoly::jet(k + 1));
        acc = acc.plus(&b.times(&p));
    }
    acc
}

/// `M_λ^{[1]}, …, M_λ^{[G]}` by tau-symmetry. Each order is a linear
/// system with rational matrix; the full identity is rechecked at the end.
pub fn m_coeffs_via_tau_symmetry<S: Field>(sc: &TauScalars<S>, genus: usize) -> Result<Vec<DiffPoly<S>>> {
    let order = 2 * genus;
    let seed = seed_series(sc, genus);
    let mut n_coeffs = vec![DiffPoly::<S>::zero(); order + 1];
    n_coeffs[0] = DiffPoly::one();
    let one = qi(1);
    let inv_n = sc.n.inv().ok_or(Error::DivisionByZero)?;
    for g in 1..=genus {
        let o = 2 * g;
        let nser = EpsSeries::from_coeffs(n_coeffs[..=o].to_vec());
        let r = tau_residual(sc, &seed.truncate(o), &nser);
        let r = r
            .coeff(o)
            .strip_exp(&one)
            .ok_or_else(|| Error::Inconsistent(format!("unexpected exponential weight at eps^{o}")))?;
        let cols = partitions(o as u32);
        let rows = partitions(o as u32 + 1);
        let row_keys: Vec<JetKey> = rows.iter().map(|p| JetKey::plain(p.clone())).collect();
        if let Some((k, _)) = r.terms().find(|(k, _)| !row_keys.contains(k)) {
            return Err(Error::Inconsistent(format!("residual term {:?} outside weight {}", k.jets, o + 1)));
        }
        let images: Vec<DiffPoly<Q>> = cols
            .iter()
            .map(|p| x_operator(&DiffPoly::monomial(qi(1), JetKey::plain(p.clone()))))
            .collect();
        let matrix: Vec<Vec<Q>> = row_keys
            .iter()
            .map(|rk| images.iter().map(|im| im.coeff(rk)).collect())
            .collect();
        let rhs: Vec<S> = row_keys.iter().map(|rk| r.coeff(rk).times(&inv_n).negate()).collect();
        let sol = match solve_rational_rhs(&matrix, &rhs) {
            Solution::Unique(v) => v,
            Solution::Report { rank, unknowns, consistent } => {
                return Err(Error::Inconsistent(format!(
                    "tau-symmetry system at genus {g}: rank {rank} of {unknowns}, consistent {consistent}"
                )))
            }
        };
        let mut mg = DiffPoly::zero();
        for (p, c) in cols.iter().zip(sol) {
            mg = mg.plus(&DiffPoly::monomial(c, JetKey::plain(p.clone())));
        }
        n_coeffs[o] = mg;
    }
    let nser = EpsSeries::from_coeffs(n_coeffs.clone());
    let full = tau_residual(sc, &seed, &nser);
    if let Some((e, _)) = full.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()) {
        return Err(Error::Inconsistent(format!("tau-symmetry residual survives at eps^{e}")));
    }
    Ok((1..=genus).map(|g| n_coeffs[2 * g].clone()).collect())
}
