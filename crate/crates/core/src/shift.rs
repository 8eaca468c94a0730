//! Difference operators `Σ_s g_s Λ^s` with `Λ = e^{ε∂_x}` and coefficients in
//! ε-series of differential polynomials, together with the Lax operator
//! `L = Λ^m + e^u Λ^{-n}` and the fractional powers `L^{λh}`.
//!
//! An operator is only known on a window of exponents. Each side of the
//! window is either *exact* (nothing lies beyond it) or *truncated* (the
//! terms beyond it are unknown, never implicitly zero).

use crate::algebra::{EpsSeries, Field, Ring, Q};
use crate::diffpoly::{shift_series, DiffPoly, EpsDiff};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use std::collections::BTreeMap;
use std::fmt;

fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Parameters of the rational reduction: coprime `m, n ≥ 1`, `h = m + n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LaxParams {
    pub m: u64,
    pub n: u64,
}

impl LaxParams {
    pub fn new(m: u64, n: u64) -> Result<LaxParams> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParams(format!("m and n must be positive, got ({m}, {n})")));
        }
        if m.gcd(&n) != 1 {
            return Err(Error::InvalidParams(format!("m = {m} and n = {n} are not coprime")));
        }
        if m + n > 64 {
            return Err(Error::InvalidParams(format!("m + n = {} is too large", m + n)));
        }
        Ok(LaxParams { m, n })
    }

    pub fn h(&self) -> u64 {
        self.m + self.n
    }

    pub fn mq(&self) -> Q {
        qi(self.m as i64)
    }

    pub fn nq(&self) -> Q {
        qi(self.n as i64)
    }

    pub fn hq(&self) -> Q {
        qi(self.h() as i64)
    }
}

/// One side of an operator window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub at: Q,
    pub exact: bool,
}

/// Windowed difference operator.
#[derive(Clone, Debug)]
pub struct ShiftOp<S> {
    terms: BTreeMap<Q, EpsDiff<S>>,
    lo: Side,
    hi: Side,
    order: usize,
}

impl<S: Field> PartialEq for ShiftOp<S> {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms && self.lo == o.lo && self.hi == o.hi && self.order == o.order
    }
}

impl<S: Field> ShiftOp<S> {
    /// An operator with exactly the given terms.
    pub fn exact(terms: BTreeMap<Q, EpsDiff<S>>, order: usize) -> Self {
        let lo = terms.keys().next().cloned().unwrap_or_else(Q::zero_q);
        let hi = terms.keys().next_back().cloned().unwrap_or_else(Q::zero_q);
        Self::with_window(terms, Side { at: lo, exact: true }, Side { at: hi, exact: true }, order)
    }

    pub fn with_window(terms: BTreeMap<Q, EpsDiff<S>>, lo: Side, hi: Side, order: usize) -> Self {
        let terms = terms
            .into_iter()
            .filter(|(s, c)| *s >= lo.at && *s <= hi.at && !c.is_zero())
            .map(|(s, c)| (s, c.truncate(order)))
            .collect();
        ShiftOp { terms, lo, hi, order }
    }

    /// `c Λ^s`.
    pub fn monomial(c: EpsDiff<S>, s: Q) -> Self {
        let order = c.order();
        let mut terms = BTreeMap::new();
        terms.insert(s.clone(), c);
        let side = Side { at: s, exact: true };
        ShiftOp {
            terms,
            lo: side.clone(),
            hi: side,
            order,
        }
    }

    pub fn identity(order: usize) -> Self {
        Self::monomial(EpsSeries::one(order), Q::zero_q())
    }

    /// `L = Λ^m + e^u Λ^{-n}`.
    pub fn lax(params: &LaxParams, order: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(params.mq(), EpsSeries::one(order));
        terms.insert(-params.nq(), EpsSeries::constant(DiffPoly::exp_u(qi(1)), order));
        Self::exact(terms, order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lo(&self) -> &Side {
        &self.lo
    }

    pub fn hi(&self) -> &Side {
        &self.hi
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Q, &EpsDiff<S>)> {
        self.terms.iter()
    }

    pub fn in_window(&self, s: &Q) -> bool {
        (self.lo.exact || *s >= self.lo.at) && (self.hi.exact || *s <= self.hi.at)
    }

    /// Coefficient of `Λ^s`; zero if `s` is inside the window and absent.
    pub fn coefficient(&self, s: &Q) -> Result<EpsDiff<S>> {
        if !self.in_window(s) {
            return Err(Error::WindowUnderflow {
                requested: crate::algebra::fmt_q(s),
                lo: self.side_text(&self.lo, "-inf"),
                hi: self.side_text(&self.hi, "+inf"),
            });
        }
        Ok(self
            .terms
            .get(s)
            .cloned()
            .unwrap_or_else(|| EpsSeries::zero(self.order)))
    }

    fn side_text(&self, side: &Side, open: &str) -> String {
        if side.exact {
            open.into()
        } else {
            crate::algebra::fmt_q(&side.at)
        }
    }

    /// `res_{Λ₃}`: the coefficient of `Λ^0`.
    pub fn res(&self) -> Result<EpsDiff<S>> {
        self.coefficient(&Q::zero_q())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        ShiftOp {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c.truncate(order))).collect(),
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            order,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        ShiftOp {
            terms: self
                .terms
                .iter()
                .map(|(s, v)| (s.clone(), v.scale(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            ..self.clone()
        }
    }

    fn sum_side(a: &Side, b: &Side, lower: bool) -> Side {
        match (a.exact, b.exact) {
            (true, true) => Side {
                at: if lower { a.at.clone().min(b.at.clone()) } else { a.at.clone().max(b.at.clone()) },
                exact: true,
            },
            (false, true) => a.clone(),
            (true, false) => b.clone(),
            (false, false) => Side {
                at: if lower { a.at.clone().max(b.at.clone()) } else { a.at.clone().min(b.at.clone()) },
                exact: false,
            },
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut terms: BTreeMap<Q, EpsDiff<S>> = BTreeMap::new();
        for (s, c) in self.terms.iter().chain(o.terms.iter()) {
            let v = match terms.remove(s) {
                Some(old) => old.plus(c),
                None => c.truncate(order),
            };
            terms.insert(s.clone(), v);
        }
        let lo = Self::sum_side(&self.lo, &o.lo, true);
        let hi = Self::sum_side(&self.hi, &o.hi, false);
        Self::with_window(terms, lo, hi, order)
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.scale(&qi(-1)))
    }

    /// Lower end of the product window, or `None` if unbounded below
    /// (both factors truncated on facing sides).
    fn product_side(a: &Self, b: &Self, lower: bool) -> Result<Side> {
        let (sa, sb, fa, fb) = if lower {
            (&a.lo, &b.lo, &a.hi, &b.hi)
        } else {
            (&a.hi, &b.hi, &a.lo, &b.lo)
        };
        if sa.exact && sb.exact {
            return Ok(Side {
                at: &sa.at + &sb.at,
                exact: true,
            });
        }
        // a term of the product is complete only when every pairing that
        // could reach it comes from the known part of each factor
        let mut bound: Option<Q> = None;
        for (trunc, far) in [(sa, fb), (sb, fa)] {
            if trunc.exact {
                continue;
            }
            if !far.exact {
                return Err(Error::EmptyWindow);
            }
            let t = &trunc.at + &far.at;
            bound = Some(match bound {
                None => t,
                Some(b) if lower => b.max(t),
                Some(b) => b.min(t),
            });
        }
        Ok(Side {
            at: bound.expect("one side truncated"),
            exact: false,
        })
    }

    /// Operator composition with `Λ^s ∘ f = f(x + sε) Λ^s`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let order = self.order.min(o.order);
        let lo = Self::product_side(self, o, true)?;
        let hi = Self::product_side(self, o, false)?;
        if lo.at > hi.at && !(lo.exact && hi.exact) {
            return Err(Error::EmptyWindow);
        }
        let mut terms: BTreeMap<Q, EpsDiff<S>> = BTreeMap::new();
        for (t, b) in &o.terms {
            let b = b.truncate(order);
            for (s, a) in &self.terms {
                let e = s + t;
                if e < lo.at || e > hi.at {
                    continue;
                }
                let prod = a.truncate(order).times(&shift_series(&b, s));
                let v = match terms.remove(&e) {
                    Some(old) => old.plus(&prod),
                    None => prod,
                };
                terms.insert(e, v);
            }
        }
        Ok(Self::with_window(terms, lo, hi, order))
    }

    pub fn power(&self, k: u32) -> Result<Self> {
        assert!(k >= 1, "power needs k >= 1");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `(A_+, A_-)` by the sign of the exponent; `Λ^0` goes to `A_+`.
    pub fn split_pm(&self) -> Result<(Self, Self)> {
        let zero = Q::zero_q();
        if !self.in_window(&zero) && !(self.lo.exact || self.hi.exact) {
            return Err(Error::WindowUnderflow {
                requested: "0".into(),
                lo: self.side_text(&self.lo, "-inf"),
                hi: self.side_text(&self.hi, "+inf"),
            });
        }
        let plus: BTreeMap<Q, EpsDiff<S>> =
            self.terms.iter().filter(|(s, _)| **s >= zero).map(|(s, c)| (s.clone(), c.clone())).collect();
        let minus: BTreeMap<Q, EpsDiff<S>> =
            self.terms.iter().filter(|(s, _)| **s < zero).map(|(s, c)| (s.clone(), c.clone())).collect();
        if !self.lo.exact && self.lo.at > zero {
            return Err(Error::WindowUnderflow {
                requested: "0".into(),
                lo: self.side_text(&self.lo, "-inf"),
                hi: self.side_text(&self.hi, "+inf"),
            });
        }
        let plus_op = ShiftOp {
            lo: Side {
                at: plus.keys().next().cloned().unwrap_or_else(Q::zero_q),
                exact: true,
            },
            hi: if self.hi.exact {
                Side {
                    at: plus.keys().next_back().cloned().unwrap_or_else(Q::zero_q),
                    exact: true,
                }
            } else {
                self.hi.clone()
            },
            terms: plus,
            order: self.order,
        };
        let minus_op = ShiftOp {
            hi: Side {
                at: minus.keys().next_back().cloned().unwrap_or_else(Q::zero_q),
                exact: true,
            },
            lo: if self.lo.exact {
                Side {
                    at: minus.keys().next().cloned().unwrap_or_else(Q::zero_q),
                    exact: true,
                }
            } else {
                self.lo.clone()
            },
            terms: minus,
            order: self.order,
        };
        Ok((plus_op, minus_op))
    }
}

impl<S: Field + fmt::Display> ShiftOp<S> {
    /// One line per `Λ^s` with the canonical coefficient text.
    pub fn dump(&self) -> String {
        let mut out = format!(
            "window [{}{}, {}{}] order {}\n",
            crate::algebra::fmt_q(&self.lo.at),
            if self.lo.exact { "" } else { "~" },
            crate::algebra::fmt_q(&self.hi.at),
            if self.hi.exact { "" } else { "~" },
            self.order
        );
        for (s, c) in &self.terms {
            for (e, p) in c.coeffs().iter().enumerate() {
                if !p.is_zero() {
                    out.push_str(&format!("L^{} eps^{}: {}\n", crate::algebra::fmt_q(s), e, p.render()));
                }
            }
        }
        out
    }
}

trait ZeroQ {
    fn zero_q() -> Q;
}

impl ZeroQ for Q {
    fn zero_q() -> Q {
        <Q as Ring>::zero()
    }
}

/// Which root of `L^h` to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `R = Λ^h + …` in `Λ₃^{-1}`, with `R^m = L^h`.
    Positive,
    /// `S = E Λ^{-h} + …` in `Λ₃`, with `S^n = L^h`.
    Negative,
}

/// `(lead Λ^{ld})^t = P_t Λ^{t·ld}` for `t = 0..k`.
fn lead_powers<S: Field>(lead: &EpsDiff<S>, ld: &Q, k: usize) -> Vec<EpsDiff<S>> {
    // P_t = lead · Λ^{ld}(P_{t-1})
    let mut p = vec![EpsSeries::one(lead.order())];
    for _ in 1..k {
        let prev = p.last().expect("nonempty").clone();
        p.push(lead.times(&shift_series(&prev, ld)));
    }
    p
}

/// Solves `Σ_t α_t Λ^{t·ld}(c) = r` for `c` order by order in ε; `inv0`
/// inverts the ε⁰ part of `Σ_t α_t`, a single monomial.
fn solve_linear<S: Field>(
    alphas: &[EpsDiff<S>],
    ld: &Q,
    r: &EpsDiff<S>,
    inv0: &DiffPoly<S>,
) -> EpsDiff<S> {
    let order = r.order();
    let apply = |c: &EpsDiff<S>| -> EpsDiff<S> {
        let mut acc = EpsSeries::zero(order);
        for (t, a) in alphas.iter().enumerate() {
            acc = acc.plus(&a.times(&shift_series(c, &(ld * qi(t as i64)))));
        }
        acc
    };
    let mut c: EpsDiff<S> = EpsSeries::zero(order);
    for e in 0..=order {
        let resid = r.minus(&apply(&c));
        let fix = inv0.times(resid.coeff(e));
        let mut cc = c.into_coeffs();
        cc[e] = fix;
        c = EpsSeries::from_coeffs(cc);
    }
    debug_assert!(r.minus(&apply(&c)).is_zero());
    c
}

/// The leading coefficient `E = exp(φ)` of the negative root, where
/// `φ = [(1 − e^{-hz})/(1 − e^{-nz})]_{z = ε∂} u`.
pub fn negative_lead<S: Field>(params: &LaxParams, order: usize) -> EpsDiff<S> {
    let series = |a: i64| -> EpsSeries<Q> {
        // (1 - e^{-az})/z = Σ_k -(-a)^{k+1}/(k+1)! z^k
        let mut c = Vec::with_capacity(order + 1);
        let mut fact = BigInt::from(1);
        let mut pw = qi(1);
        for k in 0..=order {
            fact *= BigInt::from(k as i64 + 1);
            pw *= qi(-a);
            c.push(-(&pw) / Q::from_integer(fact.clone()));
        }
        EpsSeries::from_coeffs(c)
    };
    let num = series(params.h() as i64);
    let den = series(params.n as i64);
    let inv = den
        .inverse_with(&(qi(1) / den.coeff(0)))
        .expect("nonzero constant term");
    let f = num.times(&inv);
    let kappa = f.coeff(0).clone();
    let mut rest = vec![DiffPoly::<S>::zero()];
    for k in 1..=order {
        rest.push(DiffPoly::jet(k as u32).scale(f.coeff(k)));
    }
    let e = EpsSeries::from_coeffs(rest).exp().expect("zero constant term");
    e.map(|c| c.mul_exp(&kappa))
}

/// Number of lattice coefficients needed below (positive branch) or above
/// (negative branch) the leading term so that `root^k` is complete at `Λ^0`,
/// plus a guard of two.
pub fn auto_depth(k: u32) -> u32 {
    k + 2
}

/// Root of `L^h` on the chosen branch with `depth` lattice coefficients
/// beyond the leading term, ε-truncated at `order`.
pub fn root_of_lh<S: Field>(
    params: &LaxParams,
    branch: Branch,
    depth: u32,
    order: usize,
) -> Result<ShiftOp<S>> {
    if depth == 0 {
        return Err(Error::InvalidParams("root depth must be at least 1".into()));
    }
    let h = params.hq();
    let lh = ShiftOp::<S>::lax(params, order).power(params.h() as u32)?;
    let (k, ld, step, lead) = match branch {
        Branch::Positive => (params.m as usize, h.clone(), -h.clone(), EpsSeries::one(order)),
        Branch::Negative => (params.n as usize, -h.clone(), h.clone(), negative_lead::<S>(params, order)),
    };
    let p = lead_powers(&lead, &ld, k);
    // inverse of k · lead0^{k-1}, a single monomial
    let lead0 = lead.coeff(0).clone();
    let kappa0 = lead0.kappas().into_iter().next().unwrap_or_else(Q::zero_q);
    let inv0 = DiffPoly::<S>::exp_u(-(kappa0 * qi(k as i64 - 1))).scale(&(qi(1) / qi(k as i64)));
    let mut terms: BTreeMap<Q, EpsDiff<S>> = BTreeMap::new();
    terms.insert(ld.clone(), lead.clone());
    for i in 1..=depth as i64 {
        let pos = &ld + &step * qi(i);
        let partial = ShiftOp::exact(terms.clone(), order);
        let target_exp = &ld * qi(k as i64) + &step * qi(i);
        let known = partial.power(k as u32)?.coefficient(&target_exp)?;
        let want = lh.coefficient(&target_exp).unwrap_or_else(|_| EpsSeries::zero(order));
        let want = if lh.in_window(&target_exp) { want } else { EpsSeries::zero(order) };
        let alphas: Vec<EpsDiff<S>> = (0..k)
            .map(|t| p[t].times(&shift_series(&p[k - 1 - t], &(&ld * qi(t as i64) + &pos))))
            .collect();
        let c = solve_linear(&alphas, &ld, &want.minus(&known), &inv0);
        terms.insert(pos, c);
    }
    let last = &ld + &step * qi(depth as i64);
    let (lo, hi) = match branch {
        Branch::Positive => (Side { at: last, exact: false }, Side { at: ld, exact: true }),
        Branch::Negative => (Side { at: ld, exact: true }, Side { at: last, exact: false }),
    };
    Ok(ShiftOp::with_window(terms, lo, hi, order))
}

/// A positive rational `λ` with `λm` or `λn` integral.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lambda {
    value: Q,
}

impl Lambda {
    pub fn new(params: &LaxParams, value: Q) -> Result<Lambda> {
        let ok = value > Q::zero_q()
            && ((&value * params.mq()).is_integer() || (&value * params.nq()).is_integer());
        if !ok {
            return Err(Error::NotInIndexSet(crate::algebra::fmt_q(&value)));
        }
        Ok(Lambda { value })
    }

    pub fn value(&self) -> &Q {
        &self.value
    }

    /// `λm` if integral.
    pub fn k_m(&self, params: &LaxParams) -> Option<u32> {
        let v = &self.value * params.mq();
        v.is_integer().then(|| u32::try_from(v.to_integer()).expect("small"))
    }

    /// `λn` if integral.
    pub fn k_n(&self, params: &LaxParams) -> Option<u32> {
        let v = &self.value * params.nq();
        v.is_integer().then(|| u32::try_from(v.to_integer()).expect("small"))
    }

    /// The branch used by default: positive when `λ ∈ 𝓘₁`.
    pub fn branch(&self, params: &LaxParams) -> Branch {
        if self.k_m(params).is_some() {
            Branch::Positive
        } else {
            Branch::Negative
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::algebra::fmt_q(&self.value))
    }
}

/// `L^{λh}` on the given branch with `extra` lattice coefficients beyond
/// those needed for the residue.
pub fn frac_power<S: Field>(
    params: &LaxParams,
    lambda: &Lambda,
    branch: Branch,
    extra: u32,
    order: usize,
) -> Result<ShiftOp<S>> {
    let k = match branch {
        Branch::Positive => lambda.k_m(params),
        Branch::Negative => lambda.k_n(params),
    }
    .ok_or_else(|| Error::NotInIndexSet(format!("{lambda} on the {branch:?} branch")))?;
    let root = root_of_lh::<S>(params, branch, auto_depth(k) + extra, order)?;
    root.power(k)
}

/// `f(x + sε)`: the action of `Λ^s` on a function.
pub fn half_shift_apply<S: Field>(f: &EpsDiff<S>, s: &Q) -> EpsDiff<S> {
    shift_series(f, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::diffpoly::JetKey;

    type Op = ShiftOp<Q>;

    fn p(m: u64, n: u64) -> LaxParams {
        LaxParams::new(m, n).unwrap()
    }

    fn e0(op: &EpsDiff<Q>) -> DiffPoly<Q> {
        op.coeff(0).clone()
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(LaxParams::new(2, 4).is_err());
        assert!(LaxParams::new(0, 1).is_err());
        assert!(LaxParams::new(1, 1).is_ok());
    }

    #[test]
    fn lax_window() {
        let l = Op::lax(&p(1, 2), 2);
        assert_eq!(l.lo().at, qi(-2));
        assert_eq!(l.hi().at, qi(1));
        assert!(l.res().unwrap().is_zero());
    }

    #[test]
    fn volterra_square() {
        let l = Op::lax(&p(1, 1), 2);
        let l2 = l.power(2).unwrap();
        assert_eq!(e0(&l2.res().unwrap()), DiffPoly::exp_u(qi(1)).scale(&qi(2)));
    }

    #[test]
    fn residue_of_lh_counts_paths() {
        for (m, n, c) in [(1, 1, 2), (1, 2, 3), (2, 3, 10)] {
            let pp = p(m, n);
            let lh = Op::lax(&pp, 1).power(pp.h() as u32).unwrap();
            let r = e0(&lh.res().unwrap());
            assert_eq!(r, DiffPoly::exp_u(qi(m as i64)).scale(&qi(c)), "({m},{n})");
        }
    }

    #[test]
    fn taylor_shift_rule() {
        let order = 2;
        let a = Op::monomial(EpsSeries::one(order), qi(2));
        let f = Op::monomial(EpsSeries::constant(DiffPoly::exp_u(qi(1)), order), qi(0));
        let prod = a.mul(&f).unwrap();
        let c = prod.coefficient(&qi(2)).unwrap();
        let eu = DiffPoly::<Q>::exp_u(qi(1));
        assert_eq!(c.coeff(1), &eu.times(&DiffPoly::jet(1)).scale(&qi(2)));
    }

    #[test]
    fn positive_root_of_m1_is_lh() {
        let pp = p(1, 2);
        let r = root_of_lh::<Q>(&pp, Branch::Positive, 3, 2).unwrap();
        let lh = Op::lax(&pp, 2).power(3).unwrap();
        for s in [3, 0, -3] {
            assert_eq!(r.coefficient(&qi(s)).unwrap(), lh.coefficient(&qi(s)).unwrap());
        }
        assert_eq!(r.coefficient(&qi(3)).unwrap(), EpsSeries::one(2));
    }

    #[test]
    fn roots_reproduce_lh() {
        for (m, n) in [(2, 1), (2, 3)] {
            let pp = p(m, n);
            let order = 3;
            let lh = Op::lax(&pp, order).power(pp.h() as u32).unwrap();
            let r = root_of_lh::<Q>(&pp, Branch::Positive, 4, order).unwrap();
            let rm = r.power(m as u32).unwrap();
            let s = root_of_lh::<Q>(&pp, Branch::Negative, 4, order).unwrap();
            let sn = s.power(n as u32).unwrap();
            let h = pp.h() as i64;
            for j in -(n as i64)..=(m as i64) {
                let e = qi(j * h);
                if rm.in_window(&e) {
                    assert_eq!(rm.coefficient(&e).unwrap(), lh.coefficient(&e).unwrap(), "R ({m},{n}) {j}");
                }
                if sn.in_window(&e) {
                    assert_eq!(sn.coefficient(&e).unwrap(), lh.coefficient(&e).unwrap(), "S ({m},{n}) {j}");
                }
            }
        }
    }

    #[test]
    fn integer_lambda_matches_power_of_l() {
        let pp = p(2, 3);
        let order = 2;
        let one = Lambda::new(&pp, qi(1)).unwrap();
        let direct = Op::lax(&pp, order).power(5).unwrap();
        for branch in [Branch::Positive, Branch::Negative] {
            let f = frac_power::<Q>(&pp, &one, branch, 0, order).unwrap();
            assert_eq!(f.res().unwrap(), direct.res().unwrap(), "{branch:?}");
        }
    }

    #[test]
    fn leading_residue_of_root() {
        // res L^{h/m} at ε⁰ is (h/m) e^u
        let pp = p(2, 1);
        let lam = Lambda::new(&pp, q(1, 2)).unwrap();
        let f = frac_power::<Q>(&pp, &lam, Branch::Positive, 0, 1).unwrap();
        assert_eq!(e0(&f.res().unwrap()), DiffPoly::exp_u(qi(1)).scale(&q(3, 2)));
    }

    #[test]
    fn window_underflow_is_reported() {
        let pp = p(2, 3);
        let r = root_of_lh::<Q>(&pp, Branch::Positive, 1, 1).unwrap();
        let r2 = r.power(2).unwrap();
        assert!(matches!(r2.res(), Err(Error::WindowUnderflow { .. })));
    }

    #[test]
    fn split_and_residue() {
        let l = Op::lax(&p(1, 2), 1);
        let (pl, mi) = l.split_pm().unwrap();
        assert_eq!(pl.terms().count(), 1);
        assert_eq!(mi.terms().count(), 1);
        assert_eq!(pl.plus(&mi), l);
        let id = Op::identity(1);
        let (a, b) = id.split_pm().unwrap();
        assert_eq!(a, id);
        assert_eq!(b.terms().count(), 0);
    }

    #[test]
    fn associativity_small() {
        let order = 3;
        let mk = |c: i64, kap: i64, j: Vec<u32>, s: i64| {
            Op::monomial(
                EpsSeries::constant(DiffPoly::monomial(qi(c), JetKey::new(qi(kap), j)), order),
                qi(s),
            )
        };
        let a = mk(2, 1, vec![1], 1).plus(&mk(1, 0, vec![], -2));
        let b = mk(-1, 2, vec![2], 3).plus(&mk(3, 1, vec![], 0));
        let c = mk(1, -1, vec![1, 1], -1);
        let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
