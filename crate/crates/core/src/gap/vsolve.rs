//! `V(x; ε) = (1/m) log x + Σ ε^{2g} P_g x^{-2g}` from the normal-form
//! equation `(Σ ε^{2g} M_1^{[g]}(V', …)) e^{mV} = x`, and the independent
//! check against the original difference equation.

use crate::algebra::{gen_binomial, qi, EpsSeries, Field, LaurentX, Ring, Q};
use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::hierarchy::{m_coeffs_via_tau_symmetry, TauScalars};
use crate::shift::LaxParams;
use num_bigint::BigInt;

type XSeries<S> = EpsSeries<LaurentX<S>>;

/// Evaluates a κ = 0 differential polynomial on jet series `jets[k-1] = V^{(k)}`.
fn eval_on_jets<S: Field>(f: &DiffPoly<S>, jets: &[XSeries<S>], order: usize) -> Result<XSeries<S>> {
    let mut acc = EpsSeries::zero(order);
    for (key, c) in f.terms() {
        if !Ring::is_zero(&key.kappa) {
            return Err(Error::UnsupportedExponential(crate::algebra::fmt_q(&key.kappa)));
        }
        let mut t = EpsSeries::constant(LaurentX::monomial(c.clone(), 0), order);
        for &j in &key.jets {
            let v = jets.get(j as usize - 1).ok_or(Error::MissingJet(j))?;
            t = t.times(v);
        }
        acc = acc.plus(&t);
    }
    Ok(acc)
}

/// `e^{-mV}/x · x` residual `(Σ ε^{2g} M^{[g]}) e^{m(V − log x/m)} − 1`.
fn normal_form_residual<S: Field>(m: &S, ms: &[DiffPoly<S>], p: &[S], order: usize) -> Result<XSeries<S>> {
    let genus = order / 2;
    // V' as a series
    let mut v1 = vec![LaurentX::zero(); order + 1];
    v1[0] = LaurentX::monomial(m.inv().ok_or(Error::DivisionByZero)?, -1);
    let mut w = vec![LaurentX::zero(); order + 1];
    for g in 1..=genus {
        let e = -2 * g as i64;
        v1[2 * g] = LaurentX::monomial(p[g - 1].scale(&qi(e)), e - 1);
        w[2 * g] = LaurentX::monomial(p[g - 1].times(m), e);
    }
    let mut jets = vec![EpsSeries::from_coeffs(v1)];
    for _ in 1..order {
        let last = jets.last().expect("nonempty");
        jets.push(last.map(|c| c.derivative()));
    }
    let mut nser = EpsSeries::one(order);
    for (g, mg) in ms.iter().enumerate().take(genus) {
        let e = 2 * (g + 1);
        let val = eval_on_jets(mg, &jets, order - e)?;
        nser = nser.plus(&val.extend_exact(order - e).shift_up(e));
    }
    let ew = EpsSeries::from_coeffs(w).exp()?;
    Ok(nser.times(&ew).minus(&EpsSeries::one(order)))
}

/// Solves for `P_1, …, P_G` given `M_1^{[1..G]}`. Each order is linear in
/// the new unknown with coefficient `m x^{-2g}`; starting from `guess`, one
/// correction step is exact, and every other power of `x` must cancel.
pub fn solve_v_with<S: Field>(m: &S, ms: &[DiffPoly<S>], genus: usize, guess: &[S]) -> Result<Vec<S>> {
    if ms.len() < genus {
        return Err(Error::InvalidParams(format!("need M_1^[g] for g ≤ {genus}")));
    }
    let inv_m = m.inv().ok_or(Error::DivisionByZero)?;
    let mut p: Vec<S> = (0..genus).map(|i| guess.get(i).cloned().unwrap_or_else(S::zero)).collect();
    for g in 1..=genus {
        let order = 2 * g;
        let r = normal_form_residual(m, ms, &p[..g], order)?;
        let c = r.coeff(order);
        let e = -(order as i64);
        if let Some((k, _)) = c.terms().find(|(k, _)| **k != e) {
            return Err(Error::AnsatzViolated {
                order,
                detail: format!("x^{k} survives"),
            });
        }
        p[g - 1] = p[g - 1].minus(&c.coeff(e).times(&inv_m));
    }
    let r = normal_form_residual(m, ms, &p, 2 * genus)?;
    if let Some(order) = r.coeffs().iter().position(|c| !c.is_zero()) {
        return Err(Error::AnsatzViolated {
            order,
            detail: "residual after solving".into(),
        });
    }
    Ok(p)
}

/// `P_1, …, P_G`, with `M_1^{[g]}` from the tau-symmetry recursion at `λ = 1`.
pub fn solve_v<S: Field>(m: &S, n: &S, genus: usize) -> Result<Vec<S>> {
    let sc = TauScalars {
        m: m.clone(),
        n: n.clone(),
        lambda: S::one(),
    };
    let ms = m_coeffs_via_tau_symmetry(&sc, genus)?;
    solve_v_with(m, &ms, genus, &[])
}

/// Outcome of substituting `V` into the difference equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub order: usize,
    /// Lowest ε-order with a nonzero residual.
    pub first_failure: Option<usize>,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Multisets `0 ≤ α_1 ≤ … ≤ α_m ≤ n`.
fn multisets(m: usize, n: u64) -> Vec<Vec<u64>> {
    fn go(left: usize, lo: u64, n: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for a in lo..=n {
            cur.push(a);
            go(left - 1, a, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, 0, n, &mut Vec::new(), &mut out);
    out
}

/// `(1 + cε/x)^a` through `ε^order`.
fn binomial_series(a: &Q, c: &Q, order: usize) -> XSeries<Q> {
    let coeffs = (0..=order)
        .map(|k| LaurentX::monomial(gen_binomial(a, k as u32) * c.pow(k as i32), -(k as i64)))
        .collect();
    EpsSeries::from_coeffs(coeffs)
}

/// Checks `Σ_α exp Σ_j V(x + α_j mε − (j − 1/2)nε) = C(m+n, m) x` through
/// `ε^{2G}`; `log(x + cε)` is split as `log x + log(1 + cε/x)`, so the sum
/// is `x · Σ_α Π_j (1 + c_j ε/x)^{1/m} · exp(Σ_j Σ_g ε^{2g} P_g (x + c_j ε)^{-2g})`.
pub fn verify_difference_equation(params: &LaxParams, p: &[Q], genus: usize) -> Result<ResidualReport> {
    if p.len() < genus {
        return Err(Error::InvalidParams(format!("need P_g for g ≤ {genus}")));
    }
    let order = 2 * genus;
    let (m, n) = (params.m, params.n);
    let inv_m = Q::new(1.into(), BigInt::from(m));
    let mut total: XSeries<Q> = EpsSeries::zero(order);
    for alpha in multisets(m as usize, n) {
        let mut prod = EpsSeries::one(order);
        let mut expo = EpsSeries::zero(order);
        for (j, a) in alpha.iter().enumerate() {
            let c = qi((*a * m) as i64) - (qi(j as i64) + Q::new(1.into(), 2.into())) * qi(n as i64);
            prod = prod.times(&binomial_series(&inv_m, &c, order));
            for g in 1..=genus {
                let e = 2 * g;
                let term = binomial_series(&qi(-(e as i64)), &c, order - e)
                    .map(|l| l.shift(-(e as i64)).scale(&p[g - 1]));
                expo = expo.plus(&term.extend_exact(order - e).shift_up(e));
            }
        }
        total = total.plus(&prod.times(&expo.exp()?));
    }
    // compare total · x with C(m+n, m) x, i.e. total with C(m+n, m)
    let want = Q::from_integer(crate::algebra::binomial_int((m + n) as u32, m as u32));
    let diff = total.minus(&EpsSeries::constant(LaurentX::monomial(want, 0), order));
    Ok(ResidualReport {
        order,
        first_failure: diff.coeffs().iter().position(|c| !c.is_zero()),
    })
}
