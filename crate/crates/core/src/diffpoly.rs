//! Differential polynomials with exponential factors: finite sums of
//! `c · e^{κu} · u^{(J_1)} ⋯ u^{(J_l)}`.

use crate::algebra::{Algebra, EpsSeries, Field, Ring, Q};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// `(κ, J)`: the exponential weight and the jet partition, sorted
/// non-increasing, every part ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetKey {
    pub kappa: Q,
    pub jets: Vec<u32>,
}

impl JetKey {
    pub fn new(kappa: Q, mut jets: Vec<u32>) -> JetKey {
        assert!(jets.iter().all(|&j| j >= 1), "jet orders start at 1");
        jets.sort_unstable_by(|a, b| b.cmp(a));
        JetKey { kappa, jets }
    }

    pub fn plain(jets: Vec<u32>) -> JetKey {
        JetKey::new(<Q as Ring>::zero(), jets)
    }

    /// Jet weight `Σ J_i` (the grading of `∂_x^k u` is `k`).
    pub fn weight(&self) -> u32 {
        self.jets.iter().sum()
    }

    fn times(&self, o: &JetKey) -> JetKey {
        let mut jets = Vec::with_capacity(self.jets.len() + o.jets.len());
        let (mut i, mut j) = (0, 0);
        while i < self.jets.len() || j < o.jets.len() {
            if j == o.jets.len() || (i < self.jets.len() && self.jets[i] >= o.jets[j]) {
                jets.push(self.jets[i]);
                i += 1;
            } else {
                jets.push(o.jets[j]);
                j += 1;
            }
        }
        JetKey {
            kappa: &self.kappa + &o.kappa,
            jets,
        }
    }

    fn render_jets(&self) -> String {
        if self.jets.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.jets.len() {
            let j = self.jets[i];
            let mut e = 0;
            while i < self.jets.len() && self.jets[i] == j {
                e += 1;
                i += 1;
            }
            parts.push(if e == 1 {
                format!("u{j}")
            } else {
                format!("u{j}^{e}")
            });
        }
        parts.join("*")
    }
}

/// Element of the differential-polynomial ring, ε-free; ε-dependence is
/// carried outside as `EpsSeries<DiffPoly<S>>`.
#[derive(Clone, PartialEq, Debug)]
pub struct DiffPoly<S> {
    terms: BTreeMap<JetKey, S>,
}

impl<S: Field> DiffPoly<S> {
    pub fn constant(c: S) -> Self {
        Self::monomial(c, JetKey::plain(vec![]))
    }

    pub fn monomial(c: S, key: JetKey) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        DiffPoly { terms }
    }

    /// `e^{κu}`.
    pub fn exp_u(kappa: Q) -> Self {
        Self::monomial(S::one(), JetKey::new(kappa, vec![]))
    }

    /// `u^{(k)}`, `k ≥ 1`.
    pub fn jet(k: u32) -> Self {
        Self::monomial(S::one(), JetKey::plain(vec![k]))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JetKey, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &JetKey) -> S {
        self.terms.get(key).cloned().unwrap_or_else(S::zero)
    }

    fn add_term(terms: &mut BTreeMap<JetKey, S>, key: JetKey, c: S) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&key) {
            Some(v) => {
                *v = v.plus(&c);
                if v.is_zero() {
                    terms.remove(&key);
                }
            }
            None => {
                terms.insert(key, c);
            }
        }
    }

    pub fn scale_s(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.times(s))).collect(),
        }
    }

    pub fn map_coeffs<T: Field, F: Fn(&S) -> T>(&self, f: F) -> DiffPoly<T> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            DiffPoly::add_term(&mut terms, k.clone(), f(c));
        }
        DiffPoly { terms }
    }

    /// Multiplies by `e^{κu}`.
    pub fn mul_exp(&self, kappa: &Q) -> Self {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    (
                        JetKey {
                            kappa: &k.kappa + kappa,
                            jets: k.jets.clone(),
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Total derivative in `x`.
    pub fn dx(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (key, c) in &self.terms {
            if !Ring::is_zero(&key.kappa) {
                let mut jets = key.jets.clone();
                jets.push(1);
                Self::add_term(
                    &mut terms,
                    JetKey::new(key.kappa.clone(), jets),
                    c.scale(&key.kappa),
                );
            }
            let mut i = 0;
            while i < key.jets.len() {
                let j = key.jets[i];
                let mut mult = 0;
                while i + mult < key.jets.len() && key.jets[i + mult] == j {
                    mult += 1;
                }
                let mut jets = key.jets.clone();
                jets[i] = j + 1;
                Self::add_term(
                    &mut terms,
                    JetKey::new(key.kappa.clone(), jets),
                    c.scale(&Q::from_integer(BigInt::from(mult))),
                );
                i += mult;
            }
        }
        DiffPoly { terms }
    }

    pub fn dx_n(&self, k: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.dx();
        }
        f
    }

    /// `∂/∂u^{(k)}` with the jets independent; `k = 0` acts on `e^{κu}`.
    pub fn partial_jet(&self, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        for (key, c) in &self.terms {
            if k == 0 {
                Self::add_term(&mut terms, key.clone(), c.scale(&key.kappa));
                continue;
            }
            let mult = key.jets.iter().filter(|&&j| j == k).count();
            if mult == 0 {
                continue;
            }
            let mut jets = key.jets.clone();
            let pos = jets.iter().position(|&j| j == k).expect("present");
            jets.remove(pos);
            Self::add_term(
                &mut terms,
                JetKey {
                    kappa: key.kappa.clone(),
                    jets,
                },
                c.scale(&Q::from_integer(BigInt::from(mult))),
            );
        }
        DiffPoly { terms }
    }

    /// Highest jet order present (0 if none).
    pub fn max_jet(&self) -> u32 {
        self.terms
            .keys()
            .filter_map(|k| k.jets.first().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn kappas(&self) -> BTreeSet<Q> {
        self.terms.keys().map(|k| k.kappa.clone()).collect()
    }

    /// Removes a common factor `e^{κu}`; `None` if some term has another κ.
    pub fn strip_exp(&self, kappa: &Q) -> Option<Self> {
        if self.terms.keys().any(|k| &k.kappa != kappa) {
            return None;
        }
        Some(self.mul_exp(&-kappa))
    }

    /// Jet weights of the terms, deduplicated.
    pub fn weights(&self) -> BTreeSet<u32> {
        self.terms.keys().map(|k| k.weight()).collect()
    }

    /// Evaluates in an `S`-algebra given values of the jets and of `e^{κu}`.
    pub fn substitute<R: Algebra<S>>(
        &self,
        jet: &dyn Fn(u32) -> Option<R>,
        exp: &dyn Fn(&Q) -> Result<R>,
    ) -> Result<R> {
        let mut jet_cache: BTreeMap<u32, R> = BTreeMap::new();
        let mut exp_cache: BTreeMap<Q, R> = BTreeMap::new();
        let mut acc = R::zero();
        for (key, c) in &self.terms {
            let mut t = R::from_scalar(c);
            if !Ring::is_zero(&key.kappa) {
                if !exp_cache.contains_key(&key.kappa) {
                    exp_cache.insert(key.kappa.clone(), exp(&key.kappa)?);
                }
                t = t.times(&exp_cache[&key.kappa]);
            }
            for &j in &key.jets {
                if !jet_cache.contains_key(&j) {
                    jet_cache.insert(j, jet(j).ok_or(Error::MissingJet(j))?);
                }
                t = t.times(&jet_cache[&j]);
            }
            acc = acc.plus(&t);
        }
        Ok(acc)
    }
}

impl<S: Field + fmt::Display> DiffPoly<S> {
    /// Canonical text: terms in `(κ, J)` order, `(c)*e^{κu}*u1^2*u2`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, c)| format!("({})*e^{{{}u}}*{}", c, crate::algebra::fmt_q(&k.kappa), k.render_jets()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<S: Field> Ring for DiffPoly<S> {
    fn zero() -> Self {
        DiffPoly {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        Self::constant(S::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            Self::add_term(&mut terms, k.clone(), c.clone());
        }
        DiffPoly { terms }
    }
    fn minus(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            Self::add_term(&mut terms, k.clone(), c.negate());
        }
        DiffPoly { terms }
    }
    fn times(&self, o: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                Self::add_term(&mut terms, ka.times(kb), ca.times(cb));
            }
        }
        DiffPoly { terms }
    }
    fn negate(&self) -> Self {
        DiffPoly {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.negate())).collect(),
        }
    }
    fn scale(&self, c: &Q) -> Self {
        if Ring::is_zero(c) {
            return Self::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.scale(c))).collect(),
        }
    }
}

impl<S: Field> Algebra<S> for DiffPoly<S> {
    fn from_scalar(s: &S) -> Self {
        Self::constant(s.clone())
    }
}

/// ε-dependent differential polynomial.
pub type EpsDiff<S> = EpsSeries<DiffPoly<S>>;

/// `e^{-u} ∂^k e^u`, the complete Bell polynomial in `u', …, u^{(k)}`.
pub fn bell<S: Field>(k: usize) -> DiffPoly<S> {
    let one = Q::from_integer(BigInt::from(1));
    DiffPoly::<S>::exp_u(one.clone())
        .dx_n(k)
        .strip_exp(&one)
        .expect("single exponential weight")
}

/// `f(x + sε) = Σ_k (sε)^k/k! ∂^k f`, truncated at `order`.
pub fn shift_expand<S: Field>(f: &DiffPoly<S>, s: &Q, order: usize) -> EpsDiff<S> {
    let mut out = Vec::with_capacity(order + 1);
    let mut d = f.clone();
    let mut c = Q::from_integer(BigInt::from(1));
    for k in 0..=order {
        if k > 0 {
            if Ring::is_zero(s) {
                out.push(DiffPoly::zero());
                continue;
            }
            d = d.dx();
            c = c * s / Q::from_integer(BigInt::from(k));
        }
        out.push(d.scale(&c));
    }
    EpsSeries::from_coeffs(out)
}

/// Applies the shift `Λ^s` to an ε-series of differential polynomials.
pub fn shift_series<S: Field>(f: &EpsDiff<S>, s: &Q) -> EpsDiff<S> {
    let order = f.order();
    let mut acc = vec![DiffPoly::<S>::zero(); order + 1];
    for (e, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sh = shift_expand(c, s, order - e);
        for (k, t) in sh.coeffs().iter().enumerate() {
            acc[e + k] = acc[e + k].plus(t);
        }
    }
    let mut out = EpsSeries::from_coeffs(acc);
    if f.parity() == crate::algebra::Parity::Even && Ring::is_zero(s) {
        out = out.assert_even().expect("even input");
    }
    out
}

/// Total x-derivative of every ε-coefficient.
pub fn dx_series<S: Field>(f: &EpsDiff<S>) -> EpsDiff<S> {
    f.map(|c| c.dx())
}

/// Result of grading an ε-series under `deg ∂^k u = k`, `deg ε = −1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grade {
    Zero,
    Homogeneous(i64),
    /// Distinct degrees found, with one `(ε-power, jets)` witness each.
    Mixed(Vec<(i64, usize, Vec<u32>)>),
}

pub fn grade_deg<S: Field>(f: &EpsDiff<S>) -> Grade {
    let mut seen: BTreeMap<i64, (usize, Vec<u32>)> = BTreeMap::new();
    for (e, c) in f.coeffs().iter().enumerate() {
        for (k, _) in c.terms() {
            let d = k.weight() as i64 - e as i64;
            seen.entry(d).or_insert_with(|| (e, k.jets.clone()));
        }
    }
    match seen.len() {
        0 => Grade::Zero,
        1 => Grade::Homogeneous(*seen.keys().next().expect("one")),
        _ => Grade::Mixed(seen.into_iter().map(|(d, (e, j))| (d, e, j)).collect()),
    }
}

/// Renders an ε-series as `ε^e: <poly>` lines, skipping zero orders.
pub fn render_series<S: Field + fmt::Display>(f: &EpsDiff<S>) -> String {
    let mut lines = Vec::new();
    for (e, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            lines.push(format!("eps^{e}: {}", c.render()));
        }
    }
    if lines.is_empty() {
        lines.push("0".into());
    }
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};
    use proptest::prelude::*;

    type D = DiffPoly<Q>;

    fn u(k: u32) -> D {
        D::jet(k)
    }

    #[test]
    fn dx_examples() {
        let e = D::exp_u(qi(1));
        assert_eq!(e.dx(), u(1).times(&e));
        assert_eq!(u(1).times(&u(2)).dx(), u(2).pow(2).plus(&u(1).times(&u(3))));
    }

    #[test]
    fn partial_examples() {
        assert_eq!(u(1).pow(2).partial_jet(1), u(1).scale(&qi(2)));
        let f = D::exp_u(qi(2)).times(&u(2));
        assert_eq!(f.partial_jet(0), f.scale(&qi(2)));
    }

    #[test]
    fn bell_polynomials() {
        assert_eq!(bell::<Q>(2), u(2).plus(&u(1).pow(2)));
        let b3 = u(3).plus(&u(1).times(&u(2)).scale(&qi(3))).plus(&u(1).pow(3));
        assert_eq!(bell::<Q>(3), b3);
    }

    #[test]
    fn grading() {
        let f = EpsSeries::from_coeffs(vec![D::zero(), D::zero(), u(2)]);
        assert_eq!(grade_deg(&f), Grade::Homogeneous(0));
        let g = EpsSeries::from_coeffs(vec![u(1), u(1)]);
        assert!(matches!(grade_deg(&g), Grade::Mixed(v) if v.len() == 2));
    }

    #[test]
    fn substitution() {
        let f = u(2);
        let v = f
            .substitute::<Q>(&|k| (k == 2).then(|| q(-1, 2)), &|_| Ok(qi(1)))
            .unwrap();
        assert_eq!(v, q(-1, 2));
        assert_eq!(
            u(3).substitute::<Q>(&|k| (k == 2).then(|| qi(1)), &|_| Ok(qi(1))),
            Err(Error::MissingJet(3))
        );
    }

    #[test]
    fn rendering_is_canonical() {
        let f = u(1).pow(2).scale(&q(1, 24)).plus(&D::exp_u(qi(2)).times(&u(2)));
        assert_eq!(f.render(), "(1/24)*e^{0u}*u1^2 + (1)*e^{2u}*u2");
    }

    #[test]
    fn shift_roundtrip() {
        let f = D::exp_u(q(1, 2)).times(&u(1));
        let s = EpsSeries::constant(f.clone(), 5);
        let there = shift_series(&s, &q(3, 2));
        let back = shift_series(&there, &q(-3, 2));
        assert_eq!(back, s);
    }

    fn small_diff() -> impl Strategy<Value = D> {
        prop::collection::vec((-2i64..3, prop::collection::vec(1u32..4, 0..3), -3i64..4), 1..4).prop_map(
            |ts| {
                let mut f = D::zero();
                for (kap, jets, c) in ts {
                    f = f.plus(&D::monomial(qi(c), JetKey::new(qi(kap), jets)));
                }
                f
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn dx_is_derivation(f in small_diff(), g in small_diff()) {
            prop_assert_eq!(f.times(&g).dx(), f.dx().times(&g).plus(&f.times(&g.dx())));
        }

        #[test]
        fn jet_commutator(f in small_diff(), k in 1u32..4) {
            // [∂/∂u^{(k)}, d/dx] = ∂/∂u^{(k-1)}
            let lhs = f.dx().partial_jet(k).minus(&f.partial_jet(k).dx());
            prop_assert_eq!(lhs, f.partial_jet(k - 1));
        }

        #[test]
        fn grades_add(a in prop::collection::vec(1u32..4, 0..3), b in prop::collection::vec(1u32..4, 0..3)) {
            let fa = D::monomial(qi(1), JetKey::plain(a.clone()));
            let fb = D::monomial(qi(1), JetKey::plain(b.clone()));
            let w: u32 = a.iter().sum::<u32>() + b.iter().sum::<u32>();
            prop_assert_eq!(fa.times(&fb).weights().into_iter().collect::<Vec<_>>(), vec![w]);
        }

        #[test]
        fn substitution_commutes_with_dx(f in small_diff(), p in prop::collection::vec(-3i64..4, 1..5)) {
            use crate::algebra::LaurentX;
            // κ = 0 part only, with u(x) a polynomial
            let f = f.map_coeffs(|c| c.clone());
            let f = {
                let mut g = D::zero();
                for (k, c) in f.terms() {
                    if Ring::is_zero(&k.kappa) {
                        g = g.plus(&D::monomial(c.clone(), k.clone()));
                    }
                }
                g
            };
            let mut uu = LaurentX::<Q>::zero();
            for (i, c) in p.iter().enumerate() {
                uu = uu.plus(&LaurentX::monomial(qi(*c), i as i64));
            }
            let jet = |k: u32| {
                let mut d = uu.clone();
                for _ in 0..k { d = d.derivative(); }
                Some(d)
            };
            let no_exp = |_: &Q| Err(Error::Internal("no exponentials".into()));
            let lhs = f.dx().substitute(&jet, &no_exp).unwrap();
            let rhs = f.substitute(&jet, &no_exp).unwrap().derivative();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
