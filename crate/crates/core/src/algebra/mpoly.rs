use super::{fmt_q, qi, Field, Ring, Q};
use num_traits::{One, Signed};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Number of polynomial variables. The order is fixed: `m, n, λ, x`.
pub const NVARS: usize = 4;
pub const VAR_NAMES: [&str; NVARS] = ["m", "n", "lambda", "x"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    M = 0,
    N = 1,
    Lambda = 2,
    X = 3,
}

impl Var {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        match i {
            0 => Var::M,
            1 => Var::N,
            2 => Var::Lambda,
            _ => Var::X,
        }
    }
}

/// Exponent vector under graded lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Exp(pub [u32; NVARS]);

impl Exp {
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn add(&self, o: &Exp) -> Exp {
        let mut e = [0; NVARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i] + o.0[i];
        }
        Exp(e)
    }

    fn checked_sub(&self, o: &Exp) -> Option<Exp> {
        let mut e = [0; NVARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i].checked_sub(o.0[i])?;
        }
        Some(Exp(e))
    }
}

impl Ord for Exp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over ℚ in the variables `m, n, λ, x`.
///
/// No zero coefficient is ever stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Exp, Q>,
}

impl MPoly {
    pub fn constant(c: Q) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exp::default(), c);
        }
        MPoly { terms }
    }

    pub fn var(v: Var) -> MPoly {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        MPoly::monomial(qi(1), Exp(e))
    }

    pub fn monomial(c: Q, e: Exp) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Q::zero))
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Exp, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Q {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e.0[v.index()]).max().unwrap_or(0)
    }

    fn insert_add(&mut self, e: Exp, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn mul_term(&self, e: &Exp, c: &Q) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(k, v)| (k.add(e), v * c)).collect(),
        }
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn exact_div(&self, other: &MPoly) -> Option<MPoly> {
        let (le, lc) = other.leading()?;
        if other.terms.len() == 1 {
            let mut out = BTreeMap::new();
            for (e, c) in &self.terms {
                out.insert(e.checked_sub(le)?, c / lc);
            }
            return Some(MPoly { terms: out });
        }
        let mut rem = self.clone();
        let mut quot = MPoly::default();
        while let Some((re, rc)) = rem.leading() {
            let e = re.checked_sub(le)?;
            let c = rc / lc;
            rem = rem.minus(&other.mul_term(&e, &c));
            quot.insert_add(e, c);
        }
        Some(quot)
    }

    fn to_univariate(&self, v: usize) -> Vec<MPoly> {
        let deg = self.terms.keys().map(|e| e.0[v]).max().unwrap_or(0) as usize;
        let mut out = vec![MPoly::default(); deg + 1];
        for (e, c) in &self.terms {
            let mut rest = *e;
            let d = rest.0[v] as usize;
            rest.0[v] = 0;
            out[d].terms.insert(rest, c.clone());
        }
        out
    }

    fn from_univariate(coeffs: &[MPoly], v: usize) -> MPoly {
        let mut out = MPoly::default();
        for (d, c) in coeffs.iter().enumerate() {
            for (e, q) in &c.terms {
                let mut k = *e;
                k.0[v] += d as u32;
                out.terms.insert(k, q.clone());
            }
        }
        out
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, point: &[Q; NVARS]) -> Q {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &d) in e.0.iter().enumerate() {
                if d > 0 {
                    t *= Ring::pow(&point[i], d);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces variable `v` by the constant `val`.
    pub fn substitute(&self, v: Var, val: &Q) -> MPoly {
        let mut out = MPoly::default();
        for (e, c) in &self.terms {
            let mut k = *e;
            let d = k.0[v.index()];
            k.0[v.index()] = 0;
            out.insert_add(k, c * Ring::pow(val, d));
        }
        out
    }

    fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Clears denominators: returns `(d, p)` with `p = d * self` having
    /// integer coefficients whose gcd is 1, `d > 0`.
    pub fn integer_normalization(&self) -> (Q, MPoly) {
        let d = integer_scale(self.terms.values());
        (d.clone(), self.scale(&d))
    }
}

/// Positive `d` such that `d * c` are coprime integers for all `c`.
fn integer_scale<'a>(coeffs: impl Iterator<Item = &'a Q> + Clone) -> Q {
    use num_integer::Integer;
    let mut lcm = num_bigint::BigInt::one();
    let mut g = num_bigint::BigInt::from(0);
    for c in coeffs.clone() {
        lcm = lcm.lcm(c.denom());
    }
    for c in coeffs {
        g = g.gcd(&(c.numer() * (&lcm / c.denom())));
    }
    if num_traits::Zero::is_zero(&g) {
        <Q as Ring>::one()
    } else {
        Q::new(lcm, g)
    }
}

fn univariate_content(coeffs: &[MPoly]) -> MPoly {
    let mut g = MPoly::default();
    for c in coeffs {
        g = gcd(&g, c);
        if g.is_constant() && !g.is_empty() {
            return MPoly::constant(qi(1));
        }
    }
    g
}

fn trim(v: &mut Vec<MPoly>) {
    while v.last().map_or(false, |c| c.is_empty()) {
        v.pop();
    }
}

/// `lc(b)^(deg a - deg b + 1) · a mod b`, with the exact exponent even when
/// a reduction step cancels more than one degree.
fn pseudo_rem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let mut a = a.to_vec();
    trim(&mut a);
    let db = b.len() - 1;
    let lb = &b[db];
    if a.len() <= db {
        return a;
    }
    let mut steps_left = a.len() - db;
    while !a.is_empty() && a.len() > db {
        let da = a.len() - 1;
        let la = a[da].clone();
        let shift = da - db;
        let mut next: Vec<MPoly> = a.iter().map(|c| c.times(lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].minus(&bc.times(&la));
        }
        trim(&mut next);
        a = next;
        steps_left -= 1;
    }
    if steps_left > 0 && !a.is_empty() {
        let f = lb.pow(steps_left as u32);
        a = a.iter().map(|c| c.times(&f)).collect();
    }
    a
}

/// Divides out the polynomial content, then rescales to coprime integer
/// coefficients so that pseudo-remainders stay small.
fn primitive(coeffs: &[MPoly]) -> Vec<MPoly> {
    let c = univariate_content(coeffs);
    let reduced: Vec<MPoly> = if c.is_constant() {
        coeffs.to_vec()
    } else {
        coeffs
            .iter()
            .map(|x| x.exact_div(&c).expect("content divides coefficients"))
            .collect()
    };
    let d = integer_scale(reduced.iter().flat_map(|x| x.terms.values()));
    reduced.iter().map(|x| x.scale(&d)).collect()
}

fn monomial_gcd(mono: &MPoly, other: &MPoly) -> MPoly {
    let (me, _) = mono.leading().unwrap();
    let mut e = me.0;
    for k in other.terms.keys() {
        for i in 0..NVARS {
            e[i] = e[i].min(k.0[i]);
        }
    }
    MPoly::monomial(qi(1), Exp(e))
}

/// Greatest common divisor over ℚ, normalized to be monic (zero if both
/// inputs are zero).
///
/// Recursive: content in a main variable plus a subresultant remainder
/// sequence on the primitive parts.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_empty() {
        return b.monic();
    }
    if b.is_empty() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::constant(qi(1));
    }
    if a.is_monomial() {
        return monomial_gcd(a, b);
    }
    if b.is_monomial() {
        return monomial_gcd(b, a);
    }
    if a == b {
        return a.monic();
    }
    if a.exact_div(b).is_some() {
        return b.monic();
    }
    if b.exact_div(a).is_some() {
        return a.monic();
    }
    let da: Vec<u32> = (0..NVARS).map(|i| a.degree_in(Var::from_index(i))).collect();
    let db: Vec<u32> = (0..NVARS).map(|i| b.degree_in(Var::from_index(i))).collect();
    // a variable present in only one input cannot divide the gcd
    for v in 0..NVARS {
        if da[v] > 0 && db[v] == 0 {
            return gcd(&univariate_content(&a.to_univariate(v)), b);
        }
        if db[v] > 0 && da[v] == 0 {
            return gcd(a, &univariate_content(&b.to_univariate(v)));
        }
    }
    let v = (0..NVARS)
        .filter(|&i| da[i] > 0)
        .min_by_key(|&i| da[i] + db[i])
        .expect("non-constant inputs");
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let cont = gcd(&univariate_content(&ua), &univariate_content(&ub));
    let mut pa = primitive(&ua);
    let mut pb = primitive(&ub);
    trim(&mut pa);
    trim(&mut pb);
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    let g = subresultant_last(pa, pb);
    MPoly::from_univariate(&g, v).times(&cont).monic()
}

/// Primitive part of the last nonzero subresultant; `[1]` when the inputs
/// are coprime in the main variable.
fn subresultant_last(mut a: Vec<MPoly>, mut b: Vec<MPoly>) -> Vec<MPoly> {
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        if b.len() <= 1 {
            return if b.is_empty() {
                primitive(&a)
            } else {
                vec![MPoly::one()]
            };
        }
        let d = (a.len() - b.len()) as u32;
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return primitive(&b);
        }
        let div = g.times(&h.pow(d));
        let r: Vec<MPoly> = r
            .iter()
            .map(|c| c.exact_div(&div).expect("subresultant division is exact"))
            .collect();
        a = b;
        b = r;
        g = a.last().expect("nonzero").clone();
        h = match d {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(d)
                .exact_div(&h.pow(d - 1))
                .expect("subresultant division is exact"),
        };
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly::default()
    }
    fn one() -> Self {
        MPoly::constant(qi(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, -c);
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = MPoly::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert_add(ea.add(eb), ca * cb);
            }
        }
        out
    }
    fn negate(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
    fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return MPoly::default();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }
    fn from_rational(c: &Q) -> Self {
        MPoly::constant(c.clone())
    }
}

fn fmt_monomial(e: &Exp) -> String {
    let mut parts = Vec::new();
    for (i, &d) in e.0.iter().enumerate() {
        match d {
            0 => {}
            1 => parts.push(VAR_NAMES[i].to_string()),
            _ => parts.push(format!("{}^{}", VAR_NAMES[i], d)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            let mono = fmt_monomial(e);
            let body = if mono.is_empty() {
                fmt_q(&abs)
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_q(&abs), mono)
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// MPoly is not a field, but constants are invertible; used by the solver
// when every entry is constant.
impl MPoly {
    pub fn inv_constant(&self) -> Option<MPoly> {
        self.constant_value().and_then(|c| c.inv()).map(MPoly::constant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m() -> MPoly {
        MPoly::var(Var::M)
    }
    fn n() -> MPoly {
        MPoly::var(Var::N)
    }

    #[test]
    fn display_is_grlex_descending() {
        let p = m().times(&m()).plus(&n().scale(&qi(-3))).plus(&MPoly::one());
        assert_eq!(p.to_string(), "m^2 - 3*n + 1");
    }

    #[test]
    fn exact_division() {
        let a = m().plus(&n());
        let b = m().minus(&n());
        let p = a.times(&b);
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&m()), None);
    }

    #[test]
    fn gcd_finds_common_factor() {
        let h = m().plus(&n());
        let a = h.times(&m()).times(&m().minus(&MPoly::one()));
        let b = h.times(&n().plus(&MPoly::one())).times(&h);
        let g = gcd(&a, &b);
        assert_eq!(g, h.monic());
        let lam = MPoly::var(Var::Lambda);
        let c = lam.times(&h).plus(&m());
        assert_eq!(gcd(&c.times(&a), &c.times(&b)), c.times(&h).monic());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = m().times(&m()).plus(&n());
        let b = m().plus(&n().times(&n()));
        assert_eq!(gcd(&a, &b), MPoly::one());
    }
}
