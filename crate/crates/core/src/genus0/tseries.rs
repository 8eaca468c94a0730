//! Truncated power series in finitely many times `T_i`, with coefficients
//! Laurent polynomials in `w = x^{1/N}`.

use crate::algebra::{gen_binomial, qi, LaurentX, Ring, Q};
use std::collections::BTreeMap;

type Coeff = LaurentX<Q>;

#[derive(Clone, Debug, PartialEq)]
pub struct TSeries {
    nvars: usize,
    /// Terms of total degree above `deg` are unknown.
    deg: u32,
    terms: BTreeMap<Vec<u32>, Coeff>,
}

fn total(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl TSeries {
    pub fn zero(nvars: usize, deg: u32) -> Self {
        TSeries {
            nvars,
            deg,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, deg: u32, c: Coeff) -> Self {
        let mut s = Self::zero(nvars, deg);
        s.add_term(vec![0; nvars], c);
        s
    }

    pub fn scalar(nvars: usize, deg: u32, c: Q) -> Self {
        Self::constant(nvars, deg, LaurentX::monomial(c, 0))
    }

    /// `T_i`.
    pub fn var(nvars: usize, deg: u32, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut s = Self::zero(nvars, deg);
        if deg >= 1 {
            s.add_term(e, LaurentX::monomial(qi(1), 0));
        }
        s
    }

    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Coeff)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Coeff) {
        if total(&e) > self.deg || c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&e) {
            Some(old) => old.plus(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn truncate(&self, deg: u32) -> Self {
        let deg = deg.min(self.deg);
        TSeries {
            nvars: self.nvars,
            deg,
            terms: self.terms.iter().filter(|(e, _)| total(e) <= deg).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut s = self.truncate(o.deg);
        for (e, c) in o.terms.iter() {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.scale(&qi(-1)))
    }

    pub fn times(&self, o: &Self) -> Self {
        let mut s = Self::zero(self.nvars, self.deg.min(o.deg));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if total(&e) <= s.deg {
                    s.add_term(e, c1.times(c2));
                }
            }
        }
        s
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map(|v| v.scale(c))
    }

    pub fn times_coeff(&self, c: &Coeff) -> Self {
        self.map(|v| v.times(c))
    }

    fn map(&self, f: impl Fn(&Coeff) -> Coeff) -> Self {
        let mut s = Self::zero(self.nvars, self.deg);
        for (e, c) in &self.terms {
            s.add_term(e.clone(), f(c));
        }
        s
    }

    /// `∂/∂T_i`; one degree of precision is lost.
    pub fn dt(&self, i: usize) -> Self {
        let mut s = Self::zero(self.nvars, self.deg.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                s.add_term(e2, c.scale(&qi(e[i] as i64)));
            }
        }
        s
    }

    /// `∂/∂x` with `x = w^N`: `w^k ↦ (k/N) w^{k−N}`.
    pub fn dx(&self, big_n: i64) -> Self {
        let inv = Q::new(1.into(), big_n.into());
        self.map(|c| c.derivative().shift(1 - big_n).scale(&inv))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest-degree nonzero monomial, rendered for reports.
    pub fn first_nonzero(&self) -> Option<String> {
        self.terms
            .iter()
            .min_by_key(|(e, _)| (total(e), (*e).clone()))
            .map(|(e, c)| {
                let parts: Vec<String> = c.terms().map(|(k, v)| format!("{}·w^{k}", crate::algebra::fmt_q(v))).collect();
                format!("T^{e:?}: {}", parts.join(" + "))
            })
    }

    fn has_constant_term(&self) -> bool {
        self.terms.keys().any(|e| total(e) == 0)
    }

    /// `(1 + self)^a` for a series without constant term.
    pub fn one_plus_pow(&self, a: &Q) -> Self {
        assert!(!self.has_constant_term(), "argument must vanish at T = 0");
        let mut acc = Self::scalar(self.nvars, self.deg, qi(1));
        let mut pw = acc.clone();
        for k in 1..=self.deg {
            pw = pw.times(self);
            acc = acc.plus(&pw.scale(&gen_binomial(a, k)));
        }
        acc
    }

    /// `log(1 + self)` for a series without constant term.
    pub fn log1p(&self) -> Self {
        assert!(!self.has_constant_term(), "argument must vanish at T = 0");
        let mut acc = Self::zero(self.nvars, self.deg);
        let mut pw = Self::scalar(self.nvars, self.deg, qi(1));
        for k in 1..=self.deg {
            pw = pw.times(self);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.plus(&pw.scale(&Q::new(sign.into(), (k as i64).into())));
        }
        acc
    }
}

/// `a + b log x` with `a, b` T-series.
#[derive(Clone, Debug, PartialEq)]
pub struct WithLog {
    pub a: TSeries,
    pub b: TSeries,
}

impl WithLog {
    pub fn plain(a: TSeries) -> Self {
        let b = TSeries::zero(a.nvars, a.deg);
        WithLog { a, b }
    }

    pub fn plus(&self, o: &Self) -> Self {
        WithLog {
            a: self.a.plus(&o.a),
            b: self.b.plus(&o.b),
        }
    }

    pub fn minus(&self, o: &Self) -> Self {
        WithLog {
            a: self.a.minus(&o.a),
            b: self.b.minus(&o.b),
        }
    }

    pub fn times(&self, s: &TSeries) -> Self {
        WithLog {
            a: self.a.times(s),
            b: self.b.times(s),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        WithLog {
            a: self.a.scale(c),
            b: self.b.scale(c),
        }
    }

    pub fn dt(&self, i: usize) -> Self {
        WithLog {
            a: self.a.dt(i),
            b: self.b.dt(i),
        }
    }

    /// `∂_x(a + b log x) = a' + b/x + b' log x`.
    pub fn dx(&self, big_n: i64) -> Self {
        let inv_x = LaurentX::monomial(qi(1), -big_n);
        WithLog {
            a: self.a.dx(big_n).plus(&self.b.times_coeff(&inv_x)),
            b: self.b.dx(big_n),
        }
    }

    pub fn truncate(&self, deg: u32) -> Self {
        WithLog {
            a: self.a.truncate(deg),
            b: self.b.truncate(deg),
        }
    }

    pub fn deg(&self) -> u32 {
        self.a.deg.min(self.b.deg)
    }

    pub fn first_nonzero(&self) -> Option<String> {
        self.a
            .first_nonzero()
            .or_else(|| self.b.first_nonzero().map(|s| format!("log x · {s}")))
    }
}
