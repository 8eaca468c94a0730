use super::{Algebra, Field, Ring, Q};
use std::collections::BTreeMap;

/// Laurent polynomial in `x` with coefficients in a field.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentX<S> {
    terms: BTreeMap<i64, S>,
}

impl<S: Field> LaurentX<S> {
    pub fn monomial(c: S, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentX { terms }
    }

    pub fn x_pow(k: i64) -> Self {
        Self::monomial(S::one(), k)
    }

    pub fn coeff(&self, k: i64) -> S {
        self.terms.get(&k).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &S)> {
        self.terms.iter()
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentX {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `d/dx`.
    pub fn derivative(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if *e != 0 {
                terms.insert(e - 1, c.scale(&super::qi(*e)));
            }
        }
        LaurentX { terms }
    }

    /// `Some((k, c))` when the element is the single term `c x^k`.
    pub fn as_monomial(&self) -> Option<(i64, S)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c.clone()))
        } else {
            None
        }
    }

    fn insert_add(terms: &mut BTreeMap<i64, S>, k: i64, c: S) {
        let v = match terms.remove(&k) {
            Some(old) => old.plus(&c),
            None => c,
        };
        if !v.is_zero() {
            terms.insert(k, v);
        }
    }
}

impl<S: Field> Ring for LaurentX<S> {
    fn zero() -> Self {
        LaurentX {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        Self::monomial(S::one(), 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            Self::insert_add(&mut terms, *k, c.clone());
        }
        LaurentX { terms }
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                Self::insert_add(&mut terms, a + b, ca.times(cb));
            }
        }
        LaurentX { terms }
    }
    fn negate(&self) -> Self {
        LaurentX {
            terms: self.terms.iter().map(|(k, c)| (*k, c.negate())).collect(),
        }
    }
    fn scale(&self, c: &Q) -> Self {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            let w = v.scale(c);
            if !w.is_zero() {
                terms.insert(*k, w);
            }
        }
        LaurentX { terms }
    }
}

impl<S: Field> Algebra<S> for LaurentX<S> {
    fn from_scalar(s: &S) -> Self {
        Self::monomial(s.clone(), 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};

    #[test]
    fn laurent_products() {
        let a = LaurentX::monomial(qi(2), -3).plus(&LaurentX::one());
        let b = LaurentX::monomial(q(1, 2), 3);
        let p = a.times(&b);
        assert_eq!(p.coeff(0), qi(1));
        assert_eq!(p.coeff(3), q(1, 2));
        assert_eq!(p.derivative().coeff(2), q(3, 2));
        assert!(a.minus(&a).is_zero());
    }
}
