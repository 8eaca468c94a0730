use super::{qi, Ring, Q};
use crate::error::{Error, Result};
use num_bigint::BigInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Any,
    Even,
}

/// Power series in ε truncated after `ε^order`.
///
/// Entries beyond the order are unknown, not zero; binary operations take
/// the smaller order. `Parity::Even` promises every odd entry is zero.
#[derive(Clone, Debug)]
pub struct EpsSeries<R> {
    coeffs: Vec<R>,
    parity: Parity,
}

/// The parity hint does not take part in equality.
impl<R: Ring> PartialEq for EpsSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> EpsSeries<R> {
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least the ε^0 entry");
        EpsSeries {
            coeffs,
            parity: Parity::Any,
        }
    }

    pub fn zero(order: usize) -> Self {
        EpsSeries {
            coeffs: vec![R::zero(); order + 1],
            parity: Parity::Even,
        }
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    /// `c ε^power`, known through `order`.
    pub fn monomial(c: R, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s.parity = if power % 2 == 0 { Parity::Even } else { Parity::Any };
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn get(&self, k: usize) -> Option<&R> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn set(&mut self, k: usize, c: R) {
        self.coeffs[k] = c;
        if k % 2 == 1 {
            self.parity = Parity::Any;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        EpsSeries {
            coeffs: self.coeffs[..=keep].to_vec(),
            parity: self.parity,
        }
    }

    /// Pads with zeros; only valid when the entries are known to vanish
    /// (exact finite expansions).
    pub fn extend_exact(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        while c.len() < order + 1 {
            c.push(R::zero());
        }
        EpsSeries {
            coeffs: c,
            parity: self.parity,
        }
    }

    fn meet(a: Parity, b: Parity) -> Parity {
        if a == Parity::Even && b == Parity::Even {
            Parity::Even
        } else {
            Parity::Any
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let ord = self.order().min(o.order());
        EpsSeries {
            coeffs: (0..=ord).map(|k| self.coeffs[k].plus(&o.coeffs[k])).collect(),
            parity: Self::meet(self.parity, o.parity),
        }
    }

    pub fn minus(&self, o: &Self) -> Self {
        let ord = self.order().min(o.order());
        EpsSeries {
            coeffs: (0..=ord).map(|k| self.coeffs[k].minus(&o.coeffs[k])).collect(),
            parity: Self::meet(self.parity, o.parity),
        }
    }

    pub fn negate(&self) -> Self {
        self.map(|c| c.negate())
    }

    pub fn times(&self, o: &Self) -> Self {
        let ord = self.order().min(o.order());
        let mut coeffs = vec![R::zero(); ord + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(ord + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(ord + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        EpsSeries {
            coeffs,
            parity: Self::meet(self.parity, o.parity),
        }
    }

    /// Multiplies every entry by a ring element.
    pub fn times_elem(&self, r: &R) -> Self {
        EpsSeries {
            coeffs: self.coeffs.iter().map(|c| c.times(r)).collect(),
            parity: self.parity,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn map<F: Fn(&R) -> R>(&self, f: F) -> Self {
        EpsSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
            parity: self.parity,
        }
    }

    pub fn map_into<T: Ring, F: Fn(&R) -> T>(&self, f: F) -> EpsSeries<T> {
        EpsSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
            parity: self.parity,
        }
    }

    /// Multiplies by `ε^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        EpsSeries {
            coeffs,
            parity: if k % 2 == 0 { self.parity } else { Parity::Any },
        }
    }

    /// Divides by `ε^k`; the first `k` entries must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::EpsDivision(k));
        }
        Ok(EpsSeries {
            coeffs: self.coeffs[k..].to_vec(),
            parity: if k % 2 == 0 { self.parity } else { Parity::Any },
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }

    /// `exp(s)` for a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonNilpotentExponent);
        }
        let ord = self.order();
        let mut e = vec![R::zero(); ord + 1];
        e[0] = R::one();
        // k e_k = sum_{j=1}^{k} j s_j e_{k-j}
        for k in 1..=ord {
            let mut acc = R::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() || e[k - j].is_zero() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[j].times(&e[k - j]).scale(&qi(j as i64)));
            }
            e[k] = acc.scale(&Q::new(BigInt::from(1), BigInt::from(k)));
        }
        Ok(EpsSeries {
            coeffs: e,
            parity: self.parity,
        })
    }

    /// `log(s)` for a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != R::one() {
            return Err(Error::LogOfNonUnit);
        }
        let ord = self.order();
        let mut l = vec![R::zero(); ord + 1];
        // k s_k = sum_{j=1}^{k} j l_j s_{k-j}
        for k in 1..=ord {
            let mut acc = self.coeffs[k].scale(&qi(k as i64));
            for j in 1..k {
                acc = acc.minus(&l[j].times(&self.coeffs[k - j]).scale(&qi(j as i64)));
            }
            l[k] = acc.scale(&Q::new(BigInt::from(1), BigInt::from(k)));
        }
        Ok(EpsSeries {
            coeffs: l,
            parity: self.parity,
        })
    }

    /// Multiplicative inverse, given an inverse of the constant term.
    pub fn inverse_with(&self, inv0: &R) -> Result<Self> {
        if self.coeffs[0].times(inv0) != R::one() {
            return Err(Error::NonInvertibleSeries);
        }
        let ord = self.order();
        let mut y = vec![R::zero(); ord + 1];
        y[0] = inv0.clone();
        for k in 1..=ord {
            let mut acc = R::zero();
            for j in 1..=k {
                acc = acc.plus(&self.coeffs[j].times(&y[k - j]));
            }
            y[k] = acc.times(inv0).negate();
        }
        Ok(EpsSeries {
            coeffs: y,
            parity: self.parity,
        })
    }

    /// First odd index carrying a nonzero entry.
    pub fn first_odd_nonzero(&self) -> Option<usize> {
        (1..=self.order())
            .step_by(2)
            .find(|&k| !self.coeffs[k].is_zero())
    }

    /// Checks the odd entries and records the `Even` hint.
    pub fn assert_even(&self) -> Result<Self> {
        match self.first_odd_nonzero() {
            Some(k) => Err(Error::EvennessViolated(k)),
            None => Ok(EpsSeries {
                coeffs: self.coeffs.clone(),
                parity: Parity::Even,
            }),
        }
    }
}
