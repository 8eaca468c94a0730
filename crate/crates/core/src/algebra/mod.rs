//! Exact arithmetic: rationals, multivariate polynomials and rational
//! functions over ℚ, truncated ε-series, combinatorial numbers and an exact
//! linear solver.

mod combinat;
mod laurent;
mod linsolve;
mod mpoly;
mod ratfunc;
mod series;

pub use combinat::{bernoulli, binomial_int, factorial, gen_binomial, partitions};
pub use laurent::LaurentX;
pub use linsolve::{solve_exact, solve_field, solve_rational_rhs, LinearSystem, Solution};
pub use mpoly::{MPoly, Var, NVARS, VAR_NAMES};
pub use ratfunc::RatFunc;
pub use series::{EpsSeries, Parity};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Exact rational number.
pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Commutative ring with unit, and a ℚ-algebra.
///
/// Methods are named to stay clear of `std::ops` so that generic code reads
/// the same for every coefficient type.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplication by a rational constant.
    fn scale(&self, c: &Q) -> Self;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    fn from_rational(c: &Q) -> Self {
        Self::one().scale(c)
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.times(&i))
    }
}

/// A ring `R` receiving scalars from the field `S`.
pub trait Algebra<S: Field>: Ring {
    fn from_scalar(s: &S) -> Self;
}

impl Ring for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Q) -> Self {
        self * c
    }
    fn from_rational(c: &Q) -> Self {
        c.clone()
    }
}

impl Field for Q {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Algebra<Q> for Q {
    fn from_scalar(s: &Q) -> Self {
        s.clone()
    }
}

/// Renders a rational as `a` or `a/b`.
pub fn fmt_q(c: &Q) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}
