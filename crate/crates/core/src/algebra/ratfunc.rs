use super::mpoly::gcd;
use super::{qi, Algebra, Field, MPoly, Ring, Var, NVARS, Q};
use std::fmt;

/// Reduced quotient of two polynomials in `m, n, λ, x`.
///
/// Invariants: `gcd(num, den) = 1`, `den` is monic under grlex, and zero is
/// `0/1`. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Option<RatFunc> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalized(num, den))
    }

    pub fn from_poly(p: MPoly) -> RatFunc {
        RatFunc {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn var(v: Var) -> RatFunc {
        Self::from_poly(MPoly::var(v))
    }

    pub fn constant(c: Q) -> RatFunc {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.den.is_constant() {
            self.num.constant_value()
        } else {
            None
        }
    }

    fn normalized(num: MPoly, den: MPoly) -> RatFunc {
        if num.is_zero() {
            return RatFunc {
                num,
                den: MPoly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        let inv = lc.inv().expect("nonzero denominator");
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// For already coprime parts.
    fn monic_den(num: MPoly, den: MPoly) -> RatFunc {
        let inv = den.leading_coeff().inv().expect("nonzero denominator");
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// Re-normalizes; idempotent on valid values.
    pub fn normalize(&self) -> RatFunc {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn eval(&self, point: &[Q; NVARS]) -> Option<Q> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    pub fn substitute(&self, v: Var, val: &Q) -> Option<RatFunc> {
        RatFunc::new(self.num.substitute(v, val), self.den.substitute(v, val))
    }

    /// Evaluates at numeric `m, n` (other variables must be absent).
    pub fn eval_mn(&self, m: i64, n: i64) -> Option<Q> {
        self.eval(&[qi(m), qi(n), qi(0), qi(0)])
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(MPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            return Self::normalized(self.num.plus(&other.num), self.den.clone());
        }
        // Henrici: only the gcd of the denominators can cancel
        let g = gcd(&self.den, &other.den);
        if g.is_constant() {
            return Self::monic_den(
                self.num.times(&other.den).plus(&other.num.times(&self.den)),
                self.den.times(&other.den),
            );
        }
        let d1 = self.den.exact_div(&g).expect("gcd divides");
        let d2 = other.den.exact_div(&g).expect("gcd divides");
        let t = self.num.times(&d2).plus(&other.num.times(&d1));
        if t.is_zero() {
            return Self::zero();
        }
        let g2 = gcd(&t, &g);
        Self::monic_den(
            t.exact_div(&g2).expect("gcd divides"),
            d1.times(&other.den.exact_div(&g2).expect("gcd divides")),
        )
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_constant() && other.den.is_constant() {
            return RatFunc {
                num: self.num.times(&other.num),
                den: MPoly::one(),
            };
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let div = |p: &MPoly, g: &MPoly| p.exact_div(g).expect("gcd divides");
        Self::monic_den(
            div(&self.num, &g1).times(&div(&other.num, &g2)),
            div(&self.den, &g2).times(&div(&other.den, &g1)),
        )
    }
    fn negate(&self) -> Self {
        RatFunc {
            num: self.num.negate(),
            den: self.den.clone(),
        }
    }
    fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
    fn from_rational(c: &Q) -> Self {
        Self::constant(c.clone())
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }

    fn div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.den.is_constant() && other.den.is_constant() {
            if let Some(q) = self.num.exact_div(&other.num) {
                return Some(RatFunc::from_poly(q));
            }
        }
        Some(Self::normalized(
            self.num.times(&other.den),
            self.den.times(&other.num),
        ))
    }
}

impl Algebra<RatFunc> for RatFunc {
    fn from_scalar(s: &RatFunc) -> Self {
        s.clone()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else if self.num.len() > 1 {
            write!(f, "({})/({})", self.num, self.den)
        } else {
            write!(f, "{}/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
