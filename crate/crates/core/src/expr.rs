//! Parser for rational-function expressions in `m`, `n`, `h = m + n`,
//! `lambda` (or `λ`) and `x`, and for λ selectors such as `2/m`.
//!
//! Grammar (all multiplication explicit):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ('-')? integer)?
//! atom  := integer | name | '(' expr ')'
//! ```

use crate::algebra::{Field, MPoly, RatFunc, Ring, Var, Q};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek() {
                if !d.is_alphanumeric() && d != '_' {
                    break;
                }
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Name(s)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            it.next();
        } else {
            return Err(Error::Parse {
                pos,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    depth: usize,
    /// Names are `s1`, `s3` (σ₁, σ₃) instead of `m, n, h, lambda, x`.
    sigma: bool,
}

const MAX_DEPTH: usize = 64;
const MAX_EXPONENT: u32 = 64;

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.at) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("expression nested too deeply");
        }
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.at += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.plus(&rhs) } else { acc.minus(&rhs) };
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.at += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                acc.times(&rhs)
            } else {
                match acc.div(&rhs) {
                    Some(v) => v,
                    None => return Err(Error::DivisionByZero),
                }
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.peek_op() == Some('-') {
            self.at += 1;
            self.depth += 1;
            if self.depth > MAX_DEPTH {
                return self.err("expression nested too deeply");
            }
            let v = self.unary()?.negate();
            self.depth -= 1;
            return Ok(v);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.at += 1;
        let neg = if self.peek_op() == Some('-') {
            self.at += 1;
            true
        } else {
            false
        };
        let e = match self.toks.get(self.at) {
            Some((_, Tok::Int(k))) => u32::try_from(k.clone()).ok().filter(|&e| e <= MAX_EXPONENT),
            _ => return self.err("expected integer exponent"),
        };
        let Some(e) = e else {
            return self.err(format!("exponent exceeds {MAX_EXPONENT}"));
        };
        self.at += 1;
        let p = base.pow(e);
        if neg {
            p.inv().ok_or(Error::DivisionByZero)
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let Some((_, tok)) = self.toks.get(self.at).cloned() else {
            return self.err("unexpected end of input");
        };
        self.at += 1;
        match tok {
            Tok::Int(k) => Ok(RatFunc::constant(Q::from_integer(k))),
            Tok::Name(s) if self.sigma => match s.as_str() {
                "s1" | "σ1" | "σ₁" => Ok(RatFunc::var(Var::M)),
                "s3" | "σ3" | "σ₃" => Ok(RatFunc::var(Var::N)),
                _ => {
                    self.at -= 1;
                    self.err(format!("unknown symbol {s:?}"))
                }
            },
            Tok::Name(s) => match s.as_str() {
                "m" => Ok(RatFunc::var(Var::M)),
                "n" => Ok(RatFunc::var(Var::N)),
                "h" => Ok(RatFunc::var(Var::M).plus(&RatFunc::var(Var::N))),
                "lambda" | "λ" => Ok(RatFunc::var(Var::Lambda)),
                "x" => Ok(RatFunc::var(Var::X)),
                _ => {
                    self.at -= 1;
                    self.err(format!("unknown symbol {s:?}"))
                }
            },
            Tok::Op('(') => {
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return self.err("expected ')'");
                }
                self.at += 1;
                Ok(v)
            }
            Tok::Op(c) => {
                self.at -= 1;
                self.err(format!("unexpected {c:?}"))
            }
        }
    }
}

fn parse_with(src: &str, sigma: bool) -> Result<RatFunc> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
        depth: 0,
        sigma,
    };
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Parses an expression into a reduced rational function.
pub fn parse_expr(src: &str) -> Result<RatFunc> {
    parse_with(src, false)
}

/// Parses a polynomial in `s1 = σ₁`, `s3 = σ₃` into coefficients keyed by
/// `(k, l)` for the monomial `σ₃^k σ₁^l`.
pub fn parse_sigma_poly(src: &str) -> Result<BTreeMap<(u32, u32), Q>> {
    let r = parse_with(src, true)?;
    if !r.is_polynomial() {
        return Err(Error::Parse {
            pos: 0,
            msg: "not a polynomial in s1, s3".into(),
        });
    }
    let den = r.den().constant_value().expect("polynomial");
    Ok(r
        .num()
        .terms()
        .map(|(e, c)| ((e.0[Var::N.index()], e.0[Var::M.index()]), c / &den))
        .collect())
}

/// Denominator of a λ selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SelectorBase {
    M,
    N,
    One,
}

/// A λ selector `k/m`, `k/n` or `k`, not yet bound to numeric `m, n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Selector {
    pub k: u64,
    pub base: SelectorBase,
}

impl Selector {
    /// The value `k/m`, `k/n` or `k` at the given parameters.
    pub fn value(&self, m: u64, n: u64) -> Q {
        let den = match self.base {
            SelectorBase::M => m,
            SelectorBase::N => n,
            SelectorBase::One => 1,
        };
        Q::new(BigInt::from(self.k), BigInt::from(den))
    }

    /// The symbolic value as a rational function of `m, n`.
    pub fn symbolic(&self) -> RatFunc {
        let k = RatFunc::constant(Q::from_integer(BigInt::from(self.k)));
        match self.base {
            SelectorBase::M => k.div(&RatFunc::var(Var::M)).expect("m is nonzero"),
            SelectorBase::N => k.div(&RatFunc::var(Var::N)).expect("n is nonzero"),
            SelectorBase::One => k,
        }
    }
}

impl std::fmt::Display for Selector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.base {
            SelectorBase::M => write!(f, "{}/m", self.k),
            SelectorBase::N => write!(f, "{}/n", self.k),
            SelectorBase::One => write!(f, "{}", self.k),
        }
    }
}

/// Parses `k/m`, `k/n` or a positive integer `k`.
pub fn parse_selector(src: &str) -> Result<Selector> {
    let s = src.trim();
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg} in selector {s:?}"),
    };
    let (num, base) = match s.split_once('/') {
        Some((a, b)) => {
            let base = match b.trim() {
                "m" => SelectorBase::M,
                "n" => SelectorBase::N,
                _ => return Err(err("denominator must be m or n")),
            };
            (a.trim(), base)
        }
        None => (s, SelectorBase::One),
    };
    if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("expected a positive integer numerator"));
    }
    let k: u64 = num.parse().map_err(|_| err("numerator out of range"))?;
    if k == 0 {
        return Err(err("numerator must be positive"));
    }
    Ok(Selector { k, base })
}

/// Shorthand used by fixtures and tests; panics on malformed input.
pub fn rf(src: &str) -> RatFunc {
    parse_expr(src).unwrap_or_else(|e| panic!("bad expression {src:?}: {e}"))
}

/// Parses an expression that must reduce to a polynomial.
pub fn parse_poly(src: &str) -> Result<MPoly> {
    let r = parse_expr(src)?;
    if !r.is_polynomial() {
        return Err(Error::Parse {
            pos: 0,
            msg: "expected a polynomial".into(),
        });
    }
    let c = r.den().constant_value().expect("constant denominator");
    Ok(r.num().scale(&c.inv().expect("nonzero")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};

    #[test]
    fn h_expands() {
        assert_eq!(rf("h - m"), RatFunc::var(Var::N));
        assert_eq!(rf("(m*n*h - n*h)/(24*m)").eval_mn(1, 2), Some(qi(0)));
        assert_eq!(rf("(m*n*h - n*h)/(24*m)").eval_mn(2, 3), Some(q(15, 48)));
    }

    #[test]
    fn precedence() {
        assert_eq!(rf("-2^2"), RatFunc::constant(qi(-4)));
        assert_eq!(rf("1 - 2 - 3"), RatFunc::constant(qi(-4)));
        assert_eq!(rf("12/3/2"), RatFunc::constant(qi(2)));
        assert_eq!(rf("m^-2 * m^3"), RatFunc::var(Var::M));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("m +").is_err());
        assert!(parse_expr("m $ n").is_err());
        assert!(parse_expr("(m").is_err());
        assert!(parse_expr("1/(m-m)").is_err());
        assert!(parse_expr("m^999").is_err());
        assert!(parse_expr("q").is_err());
    }

    #[test]
    fn selectors() {
        assert_eq!(parse_selector("2/m").unwrap(), Selector { k: 2, base: SelectorBase::M });
        assert_eq!(parse_selector(" 1 / n ").unwrap().value(2, 3), q(1, 3));
        assert_eq!(parse_selector("3").unwrap().value(2, 3), qi(3));
        for bad in ["0/m", "1/x", "-1", "", "/m", "1.5"] {
            assert!(parse_selector(bad).is_err(), "{bad}");
        }
    }
}
