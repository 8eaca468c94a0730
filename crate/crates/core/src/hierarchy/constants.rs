use crate::algebra::{gen_binomial, Field, RatFunc, Ring, Var, Q};
use crate::error::{Error, Result};
use crate::expr::{Selector, SelectorBase};
use crate::shift::{Lambda, LaxParams};
use num_bigint::BigInt;

fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// `binom(a, k)`, zero for negative `k`.
fn binom_q(a: &Q, k: i64) -> Q {
    if k < 0 {
        Q::zero()
    } else {
        gen_binomial(a, k as u32)
    }
}

/// `c_λ = binom(λh, λm)` on `𝓘₁`, `binom(λh, λn)` on `𝓘₂`.
pub fn c_mu(params: &LaxParams, lambda: &Lambda) -> Q {
    let lh = lambda.value() * params.hq();
    match (lambda.k_m(params), lambda.k_n(params)) {
        (Some(k), _) => binom_q(&lh, k as i64),
        (None, Some(k)) => binom_q(&lh, k as i64),
        (None, None) => unreachable!("validated index"),
    }
}

/// `c_λ` as a rational function of `m, n` for selectors `k/m`, `k/n`.
pub fn c_mu_sym(sel: &Selector) -> Result<RatFunc> {
    let m = RatFunc::var(Var::M);
    let n = RatFunc::var(Var::N);
    let h = m.plus(&n);
    let k = RatFunc::constant(qi(sel.k as i64));
    let base = match sel.base {
        SelectorBase::M => m,
        SelectorBase::N => n,
        SelectorBase::One => {
            return Err(Error::InvalidParams(
                "c_λ for integer λ is not a rational function of m, n".into(),
            ))
        }
    };
    let a = k.times(&h).div(&base).expect("nonzero");
    Ok(gen_binomial(&a, sel.k as u32))
}

/// ε⁰ coefficient of `res(L^{λh} Λ₃^{-k})`, without the `e^{(λm-k)u}`.
pub fn leading_res_coeff(params: &LaxParams, lambda: &Lambda, k: i64, positive: bool) -> Q {
    let lh = lambda.value() * params.hq();
    if positive {
        let km = lambda.k_m(params).expect("λ in 𝓘₁") as i64;
        binom_q(&lh, km - k)
    } else {
        let kn = lambda.k_n(params).expect("λ in 𝓘₂") as i64;
        binom_q(&lh, kn + k)
    }
}

/// Both sides of `Σ_{j=1}^{λm} j·binom(λh, λm−j)·binom(μh, μm+j) =
/// (mn/h)(λμ/(λ+μ)) c_λ c_μ` for `λ = a/m`, `μ = b/m`, symbolic in `m, n`.
pub fn elementary_identity(a: u32, b: u32) -> (RatFunc, RatFunc) {
    let m = RatFunc::var(Var::M);
    let n = RatFunc::var(Var::N);
    let h = m.plus(&n);
    let lam = RatFunc::constant(qi(a as i64)).div(&m).expect("nonzero");
    let mu = RatFunc::constant(qi(b as i64)).div(&m).expect("nonzero");
    let lh = lam.times(&h);
    let muh = mu.times(&h);
    let mut lhs = RatFunc::zero();
    for j in 1..=a {
        let t = gen_binomial(&lh, a - j).times(&gen_binomial(&muh, b + j));
        lhs = lhs.plus(&t.scale(&qi(j as i64)));
    }
    let c_l = gen_binomial(&lh, a);
    let c_m = gen_binomial(&muh, b);
    let rhs = m
        .times(&n)
        .div(&h)
        .and_then(|f| f.times(&lam).times(&mu).div(&lam.plus(&mu)))
        .expect("nonzero")
        .times(&c_l)
        .times(&c_m);
    (lhs, rhs)
}
