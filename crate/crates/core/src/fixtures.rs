//! Published closed forms, kept as text and parsed on demand so that the
//! strings can be compared against their source by eye.

use crate::algebra::{RatFunc, Ring, Q};
use crate::diffpoly::{DiffPoly, JetKey};
use crate::expr::{parse_expr, parse_sigma_poly};
use std::collections::BTreeMap;

/// `P_1, …, P_4` in `m, n, h`.
pub const P: [&str; 4] = [
    "(m*n*h - n*h)/(24*m)",
    "-(4*m^2*n^2*h^2 + m*n*h*(3*m^2 - 7*m*n - 7*n^2) - n*h*(4*m^2 - 3*m*n - 3*n^2) + m*n*h)/(960*m)",
    "(8*m^3*n^3*h^3 + 4*m^2*n^2*h^3*(44*m^2 - 19*m*n - 19*n^2) \
      + m*n*h*(95*m^4 - 251*m^3*n - 156*m^2*n^2 + 190*m*n^3 + 95*n^4) \
      - n*h*(144*m^4 - 88*m^3*n - 61*m^2*n^2 + 54*m*n^3 + 27*n^4) \
      + m*n*h*(50*m^2 - 13*m*n - 13*n^2) - m*n*h)/(72576*m)",
    "(3376*m^4*n^4*h^4 - 32*m^3*n^3*h^3*(87*m^2 + 62*m*n + 62*n^2) \
      - 40*m^2*n^2*h^2*(312*m^4 - 68*m^3*n - 7*m^2*n^2 + 122*m*n^3 + 61*n^4) \
      - m*n*h*(5257*m^6 - 15689*m^5*n - 13203*m^4*n^2 + 3699*m^3*n^3 - 1333*m^2*n^4 - 3819*m*n^5 - 1273*n^6) \
      + n*h*(8640*m^6 - 3312*m^5*n - 344*m^4*n^2 + 5711*m^3*n^3 + 2293*m^2*n^4 - 675*m*n^5 - 225*n^6) \
      - 2*m*n*h*(1764*m^4 - 232*m^3*n - 23*m^2*n^2 + 418*m*n^3 + 209*n^4) \
      - 408*m^2*n^2*h^2 + m*n*h*(147*m^2 + 47*m*n + 47*n^2) - 2*m*n*h)/(4147200*m)",
];

/// `M_1^{[1]}` and `M_1^{[2]}` as `(jets, coefficient)` pairs.
pub const M1: [&[(&[u32], &str)]; 2] = [
    &[
        (&[2], "m*n*(2*m*h - n)/24"),
        (&[1, 1], "m^3*n*(h + 1)/24"),
    ],
    &[
        (&[4], "m*n*(m^2*n*h^2 - 4*m*h*(2*m^2 + 2*m*n + 7*n^2) + 7*n^3)/5760"),
        (&[3, 1], "m^3*n*(h + 1)*(12*m*n*h - 4*m^2 - 6*m*n - 9*n^2)/1440"),
        (
            &[2, 2],
            "m^2*n*(36*m^2*n*h^2 - 4*m*h*(3*m^2 - 2*m*n + 8*n^2) - 12*m^3 - 8*m^2*n - 12*m*n^2 + 5*n^3)/5760",
        ),
        (&[2, 1, 1], "m^4*n*(h + 1)*(22*m*n*h - (8*m^2 + 13*n^2) - 4*h)/2880"),
        (&[1, 1, 1, 1], "m^5*n*(h + 1)*(5*m*n*h - (2*m^2 - 3*m*n + 2*n^2) - 2*h)/5760"),
    ],
];

/// `R_2, R_3, R_4` in `s1 = σ₁`, `s3 = σ₃`.
pub const R: [&str; 3] = [
    "-1/1440 + 13*s1/5760 - 7*s1^2/5760 + (s1^3 - s3/2)/17280",
    "1/181440 - 107*s1/362880 + 145*s1^2/290304 - 31*s1^3/161280 \
      - (31/1088640 - 113*s1/4354560)*(s1^3 - s3/2) - (s1^3 - s3/2)^2/13063680",
    "211/10886400 + s1/48600 - 1193*s1^2/4354560 + 18629*s1^3/58060800 - 127*s1^4/1290240 \
      + (83/3870720 - 1657*s1/32659200 + 6469*s1^2/261273600)*(s1^3 - s3/2) \
      + (17/65318400 + 247*s1/1567641600)*(s1^3 - s3/2)^2 - (s1^3 - s3/2)^3/2351462400",
];

/// `C_0, C_1, C_2` of the sinh-ratio generating function.
pub const C: [&str; 3] = ["1", "-(n^2 + h^2)/24", "(7*n^2 + 10*n*h + 7*h^2)/5760"];

/// Flow coefficients `C̄_J(p, q; λ)` as printed, in `p, q, lambda`.
pub const CBAR: [(&[u32], &str); 6] = [
    (&[3], "(p+q)*lambda/(12*p^2*q^2)"),
    (&[2, 1], "(p+q)*lambda*(2*lambda+p)/(12*p^3*q^2)"),
    (&[1, 1, 1], "(p+q)*lambda^2*(lambda+p)/(12*p^4*q^2)"),
    (&[5], "(p+q)*lambda*(3*(p+q)*lambda-(p^2+p*q+q^2))/(720*p^4*q^4)"),
    (
        &[4, 1],
        "(p+q)*lambda*(9*(p+q)*lambda^2+(2*p^2+2*p*q-3*q^2)*lambda-p*(p^2+p*q+2*q^2))/(720*p^5*q^4)",
    ),
    (&[3, 2], "(p+q)*lambda*(3*(p+q)*lambda^2+(p^2+p*q-q^2)*lambda-p*q^2)/(144*p^5*q^4)"),
];

/// The `z₀` coefficient of the printed genus-one free energy.
pub const F1_Z0: &str = "-(n*h + n^2)/(24*n*h)";

fn parse(src: &str) -> RatFunc {
    parse_expr(src).unwrap_or_else(|e| panic!("fixture {src:?}: {e}"))
}

pub fn p_g(g: usize) -> RatFunc {
    parse(P[g - 1])
}

pub fn m1(g: usize) -> DiffPoly<RatFunc> {
    M1[g - 1].iter().fold(DiffPoly::zero(), |acc, (jets, c)| {
        acc.plus(&DiffPoly::monomial(parse(c), JetKey::plain(jets.to_vec())))
    })
}

/// `R_g` as `(k, l) ↦ coefficient of σ₃^k σ₁^l`.
pub fn r_g(g: usize) -> BTreeMap<(u32, u32), Q> {
    parse_sigma_poly(R[g - 2]).expect("fixture")
}

pub fn c_k(k: usize) -> RatFunc {
    parse(C[k])
}

/// `C̄_J` with `p = 1/m`, `q = 1/n`.
pub fn cbar(jets: &[u32]) -> Option<RatFunc> {
    CBAR.iter()
        .find(|(j, _)| *j == jets)
        .map(|(_, s)| parse(&s.replace('p', "(1/m)").replace('q', "(1/n)")))
}

pub fn f1_z0() -> RatFunc {
    parse(F1_Z0)
}
