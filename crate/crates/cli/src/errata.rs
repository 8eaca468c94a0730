//! Published closed forms that disagree with the computation, each with the
//! corrected form the computation produces. A fixture check reports
//! `erratum` only when the computed value equals the correction exactly.

use fvh::algebra::RatFunc;
use fvh::diffpoly::{DiffPoly, JetKey};
use fvh::expr::{parse_expr, parse_sigma_poly};
use fvh::fixtures;
use fvh::algebra::Q;
use std::collections::BTreeMap;

/// `C_2`: the printed numerator has every exponent halved.
pub const C2: &str = "(7*n^4 + 10*n^2*h^2 + 7*h^4)/5760";

/// `P_3`: `h^3 → h^2` in the second term.
pub const P3: &str = "(8*m^3*n^3*h^3 + 4*m^2*n^2*h^2*(44*m^2 - 19*m*n - 19*n^2) \
      + m*n*h*(95*m^4 - 251*m^3*n - 156*m^2*n^2 + 190*m*n^3 + 95*n^4) \
      - n*h*(144*m^4 - 88*m^3*n - 61*m^2*n^2 + 54*m*n^3 + 27*n^4) \
      + m*n*h*(50*m^2 - 13*m*n - 13*n^2) - m*n*h)/(72576*m)";

/// `R_4`: the signs of the last two groups reversed.
pub const R4: &str = "211/10886400 + s1/48600 - 1193*s1^2/4354560 + 18629*s1^3/58060800 - 127*s1^4/1290240 \
      + (83/3870720 - 1657*s1/32659200 + 6469*s1^2/261273600)*(s1^3 - s3/2) \
      - (17/65318400 + 247*s1/1567641600)*(s1^3 - s3/2)^2 + (s1^3 - s3/2)^3/2351462400";

/// `M_1^{[2]}`, `u''''` coefficient: `m^2 n h^2 → 24 m^2 n h^2`.
pub const M1_2_U4: &str = "m*n*(24*m^2*n*h^2 - 4*m*h*(2*m^2 + 2*m*n + 7*n^2) + 7*n^3)/5760";

/// `C̄_{111}` with `p = 1/m`, `q = 1/n`: half the printed value.
pub const CBAR_111: &str = "((1/m)+(1/n))*lambda^2*(lambda+(1/m))/(24*(1/m)^4*(1/n)^2)";

fn parse(s: &str) -> RatFunc {
    parse_expr(s).expect("well-formed erratum")
}

pub fn c_k(k: usize) -> RatFunc {
    if k == 2 {
        parse(C2)
    } else {
        fixtures::c_k(k)
    }
}

pub fn p_g(g: usize) -> RatFunc {
    if g == 3 {
        parse(P3)
    } else {
        fixtures::p_g(g)
    }
}

pub fn r_g(g: usize) -> BTreeMap<(u32, u32), Q> {
    if g == 4 {
        parse_sigma_poly(R4).expect("well-formed erratum")
    } else {
        fixtures::r_g(g)
    }
}

pub fn m1(g: usize) -> DiffPoly<RatFunc> {
    let printed = fixtures::m1(g);
    if g != 2 {
        return printed;
    }
    let key = JetKey::plain(vec![4]);
    let old = DiffPoly::monomial(printed.coeff(&key), key.clone());
    let new = DiffPoly::monomial(parse(M1_2_U4), key);
    fvh::algebra::Ring::plus(&fvh::algebra::Ring::minus(&printed, &old), &new)
}

pub fn cbar(jets: &[u32]) -> Option<RatFunc> {
    if jets == [1, 1, 1] {
        Some(parse(CBAR_111))
    } else {
        fixtures::cbar(jets)
    }
}
