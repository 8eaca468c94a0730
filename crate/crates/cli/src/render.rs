//! Text, JSON and LaTeX renderings of exact values.

use fvh::algebra::{fmt_q, MPoly, RatFunc, Ring, Q};
use fvh::diffpoly::{DiffPoly, EpsDiff};
use num_traits::{One, Signed};
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub fn q_json(q: &Q) -> Value {
    json!({"num": q.numer().to_string(), "den": q.denom().to_string()})
}

pub fn latex_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", -q.numer(), q.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

const LATEX_VARS: [&str; 4] = ["m", "n", "\\lambda", "x"];

fn latex_power(base: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{{{e}}}"),
    }
}

/// Joins signed terms `(coefficient, monomial)` as `a + b - c`.
fn join_terms(terms: Vec<(Q, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, mono)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&latex_q(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&latex_q(&a));
            out.push(' ');
            out.push_str(&mono);
        }
    }
    out
}

pub fn latex_mpoly(p: &MPoly) -> String {
    let terms = p
        .terms()
        .map(|(e, c)| {
            let mono: Vec<String> = e.0.iter().enumerate().map(|(i, &d)| latex_power(LATEX_VARS[i], d)).filter(|s| !s.is_empty()).collect();
            (c.clone(), mono.join(" "))
        })
        .collect();
    join_terms(terms)
}

pub fn latex_ratfunc(r: &RatFunc) -> String {
    match r.den().constant_value() {
        Some(d) => latex_mpoly(&r.num().scale(&d.recip())),
        None => format!("\\frac{{{}}}{{{}}}", latex_mpoly(r.num()), latex_mpoly(r.den())),
    }
}

fn latex_jet(j: u32) -> String {
    match j {
        1 => "u'".into(),
        2 => "u''".into(),
        3 => "u'''".into(),
        _ => format!("u^{{({j})}}"),
    }
}

fn latex_jets(jets: &[u32]) -> String {
    let mut counts: BTreeMap<std::cmp::Reverse<u32>, u32> = BTreeMap::new();
    for &j in jets {
        *counts.entry(std::cmp::Reverse(j)).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(std::cmp::Reverse(j), e)| match e {
            1 => latex_jet(j),
            _ => format!("({})^{{{e}}}", latex_jet(j)),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn latex_exp(kappa: &Q) -> String {
    if kappa.is_zero() {
        String::new()
    } else if kappa.is_one() {
        "e^{u}".into()
    } else {
        format!("e^{{{} u}}", fmt_q(kappa))
    }
}

pub fn latex_diffpoly_q(f: &DiffPoly<Q>) -> String {
    let terms = f
        .terms()
        .map(|(k, c)| {
            let parts: Vec<String> = [latex_exp(&k.kappa), latex_jets(&k.jets)].into_iter().filter(|s| !s.is_empty()).collect();
            (c.clone(), parts.join(" "))
        })
        .collect();
    join_terms(terms)
}

pub fn latex_diffpoly_rf(f: &DiffPoly<RatFunc>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.terms()
        .map(|(k, c)| {
            let parts: Vec<String> = [latex_exp(&k.kappa), latex_jets(&k.jets)].into_iter().filter(|s| !s.is_empty()).collect();
            format!("\\left({}\\right) {}", latex_ratfunc(c), parts.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn latex_series(f: &EpsDiff<Q>) -> String {
    let parts: Vec<String> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let eps = latex_power("\\epsilon", k as u32);
            if eps.is_empty() {
                format!("\\left({}\\right)", latex_diffpoly_q(c))
            } else {
                format!("{eps} \\left({}\\right)", latex_diffpoly_q(c))
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn text_series(f: &EpsDiff<Q>) -> String {
    let mut out = String::new();
    for (k, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.push_str(&format!("eps^{k}: {}\n", c.render()));
        }
    }
    if out.is_empty() {
        out.push_str("0\n");
    }
    out
}

pub fn series_json(f: &EpsDiff<Q>) -> Value {
    Value::Array(
        f.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| json!({"eps": k, "terms": diffpoly_json(c)}))
            .collect(),
    )
}

pub fn diffpoly_json(f: &DiffPoly<Q>) -> Value {
    Value::Array(
        f.terms()
            .map(|(k, c)| json!({"kappa": q_json(&k.kappa), "jets": k.jets, "coeff": q_json(c)}))
            .collect(),
    )
}

/// `Σ c_{k,l} σ₃^k σ₁^l`.
pub fn latex_sigma_poly(coeffs: &BTreeMap<(u32, u32), Q>) -> String {
    let terms = coeffs
        .iter()
        .map(|(&(k, l), c)| {
            let parts: Vec<String> = [latex_power("\\sigma_3", k), latex_power("\\sigma_1", l)].into_iter().filter(|s| !s.is_empty()).collect();
            (c.clone(), parts.join(" "))
        })
        .collect();
    join_terms(terms)
}

pub fn text_sigma_poly(coeffs: &BTreeMap<(u32, u32), Q>) -> String {
    if coeffs.is_empty() {
        return "0".into();
    }
    coeffs
        .iter()
        .map(|(&(k, l), c)| format!("({})*s3^{k}*s1^{l}", fmt_q(c)))
        .collect::<Vec<_>>()
        .join(" + ")
}
