//! Named verification suites for `fvh check`.

use crate::errata;
use fvh::algebra::{q, qi, RatFunc, Ring, Var};
use fvh::fixtures;
use fvh::gap::{c_k_series, r_g_polynomial, solve_v, verify_difference_equation};
use fvh::genus0::{check_f1_relation, default_times, genus0_suite, genus1_quasitrivial_check};
use fvh::hierarchy::{flow_coeff_cj_sym, flow_two_route, m_coeffs_via_tau_symmetry, residue_on_branch, TauScalars};
use fvh::shift::{Branch, Lambda, LaxParams};
use fvh::Result;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Differs from the printed form and equals its documented correction.
    Erratum,
    Fail,
    /// Reported only; never fails the suite.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckItem {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckItem {
    fn new(suite: &'static str, name: impl Into<String>, status: Status, detail: Option<String>) -> Self {
        CheckItem {
            suite,
            name: name.into(),
            status,
            detail,
        }
    }

    fn from_result<T>(suite: &'static str, name: impl Into<String>, r: Result<T>) -> Self {
        match r {
            Ok(_) => Self::new(suite, name, Status::Pass, None),
            Err(e) => Self::new(suite, name, Status::Fail, Some(e.to_string())),
        }
    }
}

pub const SUITES: [&str; 5] = ["evenness", "two-route", "difference-equation", "genus0", "fixtures"];

/// `{1/m, 2/m, 1/n, 1}` without repeats.
pub fn test_lambdas(params: &LaxParams) -> Result<Vec<Lambda>> {
    let (m, n) = (params.m as i64, params.n as i64);
    let mut out: Vec<Lambda> = Vec::new();
    for v in [q(1, m), q(2, m), q(1, n), qi(1)] {
        let l = Lambda::new(params, v)?;
        if !out.contains(&l) {
            out.push(l);
        }
    }
    Ok(out)
}

pub fn evenness(pairs: &[LaxParams], genus: usize) -> Result<Vec<CheckItem>> {
    let mut out = Vec::new();
    for p in pairs {
        for l in test_lambdas(p)? {
            let natural = l.branch(p);
            let mut branches = vec![natural];
            if l.k_m(p).is_some() && l.k_n(p).is_some() {
                branches = vec![Branch::Positive, Branch::Negative];
            }
            for b in branches {
                let name = format!("({},{}) λ={l} {b:?} G={genus}", p.m, p.n);
                out.push(CheckItem::from_result("evenness", name, residue_on_branch(p, &l, b, genus)));
            }
        }
    }
    Ok(out)
}

pub fn two_route(pairs: &[LaxParams], genus: usize) -> Result<Vec<CheckItem>> {
    let mut out = Vec::new();
    for p in pairs {
        for l in test_lambdas(p)? {
            let name = format!("({},{}) λ={l} G={genus}", p.m, p.n);
            out.push(CheckItem::from_result("two-route", name, flow_two_route(p, &l, genus)));
        }
    }
    Ok(out)
}

pub fn difference_equation(pairs: &[LaxParams], genus: usize) -> Result<Vec<CheckItem>> {
    let mut out = Vec::new();
    for p in pairs {
        let name = format!("({},{}) G={genus}", p.m, p.n);
        let pg = solve_v(&p.mq(), &p.nq(), genus)?;
        let rep = verify_difference_equation(p, &pg, genus)?;
        let (status, detail) = match rep.first_failure {
            None => (Status::Pass, None),
            Some(k) => (Status::Fail, Some(format!("nonzero residual at eps^{k}"))),
        };
        out.push(CheckItem::new("difference-equation", name, status, detail));
    }
    Ok(out)
}

pub fn genus0(pairs: &[LaxParams], degree: u32) -> Result<Vec<CheckItem>> {
    let mut out = Vec::new();
    for p in pairs {
        let tag = format!("({},{})", p.m, p.n);
        let mut reps = genus0_suite(p, &default_times(p)?, degree)?;
        let ls = vec![Lambda::new(p, q(1, p.m as i64))?, Lambda::new(p, qi(1))?];
        reps.extend(genus1_quasitrivial_check(p, &ls)?);
        for r in reps {
            let status = if r.passed() { Status::Pass } else { Status::Fail };
            out.push(CheckItem::new("genus0", format!("{tag} {} (degree {})", r.identity, r.degree), status, r.first_failure));
        }
        let f1 = check_f1_relation(p);
        let detail = format!(
            "z0 coefficient: relation {} vs printed {} (difference {})",
            f1.z0_derived, f1.z0_printed, f1.z0_difference
        );
        out.push(CheckItem::new("genus0", format!("{tag} F1 relation"), Status::Info, Some(detail)));
    }
    Ok(out)
}

fn classify<T: PartialEq>(computed: &T, printed: &T, corrected: &T) -> Status {
    if computed == printed {
        Status::Pass
    } else if computed == corrected {
        Status::Erratum
    } else {
        Status::Fail
    }
}

/// Every printed closed form: `P_1..P_4`, `M_1^{[1,2]}`, `C_0..C_2`, the
/// six `C̄_J`, and `R_2..R_4`.
pub fn fixtures_suite(pair_budget: usize) -> Result<Vec<CheckItem>> {
    let s = "fixtures";
    let mut out = Vec::new();
    let (m, n) = (RatFunc::var(Var::M), RatFunc::var(Var::N));

    for (i, pg) in solve_v(&m, &n, 4)?.iter().enumerate() {
        let g = i + 1;
        out.push(CheckItem::new(s, format!("P_{g}"), classify(pg, &fixtures::p_g(g), &errata::p_g(g)), None));
    }
    let ms = m_coeffs_via_tau_symmetry(&TauScalars::<RatFunc>::symbolic(RatFunc::one()), 2)?;
    for (i, mg) in ms.iter().enumerate() {
        let g = i + 1;
        out.push(CheckItem::new(s, format!("M_1^[{g}]"), classify(mg, &fixtures::m1(g), &errata::m1(g)), None));
    }
    for (k, ck) in c_k_series(&m, &n, 2).iter().enumerate() {
        out.push(CheckItem::new(s, format!("C_{k}"), classify(ck, &fixtures::c_k(k), &errata::c_k(k)), None));
    }
    let sc = TauScalars::<RatFunc>::symbolic(RatFunc::var(Var::Lambda));
    for (jets, _) in fixtures::CBAR {
        let name = format!("Cbar_{}", jets.iter().map(|j| j.to_string()).collect::<String>());
        let got = flow_coeff_cj_sym(&sc, jets)?;
        let printed = fixtures::cbar(jets).expect("listed");
        let corrected = errata::cbar(jets).expect("listed");
        out.push(CheckItem::new(s, name, classify(&got, &printed, &corrected), None));
    }
    for g in 2..=4 {
        let name = format!("R_{g}");
        match r_g_polynomial(g, pair_budget) {
            Ok((poly, d)) => {
                let detail = format!("{} pairs, rank {}/{}, {} surplus rows", d.pairs_used.len(), d.rank, d.unknowns, d.surplus_rows);
                let st = classify(&poly.coeffs, &fixtures::r_g(g), &errata::r_g(g));
                out.push(CheckItem::new(s, name, st, Some(detail)));
            }
            Err(e) => out.push(CheckItem::new(s, name, Status::Fail, Some(e.to_string()))),
        }
    }
    Ok(out)
}

