//! Acceptance run: one line per criterion. All comparisons are exact
//! (zero tolerance); runtime limits are 120 s for symbolic `P_4` and 600 s
//! for the `R_4` fit.
//!
//! A clause that disagrees with a printed closed form is reported as FAIL.
//! The run itself only panics if such a disagreement is anything other than
//! the documented erratum, i.e. the computed value must equal the correction
//! in `fvh_cli::errata` exactly, or if any other clause fails.

use fvh::algebra::{q, qi, RatFunc, Ring, Var, Q};
use fvh::diffpoly::{grade_deg, DiffPoly, EpsDiff, Grade, JetKey};
use fvh::fixtures;
use fvh::gap::*;
use fvh::genus0::{check_f1_relation, default_times, genus0_suite, genus1_quasitrivial_check};
use fvh::hierarchy::*;
use fvh::shift::{frac_power, Branch, Lambda, LaxParams};
use fvh_cli::errata;
use std::time::{Duration, Instant};

fn p(m: u64, n: u64) -> LaxParams {
    LaxParams::new(m, n).unwrap()
}

fn lambdas(params: &LaxParams) -> Vec<Lambda> {
    let (m, n) = (params.m as i64, params.n as i64);
    let mut out: Vec<Lambda> = Vec::new();
    for v in [q(1, m), q(2, m), q(1, n), qi(1)] {
        let l = Lambda::new(params, v).unwrap();
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

enum Clause {
    Ok,
    /// Disagrees with the print, agrees exactly with the documented correction.
    Erratum(String),
    Bad(String),
}

fn check(name: impl Into<String>, ok: bool) -> Clause {
    if ok {
        Clause::Ok
    } else {
        Clause::Bad(name.into())
    }
}

/// `computed` vs the printed form, falling back to the documented correction.
fn against_print<T: PartialEq>(name: impl Into<String>, computed: &T, printed: &T, corrected: &T) -> Clause {
    let name = name.into();
    if computed == printed {
        Clause::Ok
    } else if computed == corrected {
        Clause::Erratum(name)
    } else {
        Clause::Bad(name)
    }
}

struct Criterion {
    id: u32,
    title: &'static str,
    clauses: Vec<Clause>,
    note: String,
}

impl Criterion {
    fn line(&self) -> String {
        let errata: Vec<&str> = self
            .clauses
            .iter()
            .filter_map(|c| match c {
                Clause::Erratum(s) => Some(s.as_str()),
                _ => None,
            })
            .collect();
        let bad: Vec<&str> = self
            .clauses
            .iter()
            .filter_map(|c| match c {
                Clause::Bad(s) => Some(s.as_str()),
                _ => None,
            })
            .collect();
        let total = self.clauses.len();
        let ok = total - errata.len() - bad.len();
        let verdict = if errata.is_empty() && bad.is_empty() { "PASS" } else { "FAIL" };
        let mut s = format!("criterion {} [{}]: {verdict} — {ok}/{total} clauses exact", self.id, self.title);
        if !errata.is_empty() {
            s.push_str(&format!("; differs from print, equals documented correction: {}", errata.join(", ")));
        }
        if !bad.is_empty() {
            s.push_str(&format!("; UNEXPECTED: {}", bad.join(", ")));
        }
        if !self.note.is_empty() {
            s.push_str(&format!(" ({})", self.note));
        }
        s
    }

    fn unexpected(&self) -> bool {
        self.clauses.iter().any(|c| matches!(c, Clause::Bad(_)))
    }
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn criterion_1() -> Criterion {
    let (m, n) = (RatFunc::var(Var::M), RatFunc::var(Var::N));
    let t = Instant::now();
    let p3 = solve_v(&m, &n, 3).unwrap();
    let t3 = t.elapsed();
    let t = Instant::now();
    let p4 = solve_v(&m, &n, 4).unwrap();
    let t4 = t.elapsed();
    let mut clauses: Vec<Clause> = (1..=4)
        .map(|g| against_print(format!("P_{g}"), &p4[g - 1], &fixtures::p_g(g), &errata::p_g(g)))
        .collect();
    clauses.push(check("genus-3 run agrees with genus-4 run", p3[..] == p4[..3]));
    clauses.push(check("P_4 under 120 s", t4 < Duration::from_secs(120)));
    // independent of M_1^[g]: the printed P_3 violates the difference equation
    let pr: Vec<Q> = (1..=3).map(|g| fixtures::p_g(g).eval_mn(1, 2).unwrap()).collect();
    let rep = verify_difference_equation(&p(1, 2), &pr, 3).unwrap();
    let printed_p3_rejected = rep.first_failure == Some(6);
    clauses.push(check("difference equation rejects printed P_3 at ε⁶", printed_p3_rejected));
    Criterion {
        id: 1,
        title: "P-series fixtures",
        clauses,
        note: format!("G≤3 in {}, G=4 in {}", secs(t3), secs(t4)),
    }
}

fn criterion_2() -> Criterion {
    let mut clauses = Vec::new();
    for (m, n) in [(1, 2), (2, 3), (3, 4)] {
        let pp = p(m, n);
        let nf = residue_normal_form(&pp, &Lambda::new(&pp, qi(1)).unwrap(), 2).unwrap();
        let pt = [qi(m as i64), qi(n as i64), qi(1), qi(0)];
        let eval = |f: DiffPoly<RatFunc>| f.map_coeffs(|c| c.eval(&pt).unwrap());
        clauses.push(against_print(
            format!("residue M_1^[1] at ({m},{n})"),
            &nf.m[0],
            &eval(fixtures::m1(1)),
            &eval(errata::m1(1)),
        ));
        clauses.push(against_print(
            format!("residue M_1^[2] at ({m},{n})"),
            &nf.m[1],
            &eval(fixtures::m1(2)),
            &eval(errata::m1(2)),
        ));
    }
    let sym = m_coeffs_via_tau_symmetry(&TauScalars::<RatFunc>::symbolic(RatFunc::one()), 2).unwrap();
    clauses.push(against_print("symbolic M_1^[1]", &sym[0], &fixtures::m1(1), &errata::m1(1)));
    clauses.push(against_print("symbolic M_1^[2]", &sym[1], &fixtures::m1(2), &errata::m1(2)));
    for (m, n) in [(1, 2), (2, 3)] {
        let pp = p(m, n);
        for l in lambdas(&pp) {
            let direct = residue_normal_form(&pp, &l, 2).unwrap();
            let tau = m_coeffs_via_tau_symmetry(&tau_scalars_numeric(&pp, &l), 2).unwrap();
            clauses.push(check(format!("tau = residue ({m},{n}) λ={l}"), direct.m == tau));
        }
    }
    Criterion {
        id: 2,
        title: "M fixtures",
        clauses,
        note: String::new(),
    }
}

fn criterion_3() -> Criterion {
    let mut clauses = Vec::new();
    let mut notes = Vec::new();
    for g in 2..=4 {
        let t = Instant::now();
        let (poly, d) = r_g_polynomial(g, 200).unwrap();
        let el = t.elapsed();
        clauses.push(against_print(format!("R_{g}"), &poly.coeffs, &fixtures::r_g(g), &errata::r_g(g)));
        clauses.push(check(format!("R_{g} rank = unknowns"), d.rank == d.unknowns));
        clauses.push(check(format!("R_{g} oversampled ≥ 1.5×"), 2 * (d.rank + d.surplus_rows) >= 3 * d.unknowns));
        if g == 4 {
            clauses.push(check("R_4 under 600 s", el < Duration::from_secs(600)));
        }
        notes.push(format!("g={g}: {} pairs, {} unknowns, {}", d.pairs_used.len(), d.unknowns, secs(el)));
    }
    Criterion {
        id: 3,
        title: "R-polynomial fixtures",
        clauses,
        note: notes.join("; "),
    }
}

fn criterion_4() -> Criterion {
    let mut clauses = Vec::new();
    for (m, n) in [(1, 2), (2, 3), (3, 4)] {
        let (mq, nq) = (qi(m), qi(n));
        let s = c_k_series(&mq, &nq, 8);
        let ok = (0..=8).all(|k| c_k_closed(&mq, &nq, k) == s[k]);
        clauses.push(check(format!("closed form = series, k≤8, ({m},{n})"), ok));
    }
    let (m, n) = (RatFunc::var(Var::M), RatFunc::var(Var::N));
    for (k, c) in c_k_series(&m, &n, 2).iter().enumerate() {
        clauses.push(against_print(format!("C_{k}"), c, &fixtures::c_k(k), &errata::c_k(k)));
    }
    Criterion {
        id: 4,
        title: "C_k cross-check",
        clauses,
        note: String::new(),
    }
}

fn criterion_5() -> Criterion {
    let mut clauses = Vec::new();
    for (m, n) in [(1, 2), (2, 3)] {
        let pp = p(m, n);
        for l in lambdas(&pp) {
            let flow = flow_tau(&pp, &l, 2).unwrap();
            for (jets, _) in fixtures::CBAR {
                let got = flow_coeff_cj(&pp, &l, &flow, jets);
                let at = |f: RatFunc| f.eval(&[qi(m as i64), qi(n as i64), l.value().clone(), qi(0)]).unwrap();
                let name = format!(
                    "C̄_{} ({m},{n}) λ={l}",
                    jets.iter().map(|j| j.to_string()).collect::<String>()
                );
                clauses.push(against_print(
                    name,
                    &got,
                    &at(fixtures::cbar(jets).unwrap()),
                    &at(errata::cbar(jets).unwrap()),
                ));
            }
        }
    }
    // the erratum appears on every (m, n, λ); collapse it to one name
    let mut seen_erratum = false;
    let clauses = clauses
        .into_iter()
        .filter_map(|c| match c {
            Clause::Erratum(s) if s.starts_with("C̄_111") => {
                if seen_erratum {
                    None
                } else {
                    seen_erratum = true;
                    Some(Clause::Erratum("C̄_111 (all 8 (m,n,λ), factor 2)".into()))
                }
            }
            other => Some(other),
        })
        .collect();
    Criterion {
        id: 5,
        title: "flow-coefficient fixtures",
        clauses,
        note: String::new(),
    }
}

fn criterion_6() -> Criterion {
    let mut clauses = Vec::new();
    for (m, n) in [(1u64, 2u64), (1, 3), (2, 3)] {
        let pg = solve_v(&qi(m as i64), &qi(n as i64), 2).unwrap();
        let rep = verify_difference_equation(&p(m, n), &pg, 2).unwrap();
        clauses.push(check(format!("residual zero through ε⁴ at ({m},{n})"), rep.passed()));
    }
    Criterion {
        id: 6,
        title: "difference-equation oracle",
        clauses,
        note: String::new(),
    }
}

fn criterion_7() -> Criterion {
    let mut clauses = Vec::new();
    for (m, n) in [(1, 2), (2, 3)] {
        let pp = p(m, n);
        let ls = lambdas(&pp);
        for l in &ls {
            let both = l.k_m(&pp).is_some() && l.k_n(&pp).is_some();
            let branches = if both { vec![Branch::Positive, Branch::Negative] } else { vec![l.branch(&pp)] };
            for b in branches {
                let ok = residue_on_branch(&pp, l, b, 2).is_ok();
                clauses.push(check(format!("evenness ({m},{n}) λ={l} {b:?}"), ok));
                let raw = frac_power::<Q>(&pp, l, b, 0, 4).unwrap().res().unwrap();
                clauses.push(check(format!("grade 0 of res ({m},{n}) λ={l} {b:?}"), grade_deg(&raw) == Grade::Homogeneous(0)));
            }
            clauses.push(check(format!("two-route flow ({m},{n}) λ={l}"), flow_two_route(&pp, l, 2).is_ok()));
            // leading terms of res(L^{λh} Λ₃^{-j})
            let h = pp.hq();
            let mut lead_ok = true;
            for (b, positive) in [(Branch::Positive, true), (Branch::Negative, false)] {
                let k = if positive { l.k_m(&pp) } else { l.k_n(&pp) };
                let Some(k) = k else { continue };
                let op = frac_power::<Q>(&pp, l, b, 0, 0).unwrap();
                for j in -2i64..=k as i64 + 2 {
                    let Ok(c) = op.coefficient(&(&h * qi(j))) else { continue };
                    let want = DiffPoly::monomial(
                        leading_res_coeff(&pp, l, j, positive),
                        JetKey::new(l.value() * pp.mq() - qi(j), vec![]),
                    );
                    lead_ok &= c.coeff(0) == &want;
                }
            }
            clauses.push(check(format!("leading terms ({m},{n}) λ={l}"), lead_ok));
        }
        for a in &ls {
            for b in &ls {
                let om: EpsDiff<Q> = omega(&pp, a, b, 2).unwrap();
                clauses.push(check(format!("Ω symmetric ({m},{n}) {a},{b}"), om == omega(&pp, b, a, 2).unwrap()));
                clauses.push(check(format!("Ω grade 0 ({m},{n}) {a},{b}"), grade_deg(&om) == Grade::Homogeneous(0)));
                let r = orproperty_residual(&pp, a, b, 2).unwrap();
                clauses.push(check(format!("Ω gradient identity ({m},{n}) {a},{b}"), r.is_zero()));
            }
        }
    }
    for a in 1..=4 {
        for b in 1..=4 {
            let (lhs, rhs) = elementary_identity(a, b);
            clauses.push(check(format!("binomial identity {a},{b}"), lhs == rhs));
        }
    }
    Criterion {
        id: 7,
        title: "property suites",
        clauses,
        note: String::new(),
    }
}

fn criterion_8() -> Criterion {
    let mut clauses = Vec::new();
    for (m, n) in [(1, 2), (2, 3)] {
        let pp = p(m, n);
        for r in genus0_suite(&pp, &default_times(&pp).unwrap(), 3).unwrap() {
            clauses.push(check(format!("({m},{n}) {} to T-degree {}", r.identity, r.degree), r.passed()));
        }
        let ls = vec![Lambda::new(&pp, q(1, m as i64)).unwrap(), Lambda::new(&pp, qi(1)).unwrap()];
        for r in genus1_quasitrivial_check(&pp, &ls).unwrap() {
            clauses.push(check(format!("({m},{n}) {}", r.identity), r.passed()));
        }
    }
    Criterion {
        id: 8,
        title: "genus-0/1 suite",
        clauses,
        note: String::new(),
    }
}

fn criterion_9() -> Criterion {
    let mut clauses = Vec::new();
    let mut notes = Vec::new();
    for (m, n) in [(1, 2), (2, 3)] {
        let r = check_f1_relation(&p(m, n));
        // the report must be produced and carry both values; a mismatch is
        // the documented tension, not a failure
        let emitted = r.log_z1_derived == "1/24" && !r.z0_derived.is_empty() && !r.z0_printed.is_empty();
        clauses.push(check(format!("report emitted at ({m},{n})"), emitted));
        notes.push(format!(
            "({m},{n}): z0 relation {} vs printed {}, difference {}",
            r.z0_derived, r.z0_printed, r.z0_difference
        ));
    }
    Criterion {
        id: 9,
        title: "known-tension report",
        clauses,
        note: notes.join("; "),
    }
}

fn main() {
    let criteria: Vec<fn() -> Criterion> = vec![
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    let mut unexpected = Vec::new();
    for f in criteria {
        let c = f();
        println!("{}", c.line());
        if c.unexpected() {
            unexpected.push(c.id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
