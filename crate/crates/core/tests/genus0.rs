use fvh::algebra::{q, qi, Q};
use fvh::genus0::*;
use fvh::hierarchy::{flow_rhs, FlowRoute};
use fvh::shift::{Lambda, LaxParams};

fn p(m: u64, n: u64) -> LaxParams {
    LaxParams::new(m, n).unwrap()
}

fn assert_all_pass(reports: &[IdentityReport]) {
    let bad: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn gamma_shift_normalizes_initial_value() {
    for (m, n) in [(1, 1), (1, 2), (2, 3), (3, 5)] {
        let params = p(m, n);
        let c1 = fvh::hierarchy::c_mu(&params, &Lambda::new(&params, qi(1)).unwrap());
        assert_eq!(gamma_shift(&params) * c1 * qi((m * n) as i64), qi(1));
    }
}

#[test]
fn v_top_at_zero_times_is_log_x_over_m() {
    let params = p(2, 3);
    let data = solve_v_top(&params, &default_times(&params).unwrap(), 2).unwrap();
    // δ has no T-constant term, so v(T = 0) = (1/m) log x
    assert!(data.delta.terms().all(|(e, _)| e.iter().sum::<u32>() > 0));
    assert!(data.v.a.terms().all(|(e, _)| e.iter().sum::<u32>() > 0));
    assert_eq!(data.v.b, TSeries::scalar(3, 4, q(1, 2)));
}

#[test]
fn first_order_in_t_1_over_m() {
    // ∂v/∂T_{1/m} at T = 0 is (nh/m) e^{v_0} ∂_x v_0 = (nh/m²) x^{1/m − 1}
    let params = p(2, 3);
    let lam = Lambda::new(&params, q(1, 2)).unwrap();
    let data = solve_v_top(&params, &[lam], 1).unwrap();
    let i = data.lambdas.iter().position(|l| l.value() == &q(1, 2)).unwrap();
    let mut e = vec![0; data.lambdas.len()];
    e[i] = 1;
    let coeff = data.v.a.terms().find(|(k, _)| **k == e).unwrap().1.clone();
    // w = x^{1/6}: x^{1/2 − 1} = w^{-3}
    assert_eq!(coeff.as_monomial(), Some((-3, q(15, 4))));
}

#[test]
fn genus0_suite_passes_at_degree_three() {
    for (m, n) in [(1, 2), (2, 3), (1, 1), (3, 2)] {
        let params = p(m, n);
        let reports = genus0_suite(&params, &default_times(&params).unwrap(), 3).unwrap();
        // {1/m, 1/n, 1} collapses when m or n is 1
        let k = [m, n].iter().filter(|&&v| v > 1).count() + 1;
        assert_eq!(reports.len(), 6 + 2 * k + k * (k + 1) / 2);
        assert_all_pass(&reports);
        assert!(reports.iter().all(|r| r.degree == 3));
    }
}

#[test]
fn genus0_suite_with_higher_times() {
    let params = p(2, 3);
    let ls: Vec<Lambda> = [q(3, 2), q(2, 3), qi(2)].into_iter().map(|v| Lambda::new(&params, v).unwrap()).collect();
    assert_all_pass(&genus0_suite(&params, &ls, 2).unwrap());
}

#[test]
fn corrupted_f0_is_caught() {
    let params = p(1, 2);
    let mut data = solve_v_top(&params, &default_times(&params).unwrap(), 2).unwrap();
    data.f0 = data.f0.plus(&WithLog::plain(TSeries::var(data.lambdas.len(), 4, 0)));
    let reports = check_f0(&data).unwrap();
    assert!(reports.iter().any(|r| r.identity == "dilaton" && !r.passed()));
    assert!(reports.iter().any(|r| r.identity == "string" && !r.passed()));
}

#[test]
fn report_serializes() {
    let r = IdentityReport::new("string", 3, None);
    assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"identity":"string","degree":3,"status":"pass"}"#);
    let f = IdentityReport::new("x", 1, Some("T^[1]".into()));
    assert!(serde_json::to_string(&f).unwrap().ends_with(r#""status":"fail","first_failure":"T^[1]"}"#));
}

#[test]
fn jet_calculus_examples() {
    // ∂²(log z1) = z3/z1 − z2²/z1², ∂²(z0) = z2
    let l = JetFn::log_z1(qi(1)).total_d_n(2);
    let want = JetFn::monomial(qi(1), qi(0), &[0, -1, 0, 1]).plus(&JetFn::monomial(qi(-1), qi(0), &[0, -2, 2]));
    assert_eq!(l, want);
    assert_eq!(JetFn::z(0).total_d_n(2), JetFn::z(2));
    // ∂ e^{2 z0} = 2 z1 e^{2 z0}
    let e = JetFn::monomial(qi(1), qi(2), &[]);
    assert_eq!(e.total_d(), JetFn::monomial(qi(2), qi(2), &[0, 1]));
}

#[test]
fn genus1_quasitrivial() {
    for (m, n) in [(1, 2), (2, 3), (3, 1)] {
        let params = p(m, n);
        let ls: Vec<Lambda> = [Q::new(1.into(), (m as i64).into()), qi(1)]
            .into_iter()
            .map(|v| Lambda::new(&params, v).unwrap())
            .collect();
        assert_all_pass(&genus1_quasitrivial_check(&params, &ls).unwrap());
    }
}

#[test]
fn wrong_a1_breaks_flow_identity() {
    let params = p(1, 2);
    let l = Lambda::new(&params, qi(1)).unwrap();
    let flow = flow_rhs(&params, &l, 1, FlowRoute::TauSymmetric).unwrap();
    let k0 = JetFn::from_diffpoly(flow.coeff(0));
    let k1 = JetFn::from_diffpoly(flow.coeff(2));
    let a = a1(&params).scale(&q(1, 2));
    assert!(!a.linearize(&k0).minus(&k0.linearize(&a)).minus(&k1).is_zero());
}

#[test]
fn dispersionless_examples() {
    let params = p(2, 3);
    let rhs = |v: Q| dispersionless_flow_rhs(&params, &Lambda::new(&params, v).unwrap());
    let from_flow = |v: Q| {
        let l = Lambda::new(&params, v).unwrap();
        flow_rhs(&params, &l, 0, FlowRoute::LaxCommutator).unwrap().coeff(0).clone()
    };
    for v in [q(1, 2), q(1, 3), qi(1)] {
        assert_eq!(rhs(v.clone()), from_flow(v));
    }
    // λ = 1/m: (nh/m) e^{u} u'
    let j = JetFn::from_diffpoly(&rhs(q(1, 2)));
    assert_eq!(j, JetFn::monomial(q(15, 2), qi(1), &[0, 1]));
    // λ = 1: mn C(h, m) e^{mu} u' = 6 · 10
    assert_eq!(JetFn::from_diffpoly(&rhs(qi(1))), JetFn::monomial(qi(60), qi(2), &[0, 1]));
}

#[test]
fn f1_relation_reports_the_tension() {
    let params = p(2, 3);
    let r = check_f1_relation(&params);
    assert_eq!(r.log_z1_derived, "1/24");
    assert_eq!(r.log_z1_printed, "1/24");
    // −(n² + hm)/(24nh) = −19/360, printed −(nh + n²)/(24nh) = −24/360
    assert_eq!(r.z0_derived, "-19/360");
    assert_eq!(r.z0_printed, "-1/15");
    assert!(!r.matches);
    assert!(r.derived_satisfies_expansion);
    assert!(!r.printed_satisfies_expansion);
    // m = n = 1: the two forms coincide
    assert!(check_f1_relation(&p(1, 1)).matches);
}
