use uqfock::exprlang::{check_identity, parse_identity, EvalContext};
use uqfock::fockspace::FockParams;
use uqfock::operators::{Exact, Generators, Numeric, RationalSample};
use uqfock::qarith::{parse_rational, LaurentPoly};
use uqfock::relations::{
    reconstruct_chevalley, verify_all, verify_cartan_kac_serre, CagRelation, Status, TripleForm,
};

fn exact(n: usize, m: usize, p: usize) -> Generators<LaurentPoly> {
    Generators::exact(FockParams::new(n, m, p).unwrap()).unwrap()
}

#[test]
fn triple_relation_forms_agree_where_epsilon_is_active() {
    let g = exact(2, 1, 2);
    for form in [TripleForm::Middle, TripleForm::Right] {
        for eta in [uqfock::operators::Ladder::Plus, uqfock::operators::Ladder::Minus] {
            let rel = CagRelation::Triple { i: 1, j: 3, k: 2, eta, form };
            let (lhs, rhs) = rel.sides(&Exact, &g).unwrap();
            assert_eq!(lhs.matrix, rhs.matrix, "{:?}", rel);
            assert!(!lhs.is_zero());
        }
    }
}

#[test]
fn exact_sample_realization_passes() {
    let g = exact(2, 1, 2);
    let sample = RationalSample::new(parse_rational("5/3").unwrap()).unwrap();
    let report = verify_all(&sample, &g.realize(&sample).unwrap());
    assert!(report.all_passed());
    assert_eq!(report.to_json()["q0"], "5/3");
}

#[test]
fn larger_cases_pass() {
    for (n, m, p) in [(3, 1, 2), (1, 3, 3), (2, 2, 2)] {
        let report = verify_all(&Exact, &exact(n, m, p));
        assert!(report.all_passed(), "({n},{m},{p})");
    }
}

#[test]
fn numeric_tolerance_is_respected() {
    let params = FockParams::new(1, 1, 2).unwrap();
    let gens = Generators::normalized_numeric(params, 1.3).unwrap();
    let loose = Numeric::new(1.3, 1e-10).unwrap();
    assert!(verify_all(&loose, &gens).all_passed());
    // a perturbation larger than the tolerance is caught
    let bumped = gens.map(|v| Ok(v * (1.0 + 1e-6))).unwrap();
    assert!(!verify_all(&loose, &bumped).all_passed());
}

#[test]
fn chevalley_layer_on_extra_cases() {
    for (n, m, p) in [(2, 2, 2), (1, 3, 2), (0, 3, 2), (3, 0, 2)] {
        let set = reconstruct_chevalley(&exact(n, m, p), &parse_rational("7/4").unwrap()).unwrap();
        let reports = verify_cartan_kac_serre(&set);
        assert!(reports.iter().all(|r| r.status != Status::Fail), "({n},{m},{p})");
        let ctx = EvalContext::with_chevalley(&set);
        let id = parse_identity("scomm(E(1), F(1)) == qdivdiff(K(1), Kinv(1))").unwrap();
        assert_eq!(check_identity(&id, &ctx).unwrap().status, Status::Pass);
    }
}

#[test]
fn failure_report_carries_residual_and_indices() {
    let g = exact(1, 1, 2);
    let ctx = EvalContext::new(&Exact, &g);
    // wrong sign on the right-hand side
    let id = parse_identity("comm(H(1), Ap(1)) == 2 * Ap(1)").unwrap();
    let report = check_identity(&id, &ctx).unwrap();
    assert_eq!(report.status, Status::Fail);
    let j = report.to_json();
    assert_eq!(j["status"], "fail");
    let residual = j["residual"].as_array().unwrap();
    assert!(!residual.is_empty());
    assert_eq!(residual[0].as_array().unwrap().len(), 3);
}
