use std::sync::Arc;

use superhopf::kpoincare::*;
use superhopf::presentation::{Element, PresentationBuilder, Word};
use superhopf::report::Report;
use superhopf::sample::SampleSpec;
use superhopf::scalar::Scalar;
use superhopf::{BicrossData, Bicrossproduct, BuildOptions};

fn unchecked() -> BuildOptions {
    BuildOptions { bypass_checks: true, ..Default::default() }
}

fn assert_passes(label: &str, r: &Report) {
    let failures: Vec<_> = r.failures().iter().map(|f| format!("{}: {}", f.id, f.detail)).collect();
    assert!(failures.is_empty(), "{label}:\n{}", failures.join("\n"));
}

#[test]
fn metric_is_preserved() {
    let r = lorentz_property_report(&SpinorConventions::default());
    assert_eq!(r.num_checks(), 32);
    assert_passes("lorentz", &r);
}

#[test]
fn limit_of_kappa_supergroup_is_the_semidirect_product() {
    let conv = SpinorConventions::default();
    let kc = KappaConventions::default();
    let built = kappa_bundle(&conv, &kc).build(&unchecked()).unwrap();
    let limit = classical_limit_hopf(built.hopf()).unwrap();

    let undeformed = Arc::new(make_undeformed_supergroup(&conv, &kc));
    let spec = SampleSpec::new(1, 5, 0);
    assert_passes("undeformed preconditions", &undeformed.check_all(&spec));
    let reference = Bicrossproduct::build("kappa_poincare_supergroup", undeformed, &unchecked()).unwrap();

    assert_passes("tables", &compare_structures(&limit, reference.hopf()));
    assert!(is_supercommutative(&make_super_translations().algebra().clone()));
    assert!(!is_supercommutative(built.algebra()));
}

#[test]
fn limit_of_kappa_data_has_trivial_action() {
    let conv = SpinorConventions::default();
    let kc = KappaConventions::default();
    let d = make_kappa_action_coaction(&conv, &kc);
    let lim = classical_limit_data(&d).unwrap();
    assert!(lim.action_table().iter().flatten().all(Element::is_zero));
    assert!(is_supercommutative(lim.h1().algebra()));
    let reference = make_undeformed_supergroup(&conv, &kc);
    assert_passes("h1", &compare_structures(lim.h1(), reference.h1()));
    assert_passes("h2", &compare_structures(lim.h2(), reference.h2()));
    for (a, b) in lim.coaction_table().iter().zip(reference.coaction_table()) {
        assert_eq!(a.terms(), b.terms());
    }
}

#[test]
fn limit_commutes_with_normal_forms() {
    let conv = SpinorConventions::default();
    let built = kappa_bundle(&conv, &KappaConventions::default()).build(&unchecked()).unwrap();
    let p = built.algebra();
    let q = classical_limit_presentation(p).unwrap();
    let n = p.num_generators() as superhopf::GenId;
    let mut seen = 0;
    for a in 0..n {
        for b in 0..n {
            for c in [0, 4, 6, n - 1] {
                let w = Word(vec![a, b, c]);
                let lhs = p.normal_form_word(&w).map_coefficients(|s| s.classical_limit().unwrap());
                assert_eq!(lhs, q.normal_form_word(&w), "{}", p.render_word(&w));
                seen += 1;
            }
        }
    }
    assert_eq!(seen, 4 * (n as usize).pow(2));
}

#[test]
fn divergent_coefficients_are_rejected() {
    let mut b = PresentationBuilder::new("plane");
    let x = b.generator("x", superhopf::presentation::Parity::Even);
    let y = b.generator("y", superhopf::presentation::Parity::Even);
    let mut rhs = Element::basis(Word(vec![x, y]));
    rhs.add_term(Word::letter(x), Scalar::kappa());
    b.rule(Word(vec![y, x]), rhs);
    let p = b.build().unwrap();
    assert!(matches!(classical_limit_presentation(&p), Err(LimitError::Divergent(_))));
}

#[test]
fn change_of_basis_matches_where_exact() {
    let conv = SpinorConventions::default();
    let built = kappa_bundle(&conv, &KappaConventions::default()).build(&unchecked()).unwrap();
    let r = basis_report(&built, &conv);
    let notes: Vec<String> = basis_annotations().into_iter().map(|(id, _)| id).collect();
    for group in EXACT_BASIS_CHECKS {
        let records: Vec<_> = r.records().iter().filter(|x| x.id.starts_with(&format!("{group}/"))).collect();
        assert!(!records.is_empty(), "{group}");
        for x in records {
            assert_eq!(x.status, superhopf::report::Status::Pass, "{}: {}", x.id, x.detail);
        }
    }
    for f in r.failures() {
        assert!(f.detail.starts_with("computed - printed = "), "{}", f.id);
        let cited = f.detail.rsplit("see amendment/").next().unwrap();
        assert!(notes.iter().any(|n| n == cited), "{} cites {cited}", f.id);
    }
    assert!(r.failures().iter().any(|f| f.id.starts_with("basis/bracket-x-x/")));
    assert!(r.failures().iter().any(|f| f.id.starts_with("basis/coproduct-x/")));
}

#[test]
fn printed_odd_sign_contradicts_the_anticommutator() {
    let conv = SpinorConventions::default();
    let kc = KappaConventions { odd_scale: Scalar::imag(1, 2, -1), mixing: Scalar::from_int(-1), ..Default::default() };
    let bundle = kappa_bundle(&conv, &kc);
    assert_passes("printed sign", &bundle.data.check_all(&SampleSpec::new(1, 5, 0)));
    let built = bundle.build(&unchecked()).unwrap();
    let r = basis_report(&built, &conv);
    assert!(r.failures().iter().any(|f| f.id.starts_with("basis/anticommutator-theta-thetabar/")));
}

#[test]
fn mixed_odd_conventions_fail() {
    let conv = SpinorConventions::default();
    let kc = KappaConventions { mixing: Scalar::from_int(-1), ..Default::default() };
    let d = make_kappa_action_coaction(&conv, &kc);
    assert!(!d.check_all(&SampleSpec::new(1, 5, 0)).passed());
}

#[test]
fn bosonic_restriction_passes() {
    let conv = SpinorConventions::default();
    let d = make_kappa_bosonic(&conv, &KappaConventions::default());
    assert_eq!(d.h1().algebra().num_generators(), 4);
    assert_eq!(d.h2().algebra().num_generators(), 8);
    let spec = SampleSpec::new(2, 20, 0);
    assert_passes("bosonic", &d.check_all(&spec));
    let built = Bicrossproduct::build("kappa_poincare", Arc::new(d), &BuildOptions { spec, ..Default::default() }).unwrap();
    assert_passes("bosonic built", &built.verify_built(&spec));
}

#[test]
fn dropping_the_translation_tail_keeps_confluence() {
    let h = make_chiral_superspace();
    let p = h.algebra();
    let (z0, z1) = (p.id("z0").unwrap(), p.id("z1").unwrap());
    let mut b = PresentationBuilder::new("dropped");
    for g in p.generators() {
        b.weighted_generator(&g.name, g.parity, g.weight);
    }
    for r in p.rules() {
        let rhs = if r.lhs == [z1, z0] { Element::basis(Word(vec![z0, z1])) } else { r.rhs.clone() };
        b.rule(Word(r.lhs.to_vec()), rhs);
    }
    let dropped = b.build().unwrap();
    assert!(dropped.local_confluence_check(5).is_confluent());
    let mut spurious = PresentationBuilder::new("spurious");
    for g in p.generators() {
        spurious.weighted_generator(&g.name, g.parity, g.weight);
    }
    let z2 = p.id("z2").unwrap();
    for r in p.rules() {
        let mut rhs = r.rhs.clone();
        if r.lhs == [z2, z1] {
            rhs.add_term(Word::letter(z1), Scalar::imag(1, 1, -1));
        }
        spurious.rule(Word(r.lhs.to_vec()), rhs);
    }
    assert!(!spurious.build().unwrap().local_confluence_check(5).is_confluent());
}

#[test]
fn classical_poincare_passes_everything() {
    let bundle = classical_poincare_bundle();
    let spec = SampleSpec::new(3, 200, 0);
    assert_passes("classical", &bundle.check_suite(&spec));
    let built = bundle.build(&BuildOptions { spec, ..Default::default() }).unwrap();
    assert_passes("classical built", &built.verify_built(&spec));
}

#[test]
fn trivial_pair_builds_the_graded_tensor_product() {
    let conv = SpinorConventions::default();
    let kc = KappaConventions::default();
    let semidirect = make_undeformed_supergroup(&conv, &kc);
    let h1 = semidirect.h1().clone();
    let h2 = semidirect.h2().clone();
    let mixed = semidirect.mixed_space().clone();
    let n1 = h1.algebra().num_generators();
    let coaction = (0..n1 as superhopf::GenId).map(|g| mixed.from_elements(&[&h2.algebra().one(), &h1.algebra().letter(g)])).collect();
    let action = vec![vec![Element::zero(); n1]; h2.algebra().num_generators()];
    let d = BicrossData::new(h1.clone(), h2.clone(), action, coaction).unwrap();
    let built = Bicrossproduct::build("product", Arc::new(d), &unchecked()).unwrap();
    let p = built.algebra();
    assert!(is_supercommutative(p));
    let t1 = p.gen("t1").unwrap();
    let tb1 = p.gen("tb1").unwrap();
    assert_eq!(p.mul(&tb1, &t1), p.mul(&t1, &tb1).neg());
    let spec = SampleSpec::new(2, 20, 0);
    assert_passes("product", &built.verify_built(&spec));
}
