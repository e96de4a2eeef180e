//! Documents for the shipped instance files, built from the programmatic
//! constructors.

use super::ast::{CheckDirectives, PresentationDoc, Suite};
use super::convert::{algebra_doc, bundle_doc};
use crate::hopf::HopfStructure;
use crate::kpoincare::{
    classical_poincare_bundle, kappa_bundle, make_chiral_superspace, make_super_lorentz, KappaConventions, SpinorConventions,
};

fn checks(suites: &[Suite], max_degree: usize, samples: usize) -> Option<CheckDirectives> {
    Some(CheckDirectives { suites: suites.to_vec(), max_degree: Some(max_degree), samples: Some(samples), seed: None })
}

fn single(name: &str, h: &HopfStructure, conventions: Vec<(String, String)>) -> PresentationDoc {
    PresentationDoc {
        name: Some(name.into()),
        conventions,
        algebras: vec![algebra_doc(h)],
        checks: checks(&[Suite::Confluence, Suite::Bialgebra, Suite::Antipode], 3, 200),
        ..Default::default()
    }
}

fn symbols() -> Vec<(String, String)> {
    [
        ("k", "kappa"),
        ("z0", "z_0"),
        ("z1", "z_1"),
        ("z2", "z_2"),
        ("z3", "z_3"),
        ("t1", "theta_1"),
        ("t2", "theta_2"),
        ("tb1", "thetabar_1"),
        ("tb2", "thetabar_2"),
        ("A11", "A_1^1"),
        ("A12", "A_1^2"),
        ("A21", "A_2^1"),
        ("A22", "A_2^2"),
        ("Ab11", "Abar_1^1"),
        ("Ab12", "Abar_1^2"),
        ("Ab21", "Abar_2^1"),
        ("Ab22", "Abar_2^2"),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect()
}

/// `(file name, document)` for every shipped instance.
pub fn bundled_docs() -> Vec<(&'static str, PresentationDoc)> {
    let conv = SpinorConventions::default();
    let kc = KappaConventions::default();
    let spinor = vec![("spinor".to_string(), conv.describe())];

    let classical = bundle_doc(&classical_poincare_bundle(), checks(&Suite::ALL, 3, 200));
    let mut kappa = bundle_doc(&kappa_bundle(&conv, &kc), checks(&Suite::ALL, 2, 30));
    kappa.symbols = symbols();
    let mut superspace = single("kappa_superspace", &make_chiral_superspace(), vec![]);
    superspace.symbols = symbols().into_iter().filter(|(k, _)| k == "k" || k.starts_with('z') || (k.starts_with('t') && !k.starts_with("tb"))).collect();
    let mut lorentz = single("super_lorentz", &make_super_lorentz(), spinor);
    lorentz.symbols = symbols().into_iter().filter(|(k, _)| k.starts_with('A') || k.starts_with("tb")).collect();

    vec![
        ("classical_poincare.hsa", classical),
        ("kappa_superspace.hsa", superspace),
        ("super_lorentz.hsa", lorentz),
        ("kappa_poincare_supergroup.hsa", kappa),
    ]
}
