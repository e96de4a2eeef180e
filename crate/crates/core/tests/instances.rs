use std::path::PathBuf;

use superhopf::dsl::bundled::bundled_docs;
use superhopf::dsl::convert::{algebra_doc, bicross_docs, bicross_from_doc, hopf_from_doc, presentation_doc, presentation_from_doc};
use superhopf::dsl::{parse_presentation, print_presentation};
use superhopf::kpoincare::{classical_poincare_bundle, kappa_bundle, make_chiral_superspace, make_super_lorentz, KappaConventions, SpinorConventions};

fn instance_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(instance_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn shipped_files_match_constructors() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, doc) in bundled_docs() {
        let text = print_presentation(&doc);
        if update {
            std::fs::write(instance_dir().join(name), &text).unwrap();
        }
        assert_eq!(read(name), text, "{name} is stale; rerun with UPDATE_GOLDEN=1");
        assert_eq!(parse_presentation(&text).unwrap(), doc, "{name}");
    }
}

#[test]
fn print_is_idempotent_on_shipped_files() {
    for (name, _) in bundled_docs() {
        let once = print_presentation(&parse_presentation(&read(name)).unwrap());
        let twice = print_presentation(&parse_presentation(&once).unwrap());
        assert_eq!(once, twice, "{name}");
        assert_eq!(once, read(name), "{name}");
    }
}

#[test]
fn superspace_file_builds_the_programmatic_algebra() {
    let doc = parse_presentation(&read("kappa_superspace.hsa")).unwrap();
    let built = hopf_from_doc(&doc.algebras[0]).unwrap();
    let expected = make_chiral_superspace();
    assert_eq!(presentation_doc(built.algebra()), presentation_doc(expected.algebra()));
    assert_eq!(algebra_doc(&built), algebra_doc(&expected));
}

#[test]
fn lorentz_file_builds_the_programmatic_algebra() {
    let doc = parse_presentation(&read("super_lorentz.hsa")).unwrap();
    let p = presentation_from_doc(&doc.algebras[0]).unwrap();
    assert_eq!(p.generators(), make_super_lorentz().algebra().generators());
    assert_eq!(algebra_doc(&hopf_from_doc(&doc.algebras[0]).unwrap()), algebra_doc(&make_super_lorentz()));
}

#[test]
fn pair_files_build_the_programmatic_tables() {
    let cases = [
        ("classical_poincare.hsa", classical_poincare_bundle()),
        ("kappa_poincare_supergroup.hsa", kappa_bundle(&SpinorConventions::default(), &KappaConventions::default())),
    ];
    for (name, bundle) in cases {
        let doc = parse_presentation(&read(name)).unwrap();
        let data = bicross_from_doc(&doc).unwrap();
        assert_eq!(data.h1().algebra().generators(), bundle.data.h1().algebra().generators(), "{name}");
        assert_eq!(data.h2().algebra().rules(), bundle.data.h2().algebra().rules(), "{name}");
        assert_eq!(bicross_docs(&data), bicross_docs(&bundle.data), "{name}");
    }
}
