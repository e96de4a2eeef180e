//! Executes the check suites declared by a document.

use std::sync::Arc;

use super::ast::*;
use super::convert::{bicross_from_doc, has_hopf_tables, hopf_from_doc, presentation_from_doc, SetupError};
use crate::bicross::{BicrossData, Bicrossproduct, BuildOptions};
use crate::report::{Report, Status};
use crate::sample::{SampleSpec, DEFAULT_SEED};

pub const ANCHOR_CONFLUENCE: &str = "overlaps of rewrite rules resolve (diamond lemma)";
pub const ANCHOR_SETUP: &str = "structure could be built from the document";

pub const DEFAULT_MAX_DEGREE: usize = 2;
pub const DEFAULT_SAMPLES: usize = 20;

/// Command-line values that take precedence over the document's `check`
/// block.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub max_degree: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

/// The sampling parameters and suites in effect.
pub fn effective_settings(doc: &PresentationDoc, o: &Overrides) -> (SampleSpec, Vec<Suite>) {
    let c = doc.checks.clone().unwrap_or_default();
    let spec = SampleSpec::new(
        o.max_degree.or(c.max_degree).unwrap_or(DEFAULT_MAX_DEGREE),
        o.samples.or(c.samples).unwrap_or(DEFAULT_SAMPLES),
        o.seed.or(c.seed).unwrap_or(DEFAULT_SEED),
    );
    let suites = if c.suites.is_empty() { Suite::ALL.to_vec() } else { c.suites };
    (spec, suites)
}

fn setup_failure(report: &mut Report, id: String, e: &SetupError, seed: u64) {
    report.push(id, ANCHOR_SETUP, Status::Fail, e.to_string(), seed);
}

/// Builds every structure the document declares and runs the selected
/// suites. Setup problems become failed `setup` records. Records are sorted
/// by id.
pub fn run_checks(doc: &PresentationDoc, overrides: &Overrides) -> Report {
    let (spec, suites) = effective_settings(doc, overrides);
    let seed = spec.seed;
    let on = |s: Suite| suites.contains(&s);
    let mut report = Report::new();
    for (k, v) in &doc.conventions {
        report.info(format!("convention/{k}"), "convention", v.clone());
    }
    for (k, v) in &doc.notes {
        report.info(format!("amendment/{k}"), "amended table entry", v.clone());
    }
    for (k, v) in &doc.symbols {
        report.info(format!("symbol/{k}"), "symbol", v.clone());
    }
    report.info("settings", "sampling", format!("max_degree = {}, samples = {}, seed = {}", spec.max_degree, spec.samples, spec.seed));

    for alg in &doc.algebras {
        let name = &alg.name;
        let p = match presentation_from_doc(alg) {
            Ok(p) => p,
            Err(e) => {
                setup_failure(&mut report, format!("{name}/setup"), &e, seed);
                continue;
            }
        };
        if on(Suite::Confluence) {
            let c = p.local_confluence_check(5);
            let detail = c
                .mismatches
                .iter()
                .map(|m| format!("{}: {} vs {}", p.render_word(&m.word), p.render(&m.left), p.render(&m.right)))
                .collect::<Vec<_>>()
                .join("; ");
            let status = if c.is_confluent() { Status::Pass } else { Status::Fail };
            report.push(format!("{name}/confluence"), ANCHOR_CONFLUENCE, status, detail, seed);
        }
        if !has_hopf_tables(alg) || !(on(Suite::Bialgebra) || on(Suite::Antipode)) {
            continue;
        }
        match hopf_from_doc(alg) {
            Ok(h) => {
                if on(Suite::Bialgebra) {
                    report.extend(h.verify_bialgebra(&spec).prefixed(name));
                }
                if on(Suite::Antipode) {
                    report.extend(h.verify_antipode(&spec).prefixed(name));
                }
            }
            Err(e) => setup_failure(&mut report, format!("{name}/setup"), &e, seed),
        }
    }

    let wants_pair = [Suite::Module, Suite::Comodule, Suite::Compatibility, Suite::Built].into_iter().any(on);
    if doc.bicross.is_some() && wants_pair {
        match bicross_from_doc(doc) {
            Ok(d) => run_pair(doc, Arc::new(d), &spec, &suites, &mut report),
            Err(e) => setup_failure(&mut report, "bicross/setup".into(), &e, seed),
        }
    }
    report.sorted()
}

fn run_pair(doc: &PresentationDoc, d: Arc<BicrossData>, spec: &SampleSpec, suites: &[Suite], report: &mut Report) {
    let on = |s: Suite| suites.contains(&s);
    let mut preconditions = Report::new();
    if on(Suite::Module) {
        preconditions.extend(d.check_module_algebra(spec).prefixed("module"));
    }
    if on(Suite::Comodule) {
        preconditions.extend(d.check_comodule_coalgebra(spec).prefixed("comodule"));
    }
    if on(Suite::Compatibility) {
        preconditions.extend(d.check_compatibility(spec).prefixed("compatibility"));
    }
    let all_checked = on(Suite::Module) && on(Suite::Comodule) && on(Suite::Compatibility);
    let passed = preconditions.passed();
    report.extend(preconditions);
    if !on(Suite::Built) {
        return;
    }
    if !passed {
        report.push("built/setup", ANCHOR_SETUP, Status::Fail, "not built: the module, comodule or compatibility checks fail", spec.seed);
        return;
    }
    let name = doc.name.clone().unwrap_or_else(|| "bicrossproduct".into());
    let opts = BuildOptions { bypass_checks: all_checked, spec: *spec, ..Default::default() };
    match Bicrossproduct::build(&name, d, &opts) {
        Ok(b) => report.extend(b.verify_built(spec).prefixed("built")),
        Err(e) => setup_failure(report, "built/setup".into(), &SetupError::Bicross(e), spec.seed),
    }
}

/// The structure a standalone expression is evaluated in: a named algebra,
/// or by default the built bicrossproduct when the document has a bicross
/// block and otherwise its first algebra.
pub enum Target {
    Algebra(Arc<crate::presentation::Presentation>),
    Built(Box<Bicrossproduct>),
}

impl Target {
    pub fn algebra(&self) -> &Arc<crate::presentation::Presentation> {
        match self {
            Target::Algebra(p) => p,
            Target::Built(b) => b.algebra(),
        }
    }
}

pub fn target(doc: &PresentationDoc, algebra: Option<&str>) -> Result<Target, SetupError> {
    match algebra {
        Some(n) => {
            let a = doc.algebra(n).ok_or_else(|| SetupError::UnknownAlgebra(n.to_string()))?;
            Ok(Target::Algebra(presentation_from_doc(a)?))
        }
        None if doc.bicross.is_some() => Ok(Target::Built(Box::new(build_unchecked(doc)?))),
        None => {
            let a = doc.algebras.first().ok_or_else(|| SetupError::UnknownAlgebra("<none>".into()))?;
            Ok(Target::Algebra(presentation_from_doc(a)?))
        }
    }
}

/// The bicrossproduct of the document, without running the preconditions.
pub fn build_unchecked(doc: &PresentationDoc) -> Result<Bicrossproduct, SetupError> {
    let d = Arc::new(bicross_from_doc(doc)?);
    let name = doc.name.clone().unwrap_or_else(|| "bicrossproduct".into());
    Ok(Bicrossproduct::build(&name, d, &BuildOptions { bypass_checks: true, ..Default::default() })?)
}

/// The bicrossproduct of the document after the preconditions pass.
pub fn build_checked(doc: &PresentationDoc, spec: &SampleSpec) -> Result<Bicrossproduct, SetupError> {
    let d = Arc::new(bicross_from_doc(doc)?);
    let name = doc.name.clone().unwrap_or_else(|| "bicrossproduct".into());
    Ok(Bicrossproduct::build(&name, d, &BuildOptions { spec: *spec, ..Default::default() })?)
}
