//! Documents to structures and back.

use std::sync::Arc;

use thiserror::Error;

use super::ast::*;
use crate::bicross::{BicrossData, BicrossError, Bicrossproduct};
use crate::hopf::{HopfError, HopfStructure};
use crate::kpoincare::InstanceBundle;
use crate::linear::LinComb;
use crate::presentation::{Element, GenId, Presentation, PresentationBuilder, PresentationError, Word};
use crate::tensor::{TensorElement, TensorSpace};

#[derive(Debug, Error)]
pub enum SetupError {
    #[error("algebra `{0}`: {1}")]
    Presentation(String, PresentationError),
    #[error("algebra `{0}`: {1}")]
    Hopf(String, HopfError),
    #[error(transparent)]
    Bicross(#[from] BicrossError),
    #[error("algebra `{algebra}` has no {table} entry for `{generator}`")]
    MissingEntry { algebra: String, table: &'static str, generator: String },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("the document has no bicross block")]
    NoBicross,
    #[error("`{name}` is not a generator of `{algebra}`")]
    Foreign { name: String, algebra: String },
    #[error("expected a tensor of arity {expected}")]
    Arity { expected: usize },
}

fn word_of(p: &Presentation, names: &[String]) -> Result<Word, SetupError> {
    names
        .iter()
        .map(|n| p.id(n).ok_or_else(|| SetupError::Foreign { name: n.clone(), algebra: p.name().to_string() }))
        .collect::<Result<Vec<_>, _>>()
        .map(Word)
}

fn names_of(p: &Presentation, w: &Word) -> Vec<String> {
    w.0.iter().map(|&g| p.gen_name(g).to_string()).collect()
}

/// The element denoted by `poly`, in normal form.
pub fn element_from_poly(p: &Presentation, poly: &Poly) -> Result<Element, SetupError> {
    let mut out = Element::zero();
    for (k, c) in poly.iter() {
        if k.len() != 1 {
            return Err(SetupError::Arity { expected: 1 });
        }
        out.add_term(word_of(p, &k[0])?, c.clone());
    }
    Ok(p.normal_form(&out))
}

/// The tensor denoted by `poly`, each leg in normal form.
pub fn tensor_from_poly(space: &TensorSpace, poly: &Poly) -> Result<TensorElement, SetupError> {
    let mut terms = LinComb::zero();
    for (k, c) in poly.iter() {
        if k.len() != space.arity() {
            return Err(SetupError::Arity { expected: space.arity() });
        }
        let mut expanded = LinComb::term(Vec::new(), c.clone());
        for (i, w) in k.iter().enumerate() {
            let p = space.factor(i);
            let leg = p.normal_form_word(&word_of(p, w)?);
            let mut next = LinComb::zero();
            for (prefix, a) in expanded.iter() {
                for (v, b) in leg.iter() {
                    let mut key: Vec<Word> = prefix.clone();
                    key.push(v.clone());
                    next.add_term(key, a * b);
                }
            }
            expanded = next;
        }
        terms.add_scaled(&expanded, &crate::scalar::Scalar::one());
    }
    Ok(space.from_terms(terms).expect("arity checked"))
}

pub fn poly_from_element(p: &Presentation, e: &Element) -> Poly {
    e.iter().map(|(w, c)| (vec![names_of(p, w)], c.clone())).collect()
}

pub fn poly_from_tensor(t: &TensorElement) -> Poly {
    let space = t.space();
    t.iter()
        .map(|(k, c)| (k.iter().enumerate().map(|(i, w)| names_of(space.factor(i), w)).collect(), c.clone()))
        .collect()
}

pub fn presentation_from_doc(a: &AlgebraDoc) -> Result<Arc<Presentation>, SetupError> {
    let mut b = PresentationBuilder::new(a.name.clone());
    for g in &a.generators {
        b.weighted_generator(&g.name, g.parity, g.weight);
    }
    let lookup = |n: &str| {
        b.id(n).ok_or_else(|| SetupError::Foreign { name: n.to_string(), algebra: a.name.clone() })
    };
    let mut rules = Vec::new();
    for r in &a.relations {
        let lhs = Word(vec![lookup(&r.lhs[0])?, lookup(&r.lhs[1])?]);
        let mut rhs = Element::zero();
        for (k, c) in r.rhs.iter() {
            if k.len() != 1 {
                return Err(SetupError::Arity { expected: 1 });
            }
            let w = k[0].iter().map(|n| lookup(n)).collect::<Result<Vec<GenId>, _>>()?;
            rhs.add_term(Word(w), c.clone());
        }
        rules.push((lhs, rhs));
    }
    for (lhs, rhs) in rules {
        b.rule(lhs, rhs);
    }
    b.build().map(Arc::new).map_err(|e| SetupError::Presentation(a.name.clone(), e))
}

/// True when the block declares any Hopf table entry.
pub fn has_hopf_tables(a: &AlgebraDoc) -> bool {
    !(a.coproduct.is_empty() && a.counit.is_empty() && a.antipode.is_empty())
}

pub fn hopf_from_doc(a: &AlgebraDoc) -> Result<HopfStructure, SetupError> {
    let p = presentation_from_doc(a)?;
    hopf_on(&p, a)
}

fn hopf_on(p: &Arc<Presentation>, a: &AlgebraDoc) -> Result<HopfStructure, SetupError> {
    let square = TensorSpace::power(p, 2);
    let missing = |table: &'static str, g: &str| SetupError::MissingEntry {
        algebra: a.name.clone(),
        table,
        generator: g.to_string(),
    };
    let (mut coproduct, mut counit, mut antipode) = (Vec::new(), Vec::new(), Vec::new());
    for g in &a.generators {
        let d = a.coproduct.iter().find(|(x, _)| *x == g.name).ok_or_else(|| missing("coproduct", &g.name))?;
        coproduct.push(tensor_from_poly(&square, &d.1)?);
        let e = a.counit.iter().find(|(x, _)| *x == g.name).ok_or_else(|| missing("counit", &g.name))?;
        counit.push(e.1.clone());
        let s = a.antipode.iter().find(|(x, _)| *x == g.name).ok_or_else(|| missing("antipode", &g.name))?;
        antipode.push(element_from_poly(p, &s.1)?);
    }
    HopfStructure::new(p.clone(), coproduct, counit, antipode).map_err(|e| SetupError::Hopf(a.name.clone(), e))
}

/// Action and coaction from the bicross block; missing action entries are
/// zero, missing coaction entries are `1 @ h`.
pub fn bicross_from_doc(doc: &PresentationDoc) -> Result<BicrossData, SetupError> {
    let b = doc.bicross.as_ref().ok_or(SetupError::NoBicross)?;
    let find = |n: &str| doc.algebra(n).ok_or_else(|| SetupError::UnknownAlgebra(n.to_string()));
    let (d1, d2) = (find(&b.acting)?, find(&b.acted)?);
    let h1 = Arc::new(hopf_from_doc(d1)?);
    let h2 = Arc::new(hopf_from_doc(d2)?);
    let (p1, p2) = (h1.algebra().clone(), h2.algebra().clone());
    let mut action = vec![vec![Element::zero(); p1.num_generators()]; p2.num_generators()];
    for (a, h, v) in &b.action {
        let ai = word_of(&p2, std::slice::from_ref(a))?.0[0] as usize;
        let hi = word_of(&p1, std::slice::from_ref(h))?.0[0] as usize;
        action[ai][hi] = element_from_poly(&p2, v)?;
    }
    let mixed = TensorSpace::new(vec![p2.clone(), p1.clone()]);
    let mut coaction: Vec<TensorElement> =
        (0..p1.num_generators() as GenId).map(|g| mixed.from_elements(&[&p2.one(), &p1.letter(g)])).collect();
    for (h, v) in &b.coaction {
        let hi = word_of(&p1, std::slice::from_ref(h))?.0[0] as usize;
        coaction[hi] = tensor_from_poly(&mixed, v)?;
    }
    Ok(BicrossData::new(h1, h2, action, coaction)?)
}

/// The block describing a Hopf structure, named after its presentation.
pub fn algebra_doc(h: &HopfStructure) -> AlgebraDoc {
    let p = h.algebra();
    let mut a = presentation_doc(p);
    for g in 0..p.num_generators() as GenId {
        let name = p.gen_name(g).to_string();
        a.coproduct.push((name.clone(), poly_from_tensor(&h.coproduct_table()[g as usize])));
        a.counit.push((name.clone(), h.counit_table()[g as usize].clone()));
        a.antipode.push((name, poly_from_element(p, &h.antipode_table()[g as usize])));
    }
    a
}

/// Generators and relations only.
pub fn presentation_doc(p: &Presentation) -> AlgebraDoc {
    AlgebraDoc {
        name: p.name().to_string(),
        generators: p
            .generators()
            .iter()
            .map(|g| GeneratorDoc { name: g.name.clone(), parity: g.parity, weight: g.weight })
            .collect(),
        relations: p
            .rules()
            .iter()
            .map(|r| RelationDoc {
                lhs: [p.gen_name(r.lhs[0]).to_string(), p.gen_name(r.lhs[1]).to_string()],
                rhs: poly_from_element(p, &r.rhs),
            })
            .collect(),
        ..Default::default()
    }
}

/// Both factors and the bicross block of `d`; zero action entries are
/// omitted.
pub fn bicross_docs(d: &BicrossData) -> (AlgebraDoc, AlgebraDoc, BicrossDoc) {
    let (p1, p2) = (d.h1().algebra(), d.h2().algebra());
    let mut b = BicrossDoc { acting: p1.name().to_string(), acted: p2.name().to_string(), ..Default::default() };
    for (a, row) in d.action_table().iter().enumerate() {
        for (h, v) in row.iter().enumerate() {
            if !v.is_zero() {
                b.action.push((p2.gen_name(a as GenId).to_string(), p1.gen_name(h as GenId).to_string(), poly_from_element(p2, v)));
            }
        }
    }
    for (h, t) in d.coaction_table().iter().enumerate() {
        b.coaction.push((p1.gen_name(h as GenId).to_string(), poly_from_tensor(t)));
    }
    (algebra_doc(d.h1()), algebra_doc(d.h2()), b)
}

/// The document of a programmatic instance.
pub fn bundle_doc(bundle: &InstanceBundle, checks: Option<CheckDirectives>) -> PresentationDoc {
    let (a1, a2, b) = bicross_docs(&bundle.data);
    PresentationDoc {
        name: Some(bundle.name.clone()),
        conventions: bundle.conventions.clone(),
        notes: bundle.annotations.clone(),
        symbols: vec![],
        algebras: vec![a1, a2],
        bicross: Some(b),
        checks,
    }
}

/// A single-algebra document for the built bicrossproduct, keeping the
/// header of `source` and the checks that apply to a plain Hopf algebra.
pub fn built_doc(built: &Bicrossproduct, source: &PresentationDoc) -> PresentationDoc {
    let checks = source.checks.as_ref().map(|c| CheckDirectives {
        suites: c.suites.iter().copied().filter(|s| matches!(s, Suite::Confluence | Suite::Bialgebra | Suite::Antipode)).collect(),
        ..c.clone()
    });
    PresentationDoc {
        name: source.name.as_ref().map(|n| format!("{n}_built")),
        conventions: source.conventions.clone(),
        notes: source.notes.clone(),
        symbols: source.symbols.clone(),
        algebras: vec![algebra_doc(built.hopf())],
        bicross: None,
        checks,
    }
}
