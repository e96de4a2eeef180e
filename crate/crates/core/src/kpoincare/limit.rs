//! The limit `k^-1 -> 0` and the undeformed supergroup it should reproduce.

use std::sync::Arc;

use thiserror::Error;

use super::{commuting_rules, grassmann_rules, make_kappa_action_coaction, make_super_lorentz, primitive_tables, KappaConventions, SpinorConventions};
use crate::bicross::{BicrossData, BicrossError};
use crate::hopf::{HopfError, HopfStructure};
use crate::presentation::{Element, GenId, Parity, Presentation, PresentationBuilder, PresentationError, Word};
use crate::report::{Report, Status};
use crate::scalar::{Scalar, ScalarError};
use crate::tensor::{TensorElement, TensorSpace};

#[derive(Debug, Error)]
pub enum LimitError {
    #[error(transparent)]
    Divergent(#[from] ScalarError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Bicross(#[from] BicrossError),
}

const ANCHOR: &str = "the limit k^-1 -> 0 is the undeformed structure";

/// Applies `classical_limit` to every coefficient, remembering the first
/// divergence.
struct Limit(Option<ScalarError>);

impl Limit {
    fn scalar(&mut self, c: &Scalar) -> Scalar {
        c.classical_limit().unwrap_or_else(|e| {
            self.0.get_or_insert(e);
            Scalar::zero()
        })
    }

    fn element(&mut self, e: &Element) -> Element {
        e.map_coefficients(|c| self.scalar(c))
    }

    fn tensor(&mut self, space: &TensorSpace, t: &TensorElement) -> TensorElement {
        space.from_terms(t.terms().map_coefficients(|c| self.scalar(c))).expect("same arity")
    }

    fn finish<T>(self, value: T) -> Result<T, LimitError> {
        match self.0 {
            Some(e) => Err(e.into()),
            None => Ok(value),
        }
    }
}

/// The presentation with the limit taken in every rule tail.
pub fn classical_limit_presentation(p: &Presentation) -> Result<Presentation, LimitError> {
    let mut lim = Limit(None);
    let mut b = PresentationBuilder::new(p.name());
    for g in p.generators() {
        b.weighted_generator(&g.name, g.parity, g.weight);
    }
    for r in p.rules() {
        b.rule(Word(r.lhs.to_vec()), lim.element(&r.rhs));
    }
    let q = lim.finish(b)?.build()?;
    Ok(q)
}

/// Rule tails and coproduct, counit and antipode tables in the limit.
pub fn classical_limit_hopf(h: &HopfStructure) -> Result<HopfStructure, LimitError> {
    let p = Arc::new(classical_limit_presentation(h.algebra())?);
    let mut lim = Limit(None);
    let out = h.map_coefficients(p, |c| lim.scalar(c));
    Ok(lim.finish(out)??)
}

/// Both factors, the action and the coaction in the limit.
pub fn classical_limit_data(d: &BicrossData) -> Result<BicrossData, LimitError> {
    let h1 = Arc::new(classical_limit_hopf(d.h1())?);
    let h2 = Arc::new(classical_limit_hopf(d.h2())?);
    let mixed = TensorSpace::new(vec![h2.algebra().clone(), h1.algebra().clone()]);
    let mut lim = Limit(None);
    let action = d.action_table().iter().map(|row| row.iter().map(|e| lim.element(e)).collect()).collect();
    let coaction = d.coaction_table().iter().map(|t| lim.tensor(&mixed, t)).collect();
    let (action, coaction) = lim.finish((action, coaction))?;
    Ok(BicrossData::new(h1, h2, action, coaction)?)
}

/// `C(x_mu, theta_a)` with all generators graded-commuting and primitive.
pub fn make_super_translations() -> HopfStructure {
    let mut b = PresentationBuilder::new("chiral_superspace");
    let z: Vec<GenId> = (0..4).map(|m| b.generator(&format!("z{m}"), Parity::Even)).collect();
    let t: Vec<GenId> = (1..=2).map(|a| b.generator(&format!("t{a}"), Parity::Odd)).collect();
    for &ta in &t {
        for &zm in &z {
            b.rule(Word(vec![ta, zm]), Element::basis(Word(vec![zm, ta])));
        }
    }
    commuting_rules(&mut b, &z, &[]);
    grassmann_rules(&mut b, &t);
    let p = Arc::new(b.build().expect("super translation presentation"));
    let (d, e, s) = primitive_tables(&p);
    HopfStructure::new(p, d, e, s).expect("super translation tables")
}

/// The undeformed N=1 Poincare supergroup as a semidirect product: trivial
/// action and the kappa coaction, which carries no `k`.
pub fn make_undeformed_supergroup(conv: &SpinorConventions, kc: &KappaConventions) -> BicrossData {
    let h1 = Arc::new(make_super_translations());
    let h2 = Arc::new(make_super_lorentz());
    let mixed = TensorSpace::new(vec![h2.algebra().clone(), h1.algebra().clone()]);
    let kappa = make_kappa_action_coaction(conv, kc);
    let coaction = kappa.coaction_table().iter().map(|t| mixed.from_terms(t.terms().clone()).expect("same arity")).collect();
    let action = vec![vec![Element::zero(); h1.algebra().num_generators()]; h2.algebra().num_generators()];
    BicrossData::new(h1, h2, action, coaction).expect("semidirect tables are well-formed")
}

fn compare(report: &mut Report, id: String, equal: bool, detail: impl FnOnce() -> String) {
    let (status, detail) = if equal { (Status::Pass, String::new()) } else { (Status::Fail, detail()) };
    report.push(id, ANCHOR, status, detail, 0);
}

/// Generator lists, every rewrite rule and the Hopf tables, compared entry
/// by entry.
pub fn compare_structures(left: &HopfStructure, right: &HopfStructure) -> Report {
    let mut report = Report::new();
    let (p, q) = (left.algebra(), right.algebra());
    let gens = |x: &Presentation| x.generators().iter().map(|g| (g.name.clone(), g.parity)).collect::<Vec<_>>();
    compare(&mut report, "generators".into(), gens(p) == gens(q), || format!("{:?} vs {:?}", gens(p), gens(q)));
    if gens(p) != gens(q) {
        return report;
    }
    let n = p.num_generators() as GenId;
    for a in 0..n {
        for b in 0..n {
            let (l, r) = (p.rule_for(a, b).map(|r| &r.rhs), q.rule_for(a, b).map(|r| &r.rhs));
            if l.is_none() && r.is_none() {
                continue;
            }
            let name = format!("rule/{}*{}", p.gen_name(a), p.gen_name(b));
            compare(&mut report, name, l == r, || {
                let show = |x: Option<&Element>, y: &Presentation| x.map_or("no rule".to_string(), |e| y.render(e));
                format!("{} vs {}", show(l, p), show(r, q))
            });
        }
    }
    for g in 0..n as usize {
        let name = p.gen_name(g as GenId);
        let (dl, dr) = (left.coproduct_table()[g].terms(), right.coproduct_table()[g].terms());
        compare(&mut report, format!("coproduct/{name}"), dl == dr, || {
            format!("{} vs {}", left.coproduct_table()[g], right.coproduct_table()[g])
        });
        let (el, er) = (&left.counit_table()[g], &right.counit_table()[g]);
        compare(&mut report, format!("counit/{name}"), el == er, || format!("{el} vs {er}"));
        let (sl, sr) = (&left.antipode_table()[g], &right.antipode_table()[g]);
        compare(&mut report, format!("antipode/{name}"), sl == sr, || format!("{} vs {}", p.render(sl), q.render(sr)));
    }
    report.sorted()
}

/// `ab = (-1)^(p(a)p(b)) ba` for all generators, so odd squares vanish.
pub fn is_supercommutative(p: &Presentation) -> bool {
    let n = p.num_generators() as GenId;
    (0..n).all(|a| {
        (a..n).all(|b| {
            let sign = if p.parity(a).is_odd() && p.parity(b).is_odd() { -1 } else { 1 };
            let ab = p.normal_form_word(&Word(vec![a, b]));
            let ba = p.normal_form_word(&Word(vec![b, a]));
            ab.sub(&ba.scale(&Scalar::from_int(sign))).is_zero()
        })
    })
}
