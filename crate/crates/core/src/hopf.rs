//! Hopf superalgebra structures given by tables on generators.
//!
//! The coproduct and counit extend multiplicatively (through the graded
//! tensor product), the antipode anti-multiplicatively with the sign
//! `S(xy) = (-1)^(p(x)p(y)) S(y) S(x)`. Tables are checked against every
//! rewrite rule, so the extensions are well defined on the quotient.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::linear::LinComb;
use crate::presentation::{koszul, Element, GenId, Presentation, Word};
use crate::report::Report;
use crate::sample::{sample_words, SampleSpec};
use crate::scalar::Scalar;
use crate::tensor::{TensorElement, TensorKey, TensorSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("table for `{table}` has {found} entries, presentation has {expected} generators")]
    TableSize { table: &'static str, expected: usize, found: usize },
    #[error("{table} of `{generator}` does not preserve parity")]
    ParityViolation { table: &'static str, generator: String },
    #[error("coproduct of `{0}` is not in the tensor square of its algebra")]
    WrongSpace(String),
}

pub struct HopfStructure {
    algebra: Arc<Presentation>,
    square: TensorSpace,
    coproduct: Vec<TensorElement>,
    counit: Vec<Scalar>,
    antipode: Vec<Element>,
    delta_cache: RwLock<HashMap<Word, LinComb<TensorKey>>>,
    antipode_cache: RwLock<HashMap<Word, Element>>,
}

impl std::fmt::Debug for HopfStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HopfStructure").field("algebra", &self.algebra.name()).finish()
    }
}

impl Clone for HopfStructure {
    fn clone(&self) -> Self {
        HopfStructure {
            algebra: self.algebra.clone(),
            square: self.square.clone(),
            coproduct: self.coproduct.clone(),
            counit: self.counit.clone(),
            antipode: self.antipode.clone(),
            delta_cache: RwLock::new(HashMap::new()),
            antipode_cache: RwLock::new(HashMap::new()),
        }
    }
}

pub const ANCHOR_COASSOC: &str = "(Delta@1)Delta = (1@Delta)Delta";
pub const ANCHOR_COUNIT: &str = "(eps@1)Delta = (1@eps)Delta = id";
pub const ANCHOR_WELL_DEFINED: &str = "structure maps respect the defining relations";
pub const ANCHOR_ANTIPODE: &str = "m(S@1)Delta = m(1@S)Delta = eps 1";
pub const ANCHOR_ANTIPODE_COPRODUCT: &str = "(S@S)Delta = sigma Delta S";

impl HopfStructure {
    pub fn new(
        algebra: Arc<Presentation>,
        coproduct: Vec<TensorElement>,
        counit: Vec<Scalar>,
        antipode: Vec<Element>,
    ) -> Result<Self, HopfError> {
        let n = algebra.num_generators();
        for (table, found) in [("coproduct", coproduct.len()), ("counit", counit.len()), ("antipode", antipode.len())] {
            if found != n {
                return Err(HopfError::TableSize { table, expected: n, found });
            }
        }
        let square = TensorSpace::power(&algebra, 2);
        for g in 0..n as GenId {
            let name = algebra.gen_name(g).to_string();
            let p = algebra.parity(g);
            let d = &coproduct[g as usize];
            if d.space() != &square {
                return Err(HopfError::WrongSpace(name));
            }
            if d.iter().any(|(k, _)| algebra.word_parity(&k[0]) + algebra.word_parity(&k[1]) != p) {
                return Err(HopfError::ParityViolation { table: "coproduct", generator: name });
            }
            if p.is_odd() && !counit[g as usize].is_zero() {
                return Err(HopfError::ParityViolation { table: "counit", generator: name });
            }
            if antipode[g as usize].keys().any(|w| algebra.word_parity(w) != p) {
                return Err(HopfError::ParityViolation { table: "antipode", generator: name });
            }
        }
        Ok(HopfStructure { algebra, square, coproduct, counit, antipode, delta_cache: RwLock::new(HashMap::new()), antipode_cache: RwLock::new(HashMap::new()) })
    }

    pub fn algebra(&self) -> &Arc<Presentation> {
        &self.algebra
    }

    pub fn square(&self) -> &TensorSpace {
        &self.square
    }

    pub fn coproduct_table(&self) -> &[TensorElement] {
        &self.coproduct
    }

    pub fn counit_table(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode_table(&self) -> &[Element] {
        &self.antipode
    }

    /// Coproduct of a (not necessarily normal) word.
    pub fn coproduct_word(&self, w: &Word) -> LinComb<TensorKey> {
        if w.is_unit() {
            return LinComb::basis(vec![Word::unit(), Word::unit()]);
        }
        if w.len() == 1 {
            return self.coproduct[w.0[0] as usize].terms().clone();
        }
        if let Some(hit) = self.delta_cache.read().unwrap().get(w) {
            return hit.clone();
        }
        let (head, last) = w.0.split_at(w.len() - 1);
        let left = self.coproduct_word(&Word(head.to_vec()));
        let right = self.coproduct[last[0] as usize].terms();
        let out = self.square.mul_terms(&left, right);
        self.delta_cache.write().unwrap().insert(w.clone(), out.clone());
        out
    }

    pub fn coproduct(&self, e: &Element) -> TensorElement {
        let terms = e.linear_map(|w| self.coproduct_word(w));
        self.square.from_terms(terms).expect("arity two")
    }

    pub fn counit_word(&self, w: &Word) -> Scalar {
        w.0.iter().fold(Scalar::one(), |acc, &g| &acc * &self.counit[g as usize])
    }

    pub fn counit(&self, e: &Element) -> Scalar {
        let mut out = Scalar::zero();
        for (w, c) in e.iter() {
            out += &(c * &self.counit_word(w));
        }
        out
    }

    /// Antipode of a word, in normal form.
    pub fn antipode_word(&self, w: &Word) -> Element {
        if w.len() <= 1 {
            return match w.0.first() {
                None => self.algebra.one(),
                Some(&g) => self.algebra.normal_form(&self.antipode[g as usize]),
            };
        }
        if let Some(hit) = self.antipode_cache.read().unwrap().get(w) {
            return hit.clone();
        }
        // S(ug) = (-1)^(p(u)p(g)) S(g) S(u)
        let (head, last) = w.0.split_at(w.len() - 1);
        let head = Word(head.to_vec());
        let g = last[0];
        let mut out = self.algebra.mul(&self.antipode[g as usize], &self.antipode_word(&head));
        if koszul(self.algebra.word_parity(&head), self.algebra.parity(g)) {
            out = out.neg();
        }
        self.antipode_cache.write().unwrap().insert(w.clone(), out.clone());
        out
    }

    pub fn antipode(&self, e: &Element) -> Element {
        e.linear_map(|w| self.antipode_word(w))
    }

    /// `m(S (x) 1)Delta(e)` when `left` is true, `m(1 (x) S)Delta(e)` otherwise.
    pub fn antipode_convolution(&self, e: &Element, left: bool) -> Element {
        let d = self.coproduct(e);
        let mut out = Element::zero();
        for (k, c) in d.iter() {
            let (a, b) = if left {
                (self.antipode_word(&k[0]), Element::basis(k[1].clone()))
            } else {
                (Element::basis(k[0].clone()), self.antipode_word(&k[1]))
            };
            out.add_scaled(&self.algebra.mul(&a, &b), c);
        }
        out
    }

    fn coassociativity(&self, e: &Element) -> (TensorElement, TensorElement) {
        let d = self.coproduct(e);
        let alg = &self.algebra;
        let l = d.apply_factorwise(0, alg, &self.square, |w| self.coproduct_word(w)).unwrap();
        let r = d.apply_factorwise(1, alg, &self.square, |w| self.coproduct_word(w)).unwrap();
        (l, r)
    }

    fn counit_sides(&self, e: &Element) -> (Element, Element) {
        let d = self.coproduct(e);
        let mut l = Element::zero();
        let mut r = Element::zero();
        for (k, c) in d.iter() {
            l.add_term(k[1].clone(), c * &self.counit_word(&k[0]));
            r.add_term(k[0].clone(), c * &self.counit_word(&k[1]));
        }
        (l, r)
    }

    /// Elements on which the axioms are checked: all generators, then sampled
    /// normal words.
    pub fn check_elements(&self, spec: &SampleSpec, stream: u64) -> Vec<Word> {
        let mut words: Vec<Word> = (0..self.algebra.num_generators() as GenId).map(Word::letter).collect();
        for w in sample_words(&self.algebra, spec, stream) {
            if w.len() > 1 {
                words.push(w);
            }
        }
        words
    }

    /// Coassociativity, counit laws, and compatibility of all three tables
    /// with every rewrite rule.
    pub fn verify_bialgebra(&self, spec: &SampleSpec) -> Report {
        let mut report = Report::new();
        let alg = &self.algebra;
        let seed = spec.seed;
        for w in self.check_elements(spec, 1) {
            self.coalgebra_axioms(&alg.render_word(&w), &Element::basis(w), seed, &mut report);
        }
        for rule in alg.rules() {
            let lhs = Word(rule.lhs.to_vec());
            let name = alg.render_word(&lhs);
            let dl = self.square.from_terms(self.coproduct_word(&lhs)).unwrap();
            let dr = self.coproduct(&rule.rhs);
            report.compare(format!("relation-coproduct/{name}"), ANCHOR_WELL_DEFINED, dl == dr, || dl.render(), || dr.render(), seed);
            let (el, er) = (self.counit_word(&lhs), self.counit(&rule.rhs));
            report.compare(format!("relation-counit/{name}"), ANCHOR_WELL_DEFINED, el == er, || el.to_string(), || er.to_string(), seed);
            let sl = self.antipode_word(&lhs);
            let sr = self.antipode(&alg.normal_form(&rule.rhs));
            let sl = alg.normal_form(&sl);
            report.compare(format!("relation-antipode/{name}"), ANCHOR_WELL_DEFINED, sl == sr, || alg.render(&sl), || alg.render(&sr), seed);
        }
        report
    }

    /// Coassociativity and both counit laws on one element.
    pub fn coalgebra_axioms(&self, name: &str, e: &Element, seed: u64, report: &mut Report) {
        let alg = &self.algebra;
        let (l, r) = self.coassociativity(e);
        report.compare(format!("coassoc/{name}"), ANCHOR_COASSOC, l == r, || l.render(), || r.render(), seed);
        let e = alg.normal_form(e);
        let (cl, cr) = self.counit_sides(&e);
        let ok = alg.normal_form(&cl) == e && alg.normal_form(&cr) == e;
        report.compare(format!("counit/{name}"), ANCHOR_COUNIT, ok, || alg.render(&cl), || alg.render(&cr), seed);
    }

    /// Both antipode axioms on one element.
    pub fn antipode_axioms(&self, name: &str, e: &Element, seed: u64, report: &mut Report) {
        let alg = &self.algebra;
        let target = alg.scalar(self.counit(e));
        for (side, left) in [("left", true), ("right", false)] {
            let got = self.antipode_convolution(e, left);
            report.compare(format!("antipode-{side}/{name}"), ANCHOR_ANTIPODE, got == target, || alg.render(&got), || alg.render(&target), seed);
        }
    }

    /// Both antipode axioms; `(S (x) S)Delta = sigma Delta S` on generators.
    pub fn verify_antipode(&self, spec: &SampleSpec) -> Report {
        let mut report = Report::new();
        let alg = &self.algebra;
        let seed = spec.seed;
        for w in self.check_elements(spec, 2) {
            let name = alg.render_word(&w);
            let e = Element::basis(w.clone());
            self.antipode_axioms(&name, &e, seed, &mut report);
            if w.len() > 1 {
                continue;
            }
            let d = self.coproduct(&e);
            let ss = d
                .map_factor(0, alg, alg, |v| self.antipode_word(v))
                .and_then(|t| t.map_factor(1, alg, alg, |v| self.antipode_word(v)))
                .unwrap();
            let flipped = self.coproduct(&self.antipode(&e)).graded_flip(0).unwrap();
            report.compare(format!("antipode-coproduct/{name}"), ANCHOR_ANTIPODE_COPRODUCT, ss == flipped, || ss.render(), || flipped.render(), seed);
        }
        report
    }

    /// The same structure with every coefficient passed through `f` (used for
    /// the classical limit). Rules are rebuilt from the mapped tails.
    pub fn map_coefficients(
        &self,
        algebra: Arc<Presentation>,
        mut f: impl FnMut(&Scalar) -> Scalar,
    ) -> Result<HopfStructure, HopfError> {
        let square = TensorSpace::power(&algebra, 2);
        let coproduct = self
            .coproduct
            .iter()
            .map(|d| square.from_terms(d.terms().map_coefficients(&mut f)).unwrap())
            .collect();
        let counit = self.counit.iter().map(&mut f).collect();
        let antipode = self.antipode.iter().map(|s| s.map_coefficients(&mut f)).collect();
        HopfStructure::new(algebra, coproduct, counit, antipode)
    }
}

/// Koszul sign of reversing a word: `(-1)^(number of odd pairs)`.
pub fn reversal_sign(alg: &Presentation, w: &Word) -> bool {
    let mut odd_seen = 0usize;
    let mut pairs = 0usize;
    for &g in &w.0 {
        if alg.parity(g).is_odd() {
            pairs += odd_seen;
            odd_seen += 1;
        }
    }
    pairs % 2 == 1
}

/// `(-1)^(p q)` as a scalar factor.
pub fn sign_scalar(negative: bool) -> Scalar {
    if negative {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

pub(crate) fn koszul_words(alg_a: &Presentation, a: &Word, alg_b: &Presentation, b: &Word) -> bool {
    koszul(alg_a.word_parity(a), alg_b.word_parity(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{Parity, PresentationBuilder};
    use crate::sample::DEFAULT_SEED;

    fn grassmann() -> Arc<Presentation> {
        let mut b = PresentationBuilder::new("grassmann");
        let t1 = b.generator("t1", Parity::Odd);
        let t2 = b.generator("t2", Parity::Odd);
        b.rule(Word(vec![t1, t1]), Element::zero());
        b.rule(Word(vec![t2, t2]), Element::zero());
        b.rule(Word(vec![t2, t1]), Element::term(Word(vec![t1, t2]), Scalar::from_int(-1)));
        Arc::new(b.build().unwrap())
    }

    fn primitive_structure(p: &Arc<Presentation>, drop_right: bool) -> HopfStructure {
        let sq = TensorSpace::power(p, 2);
        let n = p.num_generators() as GenId;
        let delta = (0..n)
            .map(|g| {
                let mut t = LinComb::zero();
                t.add_term(vec![Word::letter(g), Word::unit()], Scalar::one());
                if !drop_right {
                    t.add_term(vec![Word::unit(), Word::letter(g)], Scalar::one());
                }
                sq.from_terms(t).unwrap()
            })
            .collect();
        let antipode = (0..n).map(|g| p.letter(g).neg()).collect();
        HopfStructure::new(p.clone(), delta, vec![Scalar::zero(); n as usize], antipode).unwrap()
    }

    fn spec() -> SampleSpec {
        SampleSpec::new(3, 50, DEFAULT_SEED)
    }

    #[test]
    fn coproduct_of_odd_product() {
        let p = grassmann();
        let h = primitive_structure(&p, false);
        let d = h.coproduct_word(&Word(vec![0, 1]));
        let mut expected = LinComb::zero();
        expected.add_term(vec![Word(vec![0, 1]), Word::unit()], Scalar::one());
        expected.add_term(vec![Word(vec![0]), Word(vec![1])], Scalar::one());
        expected.add_term(vec![Word(vec![1]), Word(vec![0])], Scalar::from_int(-1));
        expected.add_term(vec![Word::unit(), Word(vec![0, 1])], Scalar::one());
        assert_eq!(d, expected);
    }

    #[test]
    fn antipode_and_counit_of_odd_product() {
        let p = grassmann();
        let h = primitive_structure(&p, false);
        assert_eq!(h.antipode_word(&Word(vec![0, 1])), Element::basis(Word(vec![0, 1])));
        assert_eq!(h.antipode_word(&Word(vec![0])), p.letter(0).neg());
        assert!(h.counit_word(&Word(vec![0])).is_zero());
        assert!(h.counit_word(&Word::unit()).is_one());
    }

    #[test]
    fn primitive_grassmann_passes_everything() {
        let p = grassmann();
        let h = primitive_structure(&p, false);
        let r = h.verify_bialgebra(&spec());
        assert!(r.passed(), "{:?}", r.failures());
        let r = h.verify_antipode(&spec());
        assert!(r.passed(), "{:?}", r.failures());
        assert!(r.num_checks() > 0);
    }

    #[test]
    fn dropped_leg_breaks_counit_law() {
        let p = grassmann();
        let h = primitive_structure(&p, true);
        let r = h.verify_bialgebra(&spec());
        assert!(r.failures().iter().any(|f| f.id.starts_with("counit/") && f.id.ends_with("/t1")), "{:?}", r.failures());
    }

    #[test]
    fn parity_violations_are_rejected() {
        let p = grassmann();
        let sq = TensorSpace::power(&p, 2);
        let delta: Vec<_> = (0..2).map(|g| sq.simple(vec![Word::letter(g), Word::unit()], Scalar::one())).collect();
        let bad_antipode = vec![p.one(), p.letter(1)];
        let err = HopfStructure::new(p.clone(), delta.clone(), vec![Scalar::zero(); 2], bad_antipode).unwrap_err();
        assert!(matches!(err, HopfError::ParityViolation { table: "antipode", .. }));
        let err = HopfStructure::new(p.clone(), delta, vec![Scalar::one(), Scalar::zero()], vec![p.letter(0), p.letter(1)]).unwrap_err();
        assert!(matches!(err, HopfError::ParityViolation { table: "counit", .. }));
    }
}
