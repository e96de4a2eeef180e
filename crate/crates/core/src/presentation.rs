//! Finitely presented Z2-graded algebras with unit.
//!
//! Every relation is an oriented rewrite rule whose left side is a
//! two-letter word. Rules must strictly decrease the monomial order
//! (weighted degree, then lexicographic by generator index), which makes
//! rewriting terminate; [`Presentation::local_confluence_check`] tests the
//! overlaps so that normal forms are unique.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use thiserror::Error;

use crate::linear::LinComb;
use crate::scalar::Scalar;

pub type GenId = u16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() + o.bit())
    }
}

/// `(-1)^(p*q)`
pub fn koszul(p: Parity, q: Parity) -> bool {
    p.is_odd() && q.is_odd()
}

/// A word in the generators; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub Vec<GenId>);

impl Word {
    pub fn unit() -> Word {
        Word(Vec::new())
    }

    pub fn letter(g: GenId) -> Word {
        Word(vec![g])
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

pub type Element = LinComb<Word>;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ElementParity {
    Zero,
    Even,
    Odd,
    Mixed,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorDecl {
    pub name: String,
    pub parity: Parity,
    pub order_index: usize,
    pub weight: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteRule {
    pub lhs: [GenId; 2],
    pub rhs: Element,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("rule {lhs} -> {rhs} does not decrease the monomial order")]
    NonTerminatingRule { lhs: String, rhs: String },
    #[error("no rule for the word {0}")]
    MissingRule(String),
    #[error("two rules rewrite {0}")]
    DuplicateRule(String),
    #[error("malformed rule: {0}")]
    InvalidRule(String),
    #[error("element does not belong to presentation `{0}`")]
    MixedPresentation(String),
    #[error("generator weight must be positive (`{0}`)")]
    ZeroWeight(String),
}

/// Incremental construction of a [`Presentation`]: generators are ordered by
/// declaration.
#[derive(Clone, Debug, Default)]
pub struct PresentationBuilder {
    name: String,
    generators: Vec<GeneratorDecl>,
    rules: Vec<(Word, Element)>,
}

impl PresentationBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        PresentationBuilder { name: name.into(), ..Default::default() }
    }

    pub fn generator(&mut self, name: &str, parity: Parity) -> GenId {
        self.weighted_generator(name, parity, 1)
    }

    pub fn weighted_generator(&mut self, name: &str, parity: Parity, weight: u32) -> GenId {
        let id = self.generators.len();
        self.generators.push(GeneratorDecl {
            name: name.to_string(),
            parity,
            order_index: id,
            weight,
        });
        id as GenId
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name).map(|i| i as GenId)
    }

    pub fn rule(&mut self, lhs: Word, rhs: Element) -> &mut Self {
        self.rules.push((lhs, rhs));
        self
    }

    pub fn generators(&self) -> &[GeneratorDecl] {
        &self.generators
    }

    pub fn build(self) -> Result<Presentation, PresentationError> {
        Presentation::new(self.name, self.generators, self.rules)
    }
}

pub struct Presentation {
    name: String,
    generators: Vec<GeneratorDecl>,
    rules: Vec<RewriteRule>,
    rule_at: HashMap<(GenId, GenId), usize>,
    cache: RwLock<HashMap<(Word, GenId), Element>>,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("name", &self.name)
            .field("generators", &self.generators)
            .field("rules", &self.rules.len())
            .finish()
    }
}

#[derive(Clone, Debug)]
pub struct Mismatch {
    pub word: Word,
    pub left: Element,
    pub right: Element,
}

#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub overlaps_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<GeneratorDecl>,
        raw_rules: Vec<(Word, Element)>,
    ) -> Result<Self, PresentationError> {
        let name = name.into();
        let mut seen = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if seen.insert(g.name.clone(), i).is_some() {
                return Err(PresentationError::DuplicateGenerator(g.name.clone()));
            }
            if g.weight == 0 {
                return Err(PresentationError::ZeroWeight(g.name.clone()));
            }
        }
        let mut p = Presentation {
            name,
            generators,
            rules: Vec::new(),
            rule_at: HashMap::new(),
            cache: RwLock::new(HashMap::new()),
        };
        let n = p.generators.len();
        for (lhs, rhs) in raw_rules {
            for w in std::iter::once(&lhs).chain(rhs.keys()) {
                if w.0.iter().any(|&g| g as usize >= n) {
                    return Err(PresentationError::InvalidRule(
                        "rule mentions a generator outside the presentation".into(),
                    ));
                }
            }
            if lhs.len() != 2 {
                return Err(PresentationError::InvalidRule(format!(
                    "left side {} must be a two-letter word",
                    p.render_word(&lhs)
                )));
            }
            if rhs.keys().any(|w| p.compare_words(w, &lhs) != Ordering::Less) {
                return Err(PresentationError::NonTerminatingRule {
                    lhs: p.render_word(&lhs),
                    rhs: p.render(&rhs),
                });
            }
            let key = (lhs.0[0], lhs.0[1]);
            if p.rule_at.contains_key(&key) {
                return Err(PresentationError::DuplicateRule(p.render_word(&lhs)));
            }
            p.rule_at.insert(key, p.rules.len());
            p.rules.push(RewriteRule { lhs: [key.0, key.1], rhs });
        }
        for a in 0..n as GenId {
            for b in 0..=a {
                let needs = if a == b { p.parity(a).is_odd() } else { true };
                if needs && !p.rule_at.contains_key(&(a, b)) {
                    return Err(PresentationError::MissingRule(p.render_word(&Word(vec![a, b]))));
                }
            }
        }
        Ok(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[GeneratorDecl] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn rule_for(&self, a: GenId, b: GenId) -> Option<&RewriteRule> {
        self.rule_at.get(&(a, b)).map(|&i| &self.rules[i])
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name).map(|i| i as GenId)
    }

    pub fn gen_name(&self, g: GenId) -> &str {
        &self.generators[g as usize].name
    }

    pub fn parity(&self, g: GenId) -> Parity {
        self.generators[g as usize].parity
    }

    pub fn word_parity(&self, w: &Word) -> Parity {
        w.0.iter().fold(Parity::Even, |p, &g| p + self.parity(g))
    }

    pub fn weighted_degree(&self, w: &Word) -> u64 {
        w.0.iter().map(|&g| self.generators[g as usize].weight as u64).sum()
    }

    /// The monomial order: weighted degree, then lexicographic.
    pub fn compare_words(&self, a: &Word, b: &Word) -> Ordering {
        self.weighted_degree(a).cmp(&self.weighted_degree(b)).then_with(|| a.0.cmp(&b.0))
    }

    pub fn gen(&self, name: &str) -> Result<Element, PresentationError> {
        self.id(name)
            .map(|g| Element::basis(Word::letter(g)))
            .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))
    }

    pub fn letter(&self, g: GenId) -> Element {
        Element::basis(Word::letter(g))
    }

    pub fn one(&self) -> Element {
        Element::basis(Word::unit())
    }

    pub fn scalar(&self, c: Scalar) -> Element {
        Element::term(Word::unit(), c)
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        w.0.windows(2).all(|p| !self.rule_at.contains_key(&(p[0], p[1])))
    }

    /// `u * x` for a normal word `u`.
    fn mul_word_letter(&self, u: &Word, x: GenId) -> Element {
        let Some(&last) = u.0.last() else {
            return Element::basis(Word::letter(x));
        };
        let Some(&ri) = self.rule_at.get(&(last, x)) else {
            let mut v = u.0.clone();
            v.push(x);
            return Element::basis(Word(v));
        };
        let key = (u.clone(), x);
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let prefix = Word(u.0[..u.0.len() - 1].to_vec());
        let mut out = Element::zero();
        for (w, c) in self.rules[ri].rhs.iter() {
            let prod = self.mul_word_raw(&prefix, w);
            out.add_scaled(&prod, c);
        }
        self.cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// `u * w` for a normal word `u` and an arbitrary word `w`.
    fn mul_word_raw(&self, u: &Word, w: &Word) -> Element {
        let mut acc = Element::basis(u.clone());
        for &x in &w.0 {
            let mut next = Element::zero();
            for (v, c) in acc.iter() {
                next.add_scaled(&self.mul_word_letter(v, x), c);
            }
            acc = next;
        }
        acc
    }

    pub fn normal_form_word(&self, w: &Word) -> Element {
        self.mul_word_raw(&Word::unit(), w)
    }

    /// Reduces an arbitrary linear combination of words to normal form.
    pub fn normal_form(&self, e: &Element) -> Element {
        e.linear_map(|w| if self.is_normal(w) { Element::basis(w.clone()) } else { self.normal_form_word(w) })
    }

    /// Product of two elements; the result is in normal form provided `a` is.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (u, cu) in a.iter() {
            for (v, cv) in b.iter() {
                out.add_scaled(&self.mul_word_raw(u, v), &(cu * cv));
            }
        }
        out
    }

    pub fn checked_mul(&self, a: &Element, b: &Element) -> Result<Element, PresentationError> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.mul(&self.normal_form(a), b))
    }

    /// Normal form of a raw product `w1 * w2 * ...` of elements.
    pub fn product(&self, factors: &[&Element]) -> Element {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn validate(&self, e: &Element) -> Result<(), PresentationError> {
        let n = self.generators.len();
        if e.keys().any(|w| w.0.iter().any(|&g| g as usize >= n)) {
            return Err(PresentationError::MixedPresentation(self.name.clone()));
        }
        Ok(())
    }

    pub fn element_parity(&self, e: &Element) -> ElementParity {
        let mut even = false;
        let mut odd = false;
        for w in e.keys() {
            match self.word_parity(w) {
                Parity::Even => even = true,
                Parity::Odd => odd = true,
            }
        }
        match (even, odd) {
            (false, false) => ElementParity::Zero,
            (true, false) => ElementParity::Even,
            (false, true) => ElementParity::Odd,
            (true, true) => ElementParity::Mixed,
        }
    }

    /// All normal words of length at most `max_degree`, shortest first.
    pub fn normal_words(&self, max_degree: usize) -> Vec<Word> {
        let mut out = vec![Word::unit()];
        let mut level = vec![Word::unit()];
        let n = self.generators.len() as GenId;
        for _ in 0..max_degree {
            let mut next = Vec::new();
            for w in &level {
                for x in 0..n {
                    if w.0.last().is_none_or(|&l| !self.rule_at.contains_key(&(l, x))) {
                        let mut v = w.0.clone();
                        v.push(x);
                        next.push(Word(v));
                    }
                }
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        out
    }

    /// Resolves every overlap `a b c` where both `a b` and `b c` are rule
    /// left sides, and reports overlaps whose two reductions differ.
    pub fn local_confluence_check(&self, report_limit: usize) -> ConfluenceReport {
        let mut report = ConfluenceReport::default();
        let mut keys: Vec<_> = self.rule_at.keys().copied().collect();
        keys.sort();
        for &(a, b) in &keys {
            for &(b2, c) in &keys {
                if b2 != b {
                    continue;
                }
                report.overlaps_checked += 1;
                let left_rule = &self.rules[self.rule_at[&(a, b)]];
                let right_rule = &self.rules[self.rule_at[&(b, c)]];
                let left = left_rule.rhs.linear_map(|w| self.normal_form_word(&w.concat(&Word::letter(c))));
                let right = right_rule.rhs.linear_map(|w| self.normal_form_word(&Word::letter(a).concat(w)));
                if left != right && report.mismatches.len() < report_limit {
                    report.mismatches.push(Mismatch { word: Word(vec![a, b, c]), left, right });
                }
            }
        }
        report
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_unit() {
            return "1".into();
        }
        w.0.iter().map(|&g| self.gen_name(g)).collect::<Vec<_>>().join("*")
    }

    /// Canonical text of an element: terms by increasing length, then
    /// lexicographically.
    pub fn render(&self, e: &Element) -> String {
        let mut words: Vec<&Word> = e.keys().collect();
        words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let terms = words.into_iter().map(|w| (self.render_word(w), w.is_unit(), e.coefficient(w)));
        render_terms(terms)
    }
}

/// Joins `(monomial, is_unit, coefficient)` triples into canonical text.
pub(crate) fn render_terms(terms: impl Iterator<Item = (String, bool, Scalar)>) -> String {
    let mut out = String::new();
    for (n, (mono, is_unit, c)) in terms.enumerate() {
        let (neg, coeff) = c.render_signed_coefficient();
        let body = match (coeff, is_unit) {
            (None, _) => mono,
            (Some(cs), true) => cs,
            (Some(cs), false) => format!("{cs}*{mono}"),
        };
        match (n, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// z0, z1 even with [z0, z1] = -(i/k) z1 oriented as z1 z0 -> z0 z1 + (i/k) z1.
    fn kappa_plane() -> Presentation {
        let mut b = PresentationBuilder::new("plane");
        let z0 = b.generator("z0", Parity::Even);
        let z1 = b.generator("z1", Parity::Even);
        let mut rhs = Element::basis(Word(vec![z0, z1]));
        rhs.add_term(Word(vec![z1]), Scalar::imag(1, 1, -1));
        b.rule(Word(vec![z1, z0]), rhs);
        b.build().unwrap()
    }

    fn grassmann() -> Presentation {
        let mut b = PresentationBuilder::new("grassmann");
        let t1 = b.generator("t1", Parity::Odd);
        let t2 = b.generator("t2", Parity::Odd);
        b.rule(Word(vec![t1, t1]), Element::zero());
        b.rule(Word(vec![t2, t2]), Element::zero());
        b.rule(Word(vec![t2, t1]), Element::term(Word(vec![t1, t2]), Scalar::from_int(-1)));
        b.build().unwrap()
    }

    #[test]
    fn registers_kappa_plane() {
        let p = kappa_plane();
        let nf = p.normal_form_word(&Word(vec![1, 0]));
        assert_eq!(p.render(&nf), "i*k^-1*z1 + z0*z1");
    }

    #[test]
    fn wrong_orientation_rejected() {
        let mut b = PresentationBuilder::new("bad");
        let z0 = b.generator("z0", Parity::Even);
        let z1 = b.generator("z1", Parity::Even);
        b.rule(Word(vec![z0, z1]), Element::basis(Word(vec![z1, z0])));
        assert!(matches!(b.build(), Err(PresentationError::NonTerminatingRule { .. })));
    }

    #[test]
    fn missing_and_duplicate() {
        let mut b = PresentationBuilder::new("missing");
        b.generator("z0", Parity::Even);
        b.generator("z1", Parity::Even);
        assert!(matches!(b.build(), Err(PresentationError::MissingRule(_))));

        let mut b = PresentationBuilder::new("dup");
        b.generator("z0", Parity::Even);
        b.generator("z0", Parity::Even);
        assert!(matches!(b.build(), Err(PresentationError::DuplicateGenerator(_))));

        let mut b = PresentationBuilder::new("odd");
        b.generator("t", Parity::Odd);
        assert!(matches!(b.build(), Err(PresentationError::MissingRule(_))));
    }

    #[test]
    fn grassmann_normal_forms() {
        let p = grassmann();
        assert!(p.normal_form_word(&Word(vec![0, 0])).is_zero());
        let e = p.normal_form_word(&Word(vec![1, 0]));
        assert_eq!(e, Element::term(Word(vec![0, 1]), Scalar::from_int(-1)));
        let s = p.letter(0).add(&p.letter(1));
        assert!(p.mul(&s, &s).is_zero());
    }

    #[test]
    fn parity_classification() {
        let p = grassmann();
        assert_eq!(p.element_parity(&Element::basis(Word(vec![0, 1]))), ElementParity::Even);
        assert_eq!(p.element_parity(&p.letter(0)), ElementParity::Odd);
        assert_eq!(p.element_parity(&p.letter(0).add(&p.one())), ElementParity::Mixed);
        assert_eq!(p.element_parity(&Element::zero()), ElementParity::Zero);
    }

    #[test]
    fn confluence_of_small_presentations() {
        assert!(kappa_plane().local_confluence_check(10).is_confluent());
        assert!(grassmann().local_confluence_check(10).is_confluent());
    }

    #[test]
    fn normal_words_enumeration() {
        let p = grassmann();
        let ws = p.normal_words(3);
        // 1, t1, t2, t1 t2
        assert_eq!(ws.len(), 4);
    }
}
