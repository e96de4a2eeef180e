//! Graded tensor products of presented algebras.
//!
//! A [`TensorElement`] lives in a [`TensorSpace`], an ordered list of factor
//! presentations. Multiplication carries the Koszul sign: passing slot `j`
//! of the left operand over slot `i < j` of the right operand contributes
//! `(-1)^(p(y_i) p(x_j))`. Applying a map to one factor never introduces a
//! sign; composite formulas state their signs explicitly.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::linear::LinComb;
use crate::presentation::{koszul, Element, Parity, Presentation, Word};
use crate::scalar::Scalar;

pub type TensorKey = Vec<Word>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("factor presentations differ: {0} vs {1}")]
    PresentationMismatch(String, String),
    #[error("factor index {index} out of range for arity {arity}")]
    BadIndex { index: usize, arity: usize },
    #[error("map expects factor `{expected}`, slot holds `{found}`")]
    DomainMismatch { expected: String, found: String },
}

#[derive(Clone)]
pub struct TensorSpace {
    factors: Vec<Arc<Presentation>>,
}

impl PartialEq for TensorSpace {
    fn eq(&self, other: &Self) -> bool {
        self.factors.len() == other.factors.len()
            && self.factors.iter().zip(&other.factors).all(|(a, b)| Arc::ptr_eq(a, b) || a.name() == b.name())
    }
}

impl fmt::Debug for TensorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.factors.iter().map(|p| p.name()).collect();
        write!(f, "TensorSpace({})", names.join(" (x) "))
    }
}

impl TensorSpace {
    pub fn new(factors: Vec<Arc<Presentation>>) -> Self {
        assert!(!factors.is_empty(), "tensor spaces have at least one factor");
        TensorSpace { factors }
    }

    pub fn power(p: &Arc<Presentation>, n: usize) -> Self {
        Self::new(vec![p.clone(); n])
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, i: usize) -> &Arc<Presentation> {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[Arc<Presentation>] {
        &self.factors
    }

    pub fn zero(&self) -> TensorElement {
        TensorElement { space: self.clone(), terms: LinComb::zero() }
    }

    pub fn unit(&self) -> TensorElement {
        self.simple(vec![Word::unit(); self.arity()], Scalar::one())
    }

    pub fn simple(&self, words: Vec<Word>, c: Scalar) -> TensorElement {
        assert_eq!(words.len(), self.arity());
        TensorElement { space: self.clone(), terms: LinComb::term(words, c) }
    }

    /// `e_1 (x) e_2 (x) ...`, expanded bilinearly.
    pub fn from_elements(&self, elems: &[&Element]) -> TensorElement {
        assert_eq!(elems.len(), self.arity());
        let mut terms: LinComb<TensorKey> = LinComb::basis(Vec::new());
        for e in elems {
            let mut next = LinComb::zero();
            for (key, c) in terms.iter() {
                for (w, d) in e.iter() {
                    let mut k = key.clone();
                    k.push(w.clone());
                    next.add_term(k, c * d);
                }
            }
            terms = next;
        }
        TensorElement { space: self.clone(), terms }
    }

    pub fn from_terms(&self, terms: LinComb<TensorKey>) -> Result<TensorElement, TensorError> {
        if let Some(k) = terms.keys().find(|k| k.len() != self.arity()) {
            return Err(TensorError::ArityMismatch { expected: self.arity(), found: k.len() });
        }
        Ok(TensorElement { space: self.clone(), terms })
    }

    fn parities(&self, key: &TensorKey) -> Vec<Parity> {
        key.iter().zip(&self.factors).map(|(w, p)| p.word_parity(w)).collect()
    }

    fn check_index(&self, i: usize, span: usize) -> Result<(), TensorError> {
        if i + span > self.arity() {
            Err(TensorError::BadIndex { index: i, arity: self.arity() })
        } else {
            Ok(())
        }
    }

    fn swapped(&self, i: usize) -> TensorSpace {
        let mut f = self.factors.clone();
        f.swap(i, i + 1);
        TensorSpace { factors: f }
    }

    /// Graded tensor multiplication in this space (no operand checks).
    pub(crate) fn mul_terms(&self, x: &LinComb<TensorKey>, y: &LinComb<TensorKey>) -> LinComb<TensorKey> {
        let n = self.arity();
        let mut out = LinComb::zero();
        let ys: Vec<_> = y.iter().map(|(k, c)| (k, c, self.parities(k))).collect();
        for (kx, cx) in x.iter() {
            let px = self.parities(kx);
            // suffix[j] = number of odd slots of x at positions > j
            let mut odd_after = vec![0u32; n + 1];
            for j in (0..n).rev() {
                odd_after[j] = odd_after[j + 1] + px[j].bit() as u32;
            }
            for (ky, cy, py) in &ys {
                let mut flips = 0u32;
                for i in 0..n {
                    if py[i].is_odd() {
                        flips += odd_after[i + 1];
                    }
                }
                let mut prod: LinComb<TensorKey> = LinComb::basis(Vec::with_capacity(n));
                for i in 0..n {
                    let f = self.factors[i].mul(&Element::basis(kx[i].clone()), &Element::basis(ky[i].clone()));
                    if f.is_zero() {
                        prod = LinComb::zero();
                        break;
                    }
                    let mut next = LinComb::zero();
                    for (k, c) in prod.iter() {
                        for (w, d) in f.iter() {
                            let mut kk = k.clone();
                            kk.push(w.clone());
                            next.add_term(kk, c * d);
                        }
                    }
                    prod = next;
                }
                let mut coeff = cx * cy;
                if flips % 2 == 1 {
                    coeff = -coeff;
                }
                out.add_scaled(&prod, &coeff);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct TensorElement {
    space: TensorSpace,
    terms: LinComb<TensorKey>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.terms == other.terms
    }
}

impl TensorElement {
    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn arity(&self) -> usize {
        self.space.arity()
    }

    pub fn terms(&self) -> &LinComb<TensorKey> {
        &self.terms
    }

    pub fn into_terms(self) -> LinComb<TensorKey> {
        self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TensorKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn same_space(&self, other: &TensorElement) -> Result<(), TensorError> {
        if self.arity() != other.arity() {
            return Err(TensorError::ArityMismatch { expected: self.arity(), found: other.arity() });
        }
        for (a, b) in self.space.factors.iter().zip(&other.space.factors) {
            if !(Arc::ptr_eq(a, b) || a.name() == b.name()) {
                return Err(TensorError::PresentationMismatch(a.name().into(), b.name().into()));
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.same_space(other)?;
        Ok(TensorElement { space: self.space.clone(), terms: self.terms.add(&other.terms) })
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.same_space(other)?;
        Ok(TensorElement { space: self.space.clone(), terms: self.terms.sub(&other.terms) })
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        TensorElement { space: self.space.clone(), terms: self.terms.scale(c) }
    }

    pub(crate) fn add_scaled_in_place(&mut self, other: &TensorElement, c: &Scalar) {
        debug_assert_eq!(self.arity(), other.arity());
        self.terms.add_scaled(&other.terms, c);
    }

    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.same_space(other)?;
        Ok(TensorElement { space: self.space.clone(), terms: self.space.mul_terms(&self.terms, &other.terms) })
    }

    /// Swaps factors `i` and `i + 1` (0-based) with the Koszul sign.
    pub fn graded_flip(&self, i: usize) -> Result<TensorElement, TensorError> {
        if self.arity() < 2 || i + 1 >= self.arity() {
            return Err(TensorError::BadIndex { index: i, arity: self.arity() });
        }
        let (l, r) = (self.space.factor(i).clone(), self.space.factor(i + 1).clone());
        let mut out = LinComb::zero();
        for (k, c) in self.terms.iter() {
            let sign = koszul(l.word_parity(&k[i]), r.word_parity(&k[i + 1]));
            let mut kk = k.clone();
            kk.swap(i, i + 1);
            out.add_term(kk, if sign { -c.clone() } else { c.clone() });
        }
        Ok(TensorElement { space: self.space.swapped(i), terms: out })
    }

    /// Replaces factor `i` by its image under a linear map into a tensor
    /// space of any arity, splicing the image's factors in place.
    pub fn apply_factorwise(
        &self,
        i: usize,
        domain: &Arc<Presentation>,
        codomain: &TensorSpace,
        mut f: impl FnMut(&Word) -> LinComb<TensorKey>,
    ) -> Result<TensorElement, TensorError> {
        self.space.check_index(i, 1)?;
        let slot = self.space.factor(i);
        if !(Arc::ptr_eq(slot, domain) || slot.name() == domain.name()) {
            return Err(TensorError::DomainMismatch { expected: domain.name().into(), found: slot.name().into() });
        }
        let mut factors = self.space.factors[..i].to_vec();
        factors.extend(codomain.factors.iter().cloned());
        factors.extend(self.space.factors[i + 1..].iter().cloned());
        let space = TensorSpace { factors };
        let mut out = LinComb::zero();
        let mut memo: std::collections::HashMap<Word, LinComb<TensorKey>> = std::collections::HashMap::new();
        for (k, c) in self.terms.iter() {
            let image = memo.entry(k[i].clone()).or_insert_with(|| f(&k[i]));
            for (ik, ic) in image.iter() {
                if ik.len() != codomain.arity() {
                    return Err(TensorError::ArityMismatch { expected: codomain.arity(), found: ik.len() });
                }
                let mut kk = k[..i].to_vec();
                kk.extend(ik.iter().cloned());
                kk.extend(k[i + 1..].iter().cloned());
                out.add_term(kk, c * ic);
            }
        }
        Ok(TensorElement { space, terms: out })
    }

    /// Element-valued version of [`apply_factorwise`](Self::apply_factorwise).
    pub fn map_factor(
        &self,
        i: usize,
        domain: &Arc<Presentation>,
        target: &Arc<Presentation>,
        mut f: impl FnMut(&Word) -> Element,
    ) -> Result<TensorElement, TensorError> {
        let codomain = TensorSpace::new(vec![target.clone()]);
        self.apply_factorwise(i, domain, &codomain, |w| f(w).linear_map(|v| LinComb::basis(vec![v.clone()])))
    }

    /// Multiplies factors `i` and `i + 1` together; no sign is introduced.
    pub fn multiply_adjacent_factors(&self, i: usize) -> Result<TensorElement, TensorError> {
        if i + 1 >= self.arity() {
            return Err(TensorError::BadIndex { index: i, arity: self.arity() });
        }
        let (l, r) = (self.space.factor(i), self.space.factor(i + 1));
        if !(Arc::ptr_eq(l, r) || l.name() == r.name()) {
            return Err(TensorError::PresentationMismatch(l.name().into(), r.name().into()));
        }
        let mut factors = self.space.factors.clone();
        factors.remove(i + 1);
        let space = TensorSpace { factors };
        let mut out = LinComb::zero();
        for (k, c) in self.terms.iter() {
            let prod = l.mul(&Element::basis(k[i].clone()), &Element::basis(k[i + 1].clone()));
            for (w, d) in prod.iter() {
                let mut kk = k[..i].to_vec();
                kk.push(w.clone());
                kk.extend(k[i + 2..].iter().cloned());
                out.add_term(kk, c * d);
            }
        }
        Ok(TensorElement { space, terms: out })
    }

    /// Maps every coefficient (for example to take a classical limit).
    pub fn map_coefficients(&self, f: impl FnMut(&Scalar) -> Scalar) -> TensorElement {
        TensorElement { space: self.space.clone(), terms: self.terms.map_coefficients(f) }
    }

    pub fn render(&self) -> String {
        let mut keys: Vec<&TensorKey> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let la: usize = a.iter().map(|w| w.len()).sum();
            let lb: usize = b.iter().map(|w| w.len()).sum();
            la.cmp(&lb).then_with(|| a.cmp(b))
        });
        let terms = keys.into_iter().map(|k| {
            let mono = k
                .iter()
                .zip(&self.space.factors)
                .map(|(w, p)| {
                    let s = p.render_word(w);
                    s
                })
                .collect::<Vec<_>>()
                .join(" @ ");
            (mono, false, self.terms.coefficient(k))
        });
        crate::presentation::render_terms(terms)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::PresentationBuilder;

    /// z0 even, t1 t2 odd, everything supercommuting.
    fn superplane() -> Arc<Presentation> {
        let mut b = PresentationBuilder::new("sp");
        let z = b.generator("z0", Parity::Even);
        let t1 = b.generator("t1", Parity::Odd);
        let t2 = b.generator("t2", Parity::Odd);
        b.rule(Word(vec![t1, z]), Element::basis(Word(vec![z, t1])));
        b.rule(Word(vec![t2, z]), Element::basis(Word(vec![z, t2])));
        b.rule(Word(vec![t1, t1]), Element::zero());
        b.rule(Word(vec![t2, t2]), Element::zero());
        b.rule(Word(vec![t2, t1]), Element::term(Word(vec![t1, t2]), Scalar::from_int(-1)));
        Arc::new(b.build().unwrap())
    }

    fn w(v: &[u16]) -> Word {
        Word(v.to_vec())
    }

    #[test]
    fn koszul_sign_in_products() {
        let p = superplane();
        let s = TensorSpace::power(&p, 2);
        let a = s.simple(vec![w(&[]), w(&[1])], Scalar::one());
        let b = s.simple(vec![w(&[2]), w(&[])], Scalar::one());
        assert_eq!(a.mul(&b).unwrap(), s.simple(vec![w(&[2]), w(&[1])], Scalar::from_int(-1)));

        let a = s.simple(vec![w(&[0]), w(&[])], Scalar::one());
        let b = s.simple(vec![w(&[]), w(&[0])], Scalar::one());
        assert_eq!(a.mul(&b).unwrap(), s.simple(vec![w(&[0]), w(&[0])], Scalar::one()));

        let a = s.simple(vec![w(&[1]), w(&[1])], Scalar::one());
        let b = s.simple(vec![w(&[2]), w(&[2])], Scalar::one());
        assert_eq!(a.mul(&b).unwrap(), s.simple(vec![w(&[1, 2]), w(&[1, 2])], Scalar::from_int(-1)));
    }

    #[test]
    fn flips() {
        let p = superplane();
        let s = TensorSpace::power(&p, 2);
        let x = s.simple(vec![w(&[1]), w(&[2])], Scalar::one());
        assert_eq!(x.graded_flip(0).unwrap(), s.simple(vec![w(&[2]), w(&[1])], Scalar::from_int(-1)));
        let y = s.simple(vec![w(&[0]), w(&[1])], Scalar::one());
        assert_eq!(y.graded_flip(0).unwrap(), s.simple(vec![w(&[1]), w(&[0])], Scalar::one()));
        assert!(matches!(x.graded_flip(1), Err(TensorError::BadIndex { .. })));
    }

    #[test]
    fn factorwise_application_and_multiplication() {
        let p = superplane();
        let s2 = TensorSpace::power(&p, 2);
        let x = s2.simple(vec![w(&[0]), w(&[0])], Scalar::one());
        let prim = |word: &Word| -> LinComb<TensorKey> {
            assert_eq!(word, &w(&[0]));
            let mut t = LinComb::zero();
            t.add_term(vec![w(&[0]), w(&[])], Scalar::one());
            t.add_term(vec![w(&[]), w(&[0])], Scalar::one());
            t
        };
        let y = x.apply_factorwise(1, &p, &s2, prim).unwrap();
        assert_eq!(y.arity(), 3);
        assert_eq!(y.render(), "z0 @ 1 @ z0 + z0 @ z0 @ 1");
        let id = x.map_factor(0, &p, &p, |v| Element::basis(v.clone())).unwrap();
        assert_eq!(id, x);

        let s3 = TensorSpace::power(&p, 3);
        let t = s3.simple(vec![w(&[1]), w(&[1]), w(&[0])], Scalar::one());
        assert!(t.multiply_adjacent_factors(0).unwrap().is_zero());
        assert!(matches!(t.multiply_adjacent_factors(2), Err(TensorError::BadIndex { .. })));
    }

    #[test]
    fn arity_mismatch() {
        let p = superplane();
        let a = TensorSpace::power(&p, 2).unit();
        let b = TensorSpace::power(&p, 3).unit();
        assert!(matches!(a.mul(&b), Err(TensorError::ArityMismatch { .. })));
    }
}
