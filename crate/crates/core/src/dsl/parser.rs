//! Recursive-descent parser. Expressions are evaluated while parsing (free
//! noncommutative multiplication, no rewriting), generator references are
//! resolved against the declarations seen so far, and parities are checked
//! statement by statement.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ast::*;
use super::lexer::{tokenize, Pos, Tok, Token};
use super::DslError;
use crate::linear::LinComb;
use crate::presentation::Parity;
use crate::scalar::{GaussianRational, Scalar};

/// Name of the algebra that collects statements written outside any
/// `algebra` block.
pub const IMPLICIT_ALGEBRA: &str = "main";

const MAX_DEPTH: usize = 128;
const MAX_POWER: i64 = 64;
const MAX_TERMS: usize = 50_000;
const RESERVED: [&str; 2] = ["i", "k"];

pub fn parse_presentation(text: &str) -> Result<PresentationDoc, DslError> {
    let mut p = Parser::new(text)?;
    p.document()
}

/// Parses a standalone expression; `known` decides which identifiers are
/// generators. Returns the tensor arity and the value.
pub fn parse_expression(text: &str, known: &dyn Fn(&str) -> bool) -> Result<(usize, Poly), DslError> {
    let mut p = Parser::new(text)?;
    let v = p.expr(known)?;
    p.expect(Tok::Eof)?;
    Ok((v.arity, v.terms))
}

#[derive(Clone, Debug)]
struct Val {
    arity: usize,
    terms: Poly,
}

impl Val {
    fn scalar(c: Scalar) -> Val {
        Val { arity: 1, terms: LinComb::term(vec![vec![]], c) }
    }

    fn as_scalar(&self) -> Option<Scalar> {
        if self.arity != 1 || self.terms.keys().any(|k| !k[0].is_empty()) {
            return None;
        }
        Some(self.terms.coefficient(&vec![vec![]]))
    }
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    depth: usize,
}

fn inv(pos: Pos, message: impl Into<String>) -> DslError {
    DslError::Invalid { line: pos.line, col: pos.col, message: message.into() }
}

fn parity_mismatch(pos: Pos, message: impl Into<String>) -> DslError {
    DslError::ParityMismatch { line: pos.line, col: pos.col, message: message.into() }
}

fn undeclared(pos: Pos, name: &str) -> DslError {
    DslError::UndeclaredGenerator { line: pos.line, col: pos.col, name: name.to_string() }
}

fn word_parity(alg: &AlgebraDoc, w: &[String]) -> Parity {
    w.iter().fold(Parity::Even, |p, g| p + alg.generator(g).map_or(Parity::Even, |d| d.parity))
}

/// Parity of every term of an arity-`legs.len()` value, leg `i` read in
/// `legs[i]`; `None` when the terms disagree or there are none.
fn poly_parity(legs: &[&AlgebraDoc], p: &Poly) -> Option<Parity> {
    let mut out = None;
    for k in p.keys() {
        let q = k.iter().zip(legs).fold(Parity::Even, |acc, (w, a)| acc + word_parity(a, w));
        match out {
            None => out = Some(q),
            Some(prev) if prev != q => return None,
            _ => {}
        }
    }
    out
}

fn check_parity(pos: Pos, what: &str, legs: &[&AlgebraDoc], p: &Poly, expected: Parity) -> Result<(), DslError> {
    if p.is_zero() {
        return Ok(());
    }
    match poly_parity(legs, p) {
        Some(q) if q == expected => Ok(()),
        Some(q) => Err(parity_mismatch(pos, format!("{what} has parity {} but {} is required", q.bit(), expected.bit()))),
        None => Err(parity_mismatch(pos, format!("{what} mixes even and odd terms"))),
    }
}

impl Parser {
    fn new(text: &str) -> Result<Self, DslError> {
        Ok(Parser { toks: tokenize(text)?, at: 0, depth: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn advance(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> DslError {
        DslError::syntax(self.pos(), &format!("unexpected {}", self.peek()), expected)
    }

    fn expect(&mut self, t: Tok) -> Result<Pos, DslError> {
        if *self.peek() == t {
            Ok(self.advance().pos)
        } else {
            Err(self.unexpected(&[&t.to_string()]))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), DslError> {
        match self.peek().clone() {
            Tok::Ident(s) => Ok((s, self.advance().pos)),
            _ => Err(self.unexpected(&["identifier"])),
        }
    }

    fn string(&mut self) -> Result<String, DslError> {
        match self.peek().clone() {
            Tok::Str(s) => {
                self.advance();
                Ok(s)
            }
            _ => Err(self.unexpected(&["string"])),
        }
    }

    fn integer(&mut self) -> Result<(u64, Pos), DslError> {
        match self.peek().clone() {
            Tok::Int(s) => {
                let pos = self.advance().pos;
                s.parse().map(|n| (n, pos)).map_err(|_| inv(pos, format!("integer {s} is too large")))
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    fn keyword(&self) -> Option<&str> {
        match self.peek() {
            Tok::Ident(s) => Some(s.as_str()),
            _ => None,
        }
    }

    fn document(&mut self) -> Result<PresentationDoc, DslError> {
        let mut doc = PresentationDoc::default();
        const TOP: [&str; 12] = [
            "presentation", "convention", "note", "symbol", "algebra", "bicross", "check", "gen", "rel", "coproduct", "counit",
            "antipode",
        ];
        loop {
            let pos = self.pos();
            match self.keyword() {
                None if *self.peek() == Tok::Eof => return Ok(doc),
                Some("presentation") => {
                    self.advance();
                    let (name, _) = self.ident()?;
                    self.expect(Tok::Semi)?;
                    if doc.name.is_some() {
                        return Err(inv(pos, "presentation name given twice"));
                    }
                    doc.name = Some(name);
                }
                Some(kw @ ("convention" | "note" | "symbol")) => {
                    let kw = kw.to_string();
                    self.advance();
                    let (key, _) = self.ident()?;
                    self.expect(Tok::Eq)?;
                    let text = self.string()?;
                    self.expect(Tok::Semi)?;
                    let list = match kw.as_str() {
                        "convention" => &mut doc.conventions,
                        "note" => &mut doc.notes,
                        _ => &mut doc.symbols,
                    };
                    if list.iter().any(|(k, _)| *k == key) {
                        return Err(inv(pos, format!("{kw} `{key}` given twice")));
                    }
                    list.push((key, text));
                }
                Some("algebra") => {
                    self.advance();
                    let (name, npos) = self.ident()?;
                    if doc.algebra(&name).is_some() {
                        return Err(inv(npos, format!("algebra `{name}` declared twice")));
                    }
                    self.expect(Tok::LBrace)?;
                    let mut alg = AlgebraDoc { name, ..Default::default() };
                    while *self.peek() != Tok::RBrace {
                        self.algebra_statement(&mut alg)?;
                    }
                    self.advance();
                    doc.algebras.push(alg);
                }
                Some("gen" | "rel" | "coproduct" | "counit" | "antipode") => {
                    if doc.algebra(IMPLICIT_ALGEBRA).is_none() {
                        doc.algebras.push(AlgebraDoc { name: IMPLICIT_ALGEBRA.into(), ..Default::default() });
                    }
                    let alg = doc.algebras.iter_mut().find(|a| a.name == IMPLICIT_ALGEBRA).unwrap();
                    self.algebra_statement(alg)?;
                }
                Some("bicross") => {
                    self.advance();
                    if doc.bicross.is_some() {
                        return Err(inv(pos, "only one bicross block is allowed"));
                    }
                    self.expect(Tok::LBrace)?;
                    let b = self.bicross_block(&doc)?;
                    doc.bicross = Some(b);
                }
                Some("check") => {
                    self.advance();
                    if doc.checks.is_some() {
                        return Err(inv(pos, "only one check block is allowed"));
                    }
                    self.expect(Tok::LBrace)?;
                    doc.checks = Some(self.check_block()?);
                }
                _ => return Err(self.unexpected(&TOP)),
            }
        }
    }

    fn algebra_statement(&mut self, alg: &mut AlgebraDoc) -> Result<(), DslError> {
        const STMT: [&str; 6] = ["gen", "rel", "coproduct", "counit", "antipode", "`}`"];
        let pos = self.pos();
        let Some(kw) = self.keyword().map(str::to_string) else {
            return Err(self.unexpected(&STMT));
        };
        match kw.as_str() {
            "gen" => {
                self.advance();
                let mut names = vec![self.ident()?];
                while *self.peek() == Tok::Comma {
                    self.advance();
                    names.push(self.ident()?);
                }
                self.expect(Tok::Colon)?;
                let parity = match self.peek().clone() {
                    Tok::Ident(s) if s == "even" => Parity::Even,
                    Tok::Ident(s) if s == "odd" => Parity::Odd,
                    Tok::Int(s) if s == "0" => Parity::Even,
                    Tok::Int(s) if s == "1" => Parity::Odd,
                    _ => return Err(self.unexpected(&["even", "odd", "0", "1"])),
                };
                self.advance();
                let mut weight = 1u32;
                if self.keyword() == Some("weight") {
                    self.advance();
                    let (w, wpos) = self.integer()?;
                    weight = u32::try_from(w).ok().filter(|&w| w > 0).ok_or_else(|| inv(wpos, "weight must be between 1 and 2^32 - 1"))?;
                }
                self.expect(Tok::Semi)?;
                for (name, npos) in names {
                    if RESERVED.contains(&name.as_str()) {
                        return Err(inv(npos, format!("`{name}` is reserved for a scalar")));
                    }
                    if alg.generator(&name).is_some() {
                        return Err(inv(npos, format!("generator `{name}` declared twice")));
                    }
                    alg.generators.push(GeneratorDoc { name, parity, weight });
                }
            }
            "rel" => {
                self.advance();
                let lpos = self.pos();
                let lhs = self.expr(&|n| alg.generator(n).is_some())?;
                self.expect(Tok::Eq)?;
                let rpos = self.pos();
                let rhs = self.expr(&|n| alg.generator(n).is_some())?;
                self.expect(Tok::Semi)?;
                let word = match (lhs.arity, lhs.terms.len()) {
                    (1, 1) => {
                        let (k, c) = lhs.terms.iter().next().unwrap();
                        (c.is_one() && k[0].len() == 2).then(|| [k[0][0].clone(), k[0][1].clone()])
                    }
                    _ => None,
                };
                let Some(lhs) = word else {
                    return Err(inv(lpos, "the left side of a relation must be a product of two generators"));
                };
                if rhs.arity != 1 {
                    return Err(inv(rpos, "the right side of a relation must be an algebra element"));
                }
                if alg.relations.iter().any(|r| r.lhs == lhs) {
                    return Err(inv(lpos, format!("two relations rewrite {}*{}", lhs[0], lhs[1])));
                }
                let p = word_parity(alg, &lhs);
                check_parity(rpos, "relation right side", &[&*alg], &rhs.terms, p)?;
                alg.relations.push(RelationDoc { lhs, rhs: rhs.terms });
            }
            "coproduct" | "counit" | "antipode" => {
                self.advance();
                let (g, gpos) = self.ident()?;
                let Some(p) = alg.generator(&g).map(|d| d.parity) else {
                    return Err(undeclared(gpos, &g));
                };
                self.expect(Tok::Eq)?;
                let vpos = self.pos();
                let v = self.expr(&|n| alg.generator(n).is_some())?;
                self.expect(Tok::Semi)?;
                let taken = match kw.as_str() {
                    "coproduct" => alg.coproduct.iter().any(|(x, _)| *x == g),
                    "counit" => alg.counit.iter().any(|(x, _)| *x == g),
                    _ => alg.antipode.iter().any(|(x, _)| *x == g),
                };
                if taken {
                    return Err(inv(pos, format!("{kw} of `{g}` given twice")));
                }
                match kw.as_str() {
                    "coproduct" => {
                        if v.arity != 2 && !v.terms.is_zero() {
                            return Err(inv(vpos, "a coproduct must be a two-fold tensor `x @ y`"));
                        }
                        check_parity(vpos, "coproduct", &[&*alg, &*alg], &v.terms, p)?;
                        alg.coproduct.push((g, v.terms));
                    }
                    "counit" => {
                        let Some(c) = v.as_scalar() else {
                            return Err(inv(vpos, "a counit must be a scalar"));
                        };
                        if p.is_odd() && !c.is_zero() {
                            return Err(parity_mismatch(vpos, format!("odd generator `{g}` must have counit 0")));
                        }
                        alg.counit.push((g, c));
                    }
                    _ => {
                        if v.arity != 1 {
                            return Err(inv(vpos, "an antipode must be an algebra element"));
                        }
                        check_parity(vpos, "antipode", &[&*alg], &v.terms, p)?;
                        alg.antipode.push((g, v.terms));
                    }
                }
            }
            _ => return Err(self.unexpected(&STMT)),
        }
        Ok(())
    }

    fn bicross_block(&mut self, doc: &PresentationDoc) -> Result<BicrossDoc, DslError> {
        let mut b = BicrossDoc::default();
        let (mut acting, mut acted): (Option<&AlgebraDoc>, Option<&AlgebraDoc>) = (None, None);
        loop {
            let pos = self.pos();
            match self.keyword() {
                None if *self.peek() == Tok::RBrace => {
                    self.advance();
                    if acting.is_none() || acted.is_none() {
                        return Err(inv(pos, "a bicross block needs `acting` and `acted`"));
                    }
                    return Ok(b);
                }
                Some(kw @ ("acting" | "acted")) => {
                    let is_acting = kw == "acting";
                    self.advance();
                    let (name, npos) = self.ident()?;
                    self.expect(Tok::Semi)?;
                    let slot = if is_acting { &mut acting } else { &mut acted };
                    if slot.is_some() {
                        return Err(inv(pos, "factor given twice"));
                    }
                    let Some(alg) = doc.algebra(&name) else {
                        return Err(inv(npos, format!("unknown algebra `{name}`")));
                    };
                    *slot = Some(alg);
                    if is_acting {
                        b.acting = name;
                    } else {
                        b.acted = name;
                    }
                }
                Some("action") => {
                    let (Some(h1), Some(h2)) = (acting, acted) else {
                        return Err(inv(pos, "`acting` and `acted` must precede the action table"));
                    };
                    self.advance();
                    let (a, apos) = self.ident()?;
                    self.expect(Tok::Act)?;
                    let (h, hpos) = self.ident()?;
                    let pa = h2.generator(&a).ok_or_else(|| undeclared(apos, &a))?.parity;
                    let ph = h1.generator(&h).ok_or_else(|| undeclared(hpos, &h))?.parity;
                    self.expect(Tok::Eq)?;
                    let vpos = self.pos();
                    let v = self.expr(&|n| h2.generator(n).is_some())?;
                    self.expect(Tok::Semi)?;
                    if v.arity != 1 {
                        return Err(inv(vpos, "an action value must be an element of the acted algebra"));
                    }
                    if b.action.iter().any(|(x, y, _)| *x == a && *y == h) {
                        return Err(inv(pos, format!("action {a} <| {h} given twice")));
                    }
                    check_parity(vpos, "action value", &[h2], &v.terms, pa + ph)?;
                    b.action.push((a, h, v.terms));
                }
                Some("coaction") => {
                    let (Some(h1), Some(h2)) = (acting, acted) else {
                        return Err(inv(pos, "`acting` and `acted` must precede the coaction table"));
                    };
                    self.advance();
                    let (h, hpos) = self.ident()?;
                    let ph = h1.generator(&h).ok_or_else(|| undeclared(hpos, &h))?.parity;
                    self.expect(Tok::Eq)?;
                    let vpos = self.pos();
                    let v = self.expr(&|n| h1.generator(n).is_some() || h2.generator(n).is_some())?;
                    self.expect(Tok::Semi)?;
                    if v.arity != 2 && !v.terms.is_zero() {
                        return Err(inv(vpos, "a coaction value must be a tensor `a @ h`"));
                    }
                    for k in v.terms.keys() {
                        if let Some(bad) = k[0].iter().find(|g| h2.generator(g).is_none()) {
                            return Err(undeclared(vpos, bad));
                        }
                        if let Some(bad) = k[1].iter().find(|g| h1.generator(g).is_none()) {
                            return Err(undeclared(vpos, bad));
                        }
                    }
                    if b.coaction.iter().any(|(x, _)| *x == h) {
                        return Err(inv(pos, format!("coaction of `{h}` given twice")));
                    }
                    check_parity(vpos, "coaction value", &[h2, h1], &v.terms, ph)?;
                    b.coaction.push((h, v.terms));
                }
                _ => return Err(self.unexpected(&["acting", "acted", "action", "coaction", "`}`"])),
            }
        }
    }

    fn check_block(&mut self) -> Result<CheckDirectives, DslError> {
        let mut c = CheckDirectives::default();
        loop {
            let pos = self.pos();
            match self.keyword() {
                None if *self.peek() == Tok::RBrace => {
                    self.advance();
                    return Ok(c);
                }
                Some("suites") => {
                    self.advance();
                    loop {
                        let (s, spos) = self.ident()?;
                        let suite = Suite::from_keyword(&s).ok_or_else(|| {
                            DslError::syntax(spos, &format!("unknown suite `{s}`"), &Suite::ALL.map(|x| x.keyword()))
                        })?;
                        if !c.suites.contains(&suite) {
                            c.suites.push(suite);
                        }
                        if *self.peek() != Tok::Comma {
                            break;
                        }
                        self.advance();
                    }
                    self.expect(Tok::Semi)?;
                }
                Some(kw @ ("max_degree" | "samples" | "seed")) => {
                    let kw = kw.to_string();
                    self.advance();
                    let (n, npos) = self.integer()?;
                    self.expect(Tok::Semi)?;
                    let small = || usize::try_from(n).map_err(|_| inv(npos, "value too large"));
                    let dup = match kw.as_str() {
                        "max_degree" => c.max_degree.replace(small()?).is_some(),
                        "samples" => c.samples.replace(small()?).is_some(),
                        _ => c.seed.replace(n).is_some(),
                    };
                    if dup {
                        return Err(inv(pos, format!("`{kw}` given twice")));
                    }
                }
                _ => return Err(self.unexpected(&["suites", "max_degree", "samples", "seed", "`}`"])),
            }
        }
    }

    // expression grammar:
    //   expr  := ['+' | '-'] tterm (('+' | '-') tterm)*
    //   tterm := mono ('@' mono)*
    //   mono  := power (('*' | '/') power)*
    //   power := atom ['^' ['-'] INT]
    //   atom  := INT | 'i' | 'k' | IDENT | '(' expr ')'

    fn expr(&mut self, known: &dyn Fn(&str) -> bool) -> Result<Val, DslError> {
        let mut negate = false;
        match self.peek() {
            Tok::Plus => {
                self.advance();
            }
            Tok::Minus => {
                self.advance();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.tterm(known)?;
        if negate {
            acc.terms = acc.terms.neg();
        }
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            let pos = self.advance().pos;
            let mut rhs = self.tterm(known)?;
            if negate {
                rhs.terms = rhs.terms.neg();
            }
            acc = add(pos, acc, rhs)?;
        }
    }

    fn tterm(&mut self, known: &dyn Fn(&str) -> bool) -> Result<Val, DslError> {
        let mut acc = self.mono(known)?;
        while *self.peek() == Tok::At {
            let pos = self.advance().pos;
            let rhs = self.mono(known)?;
            acc = tensor(pos, &acc, &rhs)?;
        }
        Ok(acc)
    }

    fn mono(&mut self, known: &dyn Fn(&str) -> bool) -> Result<Val, DslError> {
        let mut acc = self.power(known)?;
        loop {
            match self.peek() {
                Tok::Star => {
                    let pos = self.advance().pos;
                    let rhs = self.power(known)?;
                    acc = mul(pos, &acc, &rhs)?;
                }
                Tok::Slash => {
                    let pos = self.advance().pos;
                    let rhs = self.power(known)?;
                    let inverse = invert(pos, &rhs)?;
                    acc = mul(pos, &acc, &Val::scalar(inverse))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self, known: &dyn Fn(&str) -> bool) -> Result<Val, DslError> {
        let base = self.atom(known)?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let pos = self.advance().pos;
        let negative = if *self.peek() == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        let (n, npos) = self.integer()?;
        if n > MAX_POWER as u64 {
            return Err(inv(npos, format!("exponent {n} exceeds {MAX_POWER}")));
        }
        let base = if negative { Val::scalar(invert(pos, &base)?) } else { base };
        let mut out = Val::scalar(Scalar::one());
        for _ in 0..n {
            out = mul(pos, &out, &base)?;
        }
        Ok(out)
    }

    fn atom(&mut self, known: &dyn Fn(&str) -> bool) -> Result<Val, DslError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(s) => {
                self.advance();
                let n: BigInt = s.parse().map_err(|_| inv(pos, "malformed integer"))?;
                Ok(Val::scalar(Scalar::monomial(GaussianRational::real(BigRational::from_integer(n)), 0)))
            }
            Tok::Ident(s) if s == "i" => {
                self.advance();
                Ok(Val::scalar(Scalar::i()))
            }
            Tok::Ident(s) if s == "k" => {
                self.advance();
                Ok(Val::scalar(Scalar::kappa()))
            }
            Tok::Ident(s) => {
                self.advance();
                if !known(&s) {
                    return Err(undeclared(pos, &s));
                }
                Ok(Val { arity: 1, terms: LinComb::basis(vec![vec![s]]) })
            }
            Tok::LParen => {
                if self.depth >= MAX_DEPTH {
                    return Err(DslError::syntax(pos, "parentheses nested too deeply", &[]));
                }
                self.advance();
                self.depth += 1;
                let v = self.expr(known);
                self.depth -= 1;
                let v = v?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            _ => Err(self.unexpected(&["integer", "i", "k", "generator", "`(`"])),
        }
    }
}

fn limit(pos: Pos, v: Val) -> Result<Val, DslError> {
    if v.terms.len() > MAX_TERMS {
        return Err(inv(pos, format!("expression has more than {MAX_TERMS} terms")));
    }
    Ok(v)
}

fn add(pos: Pos, a: Val, b: Val) -> Result<Val, DslError> {
    if a.terms.is_zero() {
        return Ok(b);
    }
    if b.terms.is_zero() {
        return Ok(a);
    }
    if a.arity != b.arity {
        return Err(inv(pos, format!("cannot add tensors of arity {} and {}", a.arity, b.arity)));
    }
    limit(pos, Val { arity: a.arity, terms: a.terms.add(&b.terms) })
}

fn mul(pos: Pos, a: &Val, b: &Val) -> Result<Val, DslError> {
    if let Some(c) = a.as_scalar() {
        return Ok(Val { arity: b.arity, terms: b.terms.scale(&c) });
    }
    if let Some(c) = b.as_scalar() {
        return Ok(Val { arity: a.arity, terms: a.terms.scale(&c) });
    }
    if a.arity != 1 || b.arity != 1 {
        return Err(inv(pos, "tensors can only be multiplied by scalars"));
    }
    if a.terms.len().saturating_mul(b.terms.len()) > MAX_TERMS {
        return Err(inv(pos, format!("expression has more than {MAX_TERMS} terms")));
    }
    let mut out = LinComb::zero();
    for (x, cx) in a.terms.iter() {
        for (y, cy) in b.terms.iter() {
            let mut w = x[0].clone();
            w.extend(y[0].iter().cloned());
            out.add_term(vec![w], cx * cy);
        }
    }
    Ok(Val { arity: 1, terms: out })
}

fn tensor(pos: Pos, a: &Val, b: &Val) -> Result<Val, DslError> {
    if a.terms.len().saturating_mul(b.terms.len()) > MAX_TERMS {
        return Err(inv(pos, format!("expression has more than {MAX_TERMS} terms")));
    }
    let mut out = LinComb::zero();
    for (x, cx) in a.terms.iter() {
        for (y, cy) in b.terms.iter() {
            let mut k = x.clone();
            k.extend(y.iter().cloned());
            out.add_term(k, cx * cy);
        }
    }
    Ok(Val { arity: a.arity + b.arity, terms: out })
}

fn invert(pos: Pos, v: &Val) -> Result<Scalar, DslError> {
    let c = v.as_scalar().ok_or_else(|| inv(pos, "only scalars can be inverted"))?;
    c.invert_monomial().map_err(|e| inv(pos, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_generator_with_square_zero() {
        let doc = parse_presentation("gen theta : odd; rel theta*theta = 0;").unwrap();
        let alg = &doc.algebras[0];
        assert_eq!(alg.generators, vec![GeneratorDoc { name: "theta".into(), parity: Parity::Odd, weight: 1 }]);
        assert_eq!(alg.relations.len(), 1);
        assert!(alg.relations[0].rhs.is_zero());
    }

    #[test]
    fn undeclared_generator_is_located() {
        let e = parse_presentation("gen z0 : even;\nrel z0*z1 = z1*z0 + (i/k)*z1;").unwrap_err();
        assert_eq!(e, DslError::UndeclaredGenerator { line: 2, col: 8, name: "z1".into() });
    }

    #[test]
    fn scalar_expressions() {
        let (arity, v) = parse_expression("-(i/2)*k^-1 + 3/4 - 2*i^2", &|_| false).unwrap();
        assert_eq!(arity, 1);
        let expected = &(&Scalar::imag(-1, 2, -1) + &Scalar::rational(3, 4)) + &Scalar::from_int(2);
        assert_eq!(v.coefficient(&vec![vec![]]), expected);
    }

    #[test]
    fn tensors_distribute() {
        let (arity, v) = parse_expression("(a + 2*b) @ (1 - a)", &|n| n == "a" || n == "b").unwrap();
        assert_eq!(arity, 2);
        assert_eq!(v.len(), 4);
        let k = vec![vec!["b".to_string()], vec!["a".to_string()]];
        assert_eq!(v.coefficient(&k), Scalar::from_int(-2));
    }

    #[test]
    fn parity_mismatch_in_relation() {
        let e = parse_presentation("gen a : even; gen t : odd; rel t*a = a;").unwrap_err();
        assert!(matches!(e, DslError::ParityMismatch { line: 1, .. }));
    }

    #[test]
    fn syntax_errors_list_expectations() {
        let e = parse_presentation("algebra x { gen a : maybe; }").unwrap_err();
        match e {
            DslError::Syntax { expected, .. } => assert!(expected.contains(&"odd".to_string())),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_inputs_do_not_panic() {
        for text in ["(((", "gen", "rel a*b", "x^99", "2^-0", "1/0", "check { seed 99999999999999999999999; }", "a <| b", "\"open"] {
            assert!(parse_presentation(text).is_err(), "{text}");
        }
        let deep = "(".repeat(10_000);
        assert!(parse_expression(&deep, &|_| false).is_err());
    }
}
