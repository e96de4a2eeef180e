//! Canonical rendering of documents; `parse_presentation(print_presentation(d))`
//! reproduces `d`.

use std::fmt::Write;

use super::ast::*;
use super::lexer::quote;
use crate::presentation::render_terms;

/// Canonical text of a value: terms by total length, then by the names.
pub fn render_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut keys: Vec<&NameKey> = p.keys().collect();
    keys.sort_by(|a, b| {
        let len = |k: &NameKey| k.iter().map(Vec::len).sum::<usize>();
        len(a).cmp(&len(b)).then_with(|| a.cmp(b))
    });
    let terms = keys.into_iter().map(|k| {
        let mono = k.iter().map(|w| if w.is_empty() { "1".to_string() } else { w.join("*") }).collect::<Vec<_>>().join(" @ ");
        let is_unit = k.len() == 1 && k[0].is_empty();
        (mono, is_unit, p.coefficient(k))
    });
    render_terms(terms)
}

pub fn print_presentation(doc: &PresentationDoc) -> String {
    let mut out = String::from("# header\n");
    if let Some(name) = &doc.name {
        writeln!(out, "presentation {name};").unwrap();
    }
    for (kw, list) in [("convention", &doc.conventions), ("note", &doc.notes), ("symbol", &doc.symbols)] {
        for (k, v) in list {
            writeln!(out, "{kw} {k} = {};", quote(v)).unwrap();
        }
    }
    out.push_str("\n# algebras\n");
    for alg in &doc.algebras {
        writeln!(out, "algebra {} {{", alg.name).unwrap();
        for g in &alg.generators {
            let parity = if g.parity.is_odd() { "odd" } else { "even" };
            if g.weight == 1 {
                writeln!(out, "  gen {} : {parity};", g.name).unwrap();
            } else {
                writeln!(out, "  gen {} : {parity} weight {};", g.name, g.weight).unwrap();
            }
        }
        for r in &alg.relations {
            writeln!(out, "  rel {}*{} = {};", r.lhs[0], r.lhs[1], render_poly(&r.rhs)).unwrap();
        }
        for (g, v) in &alg.coproduct {
            writeln!(out, "  coproduct {g} = {};", render_poly(v)).unwrap();
        }
        for (g, c) in &alg.counit {
            writeln!(out, "  counit {g} = {c};").unwrap();
        }
        for (g, v) in &alg.antipode {
            writeln!(out, "  antipode {g} = {};", render_poly(v)).unwrap();
        }
        out.push_str("}\n");
    }
    out.push_str("\n# bicross\n");
    if let Some(b) = &doc.bicross {
        out.push_str("bicross {\n");
        writeln!(out, "  acting {};", b.acting).unwrap();
        writeln!(out, "  acted {};", b.acted).unwrap();
        for (a, h, v) in &b.action {
            writeln!(out, "  action {a} <| {h} = {};", render_poly(v)).unwrap();
        }
        for (h, v) in &b.coaction {
            writeln!(out, "  coaction {h} = {};", render_poly(v)).unwrap();
        }
        out.push_str("}\n");
    }
    out.push_str("\n# checks\n");
    if let Some(c) = &doc.checks {
        out.push_str("check {\n");
        if !c.suites.is_empty() {
            let names: Vec<&str> = c.suites.iter().map(|s| s.keyword()).collect();
            writeln!(out, "  suites {};", names.join(", ")).unwrap();
        }
        if let Some(n) = c.max_degree {
            writeln!(out, "  max_degree {n};").unwrap();
        }
        if let Some(n) = c.samples {
            writeln!(out, "  samples {n};").unwrap();
        }
        if let Some(n) = c.seed {
            writeln!(out, "  seed {n};").unwrap();
        }
        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_presentation;
    use super::*;

    #[test]
    fn empty_doc_skeleton() {
        let text = print_presentation(&PresentationDoc::default());
        assert_eq!(text, "# header\n\n# algebras\n\n# bicross\n\n# checks\n");
        assert_eq!(parse_presentation(&text).unwrap(), PresentationDoc::default());
    }

    #[test]
    fn scalar_syntax_is_canonical() {
        let doc = parse_presentation("gen a : even; antipode a = -a*(i/(2*k)) ; counit a = 1 - i/(2*k);").unwrap();
        let text = print_presentation(&doc);
        assert!(text.contains("antipode a = -(i/2)*k^-1*a;"), "{text}");
        assert!(text.contains("counit a = 1 - (i/2)*k^-1;"), "{text}");
        assert_eq!(parse_presentation(&text).unwrap(), doc);
    }

    #[test]
    fn roundtrip_with_all_sections() {
        let text = r#"
            presentation demo;
            convention metric = "+---";
            note fix = "a \"quoted\" note";
            algebra h { gen x : even weight 2; gen t : 1; rel t*t = 0; rel t*x = x*t + (i/k)*t;
                        coproduct t = t @ 1 + 1 @ t; counit t = 0; antipode t = -t; }
            algebra g { gen a : even; coproduct a = a @ a; counit a = 1; antipode a = a; }
            bicross { acting h; acted g; action a <| x = (1/2)*a; coaction x = 1 @ x; coaction t = a @ t; }
            check { suites bialgebra, built; max_degree 3; seed 7; }
        "#;
        let doc = parse_presentation(text).unwrap();
        let printed = print_presentation(&doc);
        let again = parse_presentation(&printed).unwrap();
        assert_eq!(again, doc);
        assert_eq!(print_presentation(&again), printed);
    }
}
