//! Line-oriented quiver text format and DOT export.
//!
//! ```text
//! field rational            # or: gf 7
//! n 0
//! vertex 1 2 3 4
//! arrow a1 1 2
//! relation a2.a1
//! relation a1.b2 - b3.a2
//! translation 2 -> 1
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{validate, BoundQuiver, Element, Path};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..k]));
                start = None;
            }
            (false, None) => start = Some(k),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn looks_numeric(text: &str) -> bool {
    let body = text.strip_prefix('-').unwrap_or(text);
    let mut parts = body.splitn(2, '/');
    let int = |s: Option<&str>| s.is_some_and(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()));
    let num = parts.next();
    match parts.next() {
        Some(den) => int(num) && int(Some(den)),
        None => int(num),
    }
}

pub fn parse_quiver(text: &str) -> Result<BoundQuiver> {
    let mut q = BoundQuiver::new(Field::Rational);
    let mut seen_field = false;
    let mut seen_content = false;
    let mut pending_relations = Vec::new();
    let mut pending_translations = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(col, keyword)) = toks.first() else { continue };
        let args = &toks[1..];
        match keyword {
            "field" => {
                if seen_field || seen_content {
                    return Err(parse_err(line_no, col, "field must be declared once, before any content"));
                }
                seen_field = true;
                q.field = match args {
                    [(_, "rational")] => Field::Rational,
                    [(_, "gf"), (c, p)] => {
                        let p: u64 = p.parse().map_err(|_| parse_err(line_no, *c, "expected a prime"))?;
                        Field::prime(p).map_err(|e| parse_err(line_no, *c, e.to_string()))?
                    }
                    _ => return Err(parse_err(line_no, col, "expected 'field rational' or 'field gf <p>'")),
                };
            }
            "n" => {
                let [(c, v)] = args else {
                    return Err(parse_err(line_no, col, "expected 'n <integer>'"));
                };
                let n: usize = v.parse().map_err(|_| parse_err(line_no, *c, "expected a nonnegative integer"))?;
                q.n = Some(n);
            }
            "vertex" => {
                seen_content = true;
                if args.is_empty() {
                    return Err(parse_err(line_no, col, "expected at least one vertex name"));
                }
                for &(c, name) in args {
                    if q.vertex_id(name).is_some() {
                        return Err(parse_err(line_no, c, format!("duplicate vertex '{name}'")));
                    }
                    q.add_vertex(name);
                }
            }
            "arrow" => {
                seen_content = true;
                let [(c, name), (cs, s), (ct, t)] = args else {
                    return Err(parse_err(line_no, col, "expected 'arrow <name> <source> <target>'"));
                };
                if q.arrow_id(name).is_some() {
                    return Err(parse_err(line_no, *c, format!("duplicate arrow '{name}'")));
                }
                if name.contains('.') || looks_numeric(name) {
                    return Err(parse_err(line_no, *c, format!("invalid arrow name '{name}'")));
                }
                let s = q.vertex_id(s).ok_or_else(|| parse_err(line_no, *cs, format!("unknown vertex '{s}'")))?;
                let t = q.vertex_id(t).ok_or_else(|| parse_err(line_no, *ct, format!("unknown vertex '{t}'")))?;
                q.add_arrow(*name, s, t);
            }
            "relation" => {
                seen_content = true;
                pending_relations.push((line_no, col, args.iter().map(|&(c, s)| (c, s.to_string())).collect::<Vec<_>>()));
            }
            "translation" => {
                seen_content = true;
                let [(ci, i), (_, "->"), (cj, j)] = args else {
                    return Err(parse_err(line_no, col, "expected 'translation <i> -> <j>'"));
                };
                pending_translations.push((line_no, (*ci, i.to_string()), (*cj, j.to_string())));
            }
            other => return Err(parse_err(line_no, col, format!("unknown directive '{other}'"))),
        }
    }

    for (line_no, col, args) in pending_relations {
        let rel = parse_relation(&q, line_no, col, &args)?;
        q.add_relation(rel);
    }
    for (line_no, (ci, i), (cj, j)) in pending_translations {
        let i = q.vertex_id(&i).ok_or_else(|| parse_err(line_no, ci, format!("unknown vertex '{i}'")))?;
        let j = q.vertex_id(&j).ok_or_else(|| parse_err(line_no, cj, format!("unknown vertex '{j}'")))?;
        q.add_translation(i, j);
    }
    if let Some(issue) = validate(&q).first() {
        return Err(Error::InvalidQuiver(issue.to_string()));
    }
    Ok(q)
}

fn parse_relation(q: &BoundQuiver, line: usize, col: usize, args: &[(usize, String)]) -> Result<Element> {
    if args.is_empty() {
        return Err(parse_err(line, col, "empty relation"));
    }
    let field = q.field();
    let mut rel = Element::zero();
    let mut sign_negative = false;
    let mut expect_term = true;
    let mut degree = None;
    let mut ends = None;
    for (c, tok) in args {
        let c = *c;
        if tok == "+" || tok == "-" {
            if expect_term && (degree.is_some() || sign_negative) {
                return Err(parse_err(line, c, "two operators in a row"));
            }
            sign_negative = tok == "-";
            expect_term = true;
            continue;
        }
        if !expect_term {
            return Err(parse_err(line, c, "expected '+' or '-' between terms"));
        }
        let (neg, body) = match tok.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, tok.as_str()),
        };
        let (coef_text, word) = match body.split_once('*') {
            Some((pre, rest)) if looks_numeric(pre) => (Some(pre), rest),
            _ => (None, body),
        };
        let mut coef = match coef_text {
            Some(t) => field.parse_scalar(t).map_err(|e| parse_err(line, c, e.to_string()))?,
            None => field.one(),
        };
        if neg != sign_negative {
            coef = -coef;
        }
        let ids = word
            .split('.')
            .map(|name| q.arrow_id(name).ok_or_else(|| parse_err(line, c, format!("unknown arrow '{name}'"))))
            .collect::<Result<Vec<_>>>()?;
        let path = Path::from_word(q, &ids).map_err(|e| parse_err(line, c, e.to_string()))?;
        match degree {
            None => degree = Some(path.len()),
            Some(d) if d != path.len() => return Err(parse_err(line, c, "mixed-degree relation")),
            _ => {}
        }
        match ends {
            None => ends = Some((path.source(), path.target())),
            Some(e) if e != (path.source(), path.target()) => {
                return Err(parse_err(line, c, "mixed-endpoint relation"))
            }
            _ => {}
        }
        if path.len() < 2 {
            return Err(parse_err(line, c, "relation degree < 2"));
        }
        rel.add_term(path, coef);
        sign_negative = false;
        expect_term = false;
    }
    if expect_term {
        return Err(parse_err(line, col, "relation ends with an operator"));
    }
    if rel.is_zero() {
        return Err(parse_err(line, col, "relation is zero"));
    }
    Ok(rel)
}

/// Deterministic text serialization; `parse_quiver` inverts it.
pub fn serialize_quiver(q: &BoundQuiver) -> String {
    let mut out = String::new();
    match q.field() {
        Field::Rational => out.push_str("field rational\n"),
        Field::Prime(p) => writeln!(out, "field gf {p}").unwrap(),
    }
    if let Some(n) = q.translation_degree() {
        writeln!(out, "n {n}").unwrap();
    }
    if q.vertex_count() > 0 {
        writeln!(out, "vertex {}", q.vertex_names().join(" ")).unwrap();
    }
    for a in q.arrows() {
        writeln!(out, "arrow {} {} {}", a.name, q.vertex_name(a.source), q.vertex_name(a.target)).unwrap();
    }
    for r in q.relations() {
        writeln!(out, "relation {}", q.element_string(r)).unwrap();
    }
    for &(i, j) in q.declared_translation() {
        writeln!(out, "translation {} -> {}", q.vertex_name(i), q.vertex_name(j)).unwrap();
    }
    out
}

fn dot_id(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT export. Vertices named `<x>@<layer>` are grouped into one rank per layer.
pub fn export_dot(q: &BoundQuiver, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", dot_id(title)).unwrap();
    out.push_str("  rankdir=LR;\n");
    if !q.relations().is_empty() {
        out.push_str("  /* relations:\n");
        for r in q.relations() {
            writeln!(out, "     {}", q.element_string(r)).unwrap();
        }
        out.push_str("  */\n");
    }
    let mut layers: BTreeMap<i64, Vec<&str>> = BTreeMap::new();
    for v in q.vertex_names() {
        writeln!(out, "  {};", dot_id(v)).unwrap();
        if let Some(layer) = v.rsplit_once('@').and_then(|(_, l)| l.parse::<i64>().ok()) {
            layers.entry(layer).or_default().push(v);
        }
    }
    for members in layers.values() {
        let ids: Vec<String> = members.iter().map(|v| dot_id(v)).collect();
        writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
    }
    for a in q.arrows() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_id(q.vertex_name(a.source)),
            dot_id(q.vertex_name(a.target)),
            dot_id(&a.name)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const A4RAD2: &str = "field rational\nvertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\nrelation a2.a1\nrelation a3.a2\n";

    #[test]
    fn parses_a4rad2() {
        let q = parse_quiver(A4RAD2).unwrap();
        assert_eq!((q.vertex_count(), q.arrow_count(), q.relations().len()), (4, 3, 2));
    }

    #[test]
    fn single_vertex_is_valid() {
        let q = parse_quiver("vertex x\n").unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.arrow_count(), 0);
    }

    #[test]
    fn composability_error_has_position() {
        let text = A4RAD2.replace("relation a3.a2", "relation a1.a2");
        match parse_quiver(&text) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (7, 10));
                assert!(message.contains("a2"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mixed_degree_rejected() {
        let text = format!("{A4RAD2}relation a3.a2.a1 + a2.a1\n");
        assert!(matches!(parse_quiver(&text), Err(Error::Parse { line: 8, .. })));
    }

    #[test]
    fn coefficients_and_starred_names() {
        let text = "field gf 5\nvertex 1 2 3\narrow a* 1 2\narrow b* 2 3\narrow c 1 2\narrow d 2 3\nrelation b*.a* - 2*d.c + -1/2*b*.c\n";
        let q = parse_quiver(text).unwrap();
        let rel = &q.relations()[0];
        assert_eq!(rel.len(), 3);
        let back = parse_quiver(&serialize_quiver(&q)).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn roundtrip_is_stable() {
        let text = "field rational\nn 1\nvertex 1 2\narrow a 1 2\narrow b 2 1\nrelation a.b.a\nrelation b.a.b\ntranslation 1 -> 1\ntranslation 2 -> 2\n";
        let q = parse_quiver(text).unwrap();
        assert_eq!(serialize_quiver(&q), text);
    }

    #[test]
    fn dot_lists_edges_and_relations() {
        let q = parse_quiver(A4RAD2).unwrap();
        let dot = export_dot(&q, "a4rad2");
        assert!(dot.contains("\"1\" -> \"2\" [label=\"a1\"]"));
        assert!(dot.contains("a3.a2"));
    }
}
