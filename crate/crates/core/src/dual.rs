//! Quadratic duals.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::koszul::canonical_span;
use crate::linalg::{kernel, Matrix};
use crate::quiver::{opposite, same_presentation, BoundQuiver, Element, Path, VertexId};

/// Composable length-2 words of `q`, grouped by component, in path order.
pub fn quadratic_words(q: &BoundQuiver) -> BTreeMap<(VertexId, VertexId), Vec<Path>> {
    let mut out: BTreeMap<(VertexId, VertexId), Vec<Path>> = BTreeMap::new();
    for b in 0..q.arrow_count() {
        for a in q.arrows_from(q.arrow(b).target) {
            let w = Path::arrow(q, a).compose(&Path::arrow(q, b)).unwrap();
            out.entry((w.source(), w.target())).or_default().push(w);
        }
    }
    for words in out.values_mut() {
        words.sort();
    }
    out
}

/// Annihilator of the relation span under the standard pairing of words,
/// componentwise and in canonical form.
pub fn orthogonal_relations(q: &BoundQuiver) -> Result<Vec<Element>> {
    if !q.is_quadratic() {
        return Err(Error::NotQuadratic(format!("relation of degree {}", q.max_relation_degree())));
    }
    let field = q.field();
    let mut out = Vec::new();
    for ((from, to), words) in quadratic_words(q) {
        let rows: Vec<Vec<_>> = q
            .relations()
            .iter()
            .filter(|r| r.endpoints() == Some((from, to)))
            .map(|r| words.iter().map(|w| r.coefficient(w).cloned().unwrap_or_else(|| field.zero())).collect())
            .collect();
        let perp: Vec<Element> = if rows.is_empty() {
            words.iter().map(|w| Element::from_path(w.clone(), field.one())).collect()
        } else {
            kernel(&Matrix::from_rows(field, words.len(), rows)?)
                .into_iter()
                .map(|v| {
                    let mut e = Element::zero();
                    for (w, c) in words.iter().zip(v) {
                        e.add_term(w.clone(), c);
                    }
                    e
                })
                .collect()
        };
        out.extend(canonical_span(field, &perp));
    }
    Ok(out)
}

/// `Λ^!`: the opposite quiver with arrows `α*` and relations `R⊥`.
pub fn quadratic_dual(q: &BoundQuiver) -> Result<BoundQuiver> {
    let mut base = q.clone();
    base.relations = orthogonal_relations(q)?;
    base.n = None;
    base.translation.clear();
    Ok(opposite(&base))
}

/// The Koszul dual `E(Λ) = (Λ^!)^op`, presented on the quiver of `Λ` itself.
pub fn ext_algebra(q: &BoundQuiver) -> Result<BoundQuiver> {
    let mut out = q.clone();
    out.relations = orthogonal_relations(q)?;
    out.n = None;
    out.translation.clear();
    Ok(out)
}

/// `(Λ^!)^! = Λ` under `α** ↦ α`.
pub fn check_double_dual(q: &BoundQuiver) -> Result<bool> {
    let dd = quadratic_dual(&quadratic_dual(q)?)?;
    let restored = dd.renamed(|v| v.to_string(), |a| a.strip_suffix("**").unwrap_or(a).to_string());
    let mut plain = q.clone();
    plain.n = None;
    plain.translation.clear();
    Ok(same_presentation(&restored, &plain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_quiver;

    const A4RAD2: &str = "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\nrelation a2.a1\nrelation a3.a2\n";
    const TILDE: &str = "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\narrow b2 2 1\narrow b3 3 2\narrow b4 4 3\n\
        relation a2.a1\nrelation a3.a2\nrelation b2.b3\nrelation b3.b4\nrelation a1.b2 - b3.a2\nrelation a2.b3 - b4.a3\n";

    #[test]
    fn a4rad2_dual_is_relation_free() {
        let q = parse_quiver(A4RAD2).unwrap();
        let d = quadratic_dual(&q).unwrap();
        assert!(d.relations().is_empty());
        assert_eq!(d.arrow(0).name, "a1*");
        assert_eq!((d.arrow(0).source, d.arrow(0).target), (1, 0));
        assert!(check_double_dual(&q).unwrap());
    }

    #[test]
    fn loop_dual_and_back() {
        let q = parse_quiver("vertex 1\narrow x 1 1\nrelation x.x\n").unwrap();
        assert!(quadratic_dual(&q).unwrap().relations().is_empty());
        assert!(check_double_dual(&q).unwrap());
        let free = parse_quiver("vertex 1\narrow x 1 1\n").unwrap();
        let d = quadratic_dual(&free).unwrap();
        assert_eq!(d.relations().len(), 1);
    }

    #[test]
    fn tilde_dual_dimensions() {
        let q = parse_quiver(TILDE).unwrap();
        let d = quadratic_dual(&q).unwrap();
        assert_eq!((d.vertex_count(), d.arrow_count()), (4, 6));
        let words: usize = quadratic_words(&q).values().map(Vec::len).sum();
        assert_eq!(words, 10);
        assert_eq!(d.relations().len(), words - 6);
        assert!(check_double_dual(&q).unwrap());
    }

    #[test]
    fn relations_are_annihilated() {
        let q = parse_quiver("field gf 7\nvertex 1 2\narrow a 1 2\narrow b 1 2\narrow c 2 2\nrelation c.a - 2*c.b\n").unwrap();
        let perp = orthogonal_relations(&q).unwrap();
        assert_eq!(perp.len(), 2);
        let r = &q.relations()[0];
        let mixed = perp.iter().find(|e| e.endpoints() == Some((0, 1))).unwrap();
        assert_eq!(mixed.len(), 2);
        let pairing = mixed
            .terms()
            .map(|(p, x)| r.coefficient(p).map_or(q.field().zero(), |y| x * y))
            .fold(q.field().zero(), |acc, z| &acc + &z);
        assert!(pairing.is_zero());
        assert!(check_double_dual(&q).unwrap());
    }
}
