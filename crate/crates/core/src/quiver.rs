//! Bound quivers: vertices, arrows, paths, homogeneous relations.
//!
//! Paths are written right-to-left, like products in the algebra: the written
//! word `a2.a1` means "first `a1`, then `a2`". [`Path`] stores its arrows in
//! that written order, so composing two paths is concatenation of words.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Subspace;

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A path in the quiver, possibly trivial.
///
/// Ordering is lexicographic on the written word (arrow declaration indices),
/// which is the global path order used for normal forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    arrows: Vec<ArrowId>,
    source: VertexId,
    target: VertexId,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path { arrows: Vec::new(), source: v, target: v }
    }

    pub fn arrow(q: &BoundQuiver, a: ArrowId) -> Path {
        let arrow = &q.arrows[a];
        Path { arrows: vec![a], source: arrow.source, target: arrow.target }
    }

    /// Builds a path from its written word (last-applied arrow first).
    pub fn from_word(q: &BoundQuiver, word: &[ArrowId]) -> Result<Path> {
        let (Some(&last), Some(&first)) = (word.first(), word.last()) else {
            return Err(Error::Endpoint("empty word; use Path::trivial".into()));
        };
        for pair in word.windows(2) {
            let (outer, inner) = (&q.arrows[pair[0]], &q.arrows[pair[1]]);
            if inner.target != outer.source {
                return Err(Error::Endpoint(format!(
                    "{} ends at {} but {} starts at {}",
                    inner.name, q.vertices[inner.target], outer.name, q.vertices[outer.source]
                )));
            }
        }
        Ok(Path {
            arrows: word.to_vec(),
            source: q.arrows[first].source,
            target: q.arrows[last].target,
        })
    }

    pub(crate) fn from_parts(arrows: Vec<ArrowId>, source: VertexId, target: VertexId) -> Path {
        Path { arrows, source, target }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    /// The written word, last-applied arrow first.
    pub fn word(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// `self · right`: first `right`, then `self`. `None` if not composable.
    pub fn compose(&self, right: &Path) -> Option<Path> {
        if right.target != self.source {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.arrows.len() + right.arrows.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&right.arrows);
        Some(Path { arrows, source: right.source, target: self.target })
    }

    /// All vertices visited, in application order, endpoints included.
    pub fn vertices(&self, q: &BoundQuiver) -> Vec<VertexId> {
        let mut vs = vec![self.source];
        for &a in self.arrows.iter().rev() {
            vs.push(q.arrows[a].target);
        }
        vs
    }

    /// Splits into `(outer, inner)` with `inner` the first `k` applied arrows.
    pub fn split(&self, q: &BoundQuiver, k: usize) -> (Path, Path) {
        let cut = self.arrows.len() - k;
        let mid = if k == 0 { self.source } else { q.arrows[self.arrows[cut]].target };
        let outer = Path { arrows: self.arrows[..cut].to_vec(), source: mid, target: self.target };
        let inner = Path { arrows: self.arrows[cut..].to_vec(), source: self.source, target: mid };
        (outer, inner)
    }
}

/// A linear combination of paths with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Path, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn from_path(path: Path, coef: Scalar) -> Element {
        let mut e = Element::zero();
        e.add_term(path, coef);
        e
    }

    pub fn add_term(&mut self, path: Path, coef: Scalar) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&path) {
            Some(c) => {
                let sum = &*c + &coef;
                if sum.is_zero() {
                    self.terms.remove(&path);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(path, coef);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, path: &Path) -> Option<&Scalar> {
        self.terms.get(path)
    }

    pub fn leading_path(&self) -> Option<&Path> {
        self.terms.keys().next()
    }

    /// Degree (common path length); `None` for the zero element or a mixed one.
    pub fn degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Path::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    /// Common `(source, target)`; `None` if zero or mixed.
    pub fn endpoints(&self) -> Option<(VertexId, VertexId)> {
        let mut ends = self.terms.keys().map(|p| (p.source, p.target));
        let first = ends.next()?;
        ends.all(|e| e == first).then_some(first)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut e = Element::zero();
        for (p, x) in &self.terms {
            e.add_term(p.clone(), x * c);
        }
        e
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut e = self.clone();
        for (p, x) in &other.terms {
            e.add_term(p.clone(), x.clone());
        }
        e
    }

    /// Product in the path algebra `kQ` (no relations applied).
    pub fn compose(&self, right: &Element) -> Element {
        let mut e = Element::zero();
        for (p, x) in &self.terms {
            for (r, y) in &right.terms {
                if let Some(pr) = p.compose(r) {
                    e.add_term(pr, x * y);
                }
            }
        }
        e
    }

    pub fn map_paths(&self, mut f: impl FnMut(&Path) -> Path) -> Element {
        let mut e = Element::zero();
        for (p, x) in &self.terms {
            e.add_term(f(p), x.clone());
        }
        e
    }
}

/// A finite quiver with homogeneous relations over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiver {
    pub(crate) field: Field,
    pub(crate) vertices: Vec<String>,
    pub(crate) arrows: Vec<Arrow>,
    pub(crate) relations: Vec<Element>,
    pub(crate) n: Option<usize>,
    pub(crate) translation: Vec<(VertexId, VertexId)>,
}

impl BoundQuiver {
    pub fn new(field: Field) -> BoundQuiver {
        BoundQuiver {
            field,
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
            n: None,
            translation: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.vertices.push(name.into());
        self.vertices.len() - 1
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, source: VertexId, target: VertexId) -> ArrowId {
        self.arrows.push(Arrow { name: name.into(), source, target });
        self.arrows.len() - 1
    }

    pub fn add_relation(&mut self, rel: Element) {
        self.relations.push(rel);
    }

    pub fn set_translation_degree(&mut self, n: Option<usize>) {
        self.n = n;
    }

    /// Declares `τ(i) = j`.
    pub fn add_translation(&mut self, i: VertexId, j: VertexId) {
        self.translation.push((i, j));
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn translation_degree(&self) -> Option<usize> {
        self.n
    }

    pub fn declared_translation(&self) -> &[(VertexId, VertexId)] {
        &self.translation
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn require_vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_id(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    pub fn arrows_between(&self, from: VertexId, to: VertexId) -> Vec<ArrowId> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].source == from && self.arrows[a].target == to)
            .collect()
    }

    /// Builds a relation from written words such as `[(1, "a2.a1"), (-1, "a3.a2")]`.
    pub fn element(&self, terms: &[(i64, &str)]) -> Result<Element> {
        let mut e = Element::zero();
        for &(c, word) in terms {
            let ids = word
                .split('.')
                .map(|name| {
                    self.arrow_id(name)
                        .ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow '{name}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            e.add_term(Path::from_word(self, &ids)?, self.field.from_i64(c));
        }
        Ok(e)
    }

    pub fn path_string(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("e{}", self.vertices[p.source]);
        }
        p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
    }

    /// `a1.b2 - b3.a2` style rendering, in path order.
    pub fn element_string(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (p, c)) in e.terms().enumerate() {
            let neg = c.is_negative();
            let magnitude = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !magnitude.is_one() {
                out.push_str(&format!("{magnitude}*"));
            }
            out.push_str(&self.path_string(p));
        }
        out
    }

    /// Maximum relation degree (0 if there are none).
    pub fn max_relation_degree(&self) -> usize {
        self.relations.iter().filter_map(Element::degree).max().unwrap_or(0)
    }

    pub fn is_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.degree() == Some(2))
    }

    /// Full subquiver on `keep`. Relation terms through removed vertices are
    /// dropped; relations whose endpoints are removed disappear.
    pub fn full_subquiver(&self, keep: &BTreeSet<VertexId>) -> BoundQuiver {
        let mut out = BoundQuiver::new(self.field);
        let mut vmap = HashMap::new();
        for &v in keep {
            vmap.insert(v, out.add_vertex(self.vertices[v].clone()));
        }
        let mut amap = HashMap::new();
        for (a, arrow) in self.arrows.iter().enumerate() {
            if let (Some(&s), Some(&t)) = (vmap.get(&arrow.source), vmap.get(&arrow.target)) {
                amap.insert(a, out.add_arrow(arrow.name.clone(), s, t));
            }
        }
        for rel in &self.relations {
            let mut kept = Element::zero();
            for (p, c) in rel.terms() {
                if p.arrows.iter().all(|a| amap.contains_key(a)) {
                    let word: Vec<_> = p.arrows.iter().map(|a| amap[a]).collect();
                    kept.add_term(Path::from_parts(word, vmap[&p.source], vmap[&p.target]), c.clone());
                }
            }
            if !kept.is_zero() {
                out.add_relation(kept);
            }
        }
        out.n = self.n;
        for &(i, j) in &self.translation {
            if let (Some(&a), Some(&b)) = (vmap.get(&i), vmap.get(&j)) {
                out.add_translation(a, b);
            }
        }
        out
    }

    /// Renames vertices and arrows, keeping the structure.
    pub fn renamed(&self, vertex: impl Fn(&str) -> String, arrow: impl Fn(&str) -> String) -> BoundQuiver {
        let mut q = self.clone();
        for v in q.vertices.iter_mut() {
            *v = vertex(v);
        }
        for a in q.arrows.iter_mut() {
            a.name = arrow(&a.name);
        }
        q
    }
}

/// One violation found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Issue {
    EmptyName,
    DuplicateVertex(String),
    DuplicateArrow(String),
    DanglingEndpoint { arrow: String },
    NonComposable { relation: usize },
    ZeroRelation { relation: usize },
    RelationDegreeBelowTwo { relation: usize, degree: usize },
    MixedDegree { relation: usize },
    MixedEndpoints { relation: usize },
    BadTranslation { from: VertexId, to: VertexId },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::EmptyName => write!(f, "empty vertex or arrow name"),
            Issue::DuplicateVertex(v) => write!(f, "duplicate vertex '{v}'"),
            Issue::DuplicateArrow(a) => write!(f, "duplicate arrow '{a}'"),
            Issue::DanglingEndpoint { arrow } => write!(f, "arrow '{arrow}' has a dangling endpoint"),
            Issue::NonComposable { relation } => write!(f, "relation {relation}: non-composable path"),
            Issue::ZeroRelation { relation } => write!(f, "relation {relation}: zero relation"),
            Issue::RelationDegreeBelowTwo { relation, degree } => {
                write!(f, "relation {relation}: relation degree < 2 (degree {degree})")
            }
            Issue::MixedDegree { relation } => write!(f, "relation {relation}: mixed degrees"),
            Issue::MixedEndpoints { relation } => write!(f, "relation {relation}: mixed endpoints"),
            Issue::BadTranslation { from, to } => write!(f, "translation {from} -> {to} names a missing vertex"),
        }
    }
}

/// Structural validation; an empty result means the quiver is valid.
pub fn validate(q: &BoundQuiver) -> Vec<Issue> {
    let mut issues = Vec::new();
    let mut seen = HashSet::new();
    for v in &q.vertices {
        if v.is_empty() {
            issues.push(Issue::EmptyName);
        } else if !seen.insert(v.as_str()) {
            issues.push(Issue::DuplicateVertex(v.clone()));
        }
    }
    let mut seen = HashSet::new();
    for a in &q.arrows {
        if a.name.is_empty() {
            issues.push(Issue::EmptyName);
        } else if !seen.insert(a.name.as_str()) {
            issues.push(Issue::DuplicateArrow(a.name.clone()));
        }
        if a.source >= q.vertices.len() || a.target >= q.vertices.len() {
            issues.push(Issue::DanglingEndpoint { arrow: a.name.clone() });
        }
    }
    let arrows_ok = issues.iter().all(|i| !matches!(i, Issue::DanglingEndpoint { .. }));
    for (k, rel) in q.relations.iter().enumerate() {
        if rel.is_zero() {
            issues.push(Issue::ZeroRelation { relation: k });
            continue;
        }
        if arrows_ok && !rel.terms().all(|(p, _)| path_is_consistent(q, p)) {
            issues.push(Issue::NonComposable { relation: k });
            continue;
        }
        match rel.degree() {
            None => issues.push(Issue::MixedDegree { relation: k }),
            Some(d) if d < 2 => issues.push(Issue::RelationDegreeBelowTwo { relation: k, degree: d }),
            Some(_) => {}
        }
        if rel.endpoints().is_none() {
            issues.push(Issue::MixedEndpoints { relation: k });
        }
    }
    for &(i, j) in &q.translation {
        if i >= q.vertices.len() || j >= q.vertices.len() {
            issues.push(Issue::BadTranslation { from: i, to: j });
        }
    }
    issues
}

fn path_is_consistent(q: &BoundQuiver, p: &Path) -> bool {
    if p.arrows.iter().any(|&a| a >= q.arrows.len()) {
        return false;
    }
    if p.is_trivial() {
        return p.source == p.target;
    }
    match Path::from_word(q, &p.arrows) {
        Ok(r) => r.source == p.source && r.target == p.target,
        Err(_) => false,
    }
}

/// The opposite quiver: every arrow `α: i → j` becomes `α*: j → i`, words
/// are reversed, and the declared translation is inverted.
pub fn opposite(q: &BoundQuiver) -> BoundQuiver {
    let mut op = BoundQuiver::new(q.field);
    op.vertices = q.vertices.clone();
    op.arrows = q
        .arrows
        .iter()
        .map(|a| Arrow { name: format!("{}*", a.name), source: a.target, target: a.source })
        .collect();
    op.relations = q.relations.iter().map(|r| r.map_paths(reverse_path)).collect();
    op.n = q.n;
    op.translation = q.translation.iter().map(|&(i, j)| (j, i)).collect();
    op
}

pub(crate) fn reverse_path(p: &Path) -> Path {
    let mut arrows = p.arrows.clone();
    arrows.reverse();
    Path { arrows, source: p.target, target: p.source }
}

/// Whether two quivers present the same algebra on the nose: identical vertex
/// and arrow names with the same endpoints (arrow order may differ) and the
/// same relation span in every degree and component.
pub fn same_presentation(a: &BoundQuiver, b: &BoundQuiver) -> bool {
    if a.field != b.field || a.vertices.len() != b.vertices.len() || a.arrows.len() != b.arrows.len() {
        return false;
    }
    let vmap: Option<Vec<VertexId>> = a.vertices.iter().map(|v| b.vertex_id(v)).collect();
    let Some(vmap) = vmap else { return false };
    let mut amap = Vec::with_capacity(a.arrows.len());
    for arrow in &a.arrows {
        match b.arrow_id(&arrow.name) {
            Some(k) if b.arrows[k].source == vmap[arrow.source] && b.arrows[k].target == vmap[arrow.target] => {
                amap.push(k)
            }
            _ => return false,
        }
    }
    let translated: Vec<Element> = a
        .relations
        .iter()
        .map(|r| {
            r.map_paths(|p| Path {
                arrows: p.arrows.iter().map(|&x| amap[x]).collect(),
                source: vmap[p.source],
                target: vmap[p.target],
            })
        })
        .collect();
    relation_spans_equal(a.field, &translated, &b.relations)
}

/// Compares `span(xs)` and `span(ys)` inside the space of paths they mention.
pub fn relation_spans_equal(field: Field, xs: &[Element], ys: &[Element]) -> bool {
    let mut paths: BTreeSet<&Path> = BTreeSet::new();
    for e in xs.iter().chain(ys) {
        paths.extend(e.terms().map(|(p, _)| p));
    }
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let span = |es: &[Element]| {
        Subspace::spanned_by(
            field,
            paths.len(),
            es.iter().map(|e| {
                let mut v = vec![field.zero(); paths.len()];
                for (p, c) in e.terms() {
                    v[index[p]] = c.clone();
                }
                v
            }),
        )
    };
    span(xs) == span(ys)
}
