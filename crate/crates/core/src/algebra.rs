//! Graded normal-form bases of `k(Q) = kQ/(ρ)`.
//!
//! Paths of a fixed length are ordered lexicographically by arrow index. The
//! leading (smallest) words of ideal elements form a monomial ideal, so normal
//! words are closed under taking subwords. Degree `t` is therefore built from
//! the candidates `α·b` with `b` normal of degree `t-1`, and the relations
//! among candidates are the overlaps `α·NF(u·β) = NF(α·u)·β` together with
//! the defining relations of degree `t`.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Subspace, Vector};
use crate::quiver::{BoundQuiver, Element, Path, VertexId};

/// One graded piece `e_j Λ_t e_i` (with `i` the source, `j` the target).
#[derive(Clone, Debug)]
struct Block {
    candidates: Vec<Path>,
    index: HashMap<Path, usize>,
    relations: Subspace,
    normal_of: Vec<Option<usize>>,
    basis: Vec<Path>,
}

/// Loewy length of a graded algebra, or "above the cap".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Loewy {
    Finite(usize),
    AboveCap(usize),
}

impl std::fmt::Display for Loewy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Loewy::Finite(l) => write!(f, "{l}"),
            Loewy::AboveCap(d) => write!(f, ">{d}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GradedBasis {
    quiver: BoundQuiver,
    max_degree: usize,
    blocks: Vec<BTreeMap<(VertexId, VertexId), Block>>,
}

impl GradedBasis {
    pub fn new(q: &BoundQuiver, max_degree: usize) -> GradedBasis {
        let field = q.field();
        let mut gb = GradedBasis { quiver: q.clone(), max_degree, blocks: Vec::new() };
        let mut zero = BTreeMap::new();
        for v in 0..q.vertex_count() {
            let e = Path::trivial(v);
            zero.insert((v, v), Block {
                candidates: vec![e.clone()],
                index: HashMap::from([(e.clone(), 0)]),
                relations: Subspace::zero(field, 1),
                normal_of: vec![Some(0)],
                basis: vec![e],
            });
        }
        gb.blocks.push(zero);
        for t in 1..=max_degree {
            let level = gb.build_degree(t);
            gb.blocks.push(level);
        }
        gb
    }

    fn build_degree(&self, t: usize) -> BTreeMap<(VertexId, VertexId), Block> {
        let q = &self.quiver;
        let field = q.field();
        let mut candidates: BTreeMap<(VertexId, VertexId), Vec<Path>> = BTreeMap::new();
        for (&(src, mid), block) in &self.blocks[t - 1] {
            for alpha in q.arrows_from(mid) {
                let a = Path::arrow(q, alpha);
                for b in &block.basis {
                    let w = a.compose(b).expect("composable by construction");
                    candidates.entry((src, w.target())).or_default().push(w);
                }
            }
        }
        let mut level = BTreeMap::new();
        for ((src, tgt), mut words) in candidates {
            words.sort();
            let index: HashMap<Path, usize> = words.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
            let mut relations = Subspace::zero(field, words.len());
            let embed = |x: &Element, relations: &mut Subspace| {
                let mut v = vec![field.zero(); words.len()];
                for (p, c) in x.terms() {
                    let k = index[p];
                    v[k] = &v[k] + c;
                }
                relations.insert(v);
            };
            for rel in q.relations() {
                if rel.degree() == Some(t) && rel.endpoints() == Some((src, tgt)) {
                    let mut image = Element::zero();
                    for (p, c) in rel.terms() {
                        image = image.add(&self.lift(p).scale(c));
                    }
                    embed(&image, &mut relations);
                }
            }
            if t >= 3 {
                // overlaps: u·β with u a non-normal candidate of degree t-1
                for beta in q.arrows_from(src) {
                    let b = Path::arrow(q, beta);
                    let mid = q.arrow(beta).target;
                    let Some(prev) = self.blocks[t - 1].get(&(mid, tgt)) else { continue };
                    for (k, u) in prev.candidates.iter().enumerate() {
                        if prev.normal_of[k].is_some() {
                            continue;
                        }
                        let mut diff = self.lift(&u.compose(&b).unwrap());
                        let nf = self.reduce_candidates(t - 1, (mid, tgt), unit(field, prev.candidates.len(), k));
                        for (n, c) in nf.iter().enumerate() {
                            if !c.is_zero() {
                                let word = prev.basis[n].compose(&b).unwrap();
                                diff = diff.add(&self.lift(&word).scale(&-c));
                            }
                        }
                        embed(&diff, &mut relations);
                    }
                }
            }
            let mut normal_of = vec![None; words.len()];
            let mut basis = Vec::new();
            let mut pivots = relations.pivots().iter().copied().peekable();
            for (k, w) in words.iter().enumerate() {
                if pivots.peek() == Some(&k) {
                    pivots.next();
                } else {
                    normal_of[k] = Some(basis.len());
                    basis.push(w.clone());
                }
            }
            level.insert((src, tgt), Block { candidates: words, index, relations, normal_of, basis });
        }
        level
    }

    /// `φ(α·w') = α·NF(w')`, a combination of degree-`t` candidates.
    fn lift(&self, p: &Path) -> Element {
        let field = self.field();
        if p.len() <= 1 {
            return Element::from_path(p.clone(), field.one());
        }
        let (outer, inner) = p.split(&self.quiver, p.len() - 1);
        let t = inner.len();
        let Some(block) = self.blocks[t].get(&(inner.source(), inner.target())) else {
            return Element::zero();
        };
        let mut out = Element::zero();
        for (n, c) in self.nf_vector(&inner).iter().enumerate() {
            if !c.is_zero() {
                out.add_term(outer.compose(&block.basis[n]).unwrap(), c.clone());
            }
        }
        out
    }

    fn reduce_candidates(&self, t: usize, key: (VertexId, VertexId), mut v: Vector) -> Vector {
        let block = &self.blocks[t][&key];
        block.relations.reduce(&mut v);
        let mut out = vec![self.field().zero(); block.basis.len()];
        for (k, x) in v.into_iter().enumerate() {
            if let Some(n) = block.normal_of[k] {
                out[n] = x;
            } else {
                debug_assert!(x.is_zero());
            }
        }
        out
    }

    /// Coordinates of a path (of degree at most the cap) in the normal basis.
    fn nf_vector(&self, p: &Path) -> Vector {
        let t = p.len();
        let key = (p.source(), p.target());
        let Some(block) = self.blocks[t].get(&key) else { return Vec::new() };
        let field = self.field();
        if let Some(&k) = block.index.get(p) {
            return self.reduce_candidates(t, key, unit(field, block.candidates.len(), k));
        }
        let lifted = self.lift(p);
        let mut v = vec![field.zero(); block.candidates.len()];
        for (w, c) in lifted.terms() {
            let k = block.index[w];
            v[k] = &v[k] + c;
        }
        self.reduce_candidates(t, key, v)
    }

    pub fn quiver(&self) -> &BoundQuiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.quiver.field()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn check_degree(&self, t: usize) -> Result<()> {
        if t > self.max_degree {
            Err(Error::DegreeOverflow { degree: t, cap: self.max_degree })
        } else {
            Ok(())
        }
    }

    /// `dim e_to Λ_t e_from`; zero above the cap.
    pub fn dim(&self, t: usize, from: VertexId, to: VertexId) -> usize {
        self.blocks.get(t).and_then(|l| l.get(&(from, to))).map_or(0, |b| b.basis.len())
    }

    /// Normal-form basis paths of `e_to Λ_t e_from`, in path order.
    pub fn basis(&self, t: usize, from: VertexId, to: VertexId) -> &[Path] {
        self.blocks.get(t).and_then(|l| l.get(&(from, to))).map_or(&[], |b| b.basis.as_slice())
    }

    pub fn degree_dim(&self, t: usize) -> usize {
        self.blocks.get(t).map_or(0, |l| l.values().map(|b| b.basis.len()).sum())
    }

    /// Nonzero components `(from, to)` of degree `t`.
    pub fn components(&self, t: usize) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.blocks
            .get(t)
            .into_iter()
            .flat_map(|l| l.iter().filter(|(_, b)| !b.basis.is_empty()).map(|(k, _)| *k))
    }

    /// Coordinates of a path in the basis of its component.
    pub fn coords(&self, p: &Path) -> Result<Vector> {
        self.check_degree(p.len())?;
        let v = self.nf_vector(p);
        if v.is_empty() {
            return Ok(Vec::new());
        }
        Ok(v)
    }

    /// Coordinates of a homogeneous element lying in `e_to Λ_t e_from`.
    pub fn element_coords(&self, e: &Element, t: usize, from: VertexId, to: VertexId) -> Result<Vector> {
        self.check_degree(t)?;
        let mut out = vec![self.field().zero(); self.dim(t, from, to)];
        for (p, c) in e.terms() {
            if p.len() != t || p.source() != from || p.target() != to {
                return Err(Error::Endpoint(format!(
                    "{} is not in component ({t}, {}, {})",
                    self.quiver.path_string(p),
                    self.quiver.vertex_name(from),
                    self.quiver.vertex_name(to)
                )));
            }
            for (k, x) in self.coords(p)?.iter().enumerate() {
                if !x.is_zero() {
                    out[k] = &out[k] + &(c * x);
                }
            }
        }
        Ok(out)
    }

    pub fn element_from_coords(&self, t: usize, from: VertexId, to: VertexId, v: &[Scalar]) -> Element {
        let mut e = Element::zero();
        for (p, c) in self.basis(t, from, to).iter().zip(v) {
            e.add_term(p.clone(), c.clone());
        }
        e
    }

    pub fn normal_form(&self, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (p, c) in e.terms() {
            let coords = self.coords(p)?;
            for (b, x) in self.basis(p.len(), p.source(), p.target()).iter().zip(&coords) {
                out.add_term(b.clone(), c * x);
            }
        }
        Ok(out)
    }

    pub fn is_bound(&self, p: &Path) -> Result<bool> {
        Ok(self.coords(p)?.iter().any(|x| !x.is_zero()))
    }

    /// Product `x·y` (first `y`, then `x`) in normal form.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        if x.is_zero() || y.is_zero() {
            return Ok(Element::zero());
        }
        let (xs, _) = x.endpoints().ok_or_else(|| Error::Endpoint("left factor has mixed endpoints".into()))?;
        let (_, yt) = y.endpoints().ok_or_else(|| Error::Endpoint("right factor has mixed endpoints".into()))?;
        if xs != yt {
            return Err(Error::Endpoint(format!(
                "right factor ends at {} but left factor starts at {}",
                self.quiver.vertex_name(yt),
                self.quiver.vertex_name(xs)
            )));
        }
        let dx = x.degree().ok_or_else(|| Error::Dimension("inhomogeneous left factor".into()))?;
        let dy = y.degree().ok_or_else(|| Error::Dimension("inhomogeneous right factor".into()))?;
        self.check_degree(dx + dy)?;
        self.normal_form(&x.compose(y))
    }

    /// Coordinates of `left·right` for two paths; empty if the component vanishes.
    pub fn product_coords(&self, left: &Path, right: &Path) -> Result<Vector> {
        let p = left
            .compose(right)
            .ok_or_else(|| Error::Endpoint("paths do not compose".into()))?;
        self.coords(&p)
    }

    /// Every path of length at most `max_len` with nonzero image, in path order.
    pub fn bound_paths(&self, max_len: usize) -> Vec<Path> {
        let q = &self.quiver;
        let mut layer: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
        let mut all = layer.clone();
        for _ in 0..max_len.min(self.max_degree) {
            let mut next = Vec::new();
            for p in &layer {
                for alpha in q.arrows_from(p.target()) {
                    let w = Path::arrow(q, alpha).compose(p).unwrap();
                    if self.nf_vector(&w).iter().any(|x| !x.is_zero()) {
                        next.push(w);
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort();
        all
    }

    /// Largest `t ≤ D` with `Λ_t ≠ 0`.
    pub fn top_nonzero_degree(&self) -> Option<usize> {
        (0..self.blocks.len()).rev().find(|&t| self.degree_dim(t) > 0)
    }

    /// Top degree when it is certified below the cap.
    pub fn top_degree(&self) -> Option<usize> {
        match self.top_nonzero_degree() {
            Some(t) if t < self.max_degree => Some(t),
            Some(_) => None,
            None => Some(0),
        }
    }

    pub fn loewy_length(&self) -> Loewy {
        match self.top_nonzero_degree() {
            None => Loewy::Finite(0),
            Some(t) if t == self.max_degree => Loewy::AboveCap(self.max_degree),
            Some(t) => Loewy::Finite(t + 1),
        }
    }

    /// Total dimension, when finite within the cap.
    pub fn total_dim(&self) -> Option<usize> {
        self.top_degree()?;
        Some((0..self.blocks.len()).map(|t| self.degree_dim(t)).sum())
    }

    pub fn dims_json(&self) -> Value {
        let mut dims = Vec::new();
        for (t, level) in self.blocks.iter().enumerate() {
            for (&(from, to), block) in level.iter().filter(|(_, b)| !b.basis.is_empty()) {
                dims.push(json!({
                    "t": t,
                    "from": self.quiver.vertex_name(from),
                    "to": self.quiver.vertex_name(to),
                    "dim": block.basis.len(),
                }));
            }
        }
        let loewy = match self.loewy_length() {
            Loewy::Finite(l) => json!(l),
            Loewy::AboveCap(d) => json!(format!(">{d}")),
        };
        json!({ "dims": dims, "loewy": loewy })
    }
}

pub(crate) fn unit(field: Field, len: usize, k: usize) -> Vector {
    let mut v = vec![field.zero(); len];
    v[k] = field.one();
    v
}
