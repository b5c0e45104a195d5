//! Koszul spaces `K^t`, per-vertex Koszul complexes and the `(p,q)` classification.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::{json, Value};

use crate::algebra::GradedBasis;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rank, Matrix, Subspace};
use crate::quiver::{BoundQuiver, Element, Path, VertexId};
use crate::resolution::Generator;
use crate::translation::{check_n_translation, infer_translation};

/// Rref-canonical basis of `span(elements)`, over the paths they mention.
pub(crate) fn canonical_span(field: Field, elements: &[Element]) -> Vec<Element> {
    let paths: BTreeSet<Path> = elements.iter().flat_map(|e| e.terms().map(|(p, _)| p.clone())).collect();
    let paths: Vec<Path> = paths.into_iter().collect();
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let space = Subspace::spanned_by(
        field,
        paths.len(),
        elements.iter().map(|e| {
            let mut v = vec![field.zero(); paths.len()];
            for (p, c) in e.terms() {
                v[index[p]] = c.clone();
            }
            v
        }),
    );
    space.basis().iter().map(|v| vector_to_element(&paths, v)).collect()
}

fn vector_to_element(paths: &[Path], v: &[crate::field::Scalar]) -> Element {
    let mut e = Element::zero();
    for (p, c) in paths.iter().zip(v) {
        if !c.is_zero() {
            e.add_term(p.clone(), c.clone());
        }
    }
    e
}

/// `span(xs) ∩ span(ys)` as a canonical basis.
pub(crate) fn intersect_spans(field: Field, xs: &[Element], ys: &[Element]) -> Vec<Element> {
    if xs.is_empty() || ys.is_empty() {
        return Vec::new();
    }
    let paths: BTreeSet<Path> = xs.iter().chain(ys).flat_map(|e| e.terms().map(|(p, _)| p.clone())).collect();
    let paths: Vec<Path> = paths.into_iter().collect();
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(k, p)| (p, k)).collect();
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
    span(xs).intersect(&span(ys)).basis().iter().map(|v| vector_to_element(&paths, v)).collect()
}

/// `K^0, …, K^T` as subspaces of the free path spaces, stored per component.
#[derive(Clone, Debug)]
pub struct KoszulSpaces {
    cap: usize,
    spaces: Vec<BTreeMap<(VertexId, VertexId), Vec<Element>>>,
}

impl KoszulSpaces {
    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Canonical basis of `e_to K^t e_from`.
    pub fn basis(&self, t: usize, from: VertexId, to: VertexId) -> &[Element] {
        self.spaces.get(t).and_then(|m| m.get(&(from, to))).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, t: usize, from: VertexId, to: VertexId) -> usize {
        self.basis(t, from, to).len()
    }

    pub fn degree_dim(&self, t: usize) -> usize {
        self.spaces.get(t).map_or(0, |m| m.values().map(Vec::len).sum())
    }

    /// First `t` with `K^t = 0`, if it occurs within the cap.
    pub fn vanishing_degree(&self) -> Option<usize> {
        (0..=self.cap).find(|&t| self.degree_dim(t) == 0)
    }

    /// Number of computed degrees: `K^t` is known for `t < len`, and zero
    /// beyond when the sequence stopped early.
    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn components(&self, t: usize) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.spaces.get(t).into_iter().flat_map(|m| m.keys().copied())
    }
}

pub fn koszul_spaces(gb: &GradedBasis) -> Result<KoszulSpaces> {
    let q = gb.quiver();
    if !q.is_quadratic() {
        return Err(Error::NotQuadratic(format!("relation of degree {}", q.max_relation_degree())));
    }
    let field = gb.field();
    let cap = gb.max_degree();
    let mut spaces = Vec::new();
    spaces.push((0..q.vertex_count()).map(|v| ((v, v), vec![Element::from_path(Path::trivial(v), field.one())])).collect());
    let mut k1: BTreeMap<(VertexId, VertexId), Vec<Element>> = BTreeMap::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        k1.entry((arrow.source, arrow.target)).or_default().push(Element::from_path(Path::arrow(q, a), field.one()));
    }
    spaces.push(k1);
    if cap >= 2 {
        let mut k2: BTreeMap<(VertexId, VertexId), Vec<Element>> = BTreeMap::new();
        for r in q.relations() {
            k2.entry(r.endpoints().expect("nonzero relation")).or_default().push(r.clone());
        }
        let k2 = k2.into_iter().map(|(c, es)| (c, canonical_span(field, &es))).filter(|(_, b)| !b.is_empty()).collect();
        spaces.push(k2);
    }
    while spaces.len() <= cap && !spaces.last().is_some_and(|m: &BTreeMap<_, Vec<Element>>| m.is_empty()) {
        let prev = spaces.last().unwrap();
        let mut left: BTreeMap<(VertexId, VertexId), Vec<Element>> = BTreeMap::new();
        let mut right: BTreeMap<(VertexId, VertexId), Vec<Element>> = BTreeMap::new();
        for (&(i, m), basis) in prev {
            for alpha in q.arrows_from(m) {
                let a = Element::from_path(Path::arrow(q, alpha), field.one());
                let j = q.arrow(alpha).target;
                left.entry((i, j)).or_default().extend(basis.iter().map(|k| a.compose(k)));
            }
            for beta in q.arrows_into(i) {
                let b = Element::from_path(Path::arrow(q, beta), field.one());
                let s = q.arrow(beta).source;
                right.entry((s, m)).or_default().extend(basis.iter().map(|k| k.compose(&b)));
            }
        }
        let mut next = BTreeMap::new();
        for (c, xs) in &left {
            if let Some(ys) = right.get(c) {
                let basis = intersect_spans(field, xs, ys);
                if !basis.is_empty() {
                    next.insert(*c, basis);
                }
            }
        }
        spaces.push(next);
    }
    Ok(KoszulSpaces { cap, spaces })
}

/// Nonzero homology of the Koszul complex of one vertex:
/// `(position, degree) → (end vertex → dim)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub vertex: VertexId,
    pub entries: BTreeMap<(usize, usize), BTreeMap<VertexId, usize>>,
}

impl HomologyTable {
    pub fn dim(&self, position: usize, degree: usize) -> usize {
        self.entries.get(&(position, degree)).map_or(0, |m| m.values().sum())
    }

    /// Lowest position `≥ 1` carrying homology.
    pub fn first_defect(&self) -> Option<usize> {
        self.entries.keys().map(|&(s, _)| s).filter(|&s| s >= 1).min()
    }
}

struct ComplexPiece<'a> {
    gb: &'a GradedBasis,
    ks: &'a KoszulSpaces,
    i: VertexId,
}

impl ComplexPiece<'_> {
    /// `dim e_k(Λ ⊗ K^s e_i)_d`.
    fn dim(&self, s: usize, d: usize, k: VertexId) -> usize {
        if d < s {
            return 0;
        }
        (0..self.gb.quiver().vertex_count()).map(|j| self.gb.dim(d - s, j, k) * self.ks.dim(s, self.i, j)).sum()
    }

    /// Rank of the differential leaving position `s` in degree `d` at end vertex `k`.
    fn rank(&self, s: usize, d: usize, k: VertexId) -> usize {
        if s == 0 || d < s || s >= self.ks.len() {
            return 0;
        }
        let q = self.gb.quiver();
        let field = self.gb.field();
        let mut columns: HashMap<(Path, usize), usize> = HashMap::new();
        let mut rows: Vec<Vec<(usize, crate::field::Scalar)>> = Vec::new();
        for j in 0..q.vertex_count() {
            let kappas = self.ks.basis(s, self.i, j);
            if kappas.is_empty() {
                continue;
            }
            for b in self.gb.basis(d - s, j, k) {
                for kappa in kappas {
                    let mut row: BTreeMap<usize, crate::field::Scalar> = BTreeMap::new();
                    for (w, c) in kappa.terms() {
                        let (outer, inner) = w.split(q, s - 1);
                        let image = self.gb.product_coords(b, &outer).expect("within cap");
                        for (m, x) in image.iter().enumerate() {
                            if x.is_zero() {
                                continue;
                            }
                            let next = columns.len();
                            let col = *columns.entry((inner.clone(), m)).or_insert(next);
                            let slot = row.entry(col).or_insert_with(|| field.zero());
                            *slot = &*slot + &(c * x);
                        }
                    }
                    rows.push(row.into_iter().filter(|(_, x)| !x.is_zero()).collect());
                }
            }
        }
        if columns.is_empty() {
            return 0;
        }
        let dense = rows
            .into_iter()
            .map(|r| {
                let mut v = vec![field.zero(); columns.len()];
                for (c, x) in r {
                    v[c] = x;
                }
                v
            })
            .collect();
        rank(&Matrix::from_rows(field, columns.len(), dense).expect("rectangular"))
    }
}

pub fn koszul_homology(gb: &GradedBasis, ks: &KoszulSpaces, i: VertexId) -> HomologyTable {
    let n = gb.quiver().vertex_count();
    let cap = gb.max_degree().min(ks.cap());
    let piece = ComplexPiece { gb, ks, i };
    let mut ranks: HashMap<(usize, usize, VertexId), usize> = HashMap::new();
    let mut rank_of = |s: usize, d: usize, k: VertexId| *ranks.entry((s, d, k)).or_insert_with(|| piece.rank(s, d, k));
    let mut entries = BTreeMap::new();
    for s in 0..ks.len().min(cap + 1) {
        for d in s..=cap {
            for k in 0..n {
                let c = piece.dim(s, d, k);
                if c == 0 {
                    continue;
                }
                let h = c - rank_of(s, d, k) - rank_of(s + 1, d, k);
                if h > 0 {
                    entries.entry((s, d)).or_insert_with(BTreeMap::new).insert(k, h);
                }
            }
        }
    }
    HomologyTable { vertex: i, entries }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Horizon {
    /// Exact in positions `1..` through every degree up to the cap.
    UpToCap(usize),
    Finite(usize),
    /// No `(p,q)` fits; first offending `(vertex, position, degree)`.
    Fails { vertex: VertexId, position: usize, degree: usize, reason: String },
}

#[derive(Clone, Debug)]
pub struct KoszulReport {
    /// Top degree of `Λ`, `None` when `Λ_D ≠ 0`.
    pub p: Option<usize>,
    pub horizon: Horizon,
    pub homology: Vec<HomologyTable>,
    pub cap: usize,
}

impl KoszulReport {
    /// `q` when finite.
    pub fn q(&self) -> Option<usize> {
        match self.horizon {
            Horizon::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn koszul_up_to_cap(&self) -> bool {
        matches!(self.horizon, Horizon::UpToCap(_))
    }

    pub fn is_pq_koszul(&self, p: usize, q: usize) -> bool {
        self.p == Some(p) && (self.q() == Some(q) || (self.koszul_up_to_cap() && q > self.cap))
    }

    /// Generalized Coxeter number, when finite.
    pub fn coxeter(&self) -> Option<usize> {
        self.q()
    }

    /// `l(q)`: `q` when finite, `0` when exact through the cap.
    pub fn gorenstein_parameter(&self) -> Option<usize> {
        match self.horizon {
            Horizon::Finite(q) => Some(q),
            Horizon::UpToCap(_) => Some(0),
            Horizon::Fails { .. } => None,
        }
    }

    /// `q ≥ 2`, or exactness through the cap.
    pub fn horizon_at_least_two(&self) -> bool {
        match self.horizon {
            Horizon::Finite(q) => q >= 2,
            Horizon::UpToCap(_) => true,
            Horizon::Fails { .. } => false,
        }
    }

    pub fn to_json(&self, q: &BoundQuiver) -> Value {
        let mut homology = Vec::new();
        for table in &self.homology {
            for (&(s, d), by_end) in &table.entries {
                homology.push(json!({
                    "vertex": q.vertex_name(table.vertex),
                    "position": s,
                    "degree": d,
                    "dim": by_end.values().sum::<usize>(),
                }));
            }
        }
        let mut out = json!({ "p": self.p, "homology": homology });
        match &self.horizon {
            Horizon::UpToCap(d) => out["koszul_up_to"] = json!(d),
            Horizon::Finite(q) => {
                out["q"] = json!(q);
                out["coxeter"] = json!(q);
            }
            Horizon::Fails { vertex, position, degree, reason } => {
                out["q"] = Value::Null;
                out["failure"] = json!({
                    "vertex": q.vertex_name(*vertex),
                    "position": position,
                    "degree": degree,
                    "reason": reason,
                });
            }
        }
        out["gorenstein_parameter"] = json!(self.gorenstein_parameter());
        out
    }

    /// Plain-text homology table.
    pub fn table_text(&self, q: &BoundQuiver) -> String {
        let mut out = String::from("vertex position degree dim\n");
        for table in &self.homology {
            for &(s, d) in table.entries.keys() {
                out.push_str(&format!("{} {s} {d} {}\n", q.vertex_name(table.vertex), table.dim(s, d)));
            }
        }
        out
    }
}

pub fn classify_pq(gb: &GradedBasis, ks: &KoszulSpaces) -> KoszulReport {
    let q = gb.quiver();
    let p = gb.top_degree();
    let cap = gb.max_degree();
    let homology: Vec<HomologyTable> = (0..q.vertex_count()).map(|i| koszul_homology(gb, ks, i)).collect();
    let defect = homology.iter().filter_map(HomologyTable::first_defect).min();
    let horizon = match defect {
        None => Horizon::UpToCap(cap),
        Some(s) => classify_defect(gb, ks, &homology, p, s),
    };
    KoszulReport { p, horizon, homology, cap }
}

fn classify_defect(gb: &GradedBasis, ks: &KoszulSpaces, homology: &[HomologyTable], p: Option<usize>, s: usize) -> Horizon {
    let q = gb.quiver();
    let first_bad = |reason: &str, pred: &dyn Fn(usize, usize) -> bool| {
        homology.iter().find_map(|t| {
            t.entries.keys().find(|&&(pos, deg)| pos >= 1 && pred(pos, deg)).map(|&(pos, deg)| Horizon::Fails {
                vertex: t.vertex,
                position: pos,
                degree: deg,
                reason: reason.to_string(),
            })
        })
    };
    let Some(p) = p else {
        return first_bad("homology while the algebra is infinite within the cap", &|_, _| true).expect("defect exists");
    };
    if ks.degree_dim(s + 1) != 0 || s + 1 > ks.cap() {
        return first_bad("homology below the last nonzero Koszul space", &|_, _| true).expect("defect exists");
    }
    if let Some(h) = first_bad("homology outside degree p+q", &|pos, deg| pos != s || deg != p + s) {
        return h;
    }
    for t in homology {
        let got = t.dim(s, p + s);
        if got == 0 {
            continue;
        }
        let full: usize = (0..q.vertex_count())
            .flat_map(|j| (0..q.vertex_count()).map(move |k| (j, k)))
            .map(|(j, k)| gb.dim(p, j, k) * ks.dim(s, t.vertex, j))
            .sum();
        if got != full {
            return Horizon::Fails {
                vertex: t.vertex,
                position: s,
                degree: p + s,
                reason: format!("homology of dimension {got} is a proper part of Λ_p ⊗ K^q e_i ({full})"),
            };
        }
    }
    Horizon::Finite(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationAlgebraVerdict {
    pub n: usize,
    pub translation_quiver: bool,
    pub top_degree_matches: bool,
    pub horizon_ok: bool,
    pub failure: Option<String>,
}

impl TranslationAlgebraVerdict {
    pub fn verdict(&self) -> bool {
        self.translation_quiver && self.top_degree_matches && self.horizon_ok
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "verdict": self.verdict(),
            "translation_quiver": self.translation_quiver,
            "top_degree": self.top_degree_matches,
            "horizon": self.horizon_ok,
            "failure": self.failure,
        })
    }
}

/// Whether `Λ` is an n-translation algebra: the quiver is an n-translation
/// quiver, `p = n+1`, and `q ≥ 2` or exact through the cap.
pub fn n_translation_algebra(gb: &GradedBasis, report: &KoszulReport, n: usize) -> TranslationAlgebraVerdict {
    let (translation_quiver, failure) = match infer_translation(gb, n) {
        Ok(ts) => {
            let r = check_n_translation(gb, &ts);
            (r.passes() && !r.null, r.failures.first().cloned())
        }
        Err(e) => (false, Some(e.to_string())),
    };
    TranslationAlgebraVerdict {
        n,
        translation_quiver,
        top_degree_matches: report.p == Some(n + 1),
        horizon_ok: report.horizon_at_least_two(),
        failure,
    }
}

/// Betti numbers of `S(i)` predicted by the Koszul complex, one entry per
/// step with the largest internal degree the prediction covers.
pub fn predicted_betti(ks: &KoszulSpaces, table: &HomologyTable, cap: usize) -> Vec<(BTreeMap<Generator, usize>, usize)> {
    let i = table.vertex;
    let linear = |s: usize| -> BTreeMap<Generator, usize> {
        ks.components(s).filter(|&(from, _)| from == i).map(|(_, j)| ((j, s), ks.dim(s, i, j))).collect()
    };
    let mut out = Vec::new();
    match table.first_defect() {
        None => {
            for s in 0..ks.len() {
                out.push((linear(s), cap));
            }
            if ks.len() <= cap {
                out.push((BTreeMap::new(), cap));
            }
        }
        Some(s) => {
            for t in 0..=s {
                out.push((linear(t), cap));
            }
            let d0 = table.entries.keys().filter(|&&(pos, _)| pos == s).map(|&(_, d)| d).min().expect("defect");
            let mut next = linear(s + 1);
            for (&k, &h) in &table.entries[&(s, d0)] {
                *next.entry((k, d0)).or_insert(0) += h;
            }
            out.push((next, d0));
        }
    }
    out
}
