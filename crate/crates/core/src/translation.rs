//! n-translation structure: τ, projective and injective vertices, the
//! pairing criterion, arrow translation and admissibility.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::{json, Value};

use crate::algebra::GradedBasis;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{inverse, rank, Matrix, Subspace};
use crate::quiver::{ArrowId, BoundQuiver, Element, Path, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationStructure {
    pub n: usize,
    /// `τ(i)` for every non-projective `i`.
    pub tau: BTreeMap<VertexId, VertexId>,
    pub projective: BTreeSet<VertexId>,
    pub injective: BTreeSet<VertexId>,
    /// The fixed maximal path `p_i: τi → i`.
    pub top_paths: BTreeMap<VertexId, Path>,
}

impl TranslationStructure {
    pub fn tau_inverse(&self, i: VertexId) -> Option<VertexId> {
        self.tau.iter().find(|&(_, &t)| t == i).map(|(&k, _)| k)
    }

    pub fn is_null(&self) -> bool {
        self.top_paths.is_empty()
    }

    pub fn to_json(&self, q: &BoundQuiver) -> Value {
        let name = |v: &VertexId| q.vertex_name(*v).to_string();
        json!({
            "n": self.n,
            "tau": self.tau.iter().map(|(i, j)| (name(i), json!(name(j)))).collect::<serde_json::Map<_, _>>(),
            "P": self.projective.iter().map(name).collect::<Vec<_>>(),
            "I": self.injective.iter().map(name).collect::<Vec<_>>(),
        })
    }
}

fn cap_check(gb: &GradedBasis, t: usize) -> Result<()> {
    if t > gb.max_degree() {
        Err(Error::DegreeOverflow { degree: t, cap: gb.max_degree() })
    } else {
        Ok(())
    }
}

/// Paths with no bound extension by an arrow on either side.
pub fn maximal_bound_paths(gb: &GradedBasis, paths: &[Path]) -> Vec<Path> {
    let q = gb.quiver();
    paths
        .iter()
        .filter(|p| {
            let left = q.arrows_from(p.target()).any(|a| {
                let w = Path::arrow(q, a).compose(p).unwrap();
                w.len() <= gb.max_degree() && gb.is_bound(&w).unwrap_or(false)
            });
            let right = q.arrows_into(p.source()).any(|b| {
                let w = p.compose(&Path::arrow(q, b)).unwrap();
                w.len() <= gb.max_degree() && gb.is_bound(&w).unwrap_or(false)
            });
            !left && !right
        })
        .cloned()
        .collect()
}

/// Reads off `τ` from the bound paths of length `n+1`.
pub fn infer_translation(gb: &GradedBasis, n: usize) -> Result<TranslationStructure> {
    let q = gb.quiver();
    cap_check(gb, n + 2)?;
    if gb.degree_dim(n + 2) > 0 {
        return Err(Error::Translation(format!("bound paths of length {} exist", n + 2)));
    }
    let all: BTreeSet<VertexId> = (0..q.vertex_count()).collect();
    let mut ts = TranslationStructure {
        n,
        tau: BTreeMap::new(),
        projective: all.clone(),
        injective: all,
        top_paths: BTreeMap::new(),
    };
    if gb.degree_dim(n + 1) == 0 {
        return Ok(ts);
    }
    let paths = gb.bound_paths(n + 1);
    if let Some(p) = maximal_bound_paths(gb, &paths).into_iter().find(|p| p.len() != n + 1) {
        return Err(Error::Translation(format!("maximal path of wrong length: {}", q.path_string(&p))));
    }
    for i in 0..q.vertex_count() {
        let starts: Vec<VertexId> = (0..q.vertex_count()).filter(|&s| gb.dim(n + 1, s, i) > 0).collect();
        match starts.as_slice() {
            [] => {}
            [s] => {
                if gb.dim(n + 1, *s, i) > 1 {
                    return Err(Error::Translation(format!(
                        "two independent maximal paths {} -> {}",
                        q.vertex_name(*s),
                        q.vertex_name(i)
                    )));
                }
                ts.tau.insert(i, *s);
                let p = paths
                    .iter()
                    .find(|p| p.len() == n + 1 && p.source() == *s && p.target() == i)
                    .expect("a bound path spans the component");
                ts.top_paths.insert(i, p.clone());
            }
            _ => {
                return Err(Error::Translation(format!(
                    "maximal paths into {} start at several vertices",
                    q.vertex_name(i)
                )))
            }
        }
    }
    let mut images = BTreeSet::new();
    for (&i, &t) in &ts.tau {
        if !images.insert(t) {
            return Err(Error::Translation(format!(
                "tau not injective: {} is hit twice (again by {})",
                q.vertex_name(t),
                q.vertex_name(i)
            )));
        }
    }
    ts.projective = (0..q.vertex_count()).filter(|i| !ts.tau.contains_key(i)).collect();
    ts.injective = (0..q.vertex_count()).filter(|i| !images.contains(i)).collect();
    Ok(ts)
}

/// Coefficient of `p_i` in an element of `Λ_{n+1}(τi → i)`, given as coordinates.
fn top_coefficient(gb: &GradedBasis, ts: &TranslationStructure, i: VertexId, coords: &[Scalar]) -> Scalar {
    let field = gb.field();
    let p = &ts.top_paths[&i];
    let unit = gb.coords(p).expect("within cap");
    match coords.first() {
        Some(x) => x * &unit[0].inverse(),
        None => field.zero(),
    }
}

fn pairing_matrix(gb: &GradedBasis, ts: &TranslationStructure, i: VertexId, j: VertexId, t: usize) -> Matrix {
    let field = gb.field();
    let tau_i = ts.tau[&i];
    let us = gb.basis(t, j, i);
    let vs = gb.basis(ts.n + 1 - t, tau_i, j);
    let rows = us
        .iter()
        .map(|u| {
            vs.iter()
                .map(|v| top_coefficient(gb, ts, i, &gb.product_coords(u, v).expect("within cap")))
                .collect()
        })
        .collect();
    Matrix::from_rows(field, vs.len(), rows).expect("rectangular")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    pub condition1: bool,
    pub condition2: bool,
    pub condition5: bool,
    pub failures: Vec<String>,
    pub stable: bool,
    pub null: bool,
    /// Nakayama criterion on the algebra; `None` when not finite within the cap.
    pub self_injective: Option<bool>,
    /// Declared `translation` lines agree with the inferred τ (vacuous if none).
    pub declared_agrees: bool,
}

impl TranslationReport {
    pub fn passes(&self) -> bool {
        self.condition1 && self.condition2 && self.condition5
    }

    pub fn to_json(&self) -> Value {
        json!({
            "condition1": self.condition1,
            "condition2": self.condition2,
            "condition5": self.condition5,
            "failures": self.failures,
            "stable": self.stable,
            "null": self.null,
            "self_injective": self.self_injective,
            "declared_agrees": self.declared_agrees,
        })
    }
}

pub fn check_n_translation(gb: &GradedBasis, ts: &TranslationStructure) -> TranslationReport {
    let q = gb.quiver();
    let n = ts.n;
    let name = |v: VertexId| q.vertex_name(v).to_string();
    let mut failures = Vec::new();
    let null = gb.degree_dim(n + 1) == 0 && n < gb.max_degree();

    let mut condition1 = true;
    let mut condition2 = true;
    let mut condition5 = true;
    if !null {
        if n + 2 > gb.max_degree() || gb.degree_dim(n + 2) > 0 {
            condition1 = false;
            failures.push(format!("bound paths of length {} (or beyond the cap)", n + 2));
        } else {
            let paths = gb.bound_paths(n + 1);
            for p in maximal_bound_paths(gb, &paths) {
                if p.len() != n + 1 {
                    condition1 = false;
                    failures.push(format!("condition 1: maximal path {} has length {}", q.path_string(&p), p.len()));
                }
            }
        }
        for i in 0..q.vertex_count() {
            match ts.tau.get(&i) {
                Some(&s) => {
                    for j in 0..q.vertex_count() {
                        let d = gb.dim(n + 1, j, i);
                        let want = usize::from(j == s);
                        if d != want {
                            condition2 = false;
                            failures.push(format!("condition 2: dim Λ_{}({} -> {}) = {d}", n + 1, name(j), name(i)));
                        }
                    }
                }
                None => {
                    if (0..q.vertex_count()).any(|j| gb.dim(n + 1, j, i) > 0) {
                        condition2 = false;
                        failures.push(format!("condition 2: projective vertex {} receives a maximal path", name(i)));
                    }
                }
            }
        }
        if condition2 {
            for &i in ts.tau.keys() {
                for j in 0..q.vertex_count() {
                    for t in 0..=n + 1 {
                        let (a, b) = (gb.dim(t, j, i), gb.dim(n + 1 - t, ts.tau[&i], j));
                        if a == 0 && b == 0 {
                            continue;
                        }
                        let m = pairing_matrix(gb, ts, i, j, t);
                        if a != b || rank(&m) != a {
                            condition5 = false;
                            failures.push(format!("condition 5: degenerate pairing at ({}, {}, {t})", name(i), name(j)));
                        }
                    }
                }
            }
        } else {
            condition5 = false;
        }
    }
    let declared = q.declared_translation();
    let declared_agrees = declared.is_empty()
        || (declared.len() == ts.tau.len() && declared.iter().all(|&(i, j)| ts.tau.get(&i) == Some(&j)));
    if !declared_agrees {
        failures.push("declared translation differs from the inferred one".to_string());
    }
    TranslationReport {
        condition1,
        condition2,
        condition5,
        failures,
        stable: ts.projective.is_empty() && ts.injective.is_empty(),
        null,
        self_injective: nakayama_permutation(gb).map(|nu| nu.is_some()),
        declared_agrees,
    }
}

/// The Nakayama permutation `soc(Λe_i) ≅ S(ν i)`, if `Λ` is self-injective.
/// Outer `None` means `Λ` is not finite-dimensional within the cap.
pub fn nakayama_permutation(gb: &GradedBasis) -> Option<Option<BTreeMap<VertexId, VertexId>>> {
    let top = gb.top_degree()?;
    let q = gb.quiver();
    let field = gb.field();
    let socle = |i: VertexId, left: bool| -> Vec<(VertexId, usize)> {
        let mut out = Vec::new();
        for t in 0..=top {
            for k in 0..q.vertex_count() {
                let (from, to) = if left { (i, k) } else { (k, i) };
                let basis = gb.basis(t, from, to);
                if basis.is_empty() {
                    continue;
                }
                let mut images: Vec<Vec<Scalar>> = vec![Vec::new(); basis.len()];
                let arrows: Vec<ArrowId> = if left { q.arrows_from(k).collect() } else { q.arrows_into(k).collect() };
                for &a in &arrows {
                    let ap = Path::arrow(q, a);
                    for (row, b) in images.iter_mut().zip(basis) {
                        let c = if left { gb.product_coords(&ap, b) } else { gb.product_coords(b, &ap) };
                        row.extend(c.unwrap_or_default());
                    }
                }
                let width = images[0].len();
                let m = Matrix::from_rows(field, width, images).expect("rectangular");
                let kernel_dim = basis.len() - rank(&m);
                if kernel_dim > 0 {
                    out.push((k, kernel_dim));
                }
            }
        }
        out
    };
    let mut nu = BTreeMap::new();
    for i in 0..q.vertex_count() {
        match socle(i, true).as_slice() {
            [(k, 1)] => {
                nu.insert(i, *k);
            }
            _ => return Some(None),
        }
    }
    for (&i, &k) in &nu {
        if socle(k, false).as_slice() != [(i, 1)] {
            return Some(None);
        }
    }
    let image: BTreeSet<_> = nu.values().collect();
    if image.len() != nu.len() {
        return Some(None);
    }
    Some(Some(nu))
}

/// `τ(α)` as a combination of arrows `τ s(α) → τ t(α)`.
pub fn arrow_translation(gb: &GradedBasis, ts: &TranslationStructure, alpha: ArrowId) -> Result<Element> {
    let q = gb.quiver();
    let field = gb.field();
    let (i, j) = (q.arrow(alpha).source, q.arrow(alpha).target);
    let (Some(&ti), Some(&tj)) = (ts.tau.get(&i), ts.tau.get(&j)) else {
        return Err(Error::Translation(format!("{} touches a projective vertex", q.arrow(alpha).name)));
    };
    let n = ts.n;
    let arrows_ij = q.arrows_between(i, j);
    let arrows_tau = q.arrows_between(ti, tj);
    let middle = gb.basis(n, tj, i);
    let degenerate = || Error::Translation(format!("degenerate pairing for {}", q.arrow(alpha).name));

    let m1_rows = arrows_ij
        .iter()
        .map(|&a| {
            let ap = Path::arrow(q, a);
            middle
                .iter()
                .map(|v| Ok(top_coefficient(gb, ts, j, &gb.product_coords(&ap, v)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m1 = Matrix::from_rows(field, middle.len(), m1_rows)?;
    let c = inverse(&m1).ok_or_else(degenerate)?;

    let m2_rows = middle
        .iter()
        .map(|v| {
            arrows_tau
                .iter()
                .map(|&z| Ok(top_coefficient(gb, ts, i, &gb.product_coords(v, &Path::arrow(q, z))?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m2 = Matrix::from_rows(field, arrows_tau.len(), m2_rows)?;
    let y = inverse(&c.transpose().mul(&m2)?).ok_or_else(degenerate)?;
    let col = arrows_ij.iter().position(|&a| a == alpha).expect("alpha is an arrow i -> j");
    let mut out = Element::zero();
    for (r, &z) in arrows_tau.iter().enumerate() {
        out.add_term(Path::arrow(q, z), y.get(r, col).clone());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathFlags {
    pub left_shiftable: bool,
    pub right_shiftable: bool,
    pub semi_shiftable: bool,
}

/// Bound paths grouped by `(length, source, target)`.
struct PathIndex {
    by_component: HashMap<(usize, VertexId, VertexId), Vec<Path>>,
}

impl PathIndex {
    fn new(gb: &GradedBasis, max_len: usize) -> PathIndex {
        let mut by_component: HashMap<_, Vec<Path>> = HashMap::new();
        for p in gb.bound_paths(max_len) {
            by_component.entry((p.len(), p.source(), p.target())).or_default().push(p);
        }
        PathIndex { by_component }
    }

    fn component(&self, t: usize, s: VertexId, e: VertexId) -> &[Path] {
        self.by_component.get(&(t, s, e)).map_or(&[], Vec::as_slice)
    }
}

fn avoids(q: &BoundQuiver, p: &Path, set: &BTreeSet<VertexId>) -> bool {
    p.vertices(q).iter().all(|v| !set.contains(v))
}

fn semi_shiftable_word(q: &BoundQuiver, ts: &TranslationStructure, p: &Path) -> bool {
    (0..=p.len()).any(|k| {
        let (outer, inner) = p.split(q, k);
        avoids(q, &inner, &ts.injective) && avoids(q, &outer, &ts.projective)
    })
}

fn span_of(gb: &GradedBasis, paths: impl Iterator<Item = Path>, dim: usize) -> Subspace {
    let field = gb.field();
    Subspace::spanned_by(field, dim, paths.map(|p| gb.coords(&p).expect("within cap")))
}

pub fn classify_path(gb: &GradedBasis, ts: &TranslationStructure, p: &Path) -> Result<PathFlags> {
    if !gb.is_bound(p)? {
        return Err(Error::Translation(format!("{} is not bound", gb.quiver().path_string(p))));
    }
    let q = gb.quiver();
    let index = PathIndex::new(gb, p.len());
    let comp = index.component(p.len(), p.source(), p.target());
    let dim = gb.dim(p.len(), p.source(), p.target());
    let target = gb.coords(p)?;
    let test = |f: &dyn Fn(&Path) -> bool| span_of(gb, comp.iter().filter(|w| f(w)).cloned(), dim).contains(&target);
    Ok(PathFlags {
        right_shiftable: test(&|w| avoids(q, w, &ts.projective)),
        left_shiftable: test(&|w| avoids(q, w, &ts.injective)),
        semi_shiftable: test(&|w| semi_shiftable_word(q, ts, w)),
    })
}

fn injective_on(gb: &GradedBasis, domain: &[Path], image: impl Fn(&Path) -> Vec<Scalar>) -> bool {
    if domain.is_empty() {
        return true;
    }
    let rows: Vec<Vec<Scalar>> = domain.iter().map(image).collect();
    let width = rows[0].len();
    rank(&Matrix::from_rows(gb.field(), width, rows).expect("rectangular")) == domain.len()
}

/// `w ↦ p·w` is injective on `e_{s(p)} Λ_t e_{i'}`.
pub fn left_stark(gb: &GradedBasis, p: &Path, t: usize, i2: VertexId) -> Result<bool> {
    cap_check(gb, t + p.len())?;
    Ok(injective_on(gb, gb.basis(t, i2, p.source()), |w| gb.product_coords(p, w).expect("checked")))
}

/// `w ↦ w·p` is injective on `e_{j'} Λ_t e_{t(p)}`.
pub fn right_stark(gb: &GradedBasis, p: &Path, t: usize, j2: VertexId) -> Result<bool> {
    cap_check(gb, t + p.len())?;
    Ok(injective_on(gb, gb.basis(t, p.target(), j2), |w| gb.product_coords(w, p).expect("checked")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub pass: bool,
    pub witness: Option<String>,
}

impl ConditionResult {
    fn ok() -> ConditionResult {
        ConditionResult { pass: true, witness: None }
    }

    fn fail(witness: String) -> ConditionResult {
        ConditionResult { pass: false, witness: Some(witness) }
    }

    fn to_json(&self) -> Value {
        json!({ "pass": self.pass, "witness": self.witness })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub extension: ConditionResult,
    pub shiftable_span: ConditionResult,
    pub stark: ConditionResult,
}

impl AdmissibilityReport {
    pub fn verdict(&self) -> bool {
        self.extension.pass && self.shiftable_span.pass && self.stark.pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict(),
            "i": self.extension.to_json(),
            "ii": self.shiftable_span.to_json(),
            "iii": self.stark.to_json(),
        })
    }
}

pub fn check_admissible(gb: &GradedBasis, ts: &TranslationStructure) -> Result<AdmissibilityReport> {
    let q = gb.quiver();
    let n = ts.n;
    cap_check(gb, n + 2)?;
    let index = PathIndex::new(gb, n + 1);
    let paths = gb.bound_paths(n + 1);
    let name = |v: VertexId| q.vertex_name(v).to_string();

    // (i) every bound path extends to a bound path of length n+1
    let mut extendable: HashMap<Path, bool> = HashMap::new();
    let mut by_length: Vec<&Path> = paths.iter().collect();
    by_length.sort_by_key(|p| std::cmp::Reverse(p.len()));
    for p in by_length {
        let ok = p.len() == n + 1
            || q.arrows_from(p.target()).any(|a| {
                extendable.get(&Path::arrow(q, a).compose(p).unwrap()).copied().unwrap_or(false)
            })
            || q.arrows_into(p.source()).any(|b| {
                extendable.get(&p.compose(&Path::arrow(q, b)).unwrap()).copied().unwrap_or(false)
            });
        extendable.insert(p.clone(), ok);
    }
    let extension = match paths.iter().find(|p| !extendable[*p]) {
        Some(p) => ConditionResult::fail(format!("{} has no extension to length {}", q.path_string(p), n + 1)),
        None => ConditionResult::ok(),
    };

    // (ii) components from i ∉ I to j ∉ P are spanned by shiftable paths
    let mut shiftable_span = ConditionResult::ok();
    'outer: for t in 0..=n + 1 {
        for i in (0..q.vertex_count()).filter(|i| !ts.injective.contains(i)) {
            for j in (0..q.vertex_count()).filter(|j| !ts.projective.contains(j)) {
                let dim = gb.dim(t, i, j);
                if dim == 0 {
                    continue;
                }
                let comp = index.component(t, i, j);
                let good = comp.iter().filter(|w| {
                    avoids(q, w, &ts.projective) || avoids(q, w, &ts.injective) || semi_shiftable_word(q, ts, w)
                });
                if span_of(gb, good.cloned(), dim).dim() < dim {
                    let bad = comp
                        .iter()
                        .find(|w| !span_of(gb, comp.iter().filter(|x| {
                            avoids(q, x, &ts.projective) || avoids(q, x, &ts.injective) || semi_shiftable_word(q, ts, x)
                        }).cloned(), dim).contains(&gb.coords(w).expect("within cap")))
                        .map(|w| q.path_string(w))
                        .unwrap_or_default();
                    shiftable_span = ConditionResult::fail(format!(
                        "{bad} in degree {t} from {} to {} is not in the span of shiftable paths",
                        name(i),
                        name(j)
                    ));
                    break 'outer;
                }
            }
        }
    }

    // (iii) stark condition
    let mut stark = ConditionResult::ok();
    'stark: for (&i, &ti) in &ts.tau {
        let ending: Vec<&Path> = paths.iter().filter(|p| p.target() == i && !avoids(q, p, &ts.projective)).collect();
        let starting: Vec<&Path> = paths.iter().filter(|p| p.source() == ti && !avoids(q, p, &ts.injective)).collect();
        for p in &ending {
            for r in &starting {
                if p.len() + r.len() > n {
                    continue;
                }
                let t = n + 1 - p.len() - r.len();
                if !left_stark(gb, p, t, r.target())? && !right_stark(gb, r, t, p.source())? {
                    stark = ConditionResult::fail(format!(
                        "neither {} nor {} is stark in degree {t}",
                        q.path_string(p),
                        q.path_string(r)
                    ));
                    break 'stark;
                }
            }
        }
    }

    Ok(AdmissibilityReport { extension, shiftable_span, stark })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_quiver;

    const A4RAD2: &str = "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\nrelation a2.a1\nrelation a3.a2\n";
    const TILDE: &str = "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\narrow b2 2 1\narrow b3 3 2\narrow b4 4 3\n\
        relation a2.a1\nrelation a3.a2\nrelation b2.b3\nrelation b3.b4\nrelation a1.b2 - b3.a2\nrelation a2.b3 - b4.a3\n";

    fn setup(text: &str, n: usize) -> (GradedBasis, TranslationStructure) {
        let q = parse_quiver(text).unwrap();
        let gb = GradedBasis::new(&q, n + 4);
        let ts = infer_translation(&gb, n).unwrap();
        (gb, ts)
    }

    #[test]
    fn a4rad2_translation() {
        let (gb, ts) = setup(A4RAD2, 0);
        assert_eq!(ts.tau, BTreeMap::from([(1, 0), (2, 1), (3, 2)]));
        assert_eq!(ts.projective, BTreeSet::from([0]));
        assert_eq!(ts.injective, BTreeSet::from([3]));
        let q = gb.quiver();
        assert_eq!(q.path_string(&ts.top_paths[&2]), "a2");
        let report = check_n_translation(&gb, &ts);
        assert!(report.passes(), "{:?}", report.failures);
        assert!(!report.stable && !report.null);
        assert_eq!(report.self_injective, Some(false));
    }

    #[test]
    fn a4rad2_with_n1_is_null() {
        let (gb, ts) = setup(A4RAD2, 1);
        assert!(ts.tau.is_empty());
        let report = check_n_translation(&gb, &ts);
        assert!(report.null && report.passes());
    }

    #[test]
    fn tilde_is_stable() {
        let (gb, ts) = setup(TILDE, 1);
        assert_eq!(ts.tau, (0..4).map(|i| (i, i)).collect());
        let report = check_n_translation(&gb, &ts);
        assert!(report.passes() && report.stable);
        assert_eq!(report.self_injective, Some(true));
        assert!(check_admissible(&gb, &ts).unwrap().verdict());
    }

    #[test]
    fn arrow_translations() {
        let (gb, ts) = setup(A4RAD2, 0);
        let q = gb.quiver().clone();
        let t2 = arrow_translation(&gb, &ts, q.arrow_id("a2").unwrap()).unwrap();
        assert_eq!(q.element_string(&t2), "a1");
        let t3 = arrow_translation(&gb, &ts, q.arrow_id("a3").unwrap()).unwrap();
        assert_eq!(q.element_string(&t3), "a2");
        assert!(arrow_translation(&gb, &ts, q.arrow_id("a1").unwrap()).is_err());

        let (gb, ts) = setup(TILDE, 1);
        let q = gb.quiver().clone();
        let t = arrow_translation(&gb, &ts, q.arrow_id("a2").unwrap()).unwrap();
        let (p, c) = t.terms().next().unwrap();
        assert_eq!((t.len(), q.path_string(p)), (1, "a2".to_string()));
        assert!(!c.is_zero());
    }

    #[test]
    fn shiftable_flags() {
        let (gb, ts) = setup(A4RAD2, 0);
        let q = gb.quiver();
        let flags = |name: &str| classify_path(&gb, &ts, &Path::arrow(q, q.arrow_id(name).unwrap())).unwrap();
        assert!(flags("a1").left_shiftable && !flags("a1").right_shiftable);
        assert!(flags("a3").right_shiftable && !flags("a3").left_shiftable);
        let e2 = classify_path(&gb, &ts, &Path::trivial(1)).unwrap();
        assert!(e2.left_shiftable && e2.right_shiftable);
        assert!(check_admissible(&gb, &ts).unwrap().verdict());
    }

    #[test]
    fn relation_free_a2_fails_shiftability() {
        let (gb, ts) = setup("vertex 1 2\narrow a 1 2\n", 0);
        assert_eq!(ts.tau, BTreeMap::from([(1, 0)]));
        let report = check_admissible(&gb, &ts).unwrap();
        assert!(report.extension.pass && !report.shiftable_span.pass);
    }

    #[test]
    fn disconnected_null_quiver_fails_extension() {
        let (gb, ts) = setup("vertex 1 2 3 4\narrow a 1 2\narrow b 3 4\n", 1);
        let report = check_admissible(&gb, &ts).unwrap();
        assert!(!report.extension.pass);
    }
}
