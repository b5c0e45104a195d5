//! τ-hammocks, radical layers, n-almost split sequences over the Koszul dual,
//! partial Artin-Schelter regularity and slice truncation.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::algebra::GradedBasis;
use crate::dual::ext_algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::koszul::{KoszulReport, KoszulSpaces};
use crate::linalg::{rank, Matrix};
use crate::quiver::{BoundQuiver, Path, VertexId};
use crate::resolution::{minimal_resolution, Resolution};
use crate::translation::TranslationStructure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hammock {
    pub start: VertexId,
    /// `levels[t][j] = μ^i(j, t)`, nonzero entries only.
    pub levels: Vec<BTreeMap<VertexId, usize>>,
    /// `(t, j, arrow, j')` for each hammock arrow `(j,t) → (j',t+1)`.
    pub arrows: Vec<(usize, VertexId, usize, VertexId)>,
}

impl Hammock {
    pub fn mu(&self, j: VertexId, t: usize) -> usize {
        self.levels.get(t).and_then(|l| l.get(&j)).copied().unwrap_or(0)
    }

    pub fn vertices(&self) -> BTreeSet<(VertexId, usize)> {
        self.levels.iter().enumerate().flat_map(|(t, l)| l.keys().map(move |&j| (j, t))).collect()
    }

    pub fn to_json(&self, q: &BoundQuiver) -> Value {
        json!({
            "start": q.vertex_name(self.start),
            "levels": self.levels.iter().map(|l| {
                l.iter().map(|(&j, &m)| json!({ "vertex": q.vertex_name(j), "mult": m })).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "arrows": self.arrows.iter().map(|&(t, j, a, k)| json!({
                "level": t,
                "from": q.vertex_name(j),
                "to": q.vertex_name(k),
                "arrow": q.arrow(a).name,
            })).collect::<Vec<_>>(),
        })
    }

    /// DOT drawing with one rank per level and multiplicity labels.
    pub fn to_dot(&self, q: &BoundQuiver) -> String {
        let node = |j: VertexId, t: usize| format!("\"{}@{t}\"", q.vertex_name(j));
        let mut out = format!("digraph \"hammock {}\" {{\n  rankdir=LR;\n", q.vertex_name(self.start));
        for (t, level) in self.levels.iter().enumerate() {
            let names: Vec<String> = level.keys().map(|&j| node(j, t)).collect();
            for (&j, &m) in level {
                out.push_str(&format!("  {} [label=\"{} ({m})\"];\n", node(j, t), q.vertex_name(j)));
            }
            out.push_str(&format!("  {{ rank=same; {}; }}\n", names.join("; ")));
        }
        for &(t, j, a, k) in &self.arrows {
            out.push_str(&format!("  {} -> {} [label=\"{}\"];\n", node(j, t), node(k, t + 1), q.arrow(a).name));
        }
        out.push_str("}\n");
        out
    }
}

/// The τ-hammock starting at `i`, levels `0..=n+1`.
pub fn hammock(gb: &GradedBasis, ts: &TranslationStructure, i: VertexId) -> Hammock {
    let q = gb.quiver();
    let top = (ts.n + 1).min(gb.max_degree());
    let levels: Vec<BTreeMap<VertexId, usize>> = (0..=top)
        .map(|t| (0..q.vertex_count()).filter_map(|j| Some((j, gb.dim(t, i, j))).filter(|e| e.1 > 0)).collect())
        .collect();
    let paths: Vec<Path> = gb.bound_paths(top).into_iter().filter(|p| p.source() == i).collect();
    let mut arrows = BTreeSet::new();
    for p in paths.iter().filter(|p| p.len() < top) {
        for a in q.arrows_from(p.target()) {
            let w = Path::arrow(q, a).compose(p).unwrap();
            if gb.is_bound(&w).unwrap_or(false) {
                arrows.insert((p.len(), p.target(), a, q.arrow(a).target));
            }
        }
    }
    Hammock { start: i, levels, arrows: arrows.into_iter().collect() }
}

/// `K`-space hammock: `μ(j, t) = dim e_j K^t e_i`, the linear part of the
/// projective resolution of `S(i)`.
pub fn koszul_hammock(ks: &KoszulSpaces, i: VertexId) -> Vec<BTreeMap<VertexId, usize>> {
    let mut out = Vec::new();
    for t in 0..ks.len() {
        let level: BTreeMap<VertexId, usize> =
            ks.components(t).filter(|&(from, _)| from == i).map(|(_, j)| (j, ks.dim(t, i, j))).collect();
        if level.is_empty() {
            break;
        }
        out.push(level);
    }
    out
}

/// `Λ_t e_i ≅ ⊕ S(j)^{μ(j,t)}` for every nonzero degree.
pub fn radical_layers(gb: &GradedBasis, i: VertexId) -> Vec<BTreeMap<VertexId, usize>> {
    let q = gb.quiver();
    let mut out = Vec::new();
    for t in 0..=gb.max_degree() {
        let layer: BTreeMap<VertexId, usize> =
            (0..q.vertex_count()).filter_map(|j| Some((j, gb.dim(t, i, j))).filter(|e| e.1 > 0)).collect();
        if layer.is_empty() {
            break;
        }
        out.push(layer);
    }
    out
}

pub fn layers_json(q: &BoundQuiver, layers: &[BTreeMap<VertexId, usize>]) -> Value {
    json!(layers
        .iter()
        .map(|l| l.iter().map(|(&j, &m)| json!({ "simple": q.vertex_name(j), "mult": m })).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostSplitEntry {
    pub vertex: VertexId,
    pub exists: bool,
    pub reason: String,
    /// Projective multiplicities `Γe_j` per position `0..=n+1`.
    pub terms: Vec<BTreeMap<VertexId, usize>>,
    /// Exactness at position `n+1` of the resolution of the dual simple,
    /// when decidable within the cap.
    pub oracle_exact: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct AlmostSplitReport {
    pub n: usize,
    pub entries: Vec<AlmostSplitEntry>,
}

impl AlmostSplitReport {
    pub fn to_json(&self, q: &BoundQuiver) -> Value {
        json!({
            "n": self.n,
            "sequences": self.entries.iter().map(|e| json!({
                "vertex": q.vertex_name(e.vertex),
                "exists": e.exists,
                "reason": e.reason,
                "terms": e.terms.iter().map(|t| t.iter().map(|(&j, &m)| json!({
                    "proj": q.vertex_name(j),
                    "mult": m,
                })).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "oracle_exact": e.oracle_exact,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Whether `P^{n+1} → P^n` in the minimal resolution of `S(i)` is injective.
fn exact_at(res: &Resolution, position: usize) -> Option<bool> {
    let next = res.steps.get(position + 1)?;
    if next.generators.is_empty() && next.beyond_cap {
        return None;
    }
    Some(next.generators.is_empty())
}

/// n-almost split sequences in `add Γ` for `Γ = E(Λ)`.
pub fn almost_split_report(gb: &GradedBasis, ts: &TranslationStructure, kr: &KoszulReport) -> Result<AlmostSplitReport> {
    let q = gb.quiver();
    let n = ts.n;
    let gamma = ext_algebra(q)?;
    let ggb = GradedBasis::new(&gamma, gb.max_degree());
    let mut entries = Vec::new();
    for i in 0..q.vertex_count() {
        let Some(nu) = ts.tau_inverse(i) else { continue };
        let h = hammock(gb, ts, i);
        let (exists, reason) = match kr.q() {
            None if kr.koszul_up_to_cap() => (true, format!("Koszul through degree {}", kr.cap)),
            None => (false, "not (p,q)-Koszul".to_string()),
            Some(qq) => {
                let d: usize = (0..q.vertex_count()).map(|j| ggb.dim(qq, nu, j)).sum();
                if d == 0 {
                    (true, format!("Γ_{qq} e_{} = 0", q.vertex_name(nu)))
                } else {
                    (false, format!("Γ_{qq} e_{} has dimension {d}", q.vertex_name(nu)))
                }
            }
        };
        let res = minimal_resolution(&ggb, i, n + 2);
        entries.push(AlmostSplitEntry {
            vertex: i,
            exists,
            reason,
            terms: h.levels.clone(),
            oracle_exact: exact_at(&res, n + 1),
        });
    }
    Ok(AlmostSplitReport { n, entries })
}

/// Cohomology of `Hom_Γ(P^•, Γ)` for the minimal resolution of `S(i)` cut
/// after position `top`, split by right idempotent `e_s`. Below `top` this is
/// `Ext^t(S(i), Γ)`; at `top` it is the cokernel of the last map. Internal
/// degrees are truncated at the cap.
pub fn dual_cohomology(ggb: &GradedBasis, i: VertexId, top: usize) -> Vec<BTreeMap<VertexId, usize>> {
    let q = ggb.quiver();
    let field = ggb.field();
    let cap = ggb.max_degree() as i64;
    let res = minimal_resolution(ggb, i, top);
    let gens = |t: usize| -> &[(VertexId, usize)] { res.steps.get(t).map_or(&[], |s| s.generators.as_slice()) };
    // Hom(P^t, Γ) in hom degree δ and source s: ⊕_g e_{v_g} Γ_{d_g+δ} e_s.
    let piece = |t: usize, delta: i64, s: VertexId| -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (g, &(v, d)) in gens(t).iter().enumerate() {
            let deg = d as i64 + delta;
            if (0..=cap).contains(&deg) {
                out.push((g, deg as usize, ggb.dim(deg as usize, s, v)));
            }
        }
        out
    };
    let dim_of = |p: &[(usize, usize, usize)]| p.iter().map(|x| x.2).sum::<usize>();
    // matrix of f ↦ f ∘ ∂ from position t-1 to t
    let rank_at = |t: usize, delta: i64, s: VertexId| -> usize {
        if t == 0 || t > top || t >= res.steps.len() {
            return 0;
        }
        let src = piece(t - 1, delta, s);
        let dst = piece(t, delta, s);
        let (rows_n, cols_n) = (dim_of(&src), dim_of(&dst));
        if rows_n == 0 || cols_n == 0 {
            return 0;
        }
        let mut col_off = BTreeMap::new();
        let mut acc = 0;
        for &(g, _, len) in &dst {
            col_off.insert(g, acc);
            acc += len;
        }
        let step = &res.steps[t];
        let prev = gens(t - 1);
        let mut rows = Vec::with_capacity(rows_n);
        for &(h, deg_h, _) in &src {
            let vh = prev[h].0;
            for y in ggb.basis(deg_h, s, vh) {
                let mut row = vec![field.zero(); cols_n];
                for &(g, deg_g, _) in &dst {
                    let (vg, dg) = step.generators[g];
                    let dh = prev[h].1;
                    if dg < dh {
                        continue;
                    }
                    let x = &step.images[g][h];
                    for (c, path) in x.iter().zip(ggb.basis(dg - dh, vh, vg)) {
                        if c.is_zero() {
                            continue;
                        }
                        let prod = ggb.product_coords(path, y).expect("within cap");
                        debug_assert_eq!(prod.len(), ggb.dim(deg_g, s, vg));
                        for (m, z) in prod.iter().enumerate() {
                            if !z.is_zero() {
                                let slot: &mut Scalar = &mut row[col_off[&g] + m];
                                *slot = &*slot + &(c * z);
                            }
                        }
                    }
                }
                rows.push(row);
            }
        }
        rank(&Matrix::from_rows(field, cols_n, rows).expect("rectangular"))
    };
    let max_d = (0..=top).flat_map(|t| gens(t).iter().map(|g| g.1)).max().unwrap_or(0) as i64;
    let mut out = Vec::new();
    for t in 0..=top {
        let mut by_source = BTreeMap::new();
        for s in 0..q.vertex_count() {
            let mut total = 0;
            for delta in -max_d..=cap {
                let c = dim_of(&piece(t, delta, s));
                if c == 0 {
                    continue;
                }
                total += c - rank_at(t, delta, s) - rank_at(t + 1, delta, s);
            }
            if total > 0 {
                by_source.insert(s, total);
            }
        }
        out.push(by_source);
    }
    out
}

#[derive(Clone, Debug)]
pub struct AsRegularReport {
    pub n: usize,
    /// `false` when `n+1 < 2` or `q < 2`: the equivalence does not apply.
    pub in_scope: bool,
    pub verdict: Option<bool>,
    pub nakayama: BTreeMap<VertexId, VertexId>,
    pub gorenstein_parameter: Option<usize>,
    /// Per non-injective vertex: `Hom(P^•, Γ)` over the first `n+2` terms of
    /// the resolution of `S(i)` has no cohomology at `0 < t ≤ n` and a
    /// one-dimensional cokernel at `ν i` for `t = n+1`.
    pub oracle: BTreeMap<VertexId, bool>,
    pub oracle_agrees: Option<bool>,
    pub dual_self_injective: Option<bool>,
}

impl AsRegularReport {
    pub fn to_json(&self, q: &BoundQuiver) -> Value {
        let name = |v: &VertexId| q.vertex_name(*v).to_string();
        json!({
            "n": self.n,
            "in_scope": self.in_scope,
            "partial_as_regular": self.verdict,
            "nakayama": self.nakayama.iter().map(|(i, j)| (name(i), json!(name(j)))).collect::<serde_json::Map<_, _>>(),
            "gorenstein_parameter": self.gorenstein_parameter,
            "oracle": self.oracle.iter().map(|(i, ok)| (name(i), json!(ok))).collect::<serde_json::Map<_, _>>(),
            "oracle_agrees": self.oracle_agrees,
            "dual_self_injective": self.dual_self_injective,
        })
    }
}

pub fn partial_as_regular(gb: &GradedBasis, ts: &TranslationStructure, kr: &KoszulReport, n_translation: bool) -> Result<AsRegularReport> {
    let q = gb.quiver();
    let n = ts.n;
    let gamma = ext_algebra(q)?;
    let ggb = GradedBasis::new(&gamma, gb.max_degree());
    let in_scope = n + 1 >= 2 && kr.p == Some(n + 1) && kr.horizon_at_least_two();
    let nakayama: BTreeMap<VertexId, VertexId> = ts.tau.iter().map(|(&i, &t)| (t, i)).collect();
    let mut oracle = BTreeMap::new();
    for (&i, &nu) in &nakayama {
        let ext = dual_cohomology(&ggb, i, n + 1);
        let low_vanish = ext[1..=n].iter().all(BTreeMap::is_empty);
        let top_ok = ext[n + 1] == BTreeMap::from([(nu, 1)]);
        oracle.insert(i, low_vanish && top_ok);
    }
    let verdict = in_scope.then_some(n_translation);
    let oracle_agrees = verdict.map(|v| !v || oracle.values().all(|&ok| ok));
    let dual_self_injective = crate::translation::nakayama_permutation(&ggb).map(|nu| nu.is_some());
    Ok(AsRegularReport {
        n,
        in_scope,
        verdict,
        nakayama,
        gorenstein_parameter: kr.gorenstein_parameter(),
        oracle,
        oracle_agrees,
        dual_self_injective,
    })
}

/// Full subquiver on the union of the `K`-space hammocks starting in `slice`.
pub fn slice_truncation(big: &BoundQuiver, ks: &KoszulSpaces, slice: &[VertexId]) -> Result<BoundQuiver> {
    let mut keep = BTreeSet::new();
    for &i in slice {
        if i >= big.vertex_count() {
            return Err(Error::UnknownVertex(i.to_string()));
        }
        for level in koszul_hammock(ks, i) {
            keep.extend(level.into_keys());
        }
    }
    Ok(big.full_subquiver(&keep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{smash_extension, trivial_extension, WindowSpec};
    use crate::format::parse_quiver;
    use crate::koszul::{classify_pq, koszul_spaces, n_translation_algebra};
    use crate::translation::infer_translation;

    const A4RAD2: &str = "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\nrelation a2.a1\nrelation a3.a2\n";

    fn setup(q: &BoundQuiver, n: usize, cap: usize) -> (GradedBasis, TranslationStructure, KoszulReport) {
        let gb = GradedBasis::new(q, cap);
        let ts = infer_translation(&gb, n).unwrap();
        let ks = koszul_spaces(&gb).unwrap();
        let kr = classify_pq(&gb, &ks);
        (gb, ts, kr)
    }

    fn q2() -> BoundQuiver {
        let q = parse_quiver(A4RAD2).unwrap();
        let gb = GradedBasis::new(&q, 4);
        let ts = infer_translation(&gb, 0).unwrap();
        let big = smash_extension(&gb, &ts, WindowSpec::new(0, Some((1, 4))).unwrap()).unwrap().quiver;
        let bgb = GradedBasis::new(&big, 8);
        let ks = koszul_spaces(&bgb).unwrap();
        let slice: Vec<_> = (1..=4).map(|i| big.vertex_id(&format!("{i}@1")).unwrap()).collect();
        slice_truncation(&big, &ks, &slice).unwrap()
    }

    #[test]
    fn a4rad2_hammocks() {
        let q = parse_quiver(A4RAD2).unwrap();
        let (gb, ts, _) = setup(&q, 0, 6);
        let h = hammock(&gb, &ts, 1);
        assert_eq!(h.levels, vec![BTreeMap::from([(1, 1)]), BTreeMap::from([(2, 1)])]);
        assert_eq!(h.arrows, vec![(0, 1, 1, 2)]);
        let sink = hammock(&gb, &ts, 3);
        assert_eq!(sink.levels[0], BTreeMap::from([(3, 1)]));
        assert!(sink.levels[1].is_empty());
        assert_eq!(radical_layers(&gb, 0), vec![BTreeMap::from([(0, 1)]), BTreeMap::from([(1, 1)])]);
    }

    #[test]
    fn tilde_layers_return_to_start() {
        let q = parse_quiver(A4RAD2).unwrap();
        let (gb, ts, _) = setup(&q, 0, 6);
        let tilde = trivial_extension(&gb, &ts).unwrap();
        let tgb = GradedBasis::new(&tilde, 6);
        assert_eq!(
            radical_layers(&tgb, 1),
            vec![BTreeMap::from([(1, 1)]), BTreeMap::from([(0, 1), (2, 1)]), BTreeMap::from([(1, 1)])]
        );
    }

    #[test]
    fn q2_has_ten_vertices() {
        let q = q2();
        let mut names: Vec<_> = q.vertex_names().to_vec();
        names.sort();
        assert_eq!(names, ["1@1", "1@2", "1@3", "1@4", "2@1", "2@2", "2@3", "3@1", "3@2", "4@1"]);
    }

    #[test]
    fn almost_split_verdicts() {
        let q = parse_quiver(A4RAD2).unwrap();
        let (gb, ts, kr) = setup(&q, 0, 10);
        let r = almost_split_report(&gb, &ts, &kr).unwrap();
        assert_eq!(r.entries.len(), 3);
        for e in &r.entries {
            assert!(e.exists);
            assert_eq!(e.oracle_exact, Some(true));
            assert_eq!(e.terms[1], BTreeMap::from([(e.vertex + 1, 1)]));
        }

        let tilde = trivial_extension(&gb, &ts).unwrap();
        let (tgb, tts, tkr) = setup(&tilde, 1, 10);
        let r = almost_split_report(&tgb, &tts, &tkr).unwrap();
        assert!(r.entries.iter().any(|e| !e.exists));
        assert!(r.entries.iter().all(|e| e.oracle_exact == Some(e.exists)));

        let (g2, t2, k2) = setup(&q2(), 1, 10);
        let r = almost_split_report(&g2, &t2, &k2).unwrap();
        assert!(!r.entries.is_empty());
        assert!(r.entries.iter().all(|e| e.exists), "{:?} {:?}", k2.horizon, r.entries);
        assert!(r.entries.iter().all(|e| e.oracle_exact == Some(true)));
    }

    #[test]
    fn as_regular() {
        let q = parse_quiver(A4RAD2).unwrap();
        let (gb, ts, kr) = setup(&q, 0, 10);
        let r = partial_as_regular(&gb, &ts, &kr, true).unwrap();
        assert!(!r.in_scope && r.verdict.is_none());
        assert!(r.oracle.values().all(|&ok| ok));

        let tilde = trivial_extension(&gb, &ts).unwrap();
        let (tgb, tts, tkr) = setup(&tilde, 1, 10);
        let nt = n_translation_algebra(&tgb, &tkr, 1).verdict();
        let r = partial_as_regular(&tgb, &tts, &tkr, nt).unwrap();
        assert_eq!(r.verdict, Some(true));
        assert_eq!(r.gorenstein_parameter, Some(3));
        assert_eq!(r.oracle_agrees, Some(true));
        assert_eq!(r.dual_self_injective, Some(true));
    }
}
