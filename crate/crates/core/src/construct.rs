//! Trivial extensions and smash-product quivers `ℤ_v|_n Q`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::GradedBasis;
use crate::error::{Error, Result};
use crate::koszul::{classify_pq, koszul_spaces, n_translation_algebra};
use crate::quiver::{ArrowId, BoundQuiver, Element, Path, VertexId};
use crate::translation::{arrow_translation, check_admissible, check_n_translation, infer_translation, TranslationStructure};

fn require_admissible(gb: &GradedBasis, ts: &TranslationStructure) -> Result<()> {
    let report = check_admissible(gb, ts)?;
    let failed = [("i", &report.extension), ("ii", &report.shiftable_span), ("iii", &report.stark)]
        .into_iter()
        .find(|(_, c)| !c.pass);
    match failed {
        Some((label, c)) => Err(Error::NotAdmissible(format!(
            "admissibility ({label}) fails: {}",
            c.witness.clone().unwrap_or_default()
        ))),
        None => Ok(()),
    }
}

/// `τ(α)` for every arrow with both ends non-projective.
fn translated_arrows(gb: &GradedBasis, ts: &TranslationStructure) -> Result<BTreeMap<ArrowId, Element>> {
    let q = gb.quiver();
    let mut out = BTreeMap::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        if ts.tau.contains_key(&arrow.source) && ts.tau.contains_key(&arrow.target) {
            out.insert(a, arrow_translation(gb, ts, a)?);
        }
    }
    Ok(out)
}

/// First of `b`, `c`, `d`, ... (then `b'`, ...) giving no clash with existing arrow names.
fn fresh_prefix(q: &BoundQuiver) -> String {
    let clashes = |prefix: &str| {
        q.vertex_names().iter().any(|v| {
            let name = format!("{prefix}{v}");
            q.arrows().iter().any(|a| a.name == name)
        })
    };
    let mut primes = String::new();
    loop {
        for c in 'b'..='z' {
            let prefix = format!("{c}{primes}");
            if !clashes(&prefix) {
                return prefix;
            }
        }
        primes.push('\'');
    }
}

fn arrow_element(q: &BoundQuiver, a: ArrowId) -> Element {
    Element::from_path(Path::arrow(q, a), q.field().one())
}

/// `Λ ⋉ D_*Λ` on the quiver with returning arrows `b<i>: i → τi`.
pub fn trivial_extension(gb: &GradedBasis, ts: &TranslationStructure) -> Result<BoundQuiver> {
    require_admissible(gb, ts)?;
    let q = gb.quiver();
    let taus = translated_arrows(gb, ts)?;
    let prefix = fresh_prefix(q);
    let mut out = BoundQuiver::new(q.field());
    for v in q.vertex_names() {
        out.add_vertex(v.clone());
    }
    for a in q.arrows() {
        out.add_arrow(a.name.clone(), a.source, a.target);
    }
    let mut beta: BTreeMap<VertexId, ArrowId> = BTreeMap::new();
    for (&i, &t) in &ts.tau {
        beta.insert(i, out.add_arrow(format!("{prefix}{}", q.vertex_name(i)), i, t));
    }
    for r in q.relations() {
        out.add_relation(r.clone());
    }
    for (&i, &t) in &ts.tau {
        if let Some(&bt) = beta.get(&t) {
            out.add_relation(arrow_element(&out, bt).compose(&arrow_element(&out, beta[&i])));
        }
    }
    for (&a, tau_a) in &taus {
        let (i, j) = (q.arrow(a).source, q.arrow(a).target);
        let lhs = tau_a.compose(&arrow_element(&out, beta[&i]));
        let rhs = arrow_element(&out, beta[&j]).compose(&arrow_element(&out, a));
        out.add_relation(lhs.add(&rhs.scale(&-&q.field().one())));
    }
    out.set_translation_degree(Some(ts.n + 1));
    for v in 0..q.vertex_count() {
        out.add_translation(v, v);
    }
    Ok(out)
}

/// Layers of the smash product: `ℤ_v` for `v > 0`, or a window of `ℤ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowSpec {
    Cyclic(u32),
    Window { min: i64, max: i64 },
}

impl WindowSpec {
    pub fn new(v: u32, window: Option<(i64, i64)>) -> Result<WindowSpec> {
        match (v, window) {
            (0, Some((min, max))) if min <= max => Ok(WindowSpec::Window { min, max }),
            (0, Some(_)) => Err(Error::Usage("window must satisfy min <= max".into())),
            (0, None) => Err(Error::Usage("v = 0 needs a window".into())),
            (_, Some(_)) => Err(Error::Usage("a window is only allowed with v = 0".into())),
            (v, None) => Ok(WindowSpec::Cyclic(v)),
        }
    }

    fn layers(&self) -> Vec<i64> {
        match *self {
            WindowSpec::Cyclic(v) => (0..i64::from(v)).collect(),
            WindowSpec::Window { min, max } => (min..=max).collect(),
        }
    }

    /// The layer below `t`, if present.
    fn below(&self, t: i64) -> Option<i64> {
        match *self {
            WindowSpec::Cyclic(v) => Some((t - 1).rem_euclid(i64::from(v))),
            WindowSpec::Window { min, .. } => (t > min).then_some(t - 1),
        }
    }

    fn above(&self, t: i64) -> Option<i64> {
        match *self {
            WindowSpec::Cyclic(v) => Some((t + 1).rem_euclid(i64::from(v))),
            WindowSpec::Window { max, .. } => (t < max).then_some(t + 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SmashQuiver {
    pub quiver: BoundQuiver,
    pub window: WindowSpec,
    /// Relations lost at the window edges.
    pub dropped_relations: usize,
}

impl SmashQuiver {
    pub fn metadata(&self) -> Value {
        let window = match self.window {
            WindowSpec::Cyclic(v) => json!({ "v": v }),
            WindowSpec::Window { min, max } => json!({ "v": 0, "min": min, "max": max }),
        };
        json!({ "window": window, "dropped_relations": self.dropped_relations })
    }
}

/// The bound quiver `ℤ_v|_n Q` of `Λ̃ # kℤ_v^*`, or a window of it.
pub fn smash_extension(gb: &GradedBasis, ts: &TranslationStructure, window: WindowSpec) -> Result<SmashQuiver> {
    require_admissible(gb, ts)?;
    let q = gb.quiver();
    let taus = translated_arrows(gb, ts)?;
    let prefix = fresh_prefix(q);
    let layers = window.layers();
    let mut out = BoundQuiver::new(q.field());
    let mut vid: BTreeMap<(VertexId, i64), VertexId> = BTreeMap::new();
    for &t in &layers {
        for (v, name) in q.vertex_names().iter().enumerate() {
            vid.insert((v, t), out.add_vertex(format!("{name}@{t}")));
        }
    }
    let mut aid: BTreeMap<(ArrowId, i64), ArrowId> = BTreeMap::new();
    let mut bid: BTreeMap<(VertexId, i64), ArrowId> = BTreeMap::new();
    for &t in &layers {
        for (a, arrow) in q.arrows().iter().enumerate() {
            aid.insert((a, t), out.add_arrow(format!("{}@{t}", arrow.name), vid[&(arrow.source, t)], vid[&(arrow.target, t)]));
        }
        if let Some(s) = window.below(t) {
            for (&i, &ti) in &ts.tau {
                bid.insert((i, t), out.add_arrow(format!("{prefix}{}@{t}", q.vertex_name(i)), vid[&(i, s)], vid[&(ti, t)]));
            }
        }
    }
    let lift = |e: &Element, t: i64, out: &BoundQuiver| -> Element {
        let mut r = Element::zero();
        for (p, c) in e.terms() {
            let word: Vec<ArrowId> = p.word().iter().map(|&a| aid[&(a, t)]).collect();
            r.add_term(Path::from_word(out, &word).expect("layer copy composes"), c.clone());
        }
        r
    };
    let one = |a: ArrowId, out: &BoundQuiver| Element::from_path(Path::arrow(out, a), q.field().one());
    let mut dropped = 0;
    for &t in &layers {
        for r in q.relations() {
            let lifted = lift(r, t, &out);
            out.add_relation(lifted);
        }
    }
    for &t in &layers {
        for (&i, &ti) in &ts.tau {
            if !ts.tau.contains_key(&ti) {
                continue;
            }
            match (bid.get(&(i, t)), window.above(t).and_then(|u| bid.get(&(ti, u)))) {
                (Some(&b1), Some(&b2)) => {
                    let rel = one(b2, &out).compose(&one(b1, &out));
                    out.add_relation(rel);
                }
                _ => dropped += 1,
            }
        }
        for (&a, tau_a) in &taus {
            let (i, j) = (q.arrow(a).source, q.arrow(a).target);
            match (bid.get(&(i, t)), bid.get(&(j, t)), window.below(t)) {
                (Some(&bi), Some(&bj), Some(s)) => {
                    let lhs = lift(tau_a, t, &out).compose(&one(bi, &out));
                    let rhs = one(bj, &out).compose(&one(aid[&(a, s)], &out));
                    out.add_relation(lhs.add(&rhs.scale(&-&q.field().one())));
                }
                _ => dropped += 1,
            }
        }
    }
    out.set_translation_degree(Some(ts.n + 1));
    for &t in &layers {
        if let Some(s) = window.below(t) {
            for v in 0..q.vertex_count() {
                out.add_translation(vid[&(v, t)], vid[&(v, s)]);
            }
        }
    }
    Ok(SmashQuiver { quiver: out, window, dropped_relations: dropped })
}

#[derive(Clone, Debug)]
pub struct ExtendabilityReport {
    pub verdict: bool,
    pub reason: Option<String>,
    pub tilde: Option<BoundQuiver>,
    pub tilde_p: Option<usize>,
    pub tilde_q: Option<usize>,
}

impl ExtendabilityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "extendable": self.verdict,
            "reason": self.reason,
            "p": self.tilde_p,
            "q": self.tilde_q,
        })
    }
}

/// Whether the trivial extension is an `(n+1)`-translation algebra within the cap.
pub fn is_extendable(gb: &GradedBasis, ts: &TranslationStructure, cap: usize) -> Result<ExtendabilityReport> {
    let fail = |reason: String, tilde: Option<BoundQuiver>| ExtendabilityReport {
        verdict: false,
        reason: Some(reason),
        tilde,
        tilde_p: None,
        tilde_q: None,
    };
    let tilde = match trivial_extension(gb, ts) {
        Ok(t) => t,
        Err(Error::NotAdmissible(m)) => return Ok(fail(m, None)),
        Err(e) => return Err(e),
    };
    let tgb = GradedBasis::new(&tilde, cap);
    let tts = match infer_translation(&tgb, ts.n + 1) {
        Ok(t) => t,
        Err(e) => return Ok(fail(e.to_string(), Some(tilde))),
    };
    let check = check_n_translation(&tgb, &tts);
    if !check.passes() || check.null {
        return Ok(fail(format!("not an {}-translation quiver", ts.n + 1), Some(tilde)));
    }
    if let Err(Error::NotAdmissible(m)) = require_admissible(&tgb, &tts) {
        return Ok(fail(m, Some(tilde)));
    }
    let ks = koszul_spaces(&tgb)?;
    let report = classify_pq(&tgb, &ks);
    let verdict = n_translation_algebra(&tgb, &report, ts.n + 1).verdict();
    Ok(ExtendabilityReport {
        verdict,
        reason: (!verdict).then(|| "Koszul conditions fail on the trivial extension".to_string()),
        tilde: Some(tilde),
        tilde_p: report.p,
        tilde_q: report.q(),
    })
}
