//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use ntrans::construct::{smash_extension, trivial_extension, WindowSpec};
use ntrans::dual::{check_double_dual, quadratic_dual};
use ntrans::hammock::{almost_split_report, hammock, slice_truncation};
use ntrans::koszul::{classify_pq, koszul_spaces, n_translation_algebra, predicted_betti, Horizon, KoszulReport};
use ntrans::linalg::{intersect, kernel, rank, Matrix, Subspace};
use ntrans::quiver::{opposite, same_presentation};
use ntrans::resolution::minimal_resolution;
use ntrans::translation::{check_n_translation, infer_translation, TranslationStructure};
use ntrans::{serialize_quiver, BoundQuiver, Field, GradedBasis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{load, named_corpus, random_corpus, read};

type Check = std::result::Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Check + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn classify(q: &BoundQuiver, cap: usize) -> std::result::Result<(GradedBasis, KoszulReport), String> {
    let gb = GradedBasis::new(q, cap);
    let ks = koszul_spaces(&gb).map_err(|e| e.to_string())?;
    let r = classify_pq(&gb, &ks);
    Ok((gb, r))
}

/// Declared n, else top degree minus one; None when no structure is inferred.
fn translation_of(gb: &GradedBasis) -> Option<TranslationStructure> {
    let n = gb.quiver().translation_degree().or_else(|| gb.top_degree().map(|t| t.saturating_sub(1)))?;
    infer_translation(gb, n).ok()
}

fn verified_translation(gb: &GradedBasis) -> Option<TranslationStructure> {
    let ts = translation_of(gb)?;
    (!ts.is_null() && check_n_translation(gb, &ts).passes()).then_some(ts)
}

fn criterion1() -> Check {
    let a4 = load("a4rad2.quiver");
    let gb = GradedBasis::new(&a4, 10);
    let ts = infer_translation(&gb, 0).map_err(|e| e.to_string())?;

    let tilde = trivial_extension(&gb, &ts).map_err(|e| e.to_string())?;
    ensure!(
        (tilde.vertex_count(), tilde.arrow_count(), tilde.relations().len()) == (4, 6, 6),
        "trivial extension shape {} {} {}",
        tilde.vertex_count(),
        tilde.arrow_count(),
        tilde.relations().len()
    );
    ensure!(serialize_quiver(&tilde) == read("golden/a4rad2_trivial_ext.quiver"), "trivial extension differs from golden");

    let window = smash_extension(&gb, &ts, WindowSpec::new(0, Some((1, 4))).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure!(window.quiver.vertex_count() == 16, "window has {} vertices", window.quiver.vertex_count());
    let text = format!("# smash {}\n{}", window.metadata(), serialize_quiver(&window.quiver));
    ensure!(text == read("golden/a4rad2_smash_window_1_4.quiver"), "smash window differs from golden");
    for t in 1..=4 {
        for (a, s, e) in [("a1", 1, 2), ("a2", 2, 3), ("a3", 3, 4)] {
            let name = format!("{a}@{t}");
            let Some(id) = window.quiver.arrow_id(&name) else { return Err(format!("missing {name}")) };
            let arrow = window.quiver.arrow(id);
            ensure!(
                window.quiver.vertex_name(arrow.source) == format!("{s}@{t}")
                    && window.quiver.vertex_name(arrow.target) == format!("{e}@{t}"),
                "{name} misplaced"
            );
        }
    }

    let big = &window.quiver;
    let bgb = GradedBasis::new(big, 10);
    let ks = koszul_spaces(&bgb).map_err(|e| e.to_string())?;
    let slice: Vec<_> = ["1@1", "2@1", "3@1", "4@1"].iter().map(|v| big.vertex_id(v).unwrap()).collect();
    let q2 = slice_truncation(big, &ks, &slice).map_err(|e| e.to_string())?;
    ensure!(q2.vertex_count() == 10, "Q(2) has {} vertices", q2.vertex_count());
    ensure!(serialize_quiver(&q2) == read("golden/q2.quiver"), "Q(2) differs from golden");
    Ok("4/6/6, 16 vertices, 10 vertices".into())
}

fn criterion2() -> Check {
    let (gb, r) = classify(&load("a4rad2.quiver"), 10)?;
    ensure!(r.p == Some(1), "a4rad2 p = {:?}", r.p);
    ensure!(r.horizon == Horizon::UpToCap(10), "a4rad2 horizon {:?}", r.horizon);
    ensure!(n_translation_algebra(&gb, &r, 0).verdict(), "a4rad2 is not a 0-translation algebra");

    let tilde = load("tilde_a4rad2.quiver");
    let (_, r) = classify(&tilde, 10)?;
    if !r.is_pq_koszul(2, 3) {
        return Err(format!("tilde-a4rad2 is not (2,3)-Koszul: p={:?} horizon={:?}\n{}", r.p, r.horizon, r.table_text(&tilde)));
    }
    Ok("p=1 up to 10; (2,3)".into())
}

fn criterion3(corpus: &[(String, BoundQuiver)]) -> Check {
    let d = quadratic_dual(&load("a4rad2.quiver")).map_err(|e| e.to_string())?;
    ensure!(d.relations().is_empty(), "dual of a4rad2 has {} relations", d.relations().len());
    for (name, q) in corpus {
        ensure!(check_double_dual(q).map_err(|e| format!("{name}: {e}"))?, "{name}: double dual differs");
    }
    Ok(format!("{} quivers", corpus.len()))
}

fn criterion4() -> Check {
    let tilde = load("tilde_a4rad2.quiver");
    let (gb, r) = classify(&tilde, 10)?;
    let ts = infer_translation(&gb, 1).map_err(|e| e.to_string())?;
    let rep = almost_split_report(&gb, &ts, &r).map_err(|e| e.to_string())?;
    ensure!(rep.entries.iter().any(|e| !e.exists), "tilde-a4rad2: every sequence exists");

    let q2 = load("golden/q2.quiver");
    let (gb, r) = classify(&q2, 10)?;
    let ts = infer_translation(&gb, 1).map_err(|e| e.to_string())?;
    let rep = almost_split_report(&gb, &ts, &r).map_err(|e| e.to_string())?;
    let non_injective: Vec<_> = (0..q2.vertex_count()).filter(|v| !ts.injective.contains(v)).collect();
    for v in non_injective {
        let Some(e) = rep.entries.iter().find(|e| e.vertex == v) else {
            return Err(format!("Λ(2): no entry for {}", q2.vertex_name(v)));
        };
        ensure!(e.exists, "Λ(2): no sequence at {} ({})", q2.vertex_name(v), e.reason);
        ensure!(e.oracle_exact != Some(false), "Λ(2): oracle disagrees at {}", q2.vertex_name(v));
    }
    Ok(String::new())
}

/// Koszul homology against minimal-resolution Betti data.
fn oracle_agrees(name: &str, q: &BoundQuiver, cap: usize) -> std::result::Result<usize, String> {
    let gb = GradedBasis::new(q, cap);
    let ks = koszul_spaces(&gb).map_err(|e| format!("{name}: {e}"))?;
    let r = classify_pq(&gb, &ks);
    let mut compared = 0;
    for table in &r.homology {
        let predicted = predicted_betti(&ks, table, cap);
        let res = minimal_resolution(&gb, table.vertex, predicted.len() - 1).betti();
        for (s, (want, bound)) in predicted.iter().enumerate() {
            let got: BTreeMap<_, _> =
                res.steps[s].iter().filter(|((_, d), _)| d <= bound).map(|(g, m)| (*g, *m)).collect();
            ensure!(&got == want, "{name}: vertex {} step {s}: resolution {got:?}, Koszul {want:?}", table.vertex);
            compared += 1;
        }
    }
    Ok(compared)
}

fn criterion5(corpus: &[(String, BoundQuiver)]) -> Check {
    let mut steps = 0;
    for (name, q) in corpus {
        steps += oracle_agrees(name, q, 8)?;
    }
    Ok(format!("{} quivers, {steps} resolution steps", corpus.len()))
}

fn random_matrix(rng: &mut ChaCha8Rng, field: Field) -> Matrix {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    let mut m = Matrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(0.6) {
                m.set(r, c, field.from_i64(rng.gen_range(-3..=3)));
            }
        }
    }
    m
}

fn linear_identities() -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..1000 {
        let field = if k % 3 == 0 { Field::prime(5).unwrap() } else { Field::Rational };
        let a = random_matrix(&mut rng, field);
        ensure!(rank(&a) + kernel(&a).len() == a.cols(), "rank-nullity fails on matrix {k}");
        let b = random_matrix(&mut rng, field);
        if a.cols() != b.cols() {
            continue;
        }
        let sa = Subspace::spanned_by(field, a.cols(), a.row_vectors().to_vec());
        let sb = Subspace::spanned_by(field, b.cols(), b.row_vectors().to_vec());
        let meet = intersect(field, a.row_vectors(), b.row_vectors(), a.cols()).map_err(|e| e.to_string())?;
        ensure!(
            sa.dim() + sb.dim() == sa.sum(&sb).dim() + meet.len(),
            "intersection dimension identity fails on pair {k}"
        );
        ensure!(meet.len() == sa.intersect(&sb).dim(), "intersection routines disagree on pair {k}");
    }
    Ok(())
}

fn criterion6(corpus: &[(String, BoundQuiver)]) -> Check {
    let start = Instant::now();
    linear_identities()?;
    let (mut translation, mut duals, mut extensions) = (0, 0, 0);

    for (name, q) in corpus {
        let gb = GradedBasis::new(q, 8);
        if gb.total_dim().is_none() {
            continue;
        }
        if let Some(ts) = verified_translation(&gb) {
            translation += 1;
            ensure!(ts.projective.is_empty() == ts.injective.is_empty(), "{name}: P empty but I not, or conversely");
            let rep = check_n_translation(&gb, &ts);
            if let Some(si) = rep.self_injective {
                ensure!(rep.stable == si, "{name}: stable = {} but self-injective = {si}", rep.stable);
            }
        }
    }

    for (name, q) in corpus {
        let (_, r) = classify(q, 8)?;
        let (_, ro) = classify(&opposite(q), 8)?;
        ensure!(r.p == ro.p && r.q() == ro.q(), "{name}: opposite classifies differently");
        if let (Some(p), Some(qq)) = (r.p, r.q()) {
            if p >= 2 && qq >= 2 {
                duals += 1;
                let d = quadratic_dual(q).map_err(|e| e.to_string())?;
                let (_, rd) = classify(&d, 8)?;
                ensure!(rd.p == Some(qq) && rd.q() == Some(p), "{name}: dual of ({p},{qq}) is {:?}/{:?}", rd.p, rd.q());
            }
        }
    }

    for (name, q) in corpus {
        let gb = GradedBasis::new(q, 8);
        let Some(total) = gb.total_dim() else { continue };
        let Some(ts) = verified_translation(&gb) else { continue };
        let Ok(tilde) = trivial_extension(&gb, &ts) else { continue };
        extensions += 1;
        let tgb = GradedBasis::new(&tilde, 8);
        ensure!(tgb.total_dim() == Some(2 * total), "{name}: dim tilde = {:?}, dim = {total}", tgb.total_dim());

        let one = smash_extension(&gb, &ts, WindowSpec::new(1, None).unwrap()).map_err(|e| e.to_string())?;
        let collapsed =
            one.quiver.renamed(|v| v.strip_suffix("@0").unwrap_or(v).to_string(), |a| a.strip_suffix("@0").unwrap_or(a).to_string());
        ensure!(same_presentation(&collapsed, &tilde), "{name}: smash v=1 differs from the trivial extension");

        let two = smash_extension(&gb, &ts, WindowSpec::new(2, None).unwrap()).map_err(|e| e.to_string())?;
        let (_, rt) = classify(&tilde, 8)?;
        let (_, r2) = classify(&two.quiver, 8)?;
        ensure!(rt.p == r2.p && rt.horizon == r2.horizon, "{name}: smash v=2 classifies differently");
    }
    ensure!(start.elapsed() < Duration::from_secs(60), "invariants took {:?}", start.elapsed());
    Ok(format!(
        "1000 matrices, {translation} translation quivers, {duals} (p,q) duals, {extensions} trivial extensions"
    ))
}

fn criterion7(corpus: &[(String, BoundQuiver)]) -> Check {
    let (mut hammocks, mut verified) = (0, 0);
    for (name, q) in corpus {
        let gb = GradedBasis::new(q, 8);
        let Some(ts) = translation_of(&gb) else { continue };
        for i in 0..q.vertex_count() {
            let h = hammock(&gb, &ts, i);
            hammocks += 1;
            for (t, level) in h.levels.iter().enumerate() {
                for j in 0..q.vertex_count() {
                    ensure!(h.mu(j, t) == gb.dim(t, i, j), "{name}: μ({j},{t}) from {i}");
                    ensure!(level.get(&j).copied().unwrap_or(0) == gb.dim(t, i, j), "{name}: level table");
                }
            }
        }
        if ts.is_null() || !check_n_translation(&gb, &ts).passes() {
            continue;
        }
        verified += 1;
        for i in (0..q.vertex_count()).filter(|i| !ts.injective.contains(i)) {
            let h = hammock(&gb, &ts, i);
            let top = h.levels.get(ts.n + 1).cloned().unwrap_or_default();
            let want: BTreeMap<_, _> = [(ts.tau_inverse(i).unwrap(), 1)].into_iter().collect();
            ensure!(top == want, "{name}: level {} of the hammock at {} is {top:?}", ts.n + 1, q.vertex_name(i));
        }
    }
    Ok(format!("{hammocks} hammocks, {verified} verified translation quivers"))
}

fn main() {
    let mut corpus = named_corpus();
    for seed in [1, 2, 3] {
        corpus.extend(random_corpus(seed));
    }
    let criteria: Vec<Criterion> = vec![
        ("A4 pipeline matches the golden files", Duration::from_secs(5), Box::new(criterion1)),
        ("Koszul classification of a4rad2 and its trivial extension", Duration::from_secs(30), Box::new(criterion2)),
        ("quadratic duality", Duration::from_secs(10), Box::new(|| criterion3(&corpus))),
        ("almost-split verdicts", Duration::from_secs(60), Box::new(criterion4)),
        ("Koszul homology agrees with minimal resolutions", Duration::from_secs(120), Box::new(|| criterion5(&corpus))),
        ("invariant suites", Duration::from_secs(60), Box::new(|| criterion6(&corpus))),
        ("hammock identities", Duration::from_secs(30), Box::new(|| criterion7(&corpus))),
    ];
    let mut failed = 0;
    for (k, (title, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = result.and_then(|note| {
            if took <= *budget { Ok(note) } else { Err(format!("took {took:?}, budget {budget:?}")) }
        });
        match result {
            Ok(note) => {
                let note = if note.is_empty() { String::new() } else { format!(" [{note}]") };
                println!("criterion {}: PASS  {title} ({:.2}s){note}", k + 1, took.as_secs_f64());
            }
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {title} ({:.2}s): {e}", k + 1, took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
