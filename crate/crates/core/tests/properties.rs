mod common;

use std::collections::BTreeMap;

use ntrans::dual::check_double_dual;
use ntrans::koszul::{classify_pq, koszul_spaces, predicted_betti};
use ntrans::linalg::{kernel, rank, Matrix, Subspace};
use ntrans::quiver::{opposite, same_presentation};
use ntrans::resolution::minimal_resolution;
use ntrans::translation::{check_n_translation, infer_translation};
use ntrans::{parse_quiver, serialize_quiver, BoundQuiver, Element, Field, GradedBasis, Path};
use proptest::prelude::*;

use common::random_quadratic;

/// All paths of length `t`, grouped by endpoints.
fn paths_of_length(q: &BoundQuiver, t: usize) -> Vec<Path> {
    let mut layer: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    for _ in 0..t {
        let mut next = Vec::new();
        for p in &layer {
            for a in q.arrows_from(p.target()) {
                next.push(Path::arrow(q, a).compose(p).unwrap());
            }
        }
        layer = next;
    }
    layer
}

/// dim e_j Λ_t e_i by spanning the ideal with u·r·w over all paths u, w.
fn brute_dims(q: &BoundQuiver, t: usize) -> BTreeMap<(usize, usize), usize> {
    let field = q.field();
    let paths = paths_of_length(q, t);
    let index: BTreeMap<&Path, usize> = paths.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let mut ideal = Subspace::zero(field, paths.len());
    for r in q.relations() {
        let d = r.degree().unwrap();
        if d > t {
            continue;
        }
        for k in 0..=t - d {
            for w in paths_of_length(q, k) {
                for u in paths_of_length(q, t - d - k) {
                    let e = Element::from_path(u.clone(), field.one()).compose(r).compose(&Element::from_path(w.clone(), field.one()));
                    if e.is_zero() {
                        continue;
                    }
                    let mut v = vec![field.zero(); paths.len()];
                    for (p, c) in e.terms() {
                        v[index[p]] = c.clone();
                    }
                    ideal.insert(v);
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for p in &paths {
        *out.entry((p.source(), p.target())).or_insert(0) += 1;
    }
    for v in ideal.basis() {
        let lead = v.iter().position(|c| !c.is_zero()).unwrap();
        *out.get_mut(&(paths[lead].source(), paths[lead].target())).unwrap() -= 1;
    }
    out.retain(|_, d| *d > 0);
    out
}

fn small_matrix() -> impl Strategy<Value = (bool, Vec<Vec<i64>>)> {
    (any::<bool>(), 1usize..6, 1usize..6).prop_flat_map(|(prime, r, c)| {
        (Just(prime), prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
    })
}

fn to_matrix(prime: bool, rows: &[Vec<i64>]) -> Matrix {
    let field = if prime { Field::prime(7).unwrap() } else { Field::Rational };
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Matrix::from_i64(field, &refs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_nullity((prime, rows) in small_matrix()) {
        let m = to_matrix(prime, &rows);
        prop_assert_eq!(rank(&m) + kernel(&m).len(), m.cols());
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn kernel_vectors_are_killed((prime, rows) in small_matrix()) {
        let m = to_matrix(prime, &rows);
        for v in kernel(&m) {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|c| c.is_zero()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dims_match_path_enumeration(seed in any::<u64>()) {
        let q = random_quadratic(seed);
        let gb = GradedBasis::new(&q, 4);
        for t in 0..=4 {
            let want = brute_dims(&q, t);
            let got: BTreeMap<_, _> = gb.components(t).map(|(i, j)| ((i, j), gb.dim(t, i, j))).filter(|(_, d)| *d > 0).collect();
            prop_assert_eq!(got, want, "degree {} of\n{}", t, serialize_quiver(&q));
        }
    }

    #[test]
    fn koszul_homology_matches_resolutions(seed in any::<u64>()) {
        let q = random_quadratic(seed);
        let gb = GradedBasis::new(&q, 6);
        let ks = koszul_spaces(&gb).unwrap();
        let r = classify_pq(&gb, &ks);
        for table in &r.homology {
            let predicted = predicted_betti(&ks, table, 6);
            let res = minimal_resolution(&gb, table.vertex, predicted.len() - 1).betti();
            for (s, (want, bound)) in predicted.iter().enumerate() {
                let got: BTreeMap<_, _> = res.steps[s].iter().filter(|((_, d), _)| d <= bound).map(|(g, m)| (*g, *m)).collect();
                prop_assert_eq!(&got, want, "step {} of\n{}", s, serialize_quiver(&q));
            }
        }
    }

    #[test]
    fn classification_is_left_right_symmetric(seed in any::<u64>()) {
        let q = random_quadratic(seed);
        let classify = |q: &BoundQuiver| {
            let gb = GradedBasis::new(q, 6);
            let r = classify_pq(&gb, &koszul_spaces(&gb).unwrap());
            (r.p, r.q())
        };
        prop_assert_eq!(classify(&q), classify(&opposite(&q)));
    }

    #[test]
    fn double_dual_and_round_trip(seed in any::<u64>()) {
        let q = random_quadratic(seed);
        prop_assert!(check_double_dual(&q).unwrap());
        let back = parse_quiver(&serialize_quiver(&q)).unwrap();
        prop_assert!(same_presentation(&q, &back));
        prop_assert_eq!(serialize_quiver(&back), serialize_quiver(&q));
    }

    #[test]
    fn projectives_and_injectives_vanish_together(seed in any::<u64>()) {
        let q = random_quadratic(seed);
        let gb = GradedBasis::new(&q, 6);
        if gb.total_dim().is_none() {
            return Ok(());
        }
        let Some(top) = gb.top_degree() else { return Ok(()) };
        let Ok(ts) = infer_translation(&gb, top.saturating_sub(1)) else { return Ok(()) };
        let report = check_n_translation(&gb, &ts);
        if report.passes() && !ts.is_null() {
            prop_assert_eq!(ts.projective.is_empty(), ts.injective.is_empty());
            if let Some(si) = report.self_injective {
                prop_assert_eq!(report.stable, si);
            }
        }
    }
}
