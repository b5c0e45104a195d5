#![allow(dead_code)]

use std::path::PathBuf;

use ntrans::quiver::{BoundQuiver, Element, Path};
use ntrans::{parse_quiver, Field};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn load(name: &str) -> BoundQuiver {
    let text = std::fs::read_to_string(data_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    parse_quiver(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn read(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Hand-written corpus members, all quadratic.
pub const FILES: &[&str] = &[
    "a4rad2.quiver",
    "tilde_a4rad2.quiver",
    "loop.quiver",
    "edge.quiver",
    "disconnected.quiver",
    "a3_gf7.quiver",
    "non_koszul.quiver",
    "square_tail.quiver",
    "golden/q2.quiver",
    "golden/a4rad2_smash_v1.quiver",
];

pub fn named_corpus() -> Vec<(String, BoundQuiver)> {
    FILES.iter().map(|f| (f.to_string(), load(f))).collect()
}

/// A random quadratic bound quiver. Arrows go from lower to higher vertex,
/// except for an occasional loop squared to zero.
pub fn random_quadratic(seed: u64) -> BoundQuiver {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = if rng.gen_bool(0.25) { Field::prime(7).unwrap() } else { Field::Rational };
    let mut q = BoundQuiver::new(field);
    let nv = rng.gen_range(2..=4);
    for v in 0..nv {
        q.add_vertex(format!("{}", v + 1));
    }
    let na = rng.gen_range(nv - 1..=nv + 2);
    for k in 0..na {
        let s = rng.gen_range(0..nv - 1);
        let t = rng.gen_range(s + 1..nv);
        q.add_arrow(format!("x{k}"), s, t);
    }
    let looped = rng.gen_bool(0.2).then(|| {
        let v = rng.gen_range(0..nv);
        q.add_arrow("l", v, v)
    });
    let mut words: std::collections::BTreeMap<(usize, usize), Vec<Path>> = Default::default();
    for a in 0..q.arrow_count() {
        for b in 0..q.arrow_count() {
            if let Ok(p) = Path::from_word(&q, &[b, a]) {
                if Some(a) == looped && Some(b) == looped {
                    continue;
                }
                words.entry((p.source(), p.target())).or_default().push(p);
            }
        }
    }
    let mut rels = Vec::new();
    if let Some(l) = looped {
        rels.push(Element::from_path(Path::from_word(&q, &[l, l]).unwrap(), field.one()));
    }
    for paths in words.values() {
        let count = rng.gen_range(0..=paths.len());
        for _ in 0..count {
            let mut e = Element::zero();
            for p in paths {
                let c: i64 = rng.gen_range(-1..=2);
                if c != 0 {
                    e.add_term(p.clone(), field.from_i64(c));
                }
            }
            if !e.is_zero() {
                rels.push(e);
            }
        }
    }
    for r in rels {
        q.add_relation(r);
    }
    q
}

/// Ten random quadratic quivers for one seed.
pub fn random_corpus(seed: u64) -> Vec<(String, BoundQuiver)> {
    (0..10).map(|k| (format!("random {seed}/{k}"), random_quadratic(seed.wrapping_mul(1000).wrapping_add(k)))).collect()
}
