//! Minimal graded projective resolutions of simple modules.
//!
//! Works directly on graded pieces of free modules `⊕ Λe_v[-d]` and never
//! touches Koszul spaces, so it serves as an independent check on them.

use std::collections::BTreeMap;

use crate::algebra::GradedBasis;
use crate::linalg::{kernel, Matrix, Subspace, Vector};
use crate::quiver::{Path, VertexId};

/// A generator `Λe_v` placed in internal degree `d`.
pub type Generator = (VertexId, usize);

#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub generators: Vec<Generator>,
    /// For each generator, its image in the previous free module: one
    /// coordinate vector per previous generator, over
    /// `basis(d_new - d_old, v_old, v_new)`.
    pub images: Vec<Vec<Vector>>,
    /// True when the syzygy may have generators above the degree cap.
    pub beyond_cap: bool,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub vertex: VertexId,
    pub steps: Vec<ResolutionStep>,
}

/// Betti data: per step, multiplicities of `(vertex, degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub vertex: VertexId,
    pub steps: Vec<BTreeMap<Generator, usize>>,
    pub beyond_cap: Vec<bool>,
}

impl Resolution {
    pub fn betti(&self) -> BettiTable {
        BettiTable {
            vertex: self.vertex,
            steps: self
                .steps
                .iter()
                .map(|s| {
                    let mut m = BTreeMap::new();
                    for &g in &s.generators {
                        *m.entry(g).or_insert(0) += 1;
                    }
                    m
                })
                .collect(),
            beyond_cap: self.steps.iter().map(|s| s.beyond_cap).collect(),
        }
    }
}

struct Free<'a> {
    gb: &'a GradedBasis,
    gens: Vec<Generator>,
}

impl Free<'_> {
    fn block_dim(&self, g: usize, d: usize, k: VertexId) -> usize {
        let (v, dg) = self.gens[g];
        if d < dg {
            0
        } else {
            self.gb.dim(d - dg, v, k)
        }
    }

    fn offsets(&self, d: usize, k: VertexId) -> (Vec<usize>, usize) {
        let mut offs = Vec::with_capacity(self.gens.len());
        let mut total = 0;
        for g in 0..self.gens.len() {
            offs.push(total);
            total += self.block_dim(g, d, k);
        }
        (offs, total)
    }

    fn dim(&self, d: usize, k: VertexId) -> usize {
        self.offsets(d, k).1
    }

    /// Image of `x ∈ F_{d,k}` under left multiplication by the path `a: k → k'`.
    fn left_mul(&self, a: &Path, x: &[crate::field::Scalar], d: usize) -> Vector {
        let field = self.gb.field();
        let k = a.source();
        let k2 = a.target();
        let d2 = d + a.len();
        let (offs, _) = self.offsets(d, k);
        let (offs2, total2) = self.offsets(d2, k2);
        let mut out = vec![field.zero(); total2];
        for (g, &(v, dg)) in self.gens.iter().enumerate() {
            if d < dg {
                continue;
            }
            for (n, b) in self.gb.basis(d - dg, v, k).iter().enumerate() {
                let c = &x[offs[g] + n];
                if c.is_zero() {
                    continue;
                }
                let prod = self.gb.product_coords(a, b).expect("within cap");
                for (m, y) in prod.iter().enumerate() {
                    if !y.is_zero() {
                        let slot = &mut out[offs2[g] + m];
                        *slot = &*slot + &(c * y);
                    }
                }
            }
        }
        out
    }
}

type Graded = BTreeMap<(usize, VertexId), Subspace>;

/// Minimal resolution of the simple `S(i)` through `steps` syzygy steps,
/// exact in internal degrees up to the basis cap.
pub fn minimal_resolution(gb: &GradedBasis, i: VertexId, steps: usize) -> Resolution {
    let q = gb.quiver();
    let field = gb.field();
    let cap = gb.max_degree();
    let top = gb.top_degree();
    let mut out = vec![ResolutionStep { generators: vec![(i, 0)], images: vec![Vec::new()], beyond_cap: false }];
    let mut prev = Free { gb, gens: vec![(i, 0)] };
    let mut omega: Graded = BTreeMap::new();
    for d in 1..=cap {
        for k in 0..q.vertex_count() {
            let n = prev.dim(d, k);
            if n > 0 {
                omega.insert((d, k), Subspace::full(field, n));
            }
        }
    }
    let mut prev_beyond = top.is_none_or(|t| t > cap);

    for _ in 1..=steps {
        let max_gen = prev.gens.iter().map(|g| g.1).max().unwrap_or(0);
        let beyond_cap = prev_beyond || top.is_none_or(|t| max_gen + t > cap);

        // minimal generators of omega, degree by degree
        let mut gens = Vec::new();
        let mut images = Vec::new();
        for d in 0..=cap {
            for k in 0..q.vertex_count() {
                let Some(space) = omega.get(&(d, k)) else { continue };
                let mut radical = Subspace::zero(field, space.ambient());
                if d > 0 {
                    for alpha in q.arrows_into(k) {
                        let src = q.arrow(alpha).source;
                        if let Some(lower) = omega.get(&(d - 1, src)) {
                            let a = Path::arrow(q, alpha);
                            for v in lower.basis() {
                                radical.insert(prev.left_mul(&a, v, d - 1));
                            }
                        }
                    }
                }
                let (offs, _) = prev.offsets(d, k);
                for v in space.basis() {
                    if radical.insert(v.clone()) {
                        gens.push((k, d));
                        images.push(
                            (0..prev.gens.len())
                                .map(|g| v[offs[g]..offs[g] + prev.block_dim(g, d, k)].to_vec())
                                .collect::<Vec<_>>(),
                        );
                    }
                }
            }
        }

        // kernel of the new free module onto omega
        let next = Free { gb, gens: gens.clone() };
        let mut next_omega: Graded = BTreeMap::new();
        for d in 0..=cap {
            for k in 0..q.vertex_count() {
                let n = next.dim(d, k);
                if n == 0 {
                    continue;
                }
                let target = prev.dim(d, k);
                let mut rows = Vec::with_capacity(n);
                for (g, &(v, dg)) in gens.iter().enumerate() {
                    if d < dg {
                        continue;
                    }
                    let (img_offs, _) = prev.offsets(dg, v);
                    let mut img = vec![field.zero(); prev.dim(dg, v)];
                    for (h, block) in images[g].iter().enumerate() {
                        img[img_offs[h]..img_offs[h] + block.len()].clone_from_slice(block);
                    }
                    for b in gb.basis(d - dg, v, k) {
                        rows.push(prev.left_mul(b, &img, dg));
                    }
                }
                let m = Matrix::from_rows(field, target, rows).expect("consistent widths").transpose();
                let ker = kernel(&m);
                if !ker.is_empty() {
                    next_omega.insert((d, k), Subspace::spanned_by(field, n, ker));
                }
            }
        }

        out.push(ResolutionStep { generators: gens, images, beyond_cap });
        prev = next;
        omega = next_omega;
        prev_beyond = beyond_cap;
    }
    Resolution { vertex: i, steps: out }
}
