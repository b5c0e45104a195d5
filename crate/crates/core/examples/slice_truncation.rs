//! Cut the 10-vertex quiver Q(2) out of a window of the ℤ-cover of a4rad2.

use std::collections::BTreeSet;

use ntrans::construct::{smash_extension, WindowSpec};
use ntrans::hammock::slice_truncation;
use ntrans::koszul::koszul_spaces;
use ntrans::translation::{check_n_translation, infer_translation};
use ntrans::{parse_quiver, serialize_quiver, GradedBasis};

fn main() -> ntrans::Result<()> {
    let a4 = parse_quiver("vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\nrelation a2.a1\nrelation a3.a2\n")?;
    let gb = GradedBasis::new(&a4, 10);
    let ts = infer_translation(&gb, 0)?;
    let window = smash_extension(&gb, &ts, WindowSpec::new(0, Some((1, 4)))?)?.quiver;

    let wgb = GradedBasis::new(&window, 10);
    let ks = koszul_spaces(&wgb)?;
    let slice: Vec<_> = ["1@1", "2@1", "3@1", "4@1"].iter().map(|v| window.require_vertex(v)).collect::<Result<_, _>>()?;
    let q2 = slice_truncation(&window, &ks, &slice)?;
    print!("{}", serialize_quiver(&q2));

    let layers: BTreeSet<&str> = q2.vertex_names().iter().filter_map(|v| v.split('@').nth(1)).collect();
    println!("{} vertices over layers {layers:?}", q2.vertex_count());

    let qgb = GradedBasis::new(&q2, 10);
    let qts = infer_translation(&qgb, 1)?;
    println!("1-translation quiver: {}", check_n_translation(&qgb, &qts).passes());

    let single = slice_truncation(&window, &ks, &slice[..1])?;
    println!("slice {{1@1}}: {:?}", single.vertex_names());
    Ok(())
}
