//! τ-hammocks, Koszul hammocks and radical layers, with DOT output.

use ntrans::hammock::{hammock, koszul_hammock, radical_layers};
use ntrans::koszul::koszul_spaces;
use ntrans::translation::infer_translation;
use ntrans::{parse_quiver, GradedBasis};

fn main() -> ntrans::Result<()> {
    let q = parse_quiver(
        "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\narrow b2 2 1\narrow b3 3 2\narrow b4 4 3\n\
         relation a2.a1\nrelation a3.a2\nrelation b2.b3\nrelation b3.b4\nrelation a1.b2 - b3.a2\nrelation a2.b3 - b4.a3\n",
    )?;
    let gb = GradedBasis::new(&q, 10);
    let ts = infer_translation(&gb, 1)?;
    let ks = koszul_spaces(&gb)?;
    for i in 0..q.vertex_count() {
        let h = hammock(&gb, &ts, i);
        let levels: Vec<String> = h
            .levels
            .iter()
            .map(|l| l.iter().map(|(&j, &m)| format!("{}:{m}", q.vertex_name(j))).collect::<Vec<_>>().join(" "))
            .collect();
        println!("H^{}: {}", q.vertex_name(i), levels.join(" | "));
        let kh = koszul_hammock(&ks, i);
        println!("  Koszul hammock sizes {:?}", kh.iter().map(|l| l.values().sum::<usize>()).collect::<Vec<_>>());
        let layers = radical_layers(&gb, i);
        println!("  radical layers {:?}", layers.iter().map(|l| l.len()).collect::<Vec<_>>());
    }
    print!("{}", hammock(&gb, &ts, 1).to_dot(&q));
    Ok(())
}
