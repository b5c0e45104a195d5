//! Koszul spaces K^t, their homology and the (p,q) classification, checked
//! against a minimal projective resolution.

use ntrans::koszul::{classify_pq, koszul_spaces, predicted_betti};
use ntrans::resolution::minimal_resolution;
use ntrans::{parse_quiver, GradedBasis};

const TILDE: &str = "vertex 1 2 3 4
arrow a1 1 2
arrow a2 2 3
arrow a3 3 4
arrow b2 2 1
arrow b3 3 2
arrow b4 4 3
relation a2.a1
relation a3.a2
relation b2.b3
relation b3.b4
relation a1.b2 - b3.a2
relation a2.b3 - b4.a3
";

fn main() -> ntrans::Result<()> {
    let q = parse_quiver(TILDE)?;
    let gb = GradedBasis::new(&q, 10);
    let ks = koszul_spaces(&gb)?;
    for t in 0..ks.len().min(6) {
        println!("dim K^{t} = {}", ks.degree_dim(t));
    }
    for (i, j) in ks.components(3) {
        for e in ks.basis(3, i, j) {
            println!("  K^3 {} -> {}: {}", q.vertex_name(i), q.vertex_name(j), q.element_string(e));
        }
    }

    let report = classify_pq(&gb, &ks);
    println!("p = {:?}, q = {:?}, coxeter = {:?}", report.p, report.q(), report.coxeter());
    print!("{}", report.table_text(&q));

    let table = &report.homology[0];
    let predicted = predicted_betti(&ks, table, 10);
    let betti = minimal_resolution(&gb, table.vertex, predicted.len() - 1).betti();
    for (s, (want, bound)) in predicted.iter().enumerate() {
        let got: Vec<_> = betti.steps[s].iter().filter(|((_, d), _)| d <= bound).collect();
        println!("step {s}: Koszul {want:?}, resolution {got:?}");
    }

    let bad = parse_quiver("vertex 1\narrow x 1 1\narrow y 1 1\nrelation x.x - y.x\nrelation y.y\n")?;
    let bgb = GradedBasis::new(&bad, 8);
    let r = classify_pq(&bgb, &koszul_spaces(&bgb)?);
    println!("x.x = y.x, y.y = 0: {:?}", r.horizon);
    Ok(())
}
