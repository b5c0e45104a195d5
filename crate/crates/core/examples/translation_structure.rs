//! Infer the translation τ of a bound quiver and check the n-translation axioms.

use ntrans::translation::{arrow_translation, check_n_translation, infer_translation, nakayama_permutation};
use ntrans::{parse_quiver, GradedBasis};

fn show(name: &str, text: &str, n: usize) -> ntrans::Result<()> {
    let q = parse_quiver(text)?;
    let gb = GradedBasis::new(&q, 10);
    let ts = infer_translation(&gb, n)?;
    let report = check_n_translation(&gb, &ts);
    println!("{name} (n = {n})");
    for (&i, &j) in &ts.tau {
        println!("  tau {} = {}", q.vertex_name(i), q.vertex_name(j));
    }
    let names = |vs: &std::collections::BTreeSet<usize>| vs.iter().map(|&v| q.vertex_name(v).to_string()).collect::<Vec<_>>();
    println!("  P = {:?}, I = {:?}", names(&ts.projective), names(&ts.injective));
    println!("  passes {}, stable {}, self-injective {:?}", report.passes(), report.stable, report.self_injective);
    for (a, arrow) in q.arrows().iter().enumerate() {
        if ts.tau.contains_key(&arrow.source) && ts.tau.contains_key(&arrow.target) {
            let image = arrow_translation(&gb, &ts, a)?;
            println!("  tau({}) = {}", arrow.name, q.element_string(&image));
        }
    }
    match nakayama_permutation(&gb) {
        Some(Some(nu)) => println!("  nakayama permutation {nu:?}"),
        Some(None) => println!("  not self-injective"),
        None => println!("  infinite within the cap"),
    }
    Ok(())
}

fn main() -> ntrans::Result<()> {
    show("a4rad2", "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\nrelation a2.a1\nrelation a3.a2\n", 0)?;
    show(
        "tilde-a4rad2",
        "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\narrow b2 2 1\narrow b3 3 2\narrow b4 4 3\n\
         relation a2.a1\nrelation a3.a2\nrelation b2.b3\nrelation b3.b4\nrelation a1.b2 - b3.a2\nrelation a2.b3 - b4.a3\n",
        1,
    )?;
    show("nilpotent loop", "vertex 1\narrow x 1 1\nrelation x.x\n", 0)?;
    Ok(())
}
