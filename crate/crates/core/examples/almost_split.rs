//! n-almost split sequences over the Koszul dual: who has them, and the terms.

use ntrans::hammock::almost_split_report;
use ntrans::koszul::{classify_pq, koszul_spaces};
use ntrans::translation::infer_translation;
use ntrans::{parse_quiver, GradedBasis};

fn report(name: &str, text: &str, n: usize) -> ntrans::Result<()> {
    let q = parse_quiver(text)?;
    let gb = GradedBasis::new(&q, 10);
    let ts = infer_translation(&gb, n)?;
    let kr = classify_pq(&gb, &koszul_spaces(&gb)?);
    let r = almost_split_report(&gb, &ts, &kr)?;
    println!("{name}");
    for e in &r.entries {
        let terms: Vec<String> = e
            .terms
            .iter()
            .map(|t| t.iter().map(|(&j, &m)| format!("{m}P{}", q.vertex_name(j))).collect::<Vec<_>>().join("+"))
            .collect();
        println!(
            "  {}: exists {} oracle {:?} [{}] {}",
            q.vertex_name(e.vertex),
            e.exists,
            e.oracle_exact,
            terms.join(" -> "),
            e.reason
        );
    }
    Ok(())
}

fn main() -> ntrans::Result<()> {
    report("a4rad2", "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\nrelation a2.a1\nrelation a3.a2\n", 0)?;
    report(
        "tilde-a4rad2",
        "vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\narrow b2 2 1\narrow b3 3 2\narrow b4 4 3\n\
         relation a2.a1\nrelation a3.a2\nrelation b2.b3\nrelation b3.b4\nrelation a1.b2 - b3.a2\nrelation a2.b3 - b4.a3\n",
        1,
    )?;
    let q2 = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/golden/q2.quiver"))?;
    report("Q(2)", &q2, 1)
}
