//! DOT rendering of a quiver and of one of its hammocks.

use ntrans::hammock::hammock;
use ntrans::translation::infer_translation;
use ntrans::{export_dot, parse_quiver, GradedBasis};

fn main() -> ntrans::Result<()> {
    let q = parse_quiver("vertex 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 1 3\nrelation b.a\n")?;
    print!("{}", export_dot(&q, "triangle"));

    // the triangle has no translation, so the hammock comes from a chain
    let chain = parse_quiver("vertex 1 2 3 4\narrow a1 1 2\narrow a2 2 3\narrow a3 3 4\nrelation a2.a1\nrelation a3.a2\n")?;
    let gb = GradedBasis::new(&chain, 6);
    let ts = infer_translation(&gb, 0)?;
    let out = std::env::temp_dir().join("chain_hammock.dot");
    std::fs::write(&out, hammock(&gb, &ts, 1).to_dot(&chain))?;
    println!("// hammock written to {}", out.display());
    Ok(())
}
